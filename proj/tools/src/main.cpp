#include "report.hpp"

#include "bwmdp/blackwell.hpp"
#include "bwmdp/errors.hpp"
#include "bwmdp/exact_linear.hpp"
#include "bwmdp/generators.hpp"
#include "bwmdp/json_io.hpp"
#include "bwmdp/mdp.hpp"
#include "bwmdp/robust.hpp"
#include "bwmdp/solvers.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace bwmdp::cli {
namespace {

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    ~Timer() {
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
        // timing stays on stderr so report bytes are deterministic
        std::fprintf(stderr, "timing_ms %lld\n", static_cast<long long>(ms));
    }
};

void emit(const ordered_json& doc, const std::string& out_path) {
    std::string text = doc.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw ValidationError("cannot open output file: " + out_path);
    f << text;
}

MDPInstance load(const std::string& path, bool rationalize) {
    ParseOptions opts;
    opts.rationalize = rationalize;
    return load_instance_file(path, opts);
}

ordered_json values_field(const RationalVector& v) {
    ordered_json arr = ordered_json::array();
    for (const Rational& x : v) arr.push_back(rational_field(x));
    return arr;
}

int cmd_solve(const std::string& instance_path, bool rationalize, const std::string& gamma_text,
              bool use_float, double tol, bool robust, const std::string& out_path) {
    Timer t;
    MDPInstance M = load(instance_path, rationalize);
    // float mode works in doubles anyway, so decimal gamma literals are fine there
    Rational gamma = use_float ? parse_rational(gamma_text, Integer(1000000))
                               : parse_rational(gamma_text);
    ordered_json doc = report_skeleton("solve", instance_digest(M));
    doc["parameters"]["gamma"] = to_string(gamma);
    doc["parameters"]["method"] = use_float ? "float" : "exact";
    doc["parameters"]["robust"] = robust;
    if (use_float) doc["parameters"]["tol"] = tol;

    if (robust) {
        if (use_float) {
            RobustFloatResult r = robust_value_iteration_float(M, gamma.get_d(), tol);
            doc["results"]["policy"] = policy_label(r.policy);
            doc["results"]["values"] = r.values;
            doc["results"]["iterations"] = r.iterations;
            doc["results"]["residual"] = r.residual;
        } else {
            RobustSolveExact r = robust_solve_exact(M, gamma);
            doc["results"]["policy"] = policy_label(r.policy);
            doc["results"]["values"] = values_field(r.values);
            doc["results"]["iterations"] = r.iterations;
        }
    } else if (use_float) {
        FloatSolveResult r = float_value_iteration(M, gamma.get_d(), tol);
        doc["results"]["policy"] = policy_label(r.policy);
        doc["results"]["values"] = r.values;
        doc["results"]["iterations"] = r.iterations;
        doc["results"]["residual"] = r.residual;
    } else {
        ExactSolveResult r = exact_policy_iteration(M, gamma);
        doc["results"]["policy"] = policy_label(r.policy);
        doc["results"]["values"] = values_field(r.values);
        doc["results"]["iterations"] = r.iterations;
        doc["results"]["optimal_set"] = policy_set_field(optimal_policy_set(M, gamma));
    }
    emit(doc, out_path);
    return 0;
}

int cmd_bound(const std::string& instance_path, bool rationalize, bool robust,
              const std::string& out_path) {
    Timer t;
    MDPInstance M = load(instance_path, rationalize);
    ordered_json doc = report_skeleton("bound", instance_digest(M));
    doc["parameters"]["robust"] = robust;
    EtaBound b = robust ? robust_eta_bound(M) : eta_bound(M);
    doc["results"]["N"] = b.N;
    doc["results"]["L"] = b.L.get_str();
    doc["results"]["eta"] = rational_field(b.eta);
    doc["results"]["threshold"] = rational_field(b.threshold);
    doc["results"]["m"] = M.m.get_str();
    doc["results"]["r_inf"] = M.r_inf.get_str();
    emit(doc, out_path);
    return 0;
}

ordered_json nominal_blackwell_results(const MDPInstance& M, const AnalysisOptions& opts) {
    BlackwellAnalysis analysis = exact_blackwell_analysis(M, opts);
    ordered_json res;
    ordered_json bps = ordered_json::array();
    for (const AlgebraicNumber& b : analysis.breakpoints) bps.push_back(certificate_field(b));
    res["breakpoints"] = bps;
    ordered_json ivs = ordered_json::array();
    for (const PolicySetProduct& s : analysis.interval_sets) ivs.push_back(policy_set_field(s));
    res["interval_sets"] = ivs;
    ordered_json bsets = ordered_json::array();
    for (const PolicySetProduct& s : analysis.breakpoint_sets) bsets.push_back(policy_set_field(s));
    res["breakpoint_sets"] = bsets;
    res["gamma_bar"] = certificate_field(analysis.gamma_bar);
    res["gamma_bw"] = certificate_field(analysis.gamma_bw);
    res["blackwell_product"] = policy_set_field(analysis.blackwell_product);
    ordered_json members = ordered_json::array();
    for (const Policy& pi : analysis.blackwell_set) members.push_back(policy_label(pi));
    res["blackwell_set"] = members;
    return res;
}

ordered_json robust_blackwell_results(const MDPInstance& M, const RobustAnalysisOptions& opts) {
    RobustBlackwellAnalysis analysis = robust_blackwell_analysis(M, opts);
    ordered_json res;
    res["unit_count"] = analysis.unit_count;
    ordered_json bps = ordered_json::array();
    for (const AlgebraicNumber& b : analysis.breakpoints) bps.push_back(certificate_field(b));
    res["breakpoints"] = bps;
    ordered_json ivs = ordered_json::array();
    for (const PolicySetProduct& s : analysis.interval_sets) ivs.push_back(policy_set_field(s));
    res["interval_sets"] = ivs;
    ordered_json bsets = ordered_json::array();
    for (const PolicySetProduct& s : analysis.breakpoint_sets) bsets.push_back(policy_set_field(s));
    res["breakpoint_sets"] = bsets;
    res["gamma_bar"] = certificate_field(analysis.gamma_bar);
    res["gamma_bw"] = certificate_field(analysis.gamma_bw);
    res["blackwell_product"] = policy_set_field(analysis.blackwell_product);
    ordered_json members = ordered_json::array();
    for (const Policy& pi : analysis.blackwell_set) members.push_back(policy_label(pi));
    res["blackwell_set"] = members;
    return res;
}

int cmd_blackwell(const std::string& instance_path, bool rationalize, const std::string& method,
                  bool robust, const std::string& out_path) {
    Timer t;
    MDPInstance M = load(instance_path, rationalize);
    ordered_json doc = report_skeleton("blackwell", instance_digest(M));
    doc["parameters"]["method"] = method;
    doc["parameters"]["robust"] = robust;

    if (method == "exact") {
        doc["results"] = robust ? robust_blackwell_results(M, {})
                                : nominal_blackwell_results(M, {});
    } else if (method == "reduction") {
        EtaBound b = robust ? robust_eta_bound(M) : eta_bound(M);
        doc["results"]["N"] = b.N;
        doc["results"]["L"] = b.L.get_str();
        doc["results"]["eta"] = rational_field(b.eta);
        doc["results"]["gamma_used"] = rational_field(b.threshold);
        if (robust) {
            RobustSolveExact r = robust_solve_exact(M, b.threshold);
            doc["results"]["policy"] = policy_label(r.policy);
            doc["results"]["iterations"] = r.iterations;
        } else {
            ExactSolveResult r = exact_policy_iteration(M, b.threshold);
            doc["results"]["policy"] = policy_label(r.policy);
            doc["results"]["iterations"] = r.iterations;
        }
    } else {
        throw ValidationError("unknown method: " + method + " (expected exact or reduction)");
    }
    emit(doc, out_path);
    return 0;
}

int cmd_gen(const std::string& family, const std::string& breakpoints_text, int states, int actions,
            unsigned long denominator, unsigned long reward_den, unsigned long reward_range,
            std::uint64_t seed, const std::string& uncertainty, unsigned long radius_max,
            const std::string& out_path) {
    Timer t;
    MDPInstance M;
    if (family == "example1") {
        M = example_one();
    } else if (family == "intervals") {
        std::vector<Rational> bps;
        std::stringstream ss(breakpoints_text);
        std::string item;
        while (std::getline(ss, item, ',')) bps.push_back(parse_rational(item));
        M = interval_instance(bps);
    } else if (family == "random") {
        RandomSpec spec;
        spec.n_states = states;
        spec.n_actions = actions;
        spec.denominator = denominator;
        spec.reward_denominator = reward_den == 0 ? denominator : reward_den;
        spec.reward_range = reward_range;
        spec.seed = seed;
        M = random_instance(spec);
    } else {
        throw ValidationError("unknown family: " + family);
    }
    if (!uncertainty.empty()) {
        BallNorm norm;
        if (uncertainty == "linf") {
            norm = BallNorm::Linf;
        } else if (uncertainty == "l1") {
            norm = BallNorm::L1;
        } else {
            throw ValidationError("unknown uncertainty norm: " + uncertainty);
        }
        M.uncertainty = random_uncertainty(M, norm, radius_max, seed + 1);
        validate(M);
    }
    std::string text = instance_to_json(M);
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw ValidationError("cannot open output file: " + out_path);
        f << text;
    }
    return 0;
}

int cmd_plotdata(const std::string& instance_path, bool rationalize, unsigned long grid,
                 const std::string& out_path) {
    Timer t;
    MDPInstance M = load(instance_path, rationalize);
    if (grid < 2) throw ValidationError("grid must have at least 2 points");
    std::vector<Policy> policies = enumerate_policies(M, Integer(1024));
    std::vector<ValuePolys> polys;
    polys.reserve(policies.size());
    for (const Policy& pi : policies) polys.push_back(value_polys(M, pi));

    std::ostringstream csv;
    csv << "gamma";
    for (const Policy& pi : policies) csv << "," << policy_label(pi);
    csv << "\n";
    // last grid point is 1 - 1/K; the value functions blow up at 1 itself
    for (unsigned long i = 0; i < grid; ++i) {
        Rational gamma = Rational(Integer(i), Integer(grid));
        gamma.canonicalize();
        csv << plot_decimal(gamma);
        for (const ValuePolys& vp : polys) {
            Rational d = vp.denominator.eval(gamma);
            Rational v = vp.numerators[0].eval(gamma) / d;
            v.canonicalize();
            csv << "," << plot_decimal(v);
        }
        csv << "\n";
    }
    if (out_path.empty()) {
        std::cout << csv.str();
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw ValidationError("cannot open output file: " + out_path);
        f << csv.str();
    }
    return 0;
}

int run(int argc, char** argv) {
    CLI::App app{"Exact Blackwell-optimality toolkit for finite MDPs"};
    app.require_subcommand(1);

    std::string instance_path, gamma_text, out_path, method = "exact";
    bool rationalize = false, use_float = false, robust = false;
    double tol = 1e-12;

    CLI::App* solve = app.add_subcommand("solve", "Optimal policy at a fixed discount factor");
    solve->add_option("--instance", instance_path, "instance JSON file")->required();
    solve->add_option("--gamma", gamma_text, "discount factor, e.g. 9/10")->required();
    solve->add_flag("--rationalize", rationalize, "admit float literals in the instance file");
    solve->add_flag("--float", use_float, "double-precision value iteration instead of exact");
    solve->add_option("--tol", tol, "residual tolerance for --float");
    solve->add_flag("--robust", robust, "worst-case optimum over the instance's uncertainty set");
    solve->add_option("--out", out_path, "write the report here instead of stdout");

    CLI::App* bound = app.add_subcommand("bound", "Closed-form threshold 1 - eta past every breakpoint");
    bound->add_option("--instance", instance_path, "instance JSON file")->required();
    bound->add_flag("--rationalize", rationalize, "admit float literals in the instance file");
    bound->add_flag("--robust", robust, "use extreme-kernel denominators");
    bound->add_option("--out", out_path, "write the report here instead of stdout");

    CLI::App* blackwell =
        app.add_subcommand("blackwell", "Blackwell-optimal policies, exact or by reduction");
    blackwell->add_option("--instance", instance_path, "instance JSON file")->required();
    blackwell->add_option("--method", method, "exact | reduction")->required();
    blackwell->add_flag("--rationalize", rationalize, "admit float literals in the instance file");
    blackwell->add_flag("--robust", robust, "analyze the robust instance");
    blackwell->add_option("--out", out_path, "write the report here instead of stdout");

    std::string family, breakpoints_text = "0,1/5,2/5,3/5,4/5,1", uncertainty;
    int states = 3, actions = 2;
    unsigned long denominator = 6, reward_den = 0, reward_range = 12, radius_max = 1, grid = 101;
    std::uint64_t seed = 0;

    CLI::App* gen = app.add_subcommand("gen", "Write instance files for the built-in families");
    gen->add_option("--family", family, "example1 | intervals | random")->required();
    gen->add_option("--breakpoints", breakpoints_text, "comma-separated, for --family intervals");
    gen->add_option("--states", states, "state count, for --family random");
    gen->add_option("--actions", actions, "action count, for --family random");
    gen->add_option("--denominator", denominator, "transition denominator, for --family random");
    gen->add_option("--reward-den", reward_den, "reward denominator (defaults to --denominator)");
    gen->add_option("--reward-range", reward_range, "reward numerator range, for --family random");
    gen->add_option("--seed", seed, "generator seed");
    gen->add_option("--uncertainty", uncertainty, "attach a random uncertainty set: linf | l1");
    gen->add_option("--radius-max", radius_max, "max radius numerator over m for --uncertainty");
    gen->add_option("--out", out_path, "output file (stdout when omitted)");

    CLI::App* plotdata = app.add_subcommand("plotdata", "CSV of every policy's value curve");
    plotdata->add_option("--instance", instance_path, "instance JSON file")->required();
    plotdata->add_option("--grid", grid, "number of grid points on [0, 1)");
    plotdata->add_flag("--rationalize", rationalize, "admit float literals in the instance file");
    plotdata->add_option("--out", out_path, "write the CSV here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (solve->parsed())
            return cmd_solve(instance_path, rationalize, gamma_text, use_float, tol, robust,
                             out_path);
        if (bound->parsed()) return cmd_bound(instance_path, rationalize, robust, out_path);
        if (blackwell->parsed())
            return cmd_blackwell(instance_path, rationalize, method, robust, out_path);
        if (gen->parsed())
            return cmd_gen(family, breakpoints_text, states, actions, denominator, reward_den,
                           reward_range, seed, uncertainty, radius_max, out_path);
        if (plotdata->parsed()) return cmd_plotdata(instance_path, rationalize, grid, out_path);
    } catch (const ParseError& e) {
        std::fprintf(stderr, "parse error: %s\n", e.what());
        return 2;
    } catch (const GammaOutOfRange& e) {
        std::fprintf(stderr, "domain error: %s\n", e.what());
        return 3;
    } catch (const ValidationError& e) {
        std::fprintf(stderr, "domain error: %s\n", e.what());
        return 3;
    } catch (const SpaceTooLarge& e) {
        std::fprintf(stderr, "resource guard: %s\n", e.what());
        return 4;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}

} // namespace
} // namespace bwmdp::cli

int main(int argc, char** argv) { return bwmdp::cli::run(argc, argv); }
