#include "bwmdp/blackwell.hpp"

#include "bwmdp/errors.hpp"

#include <algorithm>
#include <map>

namespace bwmdp {

EtaBound eta_bound(const MDPInstance& M) {
    EtaBound out;
    const long S = M.n_states;
    out.N = 2 * S - 1;
    Integer m_pow;
    mpz_pow_ui(m_pow.get_mpz_t(), M.m.get_mpz_t(), static_cast<unsigned long>(2 * S));
    Integer four_pow;
    mpz_ui_pow_ui(four_pow.get_mpz_t(), 4, static_cast<unsigned long>(S));
    out.L = Integer(2 * S) * M.r_inf * m_pow * four_pow;
    if (out.L < 1) out.L = 1; // zero-reward instances still need a nonzero bound
    out.eta = rump_eta(out.N, out.L);
    out.threshold = Rational(1) - out.eta;
    out.threshold.canonicalize();
    return out;
}

AlgebraicNumber gamma_pair(const MDPInstance& M, const Policy& pi, const Policy& pi_prime,
                           int state) {
    Poly p = difference_poly(M, pi, pi_prime, state);
    if (p.is_zero()) return AlgebraicNumber::exact(Rational(0));
    auto largest = largest_root_below_one(clear_denominators(p));
    if (!largest) return AlgebraicNumber::exact(Rational(0));
    return *largest;
}

namespace {

struct Landscape {
    std::vector<Policy> policies;
    std::vector<ValuePolys> polys;
    std::vector<AlgebraicNumber> breakpoints; // ascending, distinct, in [0, 1)
};

Landscape build_landscape(const MDPInstance& M, const Integer& policy_guard) {
    Landscape scape;
    scape.policies = enumerate_policies(M, policy_guard);
    scape.polys.reserve(scape.policies.size());
    for (const Policy& pi : scape.policies) scape.polys.push_back(value_polys(M, pi));

    std::vector<AlgebraicNumber> roots;
    for (std::size_t i = 0; i < scape.policies.size(); ++i) {
        for (std::size_t j = i + 1; j < scape.policies.size(); ++j) {
            for (int s = 0; s < M.n_states; ++s) {
                Poly diff = difference_poly_cached(scape.polys[i], scape.polys[j], s);
                if (diff.is_zero()) continue;
                UnitRoots unit = isolate_unit_roots(clear_denominators(diff));
                for (AlgebraicNumber& r : unit.roots) roots.push_back(std::move(r));
            }
        }
    }
    std::sort(roots.begin(), roots.end(), [](const AlgebraicNumber& a, const AlgebraicNumber& b) {
        return AlgebraicNumber::compare(a, b) < 0;
    });
    for (AlgebraicNumber& r : roots) {
        if (scape.breakpoints.empty() ||
            AlgebraicNumber::compare(scape.breakpoints.back(), r) != 0)
            scape.breakpoints.push_back(std::move(r));
    }
    return scape;
}

// Augmented endpoint list 0 = E_0 < E_1 < ... < E_k = 1 whose consecutive
// open intervals partition (0, 1) minus the breakpoints.
std::vector<AlgebraicNumber> augmented_endpoints(const std::vector<AlgebraicNumber>& breakpoints) {
    std::vector<AlgebraicNumber> E;
    AlgebraicNumber zero = AlgebraicNumber::exact(Rational(0));
    E.push_back(zero);
    for (const AlgebraicNumber& b : breakpoints) {
        if (b.is_exact() && b.value() == 0) continue;
        E.push_back(b);
    }
    E.push_back(AlgebraicNumber::exact(Rational(1)));
    return E;
}

// Separate consecutive certificates so that upper(E_i) < lower(E_{i+1}).
void separate_endpoints(std::vector<AlgebraicNumber>& E) {
    for (std::size_t i = 0; i + 1 < E.size(); ++i) {
        int guard = 0;
        while (!(E[i].hi() < E[i + 1].lo())) {
            E[i].refine_once();
            E[i + 1].refine_once();
            if (++guard > 100000) throw InternalError("failed to separate breakpoint certificates");
        }
    }
}

// Q-function numerator of (state, action) against the value polynomials of a
// reference policy: psi = r_sa * d + gamma * sum_t P[s][a][t] n_t - n_s.
// psi / d is <= 0 wherever the reference policy is optimal, with equality
// exactly where the action is greedy.
Poly greedy_defect_poly(const MDPInstance& M, const ValuePolys& ref, int s, int a) {
    Poly acc = ref.denominator.scaled(M.rewards[s][static_cast<std::size_t>(a)]);
    acc = acc - ref.numerators[static_cast<std::size_t>(s)];
    Poly mix;
    for (int t = 0; t < M.n_states; ++t) {
        const Rational& p = M.transitions[s][static_cast<std::size_t>(a)][static_cast<std::size_t>(t)];
        if (p == 0) continue;
        mix = mix + ref.numerators[static_cast<std::size_t>(t)].scaled(p);
    }
    acc = acc + Poly::monomial(Rational(1), 1) * mix;
    return acc;
}

PolicySetProduct optimal_set_at_breakpoint(const MDPInstance& M, const Landscape& scape,
                                           const AlgebraicNumber& beta,
                                           const PolicySetProduct& right_interval_set,
                                           const std::map<Policy, std::size_t>& policy_index) {
    const Policy ref_policy = right_interval_set.min_policy();
    auto it = policy_index.find(ref_policy);
    if (it == policy_index.end()) throw InternalError("reference policy missing from enumeration");
    const ValuePolys& ref = scape.polys[it->second];
    auto menus = effective_actions(M);
    PolicySetProduct out;
    out.actions_per_state.resize(static_cast<std::size_t>(M.n_states));
    for (int s = 0; s < M.n_states; ++s) {
        for (int a : menus[static_cast<std::size_t>(s)]) {
            Poly psi = greedy_defect_poly(M, ref, s, a);
            bool greedy;
            if (psi.is_zero()) {
                greedy = true;
            } else if (beta.is_exact()) {
                greedy = psi.eval(beta.value()) == 0;
            } else {
                greedy = beta.vanishes(clear_denominators(psi));
            }
            if (greedy) out.actions_per_state[static_cast<std::size_t>(s)].push_back(a);
        }
        if (out.actions_per_state[static_cast<std::size_t>(s)].empty())
            throw InternalError("empty greedy set at breakpoint");
    }
    return out;
}

Rational default_certificate_width() {
    Integer two64;
    mpz_ui_pow_ui(two64.get_mpz_t(), 2, 64);
    return Rational(Integer(1), two64);
}

} // namespace

AlgebraicNumber gamma_bar(const MDPInstance& M, const AnalysisOptions& opts) {
    Landscape scape = build_landscape(M, opts.policy_guard);
    if (scape.breakpoints.empty()) return AlgebraicNumber::exact(Rational(0));
    return scape.breakpoints.back();
}

BlackwellAnalysis exact_blackwell_analysis(const MDPInstance& M, const AnalysisOptions& opts) {
    BlackwellAnalysis out;
    Landscape scape = build_landscape(M, opts.policy_guard);
    out.policies = scape.policies;
    out.breakpoints = scape.breakpoints;
    out.gamma_bar = scape.breakpoints.empty() ? AlgebraicNumber::exact(Rational(0))
                                              : scape.breakpoints.back();

    std::map<Policy, std::size_t> policy_index;
    for (std::size_t i = 0; i < scape.policies.size(); ++i) policy_index[scape.policies[i]] = i;

    std::vector<AlgebraicNumber> E = augmented_endpoints(out.breakpoints);
    separate_endpoints(E);

    // optimal set on each open interval, verified at two sample points
    const std::size_t intervals = E.size() - 1;
    out.interval_sets.reserve(intervals);
    for (std::size_t i = 0; i < intervals; ++i) {
        Rational left = E[i].hi();
        Rational right = E[i + 1].lo();
        Rational width = right - left;
        Rational s1 = left + width / 3;
        Rational s2 = left + width * Rational(2) / 3;
        s1.canonicalize();
        s2.canonicalize();
        PolicySetProduct set1 = optimal_policy_set(M, s1);
        PolicySetProduct set2 = optimal_policy_set(M, s2);
        if (!(set1 == set2))
            throw InternalError("optimal set not constant between breakpoints; isolation incomplete");
        out.interval_sets.push_back(std::move(set1));
    }

    // optimal set at each breakpoint, through the greedy-defect polynomials
    // of a policy taken from the interval just above the breakpoint
    out.breakpoint_sets.reserve(out.breakpoints.size());
    const bool zero_is_breakpoint =
        !out.breakpoints.empty() && out.breakpoints.front().is_exact() &&
        out.breakpoints.front().value() == 0;
    for (std::size_t b = 0; b < out.breakpoints.size(); ++b) {
        if (zero_is_breakpoint && b == 0) {
            // gamma = 0 is an ordinary discount factor; evaluate directly
            PolicySetProduct at_zero = optimal_policy_set(M, Rational(0));
            out.breakpoint_sets.push_back(std::move(at_zero));
            continue;
        }
        std::size_t right_interval = zero_is_breakpoint ? b : b + 1;
        out.breakpoint_sets.push_back(optimal_set_at_breakpoint(
            M, scape, out.breakpoints[b], out.interval_sets[right_interval], policy_index));
    }

    out.blackwell_product = out.interval_sets.back();
    out.blackwell_set = out.blackwell_product.expand(opts.expand_guard);

    // descend from the top interval while both the breakpoint below and the
    // interval below it still carry exactly the Blackwell configuration
    std::size_t j = intervals - 1;
    AlgebraicNumber bw = AlgebraicNumber::exact(Rational(0));
    while (j > 0) {
        // E[j] is a true breakpoint; find its index in the breakpoint list
        std::size_t b = zero_is_breakpoint ? j : j - 1;
        bool boundary_ok = out.breakpoint_sets[b] == out.blackwell_product;
        bool below_ok = out.interval_sets[j - 1] == out.blackwell_product;
        if (!boundary_ok || !below_ok) {
            bw = E[j];
            break;
        }
        --j;
    }
    Rational width = opts.certificate_width ? *opts.certificate_width : default_certificate_width();
    bw.refine_below(width);
    out.gamma_bw = bw;
    return out;
}

BlackwellPolicyResult blackwell_optimal_policy(const MDPInstance& M, BlackwellMethod method,
                                               const AnalysisOptions& opts) {
    BlackwellPolicyResult out;
    out.method = method;
    if (method == BlackwellMethod::Exact) {
        BlackwellAnalysis analysis = exact_blackwell_analysis(M, opts);
        out.policy = analysis.blackwell_product.min_policy();
        return out;
    }
    EtaBound bound = eta_bound(M);
    out.gamma_used = bound.threshold;
    out.policy = exact_policy_iteration(M, bound.threshold).policy;
    return out;
}

} // namespace bwmdp
