#include "bwmdp/json_io.hpp"

#include "bwmdp/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace bwmdp {

using json = nlohmann::ordered_json;

namespace {

Rational rational_from_json(const json& v, const ParseOptions& opts, const std::string& where) {
    std::optional<Integer> max_den;
    if (opts.rationalize) max_den = opts.rationalize_max_den;
    if (v.is_string()) {
        try {
            return parse_rational(v.get<std::string>(), max_den);
        } catch (const ParseError& e) {
            throw ParseError(std::string(e.what()) + " at " + where);
        }
    }
    if (v.is_number_integer()) {
        long long n = v.get<long long>();
        return Rational(Integer(std::to_string(n)));
    }
    if (v.is_number_float()) {
        if (!opts.rationalize)
            throw ParseError("float literal at " + where +
                             " (pass a \"num/den\" string, or opt in to rationalization)");
        Rational exact(v.get<double>());
        exact.canonicalize();
        return limit_denominator(exact, opts.rationalize_max_den);
    }
    throw ParseError("expected a rational at " + where);
}

int int_field(const json& doc, const char* key) {
    if (!doc.contains(key)) throw ParseError(std::string("missing field: ") + key);
    const json& v = doc.at(key);
    if (!v.is_number_integer()) throw ParseError(std::string("field must be an integer: ") + key);
    return v.get<int>();
}

} // namespace

MDPInstance parse_instance_json(const std::string& text, const ParseOptions& opts) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("instance document must be a JSON object");

    MDPInstance M;
    M.n_states = int_field(doc, "n_states");
    M.n_actions = int_field(doc, "n_actions");

    if (!doc.contains("rewards") || !doc.at("rewards").is_array())
        throw ParseError("missing or non-array field: rewards");
    if (!doc.contains("transitions") || !doc.at("transitions").is_array())
        throw ParseError("missing or non-array field: transitions");

    for (std::size_t s = 0; s < doc.at("rewards").size(); ++s) {
        const json& row = doc.at("rewards")[s];
        if (!row.is_array()) throw ParseError("rewards rows must be arrays");
        std::vector<Rational> out;
        for (std::size_t a = 0; a < row.size(); ++a)
            out.push_back(rational_from_json(row[a], opts,
                                             "rewards[" + std::to_string(s) + "][" + std::to_string(a) + "]"));
        M.rewards.push_back(std::move(out));
    }
    for (std::size_t s = 0; s < doc.at("transitions").size(); ++s) {
        const json& per_action = doc.at("transitions")[s];
        if (!per_action.is_array()) throw ParseError("transitions rows must be arrays");
        std::vector<std::vector<Rational>> rows;
        for (std::size_t a = 0; a < per_action.size(); ++a) {
            const json& dist = per_action[a];
            if (!dist.is_array()) throw ParseError("transition distributions must be arrays");
            std::vector<Rational> out;
            for (std::size_t t = 0; t < dist.size(); ++t)
                out.push_back(rational_from_json(dist[t], opts,
                                                 "transitions[" + std::to_string(s) + "][" +
                                                     std::to_string(a) + "][" + std::to_string(t) + "]"));
            rows.push_back(std::move(out));
        }
        M.transitions.push_back(std::move(rows));
    }

    if (doc.contains("m")) {
        const json& v = doc.at("m");
        if (v.is_number_integer()) {
            M.m_declared = Integer(std::to_string(v.get<long long>()));
        } else if (v.is_string()) {
            Rational q = parse_rational(v.get<std::string>());
            if (q.get_den() != 1) throw ParseError("m must be an integer");
            M.m_declared = q.get_num();
        } else {
            throw ParseError("m must be an integer");
        }
    }

    if (doc.contains("uncertainty")) {
        const json& u = doc.at("uncertainty");
        if (!u.is_object()) throw ParseError("uncertainty must be an object");
        UncertaintySet U;
        if (!u.contains("norm") || !u.at("norm").is_string())
            throw ParseError("uncertainty.norm must be \"l1\" or \"linf\"");
        std::string norm = u.at("norm").get<std::string>();
        if (norm == "l1") U.norm = BallNorm::L1;
        else if (norm == "linf") U.norm = BallNorm::Linf;
        else throw ParseError("uncertainty.norm must be \"l1\" or \"linf\"");
        if (!u.contains("radii") || !u.at("radii").is_array())
            throw ParseError("uncertainty.radii must be an array");
        for (std::size_t s = 0; s < u.at("radii").size(); ++s) {
            const json& row = u.at("radii")[s];
            if (!row.is_array()) throw ParseError("uncertainty.radii rows must be arrays");
            std::vector<Rational> out;
            for (std::size_t a = 0; a < row.size(); ++a)
                out.push_back(rational_from_json(row[a], opts,
                                                 "uncertainty.radii[" + std::to_string(s) + "][" +
                                                     std::to_string(a) + "]"));
            U.radii.push_back(std::move(out));
        }
        M.uncertainty = std::move(U);
    }

    validate(M);
    return M;
}

MDPInstance load_instance_file(const std::string& path, const ParseOptions& opts) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open instance file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_instance_json(buf.str(), opts);
}

std::string instance_to_json(const MDPInstance& M) {
    json doc;
    doc["n_states"] = M.n_states;
    doc["n_actions"] = M.n_actions;
    json rewards = json::array();
    for (const auto& row : M.rewards) {
        json r = json::array();
        for (const auto& q : row) r.push_back(to_string(q));
        rewards.push_back(std::move(r));
    }
    doc["rewards"] = std::move(rewards);
    json transitions = json::array();
    for (const auto& per_action : M.transitions) {
        json rows = json::array();
        for (const auto& dist : per_action) {
            json d = json::array();
            for (const auto& q : dist) d.push_back(to_string(q));
            rows.push_back(std::move(d));
        }
        transitions.push_back(std::move(rows));
    }
    doc["transitions"] = std::move(transitions);
    if (mpz_fits_slong_p(M.m.get_mpz_t()))
        doc["m"] = static_cast<long long>(M.m.get_si());
    else
        doc["m"] = M.m.get_str();
    if (M.uncertainty) {
        json u;
        u["norm"] = M.uncertainty->norm == BallNorm::L1 ? "l1" : "linf";
        json radii = json::array();
        for (const auto& row : M.uncertainty->radii) {
            json r = json::array();
            for (const auto& q : row) r.push_back(to_string(q));
            radii.push_back(std::move(r));
        }
        u["radii"] = std::move(radii);
        doc["uncertainty"] = std::move(u);
    }
    return doc.dump(2) + "\n";
}

void save_instance_file(const MDPInstance& M, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open output file: " + path);
    out << instance_to_json(M);
    if (!out) throw ParseError("failed writing output file: " + path);
}

std::string instance_digest(const MDPInstance& M) {
    return fnv1a_hex(instance_to_json(M));
}

} // namespace bwmdp
