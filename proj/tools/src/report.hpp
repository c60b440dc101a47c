#pragma once

#include "bwmdp/rational.hpp"
#include "bwmdp/roots.hpp"
#include "bwmdp/solvers.hpp"

#include <json.hpp>

#include <string>

namespace bwmdp::cli {

using ordered_json = nlohmann::ordered_json;

// every rational in a report carries both the exact form and a 30-digit
// decimal rendering, since quantities like eta underflow doubles
inline ordered_json rational_field(const Rational& q) {
    ordered_json out;
    out["exact"] = to_string(q);
    out["decimal"] = decimal_string(q, 30);
    return out;
}

inline ordered_json certificate_field(const AlgebraicNumber& x) {
    ordered_json out;
    if (x.is_exact()) {
        out["kind"] = "exact";
        out["value"] = rational_field(x.value());
    } else {
        out["kind"] = "interval";
        out["lo"] = rational_field(x.lo());
        out["hi"] = rational_field(x.hi());
        Rational width = x.hi() - x.lo();
        width.canonicalize();
        out["width"] = decimal_string(width, 6);
    }
    out["approx"] = decimal_string(x.midpoint(), 30);
    return out;
}

inline ordered_json policy_set_field(const PolicySetProduct& set) {
    ordered_json out;
    out["actions_per_state"] = set.actions_per_state;
    out["count"] = set.count().get_str();
    return out;
}

inline ordered_json report_skeleton(const std::string& command, const std::string& digest) {
    ordered_json doc;
    doc["schema_version"] = 1;
    doc["command"] = command;
    doc["instance_digest"] = digest;
    doc["parameters"] = ordered_json::object();
    doc["results"] = ordered_json::object();
    return doc;
}

} // namespace bwmdp::cli
