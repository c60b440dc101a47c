#pragma once

#include "bwmdp/mdp.hpp"

#include <optional>
#include <string>

namespace bwmdp {

struct ParseOptions {
    /// When set, decimal/float literals are admitted and replaced by the
    /// closest rational with denominator <= rationalize_max_den.
    bool rationalize = false;
    Integer rationalize_max_den = Integer(1000000);
};

/// Parses and validates an instance document. Throws ParseError on malformed
/// JSON or literals, ValidationError on model violations.
MDPInstance parse_instance_json(const std::string& text, const ParseOptions& opts = {});
MDPInstance load_instance_file(const std::string& path, const ParseOptions& opts = {});

/// Canonical serialization: fixed key order, rationals as "num/den" strings
/// (bare "num" when the denominator is 1), m always present. Byte-stable for
/// equal instances.
std::string instance_to_json(const MDPInstance& M);
void save_instance_file(const MDPInstance& M, const std::string& path);

/// FNV-1a digest of the canonical serialization.
std::string instance_digest(const MDPInstance& M);

} // namespace bwmdp
