#pragma once

#include "bwmdp/exact_linear.hpp"
#include "bwmdp/mdp.hpp"
#include "bwmdp/roots.hpp"
#include "bwmdp/solvers.hpp"

#include <optional>
#include <vector>

namespace bwmdp {

/// Closed-form separation data for an instance: with N = 2|S| - 1 and
/// L = 2 |S| r_inf m^(2|S|) 4^|S| (clamped to >= 1), every discounted
/// optimum is Blackwell-optimal for gamma in [1 - eta, 1).
struct EtaBound {
    long N = 0;
    Integer L;
    Rational eta;
    Rational threshold; // 1 - eta
};

EtaBound eta_bound(const MDPInstance& M);

/// Largest gamma in [0, 1) where the values of pi and pi_prime at `state`
/// cross (largest root of the difference polynomial); exact 0 when the
/// difference has no root there or vanishes identically.
AlgebraicNumber gamma_pair(const MDPInstance& M, const Policy& pi, const Policy& pi_prime,
                           int state);

struct AnalysisOptions {
    /// Guard on the number of representative policies to enumerate.
    Integer policy_guard = Integer(1024);
    /// Guard on expanding the Blackwell optimal set into an explicit list.
    Integer expand_guard = Integer(100000);
    /// Interval certificates for gamma_bw are narrowed below this width.
    std::optional<Rational> certificate_width; // default 2^-64
};

/// Max of gamma_pair over all policy pairs and states; exact 0 when no
/// difference polynomial has a root in [0, 1).
AlgebraicNumber gamma_bar(const MDPInstance& M, const AnalysisOptions& opts = {});

/// Complete exact landscape of discounted optimality over [0, 1):
/// every crossing point, the optimal set on each open interval between
/// consecutive crossings, the optimal set at each crossing, the Blackwell
/// optimal set (top interval), and the Blackwell discount factor (the
/// lowest point down to which the top configuration persists).
struct BlackwellAnalysis {
    std::vector<Policy> policies;                  // representative policies
    std::vector<AlgebraicNumber> breakpoints;      // ascending, distinct
    std::vector<PolicySetProduct> interval_sets;   // one per open interval
    std::vector<PolicySetProduct> breakpoint_sets; // optimal set at each breakpoint
    AlgebraicNumber gamma_bar = AlgebraicNumber::exact(Rational(0));
    AlgebraicNumber gamma_bw = AlgebraicNumber::exact(Rational(0));
    PolicySetProduct blackwell_product;
    std::vector<Policy> blackwell_set;

    /// Number of open intervals (breakpoints + 1, minus one when 0 itself
    /// is a breakpoint).
    std::size_t interval_count() const { return interval_sets.size(); }
};

BlackwellAnalysis exact_blackwell_analysis(const MDPInstance& M, const AnalysisOptions& opts = {});

enum class BlackwellMethod {
    Exact,     // breakpoint analysis, lexicographically smallest member
    Reduction, // single exact policy iteration at gamma = 1 - eta
};

struct BlackwellPolicyResult {
    Policy policy;
    BlackwellMethod method = BlackwellMethod::Exact;
    std::optional<Rational> gamma_used; // reduction only
};

BlackwellPolicyResult blackwell_optimal_policy(const MDPInstance& M, BlackwellMethod method,
                                               const AnalysisOptions& opts = {});

} // namespace bwmdp
