#pragma once

#include "bwmdp/blackwell.hpp"
#include "bwmdp/mdp.hpp"
#include "bwmdp/roots.hpp"
#include "bwmdp/solvers.hpp"

#include <optional>
#include <vector>

namespace bwmdp {

/// Exact minimizer of p . v over the uncertainty ball around a nominal row
/// (simplex intersected with the norm ball).
struct InnerMinResult {
    Rational value;
    RationalVector dist;
};

/// Box-constrained greedy fill: clip the row to [nominal - alpha, nominal + alpha]
/// within the simplex and pour probability toward small v first.
InnerMinResult inner_min_linf(const RationalVector& nominal, const Rational& alpha,
                              const RationalVector& v);

/// Mass transport: up to alpha/2 of probability moves from the most expensive
/// states onto the cheapest state.
InnerMinResult inner_min_l1(const RationalVector& nominal, const Rational& alpha,
                            const RationalVector& v);

/// Dispatch on the instance's uncertainty set for row (s, a).
InnerMinResult inner_min(const MDPInstance& M, int s, int a, const RationalVector& v);

/// All extreme points of the ball, by basis enumeration over its facets.
/// Exponential in the row length; meant for desk-scale rows.
std::vector<RationalVector> ball_vertices(const RationalVector& nominal, const Rational& alpha,
                                          BallNorm norm);

/// Representative actions per state when actions are compared together with
/// their uncertainty radii.
std::vector<std::vector<int>> effective_actions_robust(const MDPInstance& M);

struct RobustEvalResult {
    RationalVector values;        // worst-case discounted values of the policy
    RationalMatrix worst_kernel;  // row per state, the minimizing kernel
    unsigned iterations = 0;
};

/// Exact worst-case policy evaluation: alternates the inner minimizers with
/// exact linear solves until the adversarial kernel is stable.
RobustEvalResult robust_policy_evaluation(const MDPInstance& M, const Policy& pi,
                                          const Rational& gamma);

struct RobustSolveExact {
    Policy policy;
    RationalVector values;
    RationalMatrix worst_kernel;
    unsigned iterations = 0;
};

/// Exact robust optimum via policy iteration over representative actions,
/// lexicographic improvement, worst-case evaluation per step.
RobustSolveExact robust_solve_exact(const MDPInstance& M, const Rational& gamma);

struct RobustFloatResult {
    Policy policy;
    std::vector<double> values;
    unsigned long iterations = 0;
    double residual = 0.0;
};

/// Double-precision robust value iteration (closed-form inner minimizers in
/// floating point) to the given sup-norm residual.
RobustFloatResult robust_value_iteration_float(const MDPInstance& M, double gamma,
                                               double tol = 1e-12);

/// Separation bound adapted to extreme-kernel denominators: the denominator
/// base stays m for ell_inf balls and becomes 2m for ell_1 balls.
EtaBound robust_eta_bound(const MDPInstance& M);

struct RobustAnalysisOptions {
    Integer policy_guard = Integer(256);
    /// Guard on vertex selections per policy and on total (policy, selection) units.
    Integer unit_guard = Integer(20000);
    Integer expand_guard = Integer(100000);
    std::optional<Rational> certificate_width; // default 2^-64
};

/// Robust counterpart of exact_blackwell_analysis. Kernel selections range
/// over the extreme points of every row's ball, so each (policy, selection)
/// pair contributes one rational value function to the breakpoint landscape.
struct RobustBlackwellAnalysis {
    std::vector<Policy> policies;
    std::size_t unit_count = 0; // (policy, selection) pairs in the landscape
    std::vector<AlgebraicNumber> breakpoints;
    std::vector<PolicySetProduct> interval_sets;
    std::vector<PolicySetProduct> breakpoint_sets;
    AlgebraicNumber gamma_bar = AlgebraicNumber::exact(Rational(0));
    AlgebraicNumber gamma_bw = AlgebraicNumber::exact(Rational(0));
    PolicySetProduct blackwell_product;
    std::vector<Policy> blackwell_set;
};

RobustBlackwellAnalysis robust_blackwell_analysis(const MDPInstance& M,
                                                  const RobustAnalysisOptions& opts = {});

} // namespace bwmdp
