#include "bwmdp/solvers.hpp"

#include "bwmdp/errors.hpp"
#include "bwmdp/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bwmdp {

Integer PolicySetProduct::count() const {
    Integer c(1);
    for (const auto& menu : actions_per_state) c *= Integer(static_cast<unsigned long>(menu.size()));
    return c;
}

bool PolicySetProduct::contains(const Policy& pi) const {
    if (pi.size() != actions_per_state.size()) return false;
    for (std::size_t s = 0; s < pi.size(); ++s)
        if (!std::binary_search(actions_per_state[s].begin(), actions_per_state[s].end(), pi[s]))
            return false;
    return true;
}

Policy PolicySetProduct::min_policy() const {
    Policy pi(actions_per_state.size());
    for (std::size_t s = 0; s < pi.size(); ++s) {
        if (actions_per_state[s].empty()) throw InternalError("empty greedy set");
        pi[s] = actions_per_state[s].front();
    }
    return pi;
}

std::vector<Policy> PolicySetProduct::expand(const Integer& guard) const {
    Integer c = count();
    if (c > guard)
        throw SpaceTooLarge(SpaceTooLarge::Kind::PolicySpace,
                            "optimal policy set has " + c.get_str() + " members, guard is " +
                                guard.get_str());
    std::vector<Policy> out;
    Policy current(actions_per_state.size());
    std::vector<std::size_t> idx(actions_per_state.size(), 0);
    while (true) {
        for (std::size_t s = 0; s < idx.size(); ++s) current[s] = actions_per_state[s][idx[s]];
        out.push_back(current);
        std::size_t pos = idx.size();
        bool done = true;
        while (pos > 0) {
            --pos;
            if (++idx[pos] < actions_per_state[pos].size()) {
                done = false;
                break;
            }
            idx[pos] = 0;
        }
        if (done) return out;
    }
}

RationalVector exact_policy_evaluation(const MDPInstance& M, const Policy& pi,
                                       const Rational& gamma) {
    if (gamma < 0 || gamma >= 1)
        throw GammaOutOfRange("gamma must lie in [0, 1), got " + to_string(gamma));
    RationalMatrix P = induced_kernel(M, pi);
    RationalVector r = induced_reward(M, pi);
    const std::size_t n = P.size();
    RationalMatrix A(n, RationalVector(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            A[i][j] = (i == j ? Rational(1) : Rational(0)) - gamma * P[i][j];
            A[i][j].canonicalize();
        }
    return solve_linear(A, r);
}

namespace {

// Sorted greedy action sets w.r.t. v, over the given menus.
std::vector<std::vector<int>> greedy_sets(const MDPInstance& M, const Rational& gamma,
                                          const RationalVector& v,
                                          const std::vector<std::vector<int>>& menus) {
    std::vector<std::vector<int>> sets(static_cast<std::size_t>(M.n_states));
    for (int s = 0; s < M.n_states; ++s) {
        Rational best;
        bool have = false;
        std::vector<int>& out = sets[static_cast<std::size_t>(s)];
        for (int a : menus[static_cast<std::size_t>(s)]) {
            Rational q = M.rewards[s][static_cast<std::size_t>(a)];
            for (int t = 0; t < M.n_states; ++t)
                q += gamma * M.transitions[s][static_cast<std::size_t>(a)][static_cast<std::size_t>(t)] *
                     v[static_cast<std::size_t>(t)];
            q.canonicalize();
            if (!have || q > best) {
                best = q;
                out.clear();
                out.push_back(a);
                have = true;
            } else if (q == best) {
                out.push_back(a);
            }
        }
    }
    return sets;
}

} // namespace

ExactSolveResult exact_policy_iteration(const MDPInstance& M, const Rational& gamma) {
    if (gamma < 0 || gamma >= 1)
        throw GammaOutOfRange("gamma must lie in [0, 1), got " + to_string(gamma));
    auto menus = effective_actions(M);
    Policy pi(static_cast<std::size_t>(M.n_states));
    for (int s = 0; s < M.n_states; ++s) pi[static_cast<std::size_t>(s)] = menus[static_cast<std::size_t>(s)].front();

    ExactSolveResult res;
    while (true) {
        ++res.iterations;
        RationalVector v = exact_policy_evaluation(M, pi, gamma);
        auto sets = greedy_sets(M, gamma, v, menus);
        bool stable = true;
        for (int s = 0; s < M.n_states; ++s) {
            const auto& g = sets[static_cast<std::size_t>(s)];
            if (!std::binary_search(g.begin(), g.end(), pi[static_cast<std::size_t>(s)])) {
                pi[static_cast<std::size_t>(s)] = g.front();
                stable = false;
            }
        }
        if (stable) {
            res.policy = pi;
            res.values = std::move(v);
            return res;
        }
        if (res.iterations > 1000000) throw NonConvergence("policy iteration exceeded its budget");
    }
}

PolicySetProduct optimal_policy_set(const MDPInstance& M, const Rational& gamma) {
    ExactSolveResult star = exact_policy_iteration(M, gamma);
    auto menus = effective_actions(M);
    PolicySetProduct out;
    out.actions_per_state = greedy_sets(M, gamma, star.values, menus);
    return out;
}

FloatSolveResult float_value_iteration(const MDPInstance& M, double gamma, double tol) {
    if (gamma < 0.0 || gamma >= 1.0)
        throw GammaOutOfRange("gamma must lie in [0, 1)");
    const std::size_t S = static_cast<std::size_t>(M.n_states);
    const std::size_t A = static_cast<std::size_t>(M.n_actions);
    std::vector<std::vector<double>> r(S, std::vector<double>(A));
    std::vector<std::vector<std::vector<double>>> P(S, std::vector<std::vector<double>>(A, std::vector<double>(S)));
    for (std::size_t s = 0; s < S; ++s)
        for (std::size_t a = 0; a < A; ++a) {
            r[s][a] = M.rewards[s][a].get_d();
            for (std::size_t t = 0; t < S; ++t) P[s][a][t] = M.transitions[s][a][t].get_d();
        }

    FloatSolveResult res;
    res.values.assign(S, 0.0);
    std::vector<double> next(S, 0.0);
    // contraction bound on the sweeps needed, with margin for rounding noise
    double rmax = 1e-300;
    for (std::size_t s = 0; s < S; ++s)
        for (std::size_t a = 0; a < A; ++a) rmax = std::max(rmax, std::abs(r[s][a]));
    unsigned long budget = 1000;
    if (gamma > 0.0) {
        double steps = (std::log(tol) + std::log1p(-gamma) - std::log(rmax)) / std::log(gamma);
        if (steps > 0 && std::isfinite(steps)) budget += static_cast<unsigned long>(steps);
    }

    double residual = 0.0;
    for (res.iterations = 0; res.iterations < budget; ++res.iterations) {
        residual = 0.0;
        for (std::size_t s = 0; s < S; ++s) {
            double best = -std::numeric_limits<double>::infinity();
            for (std::size_t a = 0; a < A; ++a) {
                double q = r[s][a];
                for (std::size_t t = 0; t < S; ++t) q += gamma * P[s][a][t] * res.values[t];
                best = std::max(best, q);
            }
            next[s] = best;
            residual = std::max(residual, std::abs(best - res.values[s]));
        }
        res.values.swap(next);
        if (residual <= tol) {
            ++res.iterations;
            break;
        }
    }
    res.residual = residual;

    res.policy.assign(S, 0);
    for (std::size_t s = 0; s < S; ++s) {
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t a = 0; a < A; ++a) {
            double q = r[s][a];
            for (std::size_t t = 0; t < S; ++t) q += gamma * P[s][a][t] * res.values[t];
            if (q > best) {
                best = q;
                res.policy[s] = static_cast<int>(a);
            }
        }
    }
    return res;
}

} // namespace bwmdp
