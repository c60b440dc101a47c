#include "bwmdp/robust.hpp"

#include "bwmdp/errors.hpp"
#include "bwmdp/exact_linear.hpp"
#include "bwmdp/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

namespace bwmdp {

namespace {

const UncertaintySet& require_uncertainty(const MDPInstance& M) {
    if (!M.uncertainty)
        throw ValidationError("instance carries no uncertainty set");
    return *M.uncertainty;
}

} // namespace

InnerMinResult inner_min_linf(const RationalVector& nominal, const Rational& alpha,
                              const RationalVector& v) {
    const std::size_t n = nominal.size();
    if (v.size() != n) throw InternalError("inner_min_linf: size mismatch");
    if (alpha < 0) throw ValidationError("negative uncertainty radius");
    RationalVector lo(n), hi(n);
    Rational lo_sum(0);
    for (std::size_t i = 0; i < n; ++i) {
        lo[i] = nominal[i] - alpha;
        if (lo[i] < 0) lo[i] = 0;
        hi[i] = nominal[i] + alpha;
        if (hi[i] > 1) hi[i] = 1;
        lo_sum += lo[i];
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        int c = cmp(v[a], v[b]);
        if (c != 0) return c < 0;
        return a < b;
    });
    RationalVector p = lo;
    Rational budget = Rational(1) - lo_sum;
    if (budget < 0) throw InternalError("inner_min_linf: infeasible box");
    for (std::size_t i : order) {
        if (budget == 0) break;
        Rational room = hi[i] - lo[i];
        Rational take = room < budget ? room : budget;
        p[i] += take;
        budget -= take;
    }
    if (budget != 0) throw InternalError("inner_min_linf: could not restore stochasticity");
    InnerMinResult out;
    out.dist = std::move(p);
    out.value = Rational(0);
    for (std::size_t i = 0; i < n; ++i) out.value += out.dist[i] * v[i];
    out.value.canonicalize();
    return out;
}

InnerMinResult inner_min_l1(const RationalVector& nominal, const Rational& alpha,
                            const RationalVector& v) {
    const std::size_t n = nominal.size();
    if (v.size() != n) throw InternalError("inner_min_l1: size mismatch");
    if (alpha < 0) throw ValidationError("negative uncertainty radius");
    // cheapest target state, smallest index on ties
    std::size_t target = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (v[i] < v[target]) target = i;
    // drain the most expensive states first, at most alpha/2 in total
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        int c = cmp(v[a], v[b]);
        if (c != 0) return c > 0;
        return a < b;
    });
    RationalVector p = nominal;
    Rational budget = alpha / 2;
    for (std::size_t i : order) {
        if (budget == 0) break;
        if (i == target || !(v[i] > v[target])) continue;
        Rational take = p[i] < budget ? p[i] : budget;
        p[i] -= take;
        p[target] += take;
        budget -= take;
    }
    InnerMinResult out;
    out.dist = std::move(p);
    out.value = Rational(0);
    for (std::size_t i = 0; i < n; ++i) out.value += out.dist[i] * v[i];
    out.value.canonicalize();
    return out;
}

InnerMinResult inner_min(const MDPInstance& M, int s, int a, const RationalVector& v) {
    const UncertaintySet& U = require_uncertainty(M);
    const RationalVector& row = M.transitions[static_cast<std::size_t>(s)][static_cast<std::size_t>(a)];
    const Rational& alpha = U.radii[static_cast<std::size_t>(s)][static_cast<std::size_t>(a)];
    if (U.norm == BallNorm::Linf) return inner_min_linf(row, alpha, v);
    return inner_min_l1(row, alpha, v);
}

namespace {

bool l1_norm_within(const RationalVector& p, const RationalVector& nominal, const Rational& alpha) {
    Rational total(0);
    for (std::size_t i = 0; i < p.size(); ++i) total += abs(p[i] - nominal[i]);
    return total <= alpha;
}

std::vector<RationalVector> dedup_rows(std::vector<RationalVector> rows) {
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    return rows;
}

std::vector<RationalVector> vertices_linf(const RationalVector& nominal, const Rational& alpha) {
    const std::size_t n = nominal.size();
    RationalVector lo(n), hi(n);
    for (std::size_t i = 0; i < n; ++i) {
        lo[i] = nominal[i] - alpha;
        if (lo[i] < 0) lo[i] = 0;
        hi[i] = nominal[i] + alpha;
        if (hi[i] > 1) hi[i] = 1;
    }
    std::vector<RationalVector> out;
    // pin every coordinate but one at a box bound; the free one is forced
    for (std::size_t free = 0; free < n; ++free) {
        const std::size_t others = n - 1;
        for (std::size_t mask = 0; mask < (std::size_t{1} << others); ++mask) {
            RationalVector p(n);
            Rational rest(0);
            std::size_t bit = 0;
            for (std::size_t i = 0; i < n; ++i) {
                if (i == free) continue;
                p[i] = ((mask >> bit) & 1u) ? hi[i] : lo[i];
                rest += p[i];
                ++bit;
            }
            Rational pf = Rational(1) - rest;
            if (pf < lo[free] || pf > hi[free]) continue;
            pf.canonicalize();
            p[free] = pf;
            out.push_back(std::move(p));
        }
    }
    return dedup_rows(std::move(out));
}

std::vector<RationalVector> vertices_l1(const RationalVector& nominal, const Rational& alpha) {
    const std::size_t n = nominal.size();
    if (n > 6)
        throw SpaceTooLarge(SpaceTooLarge::Kind::VertexSpace,
                            "ell_1 vertex enumeration limited to rows of length <= 6");
    if (n == 1) return {RationalVector{Rational(1)}};
    // facets: p_i >= 0 (n of them) and sigma . (p - nominal) <= alpha for
    // every sign vector sigma (2^n); a vertex makes n - 1 independent facets
    // tight together with sum p = 1
    struct Facet {
        RationalVector a;
        Rational rhs;
    };
    std::vector<Facet> facets;
    for (std::size_t i = 0; i < n; ++i) {
        RationalVector a(n, Rational(0));
        a[i] = Rational(1);
        facets.push_back({std::move(a), Rational(0)}); // p_i = 0 when tight
    }
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        RationalVector a(n);
        Rational rhs = alpha;
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = ((mask >> i) & 1u) ? Rational(1) : Rational(-1);
            rhs += a[i] * nominal[i];
        }
        facets.push_back({std::move(a), rhs});
    }

    std::vector<RationalVector> out;
    // iterate over (n-1)-subsets of the facet list
    const std::size_t k = n - 1;
    const std::size_t F = facets.size();
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    bool more = true;
    while (more) {
        RationalMatrix A(n, RationalVector(n, Rational(1))); // first row: sum p = 1
        RationalVector b(n, Rational(1));
        for (std::size_t q = 0; q < k; ++q) {
            A[q + 1] = facets[idx[q]].a;
            b[q + 1] = facets[idx[q]].rhs;
        }
        try {
            RationalVector p = solve_linear(A, b);
            bool feasible = true;
            for (const Rational& x : p)
                if (x < 0) {
                    feasible = false;
                    break;
                }
            if (feasible && l1_norm_within(p, nominal, alpha)) {
                for (Rational& x : p) x.canonicalize();
                out.push_back(std::move(p));
            }
        } catch (const InternalError&) {
            // singular basis, skip
        }
        // next combination in lexicographic order
        std::size_t pos = k;
        while (pos > 0 && idx[pos - 1] == F - k + (pos - 1)) --pos;
        if (pos == 0) {
            more = false;
        } else {
            ++idx[pos - 1];
            for (std::size_t q = pos; q < k; ++q) idx[q] = idx[q - 1] + 1;
        }
    }
    return dedup_rows(std::move(out));
}

} // namespace

std::vector<RationalVector> ball_vertices(const RationalVector& nominal, const Rational& alpha,
                                          BallNorm norm) {
    if (alpha < 0) throw ValidationError("negative uncertainty radius");
    if (alpha == 0) return {nominal};
    if (norm == BallNorm::Linf) return vertices_linf(nominal, alpha);
    return vertices_l1(nominal, alpha);
}

std::vector<std::vector<int>> effective_actions_robust(const MDPInstance& M) {
    const UncertaintySet& U = require_uncertainty(M);
    std::vector<std::vector<int>> reps(static_cast<std::size_t>(M.n_states));
    for (int s = 0; s < M.n_states; ++s) {
        for (int a = 0; a < M.n_actions; ++a) {
            bool duplicate = false;
            for (int r : reps[static_cast<std::size_t>(s)]) {
                if (M.rewards[s][static_cast<std::size_t>(a)] == M.rewards[s][static_cast<std::size_t>(r)] &&
                    M.transitions[s][static_cast<std::size_t>(a)] == M.transitions[s][static_cast<std::size_t>(r)] &&
                    U.radii[s][static_cast<std::size_t>(a)] == U.radii[s][static_cast<std::size_t>(r)]) {
                    duplicate = true;
                    break;
                }
            }
            if (!duplicate) reps[static_cast<std::size_t>(s)].push_back(a);
        }
    }
    return reps;
}

RobustEvalResult robust_policy_evaluation(const MDPInstance& M, const Policy& pi,
                                          const Rational& gamma) {
    if (gamma < 0 || gamma >= 1)
        throw GammaOutOfRange("gamma must lie in [0, 1), got " + to_string(gamma));
    require_uncertainty(M);
    const std::size_t n = static_cast<std::size_t>(M.n_states);
    RationalVector r = induced_reward(M, pi);
    RationalMatrix K = induced_kernel(M, pi);

    RobustEvalResult out;
    while (true) {
        ++out.iterations;
        RationalMatrix A(n, RationalVector(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                A[i][j] = (i == j ? Rational(1) : Rational(0)) - gamma * K[i][j];
                A[i][j].canonicalize();
            }
        RationalVector v = solve_linear(A, r);
        bool changed = false;
        for (std::size_t s = 0; s < n; ++s) {
            InnerMinResult im = inner_min(M, static_cast<int>(s), pi[s], v);
            Rational current(0);
            for (std::size_t t = 0; t < n; ++t) current += K[s][t] * v[t];
            if (im.value < current) {
                K[s] = im.dist;
                changed = true;
            }
        }
        if (!changed) {
            out.values = std::move(v);
            out.worst_kernel = std::move(K);
            return out;
        }
        if (out.iterations > 100000)
            throw NonConvergence("adversarial evaluation exceeded its budget");
    }
}

RobustSolveExact robust_solve_exact(const MDPInstance& M, const Rational& gamma) {
    if (gamma < 0 || gamma >= 1)
        throw GammaOutOfRange("gamma must lie in [0, 1), got " + to_string(gamma));
    auto menus = effective_actions_robust(M);
    Policy pi(static_cast<std::size_t>(M.n_states));
    for (std::size_t s = 0; s < pi.size(); ++s) pi[s] = menus[s].front();

    RobustSolveExact out;
    while (true) {
        ++out.iterations;
        RobustEvalResult ev = robust_policy_evaluation(M, pi, gamma);
        bool stable = true;
        for (int s = 0; s < M.n_states; ++s) {
            Rational best;
            bool have = false;
            std::vector<int> argmax;
            for (int a : menus[static_cast<std::size_t>(s)]) {
                InnerMinResult im = inner_min(M, s, a, ev.values);
                Rational q = M.rewards[s][static_cast<std::size_t>(a)] + gamma * im.value;
                q.canonicalize();
                if (!have || q > best) {
                    best = q;
                    argmax.assign(1, a);
                    have = true;
                } else if (q == best) {
                    argmax.push_back(a);
                }
            }
            if (!std::binary_search(argmax.begin(), argmax.end(), pi[static_cast<std::size_t>(s)])) {
                pi[static_cast<std::size_t>(s)] = argmax.front();
                stable = false;
            }
        }
        if (stable) {
            out.policy = pi;
            out.values = std::move(ev.values);
            out.worst_kernel = std::move(ev.worst_kernel);
            return out;
        }
        if (out.iterations > 100000) throw NonConvergence("robust policy iteration exceeded its budget");
    }
}

namespace {

double inner_min_value_float(const std::vector<double>& nominal, double alpha,
                             const std::vector<double>& v, BallNorm norm) {
    const std::size_t n = nominal.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    if (norm == BallNorm::Linf) {
        std::vector<double> lo(n), hi(n);
        double lo_sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            lo[i] = std::max(0.0, nominal[i] - alpha);
            hi[i] = std::min(1.0, nominal[i] + alpha);
            lo_sum += lo[i];
        }
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
        double budget = 1.0 - lo_sum;
        double value = 0.0;
        std::vector<double> p = lo;
        for (std::size_t i : order) {
            double take = std::min(hi[i] - lo[i], std::max(0.0, budget));
            p[i] += take;
            budget -= take;
        }
        for (std::size_t i = 0; i < n; ++i) value += p[i] * v[i];
        return value;
    }
    std::size_t target = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (v[i] < v[target]) target = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] > v[b]; });
    std::vector<double> p = nominal;
    double budget = alpha / 2.0;
    for (std::size_t i : order) {
        if (budget <= 0.0) break;
        if (i == target || !(v[i] > v[target])) continue;
        double take = std::min(p[i], budget);
        p[i] -= take;
        p[target] += take;
        budget -= take;
    }
    double value = 0.0;
    for (std::size_t i = 0; i < n; ++i) value += p[i] * v[i];
    return value;
}

} // namespace

RobustFloatResult robust_value_iteration_float(const MDPInstance& M, double gamma, double tol) {
    if (gamma < 0.0 || gamma >= 1.0) throw GammaOutOfRange("gamma must lie in [0, 1)");
    const UncertaintySet& U = require_uncertainty(M);
    const std::size_t S = static_cast<std::size_t>(M.n_states);
    const std::size_t A = static_cast<std::size_t>(M.n_actions);
    std::vector<std::vector<double>> r(S, std::vector<double>(A));
    std::vector<std::vector<double>> alpha(S, std::vector<double>(A));
    std::vector<std::vector<std::vector<double>>> P(
        S, std::vector<std::vector<double>>(A, std::vector<double>(S)));
    for (std::size_t s = 0; s < S; ++s)
        for (std::size_t a = 0; a < A; ++a) {
            r[s][a] = M.rewards[s][a].get_d();
            alpha[s][a] = U.radii[s][a].get_d();
            for (std::size_t t = 0; t < S; ++t) P[s][a][t] = M.transitions[s][a][t].get_d();
        }

    double rmax = 1e-300;
    for (std::size_t s = 0; s < S; ++s)
        for (std::size_t a = 0; a < A; ++a) rmax = std::max(rmax, std::abs(r[s][a]));
    unsigned long budget = 1000;
    if (gamma > 0.0) {
        double steps = (std::log(tol) + std::log1p(-gamma) - std::log(rmax)) / std::log(gamma);
        if (steps > 0 && std::isfinite(steps)) budget += static_cast<unsigned long>(steps);
    }

    RobustFloatResult res;
    res.values.assign(S, 0.0);
    std::vector<double> next(S, 0.0);
    double residual = 0.0;
    for (res.iterations = 0; res.iterations < budget; ++res.iterations) {
        residual = 0.0;
        for (std::size_t s = 0; s < S; ++s) {
            double best = -std::numeric_limits<double>::infinity();
            for (std::size_t a = 0; a < A; ++a) {
                double q = r[s][a] +
                           gamma * inner_min_value_float(P[s][a], alpha[s][a], res.values, U.norm);
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
            double q = r[s][a] + gamma * inner_min_value_float(P[s][a], alpha[s][a], res.values, U.norm);
            if (q > best) {
                best = q;
                res.policy[s] = static_cast<int>(a);
            }
        }
    }
    return res;
}

EtaBound robust_eta_bound(const MDPInstance& M) {
    // no uncertainty set degenerates to the nominal bound (radius-zero ball)
    if (!M.uncertainty) return eta_bound(M);
    EtaBound out;
    const long S = M.n_states;
    Integer base = M.uncertainty->norm == BallNorm::L1 ? Integer(2 * M.m) : M.m;
    out.N = 2 * S - 1;
    Integer base_pow;
    mpz_pow_ui(base_pow.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(2 * S));
    Integer four_pow;
    mpz_ui_pow_ui(four_pow.get_mpz_t(), 4, static_cast<unsigned long>(S));
    out.L = Integer(2 * S) * M.r_inf * base_pow * four_pow;
    if (out.L < 1) out.L = 1;
    out.eta = rump_eta(out.N, out.L);
    out.threshold = Rational(1) - out.eta;
    out.threshold.canonicalize();
    return out;
}

namespace {

struct Unit {
    std::size_t policy_idx;
    RationalMatrix kernel;
    ValuePolys polys;
};

struct RobustLandscape {
    std::vector<Policy> policies;
    std::vector<std::vector<std::size_t>> units_of_policy;
    std::vector<Unit> units;
    std::vector<AlgebraicNumber> breakpoints;
};

std::vector<Policy> enumerate_policies_over(const std::vector<std::vector<int>>& menus,
                                            const Integer& guard) {
    Integer count(1);
    for (const auto& menu : menus) count *= Integer(static_cast<unsigned long>(menu.size()));
    if (count > guard)
        throw SpaceTooLarge(SpaceTooLarge::Kind::PolicySpace,
                            "policy space has " + count.get_str() + " policies, guard is " +
                                guard.get_str());
    std::vector<Policy> out;
    Policy current(menus.size());
    std::vector<std::size_t> idx(menus.size(), 0);
    while (true) {
        for (std::size_t s = 0; s < idx.size(); ++s) current[s] = menus[s][idx[s]];
        out.push_back(current);
        std::size_t pos = idx.size();
        bool done = true;
        while (pos > 0) {
            --pos;
            if (++idx[pos] < menus[pos].size()) {
                done = false;
                break;
            }
            idx[pos] = 0;
        }
        if (done) return out;
    }
}

RobustLandscape build_robust_landscape(const MDPInstance& M, const RobustAnalysisOptions& opts) {
    const UncertaintySet& U = require_uncertainty(M);
    RobustLandscape scape;
    auto menus = effective_actions_robust(M);
    scape.policies = enumerate_policies_over(menus, opts.policy_guard);
    scape.units_of_policy.resize(scape.policies.size());

    const std::size_t n = static_cast<std::size_t>(M.n_states);
    for (std::size_t pidx = 0; pidx < scape.policies.size(); ++pidx) {
        const Policy& pi = scape.policies[pidx];
        std::vector<std::vector<RationalVector>> row_vertices(n);
        Integer selections(1);
        for (std::size_t s = 0; s < n; ++s) {
            row_vertices[s] = ball_vertices(M.transitions[s][static_cast<std::size_t>(pi[s])],
                                            U.radii[s][static_cast<std::size_t>(pi[s])], U.norm);
            selections *= Integer(static_cast<unsigned long>(row_vertices[s].size()));
        }
        if (selections > opts.unit_guard ||
            Integer(static_cast<unsigned long>(scape.units.size())) + selections > opts.unit_guard)
            throw SpaceTooLarge(SpaceTooLarge::Kind::VertexSpace,
                                "extreme-kernel selection space exceeds the guard (" +
                                    opts.unit_guard.get_str() + ")");
        RationalVector r = induced_reward(M, pi);
        std::vector<std::size_t> idx(n, 0);
        while (true) {
            RationalMatrix K(n);
            for (std::size_t s = 0; s < n; ++s) K[s] = row_vertices[s][idx[s]];
            Unit unit;
            unit.policy_idx = pidx;
            unit.kernel = K;
            unit.polys = value_polys_kernel(K, r);
            scape.units_of_policy[pidx].push_back(scape.units.size());
            scape.units.push_back(std::move(unit));
            std::size_t pos = n;
            bool done = true;
            while (pos > 0) {
                --pos;
                if (++idx[pos] < row_vertices[pos].size()) {
                    done = false;
                    break;
                }
                idx[pos] = 0;
            }
            if (done) break;
        }
    }

    std::vector<AlgebraicNumber> roots;
    for (std::size_t i = 0; i < scape.units.size(); ++i) {
        for (std::size_t j = i + 1; j < scape.units.size(); ++j) {
            for (int s = 0; s < M.n_states; ++s) {
                Poly diff = difference_poly_cached(scape.units[i].polys, scape.units[j].polys, s);
                if (diff.is_zero()) continue;
                UnitRoots unit_roots = isolate_unit_roots(clear_denominators(diff));
                for (AlgebraicNumber& root : unit_roots.roots) roots.push_back(std::move(root));
            }
        }
    }
    std::sort(roots.begin(), roots.end(), [](const AlgebraicNumber& a, const AlgebraicNumber& b) {
        return AlgebraicNumber::compare(a, b) < 0;
    });
    for (AlgebraicNumber& root : roots) {
        if (scape.breakpoints.empty() ||
            AlgebraicNumber::compare(scape.breakpoints.back(), root) != 0)
            scape.breakpoints.push_back(std::move(root));
    }
    return scape;
}

// Worst-case values of every policy at a rational discount factor, straight
// from the cached unit polynomials.
struct SampleView {
    std::vector<RationalVector> worst_values; // per policy
    std::vector<std::size_t> worst_unit;      // a selection attaining the min everywhere
    RationalVector vstar;
    std::vector<std::size_t> members; // robust-optimal policy indices
};

SampleView evaluate_sample(const MDPInstance& M, const RobustLandscape& scape,
                           const Rational& gamma) {
    const std::size_t n = static_cast<std::size_t>(M.n_states);
    SampleView view;
    view.worst_values.resize(scape.policies.size());
    view.worst_unit.resize(scape.policies.size());
    std::vector<std::vector<RationalVector>> unit_values(scape.units.size());
    for (std::size_t pidx = 0; pidx < scape.policies.size(); ++pidx) {
        RationalVector worst(n);
        std::vector<RationalVector> values_here;
        values_here.reserve(scape.units_of_policy[pidx].size());
        for (std::size_t uidx : scape.units_of_policy[pidx]) {
            const ValuePolys& vp = scape.units[uidx].polys;
            Rational d = vp.denominator.eval(gamma);
            if (d <= 0) throw InternalError("unit denominator not positive on [0, 1)");
            RationalVector vals(n);
            for (std::size_t s = 0; s < n; ++s) {
                vals[s] = vp.numerators[s].eval(gamma) / d;
                vals[s].canonicalize();
            }
            values_here.push_back(std::move(vals));
        }
        for (std::size_t s = 0; s < n; ++s) {
            worst[s] = values_here[0][s];
            for (const auto& vals : values_here)
                if (vals[s] < worst[s]) worst[s] = vals[s];
        }
        bool found = false;
        for (std::size_t k = 0; k < values_here.size(); ++k) {
            if (values_here[k] == worst) {
                view.worst_unit[pidx] = scape.units_of_policy[pidx][k];
                found = true;
                break;
            }
        }
        if (!found)
            throw InternalError("no single extreme-kernel selection attains the worst case");
        view.worst_values[pidx] = std::move(worst);
    }
    view.vstar = view.worst_values[0];
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t pidx = 1; pidx < scape.policies.size(); ++pidx)
            if (view.worst_values[pidx][s] > view.vstar[s]) view.vstar[s] = view.worst_values[pidx][s];
    for (std::size_t pidx = 0; pidx < scape.policies.size(); ++pidx)
        if (view.worst_values[pidx] == view.vstar) view.members.push_back(pidx);
    if (view.members.empty())
        throw InternalError("no policy attains the robust optimum at every state");
    return view;
}

PolicySetProduct members_to_product(const MDPInstance& M, const RobustLandscape& scape,
                                    const std::vector<std::size_t>& members) {
    PolicySetProduct out;
    out.actions_per_state.resize(static_cast<std::size_t>(M.n_states));
    for (std::size_t s = 0; s < out.actions_per_state.size(); ++s) {
        std::vector<int>& menu = out.actions_per_state[s];
        for (std::size_t pidx : members) {
            int a = scape.policies[pidx][s];
            if (!std::binary_search(menu.begin(), menu.end(), a))
                menu.insert(std::upper_bound(menu.begin(), menu.end(), a), a);
        }
    }
    Integer expected = out.count();
    if (expected != Integer(static_cast<unsigned long>(members.size())))
        throw InternalError("robust optimal set is not a product of per-state action sets");
    return out;
}

} // namespace

RobustBlackwellAnalysis robust_blackwell_analysis(const MDPInstance& M,
                                                  const RobustAnalysisOptions& opts) {
    RobustBlackwellAnalysis out;
    RobustLandscape scape = build_robust_landscape(M, opts);
    out.policies = scape.policies;
    out.unit_count = scape.units.size();
    out.breakpoints = scape.breakpoints;
    out.gamma_bar = scape.breakpoints.empty() ? AlgebraicNumber::exact(Rational(0))
                                              : scape.breakpoints.back();

    std::vector<AlgebraicNumber> E;
    {
        AlgebraicNumber zero = AlgebraicNumber::exact(Rational(0));
        E.push_back(zero);
        for (const AlgebraicNumber& b : out.breakpoints) {
            if (b.is_exact() && b.value() == 0) continue;
            E.push_back(b);
        }
        E.push_back(AlgebraicNumber::exact(Rational(1)));
    }
    for (std::size_t i = 0; i + 1 < E.size(); ++i) {
        int guard = 0;
        while (!(E[i].hi() < E[i + 1].lo())) {
            E[i].refine_once();
            E[i + 1].refine_once();
            if (++guard > 100000) throw InternalError("failed to separate breakpoint certificates");
        }
    }

    const std::size_t intervals = E.size() - 1;
    std::vector<SampleView> interval_views;
    interval_views.reserve(intervals);
    for (std::size_t i = 0; i < intervals; ++i) {
        Rational left = E[i].hi();
        Rational right = E[i + 1].lo();
        Rational width = right - left;
        Rational s1 = left + width / 3;
        Rational s2 = left + width * Rational(2) / 3;
        s1.canonicalize();
        s2.canonicalize();
        SampleView v1 = evaluate_sample(M, scape, s1);
        SampleView v2 = evaluate_sample(M, scape, s2);
        if (v1.members != v2.members)
            throw InternalError("robust optimal set not constant between breakpoints");
        out.interval_sets.push_back(members_to_product(M, scape, v1.members));
        interval_views.push_back(std::move(v1));
    }

    const bool zero_is_breakpoint =
        !out.breakpoints.empty() && out.breakpoints.front().is_exact() &&
        out.breakpoints.front().value() == 0;
    for (std::size_t b = 0; b < out.breakpoints.size(); ++b) {
        const AlgebraicNumber& beta = out.breakpoints[b];
        if (beta.is_exact()) {
            SampleView at = evaluate_sample(M, scape, beta.value());
            out.breakpoint_sets.push_back(members_to_product(M, scape, at.members));
            continue;
        }
        // limits from the interval just above beta: each policy's worst-case
        // value extends continuously with the selection that is worst there
        std::size_t right_interval = zero_is_breakpoint ? b : b + 1;
        const SampleView& view = interval_views[right_interval];
        std::size_t ref_policy = view.members.front();
        const ValuePolys& ref = scape.units[view.worst_unit[ref_policy]].polys;
        std::vector<std::size_t> members;
        for (std::size_t pidx = 0; pidx < scape.policies.size(); ++pidx) {
            const ValuePolys& mine = scape.units[view.worst_unit[pidx]].polys;
            bool optimal = true;
            for (int s = 0; s < M.n_states && optimal; ++s) {
                Poly diff = difference_poly_cached(mine, ref, s);
                if (diff.is_zero()) continue;
                if (!beta.vanishes(clear_denominators(diff))) optimal = false;
            }
            if (optimal) members.push_back(pidx);
        }
        if (members.empty()) throw InternalError("empty robust optimal set at breakpoint");
        out.breakpoint_sets.push_back(members_to_product(M, scape, members));
    }

    out.blackwell_product = out.interval_sets.back();
    out.blackwell_set = out.blackwell_product.expand(opts.expand_guard);

    std::size_t j = intervals - 1;
    AlgebraicNumber bw = AlgebraicNumber::exact(Rational(0));
    while (j > 0) {
        std::size_t b = zero_is_breakpoint ? j : j - 1;
        bool boundary_ok = out.breakpoint_sets[b] == out.blackwell_product;
        bool below_ok = out.interval_sets[j - 1] == out.blackwell_product;
        if (!boundary_ok || !below_ok) {
            bw = E[j];
            break;
        }
        --j;
    }
    Rational width;
    if (opts.certificate_width) {
        width = *opts.certificate_width;
    } else {
        Integer two64;
        mpz_ui_pow_ui(two64.get_mpz_t(), 2, 64);
        width = Rational(Integer(1), two64);
    }
    bw.refine_below(width);
    out.gamma_bw = bw;
    return out;
}

} // namespace bwmdp
