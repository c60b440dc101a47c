#include "bwmdp/generators.hpp"

#include "bwmdp/errors.hpp"
#include "bwmdp/linalg.hpp"

#include <algorithm>
#include <limits>
#include <random>

namespace bwmdp {

namespace {

// deterministic arc: every action in state s gives `reward` and moves to `to`
void set_uniform_state(MDPInstance& M, int s, const Rational& reward, int to) {
    for (int a = 0; a < M.n_actions; ++a) {
        M.rewards[static_cast<std::size_t>(s)][static_cast<std::size_t>(a)] = reward;
        auto& row = M.transitions[static_cast<std::size_t>(s)][static_cast<std::size_t>(a)];
        std::fill(row.begin(), row.end(), Rational(0));
        row[static_cast<std::size_t>(to)] = Rational(1);
    }
}

MDPInstance blank_instance(int n_states, int n_actions) {
    MDPInstance M;
    M.n_states = n_states;
    M.n_actions = n_actions;
    M.rewards.assign(static_cast<std::size_t>(n_states),
                     RationalVector(static_cast<std::size_t>(n_actions), Rational(0)));
    M.transitions.assign(
        static_cast<std::size_t>(n_states),
        RationalMatrix(static_cast<std::size_t>(n_actions),
                       RationalVector(static_cast<std::size_t>(n_states), Rational(0))));
    return M;
}

} // namespace

MDPInstance example_one() {
    MDPInstance M = blank_instance(8, 3);
    // start state: action 0 pays 1 and absorbs, actions 1 and 2 enter the
    // two reward chains
    M.rewards[0][0] = Rational(1);
    M.transitions[0][0][7] = Rational(1);
    M.rewards[0][1] = Rational(0);
    M.transitions[0][1][1] = Rational(1);
    M.rewards[0][2] = Rational(0);
    M.transitions[0][2][4] = Rational(1);
    // chain one: value 6 g - 8 g^2 from the start state
    set_uniform_state(M, 1, Rational(6), 2);
    set_uniform_state(M, 2, Rational(-8), 3);
    set_uniform_state(M, 3, Rational(0), 7);
    // chain two: value (8/3) g - (16/9) g^2, peaking at 1 when g = 3/4
    set_uniform_state(M, 4, Rational(8, 3), 5);
    set_uniform_state(M, 5, Rational(-16, 9), 6);
    set_uniform_state(M, 6, Rational(0), 7);
    set_uniform_state(M, 7, Rational(0), 7);
    M.m_declared = Integer(9);
    validate(M);
    return M;
}

MDPInstance interval_instance(const std::vector<Rational>& breakpoints) {
    if (breakpoints.size() < 2 || breakpoints.size() % 2 != 0)
        throw ValidationError("breakpoint list must have even size >= 2 (odd interval count)");
    if (breakpoints.front() != 0 || breakpoints.back() != 1)
        throw ValidationError("breakpoint list must start at 0 and end at 1");
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i)
        if (!(breakpoints[i] < breakpoints[i + 1]))
            throw ValidationError("breakpoints must be strictly increasing");

    const int N = static_cast<int>(breakpoints.size()) - 1; // odd by the size check
    // chain value sum_t r_t g^t must be 9/10 at 0 and 1 at each interior
    // breakpoint; solve the Vandermonde system exactly
    const std::size_t n = static_cast<std::size_t>(N);
    RationalMatrix V(n, RationalVector(n));
    RationalVector rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Rational& x = breakpoints[i];
        Rational power(1);
        for (std::size_t j = 0; j < n; ++j) {
            V[i][j] = power;
            power *= x;
        }
        rhs[i] = i == 0 ? Rational(9, 10) : Rational(1);
    }
    RationalVector r = solve_linear(V, rhs);
    for (Rational& x : r) x.canonicalize();

    MDPInstance M = blank_instance(N + 1, 2);
    M.rewards[0][0] = Rational(1);
    M.transitions[0][0][static_cast<std::size_t>(N)] = Rational(1);
    M.rewards[0][1] = r[0];
    M.transitions[0][1][static_cast<std::size_t>(N == 1 ? N : 1)] = Rational(1);
    for (int t = 1; t < N; ++t) set_uniform_state(M, t, r[static_cast<std::size_t>(t)], t + 1);
    set_uniform_state(M, N, Rational(0), N);
    validate(M);
    return M;
}

namespace {

// uniform on [0, n] without distribution objects, so results match across
// standard library implementations
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
    if (n == std::numeric_limits<std::uint64_t>::max()) return rng();
    const std::uint64_t span = n + 1;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % span;
}

// uniform composition of total into parts nonnegative summands via sorted cuts
std::vector<unsigned long> composition(std::mt19937_64& rng, unsigned long total,
                                       std::size_t parts) {
    std::vector<std::uint64_t> cuts(parts - 1);
    for (auto& c : cuts) c = bounded(rng, total);
    std::sort(cuts.begin(), cuts.end());
    std::vector<unsigned long> out(parts);
    std::uint64_t prev = 0;
    for (std::size_t i = 0; i + 1 < parts; ++i) {
        out[i] = static_cast<unsigned long>(cuts[i] - prev);
        prev = cuts[i];
    }
    out[parts - 1] = static_cast<unsigned long>(total - prev);
    return out;
}

} // namespace

MDPInstance random_instance(const RandomSpec& spec) {
    if (spec.n_states < 1 || spec.n_actions < 1)
        throw ValidationError("random instance needs at least one state and action");
    if (spec.denominator < 1 || spec.reward_denominator < 1)
        throw ValidationError("denominators must be >= 1");
    std::mt19937_64 rng(spec.seed);
    MDPInstance M = blank_instance(spec.n_states, spec.n_actions);
    const std::size_t S = static_cast<std::size_t>(spec.n_states);
    const std::size_t A = static_cast<std::size_t>(spec.n_actions);
    for (std::size_t s = 0; s < S; ++s)
        for (std::size_t a = 0; a < A; ++a) {
            std::uint64_t num = bounded(rng, 2 * spec.reward_range);
            long signed_num = static_cast<long>(num) - static_cast<long>(spec.reward_range);
            M.rewards[s][a] = Rational(Integer(signed_num), Integer(spec.reward_denominator));
            M.rewards[s][a].canonicalize();
            auto parts = composition(rng, spec.denominator, S);
            for (std::size_t t = 0; t < S; ++t) {
                M.transitions[s][a][t] = Rational(Integer(parts[t]), Integer(spec.denominator));
                M.transitions[s][a][t].canonicalize();
            }
        }
    validate(M);
    return M;
}

UncertaintySet random_uncertainty(const MDPInstance& M, BallNorm norm,
                                  unsigned long max_numerator, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    UncertaintySet U;
    U.norm = norm;
    U.radii.assign(static_cast<std::size_t>(M.n_states),
                   RationalVector(static_cast<std::size_t>(M.n_actions), Rational(0)));
    for (auto& row : U.radii)
        for (Rational& alpha : row) {
            alpha = Rational(Integer(bounded(rng, max_numerator)), M.m);
            alpha.canonicalize();
        }
    return U;
}

} // namespace bwmdp
