#include "bwmdp/mdp.hpp"

#include "bwmdp/errors.hpp"

#include <sstream>

namespace bwmdp {

void validate(MDPInstance& M) {
    if (M.n_states <= 0) throw ValidationError("n_states must be positive");
    if (M.n_actions <= 0) throw ValidationError("n_actions must be positive");
    const std::size_t S = static_cast<std::size_t>(M.n_states);
    const std::size_t A = static_cast<std::size_t>(M.n_actions);
    if (M.rewards.size() != S) throw ValidationError("rewards must have one row per state");
    if (M.transitions.size() != S) throw ValidationError("transitions must have one row per state");
    for (std::size_t s = 0; s < S; ++s) {
        if (M.rewards[s].size() != A)
            throw ValidationError("rewards row " + std::to_string(s) + " must have one entry per action");
        if (M.transitions[s].size() != A)
            throw ValidationError("transitions row " + std::to_string(s) + " must have one entry per action");
        for (std::size_t a = 0; a < A; ++a) {
            if (M.transitions[s][a].size() != S)
                throw ValidationError("transition distribution at state " + std::to_string(s) +
                                      ", action " + std::to_string(a) + " has wrong length");
            Rational total(0);
            for (std::size_t t = 0; t < S; ++t) {
                const Rational& p = M.transitions[s][a][t];
                if (p < 0)
                    throw ValidationError("negative probability at state " + std::to_string(s) +
                                          ", action " + std::to_string(a));
                total += p;
            }
            if (total != 1)
                throw ValidationError("non-stochastic row at state " + std::to_string(s) +
                                      ", action " + std::to_string(a) +
                                      " (sum " + to_string(total) + ")");
        }
    }

    Integer derived(1);
    for (std::size_t s = 0; s < S; ++s)
        for (std::size_t a = 0; a < A; ++a) {
            derived = lcm(derived, M.rewards[s][a].get_den());
            for (std::size_t t = 0; t < S; ++t)
                derived = lcm(derived, M.transitions[s][a][t].get_den());
        }

    if (M.m_declared) {
        if (*M.m_declared < 1) throw ValidationError("declared m must be >= 1");
        if (*M.m_declared % derived != 0)
            throw ValidationError("denominator mismatch: declared m = " + M.m_declared->get_str() +
                                  " is not a common denominator (needs a multiple of " +
                                  derived.get_str() + ")");
        M.m = *M.m_declared;
    } else {
        M.m = derived;
    }

    M.r_inf = 0;
    for (std::size_t s = 0; s < S; ++s)
        for (std::size_t a = 0; a < A; ++a) {
            Rational scaled = M.rewards[s][a] * Rational(M.m);
            scaled.canonicalize();
            Integer q = abs(scaled.get_num());
            if (q > M.r_inf) M.r_inf = q;
        }

    if (M.uncertainty) {
        const UncertaintySet& U = *M.uncertainty;
        if (U.radii.size() != S) throw ValidationError("uncertainty radii must have one row per state");
        for (std::size_t s = 0; s < S; ++s) {
            if (U.radii[s].size() != A)
                throw ValidationError("uncertainty radii row " + std::to_string(s) +
                                      " must have one entry per action");
            for (std::size_t a = 0; a < A; ++a) {
                const Rational& alpha = U.radii[s][a];
                if (alpha < 0) throw ValidationError("negative uncertainty radius");
                Rational scaled = alpha * Rational(M.m);
                scaled.canonicalize();
                if (scaled.get_den() != 1)
                    throw ValidationError("denominator mismatch: radius " + to_string(alpha) +
                                          " at state " + std::to_string(s) + ", action " +
                                          std::to_string(a) + " is not a multiple of 1/m");
            }
        }
    }
}

bool instances_equal(const MDPInstance& a, const MDPInstance& b) {
    if (a.n_states != b.n_states || a.n_actions != b.n_actions) return false;
    if (a.rewards != b.rewards || a.transitions != b.transitions) return false;
    if (a.m != b.m) return false;
    if (a.uncertainty.has_value() != b.uncertainty.has_value()) return false;
    if (a.uncertainty) {
        if (a.uncertainty->norm != b.uncertainty->norm) return false;
        if (a.uncertainty->radii != b.uncertainty->radii) return false;
    }
    return true;
}

RationalVector induced_reward(const MDPInstance& M, const Policy& pi) {
    if (pi.size() != static_cast<std::size_t>(M.n_states))
        throw ValidationError("policy length does not match n_states");
    RationalVector r(pi.size());
    for (std::size_t s = 0; s < pi.size(); ++s) {
        if (pi[s] < 0 || pi[s] >= M.n_actions)
            throw ValidationError("policy action out of range at state " + std::to_string(s));
        r[s] = M.rewards[s][static_cast<std::size_t>(pi[s])];
    }
    return r;
}

RationalMatrix induced_kernel(const MDPInstance& M, const Policy& pi) {
    if (pi.size() != static_cast<std::size_t>(M.n_states))
        throw ValidationError("policy length does not match n_states");
    RationalMatrix P(pi.size());
    for (std::size_t s = 0; s < pi.size(); ++s) {
        if (pi[s] < 0 || pi[s] >= M.n_actions)
            throw ValidationError("policy action out of range at state " + std::to_string(s));
        P[s] = M.transitions[s][static_cast<std::size_t>(pi[s])];
    }
    return P;
}

std::vector<std::vector<int>> effective_actions(const MDPInstance& M) {
    std::vector<std::vector<int>> reps(static_cast<std::size_t>(M.n_states));
    for (int s = 0; s < M.n_states; ++s) {
        for (int a = 0; a < M.n_actions; ++a) {
            bool duplicate = false;
            for (int r : reps[static_cast<std::size_t>(s)]) {
                if (M.rewards[s][static_cast<std::size_t>(a)] == M.rewards[s][static_cast<std::size_t>(r)] &&
                    M.transitions[s][static_cast<std::size_t>(a)] == M.transitions[s][static_cast<std::size_t>(r)]) {
                    duplicate = true;
                    break;
                }
            }
            if (!duplicate) reps[static_cast<std::size_t>(s)].push_back(a);
        }
    }
    return reps;
}

Integer effective_policy_count(const MDPInstance& M) {
    auto reps = effective_actions(M);
    Integer count(1);
    for (const auto& menu : reps) count *= Integer(static_cast<unsigned long>(menu.size()));
    return count;
}

std::vector<Policy> enumerate_policies(const MDPInstance& M, const Integer& guard) {
    auto reps = effective_actions(M);
    Integer count = effective_policy_count(M);
    if (count > guard)
        throw SpaceTooLarge(SpaceTooLarge::Kind::PolicySpace,
                            "policy space has " + count.get_str() + " policies, guard is " +
                                guard.get_str());
    std::vector<Policy> out;
    if (mpz_fits_ulong_p(count.get_mpz_t())) out.reserve(count.get_ui());
    Policy current(static_cast<std::size_t>(M.n_states));
    // odometer over representative menus, most significant digit = state 0
    std::vector<std::size_t> idx(static_cast<std::size_t>(M.n_states), 0);
    while (true) {
        for (std::size_t s = 0; s < idx.size(); ++s) current[s] = reps[s][idx[s]];
        out.push_back(current);
        std::size_t pos = idx.size();
        while (pos > 0) {
            --pos;
            if (++idx[pos] < reps[pos].size()) break;
            idx[pos] = 0;
            if (pos == 0) return out;
        }
        if (idx.size() == 0) return out;
    }
}

std::string policy_label(const Policy& pi) {
    std::ostringstream os;
    os << "pi[";
    for (std::size_t s = 0; s < pi.size(); ++s) {
        if (s) os << " ";
        os << pi[s];
    }
    os << "]";
    return os.str();
}

} // namespace bwmdp
