#pragma once

#include "thoma/numeric.hpp"
#include "thoma/permutation.hpp"
#include "thoma/rng.hpp"

#include <map>
#include <stdexcept>
#include <vector>

namespace thoma {

/// mu_t^(n)(x) = t^[x] / (t (t+1) ... (t+n-1)).  The t = 0 case is the limit
/// law concentrated on the n-cycles.
template <class S>
S ewens_weight(const S& t, const Permutation& x) {
    if (t < S(0)) throw std::domain_error("ewens_weight: t must be nonnegative");
    unsigned n = static_cast<unsigned>(x.degree());
    int cycles = num_cycles(x);
    if (t == S(0)) {
        if (n == 0) return S(1);
        return cycles == 1 ? S(1) / S(rising_factorial(S(1), n - 1)) : S(0);
    }
    return pow_int(t, cycles) / rising_factorial(t, n);
}

/// The coordinate law nu_t^(m) on I_m = {0..m-1}: mass t/(t+m-1) at 0 and
/// 1/(t+m-1) at each nonzero point.
template <class S>
std::vector<S> nu_coordinate_law(const S& t, int m) {
    if (t <= S(0)) throw std::domain_error("nu_coordinate_law: t must be positive");
    std::vector<S> law(static_cast<std::size_t>(m));
    S denom = t + S(m - 1);
    law[0] = t / denom;
    for (int i = 1; i < m; ++i) law[static_cast<std::size_t>(i)] = S(1) / denom;
    return law;
}

/// Draw a level-n prefix with independent coordinates i_m ~ nu_t^(m).
inline VirtualPermutationPrefix sample_ewens(double t, int n, Rng& rng) {
    if (t <= 0) throw std::domain_error("sample_ewens: t must be positive");
    if (n < 1) throw std::domain_error("sample_ewens: n must be >= 1");
    std::vector<int> coords(static_cast<std::size_t>(n), 0);
    for (int m = 2; m <= n; ++m) {
        double p0 = t / (t + m - 1);
        if (rng.u01() < p0)
            coords[static_cast<std::size_t>(m - 1)] = 0;
        else
            coords[static_cast<std::size_t>(m - 1)] = static_cast<int>(rng.uniform_int(1, m - 1));
    }
    return VirtualPermutationPrefix(std::move(coords));
}

/// Exhaustively verifies that the pushforward of mu_t^(n) under the canonical
/// projection is mu_t^(n-1), as exact scalars.
template <class S>
bool consistency_check(const S& t, int n) {
    std::map<Permutation, S> fiber_sums;
    for (const auto& x : all_permutations(n))
        fiber_sums[canonical_projection(x)] += ewens_weight(t, x);
    for (const auto& y : all_permutations(n - 1))
        if (fiber_sums[y] != ewens_weight(t, y)) return false;
    return true;
}

/// Exhaustively verifies the product structure: the coordinate image of
/// mu_t^(n) is the product of the nu_t^(m) laws.
template <class S>
bool product_structure_check(const S& t, int n) {
    std::vector<std::vector<S>> laws;
    for (int m = 1; m <= n; ++m) laws.push_back(nu_coordinate_law(t, m));
    for (const auto& x : all_permutations(n)) {
        S prod(1);
        auto coords = coords_from_perm(x).coords();
        for (int m = 1; m <= n; ++m)
            prod *= laws[static_cast<std::size_t>(m - 1)]
                        [static_cast<std::size_t>(coords[static_cast<std::size_t>(m - 1)])];
        if (prod != ewens_weight(t, x)) return false;
    }
    return true;
}

/// Checks the Radon-Nikodym identity mu(x.g)/mu(x) = t^c(x,g) at a level
/// where the cocycle has stabilized.  Exact for rational t.
template <class S>
bool radon_nikodym_check(const S& t, const VirtualPermutationPrefix& x,
                         const BisymmetricElement& g) {
    if (t <= S(0)) throw std::domain_error("radon_nikodym_check: t must be positive");
    int c = cocycle_c(x, g);
    int level = std::max(x.level(), g.degree()) + 1;
    Permutation xn = perm_from_coords(x.extended(level));
    S ratio = ewens_weight(t, act_level(xn, g).extended(level)) /
              ewens_weight(t, xn.extended(level));
    return ratio == pow_int(t, c);
}

}  // namespace thoma
