#pragma once

// Test-side oracles, deliberately independent of the library implementations
// they are used to check.

#include "thoma/numeric.hpp"
#include "thoma/partition.hpp"

#include <array>
#include <vector>

namespace oracles {

/// p(n) by Euler's pentagonal-number recurrence.
inline thoma::BigInt partition_count(int n) {
    static std::vector<thoma::BigInt> cache{1};
    for (int m = static_cast<int>(cache.size()); m <= n; ++m) {
        thoma::BigInt acc = 0;
        for (int k = 1;; ++k) {
            int g1 = k * (3 * k - 1) / 2;
            int g2 = k * (3 * k + 1) / 2;
            if (g1 > m && g2 > m) break;
            int sign = (k % 2 == 1) ? 1 : -1;
            if (g1 <= m) acc += sign * cache[static_cast<std::size_t>(m - g1)];
            if (g2 <= m) acc += sign * cache[static_cast<std::size_t>(m - g2)];
        }
        cache.push_back(acc);
    }
    return cache[static_cast<std::size_t>(n)];
}

/// Count standard Young tableaux of the given shape by brute-force
/// backtracking over the fillings (feasible for n <= 10).
inline long count_standard_tableaux(const std::vector<int>& shape) {
    int n = 0;
    for (int p : shape) n += p;
    if (n == 0) return 1;
    std::vector<int> fill(shape.size(), 0);  // boxes filled per row
    long count = 0;
    auto rec = [&](auto&& self, int next) -> void {
        if (next > n) {
            ++count;
            return;
        }
        for (std::size_t i = 0; i < shape.size(); ++i) {
            bool row_ok = fill[i] < shape[i];
            bool col_ok = i == 0 || fill[i - 1] > fill[i];
            if (row_ok && col_ok) {
                ++fill[i];
                self(self, next + 1);
                --fill[i];
            }
        }
    };
    rec(rec, 1);
    return count;
}

/// The irreducible characters of S(3), computed from explicit matrices of the
/// 2-dimensional standard representation (and the two linear characters).
/// Returns chi(lambda, class) for lambda in {(3),(2,1),(1,1,1)} and classes
/// {(1,1,1),(2,1),(3)}.
inline std::array<std::array<int, 3>, 3> s3_character_table() {
    // Standard rep on {x in R^3 : sum x = 0}, basis e1-e2, e2-e3.
    // (1 2): x1<->x2 -> matrix [[-1,1],[0,1]]; (1 2 3): e1->e2->e3->e1.
    auto trace2 = [](const std::array<std::array<int, 2>, 2>& m) { return m[0][0] + m[1][1]; };
    std::array<std::array<int, 2>, 2> id{{{1, 0}, {0, 1}}};
    std::array<std::array<int, 2>, 2> t12{{{-1, 1}, {0, 1}}};
    std::array<std::array<int, 2>, 2> c123{{{0, -1}, {1, -1}}};
    return {{{1, 1, 1},                                        // trivial (3)
             {trace2(id), trace2(t12), trace2(c123)},          // standard (2,1)
             {1, -1, 1}}};                                     // sign (1,1,1)
}

}  // namespace oracles
