#pragma once

#include "thoma/numeric.hpp"
#include "thoma/partition.hpp"
#include "thoma/permutation.hpp"
#include "thoma/zmeasure.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace thoma {

/// Supersymmetric power sum p_k(omega) = sum alpha_i^k + (-1)^(k-1) sum beta_j^k.
/// Only k >= 2 extends continuously to the Thoma set, so k <= 1 is rejected.
template <class S>
S p_k(const ThomaPoint<S>& w, int k) {
    if (k < 2) throw std::domain_error("p_k: k must be >= 2");
    S acc(0);
    for (const S& a : w.alpha) acc += pow_int(a, k);
    S bsum(0);
    for (const S& b : w.beta) bsum += pow_int(b, k);
    if (k % 2 == 1) return acc + bsum;
    return acc - bsum;
}

/// Thoma's multiplicative formula: chi^(omega)(sigma) = prod_{k>=2} p_k^{m_k},
/// with 0^0 = 1.  Depends on sigma only through its cycle counts.
template <class S>
S extreme_character(const ThomaPoint<S>& w, const std::map<int, int>& cycle_counts) {
    S acc(1);
    for (const auto& [k, mk] : cycle_counts) {
        if (k < 2 || mk == 0) continue;
        acc *= pow_int(p_k(w, k), mk);
    }
    return acc;
}

template <class S>
S extreme_character(const ThomaPoint<S>& w, const Permutation& sigma) {
    return extreme_character(w, cycle_stats(sigma).cycle_counts);
}

/// Verifies chi^(alpha,beta) * sgn = chi^(beta,alpha) on all of S(m), m <= nmax.
template <class S>
bool sgn_twist_check(const ThomaPoint<S>& w, int nmax) {
    ThomaPoint<S> swapped{w.beta, w.alpha};
    for (int m = 1; m <= nmax; ++m)
        for (const auto& s : all_permutations(m)) {
            S lhs = extreme_character(w, s) * S(sgn(s));
            if (lhs != extreme_character(swapped, s)) return false;
        }
    return true;
}

/// A conjugacy-class label: the nontrivial cycle lengths rho, acting inside
/// S(n) as the class rho cup 1^(n - |rho|).
struct CycleType {
    Partition rho;

    /// rho padded with fixed points up to degree n.
    Partition padded_to(std::int64_t n) const {
        if (rho.n() > n)
            throw std::domain_error("CycleType: |rho| exceeds the target degree");
        auto parts = rho.parts();
        parts.insert(parts.end(), static_cast<std::size_t>(n - rho.n()), 1);
        return Partition(std::move(parts));
    }
    std::map<int, int> cycle_counts(std::int64_t n) const {
        std::map<int, int> m;
        auto padded = padded_to(n);
        for (int p : padded.parts()) ++m[p];
        return m;
    }
};

/// The nontrivial cycle lengths of sigma (fixed points dropped).
inline CycleType cycle_type_of(const Permutation& sigma) {
    std::vector<int> parts;
    for (const auto& [k, mk] : cycle_stats(sigma).cycle_counts)
        if (k >= 2) parts.insert(parts.end(), static_cast<std::size_t>(mk), k);
    std::sort(parts.begin(), parts.end(), std::greater<int>());
    return CycleType{Partition(std::move(parts))};
}

/// Size of the conjugacy class in S(n) labelled by the padded cycle type:
/// n! / z_rho with z_rho = prod k^{m_k} m_k!.
inline BigInt conjugacy_class_size(const CycleType& rho, std::int64_t n) {
    BigInt z = 1;
    for (const auto& [k, mk] : rho.cycle_counts(n))
        z *= pow_int(BigInt(k), mk) * factorial(static_cast<unsigned>(mk));
    return factorial(static_cast<unsigned>(n)) / z;
}

namespace detail {

/// Beta-number encoding beta_i = lambda_i + (rows - i), canonicalized to have
/// no trailing empty row (so equal shapes get equal encodings).
inline std::vector<int> beta_numbers(const Partition& lam) {
    int rows = static_cast<int>(lam.rows());
    std::vector<int> beta(static_cast<std::size_t>(rows));
    for (int i = 0; i < rows; ++i)
        beta[static_cast<std::size_t>(i)] = lam.parts()[static_cast<std::size_t>(i)] + rows - i - 1;
    return beta;
}

inline void beta_canonicalize(std::vector<int>& beta) {
    std::sort(beta.begin(), beta.end(), std::greater<int>());
    while (!beta.empty() && beta.back() == 0) {
        beta.pop_back();
        for (int& b : beta) --b;
    }
}

struct MnMemo {
    std::map<std::pair<std::vector<int>, std::vector<int>>, BigInt> table;
    std::mutex mutex;
    bool enabled = true;
};

inline MnMemo& mn_memo() {
    static MnMemo memo;
    return memo;
}

/// Murnaghan-Nakayama over border strips on the beta-number encoding:
/// removing a strip of size r is beta_i -> beta_i - r onto an unoccupied
/// value, with sign (-1)^(number of occupied values jumped over).
inline BigInt mn_recurse(const std::vector<int>& beta, const std::vector<int>& rho,
                         std::size_t pos) {
    if (pos == rho.size()) return 1;
    std::vector<int> rho_rest(rho.begin() + static_cast<std::ptrdiff_t>(pos), rho.end());
    auto key = std::make_pair(beta, std::move(rho_rest));
    auto& memo = mn_memo();
    if (memo.enabled) {
        std::lock_guard lock(memo.mutex);
        if (auto it = memo.table.find(key); it != memo.table.end()) return it->second;
    }
    int r = rho[pos];
    BigInt acc = 0;
    for (std::size_t i = 0; i < beta.size(); ++i) {
        int target = beta[i] - r;
        if (target < 0) continue;
        bool occupied = false;
        int jumped = 0;
        for (std::size_t j = 0; j < beta.size(); ++j) {
            if (j == i) continue;
            if (beta[j] == target) occupied = true;
            if (beta[j] > target && beta[j] < beta[i]) ++jumped;
        }
        if (occupied) continue;
        auto next = beta;
        next[i] = target;
        beta_canonicalize(next);
        BigInt sub = mn_recurse(next, rho, pos + 1);
        acc += (jumped % 2 == 0) ? sub : -sub;
    }
    if (memo.enabled) {
        std::lock_guard lock(memo.mutex);
        memo.table.emplace(std::move(key), acc);
    }
    return acc;
}

}  // namespace detail

/// Exact irreducible character value chi^lambda at the class rho cup 1^(n-m),
/// by the memoized Murnaghan-Nakayama recursion.
inline BigInt mn_character(const Partition& lam, const CycleType& rho) {
    Partition padded = rho.padded_to(lam.n());
    auto beta = detail::beta_numbers(lam);
    detail::beta_canonicalize(beta);
    return detail::mn_recurse(beta, padded.parts(), 0);
}

/// chi_z restricted to S(n), evaluated at the class rho: the z-measure
/// expansion sum_lambda P_z^(n)(lambda) chi^lambda_rho / dim lambda.
/// Independent of the admissible n by coherency.
template <class S>
S chi_z(const ComplexParam<S>& z, const CycleType& rho, std::int64_t n) {
    if (n < rho.rho.n()) throw std::domain_error("chi_z: n below |rho|");
    S acc(0);
    for (const auto& lam : enumerate_partitions(static_cast<unsigned>(n))) {
        S p = zmeasure_prob(z, lam);
        if (p == S(0)) continue;
        acc += p * S(mn_character(lam, rho)) / S(dimension(lam));
    }
    return acc;
}

/// Smallest eigenvalue of the Gram matrix [f(g_j^{-1} g_i)] of a central
/// real-valued function over the given elements.
inline double gram_min_eigenvalue(const std::function<double(const Permutation&)>& f,
                                  const std::vector<Permutation>& elements) {
    const auto n = static_cast<Eigen::Index>(elements.size());
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            m(i, j) = f(elements[static_cast<std::size_t>(j)].inverse() *
                        elements[static_cast<std::size_t>(i)]);
    m = (m + m.transpose()) / 2.0;  // symmetrize away rounding noise
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

/// True iff the Gram matrix is positive semidefinite down to -tol.
inline bool gram_psd_check(const std::function<double(const Permutation&)>& f,
                           const std::vector<Permutation>& elements, double tol = 1e-9) {
    return gram_min_eigenvalue(f, elements) >= -tol;
}

}  // namespace thoma
