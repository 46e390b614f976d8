#pragma once

#include "thoma/rng.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace thoma {

/// A permutation of {1..n}.  The API is 1-based to match the usual cycle
/// notation; storage is 0-based.
class Permutation {
public:
    Permutation() = default;
    static Permutation identity(int n) {
        Permutation s;
        s.images_.resize(static_cast<std::size_t>(n));
        std::iota(s.images_.begin(), s.images_.end(), 0);
        return s;
    }
    /// one_line[k] = sigma(k+1), values in 1..n.
    static Permutation from_one_line(const std::vector<int>& one_line) {
        Permutation s;
        s.images_.reserve(one_line.size());
        std::vector<bool> seen(one_line.size(), false);
        for (int v : one_line) {
            if (v < 1 || v > static_cast<int>(one_line.size()) || seen[static_cast<std::size_t>(v - 1)])
                throw std::invalid_argument("not a bijection of {1..n}");
            seen[static_cast<std::size_t>(v - 1)] = true;
            s.images_.push_back(v - 1);
        }
        return s;
    }
    /// The transposition (a b) inside S(n).
    static Permutation transposition(int n, int a, int b) {
        auto s = identity(n);
        std::swap(s.images_[static_cast<std::size_t>(a - 1)],
                  s.images_[static_cast<std::size_t>(b - 1)]);
        return s;
    }

    int degree() const { return static_cast<int>(images_.size()); }

    /// sigma(i), 1-based.  Points beyond the degree are fixed.
    int apply(int i) const {
        if (i > degree()) return i;
        return images_[static_cast<std::size_t>(i - 1)] + 1;
    }

    bool is_identity() const {
        for (std::size_t k = 0; k < images_.size(); ++k)
            if (images_[k] != static_cast<int>(k)) return false;
        return true;
    }

    /// Copy extended to degree m >= degree() by fixed points (the canonical
    /// embedding S(n) in S(m)).
    Permutation extended(int m) const {
        if (m < degree()) throw std::invalid_argument("cannot shrink a permutation");
        Permutation s = *this;
        s.images_.reserve(static_cast<std::size_t>(m));
        for (int k = degree(); k < m; ++k) s.images_.push_back(k);
        return s;
    }

    Permutation inverse() const {
        Permutation s;
        s.images_.resize(images_.size());
        for (std::size_t k = 0; k < images_.size(); ++k)
            s.images_[static_cast<std::size_t>(images_[k])] = static_cast<int>(k);
        return s;
    }

    /// Composition as functions: (a*b)(i) = a(b(i)).  Unequal degrees are
    /// reconciled by extending the smaller with fixed points.
    friend Permutation operator*(const Permutation& a, const Permutation& b) {
        int n = std::max(a.degree(), b.degree());
        Permutation ae = a.extended(n), be = b.extended(n), out;
        out.images_.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            out.images_[static_cast<std::size_t>(i)] =
                ae.images_[static_cast<std::size_t>(be.images_[static_cast<std::size_t>(i)])];
        return out;
    }

    friend bool operator==(const Permutation&, const Permutation&) = default;
    friend auto operator<=>(const Permutation& a, const Permutation& b) {
        return a.images_ <=> b.images_;
    }

    /// Cycle notation over the full ground set, e.g. "(1 2)(3)".
    std::string str() const {
        if (degree() == 0) return "()";
        std::ostringstream os;
        std::vector<bool> seen(images_.size(), false);
        for (int start = 1; start <= degree(); ++start) {
            if (seen[static_cast<std::size_t>(start - 1)]) continue;
            os << '(' << start;
            seen[static_cast<std::size_t>(start - 1)] = true;
            for (int j = apply(start); j != start; j = apply(j)) {
                os << ' ' << j;
                seen[static_cast<std::size_t>(j - 1)] = true;
            }
            os << ')';
        }
        return os.str();
    }

private:
    std::vector<int> images_;
};

struct CycleStats {
    int num_cycles = 0;               // [x], counting fixed points
    std::map<int, int> cycle_counts;  // k -> m_k
};

inline CycleStats cycle_stats(const Permutation& s) {
    CycleStats cs;
    int n = s.degree();
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int start = 1; start <= n; ++start) {
        if (seen[static_cast<std::size_t>(start - 1)]) continue;
        int len = 0;
        for (int j = start; !seen[static_cast<std::size_t>(j - 1)]; j = s.apply(j)) {
            seen[static_cast<std::size_t>(j - 1)] = true;
            ++len;
        }
        ++cs.num_cycles;
        ++cs.cycle_counts[len];
    }
    return cs;
}

inline int num_cycles(const Permutation& s) { return cycle_stats(s).num_cycles; }

inline int sgn(const Permutation& s) {
    return (s.degree() - num_cycles(s)) % 2 == 0 ? 1 : -1;
}

/// The canonical projection S(n) -> S(n-1): remove n from its cycle.
inline Permutation canonical_projection(const Permutation& s) {
    int n = s.degree();
    if (n < 2) throw std::domain_error("canonical_projection needs degree >= 2");
    std::vector<int> one_line(static_cast<std::size_t>(n - 1));
    int j = s.apply(n);
    for (int i = 1; i < n; ++i) {
        int im = s.apply(i);
        if (im == n) im = (j == n) ? i : j;  // splice ... -> i -> n -> j -> ...
        one_line[static_cast<std::size_t>(i - 1)] = im;
    }
    return Permutation::from_one_line(one_line);
}

/// A finite level of a virtual permutation: coordinates (i_1, ..., i_n) with
/// i_m in {0, ..., m-1}.  Truncation of coordinates is the canonical
/// projection on the permutation side.
class VirtualPermutationPrefix {
public:
    VirtualPermutationPrefix() = default;
    explicit VirtualPermutationPrefix(std::vector<int> coords) : coords_(std::move(coords)) {
        for (std::size_t m = 0; m < coords_.size(); ++m)
            if (coords_[m] < 0 || coords_[m] > static_cast<int>(m))
                throw std::invalid_argument("coordinate i_" + std::to_string(m + 1) +
                                            " out of range");
    }
    static VirtualPermutationPrefix identity(int level) {
        return VirtualPermutationPrefix(std::vector<int>(static_cast<std::size_t>(level), 0));
    }

    int level() const { return static_cast<int>(coords_.size()); }
    const std::vector<int>& coords() const { return coords_; }

    VirtualPermutationPrefix truncated(int level) const {
        if (level > this->level()) throw std::invalid_argument("truncated: level too high");
        return VirtualPermutationPrefix(
            std::vector<int>(coords_.begin(), coords_.begin() + level));
    }
    /// Extension by zero coordinates: the canonical section S(n) into higher
    /// levels (new points are fixed).
    VirtualPermutationPrefix extended(int level) const {
        if (level < this->level()) throw std::invalid_argument("extended: level too low");
        auto c = coords_;
        c.resize(static_cast<std::size_t>(level), 0);
        return VirtualPermutationPrefix(std::move(c));
    }

    std::string str() const {
        std::ostringstream os;
        for (std::size_t i = 0; i < coords_.size(); ++i) {
            if (i) os << ' ';
            os << coords_[i];
        }
        return os.str();
    }

    friend bool operator==(const VirtualPermutationPrefix&,
                           const VirtualPermutationPrefix&) = default;

private:
    std::vector<int> coords_;
};

/// The bijection S(n) -> I_1 x ... x I_n of the coordinate realization:
/// i_m = 0 if x_m(m) = m, else i_m = x_m(m), where x_m are the successive
/// canonical projections.
inline VirtualPermutationPrefix coords_from_perm(const Permutation& s) {
    int n = s.degree();
    std::vector<int> coords(static_cast<std::size_t>(n), 0);
    Permutation x = s;
    for (int m = n; m >= 2; --m) {
        int im = x.apply(m);
        coords[static_cast<std::size_t>(m - 1)] = (im == m) ? 0 : im;
        x = canonical_projection(x);
    }
    return VirtualPermutationPrefix(std::move(coords));
}

/// Inverse of coords_from_perm.
inline Permutation perm_from_coords(const VirtualPermutationPrefix& x) {
    int n = x.level();
    std::vector<int> one_line{};
    Permutation cur = Permutation::identity(std::max(n, 0) == 0 ? 0 : 1);
    for (int m = 2; m <= n; ++m) {
        int target = x.coords()[static_cast<std::size_t>(m - 1)];
        std::vector<int> next(static_cast<std::size_t>(m));
        for (int i = 1; i < m; ++i) next[static_cast<std::size_t>(i - 1)] = cur.apply(i);
        if (target == 0) {
            next[static_cast<std::size_t>(m - 1)] = m;
        } else {
            // insert m in front of target: pre(target) -> m -> target
            int pre = cur.inverse().apply(target);
            next[static_cast<std::size_t>(pre - 1)] = m;
            next[static_cast<std::size_t>(m - 1)] = target;
        }
        cur = Permutation::from_one_line(next);
    }
    if (n == 0) return Permutation{};
    return cur.extended(n);
}

/// An element g = (g1, g2) of the bisymmetric group, acting on virtual
/// permutations by x . g = g2^{-1} x g1.
struct BisymmetricElement {
    Permutation g1;
    Permutation g2;

    int degree() const { return std::max(g1.degree(), g2.degree()); }

    friend BisymmetricElement operator*(const BisymmetricElement& a,
                                        const BisymmetricElement& b) {
        return BisymmetricElement{a.g1 * b.g1, a.g2 * b.g2};
    }
    static BisymmetricElement diagonal(const Permutation& h) {
        return BisymmetricElement{h, h};
    }
    static BisymmetricElement identity(int n) {
        return BisymmetricElement{Permutation::identity(n), Permutation::identity(n)};
    }
};

/// The level-n incarnation of x . g = g2^{-1} x g1.
inline Permutation act_level(const Permutation& xn, const BisymmetricElement& g) {
    int n = std::max(xn.degree(), g.degree());
    return g.g2.inverse().extended(n) * xn.extended(n) * g.g1.extended(n);
}

/// Action on a prefix; the level must dominate the degree of g.
inline VirtualPermutationPrefix act(const VirtualPermutationPrefix& x,
                                    const BisymmetricElement& g) {
    if (x.level() < g.degree())
        throw std::domain_error("act: prefix level below the degree of g");
    return coords_from_perm(act_level(perm_from_coords(x), g));
}

inline constexpr int kCocycleLevelSlack = 16;

/// The stable value c(x, g) = [x_n . g]_n - [x_n]_n.  The prefix is extended
/// through the canonical section (zero coordinates); stabilization is
/// verified by comparing two consecutive levels, raising the level up to
/// level + kCocycleLevelSlack.
inline int cocycle_c(const VirtualPermutationPrefix& x, const BisymmetricElement& g) {
    auto value_at = [&](int level) {
        Permutation xn = perm_from_coords(x.level() >= level ? x.truncated(level)
                                                             : x.extended(level));
        return num_cycles(act_level(xn, g).extended(level)) - num_cycles(xn.extended(level));
    };
    int level = std::max({x.level(), g.degree(), 1});
    int cap = level + kCocycleLevelSlack;
    int prev = value_at(level);
    for (int m = level + 1; m <= cap; ++m) {
        int cur = value_at(m);
        if (cur == prev) return cur;
        prev = cur;
    }
    throw std::runtime_error("cocycle_c: no stabilization within the level cap");
}

inline Permutation random_permutation(int n, Rng& rng) {
    std::vector<int> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), 1);
    for (int i = n - 1; i > 0; --i)
        std::swap(v[static_cast<std::size_t>(i)],
                  v[static_cast<std::size_t>(rng.uniform_int(0, i))]);
    return Permutation::from_one_line(v);
}

/// All of S(n) in lexicographic one-line order (exhaustive checks only).
inline std::vector<Permutation> all_permutations(int n) {
    std::vector<int> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), 1);
    std::vector<Permutation> out;
    do {
        out.push_back(Permutation::from_one_line(v));
    } while (std::next_permutation(v.begin(), v.end()));
    return out;
}

}  // namespace thoma
