#pragma once

#include "thoma/numeric.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace thoma {

/// A Young diagram: weakly decreasing positive parts.  The empty sequence is
/// the empty diagram.  Immutable after construction.
class Partition {
public:
    Partition() = default;
    explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (parts_[i] < 1) throw std::invalid_argument("partition parts must be positive");
            if (i + 1 < parts_.size() && parts_[i] < parts_[i + 1])
                throw std::invalid_argument("partition parts must be weakly decreasing");
            n_ += parts_[i];
        }
    }

    const std::vector<int>& parts() const { return parts_; }
    int part(std::size_t i) const { return i < parts_.size() ? parts_[i] : 0; }
    std::size_t rows() const { return parts_.size(); }
    std::int64_t n() const { return n_; }
    bool empty() const { return parts_.empty(); }

    friend bool operator==(const Partition&, const Partition&) = default;
    friend auto operator<=>(const Partition& a, const Partition& b) {
        return a.parts_ <=> b.parts_;
    }

    /// Comma-joined parts, "-" for the empty diagram.
    std::string str() const {
        if (parts_.empty()) return "-";
        std::ostringstream os;
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (i) os << ',';
            os << parts_[i];
        }
        return os.str();
    }

    static Partition parse(const std::string& s) {
        if (s == "-" || s.empty()) return Partition{};
        std::vector<int> parts;
        std::istringstream is(s);
        std::string tok;
        while (std::getline(is, tok, ',')) parts.push_back(std::stoi(tok));
        return Partition(std::move(parts));
    }

private:
    std::vector<int> parts_;
    std::int64_t n_ = 0;
};

/// Modified Frobenius coordinates: a_i = lambda_i - i + 1/2 and
/// b_i = lambda'_i - i + 1/2 over the d diagonal boxes; sum(a_i + b_i) = n.
struct FrobeniusCoords {
    std::vector<HalfInt> a;
    std::vector<HalfInt> b;

    std::size_t d() const { return a.size(); }
};

/// A point omega = (alpha, beta) of the Thoma set, with the deficiency
/// 1 - sum(alpha) - sum(beta) tracked explicitly.  Scalar S is Rational for
/// exact points or double for floating ones.
template <class S>
struct ThomaPoint {
    std::vector<S> alpha;
    std::vector<S> beta;

    S coordinate_sum() const {
        S s(0);
        for (const S& x : alpha) s += x;
        for (const S& x : beta) s += x;
        return s;
    }
    S deficiency() const { return S(1) - coordinate_sum(); }
};

using ThomaPointExact = ThomaPoint<Rational>;
using ThomaPointFloat = ThomaPoint<double>;

inline ThomaPointFloat to_float(const ThomaPointExact& w) {
    ThomaPointFloat out;
    out.alpha.reserve(w.alpha.size());
    out.beta.reserve(w.beta.size());
    for (const auto& x : w.alpha) out.alpha.push_back(to_double(x));
    for (const auto& x : w.beta) out.beta.push_back(to_double(x));
    return out;
}

inline constexpr unsigned kPartitionEnumerationCap = 60;

/// All partitions of n in reverse lexicographic order: (n) first, then
/// (n-1,1), ..., ending with 1^n.
inline std::vector<Partition> enumerate_partitions(unsigned n,
                                                   unsigned cap = kPartitionEnumerationCap) {
    if (n > cap)
        throw resource_error("enumerate_partitions: n=" + std::to_string(n) +
                             " exceeds cap " + std::to_string(cap));
    std::vector<Partition> out;
    std::vector<int> stack;
    std::function<void(int, int)> rec = [&](int rest, int max_part) {
        if (rest == 0) {
            out.emplace_back(stack);
            return;
        }
        for (int first = std::min(rest, max_part); first >= 1; --first) {
            stack.push_back(first);
            rec(rest - first, first);
            stack.pop_back();
        }
    };
    rec(static_cast<int>(n), static_cast<int>(n));
    return out;
}

inline Partition transpose(const Partition& lam) {
    if (lam.empty()) return lam;
    std::vector<int> cols(static_cast<std::size_t>(lam.parts()[0]), 0);
    for (int p : lam.parts())
        for (int j = 0; j < p; ++j) ++cols[static_cast<std::size_t>(j)];
    return Partition(std::move(cols));
}

struct BoxData {
    int row;      // 1-based
    int col;      // 1-based
    int content;  // col - row
    int hook;
};

inline std::vector<BoxData> box_data(const Partition& lam) {
    std::vector<BoxData> out;
    auto collens = transpose(lam).parts();
    for (std::size_t i = 0; i < lam.rows(); ++i) {
        for (int j = 1; j <= lam.parts()[i]; ++j) {
            int arm = lam.parts()[i] - j;
            int leg = collens[static_cast<std::size_t>(j - 1)] - static_cast<int>(i) - 1;
            out.push_back(BoxData{static_cast<int>(i + 1), j,
                                  j - static_cast<int>(i) - 1, arm + leg + 1});
        }
    }
    return out;
}

/// Exact dimensions are served up to this box count; use log_dimension beyond
/// (the squared dimensions overflow fixed-width integers long before that).
inline constexpr std::int64_t kDimensionExactMax = 150;

/// Number of standard Young tableaux of shape lambda, by the hook-length
/// formula.  Exact division, exact result.
inline BigInt dimension(const Partition& lam) {
    if (lam.n() > kDimensionExactMax)
        throw resource_error("dimension: exact mode capped at n=150; use log_dimension");
    BigInt num = factorial(static_cast<unsigned>(lam.n()));
    for (const auto& b : box_data(lam)) num /= b.hook;
    return num;
}

/// log(dim lambda) in double precision; valid for any size.
inline double log_dimension(const Partition& lam) {
    double s = std::lgamma(static_cast<double>(lam.n()) + 1.0);
    for (const auto& b : box_data(lam)) s -= std::log(static_cast<double>(b.hook));
    return s;
}

inline FrobeniusCoords frobenius(const Partition& lam) {
    FrobeniusCoords fc;
    auto collens = transpose(lam).parts();
    for (std::size_t i = 0; i < lam.rows(); ++i) {
        int li = lam.parts()[i];
        if (li < static_cast<int>(i) + 1) break;  // past the diagonal
        fc.a.push_back(HalfInt{2 * (li - static_cast<int>(i)) - 1});
        fc.b.push_back(HalfInt{2 * (collens[i] - static_cast<int>(i)) - 1});
    }
    return fc;
}

/// The embedding Y_n -> Omega: alpha_i = a_i/n, beta_i = b_i/n.  Exact, so
/// the deficiency is exactly zero.
inline ThomaPointExact thoma_embed(const Partition& lam) {
    if (lam.empty()) throw std::domain_error("thoma_embed: empty diagram has no scale");
    auto fc = frobenius(lam);
    ThomaPointExact w;
    for (auto h : fc.a) w.alpha.emplace_back(Rational(h.num, 2 * lam.n()));
    for (auto h : fc.b) w.beta.emplace_back(Rational(h.num, 2 * lam.n()));
    return w;
}

struct Corner {
    int row;      // 1-based
    int col;      // 1-based
    int content;  // col - row
};

struct CornerSet {
    std::vector<Corner> addable;    // contents strictly decreasing in row order
    std::vector<Corner> removable;  // interlaced with the addable contents
};

/// Addable corners (positions where one box may be added) and removable
/// corners.  |addable| = |removable| + 1 always.
inline CornerSet addable_removable(const Partition& lam) {
    CornerSet cs;
    const auto& p = lam.parts();
    int r = static_cast<int>(p.size());
    for (int i = 0; i <= r; ++i) {
        int len = i < r ? p[static_cast<std::size_t>(i)] : 0;
        if (i == 0 || len < p[static_cast<std::size_t>(i - 1)])
            cs.addable.push_back(Corner{i + 1, len + 1, len - i});
        if (i < r && (i + 1 == r || len > p[static_cast<std::size_t>(i + 1)]))
            cs.removable.push_back(Corner{i + 1, len, len - 1 - i});
    }
    return cs;
}

/// lam with one box added at the given addable corner.
inline Partition add_box(const Partition& lam, const Corner& c) {
    auto parts = lam.parts();
    if (c.row == static_cast<int>(parts.size()) + 1)
        parts.push_back(1);
    else
        ++parts.at(static_cast<std::size_t>(c.row - 1));
    return Partition(std::move(parts));
}

/// True if lam covers mu (differs by exactly one box).
inline bool covers(const Partition& lam, const Partition& mu) {
    if (lam.n() != mu.n() + 1) return false;
    std::size_t rows = std::max(lam.rows(), mu.rows());
    int diff = 0;
    for (std::size_t i = 0; i < rows; ++i) {
        int d = lam.part(i) - mu.part(i);
        if (d < 0 || d > 1) return false;
        diff += d;
    }
    return diff == 1;
}

}  // namespace thoma
