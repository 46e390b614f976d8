#pragma once

#include "thoma/numeric.hpp"
#include "thoma/partition.hpp"
#include "thoma/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace thoma {

/// Parameters of a z-measure / mixed z-measure.  t = |z|^2 is derived; xi is
/// present only for the mixed family.
template <class S>
struct ZParams {
    ComplexParam<S> z;
    std::optional<S> xi;

    S t() const { return z.abs_sq(); }
};

/// P_z^(n)(lambda): product of |z + content|^2 over the boxes, divided by
/// t(t+1)...(t+n-1), times (dim lambda)^2 / n!.  P_z^(0)(empty) = 1.
/// z = 0 is the limit case: the zero-content box cancels the leading t.
template <class S>
S zmeasure_prob(const ComplexParam<S>& z, const Partition& lam) {
    unsigned n = static_cast<unsigned>(lam.n());
    if (n == 0) return S(1);
    S t = z.abs_sq();
    S num(1);
    if (t == S(0)) {
        int zero_boxes = 0;
        for (const auto& b : box_data(lam)) {
            if (b.content == 0)
                ++zero_boxes;
            else
                num *= S(b.content) * S(b.content);
        }
        if (zero_boxes > 1) return S(0);
        S dim(dimension(lam));
        return num / rising_factorial(S(1), n - 1) * dim * dim /
               S(factorial(n));
    }
    for (const auto& b : box_data(lam)) num *= z.abs_sq_shifted(b.content);
    S dim(dimension(lam));
    return num / rising_factorial(t, n) * dim * dim / S(factorial(n));
}

/// Floating z-measure evaluated in log space (safe for large |z| or n).
inline double zmeasure_prob(const ZFloat& z, const Partition& lam) {
    unsigned n = static_cast<unsigned>(lam.n());
    if (n == 0) return 1.0;
    double t = z.abs_sq();
    double log_num = 0;
    int zero_boxes = 0;
    for (const auto& b : box_data(lam)) {
        double f = z.abs_sq_shifted(b.content);
        if (f == 0.0) {
            ++zero_boxes;
            continue;
        }
        log_num += std::log(f);
    }
    double log_rising = 0;
    if (t == 0.0) {
        if (zero_boxes > 1) return 0.0;
        for (unsigned k = 1; k < n; ++k) log_rising += std::log(static_cast<double>(k));
    } else {
        if (zero_boxes > 0) return 0.0;
        for (unsigned k = 0; k < n; ++k) log_rising += std::log(t + k);
    }
    double log_p = log_num - log_rising + 2.0 * log_dimension(lam) -
                   std::lgamma(static_cast<double>(n) + 1.0);
    return std::exp(log_p);
}

/// Exhaustive check of the coherency relation
/// P^(n)(mu) = sum over lambda covering mu of (dim mu / dim lambda) P^(n+1)(lambda),
/// exact over Y_n.
template <class S>
bool coherency_check(const ComplexParam<S>& z, unsigned n) {
    for (const auto& mu : enumerate_partitions(n)) {
        S lhs = zmeasure_prob(z, mu);
        S rhs(0);
        S dim_mu(dimension(mu));
        for (const auto& c : addable_removable(mu).addable) {
            Partition lam = add_box(mu, c);
            rhs += dim_mu / S(dimension(lam)) * zmeasure_prob(z, lam);
        }
        if (lhs != rhs) return false;
    }
    return true;
}

namespace detail {

/// dim(mu + box at addable corner k) / dim(mu), via the interlacing corner
/// contents (no big-integer dimensions involved):
///   (n+1) * prod_i (x_k - y_i) / prod_{i != k} (x_k - x_i).
template <class S>
S dim_ratio_from_corners(const CornerSet& cs, std::size_t k, std::int64_t n) {
    S ratio(n + 1);
    const auto& add = cs.addable;
    const auto& rem = cs.removable;
    std::int64_t xk = add[k].content;
    // Interleave factors to keep floating magnitudes tame.
    for (std::size_t i = 0; i < rem.size(); ++i) {
        std::size_t xi = i < k ? i : i + 1;
        ratio *= S(xk - rem[i].content) / S(xk - add[xi].content);
    }
    return ratio;
}

}  // namespace detail

/// Transition probability of the coherency growth chain:
/// q(mu -> lambda) = (dim mu / dim lambda) P^(n+1)(lambda) / P^(n)(mu)
///                 = |z + c|^2 / ((t+n)(n+1)) * dim lambda / dim mu,
/// with c the content of the added box.  Computed from corner contents.
template <class S>
S growth_transition(const ComplexParam<S>& z, const Partition& mu, const Partition& lam) {
    if (!covers(lam, mu))
        throw std::domain_error("growth_transition: lambda does not cover mu");
    auto cs = addable_removable(mu);
    for (std::size_t k = 0; k < cs.addable.size(); ++k) {
        if (add_box(mu, cs.addable[k]) == lam) {
            S t = z.abs_sq();
            return z.abs_sq_shifted(cs.addable[k].content) *
                   detail::dim_ratio_from_corners<S>(cs, k, mu.n()) /
                   ((t + S(mu.n())) * S(mu.n() + 1));
        }
    }
    throw std::logic_error("growth_transition: corner not found");
}

/// One growth step: all transition weights out of mu, in addable-corner order.
template <class S>
std::vector<S> growth_weights(const ComplexParam<S>& z, const Partition& mu,
                              const CornerSet& cs) {
    S t = z.abs_sq();
    std::vector<S> w(cs.addable.size());
    for (std::size_t k = 0; k < cs.addable.size(); ++k)
        w[k] = z.abs_sq_shifted(cs.addable[k].content) *
               detail::dim_ratio_from_corners<S>(cs, k, mu.n()) /
               ((t + S(mu.n())) * S(mu.n() + 1));
    return w;
}

/// Sequential sampler for P_z^(n): grow from the empty diagram by n
/// coherency-weighted box additions.
inline Partition sample_growth(const ZFloat& z, int n, Rng& rng) {
    if (z.is_zero()) throw std::domain_error("sample_growth: z must be nonzero");
    std::vector<int> parts;
    for (int step = 0; step < n; ++step) {
        Partition mu(parts);
        auto cs = addable_removable(mu);
        auto w = growth_weights(z, mu, cs);
        double total = 0;
        for (double x : w) total += x;
        double u = rng.u01() * total;
        std::size_t pick = 0;
        for (; pick + 1 < w.size(); ++pick) {
            u -= w[pick];
            if (u <= 0) break;
        }
        const auto& c = cs.addable[pick];
        if (c.row == static_cast<int>(parts.size()) + 1)
            parts.push_back(1);
        else
            ++parts[static_cast<std::size_t>(c.row - 1)];
    }
    return Partition(std::move(parts));
}

/// pi_{t,xi}(n) = (1-xi)^t * t(t+1)...(t+n-1)/n! * xi^n.
inline double neg_binomial_weight(double t, double xi, unsigned n) {
    if (t <= 0 || xi <= 0 || xi >= 1)
        throw std::domain_error("neg_binomial_weight: need t > 0 and xi in (0,1)");
    double log_w = t * std::log1p(-xi) + n * std::log(xi) -
                   std::lgamma(static_cast<double>(n) + 1.0);
    for (unsigned k = 0; k < n; ++k) log_w += std::log(t + k);
    return std::exp(log_w);
}

/// The rational part pi_{t,xi}(n) / (1-xi)^t; exact for rational t, xi.
template <class S>
S neg_binomial_ratio(const S& t, const S& xi, unsigned n) {
    return rising_factorial(t, n) * pow_int(xi, static_cast<int>(n)) / S(factorial(n));
}

/// Truncation level N with a certified bound sum_{n > N} pi_{t,xi}(n) < tail_eps.
/// The step ratio pi(n+1)/pi(n) = xi (t+n)/(n+1) is monotone toward xi, so
/// r = max(ratio(n), xi) dominates all later ratios and the tail is geometric.
inline unsigned neg_binomial_truncation(double t, double xi, double tail_eps,
                                        unsigned hard_cap = 4000) {
    double pi_n = neg_binomial_weight(t, xi, 0);
    for (unsigned n = 0; n <= hard_cap; ++n) {
        double ratio = xi * (t + n) / (n + 1);
        double r = std::max(ratio, xi);
        if (r < 1 && pi_n * r / (1 - r) < tail_eps) return n;
        pi_n *= ratio;
    }
    throw resource_error("neg_binomial_truncation: cap exceeded; decrease xi or tail_eps");
}

/// Draw the size n from pi_{t,xi}, then lambda from P_z^(n) by growth.
inline Partition sample_mixed(const ZFloat& z, double xi, Rng& rng) {
    if (z.is_zero()) throw std::domain_error("sample_mixed: z must be nonzero");
    double t = z.abs_sq();
    double u = rng.u01();
    double pi_n = neg_binomial_weight(t, xi, 0);
    unsigned n = 0;
    while (u >= pi_n) {
        u -= pi_n;
        pi_n *= xi * (t + n) / (n + 1);
        ++n;
        if (n > 2'000'000) throw resource_error("sample_mixed: size draw ran away");
    }
    return sample_growth(z, static_cast<int>(n), rng);
}

/// A finite multiset-free configuration on the half-integer lattice Z',
/// stored in increasing order.
struct LatticeConfiguration {
    std::vector<HalfInt> points;

    bool contains(HalfInt p) const {
        return std::binary_search(points.begin(), points.end(), p);
    }
    bool contains_all(const std::vector<HalfInt>& ps) const {
        for (auto p : ps)
            if (!contains(p)) return false;
        return true;
    }
    std::string str() const {
        std::string s;
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (i) s += ' ';
            s += points[i].str();
        }
        return s;
    }
    friend bool operator==(const LatticeConfiguration&, const LatticeConfiguration&) = default;
};

/// lambda -> {-b_1, ..., -b_d, a_d, ..., a_1} in Z', stored ascending.
inline LatticeConfiguration lattice_config(const Partition& lam) {
    auto fc = frobenius(lam);
    LatticeConfiguration c;
    c.points.reserve(2 * fc.d());
    for (std::size_t i = 0; i < fc.d(); ++i) c.points.push_back(-fc.b[i]);
    for (std::size_t i = fc.d(); i-- > 0;) c.points.push_back(fc.a[i]);
    return c;
}

/// The embedding x -> (1 - xi) x of Z' into R*.
inline std::vector<double> scaled_config(const LatticeConfiguration& c, double xi) {
    if (xi <= 0 || xi >= 1) throw std::domain_error("scaled_config: xi must be in (0,1)");
    std::vector<double> out;
    out.reserve(c.points.size());
    for (auto p : c.points) out.push_back((1.0 - xi) * p.value());
    return out;
}

/// A correlation value with a certified truncation error bound.
struct BoundedValue {
    double value = 0;
    double bound = 0;
};

/// Brute-force correlations of the mixed z-measure lattice process: sums
/// P~_{z,xi}(lambda) over all diagrams whose configuration contains the given
/// points, truncated with a certified negative-binomial tail bound.
///
/// The (1-xi)^t prefactor is irrational in general, so sums are accumulated
/// exactly as rationals and multiplied by the prefactor once, in double.
class BruteForceCorrelator {
public:
    BruteForceCorrelator(const ZExact& z, const Rational& xi, double tail_eps,
                         unsigned cap = kPartitionEnumerationCap)
        : tail_eps_(tail_eps) {
        if (z.is_zero()) throw std::domain_error("correlator: z must be nonzero");
        Rational t = z.abs_sq();
        double td = to_double(t), xid = to_double(xi);
        nmax_ = neg_binomial_truncation(td, xid, tail_eps);
        if (nmax_ > cap)
            throw resource_error("brute_force_correlation: truncation level " +
                                 std::to_string(nmax_) + " exceeds enumeration cap; "
                                 "decrease xi or loosen tail_eps");
        prefactor_ = std::pow(1.0 - xid, td);
        for (unsigned n = 0; n <= nmax_; ++n) {
            Rational ratio = neg_binomial_ratio(t, xi, n);
            for (const auto& lam : enumerate_partitions(n))
                terms_.push_back(Term{lattice_config(lam), ratio * zmeasure_prob(z, lam)});
        }
        for (const auto& term : terms_) total_ratio_ += term.weight;
    }

    /// rho(points) with its certified bound.
    BoundedValue correlation(const std::vector<HalfInt>& points) const {
        Rational acc(0);
        for (const auto& term : terms_)
            if (term.config.contains_all(points)) acc += term.weight;
        return BoundedValue{prefactor_ * to_double(acc), tail_eps_};
    }

    /// Total mass of the truncated sum (should be 1 up to the tail).
    BoundedValue total_mass() const {
        return BoundedValue{prefactor_ * to_double(total_ratio_), tail_eps_};
    }

    unsigned truncation_level() const { return nmax_; }

private:
    struct Term {
        LatticeConfiguration config;
        Rational weight;  // pi(n)/(1-xi)^t * P_z^(n)(lambda)
    };
    std::vector<Term> terms_;
    Rational total_ratio_ = 0;
    double prefactor_ = 1;
    double tail_eps_;
    unsigned nmax_ = 0;
};

inline BoundedValue brute_force_correlation(const ZExact& z, const Rational& xi,
                                            const std::vector<HalfInt>& points,
                                            double tail_eps) {
    return BruteForceCorrelator(z, xi, tail_eps).correlation(points);
}

/// max over Y_n of |P_z^(n)(lambda) - Plancherel(lambda)|.
inline double plancherel_limit_check(unsigned n, const ZFloat& zbig) {
    double dev = 0;
    for (const auto& lam : enumerate_partitions(n)) {
        double d = to_double(dimension(lam));
        double plancherel =
            d * d / to_double(factorial(n));
        dev = std::max(dev, std::abs(zmeasure_prob(zbig, lam) - plancherel));
    }
    return dev;
}

}  // namespace thoma
