#pragma once

#include "thoma/gamma.hpp"
#include "thoma/numeric.hpp"
#include "thoma/quadrature.hpp"
#include "thoma/whittaker.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace thoma {

inline double sign_of(double x) { return x > 0 ? 1.0 : -1.0; }

/// The sine kernel sin(pi(x-y)) / (pi(x-y)), diagonal value 1.
inline double sine_kernel(double x, double y) {
    double d = std::numbers::pi * (x - y);
    if (std::abs(d) < 1e-8) return 1.0 - d * d / 6.0;
    return std::sin(d) / d;
}

/// The L-operator kernel block A(x, y), x > 0 > y:
///   |sin(pi z)/pi|^2 (x/|y|)^{Re z} e^{-(x-y)/2} / (x - y).
inline double l_kernel(const ZFloat& z, double x, double y) {
    if (!(x > 0) || !(y < 0)) throw std::domain_error("l_kernel: requires x > 0 > y");
    std::complex<double> pz(std::numbers::pi * z.re, std::numbers::pi * z.im);
    double sin_sq = std::norm(std::sin(pz)) / (std::numbers::pi * std::numbers::pi);
    return sin_sq * std::pow(x / -y, z.re) * std::exp(-(x - y) / 2) / (x - y);
}

/// P_+/-, Q_+/- of the Main Theorem at one positive coordinate.
struct PQValues {
    double p_plus = 0, p_minus = 0, q_plus = 0, q_minus = 0;
};

/// The Whittaker kernel K(x, y) on R* x R*.  Whittaker evaluations are cached
/// per coordinate magnitude; prepare() batches them for grids.
///
/// The x < 0 < y block is forced by the J-symmetry K(x,y) = sgn x sgn y K(y,x)
/// to be [P-(-x)P+(y) + Q-(-x)Q+(y)] / (x-y); the printed source drops the
/// reflection on its first factor, which would break both J-symmetry and the
/// symmetry of the (+,+)/(-,-) blocks against the resolvent identity.
class WhittakerKernel {
public:
    explicit WhittakerKernel(const ZFloat& z)
        : a_(z.re),
          b_(z.im),
          t_(z.abs_sq()),
          wp_plus_(a_ + 0.5, -b_ * b_),
          wp_minus_(-a_ + 0.5, -b_ * b_),
          wq_plus_(a_ - 0.5, -b_ * b_),
          wq_minus_(-a_ - 0.5, -b_ * b_),
          wq_plus_m1_(a_ - 1.5, -b_ * b_),
          wq_minus_m1_(-a_ - 1.5, -b_ * b_) {
        if (z.is_zero()) throw std::domain_error("WhittakerKernel: z must be nonzero");
        double ga_plus = abs_gamma(std::complex<double>(1 + a_, b_));
        double ga_minus = abs_gamma(std::complex<double>(1 - a_, -b_));
        c_plus_ = std::isinf(ga_plus) ? 0.0 : std::sqrt(t_) / ga_plus;
        c_minus_ = std::isinf(ga_minus) ? 0.0 : std::sqrt(t_) / ga_minus;
    }

    double t() const { return t_; }

    /// Batch-precompute the six Whittaker sweeps at the given |x| values.
    void prepare(const std::vector<double>& magnitudes) const {
        std::vector<double> xs;
        xs.reserve(magnitudes.size());
        {
            std::lock_guard lock(mutex_);
            for (double m : magnitudes)
                if (!cache_.count(m)) xs.push_back(m);
        }
        if (xs.empty()) return;
        auto vp = wp_plus_.eval_batch(xs);
        auto vm = wp_minus_.eval_batch(xs);
        auto qp = wq_plus_.eval_batch(xs);
        auto qm = wq_minus_.eval_batch(xs);
        auto qp1 = wq_plus_m1_.eval_batch(xs);
        auto qm1 = wq_minus_m1_.eval_batch(xs);
        std::lock_guard lock(mutex_);
        for (std::size_t i = 0; i < xs.size(); ++i)
            cache_[xs[i]] = Entry{vp[i], vm[i], qp[i], qm[i], qp1[i], qm1[i]};
    }

    PQValues pq(double x) const {
        if (!(x > 0)) throw std::domain_error("pq: x must be positive");
        Entry e = lookup(x);
        PQValues v;
        v.p_plus = c_plus_ * e.p_plus.w;
        v.p_minus = c_minus_ * e.p_minus.w;
        v.q_plus = t_ * c_plus_ * e.q_plus.w / std::sqrt(x);
        v.q_minus = t_ * c_minus_ * e.q_minus.w / std::sqrt(x);
        return v;
    }

    double operator()(double x, double y) const {
        if (x == 0 || y == 0) throw std::domain_error("WhittakerKernel: coordinates in R*");
        if (x == y) return diagonal(x);
        PQValues fx = pq(std::abs(x)), fy = pq(std::abs(y));
        if (x > 0 && y > 0)
            return (fx.p_plus * fy.q_plus - fx.q_plus * fy.p_plus) / (x - y);
        if (x > 0 && y < 0)
            return (fx.p_plus * fy.p_minus + fx.q_plus * fy.q_minus) / (x - y);
        if (x < 0 && y > 0)
            return (fx.p_minus * fy.p_plus + fx.q_minus * fy.q_plus) / (x - y);
        return -(fx.p_minus * fy.q_minus - fx.q_minus * fy.p_minus) / (x - y);
    }

    /// K(x, x) by L'Hospital: Q P' - P Q' on the positive side (mirrored on
    /// the negative side), the W-derivatives coming from the contiguous
    /// relation W'_{k} = (k/x - 1/2) W_k - (mu^2 - (k-1/2)^2)/x W_{k-1}.
    double diagonal(double x) const {
        double u = std::abs(x);
        Entry e = lookup(u);
        double mu_sq = -b_ * b_;
        bool plus = x > 0;
        double c = plus ? c_plus_ : c_minus_;
        double kp = (plus ? a_ : -a_) + 0.5;
        double kq = kp - 1.0;
        const WhittakerEval& wp = plus ? e.p_plus : e.p_minus;
        const WhittakerEval& wq = plus ? e.q_plus : e.q_minus;
        const WhittakerEval& wq1 = plus ? e.q_plus_m1 : e.q_minus_m1;
        double p = c * wp.w;
        double q = t_ * c * wq.w / std::sqrt(u);
        double dwp = (kp / u - 0.5) * wp.w - (mu_sq - (kp - 0.5) * (kp - 0.5)) / u * wq.w;
        double dwq = (kq / u - 0.5) * wq.w - (mu_sq - (kq - 0.5) * (kq - 0.5)) / u * wq1.w;
        double dp = c * dwp;
        double dq = t_ * c * (dwq / std::sqrt(u) - 0.5 * wq.w / std::pow(u, 1.5));
        return q * dp - p * dq;
    }

private:
    struct Entry {
        WhittakerEval p_plus, p_minus, q_plus, q_minus, q_plus_m1, q_minus_m1;
    };

    Entry lookup(double x) const {
        {
            std::lock_guard lock(mutex_);
            if (auto it = cache_.find(x); it != cache_.end()) return it->second;
        }
        prepare({x});
        std::lock_guard lock(mutex_);
        return cache_.at(x);
    }

    double a_, b_, t_;
    double c_plus_ = 0, c_minus_ = 0;
    WhittakerSolver wp_plus_, wp_minus_, wq_plus_, wq_minus_, wq_plus_m1_, wq_minus_m1_;
    mutable std::map<double, Entry> cache_;
    mutable std::mutex mutex_;
};

/// Free-function form of the Main Theorem kernel.
inline double whittaker_kernel(const ZFloat& z, double x, double y) {
    return WhittakerKernel(z)(x, y);
}

inline PQValues pq_functions(const ZFloat& z, double x) {
    return WhittakerKernel(z).pq(x);
}

/// Both routes to q(z) and their discrepancy.  The lattice sum uses a direct
/// sum over |n| <= N with a midpoint-integral tail whose error is certified
/// by the 1/24 |f''| bound; the cotangent form is skipped (0/0) for real z.
struct QEvaluation {
    double value = 0;      // from the lattice sum
    double sum_form = 0;
    double cot_form = 0;   // NaN for real z
    double discrepancy = 0;
    double tail_bound = 0;
};

inline QEvaluation q_of_z_full(std::complex<double> z) {
    double x = z.real(), y = z.imag();
    if (y == 0 && x == std::floor(x)) throw std::domain_error("q_of_z: z must not be an integer");
    const double n_max = 20000;
    double s = 0;
    for (double n = -n_max; n <= n_max; ++n) s += 1.0 / ((x - n) * (x - n) + y * y);
    // Tails by the midpoint rule: sum_{n>N} f(n) ~ int_{N+1/2}^inf f, with
    // |error| <= (1/24) int |f''| <= (1/12) / (N - |x| - |y|)^3 per side.
    double hi = n_max + 0.5;
    if (y != 0) {
        s += (std::numbers::pi / 2 - std::atan((hi - x) / std::abs(y))) / std::abs(y);
        s += (std::numbers::pi / 2 - std::atan((hi + x) / std::abs(y))) / std::abs(y);
    } else {
        s += 1.0 / (hi - x);
        s += 1.0 / (hi + x);
    }
    QEvaluation out;
    out.tail_bound = 2.0 / 12.0 / std::pow(n_max - std::abs(x) - std::abs(y), 3.0);
    out.sum_form = std::exp(-s);
    out.value = out.sum_form;
    if (y != 0) {
        std::complex<double> cot =
            std::cos(std::numbers::pi * z) / std::sin(std::numbers::pi * z);
        // pi (cot pi z - cot pi zbar) / (z - zbar) = pi Im(cot pi z) / Im z
        out.cot_form = std::exp(std::numbers::pi * cot.imag() / y);
        out.discrepancy = std::abs(out.cot_form - out.sum_form);
    } else {
        out.cot_form = std::numeric_limits<double>::quiet_NaN();
        out.discrepancy = 0;
    }
    return out;
}

inline double q_of_z(std::complex<double> z) { return q_of_z_full(z).value; }

/// Outcome of the discretized resolvent identity K = L(1+L)^{-1}.
struct ResolventReport {
    double max_abs_dev = 0;
    double rcond = 0;
    std::size_t nodes = 0;
    std::size_t compared_pairs = 0;
};

/// Builds the block operator L over the grid with symmetrized weights
/// sqrt(w_i) L(x_i,x_j) sqrt(w_j), solves (1+L)M = L, de-conjugates, and
/// compares with the Whittaker kernel on node pairs with |x|,|y| in
/// [cmp_lo, cmp_hi].
inline ResolventReport resolvent_check(const ZFloat& z, const GridSpec& spec,
                                       double cmp_lo = 0.1, double cmp_hi = 5.0) {
    if (!(std::abs(z.re) < 0.5) || z.is_zero())
        throw std::domain_error("resolvent_check: need -1/2 < Re z < 1/2, z != 0");
    KernelGrid grid = build_kernel_grid(spec);
    const auto n = static_cast<Eigen::Index>(grid.size());

    Eigen::MatrixXd bmat = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        double xi = grid.nodes[static_cast<std::size_t>(i)];
        for (Eigen::Index j = 0; j < n; ++j) {
            double xj = grid.nodes[static_cast<std::size_t>(j)];
            double lij = 0;
            if (xi > 0 && xj < 0)
                lij = l_kernel(z, xi, xj);
            else if (xi < 0 && xj > 0)
                lij = -l_kernel(z, xj, xi);
            if (lij != 0)
                bmat(i, j) = std::sqrt(grid.weights[static_cast<std::size_t>(i)]) * lij *
                             std::sqrt(grid.weights[static_cast<std::size_t>(j)]);
        }
    }
    Eigen::MatrixXd lhs = Eigen::MatrixXd::Identity(n, n) + bmat;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(lhs);
    double rcond = lu.rcond();
    if (rcond < 1e-12)
        throw std::runtime_error("resolvent_check: (1+L) ill-conditioned, rcond = " +
                                 std::to_string(rcond));
    Eigen::MatrixXd m = lu.solve(bmat);

    WhittakerKernel kernel(z);
    std::vector<double> mags;
    for (double xnode : grid.nodes) {
        double u = std::abs(xnode);
        if (u >= cmp_lo && u <= cmp_hi) mags.push_back(u);
    }
    kernel.prepare(mags);

    ResolventReport report;
    report.nodes = grid.size();
    report.rcond = rcond;
    for (Eigen::Index i = 0; i < n; ++i) {
        double xi = grid.nodes[static_cast<std::size_t>(i)];
        if (std::abs(xi) < cmp_lo || std::abs(xi) > cmp_hi) continue;
        for (Eigen::Index j = 0; j < n; ++j) {
            double xj = grid.nodes[static_cast<std::size_t>(j)];
            if (std::abs(xj) < cmp_lo || std::abs(xj) > cmp_hi) continue;
            double nystrom = m(i, j) / std::sqrt(grid.weights[static_cast<std::size_t>(i)] *
                                                 grid.weights[static_cast<std::size_t>(j)]);
            double exact = kernel(xi, xj);
            report.max_abs_dev = std::max(report.max_abs_dev, std::abs(nystrom - exact));
            ++report.compared_pairs;
        }
    }
    return report;
}

}  // namespace thoma
