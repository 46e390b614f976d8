#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

namespace thoma {

/// Value and x-derivative of a Whittaker function at one point.
struct WhittakerEval {
    double w = 0;
    double dw = 0;
};

/// Evaluator for the Whittaker function W_{kappa,mu}(x), the solution of
///   W'' = (1/4 - kappa/x + (mu^2 - 1/4)/x^2) W,   W ~ x^kappa e^{-x/2},
/// parametrized by mu^2 so that purely imaginary mu (the kernel case) stays
/// in real arithmetic.
///
/// Strategy: the divergent large-x series is summed to its smallest term
/// beyond an adaptive threshold x_asym; below that the ODE is integrated
/// backward in u = log x from an asymptotic seed (backward is the stable
/// direction for the recessive-at-infinity solution).  When the series
/// terminates (kappa -+ mu - 1/2 a nonnegative integer) it is exact and is
/// used for all x.
class WhittakerSolver {
public:
    WhittakerSolver(double kappa, double mu_sq) : kappa_(kappa), mu_sq_(mu_sq) {
        if (mu_sq >= 0) {
            double mu = std::sqrt(mu_sq);
            for (double m : {kappa - mu - 0.5, kappa + mu - 0.5}) {
                double r = std::round(m);
                if (r >= 0 && r < 64 && std::abs(m - r) < 1e-9) {
                    terminating_ = true;
                    terms_ = static_cast<int>(r) + 1;
                    break;
                }
            }
        }
        x_asym_ = std::max(40.0, 25.0 + 10.0 * std::abs(kappa) +
                                     3.0 * std::sqrt(std::abs(mu_sq)));
    }

    double x_asym() const { return terminating_ ? 0.0 : x_asym_; }

    WhittakerEval eval(double x) const {
        auto v = eval_batch({x});
        return v.front();
    }

    /// Values at all requested points (any order, each > 0).  Points below
    /// the asymptotic threshold are produced by one backward sweep.
    std::vector<WhittakerEval> eval_batch(const std::vector<double>& xs) const {
        for (double x : xs)
            if (!(x > 0)) throw std::domain_error("whittaker_W: x must be positive");
        std::vector<WhittakerEval> out(xs.size());
        std::vector<std::size_t> idx(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(),
                  [&](std::size_t a, std::size_t b) { return xs[a] > xs[b]; });

        std::size_t k = 0;
        for (; k < idx.size() && (terminating_ || xs[idx[k]] >= x_asym_); ++k)
            out[idx[k]] = series_eval(xs[idx[k]]);
        if (k == idx.size()) return out;

        // Backward sweep from the asymptotic seed through the remaining
        // points in decreasing order, forcing steps to land on each target.
        double u = std::log(x_asym_);
        auto seed = series_eval(x_asym_);
        std::array<double, 2> state{seed.w, seed.dw * x_asym_};  // (W, dW/du)
        for (; k < idx.size(); ++k) {
            double target = std::log(xs[idx[k]]);
            integrate_to(state, u, target);
            double x = xs[idx[k]];
            out[idx[k]] = WhittakerEval{state[0], state[1] / x};
        }
        return out;
    }

private:
    double kappa_;
    double mu_sq_;
    double x_asym_;
    bool terminating_ = false;
    int terms_ = 0;

    /// e^{-x/2} x^kappa sum_s c_s x^{-s} with
    /// c_{s+1} = c_s (mu^2 - (s + 1/2 - kappa)^2) / (s+1), plus its
    /// derivative.  Divergent in general; summed to the smallest term.
    WhittakerEval series_eval(double x) const {
        double c = 1.0, sum = 1.0, dsum = 0.0;
        double term = 1.0, xpow = 1.0;
        const int s_cap = terminating_ ? terms_ - 1 : 200;
        for (int s = 0; s < s_cap; ++s) {
            double half = s + 0.5 - kappa_;
            c *= (mu_sq_ - half * half) / (s + 1);
            xpow /= x;
            double next = c * xpow;
            if (!terminating_ && std::abs(next) >= std::abs(term)) break;
            sum += next;
            dsum -= (s + 1) * next / x;
            term = next;
            if (!terminating_ && std::abs(next) < 1e-17 * std::abs(sum)) break;
        }
        double envelope = std::exp(-x / 2) * std::pow(x, kappa_);
        double w = envelope * sum;
        double dw = envelope * ((kappa_ / x - 0.5) * sum + dsum);
        return WhittakerEval{w, dw};
    }

    double rhs_coeff(double u) const {
        double x = std::exp(u);
        return x * x / 4 - kappa_ * x + mu_sq_ - 0.25;
    }

    /// Dormand-Prince 5(4) on (W, W_u)' = (W_u, W_u + g(u) W), adaptive,
    /// integrating from u down to target (target < u).
    void integrate_to(std::array<double, 2>& y, double& u, double target) const {
        auto f = [&](double uu, const std::array<double, 2>& s) {
            return std::array<double, 2>{s[1], s[1] + rhs_coeff(uu) * s[0]};
        };
        constexpr double tol = 1e-13;
        double h = -std::min(1e-3, (u - target) / 4 + 1e-12);
        while (u > target + 1e-15) {
            if (u + h < target) h = target - u;
            auto k1 = f(u, y);
            auto step = [&](double frac, std::initializer_list<std::pair<double, const std::array<double, 2>*>> terms) {
                std::array<double, 2> s = y;
                for (auto [cc, kk] : terms) {
                    s[0] += h * cc * (*kk)[0];
                    s[1] += h * cc * (*kk)[1];
                }
                return f(u + frac * h, s);
            };
            auto k2 = step(1.0 / 5, {{1.0 / 5, &k1}});
            auto k3 = step(3.0 / 10, {{3.0 / 40, &k1}, {9.0 / 40, &k2}});
            auto k4 = step(4.0 / 5, {{44.0 / 45, &k1}, {-56.0 / 15, &k2}, {32.0 / 9, &k3}});
            auto k5 = step(8.0 / 9, {{19372.0 / 6561, &k1},
                                     {-25360.0 / 2187, &k2},
                                     {64448.0 / 6561, &k3},
                                     {-212.0 / 729, &k4}});
            auto k6 = step(1.0, {{9017.0 / 3168, &k1},
                                 {-355.0 / 33, &k2},
                                 {46732.0 / 5247, &k3},
                                 {49.0 / 176, &k4},
                                 {-5103.0 / 18656, &k5}});
            std::array<double, 2> y5;
            for (int i = 0; i < 2; ++i)
                y5[i] = y[i] + h * (35.0 / 384 * k1[i] + 500.0 / 1113 * k3[i] +
                                    125.0 / 192 * k4[i] - 2187.0 / 6784 * k5[i] +
                                    11.0 / 84 * k6[i]);
            auto k7 = f(u + h, y5);
            std::array<double, 2> y4;
            for (int i = 0; i < 2; ++i)
                y4[i] = y[i] + h * (5179.0 / 57600 * k1[i] + 7571.0 / 16695 * k3[i] +
                                    393.0 / 640 * k4[i] - 92097.0 / 339200 * k5[i] +
                                    187.0 / 2100 * k6[i] + 1.0 / 40 * k7[i]);
            double scale = std::max({std::abs(y[0]), std::abs(y[1]), std::abs(y5[0]),
                                     std::abs(y5[1]), 1e-300});
            double err = std::max(std::abs(y5[0] - y4[0]), std::abs(y5[1] - y4[1])) / scale;
            if (err <= tol) {
                u += h;
                y = y5;
            }
            double factor = err > 0 ? 0.9 * std::pow(tol / err, 0.2) : 5.0;
            factor = std::clamp(factor, 0.2, 5.0);
            h *= factor;
            if (std::abs(h) < 1e-14) h = -1e-14;
        }
        u = target;
    }
};

/// One-shot evaluation of W_{kappa, mu}(x) with mu^2 given.
inline double whittaker_W(double kappa, double mu_sq, double x) {
    return WhittakerSolver(kappa, mu_sq).eval(x).w;
}

/// Derivative from the contiguous relation
///   W'_{k,m}(x) = (k/x - 1/2) W_{k,m}(x) - (mu^2 - (k - 1/2)^2)/x W_{k-1,m}(x),
/// used for the kernel diagonal; independent of the ODE-propagated slope.
inline double whittaker_W_deriv_contiguous(double kappa, double mu_sq, double x) {
    double w = whittaker_W(kappa, mu_sq, x);
    double wm = whittaker_W(kappa - 1.0, mu_sq, x);
    double half = kappa - 0.5;
    return (kappa / x - 0.5) * w - (mu_sq - half * half) / x * wm;
}

}  // namespace thoma
