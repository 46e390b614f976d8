#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace thoma {

/// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on P_n.
inline void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(static_cast<std::size_t>(n), 0.0);
    weights.assign(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[static_cast<std::size_t>(i)] = -x;
        nodes[static_cast<std::size_t>(n - 1 - i)] = x;
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[static_cast<std::size_t>(i)] = w;
        weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
}

/// Quadrature rule on [-A, -eps] u [eps, A]: composite Gauss-Legendre panels,
/// geometrically refined toward 0 to resolve the x^(Re z) endpoint behavior.
/// Nodes are increasing; weights are positive and sum to the domain length.
struct KernelGrid {
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const { return nodes.size(); }
};

struct GridSpec {
    double a = 40.0;
    double eps = 1e-3;
    double panel_ratio = 2.0;
    int nodes_per_panel = 12;

    /// Spec with roughly the requested total node count (both sides).
    static GridSpec with_total_nodes(int total, double a = 40.0, double eps = 1e-3,
                                     double ratio = 2.0) {
        GridSpec spec{a, eps, ratio, 0};
        int panels = spec.panels_per_side();
        spec.nodes_per_panel = std::max(1, (total + 2 * panels - 1) / (2 * panels));
        return spec;
    }
    int panels_per_side() const {
        int p = 1;
        double hi = eps * panel_ratio;
        while (hi < a) {
            hi *= panel_ratio;
            ++p;
        }
        return p;
    }
};

inline KernelGrid build_kernel_grid(const GridSpec& spec) {
    if (!(spec.eps > 0) || !(spec.a > spec.eps) || spec.panel_ratio <= 1)
        throw std::invalid_argument("build_kernel_grid: bad spec");
    if (spec.nodes_per_panel * spec.panels_per_side() > 4000)
        throw std::invalid_argument("build_kernel_grid: node count over the grid cap");
    std::vector<double> base_nodes, base_weights;
    gauss_legendre(spec.nodes_per_panel, base_nodes, base_weights);

    std::vector<std::pair<double, double>> panels;  // positive side
    double lo = spec.eps;
    while (lo < spec.a) {
        double hi = std::min(lo * spec.panel_ratio, spec.a);
        panels.emplace_back(lo, hi);
        lo = hi;
    }
    KernelGrid grid;
    auto emit = [&](double plo, double phi) {
        double mid = (plo + phi) / 2, half = (phi - plo) / 2;
        for (std::size_t k = 0; k < base_nodes.size(); ++k) {
            grid.nodes.push_back(mid + half * base_nodes[k]);
            grid.weights.push_back(half * base_weights[k]);
        }
    };
    // negative side first, mirrored so nodes come out increasing
    for (auto it = panels.rbegin(); it != panels.rend(); ++it) {
        double plo = -it->second, phi = -it->first;
        emit(plo, phi);
    }
    for (const auto& [plo, phi] : panels) emit(plo, phi);
    return grid;
}

}  // namespace thoma
