#pragma once

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

namespace thoma {

/// Upper-tail p-value of a chi-square statistic with df degrees of freedom.
inline double chi_square_pvalue(double stat, double df) {
    if (stat <= 0) return 1.0;
    return boost::math::gamma_q(df / 2.0, stat / 2.0);
}

/// Pearson chi-square test of observed counts against expected probabilities.
/// Returns the p-value; cells with zero expectation must have zero counts.
inline double chi_square_test(const std::vector<std::int64_t>& observed,
                              const std::vector<double>& probs) {
    if (observed.size() != probs.size())
        throw std::invalid_argument("chi_square_test: size mismatch");
    double total = 0;
    for (auto c : observed) total += static_cast<double>(c);
    double stat = 0;
    int df = -1;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        double e = total * probs[i];
        if (e == 0) {
            if (observed[i] != 0) return 0.0;
            continue;
        }
        double d = static_cast<double>(observed[i]) - e;
        stat += d * d / e;
        ++df;
    }
    if (df <= 0) return 1.0;
    return chi_square_pvalue(stat, df);
}

/// Streaming mean/variance accumulator with associative merge, for replica
/// estimates combined in deterministic order.
struct RunningStat {
    std::int64_t count = 0;
    double mean = 0;
    double m2 = 0;

    void add(double x) {
        ++count;
        double d = x - mean;
        mean += d / static_cast<double>(count);
        m2 += d * (x - mean);
    }
    void merge(const RunningStat& o) {
        if (o.count == 0) return;
        if (count == 0) {
            *this = o;
            return;
        }
        double d = o.mean - mean;
        std::int64_t tot = count + o.count;
        mean += d * static_cast<double>(o.count) / static_cast<double>(tot);
        m2 += o.m2 + d * d * static_cast<double>(count) * static_cast<double>(o.count) /
                         static_cast<double>(tot);
        count = tot;
    }
    double variance() const { return count > 1 ? m2 / static_cast<double>(count - 1) : 0.0; }
    double stderr_mean() const {
        return count > 1 ? std::sqrt(variance() / static_cast<double>(count)) : 0.0;
    }
};

inline double binomial_stderr(double p_hat, std::int64_t n) {
    return std::sqrt(std::max(p_hat * (1.0 - p_hat), 0.0) / static_cast<double>(n));
}

/// Total variation distance between an empirical count map and exact
/// probabilities over the same key set; leftover mass on either side counts.
template <class K>
double tv_distance(const std::map<K, std::int64_t>& counts, std::int64_t total,
                   const std::map<K, double>& exact) {
    double acc = 0;
    double emp_rest = 1.0, exact_rest = 1.0;
    for (const auto& [k, p] : exact) {
        auto it = counts.find(k);
        double emp = it == counts.end()
                         ? 0.0
                         : static_cast<double>(it->second) / static_cast<double>(total);
        acc += std::abs(emp - p);
        emp_rest -= emp;
        exact_rest -= p;
    }
    // Empirical mass on keys outside the table is still inside emp_rest.
    acc += std::abs(emp_rest - exact_rest);
    return acc / 2.0;
}

}  // namespace thoma
