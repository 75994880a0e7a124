#pragma once

#include <cstdint>

namespace cert {

/// P(Bin(trials, q) >= k), exact via the regularized incomplete beta.
double binomial_tail_geq(std::int64_t trials, std::int64_t k, double q);

/// P(Bin(trials, q) <= k).
double binomial_tail_leq(std::int64_t trials, std::int64_t k, double q);

struct Interval {
    double low;
    double high;
};

/// Exact (Clopper-Pearson) two-sided confidence interval for a binomial
/// proportion at the given confidence level.
Interval clopper_pearson(std::int64_t successes, std::int64_t trials, double confidence);

enum class TailSide { Upper, Lower };

/// Multiplicative Chernoff tail exp(-gamma^2 * mu * N / (2 + gamma)) for the
/// empirical mean of N iid {0,1} variables with mean `mean_bound` crossing
/// `threshold`. Returns the smallest N with tail <= p_target (at least 1).
std::int64_t chernoff_shots(double mean_bound, double threshold, TailSide side,
                            double p_target);

/// The bound value itself at a given N (used by tests).
double chernoff_tail(double mean_bound, double threshold, TailSide side, std::int64_t shots);

}  // namespace cert
