#include "cert/stats.hpp"

#include <boost/math/distributions/beta.hpp>
#include <boost/math/distributions/binomial.hpp>
#include <cmath>

#include "cert/errors.hpp"

namespace cert {

double binomial_tail_geq(std::int64_t trials, std::int64_t k, double q) {
    if (k <= 0)
        return 1.0;
    if (k > trials)
        return 0.0;
    boost::math::binomial_distribution<double> dist(static_cast<double>(trials), q);
    return boost::math::cdf(boost::math::complement(dist, static_cast<double>(k - 1)));
}

double binomial_tail_leq(std::int64_t trials, std::int64_t k, double q) {
    if (k < 0)
        return 0.0;
    if (k >= trials)
        return 1.0;
    boost::math::binomial_distribution<double> dist(static_cast<double>(trials), q);
    return boost::math::cdf(dist, static_cast<double>(k));
}

Interval clopper_pearson(std::int64_t successes, std::int64_t trials, double confidence) {
    if (trials <= 0 || successes < 0 || successes > trials)
        throw Error("clopper_pearson: bad counts");
    double tail = (1.0 - confidence) / 2.0;
    double lo = 0.0, hi = 1.0;
    if (successes > 0) {
        boost::math::beta_distribution<double> dl(static_cast<double>(successes),
                                                  static_cast<double>(trials - successes + 1));
        lo = boost::math::quantile(dl, tail);
    }
    if (successes < trials) {
        boost::math::beta_distribution<double> dh(static_cast<double>(successes + 1),
                                                  static_cast<double>(trials - successes));
        hi = boost::math::quantile(boost::math::complement(dh, tail));
    }
    return {lo, hi};
}

namespace {

double relative_gap(double mean_bound, double threshold, TailSide side) {
    if (!(mean_bound > 0.0 && mean_bound < 1.0) || !(threshold > 0.0 && threshold < 1.0))
        throw InfeasibleGap("chernoff: mean and threshold must be in (0,1)");
    if (side == TailSide::Upper) {
        if (threshold <= mean_bound)
            throw InfeasibleGap("chernoff: upper-tail threshold must exceed the mean");
        return (threshold - mean_bound) / mean_bound;
    }
    if (threshold >= mean_bound)
        throw InfeasibleGap("chernoff: lower-tail threshold must be below the mean");
    return (mean_bound - threshold) / mean_bound;
}

}  // namespace

double chernoff_tail(double mean_bound, double threshold, TailSide side, std::int64_t shots) {
    double g = relative_gap(mean_bound, threshold, side);
    return std::exp(-g * g * mean_bound * static_cast<double>(shots) / (2.0 + g));
}

std::int64_t chernoff_shots(double mean_bound, double threshold, TailSide side,
                            double p_target) {
    double g = relative_gap(mean_bound, threshold, side);
    if (p_target <= 0.0 || p_target > 1.0)
        throw Error("chernoff_shots: p_target must be in (0,1]");
    if (p_target >= 1.0)
        return 1;
    double rate = g * g * mean_bound / (2.0 + g);
    double exact = std::log(1.0 / p_target) / rate;
    auto shots = static_cast<std::int64_t>(std::ceil(exact - 1e-12));
    return shots < 1 ? 1 : shots;
}

}  // namespace cert
