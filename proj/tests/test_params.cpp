#include <doctest.h>

#include <cmath>

#include "cert/errors.hpp"
#include "cert/params.hpp"

using namespace cert;

namespace {

/// Brute-force binomial upper tail for small trial counts (oracle).
double brute_tail_geq(std::int64_t trials, std::int64_t k, double q) {
    double sum = 0.0;
    for (std::int64_t j = std::max<std::int64_t>(k, 0); j <= trials; ++j) {
        double term = std::lgamma(trials + 1.0) - std::lgamma(j + 1.0) -
                      std::lgamma(trials - j + 1.0) + j * std::log(q) +
                      (trials - j) * std::log1p(-q);
        sum += std::exp(term);
    }
    return sum;
}

}  // namespace

TEST_CASE("binomial tails match a brute-force sum") {
    for (std::int64_t trials : {1, 5, 30}) {
        for (double q : {0.05, 0.4, 0.9}) {
            for (std::int64_t k = 0; k <= trials; ++k) {
                CHECK(binomial_tail_geq(trials, k, q) ==
                      doctest::Approx(brute_tail_geq(trials, k, q)).epsilon(1e-10));
                CHECK(binomial_tail_leq(trials, k, q) ==
                      doctest::Approx(1.0 - brute_tail_geq(trials, k + 1, q)).epsilon(1e-10));
            }
        }
    }
    CHECK(binomial_tail_geq(10, 0, 0.3) == 1.0);
    CHECK(binomial_tail_geq(10, 11, 0.3) == 0.0);
    CHECK(binomial_tail_leq(10, -1, 0.3) == 0.0);
    CHECK(binomial_tail_leq(10, 10, 0.3) == 1.0);
}

TEST_CASE("clopper_pearson basics") {
    // zero successes: closed form upper limit 1 - (tail)^(1/n)
    auto ci = clopper_pearson(0, 20, 0.95);
    CHECK(ci.low == 0.0);
    CHECK(ci.high == doctest::Approx(1.0 - std::pow(0.025, 1.0 / 20.0)).epsilon(1e-10));

    auto full = clopper_pearson(20, 20, 0.95);
    CHECK(full.high == 1.0);
    CHECK(full.low == doctest::Approx(std::pow(0.025, 1.0 / 20.0)).epsilon(1e-10));

    auto mid = clopper_pearson(7, 50, 0.99);
    CHECK(mid.low < 7.0 / 50.0);
    CHECK(mid.high > 7.0 / 50.0);
    // coverage duality: the exact tails at the interval ends equal the split tail
    CHECK(binomial_tail_geq(50, 7, mid.low) == doctest::Approx(0.005).epsilon(1e-8));
    CHECK(binomial_tail_leq(50, 7, mid.high) == doctest::Approx(0.005).epsilon(1e-8));

    CHECK_THROWS(clopper_pearson(5, 0, 0.95));
}

TEST_CASE("chernoff_shots basics") {
    CHECK(chernoff_shots(0.05, 0.1, TailSide::Upper, 1.0) == 1);

    // monotone in the target probability
    std::int64_t prev = 0;
    for (double p : {1e-1, 1e-2, 1e-4, 1e-8}) {
        std::int64_t N = chernoff_shots(0.05, 0.1, TailSide::Upper, p);
        CHECK(N >= prev);
        prev = N;
    }

    // the returned N meets the bound, N-1 does not
    std::int64_t N = chernoff_shots(0.05, 0.1, TailSide::Upper, 1e-6);
    CHECK(chernoff_tail(0.05, 0.1, TailSide::Upper, N) <= 1e-6);
    CHECK(chernoff_tail(0.05, 0.1, TailSide::Upper, N - 1) > 1e-6);
    // closed form: N = ceil(ln(1/p) (2+g) / (g^2 mu)), g = 1 here
    CHECK(N == static_cast<std::int64_t>(std::ceil(std::log(1e6) * 3.0 / 0.05)));

    // exact binomial oracle: the true tail is below the bound
    std::int64_t threshold_count = static_cast<std::int64_t>(std::ceil(0.1 * N));
    CHECK(binomial_tail_geq(N, threshold_count, 0.05) <= 1e-6);

    CHECK_THROWS_AS(chernoff_shots(0.1, 0.05, TailSide::Upper, 0.01), InfeasibleGap);
    CHECK_THROWS_AS(chernoff_shots(0.05, 0.1, TailSide::Lower, 0.01), InfeasibleGap);
}

TEST_CASE("accept_failure_cutoff") {
    CHECK(accept_failure_cutoff(0.1, 100) == 5);
    CHECK(accept_failure_cutoff(0.1, 99) == 4);    // floor(4.95)
    CHECK(accept_failure_cutoff(0.04, 50) == 1);   // exact integer boundary
    CHECK(accept_failure_cutoff(0.5, 1) == 0);
}

TEST_CASE("solve_dfe produces a balanced feasible chain") {
    auto p = solve_dfe(0.01, 0.1, 0.01);
    CHECK(p.protocol == Protocol::DfeC);
    CHECK(p.beta > p.delta);
    CHECK(p.beta < p.eps);
    // chain identities
    CHECK(p.beta == doctest::Approx(p.delta * (1.0 + p.gamma_good)).epsilon(1e-12));
    CHECK(p.beta == doctest::Approx((1.0 - p.gamma_bad) * p.eps).epsilon(1e-12));
    CHECK(p.gamma_good > 0.0);
    CHECK(p.gamma_bad > 0.0);
    CHECK(p.gamma_bad < 1.0);
    CHECK(p.p_good == doctest::Approx(0.005));
    CHECK(p.p_bad == doctest::Approx(0.005));
    // the shot count satisfies both Chernoff sides
    CHECK(chernoff_tail(p.delta / 2.0, p.beta / 2.0, TailSide::Upper, p.shots) <= p.p_good);
    CHECK(chernoff_tail(p.eps / 2.0, p.beta / 2.0, TailSide::Lower, p.shots) <= p.p_bad);
    // balanced: one fewer shot breaks at least one side
    bool good_tight =
        chernoff_tail(p.delta / 2.0, p.beta / 2.0, TailSide::Upper, p.shots - 1) > p.p_good;
    bool bad_tight =
        chernoff_tail(p.eps / 2.0, p.beta / 2.0, TailSide::Lower, p.shots - 1) > p.p_bad;
    CHECK((good_tight || bad_tight));

    CHECK_THROWS_AS(solve_dfe(0.1, 0.1, 0.01), InfeasibleGap);
    CHECK_THROWS_AS(solve_dfe(0.2, 0.1, 0.01), InfeasibleGap);
}

TEST_CASE("solve_dfe monotonicity") {
    auto base = solve_dfe(0.01, 0.1, 0.01);
    CHECK(solve_dfe(0.01, 0.2, 0.01).shots <= base.shots);   // wider gap
    CHECK(solve_dfe(0.01, 0.1, 1e-6).shots >= base.shots);   // stricter budget
    CHECK(solve_dfe(0.02, 0.1, 0.01).shots >= base.shots);   // narrower gap
}

TEST_CASE("solve_bmom chain and feasibility boundary") {
    // 2*delta = alpha*eps exactly: infeasible (strict inequality required)
    CHECK_THROWS_AS(solve_bmom(10, 0.01, 0.08, 0.01, 0.25), InfeasibleGap);

    auto p = solve_bmom(10, 0.01, 0.1, 0.01, 0.25);
    CHECK(p.protocol == Protocol::Bmom);
    CHECK(p.omega == 2.0);
    CHECK(p.beta > p.omega * p.delta);
    CHECK(p.beta < p.alpha * p.eps);
    CHECK(p.beta == doctest::Approx(p.omega * p.delta * (1.0 + p.gamma_good)).epsilon(1e-12));
    CHECK(p.beta == doctest::Approx((1.0 - p.gamma_bad) * p.alpha * p.eps).epsilon(1e-12));
    // full threshold ladder
    CHECK(p.delta < p.omega * p.delta);
    CHECK(p.alpha * p.eps < p.eps);

    double per_element = p.p_good / static_cast<double>(p.n);
    CHECK(chernoff_tail(p.omega * p.delta / 2.0, p.beta / 2.0, TailSide::Upper, p.shots) <=
          per_element);
    CHECK(chernoff_tail(p.alpha * p.eps / 2.0, p.beta / 2.0, TailSide::Lower, p.shots) <=
          p.p_bad);
}

TEST_CASE("bmom shots grow slowly with n") {
    auto p10 = solve_bmom(10, 0.01, 0.1, 0.01, 0.25);
    auto p100 = solve_bmom(100, 0.01, 0.1, 0.01, 0.25);
    auto p10000 = solve_bmom(10000, 0.01, 0.1, 0.01, 0.25);
    CHECK(p100.shots >= p10.shots);
    CHECK(p10000.shots >= p100.shots);
    // union bound only adds a log factor
    CHECK(static_cast<double>(p10000.shots) <
          3.0 * static_cast<double>(p10.shots));
}

TEST_CASE("validate_params: exact tails stay within budget") {
    auto dfe = solve_dfe(0.01, 0.1, 0.01);
    auto vd = validate_params(dfe);
    CHECK(vd.false_negative_bound <= dfe.p_good + 1e-15);
    CHECK(vd.false_positive_bound <= dfe.p_bad + 1e-15);
    CHECK(vd.false_negative_bound > 0.0);
    CHECK(vd.false_positive_bound > 0.0);

    auto bmom = solve_bmom(10, 0.01, 0.1, 0.01, 0.25);
    auto vb = validate_params(bmom);
    CHECK(vb.false_negative_bound <= bmom.p_good + 1e-15);
    CHECK(vb.false_positive_bound <= bmom.p_bad + 1e-15);
}

TEST_CASE("parameter input validation") {
    CHECK_THROWS(solve_dfe(0.01, 0.1, 0.0));
    CHECK_THROWS(solve_dfe(0.01, 0.1, 1.0));
    CHECK_THROWS(solve_dfe(0.0, 0.1, 0.01));
    CHECK_THROWS(solve_bmom(0, 0.01, 0.1, 0.01, 0.25));
    CHECK_THROWS(solve_bmom(10, 0.01, 0.1, 0.01, 0.0));
    CHECK_THROWS(solve_bmom(10, 0.01, 0.1, 0.01, 1.0));
}
