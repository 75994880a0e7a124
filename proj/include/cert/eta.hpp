#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cert/state_model.hpp"
#include "cert/stats.hpp"

namespace cert {

/// Estimate of the intrinsic false-positive probability eta_n(alpha):
/// the probability over a uniform random basis that every basis element
/// has expectation strictly above 1 - alpha*eps on a given bad state.
struct EtaEstimate {
    std::size_t n = 0;
    double alpha = 0.0;
    double eps = 0.0;
    double estimate = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::int64_t trials = 0;
    std::string method;  // "exact" or "montecarlo"
    std::string family;
};

/// Exact eta by enumerating every ordered basis. Guarded to n <= 4.
/// Requires fidelity(rho, psi0) <= 1 - eps.
EtaEstimate eta_exact(const StabilizerMixture& rho, const StabilizerTableau& psi0, double alpha,
                      double eps);

/// Monte-Carlo eta with a 99% Clopper-Pearson interval. Asserts fact (a)
/// (expectation >= 2F - 1) on every evaluated element.
EtaEstimate eta_monte_carlo(const StabilizerMixture& rho, const StabilizerTableau& psi0,
                            double alpha, double eps, std::int64_t trials, std::mt19937_64& rng);

struct BoundCurveRow {
    std::size_t n;
    double upper_shape;  // ((alpha+1)/2)^n
    double lower_shape;  // 2^(-n/alpha)
};

/// Shape-only bound curves; constants are unit by convention.
std::vector<BoundCurveRow> eta_bound_curves(const std::vector<std::size_t>& n_range,
                                            double alpha);

struct WorstCaseResult {
    StabilizerMixture state;
    EtaEstimate estimate;
    std::string candidate_label;
};

/// Hill-climb over generator-flip and coset-deficit family parameters,
/// maximizing the Monte-Carlo eta estimate. Deterministic given the seed.
WorstCaseResult worst_case_search(const StabilizerTableau& psi0, double alpha, double eps,
                                  std::int64_t budget, std::mt19937_64& rng,
                                  std::int64_t trials_per_candidate = 2000);

}  // namespace cert
