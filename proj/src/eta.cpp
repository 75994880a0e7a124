#include "cert/eta.hpp"

#include <cmath>

#include "cert/errors.hpp"
#include "cert/gf2.hpp"

namespace cert {

namespace {

constexpr double kFidelityTol = 1e-9;

void check_bad_state(const StabilizerMixture& rho, const StabilizerTableau& psi0, double eps) {
    double f = fidelity(rho, psi0);
    if (f > 1.0 - eps + kFidelityTol)
        throw NotABadState("eta: state has fidelity above 1 - eps");
}

/// Expectations of all 2^n group elements, indexed by coefficient vector.
std::vector<double> expectation_table(const StabilizerMixture& rho,
                                      const StabilizerTableau& psi0) {
    std::size_t n = psi0.num_qubits();
    std::vector<double> table(std::size_t{1} << n);
    for (std::size_t a = 0; a < table.size(); ++a)
        table[a] = expectation_in_group(rho, psi0, BitVec::from_uint(a, n));
    return table;
}

}  // namespace

EtaEstimate eta_exact(const StabilizerMixture& rho, const StabilizerTableau& psi0, double alpha,
                      double eps) {
    std::size_t n = psi0.num_qubits();
    if (n > 4)
        throw TooLarge("eta_exact: enumeration guarded to n <= 4");
    check_bad_state(rho, psi0, eps);
    auto table = expectation_table(rho, psi0);
    const double cutoff = 1.0 - alpha * eps;
    std::uint64_t undetected = 0, total = 0;
    enumerate_bases(n, [&](const BitMatrix& basis) {
        ++total;
        for (std::size_t i = 0; i < n; ++i) {
            // an element at or below the cutoff counts as detection
            if (table[basis.row(i).to_uint()] <= cutoff)
                return;
        }
        ++undetected;
    });
    EtaEstimate e;
    e.n = n;
    e.alpha = alpha;
    e.eps = eps;
    e.estimate = static_cast<double>(undetected) / static_cast<double>(total);
    e.ci_low = e.estimate;
    e.ci_high = e.estimate;
    e.trials = static_cast<std::int64_t>(total);
    e.method = "exact";
    e.family = rho.family_label;
    return e;
}

EtaEstimate eta_monte_carlo(const StabilizerMixture& rho, const StabilizerTableau& psi0,
                            double alpha, double eps, std::int64_t trials,
                            std::mt19937_64& rng) {
    if (trials < 1)
        throw Error("eta_monte_carlo: trials must be >= 1");
    std::size_t n = psi0.num_qubits();
    check_bad_state(rho, psi0, eps);
    double f = fidelity(rho, psi0);
    const double fact_a_floor = 2.0 * f - 1.0 - kFidelityTol;
    const double cutoff = 1.0 - alpha * eps;

    // small n: one table lookup per element instead of a dot-product sum
    std::vector<double> table;
    if (n <= 16)
        table = expectation_table(rho, psi0);

    std::int64_t undetected = 0;
    for (std::int64_t t = 0; t < trials; ++t) {
        auto [basis, rounds] = sample_full_rank(n, rng);
        (void)rounds;
        bool detected = false;
        for (std::size_t i = 0; i < n; ++i) {
            double v = table.empty() ? expectation_in_group(rho, psi0, basis.row(i))
                                     : table[basis.row(i).to_uint()];
            if (v < fact_a_floor)
                throw Error("eta_monte_carlo: fact (a) violated, expectation below 2F-1");
            if (v <= cutoff) {
                detected = true;
                break;
            }
        }
        if (!detected)
            ++undetected;
    }
    auto ci = clopper_pearson(undetected, trials, 0.99);
    EtaEstimate e;
    e.n = n;
    e.alpha = alpha;
    e.eps = eps;
    e.estimate = static_cast<double>(undetected) / static_cast<double>(trials);
    e.ci_low = ci.low;
    e.ci_high = ci.high;
    e.trials = trials;
    e.method = "montecarlo";
    e.family = rho.family_label;
    return e;
}

std::vector<BoundCurveRow> eta_bound_curves(const std::vector<std::size_t>& n_range,
                                            double alpha) {
    std::vector<BoundCurveRow> rows;
    rows.reserve(n_range.size());
    for (auto n : n_range) {
        double nn = static_cast<double>(n);
        rows.push_back({n, std::pow((alpha + 1.0) / 2.0, nn), std::pow(2.0, -nn / alpha)});
    }
    return rows;
}

WorstCaseResult worst_case_search(const StabilizerTableau& psi0, double alpha, double eps,
                                  std::int64_t budget, std::mt19937_64& rng,
                                  std::int64_t trials_per_candidate) {
    if (budget < 1)
        throw Error("worst_case_search: budget must be >= 1");
    std::size_t n = psi0.num_qubits();

    struct Candidate {
        StabilizerMixture state;
        std::string label;
    };
    auto make_flip = [&](double c) {
        return Candidate{generator_flip_family(psi0, c), "flip(c=" + std::to_string(c) + ")"};
    };
    auto make_coset = [&](std::size_t r) -> Candidate {
        // random rank-r subgroup coefficient rows
        for (;;) {
            BitMatrix m = BitMatrix::random(r, n, rng);
            if (rank(m) == r)
                return {coset_deficit_family(psi0, m, eps),
                        "coset(r=" + std::to_string(r) + ")"};
        }
    };

    WorstCaseResult best;
    bool have_best = false;
    double c = eps;  // incumbent flip weight
    double step = (1.0 - eps) / 4.0;
    for (std::int64_t k = 0; k < budget; ++k) {
        double proposal_c = c;
        Candidate cand = [&]() -> Candidate {
            if (k == 0)
                return make_flip(c);
            if (k % 3 == 2 && n >= 2) {
                std::size_t max_r = n - 1;
                std::size_t min_r = n > 8 ? n - 8 : 1;
                std::uniform_int_distribution<std::size_t> pick(min_r, max_r);
                return make_coset(pick(rng));
            }
            // perturb the flip weight, clamped to the bad-state range
            proposal_c = std::min(1.0, std::max(eps, c + step * (k % 2 == 0 ? 1.0 : -1.0)));
            return make_flip(proposal_c);
        }();
        bool is_flip = cand.label.rfind("flip", 0) == 0;
        EtaEstimate e =
            eta_monte_carlo(cand.state, psi0, alpha, eps, trials_per_candidate, rng);
        if (!have_best || e.estimate > best.estimate.estimate) {
            best = {cand.state, e, cand.label};
            have_best = true;
            if (is_flip)
                c = proposal_c;
        } else if (is_flip) {
            step *= 0.5;  // shrink around the incumbent
        }
    }
    return best;
}

}  // namespace cert
