#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "cert/stats.hpp"

namespace cert {

enum class Protocol { DfeC, Bmom };

std::string protocol_name(Protocol p);

/// Operating parameters of a certification run.
///
/// DFE-C threshold chain:  delta < delta(1+gamma_good) = beta = (1-gamma_bad) eps < eps.
/// BMoM threshold chain:   delta < w*delta < w*delta(1+gamma_good) = beta
///                               = (1-gamma_bad) alpha eps < alpha eps < eps.
struct ProtocolParams {
    Protocol protocol;
    std::size_t n = 0;
    double delta = 0.0;
    double eps = 0.0;
    double p = 0.0;
    double alpha = 1.0;      // BMoM only
    double omega = 2.0;      // fixed
    double beta = 0.0;
    double gamma_good = 0.0;
    double gamma_bad = 0.0;
    std::int64_t shots = 0;  // M for DFE-C (outer loop), m for BMoM (inner loop)
    double p_good = 0.0;
    double p_bad = 0.0;

    /// key=value lines, stable order.
    void print_keyvalue(std::ostream& out) const;
    /// one CSV row; header via params_csv_header().
    void print_csv_row(std::ostream& out) const;
};

std::string params_csv_header();

/// Derive DFE-C parameters: split p evenly, bisect beta in (delta, eps) until
/// the good-side and bad-side shot requirements balance.
ProtocolParams solve_dfe(double delta, double eps, double p);

/// Derive BMoM parameters. Requires omega*delta < alpha*eps. The
/// false-negative side carries a per-basis-element budget p_good/n
/// (union bound over the n estimates).
ProtocolParams solve_bmom(std::size_t n, double delta, double eps, double p, double alpha);

struct ValidationResult {
    double false_negative_bound;  // exact binomial, worst-case good state
    double false_positive_bound;  // exact binomial, worst-case bad state
};

/// Exact binomial re-validation of a solved parameter set at the boundary
/// means, no asymptotics.
ValidationResult validate_params(const ProtocolParams& params);

/// Integer accept cutoff: accept iff failure count <= this.
std::int64_t accept_failure_cutoff(double beta, std::int64_t shots);

}  // namespace cert
