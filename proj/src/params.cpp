#include "cert/params.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "cert/errors.hpp"

namespace cert {

std::string protocol_name(Protocol p) {
    return p == Protocol::DfeC ? "dfe" : "bmom";
}

void ProtocolParams::print_keyvalue(std::ostream& out) const {
    out << "protocol=" << protocol_name(protocol) << "\n"
        << "n=" << n << "\n"
        << "delta=" << delta << "\n"
        << "eps=" << eps << "\n"
        << "p=" << p << "\n"
        << "alpha=" << alpha << "\n"
        << "omega=" << omega << "\n"
        << "beta=" << beta << "\n"
        << "gamma_good=" << gamma_good << "\n"
        << "gamma_bad=" << gamma_bad << "\n"
        << "shots=" << shots << "\n"
        << "p_good=" << p_good << "\n"
        << "p_bad=" << p_bad << "\n";
}

std::string params_csv_header() {
    return "protocol,n,delta,eps,p,alpha,omega,beta,gamma_good,gamma_bad,shots,p_good,p_bad";
}

void ProtocolParams::print_csv_row(std::ostream& out) const {
    out << protocol_name(protocol) << ',' << n << ',' << delta << ',' << eps << ',' << p << ','
        << alpha << ',' << omega << ',' << beta << ',' << gamma_good << ',' << gamma_bad << ','
        << shots << ',' << p_good << ',' << p_bad << "\n";
}

std::int64_t accept_failure_cutoff(double beta, std::int64_t shots) {
    // accept iff the +/-1 mean is >= 1-beta, i.e. failures <= (beta/2)*shots;
    // ties at the boundary accept
    return static_cast<std::int64_t>(std::floor(beta / 2.0 * static_cast<double>(shots) + 1e-9));
}

namespace {

void check_common(double delta, double eps, double p) {
    if (!(delta > 0.0 && delta < eps && eps <= 1.0))
        throw InfeasibleGap("need 0 < delta < eps <= 1");
    if (!(p > 0.0 && p < 1.0))
        throw Error("mistake budget p must be in (0,1)");
}

/// Real-valued shot requirement for one Chernoff side.
double shots_real(double mean_bound, double threshold, TailSide side, double p_target) {
    double g = side == TailSide::Upper ? (threshold - mean_bound) / mean_bound
                                       : (mean_bound - threshold) / mean_bound;
    double rate = g * g * mean_bound / (2.0 + g);
    return std::log(1.0 / p_target) / rate;
}

/// Bisect beta in (lo, hi) to balance the good and bad shot requirements.
/// good_req decreases and bad_req increases in beta, so the difference
/// crosses zero exactly once.
template <class GoodReq, class BadReq>
double balance_beta(double lo, double hi, GoodReq good_req, BadReq bad_req) {
    double a = lo, b = hi;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (a + b);
        if (good_req(mid) > bad_req(mid))
            a = mid;
        else
            b = mid;
    }
    return 0.5 * (a + b);
}

std::int64_t ceil_shots(double x) {
    if (!(x > 0.0) || x > 1e15)
        throw BudgetTooTight("shot requirement did not balance to a usable count");
    return static_cast<std::int64_t>(std::ceil(x - 1e-12));
}

}  // namespace

ProtocolParams solve_dfe(double delta, double eps, double p) {
    check_common(delta, eps, p);
    double p_good = p / 2.0, p_bad = p / 2.0;
    auto good_req = [&](double beta) {
        return shots_real(delta / 2.0, beta / 2.0, TailSide::Upper, p_good);
    };
    auto bad_req = [&](double beta) {
        return shots_real(eps / 2.0, beta / 2.0, TailSide::Lower, p_bad);
    };
    double beta = balance_beta(delta, eps, good_req, bad_req);

    ProtocolParams out;
    out.protocol = Protocol::DfeC;
    out.delta = delta;
    out.eps = eps;
    out.p = p;
    out.alpha = 1.0;
    out.omega = 2.0;  // fixed convention; unused by the DFE-C chain
    out.beta = beta;
    out.gamma_good = beta / delta - 1.0;
    out.gamma_bad = 1.0 - beta / eps;
    out.shots = ceil_shots(std::max(good_req(beta), bad_req(beta)));
    out.p_good = p_good;
    out.p_bad = p_bad;
    return out;
}

ProtocolParams solve_bmom(std::size_t n, double delta, double eps, double p, double alpha) {
    check_common(delta, eps, p);
    if (n < 1)
        throw Error("solve_bmom: n must be >= 1");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw Error("solve_bmom: alpha must be in (0,1)");
    const double omega = 2.0;
    if (!(omega * delta < alpha * eps))
        throw InfeasibleGap("solve_bmom: requires omega*delta < alpha*eps (strict)");

    double p_good = p / 2.0, p_bad = p / 2.0;
    double per_element_budget = p_good / static_cast<double>(n);  // union bound
    auto good_req = [&](double beta) {
        return shots_real(omega * delta / 2.0, beta / 2.0, TailSide::Upper, per_element_budget);
    };
    auto bad_req = [&](double beta) {
        return shots_real(alpha * eps / 2.0, beta / 2.0, TailSide::Lower, p_bad);
    };
    double beta = balance_beta(omega * delta, alpha * eps, good_req, bad_req);

    ProtocolParams out;
    out.protocol = Protocol::Bmom;
    out.n = n;
    out.delta = delta;
    out.eps = eps;
    out.p = p;
    out.alpha = alpha;
    out.omega = omega;
    out.beta = beta;
    out.gamma_good = beta / (omega * delta) - 1.0;
    out.gamma_bad = 1.0 - beta / (alpha * eps);
    out.shots = ceil_shots(std::max(good_req(beta), bad_req(beta)));
    out.p_good = p_good;
    out.p_bad = p_bad;
    return out;
}

ValidationResult validate_params(const ProtocolParams& params) {
    std::int64_t cutoff = accept_failure_cutoff(params.beta, params.shots);
    if (params.protocol == Protocol::DfeC) {
        double fn = binomial_tail_geq(params.shots, cutoff + 1, params.delta / 2.0);
        double fp = binomial_tail_leq(params.shots, cutoff, params.eps / 2.0);
        return {fn, fp};
    }
    double fn_one = binomial_tail_geq(params.shots, cutoff + 1, params.omega * params.delta / 2.0);
    double fn = std::min(1.0, fn_one * static_cast<double>(params.n));
    double fp = binomial_tail_leq(params.shots, cutoff, params.alpha * params.eps / 2.0);
    return {fn, fp};
}

}  // namespace cert
