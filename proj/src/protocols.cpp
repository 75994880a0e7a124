#include "cert/protocols.hpp"

#include <algorithm>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "cert/errors.hpp"

namespace cert {

std::int64_t MeasurementSource::count_plus(const PauliOperator& observable, std::int64_t shots,
                                           std::mt19937_64& rng) {
    std::int64_t plus = 0;
    for (std::int64_t i = 0; i < shots; ++i)
        plus += sample(observable, rng) > 0 ? 1 : 0;
    return plus;
}

StationarySource::StationarySource(StabilizerMixture rho) : rho_(std::move(rho)) {
    rho_.validate();
}

int StationarySource::sample(const PauliOperator& observable, std::mt19937_64& rng) {
    double q = (1.0 + expectation(rho_, observable)) / 2.0;
    std::bernoulli_distribution coin(q);
    return coin(rng) ? +1 : -1;
}

std::int64_t StationarySource::count_plus(const PauliOperator& observable, std::int64_t shots,
                                          std::mt19937_64& rng) {
    double q = (1.0 + expectation(rho_, observable)) / 2.0;
    if (q <= 0.0)
        return 0;
    if (q >= 1.0)
        return shots;
    std::binomial_distribution<std::int64_t> dist(shots, q);
    return dist(rng);
}

DriftingSource::DriftingSource(std::vector<StabilizerMixture> schedule)
    : schedule_(std::move(schedule)) {
    if (schedule_.empty())
        throw Error("DriftingSource: empty schedule");
    for (auto& s : schedule_)
        s.validate();
}

int DriftingSource::sample(const PauliOperator& observable, std::mt19937_64& rng) {
    const auto& rho = schedule_[next_];
    next_ = (next_ + 1) % schedule_.size();
    double q = (1.0 + expectation(rho, observable)) / 2.0;
    std::bernoulli_distribution coin(q);
    return coin(rng) ? +1 : -1;
}

namespace {

void finalize(CertificateSummary& s) {
    double sum = 0.0, min = 2.0;
    for (const auto& r : s.records) {
        sum += r.mean;
        min = std::min(min, r.mean);
    }
    s.mu = s.records.empty() ? 0.0 : sum / static_cast<double>(s.records.size());
    s.nu = min;
    s.accept = s.nu >= 1.0 - s.beta || s.records.empty();
}

ObservableRecord measure_observable(const PauliOperator& obs, const BitVec& coeffs,
                                    std::int64_t shots, MeasurementSource& src,
                                    std::mt19937_64& rng, bool keep_outcomes) {
    ObservableRecord rec;
    rec.coeffs = coeffs;
    rec.sign = obs.sign();
    rec.shots = shots;
    if (keep_outcomes) {
        rec.outcomes.reserve(static_cast<std::size_t>(shots));
        rec.plus_count = 0;
        for (std::int64_t i = 0; i < shots; ++i) {
            int o = src.sample(obs, rng);
            rec.outcomes.push_back(o);
            rec.plus_count += o > 0 ? 1 : 0;
        }
    } else {
        rec.plus_count = src.count_plus(obs, shots, rng);
    }
    rec.mean = (2.0 * static_cast<double>(rec.plus_count) - static_cast<double>(shots)) /
               static_cast<double>(shots);
    return rec;
}

}  // namespace

CertificateSummary run_dfe_c(const StabilizerTableau& psi0, const ProtocolParams& params,
                             MeasurementSource& src, std::mt19937_64& rng,
                             const RunOptions& opts) {
    if (params.protocol != Protocol::DfeC)
        throw Error("run_dfe_c: parameters were not solved for DFE-C");
    std::size_t n = psi0.num_qubits();
    CertificateSummary s;
    s.protocol = Protocol::DfeC;
    s.n = n;
    s.beta = params.beta;
    s.records.reserve(static_cast<std::size_t>(params.shots));
    // DFE-C: the per-observable "estimate" is the single +/-1 outcome;
    // the decision statistic mu is the mean over all M of them.
    for (std::int64_t i = 0; i < params.shots; ++i) {
        BitVec coeffs = BitVec::random(n, rng);
        PauliOperator obs = psi0.group_element(coeffs);
        s.records.push_back(measure_observable(obs, coeffs, 1, src, rng, opts.keep_outcomes));
    }
    finalize(s);
    // DFE-C accepts on the mean, not the minimum
    s.accept = s.mu >= 1.0 - s.beta;
    return s;
}

CertificateSummary run_bmom(const StabilizerTableau& psi0, const ProtocolParams& params,
                            MeasurementSource& src, std::mt19937_64& rng,
                            const RunOptions& opts) {
    if (params.protocol != Protocol::Bmom)
        throw Error("run_bmom: parameters were not solved for BMoM");
    std::size_t n = psi0.num_qubits();
    CertificateSummary s;
    s.protocol = Protocol::Bmom;
    s.n = n;
    s.beta = params.beta;

    BitMatrix coeff_rows;
    if (opts.forced_basis) {
        coeff_rows = *opts.forced_basis;
        if (coeff_rows.nrows() != n || coeff_rows.ncols() != n || rank(coeff_rows) != n)
            throw SingularBasis("run_bmom: forced basis is not a rank-n matrix");
        s.basis_rounds = 0;
    } else {
        auto sample = sample_full_rank(n, rng);
        coeff_rows = std::move(sample.matrix);
        s.basis_rounds = sample.rounds;
    }

    s.records.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        PauliOperator obs = psi0.group_element(coeff_rows.row(i));
        s.records.push_back(measure_observable(obs, coeff_rows.row(i), params.shots, src, rng,
                                               opts.keep_outcomes));
    }
    finalize(s);
    return s;
}

std::size_t measurement_settings_count(const CertificateSummary& summary) {
    std::set<std::string> settings;
    for (const auto& r : summary.records)
        settings.insert(r.coeffs.to_string() + (r.sign > 0 ? "+" : "-"));
    return settings.size();
}

void write_transcript(std::ostream& out, const CertificateSummary& summary) {
    for (const auto& r : summary.records)
        if (r.outcomes.empty() && r.shots > 0)
            throw Error("write_transcript: per-shot outcomes were not recorded");
    out << "# cert transcript v1\n";
    out << "protocol " << protocol_name(summary.protocol) << "\n";
    out << "n " << summary.n << "\n";
    out << "beta " << std::hexfloat << summary.beta << std::defaultfloat << "\n";
    out << "seed " << summary.seed << "\n";
    out << "basis_rounds " << summary.basis_rounds << "\n";
    for (const auto& r : summary.records) {
        out << "obs " << r.coeffs.to_string() << ' ' << (r.sign > 0 ? '+' : '-');
        for (int o : r.outcomes)
            out << ' ' << (o > 0 ? "+1" : "-1");
        out << "\n";
    }
}

CertificateSummary replay_transcript(std::istream& in) {
    CertificateSummary s{};
    std::string line;
    bool have_protocol = false, have_beta = false;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#')
            continue;
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "protocol") {
            std::string v;
            ls >> v;
            if (v == "dfe")
                s.protocol = Protocol::DfeC;
            else if (v == "bmom")
                s.protocol = Protocol::Bmom;
            else
                throw ParseError("transcript line " + std::to_string(lineno) +
                                 ": unknown protocol");
            have_protocol = true;
        } else if (key == "n") {
            ls >> s.n;
        } else if (key == "beta") {
            std::string v;
            ls >> v;
            s.beta = std::strtod(v.c_str(), nullptr);  // accepts the hexfloat form
            have_beta = true;
        } else if (key == "seed") {
            ls >> s.seed;
        } else if (key == "basis_rounds") {
            ls >> s.basis_rounds;
        } else if (key == "obs") {
            ObservableRecord rec;
            std::string bits, sign;
            if (!(ls >> bits >> sign))
                throw ParseError("transcript line " + std::to_string(lineno) + ": bad obs record");
            rec.coeffs = BitVec::from_string(bits);
            rec.sign = sign == "+" ? +1 : -1;
            std::string tok;
            rec.plus_count = 0;
            while (ls >> tok) {
                int o = tok == "+1" ? +1 : -1;
                rec.outcomes.push_back(o);
                rec.plus_count += o > 0 ? 1 : 0;
            }
            rec.shots = static_cast<std::int64_t>(rec.outcomes.size());
            if (rec.shots == 0)
                throw ParseError("transcript line " + std::to_string(lineno) + ": no outcomes");
            rec.mean = (2.0 * static_cast<double>(rec.plus_count) -
                        static_cast<double>(rec.shots)) /
                       static_cast<double>(rec.shots);
            s.records.push_back(std::move(rec));
        } else {
            throw ParseError("transcript line " + std::to_string(lineno) + ": unknown key '" +
                             key + "'");
        }
    }
    if (!have_protocol || !have_beta)
        throw ParseError("transcript: missing protocol or beta header");
    finalize(s);
    if (s.protocol == Protocol::DfeC)
        s.accept = s.mu >= 1.0 - s.beta;
    return s;
}

}  // namespace cert
