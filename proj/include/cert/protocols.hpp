#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <vector>

#include "cert/params.hpp"
#include "cert/pauli.hpp"
#include "cert/state_model.hpp"

namespace cert {

/// One +/-1 measurement outcome per request for a given observable.
class MeasurementSource {
  public:
    virtual ~MeasurementSource() = default;

    virtual int sample(const PauliOperator& observable, std::mt19937_64& rng) = 0;

    /// Number of +1 outcomes in `shots` consecutive requests. The default
    /// loops over sample(); stationary sources draw one binomial instead.
    virtual std::int64_t count_plus(const PauliOperator& observable, std::int64_t shots,
                                    std::mt19937_64& rng);
};

/// Fixed prepared state: +1 with probability (1 + <x>_rho) / 2.
class StationarySource : public MeasurementSource {
  public:
    explicit StationarySource(StabilizerMixture rho);

    int sample(const PauliOperator& observable, std::mt19937_64& rng) override;
    std::int64_t count_plus(const PauliOperator& observable, std::int64_t shots,
                            std::mt19937_64& rng) override;

    const StabilizerMixture& state() const { return rho_; }

  private:
    StabilizerMixture rho_;
};

/// Prepared state drifts through a schedule, advancing once per shot
/// globally and wrapping around.
class DriftingSource : public MeasurementSource {
  public:
    explicit DriftingSource(std::vector<StabilizerMixture> schedule);

    int sample(const PauliOperator& observable, std::mt19937_64& rng) override;

  private:
    std::vector<StabilizerMixture> schedule_;
    std::size_t next_ = 0;
};

struct ObservableRecord {
    BitVec coeffs;               // coefficients in psi0's generator basis
    int sign;                    // +/-1 sign of the observable
    std::int64_t shots;
    std::int64_t plus_count;
    double mean;                 // of +/-1 outcomes
    std::vector<int> outcomes;   // per-shot +/-1; empty unless transcripts requested
};

struct CertificateSummary {
    Protocol protocol;
    std::size_t n;
    double beta;
    std::uint64_t seed;
    std::size_t basis_rounds = 0;  // BMoM basis rejection rounds (0 for DFE-C)
    std::vector<ObservableRecord> records;
    double mu;  // mean of per-observable estimates
    double nu;  // minimum of per-observable estimates
    bool accept;
};

struct RunOptions {
    bool keep_outcomes = false;                  // record per-shot outcomes
    std::optional<BitMatrix> forced_basis = {};  // BMoM test hook: skip basis sampling
};

/// Alg.: sample M stabilizers uar, one shot each; accept iff mean >= 1-beta.
CertificateSummary run_dfe_c(const StabilizerTableau& psi0, const ProtocolParams& params,
                             MeasurementSource& src, std::mt19937_64& rng,
                             const RunOptions& opts = {});

/// Alg.: sample one uniform basis; m shots per element; accept iff the
/// minimum of the n means is >= 1-beta.
CertificateSummary run_bmom(const StabilizerTableau& psi0, const ProtocolParams& params,
                            MeasurementSource& src, std::mt19937_64& rng,
                            const RunOptions& opts = {});

/// Distinct observable settings used (<= M for DFE-C, n for BMoM).
std::size_t measurement_settings_count(const CertificateSummary& summary);

/// Line-oriented transcript; requires per-shot outcomes.
void write_transcript(std::ostream& out, const CertificateSummary& summary);

/// Re-derives means and the decision from a recorded transcript.
CertificateSummary replay_transcript(std::istream& in);

}  // namespace cert
