#pragma once

#include <Eigen/Dense>
#include <complex>

#include "cert/pauli.hpp"
#include "cert/state_model.hpp"

namespace cert {

using Amplitudes = Eigen::VectorXcd;

/// Statevector of a Clifford circuit applied to |0...0>. Guarded to n <= 10.
Amplitudes dense_statevector(const CircuitTemplate& c);

/// P |psi> for a signed Hermitian Pauli.
Amplitudes apply_pauli(const PauliOperator& p, const Amplitudes& psi);

/// <psi| P |psi>, real for Hermitian P.
double dense_expectation(const PauliOperator& p, const Amplitudes& psi);

/// Full density matrix, used as the independent cross-check backend.
class DenseState {
  public:
    explicit DenseState(Eigen::MatrixXcd rho);

    static DenseState from_statevector(const Amplitudes& psi);
    static DenseState from_mixture(const StabilizerMixture& mix);

    std::size_t num_qubits() const { return n_; }
    const Eigen::MatrixXcd& matrix() const { return rho_; }

    double expectation(const PauliOperator& p) const;

    /// <psi| rho |psi> against a pure target.
    double fidelity_with(const Amplitudes& psi) const;

  private:
    std::size_t n_;
    Eigen::MatrixXcd rho_;
};

/// Statevector of a stabilizer tableau, recovered by projecting a
/// computational basis vector onto the stabilized subspace. Guarded to n <= 10.
Amplitudes dense_statevector(const StabilizerTableau& t);

}  // namespace cert
