#include "cert/dense_oracle.hpp"

#include "cert/errors.hpp"

namespace cert {

namespace {

constexpr std::size_t kMaxDenseQubits = 10;

void check_size(std::size_t n) {
    if (n > kMaxDenseQubits)
        throw TooLarge("dense oracle: more than 10 qubits");
}

using C = std::complex<double>;

}  // namespace

Amplitudes dense_statevector(const CircuitTemplate& c) {
    check_size(c.n);
    std::size_t dim = std::size_t{1} << c.n;
    Amplitudes psi = Amplitudes::Zero(static_cast<Eigen::Index>(dim));
    psi(0) = 1.0;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (const auto& g : c.gates) {
        std::size_t bit0 = std::size_t{1} << g.q0;
        switch (g.kind) {
            case Gate::Kind::H:
                for (std::size_t i = 0; i < dim; ++i) {
                    if (i & bit0)
                        continue;
                    C a = psi(static_cast<Eigen::Index>(i));
                    C b = psi(static_cast<Eigen::Index>(i | bit0));
                    psi(static_cast<Eigen::Index>(i)) = inv_sqrt2 * (a + b);
                    psi(static_cast<Eigen::Index>(i | bit0)) = inv_sqrt2 * (a - b);
                }
                break;
            case Gate::Kind::S:
                for (std::size_t i = 0; i < dim; ++i)
                    if (i & bit0)
                        psi(static_cast<Eigen::Index>(i)) *= C(0.0, 1.0);
                break;
            case Gate::Kind::X:
                for (std::size_t i = 0; i < dim; ++i) {
                    if (i & bit0)
                        continue;
                    std::swap(psi(static_cast<Eigen::Index>(i)),
                              psi(static_cast<Eigen::Index>(i | bit0)));
                }
                break;
            case Gate::Kind::Z:
                for (std::size_t i = 0; i < dim; ++i)
                    if (i & bit0)
                        psi(static_cast<Eigen::Index>(i)) *= -1.0;
                break;
            case Gate::Kind::CNOT: {
                std::size_t bit1 = std::size_t{1} << g.q1;
                for (std::size_t i = 0; i < dim; ++i) {
                    if ((i & bit0) && !(i & bit1))
                        std::swap(psi(static_cast<Eigen::Index>(i)),
                                  psi(static_cast<Eigen::Index>(i | bit1)));
                }
                break;
            }
            case Gate::Kind::CZ: {
                std::size_t bit1 = std::size_t{1} << g.q1;
                for (std::size_t i = 0; i < dim; ++i)
                    if ((i & bit0) && (i & bit1))
                        psi(static_cast<Eigen::Index>(i)) *= -1.0;
                break;
            }
        }
    }
    return psi;
}

Amplitudes apply_pauli(const PauliOperator& p, const Amplitudes& psi) {
    std::size_t n = p.num_qubits();
    check_size(n);
    std::size_t dim = std::size_t{1} << n;
    if (psi.size() != static_cast<Eigen::Index>(dim))
        throw DimensionMismatch("apply_pauli: dimension mismatch");
    std::size_t xmask = 0, zmask = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (p.x_bits.get(i))
            xmask |= std::size_t{1} << i;
        if (p.z_bits.get(i))
            zmask |= std::size_t{1} << i;
    }
    static const C ipow[4] = {C(1, 0), C(0, 1), C(-1, 0), C(0, -1)};
    C global = ipow[p.phase_exp & 3];
    Amplitudes out(psi.size());
    // X^x Z^z |b> = (-1)^(z.b) |b ^ x>
    for (std::size_t b = 0; b < dim; ++b) {
        int zpar = std::popcount(b & zmask) & 1;
        C amp = global * (zpar ? -1.0 : 1.0) * psi(static_cast<Eigen::Index>(b));
        out(static_cast<Eigen::Index>(b ^ xmask)) = amp;
    }
    return out;
}

double dense_expectation(const PauliOperator& p, const Amplitudes& psi) {
    Amplitudes ppsi = apply_pauli(p, psi);
    return psi.dot(ppsi).real();
}

DenseState::DenseState(Eigen::MatrixXcd rho) : rho_(std::move(rho)) {
    Eigen::Index dim = rho_.rows();
    if (dim != rho_.cols() || dim == 0 || (dim & (dim - 1)) != 0)
        throw DimensionMismatch("DenseState: dimension must be a power of two");
    n_ = 0;
    while ((Eigen::Index{1} << n_) < dim)
        ++n_;
    check_size(n_);
    if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
        throw Error("DenseState: not Hermitian");
    if (std::abs(rho_.trace().real() - 1.0) > 1e-10 || std::abs(rho_.trace().imag()) > 1e-10)
        throw Error("DenseState: trace is not 1");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10)
        throw Error("DenseState: not positive semidefinite");
}

DenseState DenseState::from_statevector(const Amplitudes& psi) {
    return DenseState(psi * psi.adjoint());
}

DenseState DenseState::from_mixture(const StabilizerMixture& mix) {
    std::size_t n = mix.num_qubits();
    check_size(n);
    Eigen::Index dim = Eigen::Index{1} << n;
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& c : mix.components) {
        Amplitudes psi = dense_statevector(c.tableau);
        rho += c.weight * (psi * psi.adjoint());
    }
    return DenseState(rho);
}

double DenseState::expectation(const PauliOperator& p) const {
    if (p.num_qubits() != n_)
        throw DimensionMismatch("DenseState::expectation: qubit count mismatch");
    std::size_t dim = std::size_t{1} << n_;
    // Tr(P rho) = sum_b <b| P rho |b>
    C acc = 0.0;
    std::size_t xmask = 0, zmask = 0;
    for (std::size_t i = 0; i < n_; ++i) {
        if (p.x_bits.get(i))
            xmask |= std::size_t{1} << i;
        if (p.z_bits.get(i))
            zmask |= std::size_t{1} << i;
    }
    static const C ipow[4] = {C(1, 0), C(0, 1), C(-1, 0), C(0, -1)};
    C global = ipow[p.phase_exp & 3];
    for (std::size_t b = 0; b < dim; ++b) {
        int zpar = std::popcount(b & zmask) & 1;
        // P_{b^x, b} is the only nonzero entry in column b, so the diagonal
        // of P rho picks up rho(b, b^x)
        acc += global * (zpar ? -1.0 : 1.0) *
               rho_(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(b ^ xmask));
    }
    return acc.real();
}

double DenseState::fidelity_with(const Amplitudes& psi) const {
    if (psi.size() != rho_.rows())
        throw DimensionMismatch("DenseState::fidelity_with: dimension mismatch");
    return (psi.adjoint() * rho_ * psi)(0, 0).real();
}

Amplitudes dense_statevector(const StabilizerTableau& t) {
    std::size_t n = t.num_qubits();
    check_size(n);
    std::size_t dim = std::size_t{1} << n;
    for (std::size_t seed_basis = 0; seed_basis < dim; ++seed_basis) {
        Amplitudes psi = Amplitudes::Zero(static_cast<Eigen::Index>(dim));
        psi(static_cast<Eigen::Index>(seed_basis)) = 1.0;
        // project onto the stabilized line: prod_i (I + g_i)/2
        for (std::size_t i = 0; i < n; ++i) {
            Amplitudes gpsi = apply_pauli(t.generator(i), psi);
            psi = 0.5 * (psi + gpsi);
        }
        double norm = psi.norm();
        if (norm > 1e-6)
            return psi / norm;
    }
    throw Error("dense_statevector: projector annihilated every basis vector");
}

}  // namespace cert
