#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <mutex>
#include <random>
#include <string>
#include <vector>

#include "cert/gf2.hpp"

namespace cert {

/// Hermitian n-qubit Pauli: i^phase_exp * prod_j X^{x_j} Z^{z_j}.
/// Hermiticity pins phase_exp = popcount(x & z) mod 2, so the sign is +/-1.
struct PauliOperator {
    BitVec x_bits;
    BitVec z_bits;
    int phase_exp = 0;  // mod 4

    PauliOperator() = default;
    PauliOperator(BitVec x, BitVec z, int phase);

    static PauliOperator identity(std::size_t n);

    std::size_t num_qubits() const { return x_bits.size(); }

    bool is_identity() const { return x_bits.is_zero() && z_bits.is_zero() && phase_exp == 0; }
    bool is_hermitian() const;

    /// +1 or -1 relative to the canonical Hermitian Pauli with the same bits.
    int sign() const;

    /// Symplectic product: 0 if the operators commute, 1 if they anticommute.
    bool anticommutes_with(const PauliOperator& other) const;

    /// (x | z) as a single 2n-bit row.
    BitVec symplectic_row() const { return x_bits.concat(z_bits); }

    bool operator==(const PauliOperator& other) const = default;

    /// "+XXI", "-YZ" style label.
    std::string to_string() const;
};

/// a * b with the i^k phase tracked mod 4.
PauliOperator compose(const PauliOperator& a, const PauliOperator& b);

/// One Clifford gate application.
struct Gate {
    enum class Kind { H, S, X, Z, CNOT, CZ };
    Kind kind;
    std::size_t q0;
    std::size_t q1 = 0;  // used by two-qubit gates only
};

/// Clifford circuit acting on |0...0>.
struct CircuitTemplate {
    std::size_t n = 0;
    std::vector<Gate> gates;

    /// Text format: header "qubits N", then one gate per line
    /// ("H 0", "CNOT 0 1"), '#' starts a comment.
    static CircuitTemplate parse(std::istream& in);
    static CircuitTemplate parse_file(const std::string& path);
};

enum class Membership { PlusMember, MinusMember, NonMember };

/// Stabilizer tableau: n signed generators plus n destabilizers,
/// maintained under Clifford gate conjugation. Immutable once built.
class StabilizerTableau {
  public:
    /// Tableau of |0...0>: generators Z_i, destabilizers X_i.
    explicit StabilizerTableau(std::size_t n);

    StabilizerTableau(const StabilizerTableau& other);
    StabilizerTableau& operator=(const StabilizerTableau& other);
    StabilizerTableau(StabilizerTableau&&) = default;
    StabilizerTableau& operator=(StabilizerTableau&&) = default;

    std::size_t num_qubits() const { return n_; }

    PauliOperator generator(std::size_t i) const;
    PauliOperator destabilizer(std::size_t i) const;

    bool generator_sign_bit(std::size_t i) const;

    /// Copy with the signs of the generators selected by `flips` negated.
    StabilizerTableau with_flipped_generators(const BitVec& flips) const;

    void apply(const Gate& g);

    /// Signed product of the generators selected by coeffs.
    PauliOperator group_element(const BitVec& coeffs) const;

    Membership membership(const PauliOperator& x) const;

    /// Uniform over all 2^n group elements (identity included).
    PauliOperator sample_stabilizer(std::mt19937_64& rng) const;

    struct BasisSample {
        std::vector<PauliOperator> elements;
        BitMatrix coeff_rows;
        std::size_t rounds;
    };

    /// Uniform random ordered basis of the group, via rejection sampling
    /// of the coefficient matrix.
    BasisSample sample_basis(std::mt19937_64& rng) const;

    /// Generators' (x|z) rows stacked as an n x 2n matrix.
    BitMatrix symplectic_rows() const;

    /// Cached solver over symplectic_rows(), for repeated membership tests.
    const Gf2Solver& coeff_solver() const;

  private:
    struct Row {
        BitVec x, z;
        bool sign;  // (-1)^sign
    };

    PauliOperator to_pauli(const Row& r) const;
    void apply_to_row(Row& r, const Gate& g) const;

    std::size_t n_;
    std::vector<Row> gens_;
    std::vector<Row> destabs_;

    mutable std::unique_ptr<Gf2Solver> solver_;  // lazy membership cache
};

StabilizerTableau tableau_from_circuit(const CircuitTemplate& c);

}  // namespace cert
