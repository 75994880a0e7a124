#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cert/pauli.hpp"

namespace cert {

/// Convex mixture of stabilizer states, all on the same qubit count.
///
/// When every component is the reference state with some generator signs
/// flipped, `flip_patterns` holds one pattern per component; the expectation
/// of the group element with coefficients a is then
///   sum_i w_i * (-1)^(u_i . a),
/// which campaign loops use instead of membership solves.
struct StabilizerMixture {
    struct Component {
        double weight;
        StabilizerTableau tableau;
    };

    std::vector<Component> components;
    std::optional<std::vector<BitVec>> flip_patterns;  // relative to a family's psi0
    std::string family_label;

    std::size_t num_qubits() const;

    /// Weights nonnegative, summing to 1 within 1e-12.
    void validate() const;

    static StabilizerMixture pure(const StabilizerTableau& t);
};

/// Tr(x rho) for a Hermitian Pauli: each component contributes +/-1 or 0.
double expectation(const StabilizerMixture& rho, const PauliOperator& x);

/// Expectation of group_element(psi0, coeffs) on rho, using the flip-pattern
/// fast path when available.
double expectation_in_group(const StabilizerMixture& rho, const StabilizerTableau& psi0,
                            const BitVec& coeffs);

/// <psi0| rho |psi0>. Pure-pure overlaps are computed group-theoretically:
/// 2^(k-n) with k the dimension of the intersection of the two symplectic
/// row spaces, or 0 when the groups contain contradictory signed elements.
double fidelity(const StabilizerMixture& rho, const StabilizerTableau& psi0);

/// Overlap of two pure stabilizer states.
double pure_fidelity(const StabilizerTableau& a, const StabilizerTableau& b);

/// (1-c) psi0 + sum_i (c/n) psi_i where psi_i flips the sign of generator i.
/// Fidelity is exactly 1-c; the group element with coefficients a has
/// expectation 1 - 2c*wt(a)/n.
StabilizerMixture generator_flip_family(const StabilizerTableau& psi0, double c);

/// Bad state whose expectation deficit avoids the coefficient subspace
/// spanned by subgroup_coeffs (r independent rows, r < n): mixes psi0 with
/// the flip-pattern states indexed by the nonzero vectors of the orthogonal
/// complement, each with weight eps / (2^(n-r) - 1). Resulting expectations:
///   1                                  for a in span(subgroup_coeffs),
///   1 - eps * 2^d / (2^d - 1)          otherwise, with d = n - r.
/// Fidelity is exactly 1 - eps.
StabilizerMixture coset_deficit_family(const StabilizerTableau& psi0,
                                       const BitMatrix& subgroup_coeffs, double eps);

}  // namespace cert
