#include "cert/state_model.hpp"

#include <cmath>
#include <cstdlib>

#include "cert/errors.hpp"

namespace cert {

std::size_t StabilizerMixture::num_qubits() const {
    if (components.empty())
        throw Error("StabilizerMixture: no components");
    return components.front().tableau.num_qubits();
}

void StabilizerMixture::validate() const {
    double total = 0.0;
    std::size_t n = num_qubits();
    for (const auto& c : components) {
        if (c.weight < 0)
            throw Error("StabilizerMixture: negative weight");
        if (c.tableau.num_qubits() != n)
            throw DimensionMismatch("StabilizerMixture: mixed qubit counts");
        total += c.weight;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw Error("StabilizerMixture: weights do not sum to 1");
}

StabilizerMixture StabilizerMixture::pure(const StabilizerTableau& t) {
    StabilizerMixture m;
    m.components.push_back({1.0, t});
    m.family_label = "pure";
    return m;
}

double expectation(const StabilizerMixture& rho, const PauliOperator& x) {
    if (x.num_qubits() != rho.num_qubits())
        throw DimensionMismatch("expectation: qubit count mismatch");
    double acc = 0.0;
    for (const auto& c : rho.components) {
        switch (c.tableau.membership(x)) {
            case Membership::PlusMember:
                acc += c.weight;
                break;
            case Membership::MinusMember:
                acc -= c.weight;
                break;
            case Membership::NonMember:
                break;
        }
    }
    return acc;
}

double expectation_in_group(const StabilizerMixture& rho, const StabilizerTableau& psi0,
                            const BitVec& coeffs) {
    if (rho.flip_patterns) {
        const auto& pats = *rho.flip_patterns;
        double acc = 0.0;
        for (std::size_t i = 0; i < pats.size(); ++i)
            acc += rho.components[i].weight * (pats[i].dot(coeffs) ? -1.0 : 1.0);
        return acc;
    }
    return expectation(rho, psi0.group_element(coeffs));
}

namespace {

/// Basis of the intersection of two row spaces (Zassenhaus).
std::vector<BitVec> rowspace_intersection(const BitMatrix& a, const BitMatrix& b) {
    std::size_t m = a.ncols();
    std::vector<BitVec> rows;  // each 2m bits: (left | right)
    for (std::size_t i = 0; i < a.nrows(); ++i)
        rows.push_back(a.row(i).concat(a.row(i)));
    for (std::size_t i = 0; i < b.nrows(); ++i)
        rows.push_back(b.row(i).concat(BitVec(m)));
    // eliminate on the left block
    std::size_t r = 0;
    for (std::size_t col = 0; col < m && r < rows.size(); ++col) {
        std::size_t piv = r;
        while (piv < rows.size() && !rows[piv].get(col))
            ++piv;
        if (piv == rows.size())
            continue;
        std::swap(rows[r], rows[piv]);
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (i != r && rows[i].get(col))
                rows[i] ^= rows[r];
        ++r;
    }
    // rows with zero left block carry intersection vectors on the right
    std::vector<BitVec> inter;
    for (std::size_t i = r; i < rows.size(); ++i) {
        BitVec right = rows[i].slice(m, m);
        if (!right.is_zero())
            inter.push_back(std::move(right));
    }
    // deduplicate dependent leftovers
    BitMatrix stack;
    std::vector<BitVec> basis;
    for (auto& v : inter) {
        stack.append_row(v);
        if (rank(stack) == basis.size() + 1)
            basis.push_back(v);
    }
    return basis;
}

}  // namespace

double pure_fidelity(const StabilizerTableau& a, const StabilizerTableau& b) {
    if (a.num_qubits() != b.num_qubits())
        throw DimensionMismatch("pure_fidelity: qubit count mismatch");
    std::size_t n = a.num_qubits();
    auto inter = rowspace_intersection(a.symplectic_rows(), b.symplectic_rows());
    // The relative sign of the common element with bits v is a homomorphism
    // on the intersection space, so checking a basis suffices.
    for (const auto& v : inter) {
        BitVec ca = *a.coeff_solver().solve(v);
        BitVec cb = *b.coeff_solver().solve(v);
        int diff = ((a.group_element(ca).phase_exp - b.group_element(cb).phase_exp) % 4 + 4) % 4;
        if (diff != 0)
            return 0.0;
    }
    return std::ldexp(1.0, static_cast<int>(inter.size()) - static_cast<int>(n));
}

double fidelity(const StabilizerMixture& rho, const StabilizerTableau& psi0) {
    if (rho.num_qubits() != psi0.num_qubits())
        throw DimensionMismatch("fidelity: qubit count mismatch");
    double acc = 0.0;
    for (const auto& c : rho.components)
        acc += c.weight * pure_fidelity(c.tableau, psi0);
    return acc;
}

StabilizerMixture generator_flip_family(const StabilizerTableau& psi0, double c) {
    if (c < 0.0 || c > 1.0)
        throw Error("generator_flip_family: c must be in [0,1]");
    std::size_t n = psi0.num_qubits();
    StabilizerMixture m;
    std::vector<BitVec> patterns;
    m.components.push_back({1.0 - c, psi0});
    patterns.push_back(BitVec(n));
    for (std::size_t i = 0; i < n; ++i) {
        BitVec flip(n);
        flip.set(i, true);
        m.components.push_back({c / static_cast<double>(n), psi0.with_flipped_generators(flip)});
        patterns.push_back(flip);
    }
    m.flip_patterns = std::move(patterns);
    m.family_label = "flip";
    return m;
}

namespace {

/// Basis of the kernel {u : M u = 0} of an r x n GF(2) matrix.
std::vector<BitVec> nullspace(const BitMatrix& m) {
    std::size_t n = m.ncols();
    std::vector<BitVec> rows;
    for (std::size_t i = 0; i < m.nrows(); ++i)
        rows.push_back(m.row(i));
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t col = 0; col < n && r < rows.size(); ++col) {
        std::size_t piv = r;
        while (piv < rows.size() && !rows[piv].get(col))
            ++piv;
        if (piv == rows.size())
            continue;
        std::swap(rows[r], rows[piv]);
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (i != r && rows[i].get(col))
                rows[i] ^= rows[r];
        pivot_col.push_back(col);
        ++r;
    }
    std::vector<bool> is_pivot(n, false);
    for (auto c : pivot_col)
        is_pivot[c] = true;
    std::vector<BitVec> kernel;
    for (std::size_t free = 0; free < n; ++free) {
        if (is_pivot[free])
            continue;
        BitVec u(n);
        u.set(free, true);
        for (std::size_t k = 0; k < pivot_col.size(); ++k)
            if (rows[k].get(free))
                u.set(pivot_col[k], true);
        kernel.push_back(std::move(u));
    }
    return kernel;
}

}  // namespace

StabilizerMixture coset_deficit_family(const StabilizerTableau& psi0,
                                       const BitMatrix& subgroup_coeffs, double eps) {
    std::size_t n = psi0.num_qubits();
    if (subgroup_coeffs.ncols() != n)
        throw DimensionMismatch("coset_deficit_family: subgroup rows must have length n");
    if (eps <= 0.0 || eps >= 1.0)
        throw Error("coset_deficit_family: eps must be in (0,1)");
    std::size_t r = subgroup_coeffs.nrows();
    if (rank(subgroup_coeffs) != r)
        throw DependentRows("coset_deficit_family: subgroup rows are dependent");
    if (r == n)
        throw FidelityMismatch(
            "coset_deficit_family: full subspace leaves no deficit, fidelity would be 1");
    std::size_t d = n - r;
    if (d > 16)
        throw TooLarge("coset_deficit_family: complement dimension above 16");

    auto kernel = nullspace(subgroup_coeffs);
    std::size_t count = (std::size_t{1} << d) - 1;  // nonzero complement vectors
    double w = eps / static_cast<double>(count);

    StabilizerMixture m;
    std::vector<BitVec> patterns;
    m.components.push_back({1.0 - eps, psi0});
    patterns.push_back(BitVec(n));
    for (std::size_t mask = 1; mask <= count; ++mask) {
        BitVec u(n);
        for (std::size_t k = 0; k < d; ++k)
            if ((mask >> k) & 1u)
                u ^= kernel[k];
        m.components.push_back({w, psi0.with_flipped_generators(u)});
        patterns.push_back(std::move(u));
    }
    m.flip_patterns = std::move(patterns);
    m.family_label = "coset";
    return m;
}

}  // namespace cert
