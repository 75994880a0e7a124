#include "cert/pauli.hpp"

#include <fstream>
#include <istream>
#include <sstream>

#include "cert/errors.hpp"

namespace cert {

namespace {

int popcount_and_mod4(const BitVec& a, const BitVec& b) {
    // popcount(a & b) mod 4, via two slices of parity... simplest: loop words.
    // BitVec has no word access; use a cheap loop over set positions.
    int c = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        c += (a.get(i) && b.get(i)) ? 1 : 0;
    return c & 3;
}

}  // namespace

PauliOperator::PauliOperator(BitVec x, BitVec z, int phase)
    : x_bits(std::move(x)), z_bits(std::move(z)), phase_exp(((phase % 4) + 4) % 4) {
    if (x_bits.size() != z_bits.size())
        throw DimensionMismatch("PauliOperator: x/z length mismatch");
}

PauliOperator PauliOperator::identity(std::size_t n) {
    return PauliOperator(BitVec(n), BitVec(n), 0);
}

bool PauliOperator::is_hermitian() const {
    return (phase_exp & 1) == popcount_and_mod4(x_bits, z_bits) % 2;
}

int PauliOperator::sign() const {
    int canonical = popcount_and_mod4(x_bits, z_bits);
    int diff = ((phase_exp - canonical) % 4 + 4) % 4;
    if (diff == 0)
        return +1;
    if (diff == 2)
        return -1;
    throw Error("PauliOperator::sign: operator is not Hermitian");
}

bool PauliOperator::anticommutes_with(const PauliOperator& other) const {
    if (num_qubits() != other.num_qubits())
        throw DimensionMismatch("anticommutes_with: qubit count mismatch");
    return x_bits.dot(other.z_bits) ^ z_bits.dot(other.x_bits);
}

std::string PauliOperator::to_string() const {
    std::string s(sign() > 0 ? "+" : "-");
    for (std::size_t i = 0; i < num_qubits(); ++i) {
        bool x = x_bits.get(i), z = z_bits.get(i);
        s += x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I');
    }
    return s;
}

PauliOperator compose(const PauliOperator& a, const PauliOperator& b) {
    if (a.num_qubits() != b.num_qubits())
        throw DimensionMismatch("compose: qubit count mismatch");
    // Z^z1 X^x2 = (-1)^(z1.x2) X^x2 Z^z1
    int phase = a.phase_exp + b.phase_exp + 2 * (a.z_bits.dot(b.x_bits) ? 1 : 0);
    return PauliOperator(a.x_bits ^ b.x_bits, a.z_bits ^ b.z_bits, phase);
}

CircuitTemplate CircuitTemplate::parse(std::istream& in) {
    CircuitTemplate c;
    std::string line;
    std::size_t lineno = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok))
            continue;
        if (!have_header) {
            if (tok != "qubits")
                throw ParseError("line " + std::to_string(lineno) +
                                 ": expected header 'qubits N'");
            if (!(ls >> c.n) || c.n == 0)
                throw ParseError("line " + std::to_string(lineno) + ": bad qubit count");
            have_header = true;
            continue;
        }
        Gate g{};
        std::size_t arity = 1;
        if (tok == "H")
            g.kind = Gate::Kind::H;
        else if (tok == "S")
            g.kind = Gate::Kind::S;
        else if (tok == "X")
            g.kind = Gate::Kind::X;
        else if (tok == "Z")
            g.kind = Gate::Kind::Z;
        else if (tok == "CNOT" || tok == "CX") {
            g.kind = Gate::Kind::CNOT;
            arity = 2;
        } else if (tok == "CZ") {
            g.kind = Gate::Kind::CZ;
            arity = 2;
        } else {
            throw UnknownGate("line " + std::to_string(lineno) + ": unknown gate '" + tok + "'");
        }
        if (!(ls >> g.q0) || g.q0 >= c.n)
            throw ParseError("line " + std::to_string(lineno) + ": bad qubit index");
        if (arity == 2) {
            if (!(ls >> g.q1) || g.q1 >= c.n || g.q1 == g.q0)
                throw ParseError("line " + std::to_string(lineno) + ": bad target qubit index");
        }
        std::string extra;
        if (ls >> extra)
            throw ParseError("line " + std::to_string(lineno) + ": trailing token '" + extra +
                             "'");
        c.gates.push_back(g);
    }
    if (!have_header)
        throw ParseError("missing 'qubits N' header");
    return c;
}

CircuitTemplate CircuitTemplate::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open circuit file: " + path);
    return parse(in);
}

StabilizerTableau::StabilizerTableau(std::size_t n) : n_(n) {
    gens_.reserve(n);
    destabs_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Row g{BitVec(n), BitVec(n), false};
        g.z.set(i, true);
        gens_.push_back(std::move(g));
        Row d{BitVec(n), BitVec(n), false};
        d.x.set(i, true);
        destabs_.push_back(std::move(d));
    }
}

StabilizerTableau::StabilizerTableau(const StabilizerTableau& other)
    : n_(other.n_), gens_(other.gens_), destabs_(other.destabs_) {}

StabilizerTableau& StabilizerTableau::operator=(const StabilizerTableau& other) {
    n_ = other.n_;
    gens_ = other.gens_;
    destabs_ = other.destabs_;
    solver_.reset();
    return *this;
}

PauliOperator StabilizerTableau::to_pauli(const Row& r) const {
    int canonical = 0;
    for (std::size_t i = 0; i < n_; ++i)
        canonical += (r.x.get(i) && r.z.get(i)) ? 1 : 0;
    return PauliOperator(r.x, r.z, (canonical + (r.sign ? 2 : 0)) & 3);
}

PauliOperator StabilizerTableau::generator(std::size_t i) const {
    return to_pauli(gens_.at(i));
}

PauliOperator StabilizerTableau::destabilizer(std::size_t i) const {
    return to_pauli(destabs_.at(i));
}

bool StabilizerTableau::generator_sign_bit(std::size_t i) const {
    return gens_.at(i).sign;
}

StabilizerTableau StabilizerTableau::with_flipped_generators(const BitVec& flips) const {
    if (flips.size() != n_)
        throw DimensionMismatch("with_flipped_generators: flip vector length mismatch");
    StabilizerTableau t(*this);
    for (std::size_t i = 0; i < n_; ++i)
        if (flips.get(i))
            t.gens_[i].sign = !t.gens_[i].sign;
    return t;
}

void StabilizerTableau::apply_to_row(Row& r, const Gate& g) const {
    auto a = g.q0, b = g.q1;
    switch (g.kind) {
        case Gate::Kind::H:
            r.sign ^= r.x.get(a) && r.z.get(a);
            {
                bool t = r.x.get(a);
                r.x.set(a, r.z.get(a));
                r.z.set(a, t);
            }
            break;
        case Gate::Kind::S:
            r.sign ^= r.x.get(a) && r.z.get(a);
            r.z.set(a, r.z.get(a) ^ r.x.get(a));
            break;
        case Gate::Kind::X:
            r.sign ^= r.z.get(a);
            break;
        case Gate::Kind::Z:
            r.sign ^= r.x.get(a);
            break;
        case Gate::Kind::CNOT:
            r.sign ^= r.x.get(a) && r.z.get(b) && !(r.x.get(b) ^ r.z.get(a));
            r.x.set(b, r.x.get(b) ^ r.x.get(a));
            r.z.set(a, r.z.get(a) ^ r.z.get(b));
            break;
        case Gate::Kind::CZ:
            r.sign ^= r.x.get(a) && r.x.get(b) && (r.z.get(a) ^ r.z.get(b));
            r.z.set(a, r.z.get(a) ^ r.x.get(b));
            r.z.set(b, r.z.get(b) ^ r.x.get(a));
            break;
    }
}

void StabilizerTableau::apply(const Gate& g) {
    for (auto& r : gens_)
        apply_to_row(r, g);
    for (auto& r : destabs_)
        apply_to_row(r, g);
    solver_.reset();
}

PauliOperator StabilizerTableau::group_element(const BitVec& coeffs) const {
    if (coeffs.size() != n_)
        throw DimensionMismatch("group_element: coefficient length mismatch");
    PauliOperator acc = PauliOperator::identity(n_);
    for (std::size_t i = 0; i < n_; ++i)
        if (coeffs.get(i))
            acc = compose(acc, generator(i));
    return acc;
}

BitMatrix StabilizerTableau::symplectic_rows() const {
    BitMatrix m;
    for (std::size_t i = 0; i < n_; ++i)
        m.append_row(gens_[i].x.concat(gens_[i].z));
    return m;
}

const Gf2Solver& StabilizerTableau::coeff_solver() const {
    if (!solver_)
        solver_ = std::make_unique<Gf2Solver>(symplectic_rows());
    return *solver_;
}

Membership StabilizerTableau::membership(const PauliOperator& x) const {
    if (x.num_qubits() != n_)
        throw DimensionMismatch("membership: qubit count mismatch");
    auto coeffs = coeff_solver().solve(x.symplectic_row());
    if (!coeffs)
        return Membership::NonMember;
    PauliOperator g = group_element(*coeffs);
    int diff = ((x.phase_exp - g.phase_exp) % 4 + 4) % 4;
    if (diff == 0)
        return Membership::PlusMember;
    if (diff == 2)
        return Membership::MinusMember;
    return Membership::NonMember;  // non-Hermitian phase, cannot be a group element
}

PauliOperator StabilizerTableau::sample_stabilizer(std::mt19937_64& rng) const {
    return group_element(BitVec::random(n_, rng));
}

StabilizerTableau::BasisSample StabilizerTableau::sample_basis(std::mt19937_64& rng) const {
    auto [coeffs, rounds] = sample_full_rank(n_, rng);
    BasisSample out;
    out.coeff_rows = std::move(coeffs);
    out.rounds = rounds;
    out.elements.reserve(n_);
    for (std::size_t i = 0; i < n_; ++i)
        out.elements.push_back(group_element(out.coeff_rows.row(i)));
    return out;
}

StabilizerTableau tableau_from_circuit(const CircuitTemplate& c) {
    StabilizerTableau t(c.n);
    for (const auto& g : c.gates)
        t.apply(g);
    return t;
}

}  // namespace cert
