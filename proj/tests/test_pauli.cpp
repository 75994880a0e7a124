#include <doctest.h>

#include <cmath>
#include <map>
#include <sstream>

#include "cert/dense_oracle.hpp"
#include "cert/pauli.hpp"

using namespace cert;

namespace {

/// Dense matrix of a Pauli, built column by column (oracle).
Eigen::MatrixXcd pauli_matrix(const PauliOperator& p) {
    std::size_t dim = std::size_t{1} << p.num_qubits();
    Eigen::MatrixXcd m(dim, dim);
    for (std::size_t col = 0; col < dim; ++col) {
        Amplitudes e = Amplitudes::Zero(static_cast<Eigen::Index>(dim));
        e(static_cast<Eigen::Index>(col)) = 1.0;
        m.col(static_cast<Eigen::Index>(col)) = apply_pauli(p, e);
    }
    return m;
}

PauliOperator from_label(const std::string& label, int sign) {
    std::size_t n = label.size();
    BitVec x(n), z(n);
    int canonical = 0;
    for (std::size_t i = 0; i < n; ++i) {
        switch (label[i]) {
            case 'X': x.set(i, true); break;
            case 'Z': z.set(i, true); break;
            case 'Y': x.set(i, true); z.set(i, true); ++canonical; break;
            default: break;
        }
    }
    return PauliOperator(x, z, (canonical + (sign < 0 ? 2 : 0)) % 4);
}

CircuitTemplate bell_circuit() {
    CircuitTemplate c;
    c.n = 2;
    c.gates = {{Gate::Kind::H, 0}, {Gate::Kind::CNOT, 0, 1}};
    return c;
}

std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

CircuitTemplate random_circuit(std::size_t n, std::size_t gates, std::mt19937_64& rng) {
    CircuitTemplate c;
    c.n = n;
    for (std::size_t i = 0; i < gates; ++i) {
        Gate g{};
        switch (rng() % 6) {
            case 0: g.kind = Gate::Kind::H; break;
            case 1: g.kind = Gate::Kind::S; break;
            case 2: g.kind = Gate::Kind::X; break;
            case 3: g.kind = Gate::Kind::Z; break;
            case 4: g.kind = Gate::Kind::CNOT; break;
            default: g.kind = Gate::Kind::CZ; break;
        }
        g.q0 = rng() % n;
        if (g.kind == Gate::Kind::CNOT || g.kind == Gate::Kind::CZ) {
            if (n < 2) {
                g.kind = Gate::Kind::H;
            } else {
                do {
                    g.q1 = rng() % n;
                } while (g.q1 == g.q0);
            }
        }
        c.gates.push_back(g);
    }
    return c;
}

}  // namespace

TEST_CASE("compose basics") {
    auto X = from_label("X", +1);
    CHECK(compose(X, X) == PauliOperator::identity(1));

    auto XX = from_label("XX", +1);
    auto ZZ = from_label("ZZ", +1);
    auto prod = compose(XX, ZZ);
    CHECK(prod == from_label("YY", -1));
    // oracle: dense 4x4 matrix product
    Eigen::MatrixXcd expect = pauli_matrix(XX) * pauli_matrix(ZZ);
    CHECK((expect - pauli_matrix(prod)).cwiseAbs().maxCoeff() < 1e-12);

    auto b = from_label("YZX", -1);
    CHECK(compose(PauliOperator::identity(3), b) == b);
}

TEST_CASE("compose matches dense products on random pairs") {
    auto rng = make_rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t n = 1 + rng() % 3;
        auto t = tableau_from_circuit(random_circuit(n, 20, rng));
        PauliOperator a = t.sample_stabilizer(rng);
        PauliOperator b = t.sample_stabilizer(rng);
        Eigen::MatrixXcd expect = pauli_matrix(a) * pauli_matrix(b);
        CHECK((expect - pauli_matrix(compose(a, b))).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("tableau_from_circuit on tiny circuits") {
    CircuitTemplate empty;
    empty.n = 2;
    auto t0 = tableau_from_circuit(empty);
    CHECK(t0.generator(0) == from_label("ZI", +1));
    CHECK(t0.generator(1) == from_label("IZ", +1));

    CircuitTemplate h;
    h.n = 1;
    h.gates = {{Gate::Kind::H, 0}};
    CHECK(tableau_from_circuit(h).generator(0) == from_label("X", +1));

    auto bell = tableau_from_circuit(bell_circuit());
    CHECK(bell.generator(0) == from_label("XX", +1));
    CHECK(bell.generator(1) == from_label("ZZ", +1));
    // oracle: dense statevector of the circuit
    Amplitudes psi = dense_statevector(bell_circuit());
    CHECK(dense_expectation(from_label("XX", +1), psi) == doctest::Approx(1.0));
    CHECK(dense_expectation(from_label("ZZ", +1), psi) == doctest::Approx(1.0));
}

TEST_CASE("group_element basics on the Bell tableau") {
    auto bell = tableau_from_circuit(bell_circuit());
    CHECK(bell.group_element(BitVec(2)) == PauliOperator::identity(2));
    CHECK(bell.group_element(BitVec::from_string("11")) == from_label("YY", -1));
    CHECK(bell.group_element(BitVec::from_string("10")) == bell.generator(0));
    CHECK(bell.group_element(BitVec::from_string("01")) == bell.generator(1));
}

TEST_CASE("membership on the Bell tableau") {
    auto bell = tableau_from_circuit(bell_circuit());
    Amplitudes psi = dense_statevector(bell_circuit());

    CHECK(bell.membership(from_label("XX", +1)) == Membership::PlusMember);
    CHECK(dense_expectation(from_label("XX", +1), psi) == doctest::Approx(1.0));

    CHECK(bell.membership(from_label("YY", +1)) == Membership::MinusMember);
    CHECK(dense_expectation(from_label("YY", +1), psi) == doctest::Approx(-1.0));

    CHECK(bell.membership(from_label("XI", +1)) == Membership::NonMember);
    CHECK(dense_expectation(from_label("XI", +1), psi) == doctest::Approx(0.0));
}

TEST_CASE("tableau membership matches dense expectations exhaustively") {
    auto rng = make_rng(13);
    for (std::size_t n = 1; n <= 4; ++n) {
        auto circuit = random_circuit(n, 50, rng);
        auto t = tableau_from_circuit(circuit);
        Amplitudes psi = dense_statevector(circuit);
        // also cross-check the projection-based tableau statevector
        Amplitudes psi2 = dense_statevector(t);
        CHECK(std::abs(std::abs(psi.dot(psi2)) - 1.0) < 1e-9);
        std::size_t dim = std::size_t{1} << n;
        for (std::size_t xm = 0; xm < dim; ++xm) {
            for (std::size_t zm = 0; zm < dim; ++zm) {
                BitVec x = BitVec::from_uint(xm, n);
                BitVec z = BitVec::from_uint(zm, n);
                int canonical = 0;
                for (std::size_t i = 0; i < n; ++i)
                    canonical += (x.get(i) && z.get(i)) ? 1 : 0;
                PauliOperator p(x, z, canonical % 4);
                double expect = dense_expectation(p, psi);
                switch (t.membership(p)) {
                    case Membership::PlusMember:
                        CHECK(expect == doctest::Approx(1.0).epsilon(1e-9));
                        break;
                    case Membership::MinusMember:
                        CHECK(expect == doctest::Approx(-1.0).epsilon(1e-9));
                        break;
                    case Membership::NonMember:
                        CHECK(std::abs(expect) < 1e-9);
                        break;
                }
            }
        }
    }
}

TEST_CASE("group_element is a homomorphism") {
    auto rng = make_rng(29);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t n = 2 + rng() % 5;  // up to 6
        auto t = tableau_from_circuit(random_circuit(n, 50, rng));
        BitVec a = BitVec::random(n, rng);
        BitVec b = BitVec::random(n, rng);
        CHECK(compose(t.group_element(a), t.group_element(b)) == t.group_element(a ^ b));
    }
}

TEST_CASE("sampled stabilizers commute pairwise") {
    auto rng = make_rng(37);
    auto t = tableau_from_circuit(random_circuit(6, 60, rng));
    std::vector<PauliOperator> elems;
    for (int i = 0; i < 20; ++i)
        elems.push_back(t.sample_stabilizer(rng));
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (std::size_t j = i + 1; j < elems.size(); ++j)
            CHECK_FALSE(elems[i].anticommutes_with(elems[j]));
}

TEST_CASE("sample_stabilizer frequencies at n=1") {
    CircuitTemplate empty;
    empty.n = 1;
    auto t = tableau_from_circuit(empty);  // |0>, group {I, Z}
    auto rng = make_rng(41);
    const int draws = 10000;
    int identity = 0, zgen = 0;
    for (int i = 0; i < draws; ++i) {
        auto p = t.sample_stabilizer(rng);
        if (p.is_identity())
            ++identity;
        else if (p == from_label("Z", +1))
            ++zgen;
    }
    CHECK(identity + zgen == draws);
    double sigma = std::sqrt(0.25 / draws);
    CHECK(std::abs(identity / double(draws) - 0.5) < 3 * sigma);
}

TEST_CASE("identity frequency is 2^-n") {
    auto rng = make_rng(43);
    auto t = tableau_from_circuit(random_circuit(3, 30, rng));
    const int draws = 20000;
    int identity = 0;
    for (int i = 0; i < draws; ++i)
        if (t.sample_stabilizer(rng).is_identity())
            ++identity;
    double p = 1.0 / 8.0;
    double sigma = std::sqrt(p * (1 - p) / draws);
    CHECK(std::abs(identity / double(draws) - p) < 3 * sigma);
}

TEST_CASE("sample_basis basics") {
    auto rng = make_rng(47);

    CircuitTemplate one;
    one.n = 1;
    auto t1 = tableau_from_circuit(one);
    auto b1 = t1.sample_basis(rng);
    CHECK(b1.elements.size() == 1);
    CHECK(b1.elements[0] == t1.generator(0));

    // Bell: 6 ordered bases over {XX, ZZ, -YY}, equally likely
    auto bell = tableau_from_circuit(bell_circuit());
    std::map<std::string, int> counts;
    const int draws = 60000;
    for (int i = 0; i < draws; ++i) {
        auto b = bell.sample_basis(rng);
        std::string key;
        for (const auto& e : b.elements) {
            key += e.to_string();
            bool known = e == from_label("XX", +1) || e == from_label("ZZ", +1) ||
                         e == from_label("YY", -1);
            CHECK(known);
        }
        counts[key]++;
    }
    CHECK(counts.size() == 6);
    double p = 1.0 / 6.0;
    double sigma = std::sqrt(p * (1 - p) / draws);
    for (const auto& [key, c] : counts)
        CHECK(std::abs(c / double(draws) - p) < 3.5 * sigma);
}

TEST_CASE("circuit parsing") {
    std::istringstream good("qubits 2\nH 0\n# comment\nCNOT 0 1\n");
    auto c = CircuitTemplate::parse(good);
    CHECK(c.n == 2);
    CHECK(c.gates.size() == 2);

    std::istringstream bad_gate("qubits 1\nT 0\n");
    CHECK_THROWS_AS(CircuitTemplate::parse(bad_gate), UnknownGate);

    std::istringstream bad_index("qubits 1\nH 3\n");
    CHECK_THROWS_AS(CircuitTemplate::parse(bad_index), ParseError);

    std::istringstream no_header("H 0\n");
    CHECK_THROWS_AS(CircuitTemplate::parse(no_header), ParseError);
}
