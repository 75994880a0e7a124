#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "cert/gf2.hpp"

using namespace cert;

TEST_CASE("rank of simple matrices") {
    CHECK(rank(BitMatrix(3, 3)) == 0);
    CHECK(rank(BitMatrix::identity(5)) == 5);

    BitMatrix dup;
    dup.append_row(BitVec::from_string("11"));
    dup.append_row(BitVec::from_string("11"));
    CHECK(rank(dup) == 1);
}

TEST_CASE("rank is invariant under row operations") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        BitMatrix m = BitMatrix::random(6, 9, rng);
        std::size_t r = rank(m);
        BitMatrix mutated = m;
        for (int op = 0; op < 20; ++op) {
            std::size_t i = rng() % mutated.nrows();
            std::size_t j = rng() % mutated.nrows();
            if (i == j)
                std::swap(mutated.row(i), mutated.row((j + 1) % mutated.nrows()));
            else
                mutated.row(i) ^= mutated.row(j);
        }
        CHECK(rank(mutated) == r);
    }
}

TEST_CASE("solve_coordinates examples") {
    // identity basis returns v itself
    BitVec v = BitVec::from_string("0110");
    CHECK(solve_coordinates(BitMatrix::identity(4), v) == v);

    // basis {10, 11}: row1 xor row2 = 01
    BitMatrix basis;
    basis.append_row(BitVec::from_string("10"));
    basis.append_row(BitVec::from_string("11"));
    BitVec a = solve_coordinates(basis, BitVec::from_string("01"));
    CHECK(a == BitVec::from_string("11"));
    // oracle: recombine the selected rows and compare
    BitVec recombined(2);
    for (std::size_t i = 0; i < 2; ++i)
        if (a.get(i))
            recombined ^= basis.row(i);
    CHECK(recombined == BitVec::from_string("01"));

    CHECK(solve_coordinates(basis, BitVec(2)) == BitVec(2));
}

TEST_CASE("solve_coordinates rejects singular bases") {
    BitMatrix sing;
    sing.append_row(BitVec::from_string("11"));
    sing.append_row(BitVec::from_string("11"));
    CHECK_THROWS_AS(solve_coordinates(sing, BitVec(2)), SingularBasis);
}

TEST_CASE("solve_coordinates round-trips on random full-rank bases") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        auto [basis, rounds] = sample_full_rank(8, rng);
        (void)rounds;
        BitVec v = BitVec::random(8, rng);
        BitVec a = solve_coordinates(basis, v);
        BitVec recombined(8);
        for (std::size_t i = 0; i < 8; ++i)
            if (a.get(i))
                recombined ^= basis.row(i);
        CHECK(recombined == v);
    }
}

TEST_CASE("sample_full_rank always yields rank n") {
    std::mt19937_64 rng(5);
    for (std::size_t n : {1, 2, 7, 65}) {
        auto [m, rounds] = sample_full_rank(n, rng);
        CHECK(m.nrows() == n);
        CHECK(rank(m) == n);
        CHECK(rounds >= 1);
    }
}

TEST_CASE("sample_full_rank at n=2 is uniform over the 6 invertible matrices") {
    // oracle: enumerate all 16 binary 2x2 matrices and count the invertible ones
    int invertible = 0;
    for (unsigned bits = 0; bits < 16; ++bits) {
        BitMatrix m(2, 2);
        for (int k = 0; k < 4; ++k)
            if ((bits >> k) & 1u)
                m.row(k / 2).set(k % 2, true);
        if (rank(m) == 2)
            ++invertible;
    }
    CHECK(invertible == 6);

    std::mt19937_64 rng(23);
    const int samples = 100000;
    std::map<std::string, int> counts;
    long total_rounds = 0;
    for (int i = 0; i < samples; ++i) {
        auto [m, rounds] = sample_full_rank(2, rng);
        total_rounds += static_cast<long>(rounds);
        counts[m.row(0).to_string() + m.row(1).to_string()]++;
    }
    CHECK(counts.size() == 6);
    // each invertible matrix with frequency 1/6 +- 3 sigma
    double p = 1.0 / 6.0;
    double sigma = std::sqrt(p * (1 - p) / samples);
    for (const auto& [key, count] : counts) {
        double freq = static_cast<double>(count) / samples;
        CHECK(std::abs(freq - p) < 3 * sigma + 1e-12);
    }
    // geometric rounds: per-round acceptance 6/16
    double accept = static_cast<double>(samples) / static_cast<double>(total_rounds);
    CHECK(accept == doctest::Approx(6.0 / 16.0).epsilon(0.03));
}

TEST_CASE("per-round acceptance at n=20 matches the Euler-product probability") {
    std::mt19937_64 rng(31);
    const int rounds = 100000;
    int accepted = 0;
    for (int i = 0; i < rounds; ++i)
        if (rank(BitMatrix::random(20, 20, rng)) == 20)
            ++accepted;
    double freq = static_cast<double>(accepted) / rounds;
    CHECK(std::abs(freq - full_rank_probability(20)) < 0.01);
    CHECK(full_rank_probability(20) == doctest::Approx(0.28879).epsilon(1e-4));
}

TEST_CASE("enumerate_bases counts and uniqueness") {
    CHECK(ordered_basis_count(1) == 1);
    CHECK(ordered_basis_count(2) == 6);
    CHECK(ordered_basis_count(3) == 168);
    CHECK(ordered_basis_count(4) == 20160);

    for (std::size_t n = 1; n <= 4; ++n) {
        std::set<std::string> seen;
        std::uint64_t count = 0;
        enumerate_bases(n, [&](const BitMatrix& m) {
            ++count;
            CHECK(rank(m) == n);
            std::string key;
            for (std::size_t i = 0; i < n; ++i)
                key += m.row(i).to_string();
            seen.insert(key);
        });
        CHECK(count == ordered_basis_count(n));
        CHECK(seen.size() == count);
    }
}

TEST_CASE("enumerate_bases guard") {
    CHECK_THROWS_AS(enumerate_bases(6, [](const BitMatrix&) {}), TooLarge);
}
