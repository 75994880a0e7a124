#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cert/errors.hpp"

namespace cert {

/// Fixed-length vector over GF(2), bit-packed into 64-bit words.
class BitVec {
  public:
    BitVec() = default;
    explicit BitVec(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

    /// Parse from a string of '0'/'1' characters, index 0 first.
    static BitVec from_string(const std::string& s);

    /// Low bits of `value`, bit i of value becomes coordinate i.
    static BitVec from_uint(std::uint64_t value, std::size_t n);

    static BitVec random(std::size_t n, std::mt19937_64& rng);

    std::size_t size() const { return n_; }

    bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }

    void set(std::size_t i, bool v) {
        std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (v)
            words_[i >> 6] |= mask;
        else
            words_[i >> 6] &= ~mask;
    }

    void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

    BitVec& operator^=(const BitVec& other);
    BitVec operator^(const BitVec& other) const {
        BitVec r = *this;
        r ^= other;
        return r;
    }

    bool operator==(const BitVec& other) const = default;

    bool is_zero() const;
    std::size_t popcount() const;

    /// GF(2) inner product: parity of AND.
    bool dot(const BitVec& other) const;

    /// Concatenation (this first, then other).
    BitVec concat(const BitVec& other) const;

    /// Coordinates [lo, lo+len) as a new vector.
    BitVec slice(std::size_t lo, std::size_t len) const;

    std::uint64_t to_uint() const;  // requires n <= 64

    std::string to_string() const;

  private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Row-major GF(2) matrix; all rows share the same length.
class BitMatrix {
  public:
    BitMatrix() = default;
    BitMatrix(std::size_t nrows, std::size_t ncols)
        : ncols_(ncols), rows_(nrows, BitVec(ncols)) {}

    static BitMatrix identity(std::size_t n);
    static BitMatrix random(std::size_t nrows, std::size_t ncols, std::mt19937_64& rng);

    void append_row(const BitVec& row);

    std::size_t nrows() const { return rows_.size(); }
    std::size_t ncols() const { return ncols_; }

    const BitVec& row(std::size_t i) const { return rows_[i]; }
    BitVec& row(std::size_t i) { return rows_[i]; }

    bool operator==(const BitMatrix& other) const = default;

  private:
    std::size_t ncols_ = 0;
    std::vector<BitVec> rows_;
};

std::size_t rank(const BitMatrix& m);

/// Repeated coordinate solves against a fixed set of rows.
/// Holds an echelonized copy with combination tags.
class Gf2Solver {
  public:
    explicit Gf2Solver(const BitMatrix& m);

    std::size_t rank() const { return pivots_.size(); }

    /// Coefficients a with sum_i a_i * row_i == v, if v is in the row space.
    std::optional<BitVec> solve(const BitVec& v) const;

  private:
    std::size_t nrows_;
    std::vector<BitVec> echelon_;                       // reduced rows
    std::vector<BitVec> tags_;                          // combination of original rows
    std::vector<std::pair<std::size_t, std::size_t>> pivots_;  // (row index, pivot col)
};

/// Coefficients expressing v in an n x n rank-n basis (rows).
/// Throws SingularBasis if the rows are dependent.
BitVec solve_coordinates(const BitMatrix& basis, const BitVec& v);

struct FullRankSample {
    BitMatrix matrix;
    std::size_t rounds;  // total sampling rounds including the accepted one
};

/// Uniform n x n invertible matrix by rejection: resample all n rows
/// until the matrix has full rank.
FullRankSample sample_full_rank(std::size_t n, std::mt19937_64& rng);

/// Exact per-round acceptance probability prod_{k=1}^{n} (1 - 2^-k).
double full_rank_probability(std::size_t n);

/// Visit every ordered basis (n-tuple of independent vectors) of GF(2)^n.
/// Guarded to n <= 5; throws TooLarge beyond that.
void enumerate_bases(std::size_t n, const std::function<void(const BitMatrix&)>& visit);

/// Number of ordered bases, prod_{k=0}^{n-1} (2^n - 2^k).
std::uint64_t ordered_basis_count(std::size_t n);

}  // namespace cert
