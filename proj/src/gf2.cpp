#include "cert/gf2.hpp"

#include <algorithm>
#include <cmath>

namespace cert {

BitVec BitVec::from_string(const std::string& s) {
    BitVec v(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '1')
            v.set(i, true);
        else if (s[i] != '0')
            throw ParseError("BitVec::from_string: expected '0' or '1', got '" +
                             std::string(1, s[i]) + "'");
    }
    return v;
}

BitVec BitVec::from_uint(std::uint64_t value, std::size_t n) {
    BitVec v(n);
    for (std::size_t i = 0; i < n && i < 64; ++i)
        if ((value >> i) & 1u)
            v.set(i, true);
    return v;
}

BitVec BitVec::random(std::size_t n, std::mt19937_64& rng) {
    BitVec v(n);
    for (auto& w : v.words_)
        w = rng();
    if (n & 63)
        v.words_.back() &= (std::uint64_t{1} << (n & 63)) - 1;
    return v;
}

BitVec& BitVec::operator^=(const BitVec& other) {
    if (n_ != other.n_)
        throw DimensionMismatch("BitVec xor: length mismatch");
    for (std::size_t i = 0; i < words_.size(); ++i)
        words_[i] ^= other.words_[i];
    return *this;
}

bool BitVec::is_zero() const {
    for (auto w : words_)
        if (w)
            return false;
    return true;
}

std::size_t BitVec::popcount() const {
    std::size_t c = 0;
    for (auto w : words_)
        c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

bool BitVec::dot(const BitVec& other) const {
    if (n_ != other.n_)
        throw DimensionMismatch("BitVec dot: length mismatch");
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < words_.size(); ++i)
        acc ^= words_[i] & other.words_[i];
    return std::popcount(acc) & 1;
}

BitVec BitVec::concat(const BitVec& other) const {
    BitVec r(n_ + other.n_);
    for (std::size_t i = 0; i < n_; ++i)
        r.set(i, get(i));
    for (std::size_t i = 0; i < other.n_; ++i)
        r.set(n_ + i, other.get(i));
    return r;
}

BitVec BitVec::slice(std::size_t lo, std::size_t len) const {
    BitVec r(len);
    for (std::size_t i = 0; i < len; ++i)
        r.set(i, get(lo + i));
    return r;
}

std::uint64_t BitVec::to_uint() const {
    if (n_ > 64)
        throw TooLarge("BitVec::to_uint: more than 64 bits");
    return words_.empty() ? 0 : words_[0];
}

std::string BitVec::to_string() const {
    std::string s(n_, '0');
    for (std::size_t i = 0; i < n_; ++i)
        if (get(i))
            s[i] = '1';
    return s;
}

BitMatrix BitMatrix::identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.row(i).set(i, true);
    return m;
}

BitMatrix BitMatrix::random(std::size_t nrows, std::size_t ncols, std::mt19937_64& rng) {
    BitMatrix m;
    m.ncols_ = ncols;
    m.rows_.reserve(nrows);
    for (std::size_t i = 0; i < nrows; ++i)
        m.rows_.push_back(BitVec::random(ncols, rng));
    return m;
}

void BitMatrix::append_row(const BitVec& row) {
    if (rows_.empty())
        ncols_ = row.size();
    else if (row.size() != ncols_)
        throw DimensionMismatch("BitMatrix::append_row: column count mismatch");
    rows_.push_back(row);
}

std::size_t rank(const BitMatrix& m) {
    std::vector<BitVec> rows;
    rows.reserve(m.nrows());
    for (std::size_t i = 0; i < m.nrows(); ++i)
        rows.push_back(m.row(i));
    std::size_t r = 0;
    for (std::size_t col = 0; col < m.ncols() && r < rows.size(); ++col) {
        std::size_t piv = r;
        while (piv < rows.size() && !rows[piv].get(col))
            ++piv;
        if (piv == rows.size())
            continue;
        std::swap(rows[r], rows[piv]);
        for (std::size_t i = r + 1; i < rows.size(); ++i)
            if (rows[i].get(col))
                rows[i] ^= rows[r];
        ++r;
    }
    return r;
}

Gf2Solver::Gf2Solver(const BitMatrix& m) : nrows_(m.nrows()) {
    echelon_.reserve(nrows_);
    tags_.reserve(nrows_);
    for (std::size_t i = 0; i < nrows_; ++i) {
        echelon_.push_back(m.row(i));
        BitVec tag(nrows_);
        tag.set(i, true);
        tags_.push_back(tag);
    }
    std::size_t r = 0;
    for (std::size_t col = 0; col < m.ncols() && r < nrows_; ++col) {
        std::size_t piv = r;
        while (piv < nrows_ && !echelon_[piv].get(col))
            ++piv;
        if (piv == nrows_)
            continue;
        std::swap(echelon_[r], echelon_[piv]);
        std::swap(tags_[r], tags_[piv]);
        for (std::size_t i = 0; i < nrows_; ++i) {
            if (i != r && echelon_[i].get(col)) {
                echelon_[i] ^= echelon_[r];
                tags_[i] ^= tags_[r];
            }
        }
        pivots_.emplace_back(r, col);
        ++r;
    }
}

std::optional<BitVec> Gf2Solver::solve(const BitVec& v) const {
    BitVec rem = v;
    BitVec coeffs(nrows_);
    for (auto [row, col] : pivots_) {
        if (rem.get(col)) {
            rem ^= echelon_[row];
            coeffs ^= tags_[row];
        }
    }
    if (!rem.is_zero())
        return std::nullopt;
    return coeffs;
}

BitVec solve_coordinates(const BitMatrix& basis, const BitVec& v) {
    if (basis.nrows() != basis.ncols() || v.size() != basis.ncols())
        throw DimensionMismatch("solve_coordinates: need square basis matching v");
    Gf2Solver solver(basis);
    if (solver.rank() < basis.nrows())
        throw SingularBasis("solve_coordinates: basis rows are dependent");
    return *solver.solve(v);
}

FullRankSample sample_full_rank(std::size_t n, std::mt19937_64& rng) {
    if (n == 0)
        throw DimensionMismatch("sample_full_rank: n must be >= 1");
    std::size_t rounds = 0;
    for (;;) {
        ++rounds;
        BitMatrix m = BitMatrix::random(n, n, rng);
        if (rank(m) == n)
            return {std::move(m), rounds};
    }
}

double full_rank_probability(std::size_t n) {
    double p = 1.0;
    for (std::size_t k = 1; k <= n; ++k)
        p *= 1.0 - std::ldexp(1.0, -static_cast<int>(k));
    return p;
}

std::uint64_t ordered_basis_count(std::size_t n) {
    std::uint64_t total = 1;
    std::uint64_t full = std::uint64_t{1} << n;
    for (std::size_t k = 0; k < n; ++k)
        total *= full - (std::uint64_t{1} << k);
    return total;
}

namespace {

void enumerate_rec(std::size_t n, std::vector<std::uint32_t>& chosen, std::uint64_t span_mask,
                   const std::function<void(const BitMatrix&)>& visit) {
    if (chosen.size() == n) {
        BitMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if ((chosen[i] >> j) & 1u)
                    m.row(i).set(j, true);
        visit(m);
        return;
    }
    std::uint32_t limit = std::uint32_t{1} << n;
    for (std::uint32_t v = 1; v < limit; ++v) {
        if ((span_mask >> v) & 1u)
            continue;  // dependent on the chosen prefix
        // grow the span: every old element xored with v is newly reachable
        std::uint64_t grown = span_mask;
        for (std::uint32_t s = 0; s < limit; ++s)
            if ((span_mask >> s) & 1u)
                grown |= std::uint64_t{1} << (s ^ v);
        chosen.push_back(v);
        enumerate_rec(n, chosen, grown, visit);
        chosen.pop_back();
    }
}

}  // namespace

void enumerate_bases(std::size_t n, const std::function<void(const BitMatrix&)>& visit) {
    if (n == 0 || n > 5)
        throw TooLarge("enumerate_bases: supported for 1 <= n <= 5");
    std::vector<std::uint32_t> chosen;
    enumerate_rec(n, chosen, 1u /* span of {} contains 0 */, visit);
}

}  // namespace cert
