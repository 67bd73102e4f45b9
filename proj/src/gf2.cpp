#include "poly120/gf2.hpp"

#include <bit>
#include <stdexcept>

namespace poly120 {

BitVector& BitVector::operator^=(const BitVector& other) {
    if (other.size_ != size_) throw std::invalid_argument("BitVector size mismatch");
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
    return *this;
}

std::size_t BitVector::count() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

bool BitVector::none() const {
    for (auto w : words_)
        if (w) return false;
    return true;
}

std::vector<std::size_t> BitVector::ones() const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < words_.size(); ++k)
        for (auto w = words_[k]; w; w &= w - 1) out.push_back(k * 64 + static_cast<std::size_t>(std::countr_zero(w)));
    return out;
}

std::size_t Gf2Matrix::row_weight(std::size_t r) const {
    std::size_t n = 0;
    for (const auto& c : columns_) n += c.test(r);
    return n;
}

BitVector Gf2Matrix::multiply(const BitVector& x) const {
    if (x.size() != cols()) throw std::invalid_argument("vector length does not match column count");
    BitVector y(rows_);
    for (std::size_t c : x.ones()) y ^= columns_[c];
    return y;
}

Gf2Matrix Gf2Matrix::restrict_columns(std::span<const std::size_t> cols) const {
    Gf2Matrix out;
    out.rows_ = rows_;
    out.columns_.reserve(cols.size());
    for (std::size_t c : cols) out.columns_.push_back(columns_.at(c));
    return out;
}

namespace {

// Row-major copy of the matrix reduced to RREF; returns pivot columns.
std::vector<std::size_t> row_reduce(const Gf2Matrix& m, std::vector<BitVector>& rows) {
    rows.assign(m.rows(), BitVector(m.cols()));
    for (std::size_t c = 0; c < m.cols(); ++c)
        for (std::size_t r : m.column(c).ones()) rows[r].set(c);

    std::vector<std::size_t> pivots;
    std::size_t next = 0;
    for (std::size_t c = 0; c < m.cols() && next < rows.size(); ++c) {
        std::size_t p = next;
        while (p < rows.size() && !rows[p].test(c)) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[next]);
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (r != next && rows[r].test(c)) rows[r] ^= rows[next];
        pivots.push_back(c);
        ++next;
    }
    rows.resize(next);
    return pivots;
}

}  // namespace

std::size_t Gf2Matrix::rank() const {
    std::vector<BitVector> rows;
    return row_reduce(*this, rows).size();
}

std::vector<BitVector> kernel_basis(const Gf2Matrix& m) {
    std::vector<BitVector> rows;
    const auto pivots = row_reduce(m, rows);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;

    std::vector<BitVector> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        BitVector v(m.cols());
        v.set(free);
        for (std::size_t k = 0; k < pivots.size(); ++k)
            if (rows[k].test(free)) v.set(pivots[k]);
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace poly120
