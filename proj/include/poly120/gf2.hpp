#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace poly120 {

/// Fixed-length vector over GF(2), packed into 64-bit words.
class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

    std::size_t size() const { return size_; }
    bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }
    void set(std::size_t i, bool value = true) {
        const std::uint64_t bit = std::uint64_t{1} << (i % 64);
        if (value)
            words_[i / 64] |= bit;
        else
            words_[i / 64] &= ~bit;
    }
    void flip(std::size_t i) { words_[i / 64] ^= std::uint64_t{1} << (i % 64); }

    BitVector& operator^=(const BitVector& other);
    friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }

    std::size_t count() const;
    bool none() const;
    /// Positions of the set bits, ascending.
    std::vector<std::size_t> ones() const;

    std::span<const std::uint64_t> words() const { return words_; }
    std::span<std::uint64_t> words() { return words_; }

    friend bool operator==(const BitVector&, const BitVector&) = default;
    friend std::strong_ordering operator<=>(const BitVector&, const BitVector&) = default;

private:
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Dense GF(2) matrix stored column-major: each column is a packed BitVector.
class Gf2Matrix {
public:
    Gf2Matrix() = default;
    Gf2Matrix(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols, BitVector(rows)) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return columns_.size(); }

    bool get(std::size_t r, std::size_t c) const { return columns_[c].test(r); }
    void set(std::size_t r, std::size_t c, bool value = true) { columns_[c].set(r, value); }
    const BitVector& column(std::size_t c) const { return columns_[c]; }

    std::size_t column_weight(std::size_t c) const { return columns_[c].count(); }
    std::size_t row_weight(std::size_t r) const;

    /// M x for x indexed by column.
    BitVector multiply(const BitVector& x) const;
    Gf2Matrix restrict_columns(std::span<const std::size_t> cols) const;

    std::size_t rank() const;

private:
    std::size_t rows_ = 0;
    std::vector<BitVector> columns_;
};

/// Basis of {x : M x = 0}; one vector per free column of the reduced row
/// echelon form, so the dimension is cols - rank.
std::vector<BitVector> kernel_basis(const Gf2Matrix& m);

}  // namespace poly120
