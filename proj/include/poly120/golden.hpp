#pragma once

#include <gmpxx.h>

#include <array>
#include <compare>
#include <string>
#include <string_view>

namespace poly120 {

/// Exact element a + b*tau of Q(sqrt 5), tau = (1 + sqrt 5) / 2.
///
/// Both coefficients are GMP rationals kept in canonical form (lowest terms,
/// positive denominator), so equality is structural. Values are immutable.
class GoldenNumber {
public:
    GoldenNumber() = default;
    GoldenNumber(long a) : a_(a) {}  // NOLINT(google-explicit-constructor)
    GoldenNumber(mpq_class a, mpq_class b);

    static GoldenNumber tau() { return {0, 1}; }
    /// (p + q*tau) / d for small integers.
    static GoldenNumber from_ints(long p, long q, unsigned long d = 1);

    const mpq_class& rational_part() const { return a_; }
    const mpq_class& tau_part() const { return b_; }

    bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
    /// True when both coefficient denominators are powers of two.
    bool has_dyadic_denominators() const;

    /// Exact sign of the real embedding: -1, 0 or +1.
    int sign() const;

    GoldenNumber conjugate() const;
    /// Multiplicative inverse; throws std::domain_error on zero.
    GoldenNumber inverse() const;

    /// Reals-embedding approximation; for diagnostics and tests only.
    double approx() const;

    /// "(p+qτ)/d" with d the common denominator.
    std::string to_string() const;
    /// Inverse of to_string(); throws std::invalid_argument.
    static GoldenNumber parse(std::string_view text);

    /// [a_num, a_den, b_num, b_den]. Throws std::overflow_error if a part
    /// does not fit in 64 bits.
    std::array<long long, 4> to_tuple() const;
    static GoldenNumber from_tuple(const std::array<long long, 4>& t);

    friend GoldenNumber operator+(const GoldenNumber& x, const GoldenNumber& y);
    friend GoldenNumber operator-(const GoldenNumber& x, const GoldenNumber& y);
    friend GoldenNumber operator*(const GoldenNumber& x, const GoldenNumber& y);
    friend GoldenNumber operator/(const GoldenNumber& x, const GoldenNumber& y);
    friend GoldenNumber operator-(const GoldenNumber& x);
    friend bool operator==(const GoldenNumber& x, const GoldenNumber& y);
    /// Lexicographic on (a, b); a total order for use as a key, not the real order.
    friend std::strong_ordering operator<=>(const GoldenNumber& x, const GoldenNumber& y);

private:
    mpq_class a_{0};
    mpq_class b_{0};
};

inline GoldenNumber gadd(const GoldenNumber& x, const GoldenNumber& y) { return x + y; }
inline GoldenNumber gmul(const GoldenNumber& x, const GoldenNumber& y) { return x * y; }
inline int sign(const GoldenNumber& x) { return x.sign(); }
inline GoldenNumber galois_conjugate(const GoldenNumber& x) { return x.conjugate(); }

using GoldenVector4 = std::array<GoldenNumber, 4>;

GoldenNumber inner_product(const GoldenVector4& v, const GoldenVector4& w);
GoldenVector4 negate(const GoldenVector4& v);
GoldenVector4 conjugate(const GoldenVector4& v);
bool is_zero(const GoldenVector4& v);

/// 4x4 matrix acting on column vectors; m[row][col].
using GoldenMatrix4 = std::array<GoldenVector4, 4>;

GoldenMatrix4 identity4();
GoldenMatrix4 operator*(const GoldenMatrix4& m, const GoldenMatrix4& n);
GoldenVector4 operator*(const GoldenMatrix4& m, const GoldenVector4& v);
GoldenMatrix4 transpose(const GoldenMatrix4& m);
GoldenMatrix4 power(const GoldenMatrix4& m, unsigned exponent);
GoldenMatrix4 conjugate(const GoldenMatrix4& m);
/// M^T M == I, exactly.
bool is_orthogonal(const GoldenMatrix4& m);

}  // namespace poly120
