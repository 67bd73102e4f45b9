#include "poly120/golden.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace poly120 {

namespace {

bool is_power_of_two(const mpz_class& n) { return n > 0 && mpz_popcount(n.get_mpz_t()) == 1; }

long long to_ll(const mpz_class& z) {
    if (!z.fits_slong_p()) throw std::overflow_error("GoldenNumber coefficient exceeds 64 bits");
    return z.get_si();
}

}  // namespace

GoldenNumber::GoldenNumber(mpq_class a, mpq_class b) : a_(std::move(a)), b_(std::move(b)) {
    a_.canonicalize();
    b_.canonicalize();
}

GoldenNumber GoldenNumber::from_ints(long p, long q, unsigned long d) {
    if (d == 0) throw std::domain_error("zero denominator");
    return {mpq_class(p, d), mpq_class(q, d)};
}

bool GoldenNumber::has_dyadic_denominators() const {
    return is_power_of_two(a_.get_den()) && is_power_of_two(b_.get_den());
}

int GoldenNumber::sign() const {
    const int sa = sgn(a_);
    const int sb = sgn(b_);
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sb;
    // a + b*tau = b*(tau - q) with q = -a/b > 0.
    // tau > q  <=>  sqrt 5 > 2q - 1.
    const mpq_class t = 2 * (-a_ / b_) - 1;
    int tau_minus_q;
    if (sgn(t) < 0) {
        tau_minus_q = 1;
    } else {
        const mpq_class sq = t * t;
        tau_minus_q = sq < 5 ? 1 : -1;  // sq == 5 is impossible for rational t
    }
    return sb * tau_minus_q;
}

GoldenNumber GoldenNumber::conjugate() const { return {a_ + b_, -b_}; }

GoldenNumber GoldenNumber::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero GoldenNumber");
    const mpq_class norm = a_ * a_ + a_ * b_ - b_ * b_;
    return {(a_ + b_) / norm, -b_ / norm};
}

double GoldenNumber::approx() const {
    const double tau = (1.0 + std::sqrt(5.0)) / 2.0;
    return a_.get_d() + b_.get_d() * tau;
}

std::string GoldenNumber::to_string() const {
    mpz_class d;
    mpz_lcm(d.get_mpz_t(), a_.get_den_mpz_t(), b_.get_den_mpz_t());
    const mpz_class p = a_.get_num() * (d / a_.get_den());
    const mpz_class q = b_.get_num() * (d / b_.get_den());
    std::string out = "(" + p.get_str();
    out += q < 0 ? "-" : "+";
    out += mpz_class(abs(q)).get_str() + "τ)/" + d.get_str();
    return out;
}

GoldenNumber GoldenNumber::parse(std::string_view text) {
    auto fail = [&] { return std::invalid_argument("malformed golden number: " + std::string(text)); };
    constexpr std::string_view tau_sym = "τ";
    if (text.size() < 2 || text.front() != '(') throw fail();
    const auto close = text.find(")/");
    const auto tau_at = text.find(tau_sym);
    if (close == std::string_view::npos || tau_at == std::string_view::npos || tau_at + tau_sym.size() != close)
        throw fail();
    const std::string_view inner = text.substr(1, tau_at - 1);
    const auto op = inner.find_first_of("+-", 1);
    if (op == std::string_view::npos) throw fail();
    try {
        const mpz_class p(std::string(inner.substr(0, op)));
        const mpz_class q(std::string(inner.substr(inner[op] == '+' ? op + 1 : op)));
        const mpz_class d(std::string(text.substr(close + 2)));
        if (d <= 0) throw fail();
        return {mpq_class(p, d), mpq_class(q, d)};
    } catch (const std::invalid_argument&) {
        throw fail();
    }
}

std::array<long long, 4> GoldenNumber::to_tuple() const {
    return {to_ll(a_.get_num()), to_ll(a_.get_den()), to_ll(b_.get_num()), to_ll(b_.get_den())};
}

GoldenNumber GoldenNumber::from_tuple(const std::array<long long, 4>& t) {
    if (t[1] == 0 || t[3] == 0) throw std::invalid_argument("zero denominator in golden tuple");
    const auto q = [](long long n, long long d) {
        mpq_class r{mpz_class(static_cast<long>(n)), mpz_class(static_cast<long>(d))};
        r.canonicalize();
        return r;
    };
    return {q(t[0], t[1]), q(t[2], t[3])};
}

GoldenNumber operator+(const GoldenNumber& x, const GoldenNumber& y) { return {x.a_ + y.a_, x.b_ + y.b_}; }
GoldenNumber operator-(const GoldenNumber& x, const GoldenNumber& y) { return {x.a_ - y.a_, x.b_ - y.b_}; }
GoldenNumber operator-(const GoldenNumber& x) { return {-x.a_, -x.b_}; }

GoldenNumber operator*(const GoldenNumber& x, const GoldenNumber& y) {
    // tau^2 = tau + 1
    const mpq_class bb = x.b_ * y.b_;
    return {x.a_ * y.a_ + bb, x.a_ * y.b_ + x.b_ * y.a_ + bb};
}

GoldenNumber operator/(const GoldenNumber& x, const GoldenNumber& y) { return x * y.inverse(); }

bool operator==(const GoldenNumber& x, const GoldenNumber& y) { return x.a_ == y.a_ && x.b_ == y.b_; }

std::strong_ordering operator<=>(const GoldenNumber& x, const GoldenNumber& y) {
    if (const int c = cmp(x.a_, y.a_); c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    const int c = cmp(x.b_, y.b_);
    if (c == 0) return std::strong_ordering::equal;
    return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
}

GoldenNumber inner_product(const GoldenVector4& v, const GoldenVector4& w) {
    GoldenNumber s;
    for (std::size_t i = 0; i < 4; ++i) s = s + v[i] * w[i];
    return s;
}

GoldenVector4 negate(const GoldenVector4& v) { return {-v[0], -v[1], -v[2], -v[3]}; }

GoldenVector4 conjugate(const GoldenVector4& v) {
    return {v[0].conjugate(), v[1].conjugate(), v[2].conjugate(), v[3].conjugate()};
}

bool is_zero(const GoldenVector4& v) {
    for (const auto& c : v)
        if (!c.is_zero()) return false;
    return true;
}

GoldenMatrix4 identity4() {
    GoldenMatrix4 m;
    for (std::size_t i = 0; i < 4; ++i) m[i][i] = GoldenNumber(1);
    return m;
}

GoldenMatrix4 operator*(const GoldenMatrix4& m, const GoldenMatrix4& n) {
    GoldenMatrix4 r;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            GoldenNumber s;
            for (std::size_t k = 0; k < 4; ++k) s = s + m[i][k] * n[k][j];
            r[i][j] = s;
        }
    return r;
}

GoldenVector4 operator*(const GoldenMatrix4& m, const GoldenVector4& v) {
    GoldenVector4 r;
    for (std::size_t i = 0; i < 4; ++i) r[i] = inner_product(m[i], v);
    return r;
}

GoldenMatrix4 transpose(const GoldenMatrix4& m) {
    GoldenMatrix4 r;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) r[i][j] = m[j][i];
    return r;
}

GoldenMatrix4 power(const GoldenMatrix4& m, unsigned exponent) {
    GoldenMatrix4 r = identity4();
    for (unsigned i = 0; i < exponent; ++i) r = r * m;
    return r;
}

GoldenMatrix4 conjugate(const GoldenMatrix4& m) {
    GoldenMatrix4 r;
    for (std::size_t i = 0; i < 4; ++i) r[i] = conjugate(m[i]);
    return r;
}

bool is_orthogonal(const GoldenMatrix4& m) { return transpose(m) * m == identity4(); }

}  // namespace poly120
