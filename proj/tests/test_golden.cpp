#include "support.hpp"

#include <doctest.h>

#include <random>

using namespace poly120;
using poly120::testing::golden_value;

namespace {

GoldenNumber g(long p, long q, unsigned long d = 1) { return GoldenNumber::from_ints(p, q, d); }

struct Rand {
    std::mt19937_64 rng{20240611};
    GoldenNumber next(int range = 6) {
        std::uniform_int_distribution<long> num(-range, range);
        std::uniform_int_distribution<unsigned long> den(1, 8);
        return GoldenNumber(mpq_class(num(rng), den(rng)), mpq_class(num(rng), den(rng)));
    }
};

}  // namespace

TEST_CASE("golden addition") {
    CHECK(gadd(g(1, 0, 2), g(0, 1, 2)) == g(1, 1, 2));
    CHECK(gadd(g(3, -2, 4), GoldenNumber{}) == g(3, -2, 4));
    CHECK(gadd(g(1, -1, 2), g(-1, 1, 2)).is_zero());
}

TEST_CASE("golden multiplication") {
    const auto tau = GoldenNumber::tau();
    CHECK(gmul(tau, tau) == g(1, 1));
    CHECK(gmul(tau, tau - 1) == GoldenNumber(1));
    // (1 + τ)² = 2 + 3τ
    CHECK(gmul(g(1, 1, 2), g(1, 1, 2)) == g(2, 3, 4));
    CHECK(golden_value(gmul(g(1, 1, 2), g(1, 1, 2))) == doctest::Approx(1.7135254915624212));
    CHECK(tau.inverse() == tau - 1);
}

TEST_CASE("golden sign") {
    CHECK(sign(GoldenNumber{}) == 0);
    CHECK(sign(g(-1, 1)) == 1);
    CHECK(sign(g(2, -1)) == 1);
    CHECK(sign(g(1, -1)) == -1);
    CHECK(sign(g(-2, 1)) == -1);
    CHECK(sign(g(-3, 2)) == 1);   // 2τ - 3 ≈ 0.236
    CHECK(sign(g(3, -2)) == -1);
    CHECK(sign(g(-13, 8)) == -1);  // Fibonacci ratios straddle τ
    CHECK(sign(g(-21, 13)) == 1);
}

TEST_CASE("golden sign agrees with floating evaluation") {
    Rand r;
    for (int i = 0; i < 10000; ++i) {
        const auto x = r.next(40);
        const long double v = golden_value(x);
        const int expected = v > 0 ? 1 : (v < 0 ? -1 : 0);
        REQUIRE_MESSAGE(sign(x) == expected, x.to_string());
    }
}

TEST_CASE("galois conjugation") {
    const auto tau = GoldenNumber::tau();
    CHECK(galois_conjugate(tau) == 1 - tau);
    CHECK(galois_conjugate(GoldenNumber(1)) == GoldenNumber(1));
    Rand r;
    for (int i = 0; i < 500; ++i) {
        const auto x = r.next(), y = r.next();
        CHECK(galois_conjugate(galois_conjugate(x)) == x);
        CHECK(galois_conjugate(x * y) == galois_conjugate(x) * galois_conjugate(y));
        CHECK(galois_conjugate(x + y) == galois_conjugate(x) + galois_conjugate(y));
    }
}

TEST_CASE("field axioms on random inputs") {
    Rand r;
    for (int i = 0; i < 500; ++i) {
        const auto x = r.next(), y = r.next(), z = r.next();
        CHECK((x + y) + z == x + (y + z));
        CHECK((x * y) * z == x * (y * z));
        CHECK(x * y == y * x);
        CHECK(x + y == y + x);
        CHECK(x * (y + z) == x * y + x * z);
        CHECK(x + (-x) == GoldenNumber{});
        if (!x.is_zero()) {
            CHECK(x * x.inverse() == GoldenNumber(1));
            CHECK(y / x * x == y);
        }
    }
    CHECK_THROWS_AS(GoldenNumber{}.inverse(), std::domain_error);
}

TEST_CASE("golden text and tuple forms") {
    Rand r;
    for (int i = 0; i < 200; ++i) {
        const auto x = r.next();
        CHECK(GoldenNumber::parse(x.to_string()) == x);
        CHECK(GoldenNumber::from_tuple(x.to_tuple()) == x);
        CHECK(golden_from_json(to_json(x)) == x);
    }
    CHECK(g(1, 1, 2).to_string() == "(1+1τ)/2");
    CHECK(g(0, -1, 4).to_tuple() == std::array<long long, 4>{0, 1, -1, 4});
    CHECK_THROWS_AS(GoldenNumber::parse("1+τ"), std::invalid_argument);
    CHECK(g(3, 1, 8).has_dyadic_denominators());
    CHECK_FALSE(g(1, 1, 3).has_dyadic_denominators());
}

TEST_CASE("inner products of operator rows") {
    const auto v = transcribed_matrix(OperatorName::V);
    CHECK(inner_product(v[0], v[1]).is_zero());
    CHECK(inner_product(v[0], v[0]) == GoldenNumber(1));
    GoldenVector4 e1{1, 0, 0, 0}, e2{0, 1, 0, 0};
    CHECK(inner_product(e1, e2).is_zero());
}

TEST_CASE("tabulated matrices are orthogonal, also after conjugation") {
    for (auto name : {OperatorName::U, OperatorName::V, OperatorName::W, OperatorName::X, OperatorName::Y}) {
        CAPTURE(to_char(name));
        const auto m = transcribed_matrix(name);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                const GoldenNumber expected(i == j ? 1 : 0);
                CHECK(inner_product(m[i], m[j]) == expected);
                CHECK(inner_product(conjugate(m[i]), conjugate(m[j])) == expected);
            }
        CHECK(is_orthogonal(m));
        CHECK(is_orthogonal(conjugate(m)));
        for (const auto& row : m)
            for (const auto& x : row) CHECK(x.has_dyadic_denominators());
    }
}
