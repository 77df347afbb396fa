#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "padic/core.hpp"
#include "padic/errors.hpp"
#include "padic/polynomial.hpp"

using namespace padic;

namespace {

BigInt eval2(const Polynomial& f, std::int64_t x, std::int64_t y) {
    std::array<BigInt, 2> pt = {BigInt(x), BigInt(y)};
    return f.eval_exact(std::span<const BigInt>(pt.data(), f.arity() == 1 ? 1 : 2));
}

}  // namespace

TEST_CASE("parsing and canonical printing") {
    CHECK(Polynomial::parse("x^2+y^2+x*y+x+y+1").str() == "x^2+x*y+y^2+x+y+1");
    CHECK(Polynomial::parse("n^2+7").str() == "x^2+7");
    CHECK(Polynomial::parse("n^2+7").arity() == 1);
    CHECK(Polynomial::parse("x^2+7").arity() == 1);
    CHECK(Polynomial::parse("x*y").arity() == 2);
    CHECK(Polynomial::parse("-x + 3").str() == "-x+3");
    CHECK(Polynomial::parse("2x y").str() == "2*x*y");  // implicit products
    CHECK(Polynomial::parse("x - x").str() == "0");
    CHECK(Polynomial::parse("0").is_zero());
    CHECK(Polynomial::parse("x^2*y+5").str() == "x^2*y+5");
}

TEST_CASE("parse errors carry byte offsets") {
    CHECK_THROWS_AS(Polynomial::parse("x^2+"), parse_error);
    CHECK_THROWS_AS(Polynomial::parse("x**y"), parse_error);
    CHECK_THROWS_AS(Polynomial::parse("z+1"), parse_error);
    CHECK_THROWS_AS(Polynomial::parse(""), parse_error);
    CHECK_THROWS_AS(Polynomial::parse("x^99"), parse_error);  // exponent cap
    CHECK_THROWS_AS(Polynomial::parse("n+y"), parse_error);   // n is univariate-only
    try {
        Polynomial::parse("x^2+@");
    } catch (const parse_error& e) {
        CHECK(e.offset() == 4);
    }
}

TEST_CASE("parse round-trips through str") {
    for (const char* text : {"x^2+x*y+y^2+x+y+1", "x^2*y+5", "-2*x^3+x-7", "x^2+7", "0", "x*y+1"}) {
        Polynomial f = Polynomial::parse(text);
        CHECK(Polynomial::parse(f.str()) == f);
        CHECK(f.str() == text);
    }
}

TEST_CASE("evaluation, exact and modular") {
    Polynomial f = Polynomial::parse("x^2*y+5");
    CHECK(eval2(f, 1, 1) == 6);
    CHECK(eval2(f, -1, -5) == 0);
    Polynomial g = Polynomial::parse("n^2+5");
    std::array<BigInt, 1> pt = {BigInt(3)};
    CHECK(g.eval_exact(pt) == 14);

    // eval_mod agrees with eval_exact reduced, including the big-modulus path.
    std::mt19937_64 rng(3);
    Polynomial h = Polynomial::parse("3*x^4-2*x^2*y^3+x*y-11*y+8");
    for (int i = 0; i < 100; ++i) {
        std::array<BigInt, 2> p2 = {BigInt(rng() % 4096) - 2048, BigInt(rng() % 4096) - 2048};
        for (const BigInt& m : {int_pow(2, 10), int_pow(2, 63), int_pow(2, 80), int_pow(3, 7)}) {
            BigInt expect = ((h.eval_exact(p2) % m) + m) % m;
            CHECK(h.eval_mod(p2, m) == expect);
        }
    }
}

TEST_CASE("ring operations against evaluation homomorphism") {
    std::mt19937_64 rng(17);
    Polynomial f = Polynomial::parse("x^2+3*x*y-y+4");
    Polynomial g = Polynomial::parse("2*x*y^2-x+y");
    for (int i = 0; i < 50; ++i) {
        std::int64_t x = static_cast<std::int64_t>(rng() % 200) - 100;
        std::int64_t y = static_cast<std::int64_t>(rng() % 200) - 100;
        CHECK(eval2(f + g, x, y) == eval2(f, x, y) + eval2(g, x, y));
        CHECK(eval2(f - g, x, y) == eval2(f, x, y) - eval2(g, x, y));
        CHECK(eval2(f * g, x, y) == eval2(f, x, y) * eval2(g, x, y));
        CHECK(eval2(-f, x, y) == -eval2(f, x, y));
    }
}

TEST_CASE("Hasse derivatives have integer Taylor coefficients") {
    // f(X + h) = sum_t D_t(f)(X) h^t: check the expansion numerically.
    Polynomial f = Polynomial::parse("x^3*y^2-4*x*y+y-9");
    std::mt19937_64 rng(23);
    for (int i = 0; i < 30; ++i) {
        BigInt x = BigInt(rng() % 50) - 25, y = BigInt(rng() % 50) - 25;
        BigInt hx = BigInt(rng() % 9) - 4, hy = BigInt(rng() % 9) - 4;
        BigInt sum = 0;
        for (unsigned tx = 0; tx <= 4; ++tx)
            for (unsigned ty = 0; ty <= 4; ++ty) {
                std::array<BigInt, 2> pt = {x, y};
                BigInt term = f.hasse_derivative({tx, ty}).with_arity(2).eval_exact(pt);
                for (unsigned q = 0; q < tx; ++q) term *= hx;
                for (unsigned q = 0; q < ty; ++q) term *= hy;
                sum += term;
            }
        std::array<BigInt, 2> shifted = {x + hx, y + hy};
        CHECK(sum == f.eval_exact(shifted));
    }
    CHECK(Polynomial::parse("x^2").hasse_derivative({1, 0}).str() == "2*x");
    CHECK(Polynomial::parse("x^4").hasse_derivative({2, 0}).str() == "6*x^2");  // binom(4,2)
}

TEST_CASE("quadratic constructor and extraction") {
    QuadraticCoefficients q{1, 1, 1, 1, 1, 1};
    CHECK(Polynomial::quadratic(q).str() == "x^2+x*y+y^2+x+y+1");
    QuadraticCoefficients back = Polynomial::parse("2*x^2-y^2+3*x*y+x-5").extract_quadratic();
    CHECK(back.a == 2);
    CHECK(back.b == -1);
    CHECK(back.c == 3);
    CHECK(back.d == 1);
    CHECK(back.e == 0);
    CHECK(back.g == -5);
    CHECK_THROWS_AS(Polynomial::parse("x^3").extract_quadratic(), std::invalid_argument);
}

TEST_CASE("jacobian determinant") {
    Polynomial f = Polynomial::parse("x^2*y+5");
    Polynomial g = Polynomial::parse("x+1");
    // J = det [2xy, x^2; 1, 0] = -x^2.
    CHECK(jacobian_determinant(f, g).str() == "-x^2");
    CHECK(jacobian_determinant(Polynomial::parse("x"), Polynomial::parse("y")).str() == "1");
}
