#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "padic/core.hpp"
#include "padic/errors.hpp"
#include "padic/valuation.hpp"

using namespace padic;

TEST_CASE("valuation arithmetic") {
    CHECK(Valuation(3) + Valuation(4) == Valuation(7));
    CHECK(Valuation::infinity() + Valuation(1) == Valuation::infinity());
    CHECK(min(Valuation::infinity(), Valuation(5)) == Valuation(5));
    CHECK(Valuation(2) < Valuation::infinity());
    CHECK_FALSE(Valuation::infinity() < Valuation::infinity());
    CHECK(Valuation::infinity().str() == "infinity");
    CHECK_THROWS_AS(Valuation::infinity().value(), std::domain_error);
}

TEST_CASE("primality") {
    CHECK(is_prime(2));
    CHECK(is_prime(3));
    CHECK(is_prime(2147483647));  // 2^31 - 1
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(561));   // Carmichael
    CHECK_FALSE(is_prime(25326001));
    CHECK_THROWS_AS(require_prime(4), std::invalid_argument);
    CHECK_THROWS_AS(require_prime(std::int64_t(1) << 32), std::invalid_argument);
}

TEST_CASE("vp basics") {
    CHECK(vp(0, 2) == Valuation::infinity());
    CHECK(vp(40, 2) == Valuation(3));
    CHECK(vp(-40, 2) == Valuation(3));
    CHECK(vp(40, 5) == Valuation(1));
    CHECK(vp(1, 7) == Valuation(0));
    // v_p(ab) = v_p(a) + v_p(b) on random inputs.
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        BigInt a = BigInt(rng() % 100000) - 50000, b = BigInt(rng() % 100000) - 50000;
        CHECK(vp(a * b, 2) == vp(a, 2) + vp(b, 2));
        CHECK(vp(a * b, 3) == vp(a, 3) + vp(b, 3));
    }
}

TEST_CASE("Legendre's formula against naive factorial") {
    // Independent route: multiply out n! and take vp directly.
    for (std::int64_t p : {2, 3, 5, 7}) {
        BigInt fact = 1;
        for (std::uint64_t n = 1; n <= 200; ++n) {
            fact *= n;
            CHECK(legendre_factorial_valuation(n, p) == vp(fact, p));
        }
    }
    CHECK(legendre_factorial_valuation(0, 2) == Valuation(0));
    CHECK(legendre_factorial_valuation(10, 2) == Valuation(8));  // 10! = 3628800
}

TEST_CASE("central binomial valuation is the binary digit sum") {
    CHECK(central_binomial_valuation(0) == Valuation(0));
    for (std::uint64_t n = 1; n <= 300; ++n) {
        BigInt c = binomial(BigInt(2 * n), n);
        CHECK(central_binomial_valuation(n) == vp(c, 2));
        CHECK(central_binomial_valuation(n) == Valuation(digit_sum(n, 2).convert_to<std::uint64_t>()));
    }
}

TEST_CASE("Stirling recurrence against the explicit sum") {
    for (std::uint64_t n = 0; n <= 40; ++n)
        for (std::uint64_t k = 0; k <= n; ++k)
            CHECK(stirling(n, k) == stirling_explicit_sum(n, k));
    CHECK(stirling(5, 5) == 1);
    CHECK(stirling(5, 0) == 0);
    CHECK(stirling(6, 3) == 90);
}

TEST_CASE("closed forms of v2(S(n,k)) for k <= 4") {
    for (std::uint64_t k = 1; k <= 4; ++k)
        for (std::uint64_t n = k; n <= 400; ++n)
            CHECK(stirling_valuation_closed_form(n, k) == vp(stirling(n, k), 2));
    CHECK_THROWS_AS(stirling_valuation_closed_form(10, 5), std::invalid_argument);
    CHECK_THROWS_AS(stirling_valuation_closed_form(3, 4), std::invalid_argument);
}

TEST_CASE("mod_inverse and int_pow") {
    CHECK(int_pow(2, 10) == 1024);
    CHECK(int_pow(3, 0) == 1);
    std::mt19937_64 rng(11);
    BigInt m = int_pow(2, 20);
    for (int i = 0; i < 100; ++i) {
        BigInt a = 2 * BigInt(rng() % 1000000) + 1;  // odd, hence a unit mod 2^20
        CHECK(a * mod_inverse(a, m) % m == 1);
    }
    CHECK_THROWS_AS(mod_inverse(BigInt(4), BigInt(8)), std::invalid_argument);
}
