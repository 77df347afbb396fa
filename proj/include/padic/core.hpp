#pragma once

#include <cstdint>

#include <boost/multiprecision/cpp_int.hpp>

#include "padic/valuation.hpp"

namespace padic {

using BigInt = boost::multiprecision::cpp_int;

/// Deterministic Miller-Rabin for p < 2^31; larger inputs are rejected
/// with std::invalid_argument (the trees here only need small primes).
bool is_prime(std::int64_t p);

/// Throws std::invalid_argument unless p is a prime < 2^31.
void require_prime(std::int64_t p);

/// p-adic valuation of n: Infinity for n = 0, otherwise the exact exponent
/// of p in n. The sign of n is ignored.
Valuation vp(const BigInt& n, std::int64_t p);

/// Sum of base-p digits of n >= 0.
BigInt digit_sum(const BigInt& n, std::int64_t p);

/// v_p(n!), computed by both the floor-sum and the digit-sum formula.
/// The two routes are compared on every call; a mismatch throws
/// internal_inconsistency_error.
Valuation legendre_factorial_valuation(std::uint64_t n, std::int64_t p);

/// v_2(binom(2n, n)), which equals the binary digit sum of n. For
/// n <= crosscheck_bound the central binomial coefficient is also computed
/// exactly and the two results compared.
Valuation central_binomial_valuation(std::uint64_t n, std::uint64_t crosscheck_bound = 2000);

/// Stirling number of the second kind via the recurrence
/// S(n,k) = S(n-1,k-1) + k*S(n-1,k), with memoized rows. Returns 0 outside
/// 0 <= k <= n (except S(0,0) = 1).
BigInt stirling(std::uint64_t n, std::uint64_t k);

/// Independent route: S(n,k) = (1/k!) * sum_i (-1)^i binom(k,i) (k-i)^n.
BigInt stirling_explicit_sum(std::uint64_t n, std::uint64_t k);

/// Closed forms of v_2(S(n,k)) for k in 1..4:
/// k in {1,2} -> 0; k = 3 -> [n even]; k = 4 -> [n odd].
Valuation stirling_valuation_closed_form(std::uint64_t n, std::uint64_t k);

/// binom(n, k) over the integers.
BigInt binomial(const BigInt& n, std::uint64_t k);

/// p^e as a BigInt.
BigInt int_pow(std::int64_t p, std::uint64_t e);

/// Inverse of a modulo m (gcd(a, m) must be 1).
BigInt mod_inverse(const BigInt& a, const BigInt& m);

}  // namespace padic
