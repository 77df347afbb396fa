#include "padic/core.hpp"

#include <mutex>
#include <vector>

#include "padic/errors.hpp"

namespace padic {
namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

bool miller_rabin(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // These bases are a deterministic witness set for n < 3.3e24.
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

}  // namespace

bool is_prime(std::int64_t p) {
    if (p >= (std::int64_t{1} << 31))
        throw std::invalid_argument("is_prime: moduli >= 2^31 are unsupported");
    if (p < 2) return false;
    return miller_rabin(static_cast<std::uint64_t>(p));
}

void require_prime(std::int64_t p) {
    if (!is_prime(p))
        throw std::invalid_argument("expected a prime >= 2, got " + std::to_string(p));
}

Valuation vp(const BigInt& n, std::int64_t p) {
    require_prime(p);
    if (n == 0) return Valuation::infinity();
    BigInt a = abs(n);
    BigInt q, r;
    std::uint64_t v = 0;
    const BigInt bp(p);
    for (;;) {
        divide_qr(a, bp, q, r);
        if (r != 0) break;
        a = q;
        ++v;
    }
    return Valuation(v);
}

BigInt digit_sum(const BigInt& n, std::int64_t p) {
    require_prime(p);
    if (n < 0) throw std::invalid_argument("digit_sum: n must be non-negative");
    BigInt a = n, q, r, s = 0;
    const BigInt bp(p);
    while (a != 0) {
        divide_qr(a, bp, q, r);
        s += r;
        a = q;
    }
    return s;
}

Valuation legendre_factorial_valuation(std::uint64_t n, std::int64_t p) {
    require_prime(p);
    // Route 1: sum of floor(n / p^k).
    BigInt floor_sum = 0;
    BigInt pk(p);
    while (pk <= n) {
        floor_sum += BigInt(n) / pk;
        pk *= p;
    }
    // Route 2: (n - s_p(n)) / (p - 1).
    BigInt digit_form = (BigInt(n) - digit_sum(BigInt(n), p)) / (p - 1);
    if (floor_sum != digit_form)
        throw internal_inconsistency_error("legendre_factorial_valuation: floor-sum and digit formulas disagree");
    return Valuation(floor_sum.convert_to<std::uint64_t>());
}

namespace {

// Central binomial coefficients C_n = binom(2n, n), extended on demand via
// C_{n+1} = C_n * 2(2n+1)/(n+1).
std::mutex g_cb_mutex;
std::vector<BigInt> g_cb_cache;

BigInt central_binomial(std::uint64_t n) {
    std::lock_guard<std::mutex> lock(g_cb_mutex);
    if (g_cb_cache.empty()) g_cb_cache.push_back(BigInt(1));
    while (g_cb_cache.size() <= n) {
        std::uint64_t m = g_cb_cache.size() - 1;
        g_cb_cache.push_back(g_cb_cache.back() * 2 * (2 * m + 1) / (m + 1));
    }
    return g_cb_cache[n];
}

}  // namespace

Valuation central_binomial_valuation(std::uint64_t n, std::uint64_t crosscheck_bound) {
    Valuation result(digit_sum(BigInt(n), 2).convert_to<std::uint64_t>());
    if (n <= crosscheck_bound) {
        Valuation direct = vp(central_binomial(n), 2);
        if (direct != result)
            throw internal_inconsistency_error("central_binomial_valuation: digit sum disagrees with direct factorization");
    }
    return result;
}

namespace {

std::mutex g_stirling_mutex;
std::vector<std::vector<BigInt>> g_stirling_rows;  // rows[n][k], k <= n

}  // namespace

BigInt stirling(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    if (n == 0) return 1;  // S(0,0)
    if (k == 0) return 0;
    std::lock_guard<std::mutex> lock(g_stirling_mutex);
    if (g_stirling_rows.empty()) g_stirling_rows.push_back({BigInt(1)});
    while (g_stirling_rows.size() <= n) {
        std::uint64_t m = g_stirling_rows.size();
        const auto& prev = g_stirling_rows.back();
        std::vector<BigInt> row(m + 1);
        row[0] = 0;
        for (std::uint64_t j = 1; j <= m; ++j) {
            BigInt s = (j <= m - 1) ? BigInt(j) * prev[j] : BigInt(0);
            if (j - 1 <= m - 1) s += prev[j - 1];
            row[j] = s;
        }
        g_stirling_rows.push_back(std::move(row));
    }
    return g_stirling_rows[n][k];
}

BigInt binomial(const BigInt& n, std::uint64_t k) {
    BigInt r = 1;
    for (std::uint64_t i = 0; i < k; ++i) {
        r *= n - i;
        r /= static_cast<std::uint64_t>(i + 1);
    }
    return r;
}

BigInt stirling_explicit_sum(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    if (n == 0) return 1;
    if (k == 0) return 0;
    BigInt num = 0;
    for (std::uint64_t i = 0; i <= k; ++i) {
        BigInt term = binomial(BigInt(k), i) * pow(BigInt(k - i), static_cast<unsigned>(n));
        num += (i % 2 == 0) ? term : -term;
    }
    BigInt kfact = 1;
    for (std::uint64_t i = 2; i <= k; ++i) kfact *= i;
    return num / kfact;
}

Valuation stirling_valuation_closed_form(std::uint64_t n, std::uint64_t k) {
    if (k < 1 || k > 4)
        throw std::invalid_argument("stirling_valuation_closed_form: k must be in 1..4");
    if (n < k)
        throw std::invalid_argument("stirling_valuation_closed_form: requires n >= k");
    if (k <= 2) return Valuation(0);
    if (k == 3) return Valuation(n % 2 == 0 ? 1 : 0);
    return Valuation(n % 2 == 1 ? 1 : 0);
}

BigInt int_pow(std::int64_t p, std::uint64_t e) {
    return pow(BigInt(p), static_cast<unsigned>(e));
}

BigInt mod_inverse(const BigInt& a, const BigInt& m) {
    BigInt r0 = m, r1 = ((a % m) + m) % m;
    BigInt t0 = 0, t1 = 1;
    while (r1 != 0) {
        BigInt q = r0 / r1;
        BigInt r2 = r0 - q * r1;
        BigInt t2 = t0 - q * t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if (r0 != 1) throw std::invalid_argument("mod_inverse: arguments are not coprime");
    return ((t0 % m) + m) % m;
}

}  // namespace padic
