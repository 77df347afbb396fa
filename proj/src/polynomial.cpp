#include "padic/polynomial.hpp"

#include <cctype>
#include <sstream>

#include "padic/errors.hpp"

namespace padic {
namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t a, unsigned e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

struct Parser {
    const std::string& s;
    std::size_t i = 0;
    bool seen_n = false;
    bool seen_y = false;

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }

    bool at_end() {
        skip_ws();
        return i >= s.size();
    }

    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }

    [[noreturn]] void fail(const std::string& msg) { throw parse_error(msg, i); }

    BigInt integer() {
        skip_ws();
        std::size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == start) fail("expected an integer");
        return BigInt(s.substr(start, i - start));
    }

    unsigned exponent() {
        BigInt e = integer();
        if (e > Polynomial::kMaxExponent)
            throw parse_error("exponent exceeds the cap of 64", i);
        return e.convert_to<unsigned>();
    }

    // factor := integer | variable ['^' integer]
    // Multiplies the running term (coef, ex, ey) in place.
    void factor(BigInt& coef, unsigned& ex, unsigned& ey) {
        char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c))) {
            coef *= integer();
            return;
        }
        unsigned* slot = nullptr;
        if (c == 'x') {
            slot = &ex;
        } else if (c == 'n') {
            seen_n = true;
            slot = &ex;
        } else if (c == 'y') {
            seen_y = true;
            slot = &ey;
        } else if (std::isalpha(static_cast<unsigned char>(c))) {
            fail(std::string("unknown variable '") + c + "'");
        } else {
            fail("expected an integer or a variable");
        }
        ++i;
        unsigned e = 1;
        if (peek() == '^') {
            ++i;
            e = exponent();
        }
        if (*slot + e > Polynomial::kMaxExponent)
            fail("exponent exceeds the cap of 64");
        *slot += e;
    }

    bool starts_factor() {
        char c = peek();
        return std::isdigit(static_cast<unsigned char>(c)) ||
               std::isalpha(static_cast<unsigned char>(c));
    }

    void term(Polynomial& out, bool negative) {
        BigInt coef = negative ? -1 : 1;
        unsigned ex = 0, ey = 0;
        factor(coef, ex, ey);
        for (;;) {
            if (peek() == '*') {
                ++i;
                factor(coef, ex, ey);
            } else if (starts_factor()) {
                factor(coef, ex, ey);  // implicit multiplication
            } else {
                break;
            }
        }
        out = out + Polynomial::monomial(coef, ex, ey);
    }
};

}  // namespace

Polynomial Polynomial::parse(const std::string& text) {
    Parser p{text};
    Polynomial result;
    bool negative = false;
    if (p.peek() == '-') {
        ++p.i;
        negative = true;
    }
    p.term(result, negative);
    while (!p.at_end()) {
        char c = p.peek();
        if (c == '+' || c == '-') {
            ++p.i;
            p.term(result, c == '-');
        } else {
            p.fail("expected '+' or '-'");
        }
    }
    if (p.seen_n && p.seen_y) throw parse_error("'n' (univariate alias) cannot be mixed with 'y'", p.i);
    if (p.seen_y) result.arity_ = 2;
    return result;
}

Polynomial Polynomial::quadratic(const QuadraticCoefficients& q) {
    Polynomial f;
    f.add_term({2, 0}, q.a);
    f.add_term({0, 2}, q.b);
    f.add_term({1, 1}, q.c);
    f.add_term({1, 0}, q.d);
    f.add_term({0, 1}, q.e);
    f.add_term({0, 0}, q.g);
    f.arity_ = 2;
    return f;
}

Polynomial Polynomial::monomial(const BigInt& coef, unsigned ex, unsigned ey) {
    Polynomial f;
    f.add_term({ex, ey}, coef);
    f.recompute_arity();
    return f;
}

void Polynomial::add_term(Exponents e, const BigInt& coef) {
    if (coef == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, coef);
    } else {
        it->second += coef;
        if (it->second == 0) terms_.erase(it);
    }
}

void Polynomial::recompute_arity() {
    arity_ = 1;
    for (const auto& [e, c] : terms_)
        if (e.second > 0) arity_ = 2;
}

unsigned Polynomial::total_degree() const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e.first + e.second);
    return d;
}

Polynomial Polynomial::with_arity(int arity) const {
    if (arity != 1 && arity != 2) throw std::invalid_argument("arity must be 1 or 2");
    if (arity == 1 && arity_ == 2)
        throw std::invalid_argument("cannot view a bivariate polynomial as univariate");
    Polynomial f = *this;
    f.arity_ = arity;
    return f;
}

BigInt Polynomial::eval_exact(std::span<const BigInt> point) const {
    if (point.size() != static_cast<std::size_t>(arity_))
        throw std::invalid_argument("eval_exact: point arity mismatch");
    BigInt x = point[0];
    BigInt y = arity_ == 2 ? point[1] : BigInt(0);
    BigInt acc = 0;
    for (const auto& [e, c] : terms_) {
        BigInt t = c;
        if (e.first) t *= pow(x, e.first);
        if (e.second) t *= pow(y, e.second);
        acc += t;
    }
    return acc;
}

BigInt Polynomial::eval_mod(std::span<const BigInt> point, const BigInt& modulus) const {
    if (point.size() != static_cast<std::size_t>(arity_))
        throw std::invalid_argument("eval_mod: point arity mismatch");
    if (modulus < 2) throw std::invalid_argument("eval_mod: modulus must be >= 2");
    if (modulus <= std::numeric_limits<std::uint64_t>::max()) {
        // 64-bit fast path; tree construction lives here.
        const std::uint64_t m = modulus.convert_to<std::uint64_t>();
        auto reduce = [&](const BigInt& v) {
            return (((v % modulus) + modulus) % modulus).convert_to<std::uint64_t>();
        };
        std::uint64_t x = reduce(point[0]);
        std::uint64_t y = arity_ == 2 ? reduce(point[1]) : 0;
        std::uint64_t acc = 0;
        for (const auto& [e, c] : terms_) {
            std::uint64_t t = reduce(c);
            if (e.first) t = mulmod_u64(t, powmod_u64(x, e.first, m), m);
            if (e.second) t = mulmod_u64(t, powmod_u64(y, e.second, m), m);
            acc = (acc + t) % m;
        }
        return BigInt(acc);
    }
    auto reduce = [&](const BigInt& v) { return BigInt(((v % modulus) + modulus) % modulus); };
    auto powmod = [&](BigInt base, unsigned exp) {
        BigInt r = 1;
        base %= modulus;
        while (exp) {
            if (exp & 1) r = r * base % modulus;
            base = base * base % modulus;
            exp >>= 1;
        }
        return r;
    };
    BigInt x = reduce(point[0]);
    BigInt y = arity_ == 2 ? reduce(point[1]) : BigInt(0);
    BigInt acc = 0;
    for (const auto& [e, c] : terms_) {
        BigInt t = reduce(c);
        if (e.first) t = t * powmod(x, e.first) % modulus;
        if (e.second) t = t * powmod(y, e.second) % modulus;
        acc = (acc + t) % modulus;
    }
    return acc;
}

Polynomial Polynomial::hasse_derivative(Exponents order) const {
    Polynomial out;
    for (const auto& [e, c] : terms_) {
        if (e.first < order.first || e.second < order.second) continue;
        BigInt coef = c * binomial(BigInt(e.first), order.first) *
                      binomial(BigInt(e.second), order.second);
        out.add_term({e.first - order.first, e.second - order.second}, coef);
    }
    out.arity_ = arity_;
    return out;
}

QuadraticCoefficients Polynomial::extract_quadratic() const {
    if (total_degree() > 2)
        throw std::invalid_argument("extract_quadratic: total degree exceeds 2");
    QuadraticCoefficients q{0, 0, 0, 0, 0, 0};
    for (const auto& [e, c] : terms_) {
        if (e == Exponents{2, 0}) q.a = c;
        else if (e == Exponents{0, 2}) q.b = c;
        else if (e == Exponents{1, 1}) q.c = c;
        else if (e == Exponents{1, 0}) q.d = c;
        else if (e == Exponents{0, 1}) q.e = c;
        else q.g = c;
    }
    return q;
}

std::string Polynomial::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        BigInt mag = abs(c);
        if (first) {
            if (c < 0) os << '-';
        } else {
            os << (c < 0 ? '-' : '+');
        }
        first = false;
        bool printed = false;
        if (mag != 1 || (e.first == 0 && e.second == 0)) {
            os << mag;
            printed = true;
        }
        auto var = [&](char name, unsigned exp) {
            if (exp == 0) return;
            if (printed) os << '*';
            os << name;
            if (exp > 1) os << '^' << exp;
            printed = true;
        };
        var('x', e.first);
        var('y', e.second);
    }
    return os.str();
}

Polynomial Polynomial::operator-() const {
    Polynomial out;
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
    out.arity_ = arity_;
    return out;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    Polynomial out = a;
    for (const auto& [e, c] : b.terms_) out.add_term(e, c);
    out.arity_ = std::max(a.arity_, b.arity_);
    return out;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial out;
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_)
            out.add_term({ea.first + eb.first, ea.second + eb.second}, ca * cb);
    out.recompute_arity();
    out.arity_ = std::max({out.arity_, a.arity_, b.arity_});
    return out;
}

Polynomial jacobian_determinant(const Polynomial& f, const Polynomial& g) {
    Polynomial fx = f.hasse_derivative({1, 0});
    Polynomial fy = f.hasse_derivative({0, 1});
    Polynomial gx = g.hasse_derivative({1, 0});
    Polynomial gy = g.hasse_derivative({0, 1});
    return fx * gy - fy * gx;
}

}  // namespace padic
