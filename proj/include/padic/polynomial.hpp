#pragma once

#include <map>
#include <span>
#include <string>
#include <utility>

#include "padic/core.hpp"

namespace padic {

/// The six coefficients of a x^2 + b y^2 + c x y + d x + e y + g.
struct QuadraticCoefficients {
    BigInt a, b, c, d, e, g;
};

/// Sparse integer-coefficient polynomial in x, or in x and y.
///
/// Monomials map exponent pairs (e_x, e_y) to nonzero coefficients; the
/// zero polynomial is the empty map. Canonical term order is graded
/// lexicographic with x before y, which fixes the printed form.
class Polynomial {
public:
    using Exponents = std::pair<unsigned, unsigned>;

    struct GradedLexGreater {
        bool operator()(const Exponents& a, const Exponents& b) const {
            unsigned da = a.first + a.second, db = b.first + b.second;
            if (da != db) return da > db;
            return a.first > b.first;
        }
    };
    using TermMap = std::map<Exponents, BigInt, GradedLexGreater>;

    static constexpr unsigned kMaxExponent = 64;

    Polynomial() : arity_(1) {}

    /// Parses the grammar
    ///   poly   := ['-'] term (('+'|'-') term)* ;
    ///   term   := factor (('*')? factor)* ;
    ///   factor := integer | variable ['^' integer] ;
    /// with variables x, y, n; 'n' is an alias for x and forces arity 1.
    /// Throws parse_error with the byte offset of the failure.
    static Polynomial parse(const std::string& text);

    /// Builds a x^2 + b y^2 + c x y + d x + e y + g directly (arity 2).
    static Polynomial quadratic(const QuadraticCoefficients& q);

    /// Single monomial coef * x^ex * y^ey.
    static Polynomial monomial(const BigInt& coef, unsigned ex, unsigned ey);

    int arity() const { return arity_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    unsigned total_degree() const;

    /// Same polynomial viewed with the given arity (1 -> 2 promotion only).
    Polynomial with_arity(int arity) const;

    BigInt eval_exact(std::span<const BigInt> point) const;

    /// eval_exact reduced mod modulus, with every intermediate reduced.
    BigInt eval_mod(std::span<const BigInt> point, const BigInt& modulus) const;

    /// Divided (Hasse) derivative of the given mixed order: the coefficient
    /// of h^t in f(X + h), always integer-coefficient. Order (0,0) is the
    /// identity.
    Polynomial hasse_derivative(Exponents order) const;

    QuadraticCoefficients extract_quadratic() const;

    std::string str() const;

    Polynomial operator-() const;
    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.arity_ == b.arity_ && a.terms_ == b.terms_;
    }

private:
    void add_term(Exponents e, const BigInt& coef);
    void recompute_arity();

    TermMap terms_;
    int arity_;
};

/// df/dx * dg/dy - df/dy * dg/dx. Accepts any mix of arities (an arity-1
/// polynomial simply has zero y-derivative).
Polynomial jacobian_determinant(const Polynomial& f, const Polynomial& g);

}  // namespace padic
