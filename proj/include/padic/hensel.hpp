#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "padic/polynomial.hpp"
#include "padic/valtree.hpp"
#include "padic/valuation.hpp"

namespace padic {

/// A 2x2 polynomial system (f, g) in the variables x, y. Components of
/// lower arity are promoted, so ("x^2*y+5", "x+1") is accepted as written.
struct PolySystem {
    Polynomial f, g;
    PolySystem(Polynomial f_, Polynomial g_);
};

/// The lifting condition at a point, in valuation arithmetic: v is the
/// minimum component valuation of the system, w the valuation of the
/// Jacobian determinant, and the condition 2v > w is the valuation form of
/// ||F(a)||^2 < |J_F(a)|_p. An exact system zero gives v = Infinity, which
/// satisfies the condition whenever w is finite.
struct HenselCondition {
    Valuation v;
    Valuation w;
    bool holds = false;
};

struct NewtonIterate {
    std::array<BigInt, 2> point;
    Valuation residual_valuation;  // clamped at the working precision
    unsigned precision = 0;        // working precision of this step
};

struct HenselCertificate {
    std::int64_t p = 2;
    std::array<BigInt, 2> base;
    HenselCondition condition;
    unsigned precision = 0;  // N: approximation and residues are mod p^N
    std::array<BigInt, 2> approximation;
    bool exact = false;  // both residuals are exactly zero integers
    std::vector<NewtonIterate> trace;
    std::string json() const;  // schema padic-hensel/1
};

HenselCondition hensel_condition(const PolySystem& sys, std::span<const BigInt> a,
                                 std::int64_t p);

/// Newton lifting per the adjugate/determinant inverse: works mod p^m with
/// m starting at max(w + 1, start_hint), doubling each step, capped at
/// N + w; stops once the residues vanish mod p^N. Throws lift_error when
/// the condition fails at the base point or the iteration does not
/// converge within the step cap.
HenselCertificate newton_lift(const PolySystem& sys, std::span<const BigInt> a, std::int64_t p,
                              unsigned target_precision, unsigned start_hint = 0);

enum class BranchVerdict { certified, unknown };

struct BranchCertificate {
    ResidueClass node;
    std::string constraint;  // the auxiliary line, e.g. "x+1"; empty when unknown
    BranchVerdict verdict = BranchVerdict::unknown;
    std::optional<HenselCertificate> certificate;
    std::string json() const;  // schema padic-hensel/1
};

/// Certifies a star node as the trace of a p-adic root of f: tries
/// auxiliary lines x = r and y = s through class members (signed lifts of
/// the representative, canonical order, bounded by trial_budget lines —
/// default 2 p^min(level,4)) and returns Certified for the first pair
/// (f, line) that lifts. Unknown means the search failed, not that no root
/// exists. Throws std::invalid_argument when the node is not a star node.
BranchCertificate certify_branch(const Polynomial& f, const ResidueClass& node, std::int64_t p,
                                 unsigned precision, std::size_t trial_budget = 0);

/// The first count base-p digits of each coordinate, least significant
/// first. Throws std::invalid_argument when the certificate's precision is
/// below count.
std::array<std::vector<int>, 2> digits_of_root(const HenselCertificate& cert, std::int64_t p,
                                               unsigned count);

}  // namespace padic
