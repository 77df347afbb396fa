#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "padic/polynomial.hpp"
#include "padic/valtree.hpp"

namespace padic {

/// Everything the child classifier needs about a star node of the tree of
/// a x^2 + b y^2 + c x y + d x + e y + g at level k: the parities of c, d,
/// e, the level-1 digits (i0, j0) of the node's class, and the carry bit
/// alpha with f(rep) = alpha * 2^k mod 2^(k+1).
struct SplitContext {
    int c = 0, d = 0, e = 0;  // parities
    int i0 = 0, j0 = 0;       // root residues of the node's class
    int alpha = 0;
};

/// One row of the splitting table: which child offsets terminate for which
/// coefficient parities and root residues (stated for alpha = 0; alpha = 1
/// swaps star and terminal).
struct SplitRule {
    int serial;
    int ik, jk;
    int c, d, e;          // 0, 1, or -1 for "any parity"
    unsigned i0j0_mask;   // bit (i0*2 + j0) set when the pair is admissible; 0b1111 = any
    bool star;            // label for alpha = 0
};

/// The 25-row splitting table for the general quadratic.
std::span<const SplitRule> split_table();

struct Classification {
    bool star = false;
    int parity = 0;               // alpha + ik(c j0 + d) + jk(c i0 + e) mod 2
    std::vector<int> table_rows;  // serial numbers of the matching rows
};

/// Classifies one child offset by the parity formula
///   L = alpha + ik(c j0 + d) + jk(c i0 + e) mod 2,
/// star iff L = 0, terminal-at-the-current-level iff L = 1. The matching
/// table rows are attached for traceability.
Classification classify_child(const SplitContext& ctx, int ik, int jk,
                              std::span<const SplitRule> table = split_table());

/// The carry bit alpha of a star node: (f(rep) / 2^level) mod 2, with
/// alpha = 0 when f(rep) = 0 exactly. Throws std::invalid_argument when the
/// node is not a star node (f(rep) != 0 mod 2^level).
int eq_residue_check(const Polynomial& f, const ResidueClass& node);

// ---- reports ----------------------------------------------------------------

struct TheoremFailure {
    std::string polynomial;
    std::string node;
    unsigned level = 0;
    std::string claimed;
    std::string observed;
};

struct TheoremReport {
    std::string theorem_id;
    std::string params;
    unsigned depth = 0;
    std::size_t instances_checked = 0;  // polynomials or theorem nodes exercised
    std::size_t nodes_checked = 0;
    std::size_t nodes_skipped = 0;      // hypothesis nodes outside the uniform cases
    std::vector<TheoremFailure> failures;
    bool passed() const { return failures.empty(); }
    std::string json() const;  // schema padic-theoremreport/1
    std::string str() const;
};

/// Cross-validates the parity formula against every table row, for both
/// values of alpha. Discrepancies are reported against the row serials.
TheoremReport validate_split_table(std::span<const SplitRule> table = split_table());

/// Exhaustive check of the splitting classifier: for every quadratic with
/// all six coefficients in [lo, hi], walks the congruence tree to the given
/// depth and compares the classifier's four child predictions (formula and
/// table) with the labels obtained by direct modular evaluation.
TheoremReport verify_table_5_1(std::int64_t lo, std::int64_t hi, unsigned depth,
                               std::span<const SplitRule> table = split_table());

struct Theorem41Params {
    unsigned n = 0, m = 0;
    std::int64_t alpha = 1, beta = 1;  // odd
};

/// Verifies the per-theorem split pattern against the actual tree, for
/// theorem_id in {"1.3", "2.2", "2.4", "2.6", "4.1", "6.1"}. params is only
/// consulted for 4.1.
TheoremReport check_theorem(const std::string& theorem_id, unsigned depth,
                            const Theorem41Params& params = {});

}  // namespace padic
