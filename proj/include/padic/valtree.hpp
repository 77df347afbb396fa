#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "padic/polynomial.hpp"
#include "padic/valuation.hpp"

namespace padic {

/// A congruence class at level m: all tuples congruent to rep mod p^m.
/// Level 0 is the empty constraint (rep all zero, modulus 1).
struct ResidueClass {
    std::int64_t p = 2;
    unsigned level = 0;
    std::vector<BigInt> rep;  // one entry per variable, each in [0, p^level)

    BigInt modulus() const { return int_pow(p, level); }
    std::string str() const;
    std::string node_id() const;  // "n<level>_<rep joined by '_'>"
};

enum class LabelKind { star, terminal };

struct NodeLabel {
    LabelKind kind = LabelKind::star;
    Valuation valuation;  // meaningful for terminal labels only

    static NodeLabel star() { return {LabelKind::star, Valuation()}; }
    static NodeLabel terminal(Valuation v) { return {LabelKind::terminal, v}; }
    bool is_star() const { return kind == LabelKind::star; }
    bool is_terminal() const { return kind == LabelKind::terminal; }
    std::string str() const;
    friend bool operator==(const NodeLabel& a, const NodeLabel& b) {
        return a.kind == b.kind && (a.kind == LabelKind::star || a.valuation == b.valuation);
    }
};

/// Def 1.1 labels a class terminal only when the valuation is provably
/// constant on the whole class (ConstancyRule, via the integer Taylor
/// expansion); Def 1.6 labels purely by the congruence f(rep) mod p^level
/// (CongruenceRule).
enum class LabelMode { congruence, constancy };

struct TreeNode {
    ResidueClass cls;
    NodeLabel label;
    bool exact_zero = false;    // f vanishes exactly at the representative
    bool depth_capped = false;  // star node cut off at the build depth
    std::vector<TreeNode> children;
};

struct ValuationTree {
    std::int64_t p = 2;
    Polynomial poly;
    int arity = 1;
    unsigned depth = 0;
    LabelMode mode = LabelMode::congruence;
    TreeNode root;
    std::size_t node_count = 0;
};

struct BuildOptions {
    unsigned max_depth_univariate = 64;
    unsigned max_depth_bivariate = 24;
    std::size_t node_budget = 10'000'000;
};

/// Labels one residue class (level >= 1) under the chosen rule.
NodeLabel label_node(const Polynomial& f, const ResidueClass& cls, LabelMode mode);

/// Builds the complete tree to the given depth. Children are stored in
/// canonical order (lexicographic in the new digits). Star nodes at the
/// build depth carry depth_capped. Exceeding the node budget throws
/// resource_limit_error.
ValuationTree build_tree(const Polynomial& f, std::int64_t p, unsigned depth, LabelMode mode,
                         const BuildOptions& opts = {});

LabelMode default_mode_for_arity(int arity);

// ---- sample checking -------------------------------------------------------

struct SampleViolation {
    std::string node_id;
    std::vector<BigInt> member;
    std::string expected;
    std::string observed;
};

struct SampleReport {
    std::size_t terminal_nodes_checked = 0;
    std::size_t star_nodes_checked = 0;
    std::size_t samples_drawn = 0;
    std::vector<SampleViolation> violations;
    bool passed() const { return violations.empty(); }
};

/// Draws random members of every terminal class and re-derives the
/// valuation from scratch; re-checks the congruence at every star node.
/// Violations are report content, never exceptions.
SampleReport sample_check(const ValuationTree& tree, unsigned samples_per_leaf,
                          std::uint64_t seed);

// ---- closed-form detection -------------------------------------------------

struct ClosedFormReport {
    bool bounded = false;
    std::uint64_t bound = 0;  // valid when bounded: v_p(f) < bound everywhere
    unsigned depth = 0;
    std::vector<std::pair<ResidueClass, Valuation>> cases;  // terminal case analysis
    std::vector<ResidueClass> fringe;                       // surviving stars when unbounded
};

ClosedFormReport closed_form_report(const ValuationTree& tree);

// ---- export ----------------------------------------------------------------

enum class ExportFormat { ascii, dot, json };

std::string export_tree(const ValuationTree& tree, ExportFormat format);

// ---- Stirling class explorer -----------------------------------------------

struct StirlingLevelSummary {
    unsigned level = 0;
    std::size_t terminal_classes = 0;      // empirically terminal
    std::size_t non_terminal_classes = 0;  // empirically non-terminal
};

struct StirlingClassReport {
    std::uint64_t k = 0;
    std::int64_t p = 2;
    std::uint64_t n_max = 0;
    std::vector<StirlingLevelSummary> levels;
    bool stabilized = false;
    unsigned candidate_m0 = 0;         // least level from which the count is constant
    std::size_t candidate_mu = 0;      // the stable non-terminal count
    std::string str() const;
};

/// Empirical exploration of the non-terminal classes of v_p(S(n,k)): the
/// classification is by sampled members only, so "terminal" here always
/// means EMPIRICALLY terminal. Requires every class at max_level to have at
/// least 30 members below n_max (else insufficient_data_error).
StirlingClassReport stirling_class_explorer(std::uint64_t k, unsigned max_level,
                                            std::uint64_t n_max, std::int64_t p = 2);

}  // namespace padic
