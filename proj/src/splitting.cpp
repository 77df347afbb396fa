#include "padic/splitting.hpp"

#include <algorithm>
#include <sstream>

#include <nlohmann/json.hpp>

#include "padic/errors.hpp"

namespace padic {
namespace {

constexpr unsigned kAnyPair = 0b1111;

// Admissible-(i0,j0) masks use bit (i0*2 + j0). Rows 10 and 11 group the
// residue pairs by i0: for offset (0,1) the parity congruence is
// L = c*i0 + e, independent of j0 (symmetric to rows 4/5, which group
// by j0 for offset (1,0)).
constexpr SplitRule kTable[] = {
    {1, 0, 0, -1, -1, -1, kAnyPair, true},
    {2, 1, 0, 1, 1, -1, 0b0101, false},
    {3, 1, 0, 1, 1, -1, 0b1010, true},
    {4, 1, 0, 1, 0, -1, 0b0101, true},
    {5, 1, 0, 1, 0, -1, 0b1010, false},
    {6, 1, 0, 0, 1, -1, kAnyPair, false},
    {7, 1, 0, 0, 0, -1, kAnyPair, true},
    {8, 0, 1, 1, -1, 1, 0b0011, false},
    {9, 0, 1, 1, -1, 1, 0b1100, true},
    {10, 0, 1, 1, -1, 0, 0b0011, true},
    {11, 0, 1, 1, -1, 0, 0b1100, false},
    {12, 0, 1, 0, -1, 1, kAnyPair, false},
    {13, 0, 1, 0, -1, 0, kAnyPair, true},
    {14, 1, 1, 1, 1, 0, 0b1001, false},
    {15, 1, 1, 1, 1, 0, 0b0110, true},
    {16, 1, 1, 1, 1, 1, 0b1001, true},
    {17, 1, 1, 1, 1, 1, 0b0110, false},
    {18, 1, 1, 1, 0, 0, 0b1001, true},
    {19, 1, 1, 1, 0, 0, 0b0110, false},
    {20, 1, 1, 1, 0, 1, 0b1001, false},
    {21, 1, 1, 1, 0, 1, 0b0110, true},
    {22, 1, 1, 0, 1, 0, kAnyPair, false},
    {23, 1, 1, 0, 1, 1, kAnyPair, true},
    {24, 1, 1, 0, 0, 0, kAnyPair, true},
    {25, 1, 1, 0, 0, 1, kAnyPair, false},
};

bool rule_matches(const SplitRule& r, const SplitContext& ctx, int ik, int jk) {
    if (r.ik != ik || r.jk != jk) return false;
    if (r.c >= 0 && r.c != ctx.c) return false;
    if (r.d >= 0 && r.d != ctx.d) return false;
    if (r.e >= 0 && r.e != ctx.e) return false;
    return (r.i0j0_mask >> (ctx.i0 * 2 + ctx.j0)) & 1u;
}

}  // namespace

std::span<const SplitRule> split_table() { return kTable; }

Classification classify_child(const SplitContext& ctx, int ik, int jk,
                              std::span<const SplitRule> table) {
    for (int v : {ctx.c, ctx.d, ctx.e, ctx.i0, ctx.j0, ctx.alpha, ik, jk})
        if (v != 0 && v != 1) throw std::invalid_argument("classify_child: inputs must be bits");
    Classification out;
    out.parity = (ctx.alpha + ik * (ctx.c * ctx.j0 + ctx.d) + jk * (ctx.c * ctx.i0 + ctx.e)) % 2;
    out.star = out.parity == 0;
    for (const auto& r : table)
        if (rule_matches(r, ctx, ik, jk)) out.table_rows.push_back(r.serial);
    return out;
}

int eq_residue_check(const Polynomial& f, const ResidueClass& node) {
    BigInt value = f.eval_exact(node.rep);
    if (value == 0) return 0;
    BigInt modulus = node.modulus();
    if (value % modulus != 0)
        throw std::invalid_argument("eq_residue_check: node is not a star node");
    BigInt q = value / modulus;
    return ((q % node.p) + node.p).convert_to<std::int64_t>() % node.p;
}

// ---- reports ----------------------------------------------------------------

std::string TheoremReport::json() const {
    nlohmann::ordered_json j;
    j["schema"] = "padic-theoremreport/1";
    j["theorem_id"] = theorem_id;
    j["params"] = params;
    j["depth"] = depth;
    j["instances_checked"] = instances_checked;
    j["nodes_checked"] = nodes_checked;
    j["nodes_skipped"] = nodes_skipped;
    auto fails = nlohmann::ordered_json::array();
    for (const auto& f : failures) {
        fails.push_back({{"polynomial", f.polynomial},
                         {"node", f.node},
                         {"level", f.level},
                         {"claimed", f.claimed},
                         {"observed", f.observed}});
    }
    j["failures"] = fails;
    return j.dump(2) + "\n";
}

std::string TheoremReport::str() const {
    std::ostringstream os;
    os << "theorem " << theorem_id << " (depth " << depth;
    if (!params.empty()) os << ", " << params;
    os << "): " << (passed() ? "PASS" : "FAIL") << ", " << instances_checked << " instances, "
       << nodes_checked << " nodes checked";
    if (nodes_skipped) os << ", " << nodes_skipped << " skipped";
    os << '\n';
    for (std::size_t i = 0; i < failures.size() && i < 10; ++i) {
        const auto& f = failures[i];
        os << "  FAIL " << f.polynomial << " at " << f.node << " (level " << f.level
           << "): claimed " << f.claimed << ", observed " << f.observed << '\n';
    }
    if (failures.size() > 10) os << "  ... " << failures.size() - 10 << " more\n";
    return os.str();
}

TheoremReport validate_split_table(std::span<const SplitRule> table) {
    TheoremReport report;
    report.theorem_id = "5.1-table";
    for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d)
            for (int e = 0; e < 2; ++e)
                for (int i0 = 0; i0 < 2; ++i0)
                    for (int j0 = 0; j0 < 2; ++j0)
                        for (int alpha = 0; alpha < 2; ++alpha)
                            for (const auto& [ik, jk] :
                                 {std::pair{0, 0}, {0, 1}, {1, 0}, {1, 1}}) {
                                SplitContext ctx{c, d, e, i0, j0, alpha};
                                ++report.instances_checked;
                                int L = (alpha + ik * (c * j0 + d) + jk * (c * i0 + e)) % 2;
                                bool formula_star = L == 0;
                                int matches = 0;
                                for (const auto& r : table) {
                                    if (!rule_matches(r, ctx, ik, jk)) continue;
                                    ++matches;
                                    bool table_star = alpha == 0 ? r.star : !r.star;
                                    ++report.nodes_checked;
                                    if (table_star != formula_star) {
                                        std::ostringstream node;
                                        node << "row " << r.serial << " ctx(c=" << c << ",d=" << d
                                             << ",e=" << e << ",i0=" << i0 << ",j0=" << j0
                                             << ",alpha=" << alpha << ") offset(" << ik << ','
                                             << jk << ')';
                                        report.failures.push_back(
                                            {"table-vs-formula", node.str(), 0,
                                             table_star ? "*" : "k", formula_star ? "*" : "k"});
                                    }
                                }
                                if (matches == 0)
                                    report.failures.push_back(
                                        {"table-vs-formula", "no matching row", 0, "coverage",
                                         "uncovered combination"});
                            }
    return report;
}

namespace {

void record_failure(TheoremReport& report, const std::string& poly, const std::string& node,
                    unsigned level, const std::string& claimed, const std::string& observed) {
    if (report.failures.size() < 1000)
        report.failures.push_back({poly, node, level, claimed, observed});
}

// Star/terminal status by direct modular evaluation; the oracle side of the
// table verification.
struct QuadWalker {
    const Polynomial& f;
    std::span<const SplitRule> table;
    SplitContext base;  // c, d, e parities
    unsigned depth;
    TheoremReport& report;
    std::array<BigInt, 2> pt;

    bool is_star(const BigInt& x, const BigInt& y, unsigned level) {
        pt[0] = x;
        pt[1] = y;
        return f.eval_mod(pt, int_pow(2, level)) == 0;
    }

    void visit_star(const BigInt& x, const BigInt& y, unsigned k) {
        ++report.nodes_checked;
        SplitContext ctx = base;
        ctx.i0 = BigInt(x % 2).convert_to<int>();
        ctx.j0 = BigInt(y % 2).convert_to<int>();
        ctx.alpha = eq_residue_check(f, ResidueClass{2, k, {x, y}});
        const BigInt step = int_pow(2, k);
        for (int ik = 0; ik < 2; ++ik) {
            for (int jk = 0; jk < 2; ++jk) {
                BigInt cx = x + step * ik, cy = y + step * jk;
                bool actual_star = is_star(cx, cy, k + 1);
                Classification cls = classify_child(ctx, ik, jk, table);
                std::ostringstream node;
                if (cls.star != actual_star) {
                    node << "(" << cx << ',' << cy << ") mod 2^" << k + 1 << " (formula)";
                    record_failure(report, f.str(), node.str(), k + 1, cls.star ? "*" : "k",
                                   actual_star ? "*" : "k");
                }
                if (cls.table_rows.empty()) {
                    record_failure(report, f.str(), "no matching table row", k + 1, "coverage",
                                   "uncovered");
                }
                for (int serial : cls.table_rows) {
                    bool row_star_alpha0 = false;
                    for (const auto& rr : table)
                        if (rr.serial == serial) row_star_alpha0 = rr.star;
                    bool table_star = ctx.alpha == 0 ? row_star_alpha0 : !row_star_alpha0;
                    if (table_star != actual_star) {
                        std::ostringstream tn;
                        tn << "(" << cx << ',' << cy << ") mod 2^" << k + 1 << " (table row "
                           << serial << ")";
                        record_failure(report, f.str(), tn.str(), k + 1, table_star ? "*" : "k",
                                       actual_star ? "*" : "k");
                    }
                }
                if (actual_star && k + 1 < depth) visit_star(cx, cy, k + 1);
            }
        }
    }

    void run() {
        for (int i0 = 0; i0 < 2; ++i0)
            for (int j0 = 0; j0 < 2; ++j0)
                if (is_star(BigInt(i0), BigInt(j0), 1) && depth > 1)
                    visit_star(BigInt(i0), BigInt(j0), 1);
    }
};

}  // namespace

TheoremReport verify_table_5_1(std::int64_t lo, std::int64_t hi, unsigned depth,
                               std::span<const SplitRule> table) {
    if (lo > hi) throw std::invalid_argument("verify_table_5_1: empty range");
    if (depth > 12) throw resource_limit_error("verify_table_5_1: depth budget is 12");
    const std::int64_t span_size = hi - lo + 1;
    double count = 1;
    for (int i = 0; i < 6; ++i) count *= static_cast<double>(span_size);
    if (count > 2e6) throw resource_limit_error("verify_table_5_1: coefficient grid too large");

    TheoremReport report;
    report.theorem_id = "5.1";
    report.depth = depth;
    {
        std::ostringstream os;
        os << "coefficients in [" << lo << "," << hi << "]^6";
        report.params = os.str();
    }
    QuadraticCoefficients q;
    for (std::int64_t a = lo; a <= hi; ++a)
        for (std::int64_t b = lo; b <= hi; ++b)
            for (std::int64_t c = lo; c <= hi; ++c)
                for (std::int64_t d = lo; d <= hi; ++d)
                    for (std::int64_t e = lo; e <= hi; ++e)
                        for (std::int64_t g = lo; g <= hi; ++g) {
                            q = {a, b, c, d, e, g};
                            Polynomial f = Polynomial::quadratic(q);
                            ++report.instances_checked;
                            SplitContext base;
                            base.c = static_cast<int>(((c % 2) + 2) % 2);
                            base.d = static_cast<int>(((d % 2) + 2) % 2);
                            base.e = static_cast<int>(((e % 2) + 2) % 2);
                            QuadWalker walker{f, table, base, depth, report};
                            walker.run();
                        }
    return report;
}

// ---- per-theorem checks ------------------------------------------------------

namespace {

std::string label_str(const NodeLabel& l) { return l.str(); }

// Children of star nodes in a congruence tree, with the expected
// star/terminal(k) pattern counted.
void check_star_split_counts(const ValuationTree& tree, TheoremReport& report,
                             int expected_stars) {
    auto visit = [&](auto&& self, const TreeNode& node) -> void {
        if (node.cls.level >= 1 && node.label.is_star() && !node.children.empty()) {
            ++report.nodes_checked;
            int stars = 0, terms = 0;
            bool bad_value = false;
            for (const auto& child : node.children) {
                if (child.label.is_star()) ++stars;
                else {
                    ++terms;
                    if (child.label.valuation != Valuation(node.cls.level)) bad_value = true;
                }
            }
            if (stars != expected_stars || bad_value) {
                std::ostringstream claimed, observed;
                claimed << expected_stars << " star + " << 4 - expected_stars << " terminal("
                        << node.cls.level << ")";
                observed << stars << " star + " << terms << " terminal";
                record_failure(report, tree.poly.str(), node.cls.str(), node.cls.level,
                               claimed.str(), observed.str());
            }
        }
        for (const auto& child : node.children) self(self, child);
    };
    visit(visit, tree.root);
}

void check_root_pattern(const ValuationTree& tree, TheoremReport& report, int expected_stars,
                        std::uint64_t terminal_value) {
    ++report.nodes_checked;
    int stars = 0;
    bool bad_value = false;
    for (const auto& child : tree.root.children) {
        if (child.label.is_star()) ++stars;
        else if (child.label.valuation != Valuation(terminal_value)) bad_value = true;
    }
    if (stars != expected_stars || bad_value) {
        std::ostringstream claimed, observed;
        claimed << expected_stars << " star + " << 4 - expected_stars << " terminal("
                << terminal_value << ")";
        observed << stars << " star";
        record_failure(report, tree.poly.str(), "root", 0, claimed.str(), observed.str());
    }
}

TheoremReport check_2_4(unsigned depth) {
    TheoremReport report;
    report.theorem_id = "2.4";
    report.depth = depth;
    ValuationTree tree =
        build_tree(Polynomial::parse("x^2+y^2+x*y+x+y"), 2, depth, LabelMode::congruence);
    report.instances_checked = 1;
    check_root_pattern(tree, report, 3, 0);
    check_star_split_counts(tree, report, 2);
    return report;
}

TheoremReport check_6_1(unsigned depth) {
    TheoremReport report;
    report.theorem_id = "6.1";
    report.depth = depth;
    ValuationTree tree = build_tree(Polynomial::parse("x^2*y+5"), 2, depth, LabelMode::congruence);
    report.instances_checked = 1;
    check_root_pattern(tree, report, 1, 0);
    check_star_split_counts(tree, report, 2);
    return report;
}

TheoremReport check_2_6(unsigned depth) {
    TheoremReport report;
    report.theorem_id = "2.6";
    report.depth = depth;
    Polynomial f = Polynomial::parse("x*y+x+y+1");
    ValuationTree tree = build_tree(f, 2, depth, LabelMode::congruence);
    report.instances_checked = 1;
    check_root_pattern(tree, report, 3, 0);
    auto visit = [&](auto&& self, const TreeNode& node) -> void {
        if (node.cls.level >= 1 && node.label.is_star() && !node.children.empty()) {
            ++report.nodes_checked;
            const unsigned k = node.cls.level;
            int i0 = BigInt(node.cls.rep[0] % 2).convert_to<int>();
            int j0 = BigInt(node.cls.rep[1] % 2).convert_to<int>();
            int alpha = eq_residue_check(f, node.cls);
            int stars = 0, terms_at_k = 0;
            for (const auto& child : node.children) {
                if (child.label.is_star()) ++stars;
                else if (child.label.valuation == Valuation(k)) ++terms_at_k;
            }
            std::string observed = std::to_string(stars) + " star + " +
                                   std::to_string(terms_at_k) + " terminal(" + std::to_string(k) +
                                   ")";
            if (i0 == 1 && j0 == 1) {
                // All four children share the fate decided by alpha.
                bool ok = alpha == 0 ? stars == 4 : terms_at_k == 4;
                if (!ok)
                    record_failure(report, f.str(), node.cls.str(), k,
                                   alpha == 0 ? "4 star (alpha=0)" : "4 terminal (alpha=1)",
                                   observed);
            } else if (stars != 2 || terms_at_k != 2) {
                record_failure(report, f.str(), node.cls.str(), k, "2 star + 2 terminal",
                               observed);
            }
        }
        for (const auto& child : node.children) self(self, child);
    };
    visit(visit, tree.root);
    return report;
}

// Descent pattern for a x^2 + b y^2 (a = 2^n alpha, b = 2^m beta). The
// terminal value of the (1,1) / (1,0) / (0,1) descents is computed from the
// exact least power of 2 in a*u^2 + b*w^2 rather than the uniform
// 2k + gamma shift: the two agree when n = m and v2(alpha+beta) = 1, and the
// exact form is what the trees actually realize.
TheoremReport check_4_1(unsigned depth, const Theorem41Params& params) {
    if (params.alpha % 2 == 0 || params.beta % 2 == 0 || params.alpha <= 0 || params.beta <= 0)
        throw std::invalid_argument("check_theorem(4.1): alpha and beta must be odd positive");
    TheoremReport report;
    report.theorem_id = "4.1";
    report.depth = depth;
    {
        std::ostringstream os;
        os << "n=" << params.n << ",m=" << params.m << ",alpha=" << params.alpha
           << ",beta=" << params.beta;
        report.params = os.str();
    }
    const BigInt a = int_pow(2, params.n) * params.alpha;
    const BigInt b = int_pow(2, params.m) * params.beta;
    const unsigned gamma = std::min(params.n, params.m);
    Polynomial f = Polynomial::quadratic({a, b, 0, 0, 0, 0});
    ValuationTree tree = build_tree(f, 2, depth, LabelMode::congruence);

    // Collect all descendants of a node at a given relative depth.
    auto check_descent = [&](const TreeNode& v, std::uint64_t terminal_value) {
        ++report.instances_checked;
        auto visit = [&](auto&& self, const TreeNode& node) -> void {
            const unsigned l = node.cls.level;
            ++report.nodes_checked;
            if (l <= terminal_value) {
                if (!node.label.is_star())
                    record_failure(report, f.str(), node.cls.str(), l, "*",
                                   label_str(node.label));
            } else if (l == terminal_value + 1) {
                if (!(node.label.is_terminal() &&
                      node.label.valuation == Valuation(terminal_value)))
                    record_failure(report, f.str(), node.cls.str(), l,
                                   "terminal(" + std::to_string(terminal_value) + ")",
                                   label_str(node.label));
                return;
            }
            for (const auto& child : node.children) self(self, child);
        };
        visit(visit, v);
    };

    auto visit = [&](auto&& self, const TreeNode& node) -> void {
        const unsigned k = node.cls.level;
        if (k >= 1) {
            const BigInt half_step = int_pow(2, k - 1);
            bool ix = node.cls.rep[0] == half_step, jx = node.cls.rep[1] == half_step;
            bool i0 = node.cls.rep[0] == 0, j0 = node.cls.rep[1] == 0;
            if ((ix || i0) && (jx || j0)) {
                if (i0 && j0) {
                    // (0,0): all four children star (the representative is an
                    // exact zero, so the node itself is always a star).
                    ++report.instances_checked;
                    ++report.nodes_checked;
                    if (!node.label.is_star()) {
                        record_failure(report, f.str(), node.cls.str(), k, "*",
                                       label_str(node.label));
                    } else {
                        for (const auto& child : node.children) {
                            ++report.nodes_checked;
                            if (!child.label.is_star())
                                record_failure(report, f.str(), child.cls.str(), k + 1, "*",
                                               label_str(child.label));
                        }
                    }
                } else {
                    Valuation s = ix && jx ? vp(a + b, 2)
                                 : ix      ? Valuation(params.n)
                                           : Valuation(params.m);
                    bool applicable = ix && jx ? (!s.is_infinite() && s.value() <= gamma + 2)
                                    : ix       ? params.n <= params.m + 1
                                               : params.m <= params.n + 1;
                    if (applicable) {
                        check_descent(node, 2 * std::uint64_t(k) - 2 + s.value());
                    } else {
                        ++report.nodes_skipped;
                    }
                }
            }
        }
        for (const auto& child : node.children) self(self, child);
    };
    visit(visit, tree.root);
    return report;
}

TheoremReport check_1_3(unsigned depth) {
    TheoremReport report;
    report.theorem_id = "1.3";
    report.depth = depth;
    Polynomial f = Polynomial::parse("n^2+7");
    ValuationTree tree = build_tree(f, 2, depth, LabelMode::constancy);
    report.instances_checked = 1;

    // Per-level behavior: a star at level k follows the split pattern when
    // it has exactly one terminal child (constant valuation k+1) and one
    // star child. The theorem's pattern is asserted from the first level at
    // which every star follows it.
    std::vector<bool> level_ok(depth, true);  // index k = parent level, 1..depth-1
    std::vector<std::string> level_witness(depth);
    auto visit = [&](auto&& self, const TreeNode& node) -> void {
        const unsigned k = node.cls.level;
        if (k >= 1 && k < depth && node.label.is_star()) {
            ++report.nodes_checked;
            int stars = 0, terms = 0;
            bool value_ok = true;
            for (const auto& child : node.children) {
                if (child.label.is_star()) ++stars;
                else {
                    ++terms;
                    if (child.label.valuation != Valuation(k + 1)) value_ok = false;
                }
            }
            if (!(stars == 1 && terms == 1 && value_ok)) {
                level_ok[k] = false;
                if (level_witness[k].empty())
                    level_witness[k] = node.cls.str() + " splits " + std::to_string(stars) +
                                       " star + " + std::to_string(terms) + " terminal";
            }
        }
        for (const auto& child : node.children) self(self, child);
    };
    visit(visit, tree.root);

    unsigned start = depth;
    for (unsigned k = depth; k >= 1; --k) {
        if (k < depth && !level_ok[k]) break;
        start = k;
        if (k == 1) break;
    }
    if (start >= depth) {
        record_failure(report, f.str(), level_witness[depth - 1].empty()
                                            ? "no level satisfies the split pattern"
                                            : level_witness[depth - 1],
                       depth - 1, "one terminal(k+1) + one star per star", "pattern never holds");
    } else {
        std::ostringstream os;
        os << "pattern holds from level " << start;
        report.params = os.str();
    }
    return report;
}

}  // namespace

TheoremReport check_theorem(const std::string& theorem_id, unsigned depth,
                            const Theorem41Params& params) {
    if (depth < 2) throw std::invalid_argument("check_theorem: depth must be >= 2");
    if (theorem_id == "1.3") return check_1_3(depth);
    if (theorem_id == "2.2") {
        TheoremReport r = check_4_1(depth, Theorem41Params{0, 0, 1, 1});
        r.theorem_id = "2.2";
        r.params.clear();
        return r;
    }
    if (theorem_id == "2.4") return check_2_4(depth);
    if (theorem_id == "2.6") return check_2_6(depth);
    if (theorem_id == "4.1") return check_4_1(depth, params);
    if (theorem_id == "6.1") return check_6_1(depth);
    throw std::invalid_argument("check_theorem: unknown theorem id '" + theorem_id + "'");
}

}  // namespace padic
