#include "padic/valtree.hpp"

#include <limits>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "padic/errors.hpp"

namespace padic {

std::string ResidueClass::str() const {
    std::ostringstream os;
    if (rep.size() == 1) {
        os << rep[0];
    } else {
        os << '(';
        for (std::size_t i = 0; i < rep.size(); ++i) {
            if (i) os << ',';
            os << rep[i];
        }
        os << ')';
    }
    os << " mod " << p << '^' << level;
    return os.str();
}

std::string ResidueClass::node_id() const {
    std::ostringstream os;
    os << 'n' << level;
    for (const auto& r : rep) os << '_' << r;
    return os.str();
}

std::string NodeLabel::str() const {
    return is_star() ? "*" : valuation.str();
}

LabelMode default_mode_for_arity(int arity) {
    return arity == 1 ? LabelMode::constancy : LabelMode::congruence;
}

namespace {

using DerivativeList = std::vector<std::pair<unsigned, Polynomial>>;  // (|t|, D_t)

DerivativeList hasse_derivatives(const Polynomial& f) {
    DerivativeList out;
    unsigned dx = 0, dy = 0;
    for (const auto& [e, c] : f.terms()) {
        dx = std::max(dx, e.first);
        dy = std::max(dy, e.second);
    }
    for (unsigned tx = 0; tx <= dx; ++tx) {
        for (unsigned ty = 0; ty <= dy; ++ty) {
            if (tx + ty == 0) continue;
            Polynomial d = f.hasse_derivative({tx, ty});
            if (!d.is_zero()) out.emplace_back(tx + ty, std::move(d));
        }
    }
    return out;
}

// Constancy test: v_p(f) is constant (= v) on the class when
//   v < level + min over orders t of [level*(|t|-1) + v_p(D_t(rep))],
// by the exact integer Taylor expansion f(rep + p^level h) =
// sum_t D_t(rep) (p^level h)^t.
NodeLabel constancy_label(const Polynomial& f, const ResidueClass& cls,
                          const DerivativeList& derivs, bool& exact_zero) {
    BigInt value = f.eval_exact(cls.rep);
    Valuation v = vp(value, cls.p);
    if (v.is_infinite()) {
        exact_zero = true;
        return NodeLabel::star();
    }
    Valuation tail = Valuation::infinity();
    for (const auto& [order, d] : derivs) {
        Valuation dv = vp(d.eval_exact(cls.rep), cls.p);
        if (dv.is_infinite()) continue;
        tail = min(tail, Valuation(cls.level * std::uint64_t(order - 1)) + dv);
    }
    Valuation bound = tail.is_infinite() ? tail : Valuation(cls.level) + tail;
    if (v < bound) return NodeLabel::terminal(v);
    return NodeLabel::star();
}

NodeLabel congruence_label(const Polynomial& f, const ResidueClass& cls, bool& exact_zero) {
    if (f.eval_mod(cls.rep, cls.modulus()) != 0) {
        return NodeLabel::terminal(vp(f.eval_exact(cls.rep), cls.p));
    }
    if (f.eval_exact(cls.rep) == 0) exact_zero = true;
    return NodeLabel::star();
}

struct Builder {
    const Polynomial& f;
    std::int64_t p;
    unsigned depth;
    LabelMode mode;
    std::size_t budget;
    std::size_t count = 0;
    DerivativeList derivs;  // only populated for constancy mode

    NodeLabel label(const ResidueClass& cls, bool& exact_zero) {
        return mode == LabelMode::constancy ? constancy_label(f, cls, derivs, exact_zero)
                                            : congruence_label(f, cls, exact_zero);
    }

    void expand(TreeNode& node) {
        if (!node.label.is_star()) return;
        if (node.cls.level >= depth) {
            node.depth_capped = true;
            return;
        }
        const BigInt step = node.cls.modulus();
        const unsigned arity = static_cast<unsigned>(node.cls.rep.size());
        std::vector<std::int64_t> digits(arity, 0);
        for (;;) {
            ResidueClass child_cls{p, node.cls.level + 1, node.cls.rep};
            for (unsigned a = 0; a < arity; ++a) child_cls.rep[a] += step * digits[a];
            if (++count > budget)
                throw resource_limit_error("build_tree: node budget exceeded");
            TreeNode child;
            child.cls = std::move(child_cls);
            child.label = label(child.cls, child.exact_zero);
            expand(child);
            node.children.push_back(std::move(child));
            // odometer over the new digits, last coordinate fastest
            unsigned a = arity;
            while (a > 0) {
                --a;
                if (++digits[a] < p) break;
                digits[a] = 0;
                if (a == 0) return;
            }
        }
    }
};

}  // namespace

NodeLabel label_node(const Polynomial& f, const ResidueClass& cls, LabelMode mode) {
    if (cls.level < 1) throw std::invalid_argument("label_node: level must be >= 1");
    bool exact_zero = false;
    if (mode == LabelMode::constancy) {
        DerivativeList derivs = hasse_derivatives(f);
        return constancy_label(f, cls, derivs, exact_zero);
    }
    return congruence_label(f, cls, exact_zero);
}

ValuationTree build_tree(const Polynomial& f, std::int64_t p, unsigned depth, LabelMode mode,
                         const BuildOptions& opts) {
    require_prime(p);
    const unsigned cap = f.arity() == 1 ? opts.max_depth_univariate : opts.max_depth_bivariate;
    if (depth < 1 || depth > cap)
        throw std::invalid_argument("build_tree: depth must be in 1.." + std::to_string(cap));
    ValuationTree tree;
    tree.p = p;
    tree.poly = f;
    tree.arity = f.arity();
    tree.depth = depth;
    tree.mode = mode;
    tree.root.cls = ResidueClass{p, 0, std::vector<BigInt>(tree.arity, BigInt(0))};
    tree.root.label = NodeLabel::star();
    tree.root.exact_zero = (f.eval_exact(tree.root.cls.rep) == 0);

    Builder b{f, p, depth, mode, opts.node_budget};
    if (mode == LabelMode::constancy) b.derivs = hasse_derivatives(f);
    b.count = 1;
    b.expand(tree.root);
    tree.node_count = b.count;
    return tree;
}

// ---- sample checking -------------------------------------------------------

SampleReport sample_check(const ValuationTree& tree, unsigned samples_per_leaf,
                          std::uint64_t seed) {
    SampleReport report;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> dist(0, (std::uint64_t{1} << 20) - 1);

    auto visit = [&](auto&& self, const TreeNode& node) -> void {
        if (node.cls.level >= 1) {
            if (node.label.is_terminal()) {
                ++report.terminal_nodes_checked;
                const BigInt step = node.cls.modulus();
                for (unsigned s = 0; s < samples_per_leaf; ++s) {
                    std::vector<BigInt> member = node.cls.rep;
                    for (auto& coord : member) coord += step * dist(rng);
                    ++report.samples_drawn;
                    Valuation observed = vp(tree.poly.eval_exact(member), tree.p);
                    if (observed != node.label.valuation) {
                        report.violations.push_back({node.cls.node_id(), member,
                                                     node.label.valuation.str(), observed.str()});
                    }
                }
            } else {
                ++report.star_nodes_checked;
                if (tree.poly.eval_mod(node.cls.rep, node.cls.modulus()) != 0) {
                    report.violations.push_back({node.cls.node_id(), node.cls.rep,
                                                 "f(rep) == 0 mod p^level", "nonzero residue"});
                }
            }
        }
        for (const auto& child : node.children) self(self, child);
    };
    visit(visit, tree.root);
    return report;
}

// ---- closed-form detection -------------------------------------------------

ClosedFormReport closed_form_report(const ValuationTree& tree) {
    ClosedFormReport report;
    report.depth = tree.depth;
    std::uint64_t max_val = 0;
    auto visit = [&](auto&& self, const TreeNode& node) -> void {
        if (node.label.is_terminal()) {
            report.cases.emplace_back(node.cls, node.label.valuation);
            max_val = std::max(max_val, node.label.valuation.value());
        } else if (node.depth_capped) {
            report.fringe.push_back(node.cls);
        }
        for (const auto& child : node.children) self(self, child);
    };
    visit(visit, tree.root);
    report.bounded = report.fringe.empty();
    if (report.bounded) report.bound = max_val + 1;
    return report;
}

// ---- export ----------------------------------------------------------------

namespace {

nlohmann::ordered_json node_to_json(const TreeNode& node, bool is_root) {
    nlohmann::ordered_json j;
    j["level"] = node.cls.level;
    if (!is_root) {
        auto reps = nlohmann::ordered_json::array();
        for (const auto& r : node.cls.rep) {
            if (r <= std::numeric_limits<std::uint64_t>::max())
                reps.push_back(r.convert_to<std::uint64_t>());
            else
                reps.push_back(r.str());
        }
        j["rep"] = reps;
    }
    if (node.label.is_star()) {
        j["label"] = "star";
    } else if (node.label.valuation.is_infinite()) {
        j["label"] = {{"terminal", "infinity"}};
    } else {
        j["label"] = {{"terminal", node.label.valuation.value()}};
    }
    j["depth_capped"] = node.depth_capped;
    auto kids = nlohmann::ordered_json::array();
    for (const auto& child : node.children) kids.push_back(node_to_json(child, false));
    j["children"] = kids;
    return j;
}

void ascii_render(const TreeNode& node, unsigned indent, std::ostringstream& os) {
    os << std::string(indent * 2, ' ');
    if (node.cls.level == 0) {
        os << "* root";
    } else {
        os << node.cls.str() << " -> " << node.label.str();
        if (node.depth_capped) os << " (depth capped)";
    }
    os << '\n';
    for (const auto& child : node.children) ascii_render(child, indent + 1, os);
}

void dot_render(const TreeNode& node, std::ostringstream& os) {
    os << "  " << node.cls.node_id() << " [label=\"" << node.label.str() << "\"];\n";
    for (const auto& child : node.children) {
        os << "  " << node.cls.node_id() << " -> " << child.cls.node_id() << ";\n";
        dot_render(child, os);
    }
}

}  // namespace

std::string export_tree(const ValuationTree& tree, ExportFormat format) {
    std::ostringstream os;
    switch (format) {
        case ExportFormat::ascii:
            ascii_render(tree.root, 0, os);
            return os.str();
        case ExportFormat::dot:
            os << "digraph valtree {\n";
            dot_render(tree.root, os);
            os << "}\n";
            return os.str();
        case ExportFormat::json: {
            nlohmann::ordered_json j;
            j["schema"] = "padic-valtree/1";
            j["p"] = tree.p;
            j["polynomial"] = tree.poly.str();
            j["arity"] = tree.arity;
            j["depth"] = tree.depth;
            j["mode"] = tree.mode == LabelMode::congruence ? "congruence" : "constancy";
            j["root"] = node_to_json(tree.root, true);
            return j.dump(2) + "\n";
        }
    }
    throw std::logic_error("export_tree: unknown format");
}

// ---- Stirling class explorer -----------------------------------------------

std::string StirlingClassReport::str() const {
    std::ostringstream os;
    os << "Empirical class exploration of v_" << p << "(S(n," << k << ")) for n <= " << n_max
       << " (sampled evidence only, not a proof)\n";
    for (const auto& lvl : levels) {
        os << "  level " << lvl.level << ": " << lvl.non_terminal_classes
           << " empirically non-terminal, " << lvl.terminal_classes
           << " empirically terminal\n";
    }
    if (stabilized) {
        os << "  non-terminal count stabilizes at mu = " << candidate_mu
           << " from level m0 = " << candidate_m0 << " (candidates)\n";
    } else {
        os << "  non-terminal count did not stabilize within the explored levels\n";
    }
    return os.str();
}

StirlingClassReport stirling_class_explorer(std::uint64_t k, unsigned max_level,
                                            std::uint64_t n_max, std::int64_t p) {
    require_prime(p);
    if (k < 1) throw std::invalid_argument("stirling_class_explorer: k must be >= 1");
    if (max_level < 1) throw std::invalid_argument("stirling_class_explorer: max_level must be >= 1");

    // v_p(S(n,k)) from the recurrence carried mod p^64; a residue of exactly
    // zero would mean the valuation exceeds what this precision can resolve.
    const unsigned precision = 64;
    const BigInt modulus = int_pow(p, precision);
    std::vector<BigInt> row(k + 1, BigInt(0));
    row[0] = 1;
    std::vector<std::uint64_t> vals(n_max + 1, 0);  // indexed by n, valid for n >= k
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        for (std::uint64_t j = std::min<std::uint64_t>(k, n); j >= 1; --j) {
            row[j] = (row[j - 1] + j * row[j]) % modulus;
        }
        row[0] = 0;  // S(n,0) = 0 for n > 0
        if (n >= k) {
            if (row[k] == 0)
                throw internal_inconsistency_error(
                    "stirling_class_explorer: valuation exceeds working precision");
            vals[n] = vp(row[k], p).value();
        }
    }

    StirlingClassReport report;
    report.k = k;
    report.p = p;
    report.n_max = n_max;
    for (unsigned m = 1; m <= max_level; ++m) {
        BigInt pm = int_pow(p, m);
        if (pm > n_max)
            throw insufficient_data_error("stirling_class_explorer: p^level exceeds n_max");
        std::uint64_t mod = pm.convert_to<std::uint64_t>();
        StirlingLevelSummary summary;
        summary.level = m;
        for (std::uint64_t j = 0; j < mod; ++j) {
            std::uint64_t first = j;
            while (first < k) first += mod;
            std::size_t members = 0;
            bool constant = true;
            std::uint64_t v0 = 0;
            for (std::uint64_t n = first; n <= n_max; n += mod) {
                if (members == 0) v0 = vals[n];
                else if (vals[n] != v0) constant = false;
                ++members;
            }
            if (members < 30)
                throw insufficient_data_error(
                    "stirling_class_explorer: a level-" + std::to_string(m) +
                    " class has fewer than 30 members below n_max");
            if (constant) ++summary.terminal_classes;
            else ++summary.non_terminal_classes;
        }
        report.levels.push_back(summary);
    }

    const std::size_t final_count = report.levels.back().non_terminal_classes;
    unsigned m0 = max_level;
    for (unsigned m = max_level; m >= 1; --m) {
        if (report.levels[m - 1].non_terminal_classes != final_count) break;
        m0 = m;
        if (m == 1) break;
    }
    report.stabilized = m0 < max_level;
    report.candidate_m0 = m0;
    report.candidate_mu = final_count;
    return report;
}

}  // namespace padic
