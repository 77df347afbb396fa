#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "padic/errors.hpp"
#include "padic/valtree.hpp"

using namespace padic;

namespace {

const TreeNode& child(const TreeNode& n, std::size_t i) { return n.children.at(i); }

std::size_t count_nodes(const TreeNode& n) {
    std::size_t c = 1;
    for (const auto& ch : n.children) c += count_nodes(ch);
    return c;
}

}  // namespace

TEST_CASE("n^2+5 under the constancy rule is two leaves") {
    ValuationTree t = build_tree(Polynomial::parse("n^2+5"), 2, 16, LabelMode::constancy);
    REQUIRE(t.root.children.size() == 2);
    CHECK(child(t.root, 0).label == NodeLabel::terminal(Valuation(0)));  // n even
    CHECK(child(t.root, 1).label == NodeLabel::terminal(Valuation(1)));  // n odd: n^2+5 = 2 mod 4
    CHECK(child(t.root, 0).children.empty());
    CHECK(t.node_count == 3);
}

TEST_CASE("x^2+y^2+xy+x+y+1 depth 2 matches the bounded example") {
    ValuationTree t =
        build_tree(Polynomial::parse("x^2+y^2+x*y+x+y+1"), 2, 2, LabelMode::congruence);
    REQUIRE(t.root.children.size() == 4);
    // Children in lexicographic digit order (0,0),(0,1),(1,0),(1,1).
    for (int i = 0; i < 3; ++i) CHECK(child(t.root, i).label == NodeLabel::terminal(Valuation(0)));
    const TreeNode& star = child(t.root, 3);
    CHECK(star.label.is_star());
    REQUIRE(star.children.size() == 4);
    for (int i = 0; i < 4; ++i)
        CHECK(child(star, i).label == NodeLabel::terminal(Valuation(1)));

    ClosedFormReport report = closed_form_report(t);
    CHECK(report.bounded);
    CHECK(report.bound == 2);
    CHECK(report.cases.size() == 7);
    CHECK(report.fringe.empty());
}

TEST_CASE("congruence star children terminate at the parent level") {
    // Under the congruence rule a terminal child of a level-k star always
    // has valuation exactly k.
    for (const char* text : {"x^2+y^2", "x*y+x+y+1", "x^2*y+5", "x^2+x*y+3*y"}) {
        ValuationTree t = build_tree(Polynomial::parse(text), 2, 6, LabelMode::congruence);
        auto visit = [&](auto&& self, const TreeNode& n) -> void {
            for (const auto& c : n.children) {
                if (c.label.is_terminal() && n.cls.level >= 1)
                    CHECK(c.label.valuation == Valuation(n.cls.level));
                CHECK(c.cls.level == n.cls.level + 1);
                self(self, c);
            }
        };
        visit(visit, t.root);
    }
}

TEST_CASE("star nodes satisfy the congruence, terminals the valuation") {
    for (const char* text : {"n^2+7", "n^2+5", "n^3-2"}) {
        ValuationTree t = build_tree(Polynomial::parse(text), 2, 12, LabelMode::constancy);
        SampleReport report = sample_check(t, 8, 42);
        CHECK(report.passed());
        CHECK(report.samples_drawn > 0);
    }
    ValuationTree t = build_tree(Polynomial::parse("x^2*y+5"), 2, 6, LabelMode::congruence);
    CHECK(sample_check(t, 8, 42).passed());
}

TEST_CASE("sample_check detects a corrupted terminal label") {
    ValuationTree t = build_tree(Polynomial::parse("x^2+y^2+x*y+x+y+1"), 2, 2,
                                 LabelMode::congruence);
    t.root.children[0].label = NodeLabel::terminal(Valuation(3));  // mutation
    SampleReport report = sample_check(t, 4, 1);
    CHECK_FALSE(report.passed());
    CHECK(report.violations[0].node_id == "n1_0_0");
}

TEST_CASE("n^2+7 is unbounded at every depth") {
    ValuationTree t = build_tree(Polynomial::parse("n^2+7"), 2, 10, LabelMode::constancy);
    ClosedFormReport report = closed_form_report(t);
    CHECK_FALSE(report.bounded);
    // Two branches survive: the two square roots of -7 in Z_2.
    REQUIRE(report.fringe.size() == 2);
    CHECK(report.fringe[0].level == 10);
    CHECK(report.fringe[1].level == 10);
}

TEST_CASE("odd primes work in tree construction") {
    // n^2+1 mod 5: roots 2 and 3 persist, so two stars survive each level.
    ValuationTree t = build_tree(Polynomial::parse("n^2+1"), 5, 4, LabelMode::congruence);
    CHECK(t.root.children.size() == 5);
    int stars = 0;
    for (const auto& c : t.root.children) stars += c.label.is_star();
    CHECK(stars == 2);
    CHECK_FALSE(closed_form_report(t).bounded);
}

TEST_CASE("build limits") {
    CHECK_THROWS_AS(build_tree(Polynomial::parse("x*y"), 2, 25, LabelMode::congruence),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_tree(Polynomial::parse("n^2+7"), 2, 65, LabelMode::constancy),
                    std::invalid_argument);
    BuildOptions tight;
    tight.node_budget = 10;
    CHECK_THROWS_AS(build_tree(Polynomial::parse("x*y"), 2, 6, LabelMode::congruence, tight),
                    resource_limit_error);
    CHECK_THROWS_AS(build_tree(Polynomial::parse("x"), 4, 2, LabelMode::congruence),
                    std::invalid_argument);  // p must be prime
}

TEST_CASE("export formats are deterministic and well-formed") {
    ValuationTree t = build_tree(Polynomial::parse("x^2+y^2+x*y+x+y+1"), 2, 2,
                                 LabelMode::congruence);
    std::string ascii = export_tree(t, ExportFormat::ascii);
    CHECK(ascii == export_tree(t, ExportFormat::ascii));
    CHECK(ascii.find("(1,1) mod 2^1 -> *") != std::string::npos);
    CHECK(ascii.find("(0,0) mod 2^1 -> 0") != std::string::npos);

    std::string dot = export_tree(t, ExportFormat::dot);
    CHECK(dot.rfind("digraph", 0) == 0);
    CHECK(dot.find("n1_1_1") != std::string::npos);

    std::string json = export_tree(t, ExportFormat::json);
    CHECK(json == export_tree(t, ExportFormat::json));
    CHECK(json.find("\"schema\": \"padic-valtree/1\"") != std::string::npos);
    CHECK(json.find("\"depth_capped\"") != std::string::npos);
}

TEST_CASE("node counts agree with the stored total") {
    ValuationTree t = build_tree(Polynomial::parse("x^2+y^2"), 2, 5, LabelMode::congruence);
    CHECK(count_nodes(t.root) == t.node_count);
}

TEST_CASE("constancy rule never lies about terminality") {
    // Every constancy-terminal class keeps its valuation on many members;
    // checked against direct evaluation rather than sample_check.
    Polynomial f = Polynomial::parse("n^3+n+2");
    ValuationTree t = build_tree(f, 2, 10, LabelMode::constancy);
    auto visit = [&](auto&& self, const TreeNode& n) -> void {
        if (n.label.is_terminal()) {
            BigInt m = n.cls.modulus();
            for (int i = 1; i <= 20; ++i) {
                std::array<BigInt, 1> pt = {n.cls.rep[0] + m * i};
                CHECK(vp(f.eval_exact(pt), 2) == n.label.valuation);
            }
        }
        for (const auto& c : n.children) self(self, c);
    };
    visit(visit, t.root);
}

TEST_CASE("stirling class explorer for small k") {
    // k = 3: v_2(S(n,3)) = [n even], so every class is empirically
    // terminal and the non-terminal count stabilizes at 0 immediately.
    StirlingClassReport r3 = stirling_class_explorer(3, 6, 20000);
    CHECK(r3.stabilized);
    CHECK(r3.candidate_mu == 0);

    StirlingClassReport r5 = stirling_class_explorer(5, 6, 50000);
    CHECK(r5.stabilized);
    CHECK(r5.candidate_mu == 2);
    CHECK(r5.candidate_m0 == 1);

    CHECK_THROWS_AS(stirling_class_explorer(5, 12, 1000), insufficient_data_error);
}
