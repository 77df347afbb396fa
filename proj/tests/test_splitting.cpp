#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "padic/splitting.hpp"

using namespace padic;

TEST_CASE("the splitting table has 25 rows and full coverage") {
    auto table = split_table();
    CHECK(table.size() == 25);
    for (std::size_t i = 0; i < table.size(); ++i) CHECK(table[i].serial == int(i) + 1);
    TheoremReport report = validate_split_table();
    CHECK(report.passed());
    CHECK(report.instances_checked == 256);  // 2^6 contexts x 4 offsets
    CHECK(report.nodes_checked == 256);      // exactly one row matches each
}

TEST_CASE("a corrupted table row is caught by the cross-validation") {
    std::vector<SplitRule> table(split_table().begin(), split_table().end());
    table[5].star = !table[5].star;  // flip row 6
    TheoremReport report = validate_split_table(table);
    CHECK_FALSE(report.passed());
    CHECK(report.failures[0].node.find("row 6") != std::string::npos);
}

TEST_CASE("classify_child matches hand-computed cases") {
    // c,d odd, offset (1,0): L = j0 + 1, so terminal iff j0 = 0 (rows 2/3).
    SplitContext ctx{1, 1, 0, 0, 0, 0};
    Classification cls = classify_child(ctx, 1, 0);
    CHECK_FALSE(cls.star);
    CHECK(cls.table_rows == std::vector<int>{2});
    ctx.j0 = 1;
    cls = classify_child(ctx, 1, 0);
    CHECK(cls.star);
    CHECK(cls.table_rows == std::vector<int>{3});
    // alpha flips the outcome.
    ctx.alpha = 1;
    CHECK_FALSE(classify_child(ctx, 1, 0).star);
    // Offset (0,0) never terminates with alpha = 0 (row 1).
    ctx.alpha = 0;
    cls = classify_child(ctx, 0, 0);
    CHECK(cls.star);
    CHECK(cls.table_rows == std::vector<int>{1});
    CHECK_THROWS_AS(classify_child(SplitContext{2, 0, 0, 0, 0, 0}, 0, 0), std::invalid_argument);
}

TEST_CASE("eq_residue_check") {
    Polynomial f = Polynomial::parse("x^2+y^2");
    // f(1,1) = 2 = 1 * 2^1: star at level 1 with alpha = 1.
    CHECK(eq_residue_check(f, ResidueClass{2, 1, {1, 1}}) == 1);
    // f(0,0) = 0 exactly.
    CHECK(eq_residue_check(f, ResidueClass{2, 3, {0, 0}}) == 0);
    // f(1,2) = 5 is odd: not a star node at level 1.
    CHECK_THROWS_AS(eq_residue_check(f, ResidueClass{2, 1, {1, 0}}), std::invalid_argument);
    // f(2,2) = 8 = 1 * 2^3 at level 3.
    CHECK(eq_residue_check(f, ResidueClass{2, 3, {2, 2}}) == 1);
}

TEST_CASE("exhaustive classifier check on a small coefficient box") {
    TheoremReport report = verify_table_5_1(-1, 1, 4);
    CHECK(report.passed());
    CHECK(report.instances_checked == 729);
    CHECK(report.nodes_checked > 0);
    CHECK_THROWS(verify_table_5_1(1, -1, 4));
    CHECK_THROWS(verify_table_5_1(-20, 20, 4));  // grid budget
}

TEST_CASE("theorem 2.2: x^2+y^2 descent") {
    TheoremReport report = check_theorem("2.2", 8);
    CHECK(report.passed());
    CHECK(report.nodes_skipped == 0);
    CHECK(report.instances_checked > 0);
}

TEST_CASE("theorem 2.4: x^2+y^2+xy+x+y splits 2+2 everywhere") {
    TheoremReport report = check_theorem("2.4", 7);
    CHECK(report.passed());
}

TEST_CASE("theorem 2.6: xy+x+y+1") {
    TheoremReport report = check_theorem("2.6", 7);
    CHECK(report.passed());
}

TEST_CASE("theorem 4.1 on assorted exponent pairs") {
    for (auto [n, m] : {std::pair{1u, 1u}, {1u, 2u}, {2u, 1u}, {3u, 2u}, {2u, 4u}}) {
        TheoremReport report = check_theorem("4.1", 8, Theorem41Params{n, m, 1, 1});
        CAPTURE(n);
        CAPTURE(m);
        CHECK(report.passed());
    }
    TheoremReport with_units = check_theorem("4.1", 8, Theorem41Params{1, 1, 3, 5});
    CHECK(with_units.passed());
    CHECK_THROWS_AS(check_theorem("4.1", 8, Theorem41Params{1, 1, 2, 1}), std::invalid_argument);
}

TEST_CASE("theorem 6.1: x^2y+5") {
    TheoremReport report = check_theorem("6.1", 7);
    CHECK(report.passed());
}

TEST_CASE("theorem 1.3: n^2+7 eventually splits one star + one terminal") {
    TheoremReport report = check_theorem("1.3", 12);
    CHECK(report.passed());
    CHECK(report.params == "pattern holds from level 2");
}

TEST_CASE("unknown ids and bad depths are rejected") {
    CHECK_THROWS_AS(check_theorem("9.9", 6), std::invalid_argument);
    CHECK_THROWS_AS(check_theorem("2.4", 1), std::invalid_argument);
}

TEST_CASE("report serialization is deterministic") {
    TheoremReport report = check_theorem("2.6", 5);
    std::string j = report.json();
    CHECK(j == check_theorem("2.6", 5).json());
    CHECK(j.find("\"schema\": \"padic-theoremreport/1\"") != std::string::npos);
    CHECK(report.str().find("PASS") != std::string::npos);
}

TEST_CASE("a wrong claim is reported, not silently accepted") {
    // Depth-2 check of 2.4 with a deliberately corrupted table is indirect;
    // instead corrupt the claim: 4.1 with swapped exponents must still pass
    // (symmetry), but an even alpha is the caller's error, and a genuinely
    // false pattern shows up as failures. The bounded polynomial of
    // Example 1.5 has no level-2 stars, so 2.2's pattern cannot be tested
    // against it -- use the table path: flipping a row breaks 5.1.
    std::vector<SplitRule> table(split_table().begin(), split_table().end());
    table[0].star = false;  // row 1: offset (0,0) would always terminate
    TheoremReport report = verify_table_5_1(-1, 0, 3, table);
    CHECK_FALSE(report.passed());
}
