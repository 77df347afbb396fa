// Command-line front end: tree building, theorem verification, child
// classification, Hensel root certification, and the valuation utilities.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 resource
// budget exceeded.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "padic/core.hpp"
#include "padic/errors.hpp"
#include "padic/hensel.hpp"
#include "padic/polynomial.hpp"
#include "padic/splitting.hpp"
#include "padic/valtree.hpp"

namespace {

using namespace padic;

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

ExportFormat parse_format(const std::string& s) {
    if (s == "ascii") return ExportFormat::ascii;
    if (s == "dot") return ExportFormat::dot;
    if (s == "json") return ExportFormat::json;
    throw UsageError("unknown format '" + s + "' (expected ascii|dot|json)");
}

LabelMode parse_mode(const std::string& s, int arity) {
    if (s == "auto") return default_mode_for_arity(arity);
    if (s == "congruence") return LabelMode::congruence;
    if (s == "constancy") return LabelMode::constancy;
    throw UsageError("unknown mode '" + s + "' (expected auto|congruence|constancy)");
}

std::vector<std::int64_t> parse_int_list(const std::string& s, std::size_t count,
                                         const std::string& flag) {
    std::vector<std::int64_t> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t comma = s.find(',', pos);
        std::string piece = s.substr(pos, comma == std::string::npos ? comma : comma - pos);
        try {
            out.push_back(std::stoll(piece));
        } catch (const std::exception&) {
            throw UsageError(flag + ": expected a comma-separated integer list, got '" + s + "'");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (out.size() != count)
        throw UsageError(flag + ": expected " + std::to_string(count) + " integers");
    return out;
}

int cmd_tree(const std::string& poly_text, std::int64_t p, int depth, const std::string& mode,
             const std::string& format, unsigned sample_check_n, std::uint64_t seed,
             std::size_t node_budget) {
    Polynomial f = Polynomial::parse(poly_text);
    BuildOptions opts;
    if (node_budget) opts.node_budget = node_budget;
    int effective_depth = depth >= 0 ? depth : (f.arity() == 1 ? 16 : 6);
    ValuationTree tree =
        build_tree(f, p, static_cast<unsigned>(effective_depth), parse_mode(mode, f.arity()), opts);
    std::cout << export_tree(tree, parse_format(format));
    if (sample_check_n) {
        SampleReport report = sample_check(tree, sample_check_n, seed);
        std::cerr << "sample check: " << report.terminal_nodes_checked << " terminal + "
                  << report.star_nodes_checked << " star nodes, " << report.samples_drawn
                  << " samples, " << report.violations.size() << " violations\n";
        if (!report.passed()) {
            for (const auto& v : report.violations)
                std::cerr << "  " << v.node_id << ": expected " << v.expected << ", observed "
                          << v.observed << '\n';
            return kExitVerificationFailure;
        }
    }
    return kExitOk;
}

int cmd_verify(const std::string& theorem, int depth, const std::string& range,
               const std::string& params_text, const std::string& format) {
    TheoremReport report;
    if (theorem == "5.1") {
        auto r = parse_int_list(range.empty() ? "-2,2" : range, 2, "--range");
        TheoremReport table_check = validate_split_table();
        report = verify_table_5_1(r[0], r[1], depth < 0 ? 6u : static_cast<unsigned>(depth));
        report.instances_checked += table_check.instances_checked;
        for (const auto& f : table_check.failures) report.failures.push_back(f);
    } else {
        Theorem41Params params;
        if (!params_text.empty()) {
            auto v = parse_int_list(params_text, 4, "--params");
            if (v[0] < 0 || v[1] < 0) throw UsageError("--params: n and m must be >= 0");
            params = {static_cast<unsigned>(v[0]), static_cast<unsigned>(v[1]), v[2], v[3]};
        }
        int effective_depth = depth >= 0 ? depth : (theorem == "1.3" ? 16 : 6);
        report = check_theorem(theorem, static_cast<unsigned>(effective_depth), params);
    }
    std::cout << (format == "json" ? report.json() : report.str());
    return report.passed() ? kExitOk : kExitVerificationFailure;
}

int cmd_classify(int c, int d, int e, int i0, int j0, int alpha) {
    SplitContext ctx{c, d, e, i0, j0, alpha};
    for (int ik = 0; ik < 2; ++ik)
        for (int jk = 0; jk < 2; ++jk) {
            Classification cls = classify_child(ctx, ik, jk);
            std::cout << "offset (" << ik << ',' << jk << "): "
                      << (cls.star ? "Star" : "Terminal(k)") << "  [rows";
            for (int s : cls.table_rows) std::cout << ' ' << s;
            std::cout << "]\n";
        }
    return kExitOk;
}

int cmd_roots(const std::string& poly_text, const std::string& node_text, std::int64_t p,
              unsigned prec, const std::string& constraint) {
    Polynomial f = Polynomial::parse(poly_text);
    auto rep = parse_int_list(node_text, 2, "--node");
    ResidueClass node{p, 1, {BigInt(rep[0]), BigInt(rep[1])}};
    // The node level is the smallest one containing both residues.
    BigInt m = p;
    while (BigInt(rep[0]) >= m || BigInt(rep[1]) >= m) {
        m *= p;
        ++node.level;
    }
    BranchCertificate cert;
    if (constraint.empty() || constraint == "auto") {
        cert = certify_branch(f, node, p, prec);
    } else {
        Polynomial line = Polynomial::parse(constraint);
        PolySystem sys(f, line);
        cert.node = node;
        cert.constraint = line.str();
        try {
            cert.certificate = newton_lift(sys, node.rep, p, prec, node.level);
            cert.verdict = BranchVerdict::certified;
        } catch (const lift_error& err) {
            std::cerr << "lift failed: " << err.what() << '\n';
            cert.verdict = BranchVerdict::unknown;
        }
    }
    std::cout << cert.json();
    return cert.verdict == BranchVerdict::certified ? kExitOk : kExitVerificationFailure;
}

int cmd_closed_form(const std::string& poly_text, std::int64_t p, int depth) {
    Polynomial f = Polynomial::parse(poly_text);
    int effective_depth = depth >= 0 ? depth : (f.arity() == 1 ? 16 : 6);
    ValuationTree tree = build_tree(f, p, static_cast<unsigned>(effective_depth),
                                    default_mode_for_arity(f.arity()));
    ClosedFormReport report = closed_form_report(tree);
    if (report.bounded) {
        std::cout << "Bounded(" << report.bound << ") at depth " << report.depth << '\n';
        for (const auto& [cls, val] : report.cases)
            std::cout << "  " << cls.str() << " -> " << val.str() << '\n';
    } else {
        std::cout << "Unresolved at depth " << report.depth << "; surviving classes:\n";
        for (const auto& cls : report.fringe) std::cout << "  " << cls.str() << '\n';
    }
    return kExitOk;
}

int cmd_stirling(std::uint64_t k, unsigned levels, std::uint64_t nmax, std::int64_t p) {
    StirlingClassReport report = stirling_class_explorer(k, levels, nmax, p);
    std::cout << report.str();
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"p-adic valuation trees of integer polynomials"};
    app.require_subcommand(1);

    std::string poly, mode = "auto", format = "ascii", theorem, range, params, node, constraint;
    std::int64_t p = 2;
    int depth = -1;  // -1: default by arity
    unsigned sample_n = 0, prec = 64, levels = 10;
    std::uint64_t seed = 0, n = 0, k = 0, nmax = 200000;
    std::size_t budget = 0;
    int c = 0, d = 0, e = 0, i0 = 0, j0 = 0, alpha = 0;

    auto* tree = app.add_subcommand("tree", "Build and print a valuation tree");
    tree->add_option("--poly", poly, "Polynomial, e.g. \"x^2+y^2\" or \"n^2+7\"")->required();
    tree->add_option("--p", p, "Prime (default 2)");
    tree->add_option("--depth", depth, "Tree depth (default 16 univariate, 6 bivariate)");
    tree->add_option("--mode", mode, "auto|congruence|constancy");
    tree->add_option("--format", format, "ascii|dot|json");
    tree->add_option("--sample-check", sample_n, "Samples per leaf for the randomized re-check");
    tree->add_option("--seed", seed, "Sample-check seed");
    tree->add_option("--node-budget", budget, "Node cap (default 10^7)");

    auto* verify = app.add_subcommand("verify", "Check a splitting theorem exhaustively");
    verify->add_option("--theorem", theorem, "1.3|2.2|2.4|2.6|4.1|5.1|6.1")->required();
    verify->add_option("--depth", depth, "Verification depth");
    verify->add_option("--range", range, "lo,hi coefficient range (5.1 only, default -2,2)");
    verify->add_option("--params", params, "n,m,alpha,beta (4.1 only)");
    verify->add_option("--format", format, "text|json");

    auto* classify = app.add_subcommand("classify", "Classify the four children of a star node");
    classify->add_option("--c", c, "parity of the xy coefficient")->required();
    classify->add_option("--d", d, "parity of the x coefficient")->required();
    classify->add_option("--e", e, "parity of the y coefficient")->required();
    classify->add_option("--i0", i0, "level-1 x residue")->required();
    classify->add_option("--j0", j0, "level-1 y residue")->required();
    classify->add_option("--alpha", alpha, "carry bit of the node")->required();

    auto* roots = app.add_subcommand("roots", "Certify a star node as a p-adic root");
    roots->add_option("--poly", poly, "Bivariate polynomial")->required();
    roots->add_option("--node", node, "Representative i,j")->required();
    roots->add_option("--p", p, "Prime (default 2)");
    roots->add_option("--prec", prec, "Target precision in p-adic digits (default 64)");
    roots->add_option("--constraint", constraint, "Auxiliary line, e.g. \"x+1\", or auto");

    auto* closed = app.add_subcommand("closed-form", "Bounded-valuation case analysis");
    closed->add_option("--poly", poly, "Polynomial")->required();
    closed->add_option("--p", p, "Prime (default 2)");
    closed->add_option("--depth", depth, "Tree depth");

    auto* stirling = app.add_subcommand("stirling", "Explore v_p(S(n,k)) residue classes");
    stirling->add_option("--k", k, "Stirling column")->required();
    stirling->add_option("--levels", levels, "Maximum congruence level (default 10)");
    stirling->add_option("--nmax", nmax, "Row bound (default 200000)");
    stirling->add_option("--p", p, "Prime (default 2)");

    auto* val = app.add_subcommand("val", "v_p(n)");
    val->add_option("--n", poly, "Integer")->required();
    val->add_option("--p", p, "Prime (default 2)");

    auto* valf = app.add_subcommand("val-factorial", "v_p(n!)");
    valf->add_option("--n", n, "Integer")->required();
    valf->add_option("--p", p, "Prime (default 2)");

    auto* valb = app.add_subcommand("val-binomial", "v_2(C(2n,n))");
    valb->add_option("--n", n, "Integer")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        return app.exit(err) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (tree->parsed())
            return cmd_tree(poly, p, depth, mode, format, sample_n, seed, budget);
        if (verify->parsed()) return cmd_verify(theorem, depth, range, params, format);
        if (classify->parsed()) return cmd_classify(c, d, e, i0, j0, alpha);
        if (roots->parsed()) return cmd_roots(poly, node, p, prec, constraint);
        if (closed->parsed()) return cmd_closed_form(poly, p, depth);
        if (stirling->parsed()) return cmd_stirling(k, levels, nmax, p);
        if (val->parsed()) {
            std::cout << vp(BigInt(poly), p).str() << '\n';
            return kExitOk;
        }
        if (valf->parsed()) {
            std::cout << legendre_factorial_valuation(n, p).str() << '\n';
            return kExitOk;
        }
        if (valb->parsed()) {
            std::cout << central_binomial_valuation(n).str() << '\n';
            return kExitOk;
        }
    } catch (const UsageError& err) {
        std::cerr << "usage error: " << err.what() << '\n';
        return kExitUsage;
    } catch (const parse_error& err) {
        std::cerr << "parse error: " << err.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& err) {
        std::cerr << "usage error: " << err.what() << '\n';
        return kExitUsage;
    } catch (const resource_limit_error& err) {
        std::cerr << "resource limit: " << err.what() << '\n';
        return kExitResource;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
