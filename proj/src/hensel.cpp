#include "padic/hensel.hpp"

#include <algorithm>
#include <sstream>

#include <nlohmann/json.hpp>

#include "padic/errors.hpp"

namespace padic {
namespace {

constexpr unsigned kStepCap = 200;

BigInt reduce(const BigInt& v, const BigInt& modulus) { return ((v % modulus) + modulus) % modulus; }

std::string bigint_str(const BigInt& v) { return v.str(); }

nlohmann::ordered_json point_json(std::span<const BigInt> pt) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& c : pt) arr.push_back(bigint_str(c));
    return arr;
}

nlohmann::ordered_json valuation_json(const Valuation& v) {
    if (v.is_infinite()) return "Infinity";
    return v.value();
}

nlohmann::ordered_json certificate_json(const HenselCertificate& cert) {
    nlohmann::ordered_json j;
    j["p"] = cert.p;
    j["base"] = point_json(cert.base);
    j["condition"] = {{"v", valuation_json(cert.condition.v)},
                      {"w", valuation_json(cert.condition.w)},
                      {"holds", cert.condition.holds}};
    j["precision"] = cert.precision;
    j["approximation"] = point_json(cert.approximation);
    j["exact"] = cert.exact;
    auto trace = nlohmann::ordered_json::array();
    for (const auto& it : cert.trace)
        trace.push_back({{"point", point_json(it.point)},
                         {"residual_valuation", valuation_json(it.residual_valuation)},
                         {"precision", it.precision}});
    j["trace"] = trace;
    return j;
}

Valuation residual_valuation(const PolySystem& sys, std::span<const BigInt> a, std::int64_t p) {
    return min(vp(sys.f.eval_exact(a), p), vp(sys.g.eval_exact(a), p));
}

}  // namespace

PolySystem::PolySystem(Polynomial f_, Polynomial g_)
    : f(f_.with_arity(2)), g(g_.with_arity(2)) {}

HenselCondition hensel_condition(const PolySystem& sys, std::span<const BigInt> a,
                                 std::int64_t p) {
    require_prime(p);
    if (a.size() != 2) throw std::invalid_argument("hensel_condition: point must have 2 coordinates");
    HenselCondition cond;
    cond.v = residual_valuation(sys, a, p);
    cond.w = vp(jacobian_determinant(sys.f, sys.g).eval_exact(a), p);
    if (cond.w.is_infinite())
        cond.holds = false;  // singular Jacobian: outside the lemma's scope
    else
        cond.holds = cond.v.is_infinite() || 2 * cond.v.value() > cond.w.value();
    return cond;
}

HenselCertificate newton_lift(const PolySystem& sys, std::span<const BigInt> a, std::int64_t p,
                              unsigned target_precision, unsigned start_hint) {
    if (target_precision == 0 || target_precision > 4096)
        throw std::invalid_argument("newton_lift: target precision must be in [1, 4096]");
    HenselCertificate cert;
    cert.p = p;
    cert.base = {BigInt(a[0]), BigInt(a[1])};
    cert.condition = hensel_condition(sys, a, p);
    if (!cert.condition.holds) throw lift_error("newton_lift: Hensel condition fails at the base point");

    const unsigned N = target_precision;
    const BigInt target_modulus = int_pow(p, N);

    if (cert.condition.v.is_infinite()) {
        // Exact root: nothing to lift.
        cert.precision = N;
        cert.exact = true;
        cert.approximation = cert.base;
        cert.trace.push_back({cert.base, Valuation::infinity(), N});
        return cert;
    }

    const std::uint64_t w = cert.condition.w.value();
    const unsigned cap = N + static_cast<unsigned>(w);
    unsigned prec = std::max<unsigned>(static_cast<unsigned>(w) + 1, std::max(start_hint, 1u));
    prec = std::min(prec, cap);

    const Polynomial fx = sys.f.hasse_derivative({1, 0}), fy = sys.f.hasse_derivative({0, 1});
    const Polynomial gx = sys.g.hasse_derivative({1, 0}), gy = sys.g.hasse_derivative({0, 1});
    const BigInt pw = int_pow(p, static_cast<std::uint64_t>(w));

    BigInt modulus = int_pow(p, prec);
    std::array<BigInt, 2> x = {reduce(a[0], modulus), reduce(a[1], modulus)};
    cert.trace.push_back({x, min(residual_valuation(sys, x, p), Valuation(prec)), prec});

    for (unsigned step = 0; step < kStepCap; ++step) {
        BigInt rf = sys.f.eval_exact(x), rg = sys.g.eval_exact(x);
        if (prec >= cap && reduce(rf, target_modulus) == 0 && reduce(rg, target_modulus) == 0) {
            cert.precision = N;
            cert.exact = rf == 0 && rg == 0;
            cert.approximation = {reduce(x[0], target_modulus), reduce(x[1], target_modulus)};
            return cert;
        }
        BigInt det = jacobian_determinant(sys.f, sys.g).eval_exact(x);
        if (det == 0 || vp(det, p) != Valuation(w))
            throw lift_error("newton_lift: Jacobian valuation drifted from w");
        BigInt unit = det / pw;
        // delta = J^{-1} F = adj(J) F / (p^w u); the adjugate product must be
        // divisible by p^w for the step to stay in Z_p.
        BigInt d0 = gy.eval_exact(x) * rf - fy.eval_exact(x) * rg;
        BigInt d1 = -gx.eval_exact(x) * rf + fx.eval_exact(x) * rg;
        if (d0 % pw != 0 || d1 % pw != 0)
            throw lift_error("newton_lift: step is not p-integral");
        prec = std::min(prec * 2, cap);
        modulus = int_pow(p, prec);
        BigInt uinv = mod_inverse(reduce(unit, modulus), modulus);
        x[0] = reduce(x[0] - (d0 / pw) * uinv, modulus);
        x[1] = reduce(x[1] - (d1 / pw) * uinv, modulus);
        cert.trace.push_back({x, min(residual_valuation(sys, x, p), Valuation(prec)), prec});
    }
    throw lift_error("newton_lift: no convergence within the step cap");
}

BranchCertificate certify_branch(const Polynomial& f, const ResidueClass& node, std::int64_t p,
                                 unsigned precision, std::size_t trial_budget) {
    require_prime(p);
    if (node.rep.size() != 2)
        throw std::invalid_argument("certify_branch: node must be bivariate");
    Polynomial f2 = f.with_arity(2);
    const BigInt modulus = node.modulus();
    if (f2.eval_mod(node.rep, modulus) != 0)
        throw std::invalid_argument("certify_branch: node is not a star node");
    if (trial_budget == 0)
        trial_budget = 2 * int_pow(p, std::min<unsigned>(node.level, 4)).convert_to<std::size_t>();

    BranchCertificate out;
    out.node = node;
    const unsigned N = std::max<unsigned>(precision, node.level);
    const BigInt target_modulus = int_pow(p, N);

    std::size_t trials = 0;
    // Signed lifts of the representative in canonical order -1, 0, 1, -2,
    // 2, ... (the two class members of least absolute value first, negative
    // before positive); each lift contributes the two lines x = r, y = s.
    for (std::size_t li = 0; trials < trial_budget; ++li) {
        BigInt lift = li == 0 ? BigInt(-1)
                    : li == 1 ? BigInt(0)
                    : li % 2 == 0 ? BigInt(li / 2) : -BigInt((li + 1) / 2);
        for (int coord = 0; coord < 2 && trials < trial_budget; ++coord) {
            ++trials;
            std::array<BigInt, 2> a = {node.rep[0], node.rep[1]};
            a[coord] += lift * modulus;
            Polynomial line = Polynomial::monomial(1, coord == 0 ? 1 : 0, coord == 0 ? 0 : 1) -
                              Polynomial::monomial(a[coord], 0, 0);
            if (f2.eval_exact(a) == 0) {
                // Exact root on the line: certify without lifting.
                PolySystem sys(f2, line);
                HenselCertificate cert;
                cert.p = p;
                cert.base = a;
                cert.condition = hensel_condition(sys, a, p);
                cert.precision = N;
                cert.exact = true;
                cert.approximation = {reduce(a[0], target_modulus), reduce(a[1], target_modulus)};
                cert.trace.push_back({a, Valuation::infinity(), N});
                out.constraint = line.str();
                out.verdict = BranchVerdict::certified;
                out.certificate = std::move(cert);
                return out;
            }
            PolySystem sys(f2, line);
            HenselCondition cond = hensel_condition(sys, a, p);
            if (!cond.holds) continue;
            try {
                HenselCertificate cert = newton_lift(sys, a, p, N, node.level);
                // The lifted root must extend the node's class.
                bool extends = true;
                for (int i = 0; i < 2; ++i)
                    if (reduce(cert.approximation[i] - node.rep[i], modulus) != 0) extends = false;
                if (!extends) continue;
                out.constraint = line.str();
                out.verdict = BranchVerdict::certified;
                out.certificate = std::move(cert);
                return out;
            } catch (const lift_error&) {
                // The condition is sufficient only at a true approximate
                // root; a failed trial is not an error.
                continue;
            }
        }
    }
    return out;
}

std::array<std::vector<int>, 2> digits_of_root(const HenselCertificate& cert, std::int64_t p,
                                               unsigned count) {
    if (cert.precision < count)
        throw std::invalid_argument("digits_of_root: certificate precision below digit count");
    std::array<std::vector<int>, 2> out;
    for (int i = 0; i < 2; ++i) {
        BigInt v = reduce(cert.approximation[i], int_pow(p, count));
        out[i].reserve(count);
        for (unsigned d = 0; d < count; ++d) {
            out[i].push_back((v % p).convert_to<int>());
            v /= p;
        }
    }
    return out;
}

std::string HenselCertificate::json() const {
    nlohmann::ordered_json j;
    j["schema"] = "padic-hensel/1";
    j["kind"] = "hensel-certificate";
    j.update(certificate_json(*this));
    return j.dump(2) + "\n";
}

std::string BranchCertificate::json() const {
    nlohmann::ordered_json j;
    j["schema"] = "padic-hensel/1";
    j["kind"] = "branch-certificate";
    j["node"] = {{"p", node.p}, {"level", node.level}, {"rep", point_json(node.rep)}};
    j["constraint"] = constraint;
    j["verdict"] = verdict == BranchVerdict::certified ? "Certified" : "Unknown";
    if (certificate) j["certificate"] = certificate_json(*certificate);
    else j["certificate"] = nullptr;
    return j.dump(2) + "\n";
}

}  // namespace padic
