// Acceptance run: one PASS/FAIL line per criterion. Exits nonzero only when a
// criterion fails for a reason not listed in kKnownFailures.

#include "sblob/errors.hpp"
#include "sblob/homs.hpp"
#include "sblob/identities.hpp"
#include "sblob/qhpos.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <chrono>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

using namespace sblob;

namespace {

// Pinned limits. Every comparison below is exact RingElem or integer
// equality; the only tolerances are these runtime budgets.
constexpr double kPresentationBudgetSeconds = 120.0;
constexpr double kFamily1BudgetSeconds = 600.0;
constexpr int kIdentitySubstitutions = 20;
constexpr unsigned kIdentitySeed = 2024;

struct Outcome {
    bool pass = false;
    std::string detail;
    // Set when the failure is exactly the documented one.
    bool known = false;
};

// Criteria allowed to fail, with the reason. A listed criterion still
// counts as unexpected if it fails in any other way.
const std::map<int, std::string> kKnownFailures = {
    {5, "family 1 with u = m + 1 maps into Sb_n(0); f kills the source but not the image, "
        "so the explicit map is not a homomorphism there"},
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Specialization key(const std::string& k) { return Specialization::parse_key(k); }

// ---------------------------------------------------------------- 1

Outcome presentation_fidelity() {
    const std::vector<std::string> points = {
        "q=root:3;w1=fixed:1:1;w2=fixed:1:-2;k=value:5/3",
        "q=root:4;w1=fixed:1:-3;w2=fixed:1:-2;k=value:2",
        "q=root:5;w1=fixed:1:1;w2=fixed:1:1;k=value:7/2",
        "q=value:7/5;w1=fixed:3/2:0;w2=fixed:5/7:0;k=value:11/3",
        "q=root:3;w1=fixed:1:1;w2=fixed:1:-2;k=theta:1:1:1",
    };
    auto t0 = std::chrono::steady_clock::now();
    int checked = 0, failed = 0;
    std::string first;
    for (int n = 2; n <= 6; ++n) {
        std::vector<const Ring*> rings{Ring::generic()};
        for (const auto& p : points) rings.push_back(Ring::get(key(p)));
        for (const Ring* r : rings) {
            BlobAlgebra a(n, r, Parametrisation::GMP1);
            for (const auto& rel : presentation_check(a)) {
                ++checked;
                if (!rel.pass) {
                    ++failed;
                    if (first.empty()) first = fmt::format("n={} {} at {}", n, rel.name, r->spec().key());
                }
            }
        }
    }
    const double t = seconds_since(t0);
    Outcome o;
    o.pass = failed == 0 && t < kPresentationBudgetSeconds;
    o.detail = fmt::format("{} relations, {} failed, {:.1f}s (budget {:.0f}s){}", checked, failed, t,
                           kPresentationBudgetSeconds, first.empty() ? "" : "; first: " + first);
    return o;
}

// ---------------------------------------------------------------- 2

Outcome cellular_dimension_identity() {
    Outcome o{true, ""};
    std::vector<std::string> totals;
    for (int n = 1; n <= 6; ++n) {
        const size_t full = enumerate_basis(n).size();
        size_t sum = 0;
        for (int l : cell_labels(n)) {
            const size_t d = cell_basis(n, l).size();
            sum += d * d;
        }
        if (sum != full) o.pass = false;
        totals.push_back(fmt::format("n={}:{}/{}", n, full, sum));
    }
    o.detail = "diagrams/sum of squares " + fmt::format("{}", fmt::join(totals, " "));
    return o;
}

// ---------------------------------------------------------------- 3

Outcome sb7_dimension() {
    BlobAlgebra a(7, Ring::generic(), Parametrisation::GMP1);
    CellModule m(&a, -1);
    const size_t basis = cell_basis(7, -1).size();
    return {m.dim() == 64 && basis == 64, fmt::format("dim Sb_7(-1) = {}", m.dim())};
}

// ---------------------------------------------------------------- 4

Outcome gram_determinants() {
    const Ring* r = Ring::generic();
    const Params p = gram_normalisation(r);
    int checked = 0;
    std::vector<std::string> bad;
    auto check = [&](bool ok, const std::string& what) {
        ++checked;
        if (!ok) bad.push_back(what);
    };
    for (int n = 3; n <= 10; ++n)
        check(det_bareiss(tl_gram(n, n - 2, p.delta), r) == evaluate(det_formula_tl(n), r), fmt::format("TL n={}", n));
    for (int n = 3; n <= 8; ++n) {
        check(det_bareiss(mu_matrix(b_plus(p), n - 2, p.delta), r) == evaluate(det_formula_bplus(n), r),
              fmt::format("B+ n={}", n));
        check(det_bareiss(mu_matrix(b_minus(p), n - 3, p.delta), r) == evaluate(det_formula_bminus(n), r),
              fmt::format("B- n={}", n));
        check(det_bareiss(m_prime(n, p), r) == evaluate(det_formula_mprime(n), r), fmt::format("M' n={}", n));
    }
    return {bad.empty(), fmt::format("{} determinants, mismatches: {}", checked, bad.empty() ? "none" : fmt::format("{}", fmt::join(bad, ", ")))};
}

// ---------------------------------------------------------------- 5

Outcome family1() {
    auto t0 = std::chrono::steady_clock::now();
    int instances = 0, controls = 0;
    std::vector<std::string> failing, expected, control_bad;
    for (int l = 2; l <= 3; ++l)
        for (int n = 1; n <= 7; ++n)
            for (int m = 0; m < n; ++m)
                for (int u = m + 1; m + u <= n; ++u) {
                    if ((n - m - u) % 2 != 0) continue;
                    for (int w1 : {m, m + 2 * l, m - 2 * l}) {
                        HomSpec h = family1_spec(n, m, u, l, w1);
                        ++instances;
                        if (u == m + 1) expected.push_back(h.str());
                        if (!verify_annihilation(build(h)).pass()) failing.push_back(h.str());
                        HomSpec bad = h;
                        bad.spec.w1 = WSpec::integer(w1 + 1);
                        bad.enforce_condition = false;
                        ++controls;
                        if (verify_annihilation(build(bad)).pass()) control_bad.push_back(bad.str());
                    }
                }
    const double t = seconds_since(t0);
    Outcome o;
    o.pass = failing.empty() && control_bad.empty() && t < kFamily1BudgetSeconds;
    o.known = !o.pass && failing == expected && control_bad.empty() && t < kFamily1BudgetSeconds;
    o.detail = fmt::format("{} instances, {} fail ({} with u = m + 1), {} controls, {} controls pass wrongly, {:.1f}s (budget {:.0f}s)",
                           instances, failing.size(), expected.size(), controls, control_bad.size(), t,
                           kFamily1BudgetSeconds);
    if (!o.known && !failing.empty() && failing != expected) o.detail += "; first unexpected: " + failing.front();
    return o;
}

// ---------------------------------------------------------------- 6

Outcome family3() {
    std::vector<std::string> bad;
    // Worked n = 5, c = 2 instance: the fourth coefficient cancels only
    // under the linking relation.
    HomSpec h52 = family3_spec(5, 2, 1);
    const Ring* r = Ring::get(h52.spec);
    const BracketProduct M = compute_M(5, 2, h52.spec, true);
    const BracketProduct pre =
        M * BracketProduct{1, {}, {BracketExpr::integer(2), BracketExpr::w1(), BracketExpr::w1(-1), BracketExpr::w2()}};
    const std::vector<BracketProduct> terms{
        pre * BracketProduct{1, {BracketExpr::integer(2), BracketExpr::w1()}, {}},
        pre * BracketProduct{-1, {BracketExpr::integer(2), BracketExpr::integer(2), BracketExpr::w1(-1)}, {}},
        pre * BracketProduct{1, {BracketExpr::w2(1), BracketExpr::integer(2), BracketExpr::w1(), BracketExpr::w1(-1), BracketExpr::w2()}, {}} *
            M.inverse(),
        pre * BracketProduct{1, {BracketExpr::w1(-1)}, {}}};
    RingElem linked = RingElem::zero(r), free = RingElem::zero(Ring::generic());
    for (const auto& t : terms) {
        linked += evaluate(t, r);
        free += evaluate(t, Ring::generic());
    }
    if (!linked.is_zero()) bad.push_back("fourth coefficient");
    if (free.is_zero()) bad.push_back("fourth coefficient without linking");
    for (bool integral : {false, true}) {
        HomSpec h = h52;
        h.integral_M = integral;
        if (!verify_annihilation(build(h)).pass()) bad.push_back(h.str());
    }

    int instances = 0;
    for (int n = 2; n <= 6; ++n)
        for (int c = 1; 2 * c < n; ++c)
            for (int sign : {1, -1}) {
                HomSpec h = family3_spec(n, c, sign);
                ++instances;
                if (!verify_annihilation(build(h)).pass()) bad.push_back(h.str());
                const int dim = hom_space(n, h.src, h.dst, concretize(h.spec, 3), h.param).dimension;
                if (dim != 1) bad.push_back(fmt::format("{} hom dim {}", h.str(), dim));
            }
    return {bad.empty(), fmt::format("n=5 c=2 worked instance and {} instances n <= 6, both signs; problems: {}", instances,
                                     bad.empty() ? "none" : fmt::format("{}", fmt::join(bad, ", ")))};
}

// ---------------------------------------------------------------- 7

Outcome family4() {
    std::vector<std::string> bad;
    HomInstance inst = build(family4_spec(7, 3));
    const size_t nonzero = inst.images()[0].coeffs().size();
    if (nonzero != 24) bad.push_back(fmt::format("{} nonzero coefficients", nonzero));
    VerificationReport rep = verify_annihilation(inst);
    if (!rep.pass() || rep.checks.size() != 8) bad.push_back("n=7 l=3 annihilation");
    for (auto [n, l] : std::vector<std::pair<int, int>>{{7, 3}, {8, 3}, {9, 4}}) {
        HomInstance h = build(family4_spec(n, l));
        const auto& v = h.images()[0].coeffs();
        for (int j = 0; j < h.target().dim(); ++j)
            if ((v.count(j) == 1) != family4_support(h.target().basis()[static_cast<size_t>(j)], l)) {
                bad.push_back(fmt::format("support n={} l={}", n, l));
                break;
            }
    }
    return {bad.empty(), fmt::format("{} nonzero coefficients, {} generators checked; problems: {}", nonzero, rep.checks.size(),
                                     bad.empty() ? "none" : fmt::format("{}", fmt::join(bad, ", ")))};
}

// ---------------------------------------------------------------- 8

// Every globalised instance with n <= 6 reachable from the base instances by
// G and G'.
void lift(const HomSpec& h, std::vector<HomSpec>& out) {
    if (h.n >= 6) return;
    for (Swap s : {Swap::G, Swap::GPrime}) {
        HomSpec g = globalize_spec(h, s);
        out.push_back(g);
        lift(g, out);
    }
}

Outcome globalized_existence() {
    std::vector<HomSpec> bases;
    for (int l = 3; l <= 5; ++l)
        for (int n = 2; n <= 5; ++n)
            for (int m = 0; m < n; ++m)
                for (int u = m + 2; m + u <= n; ++u) {
                    if ((n - m - u) % 2 != 0) continue;
                    bases.push_back(family1_spec(n, m, u, l, m));
                    bases.push_back(family2_spec(n, m, u, l, m));
                }
    for (int n = 2; n <= 5; ++n)
        for (int c = 1; 2 * c < n; ++c)
            for (int sign : {1, -1}) bases.push_back(family3_spec(n, c, sign));

    std::vector<HomSpec> lifted;
    for (const auto& b : bases) lift(b, lifted);
    int checked = 0, skipped = 0;
    std::map<Family, int> per_family;
    std::vector<std::string> bad;
    for (const auto& g : lifted) {
        try {
            const int d = hom_space(g.n, g.src, g.dst, concretize(g.spec, 9), g.param).dimension;
            ++checked;
            ++per_family[g.family];
            if (d < 1) bad.push_back(g.str());
        } catch (const NonUnitParameter&) {
            ++skipped;
        }
    }
    for (Family f : {Family::F1, Family::F2, Family::F3})
        if (per_family[f] == 0) bad.push_back("no checked instance of " + to_string(f));

    std::mt19937 rng(41);
    int pairs = 0;
    for (int n = 1; n <= 4; ++n) {
        Specialization s = concretize(Specialization{}, static_cast<unsigned>(rng()));
        for (int a : cell_labels(n))
            for (int b : cell_labels(n)) {
                if (a == b) continue;
                ++pairs;
                if (hom_space(n, a, b, s).dimension != 0) bad.push_back(fmt::format("generic n={} {}->{}", n, a, b));
            }
    }
    return {bad.empty(), fmt::format("{} globalised instances checked (F1 {}, F2 {}, F3 {}), {} skipped as non-unit, "
                                     "{} generic pairs; problems: {}",
                                     checked, per_family[Family::F1], per_family[Family::F2], per_family[Family::F3], skipped,
                                     pairs, bad.empty() ? "none" : fmt::format("{}", fmt::join(bad, ", ")))};
}

// ---------------------------------------------------------------- 9

Outcome identities() {
    std::vector<std::string> bad;
    int n = 0;
    for (const auto& id : identity_battery()) {
        IdentityReport r = check_identity(id, kIdentitySubstitutions, kIdentitySeed);
        ++n;
        if (!r.ok() || r.substitutions != kIdentitySubstitutions) bad.push_back(id.name + " (" + r.failure + ")");
    }
    return {bad.empty(), fmt::format("{} identities, symbolic and {} substitutions each; failing: {}", n,
                                     kIdentitySubstitutions, bad.empty() ? "none" : fmt::format("{}", fmt::join(bad, ", ")))};
}

// ---------------------------------------------------------------- 10

Outcome poset() {
    auto pts = load_battery(std::string(SBLOB_FIXTURE_DIR) + "/battery.json");
    std::vector<std::string> bad, summary;
    for (int n = 1; n <= 5; ++n) {
        PosetAudit a = audit_poset(n, pts, 4);
        if (!a.subset_of_cellular) bad.push_back(fmt::format("n={} not a subset", n));
        if (!a.vanishing_holds()) bad.push_back(fmt::format("n={} {} vanishing violations", n, a.violations.size()));
        if (a.missing_witnesses() != 0) bad.push_back(fmt::format("n={} {} links without witness", n, a.missing_witnesses()));
        summary.push_back(fmt::format("n={}: {} points, {} links", n, a.used.size(), a.witnesses.size()));
    }
    return {bad.empty(), fmt::format("{}; problems: {}", fmt::join(summary, ", "),
                                     bad.empty() ? "none" : fmt::format("{}", fmt::join(bad, ", ")))};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"presentation fidelity", presentation_fidelity},
        {"cellular dimension identity", cellular_dimension_identity},
        {"dim Sb_7(-1) = 64", sb7_dimension},
        {"Gram determinants", gram_determinants},
        {"family 1", family1},
        {"family 3", family3},
        {"family 4", family4},
        {"globalised existence", globalized_existence},
        {"identity battery", identities},
        {"coarsened poset", poset},
    };
    int unexpected = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::string tag = o.pass ? "PASS" : "FAIL";
        if (!o.pass && o.known && kKnownFailures.count(id)) tag += " (known: " + kKnownFailures.at(id) + ")";
        else if (!o.pass) ++unexpected;
        fmt::print("criterion {:2}: {} {}: {}\n", id, tag, criteria[i].first, o.detail);
        std::fflush(stdout);
    }
    fmt::print("{} unexpected failure(s)\n", unexpected);
    return unexpected == 0 ? 0 : 1;
}
