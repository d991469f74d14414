// Command-line front end for the symplectic blob algebra library.
//
// Exit codes: 0 success, 1 a verification failed, 2 invalid input.

#include "sblob/errors.hpp"
#include "sblob/identities.hpp"
#include "sblob/qhpos.hpp"
#include "sblob/serialize.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

using namespace sblob;

namespace {

constexpr int kOk = 0;
constexpr int kVerificationFailed = 1;
constexpr int kInvalidInput = 2;

struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Options shared by every subcommand.
struct Common {
    std::string format = "text";
    std::string output;
};

// Specialisation flags. --spec gives a full key; the other flags override
// single fields of it.
struct SpecFlags {
    std::string key;
    int l = 0;
    std::string q, w1, w2, kappa;
    std::string param = "GMP2";

    void add(CLI::App* app) {
        app->add_option("--spec", key, "specialisation key, e.g. q=root:3;w1=fixed:1:1;w2=formal;k=value:2");
        app->add_option("--l", l, "q is a primitive 2l-th root of unity (sets q=root:l)");
        app->add_option("--q", q, "q field: formal | value:<s0> | root:<l>");
        app->add_option("--w1", w1, "w1 field: formal | fixed:<c>:<w>");
        app->add_option("--w2", w2, "w2 field: formal | fixed:<c>:<w> | linked:<m>:<sign> | linkeddiff:<m>:<sign>");
        app->add_option("--kappa", kappa, "kappa field: formal:<sign> | value:<r> | theta:<2 theta>:<parity>:<sign>");
        app->add_option("--param", param, "parametrisation: GMP1 | GMP2 | DN");
    }

    Specialization spec() const {
        Specialization s = Specialization::parse_key(key);
        std::ostringstream o;
        o << s.key();
        if (l > 0) o << ";q=root:" << l;
        if (!q.empty()) o << ";q=" << q;
        if (!w1.empty()) o << ";w1=" << w1;
        if (!w2.empty()) o << ";w2=" << w2;
        if (!kappa.empty()) o << ";k=" << kappa;
        return Specialization::parse_key(o.str());
    }
    Parametrisation parametrisation() const { return parse_parametrisation(param); }
};

// Writes the result to --output, to $SBLOB_OUTPUT_DIR/<command>.<ext> when
// that variable is set and no --output is given, or to stdout.
void emit(const Common& c, const std::string& command, const json& j, const std::string& text,
          const std::string& text_ext = "txt") {
    const bool as_json = c.format == "json";
    const std::string body = as_json ? j.dump(2) + "\n" : text;
    std::filesystem::path path;
    const char* dir = std::getenv("SBLOB_OUTPUT_DIR");
    if (c.output == "-") {
        std::cout << body;
        return;
    }
    if (!c.output.empty()) {
        path = c.output;
        if (path.is_relative() && dir && *dir) path = std::filesystem::path(dir) / path;
    } else if (dir && *dir) {
        path = std::filesystem::path(dir) / (command + "." + (as_json ? "json" : text_ext));
    } else {
        std::cout << body;
        return;
    }
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << body;
}

void require_label(int n, int l) {
    if (!valid_label(n, l))
        throw InputError("label " + std::to_string(l) + " is not in Lambda_" + std::to_string(n) +
                         " (labels are 0, +-1, ..., +-(n-1), -n)");
}

void require_n(int n, int lo = 1) {
    if (n < lo) throw InputError("--n must be at least " + std::to_string(lo));
}

std::string matrix_text(const Matrix& m) {
    std::ostringstream o;
    for (const auto& row : m) {
        for (size_t k = 0; k < row.size(); ++k) o << (k ? " | " : "") << row[k].str();
        o << "\n";
    }
    return o.str();
}

// ---------------------------------------------------------------- commands

int cmd_basis(const Common& c, int n, std::optional<int> label) {
    require_n(n);
    std::vector<Diagram> ds;
    json j;
    j["n"] = n;
    if (label) {
        require_label(n, *label);
        ds = cell_basis(n, *label);
        j["label"] = *label;
    } else {
        ds = enumerate_basis(n);
    }
    json list = json::array();
    std::ostringstream t;
    t << (label ? "Sb_" + std::to_string(n) + "(" + std::to_string(*label) + ")" : "b_" + std::to_string(n))
      << " dimension " << ds.size() << "\n";
    for (const auto& d : ds) {
        list.push_back(d.str());
        t << d.str() << "\n";
    }
    j["dim"] = ds.size();
    j["diagrams"] = list;
    emit(c, "basis", j, t.str());
    return kOk;
}

int cmd_multiply(const Common& c, const SpecFlags& sf, const std::string& a, const std::string& b) {
    Diagram x = Diagram::parse(a), y = Diagram::parse(b);
    if (x.n_bot() != y.n_top()) throw InputError("diagram shapes do not compose (bottom of --a != top of --b)");
    if (x.n_top() != y.n_bot() || x.n_top() != x.n_bot())
        throw InputError("multiply expects two (n, n)-diagrams of the algebra");
    BlobAlgebra alg(x.n_top(), Ring::get(sf.spec()), sf.parametrisation());
    Composite r = compose(x, y);
    RingElem coeff = alg.scalar(r.mono);
    json j = {{"diagram", r.d.str()}, {"coefficient", to_json(coeff)}, {"monomial", r.mono.str()}};
    emit(c, "multiply", j, coeff.str() + " * " + r.d.str() + "\n");
    return kOk;
}

int cmd_gram(const Common& c, const SpecFlags& sf, int n, int label, bool gram_norm) {
    require_n(n);
    require_label(n, label);
    const Ring* r = Ring::get(sf.spec());
    BlobAlgebra alg = gram_norm ? BlobAlgebra(n, r, gram_normalisation(r)) : BlobAlgebra(n, r, sf.parametrisation());
    CellModule m(&alg, label);
    Matrix g = m.gram();
    json j = to_json(g, r);
    json basis = json::array();
    for (const auto& h : m.basis()) basis.push_back(h.str());
    j["basis"] = basis;
    j["n"] = n;
    j["label"] = label;
    emit(c, "gram", j, matrix_text(g));
    return kOk;
}

int cmd_det(const Common& c, const SpecFlags& sf, int n, int label, bool gram_norm) {
    require_n(n);
    require_label(n, label);
    const Ring* r = Ring::get(sf.spec());
    BlobAlgebra alg = gram_norm ? BlobAlgebra(n, r, gram_normalisation(r)) : BlobAlgebra(n, r, sf.parametrisation());
    RingElem d = CellModule(&alg, label).gram_det();
    json j = {{"n", n}, {"label", label}, {"det", to_json(d)}};
    emit(c, "det", j, d.str() + "\n");
    return kOk;
}

struct HomFlags {
    std::string family;
    int n = 0, m = 0, u = 0, l = 0, c = 0, sign = 1;
    std::optional<int> w;
    bool integral_M = false, experimental = false, no_enforce = false;
    std::vector<std::string> globalize;
    SpecFlags spec;

    void add(CLI::App* app) {
        app->add_option("--family", family, "F1 | F2 | F3 | F4")->required();
        app->add_option("--n", n, "number of strands")->required();
        app->add_option("--m", m, "families 1/2: m");
        app->add_option("--u", u, "families 1/2: u (t = m + u)");
        app->add_option("--l", l, "q is a primitive 2l-th root of unity");
        app->add_option("--w", w, "families 1/2: integral w1 (F1) or w2 (F2); default m");
        app->add_option("--c", c, "family 3: number of arcs");
        app->add_option("--sign", sign, "family 3: sign of the Linked w2");
        app->add_flag("--integral-M", integral_M, "family 3: use the bracket LCM normalisation");
        app->add_flag("--experimental-integral-w1", experimental, "family 4: allow integral w1");
        app->add_flag("--no-enforce", no_enforce, "build even if the family condition fails");
        app->add_option("--globalize", globalize, "functors to apply after the base construction: G, G'");
        app->add_option("--param", spec.param, "parametrisation: GMP1 | GMP2 | DN");
    }

    HomSpec make() const {
        HomSpec h;
        switch (parse_family(family)) {
            case Family::F1:
                if (l < 2) throw InputError("family 1 needs --l >= 2");
                h = family1_spec(n, m, u, l, w.value_or(m));
                break;
            case Family::F2:
                if (l < 2) throw InputError("family 2 needs --l >= 2");
                h = family2_spec(n, m, u, l, w.value_or(m));
                break;
            case Family::F3: {
                QSpec q;
                if (l > 0) {
                    q.mode = QMode::Root;
                    q.l = l;
                }
                h = family3_spec(n, c, sign, q);
                break;
            }
            case Family::F4:
                if (l < 2) throw InputError("family 4 needs --l >= 2");
                h = family4_spec(n, l);
                break;
        }
        h.param = spec.parametrisation();
        h.integral_M = integral_M;
        h.experimental_integral_w1 = experimental;
        h.enforce_condition = !no_enforce;
        for (const auto& g : globalize) {
            if (g == "G")
                h = globalize_spec(h, Swap::G);
            else if (g == "G'" || g == "Gp")
                h = globalize_spec(h, Swap::GPrime);
            else
                throw InputError("unknown functor '" + g + "' (expected G or G')");
        }
        return h;
    }
};

int cmd_hom_build(const Common& c, const HomFlags& f) {
    HomSpec spec = f.make();
    if (!spec.history.empty()) throw InputError("hom-build constructs base instances only; use hom-space for globalised ones");
    HomInstance h = build(spec);
    HomImages im = hom_images(h);
    std::ostringstream t;
    t << im.spec << "\n";
    for (size_t i = 0; i < im.images.size(); ++i) {
        t << "image of source basis element " << i << ": " << im.images[i].size() << " terms\n";
        for (const auto& [d, coeff] : im.images[i]) t << "  " << coeff.str() << "  " << d.str() << "\n";
    }
    emit(c, "hom-build", to_json(im), t.str());
    return kOk;
}

int cmd_hom_verify(const Common& c, const HomFlags& f) {
    HomSpec spec = f.make();
    HomInstance h = build(spec);
    VerificationReport r = verify_annihilation(h);
    std::ostringstream t;
    t << spec.str() << "\n";
    for (const auto& g : r.checks) t << "  " << g.generator << ": " << (g.pass ? "pass" : "FAIL " + g.residual) << "\n";
    t << (r.pass() ? "PASS" : "FAIL") << (r.image_nonzero ? "" : " (zero image)") << "\n";
    json j = to_json(r);
    j["hom"] = spec.str();
    emit(c, "hom-verify", j, t.str());
    return r.pass() ? kOk : kVerificationFailed;
}

int cmd_hom_space(const Common& c, const SpecFlags& sf, int n, int src, int dst, unsigned seed) {
    require_n(n);
    require_label(n, src);
    require_label(n, dst);
    Specialization s = sf.spec();
    if (!s.concrete()) s = concretize(s, seed);
    HomSpaceResult r = hom_space(n, src, dst, s, sf.parametrisation());
    const Ring* ring = Ring::get(s);
    std::ostringstream t;
    t << "Hom(Sb_" << n << "(" << src << "), Sb_" << n << "(" << dst << ")) at " << s.key() << ": dimension "
      << r.dimension << "\n";
    json j = to_json(r, ring);
    j["n"] = n;
    j["source"] = src;
    j["target"] = dst;
    emit(c, "hom-space", j, t.str());
    return kOk;
}

int cmd_poset(const Common& c, int n, const std::string& kind) {
    require_n(n);
    LabelPoset p;
    if (kind == "cellular")
        p = cellular_poset(n);
    else if (kind == "coarsened")
        p = coarsened_poset(n);
    else
        throw InputError("--kind must be cellular or coarsened");
    json j = to_json(p);
    j["kind"] = kind;
    emit(c, "poset", j, p.dot(kind + "_" + std::to_string(n)), "dot");
    return kOk;
}

int cmd_decomp(const Common& c, const SpecFlags& sf, int n, const std::string& battery, int jobs) {
    require_n(n);
    if (!battery.empty()) {
        PosetAudit a = audit_poset(n, load_battery(battery), jobs);
        std::ostringstream t;
        t << "n = " << n << ": " << a.used.size() << " points used, " << a.skipped.size() << " skipped (non-unit)\n";
        for (const auto& s : a.skipped) t << "  skipped " << s << "\n";
        for (const auto& [p, l, m, k] : a.violations)
            t << "  VIOLATION " << p << ": [Sb(" << l << "):L(" << m << ")] = " << k << "\n";
        for (const auto& w : a.witnesses)
            t << "  link " << w.upper << " > " << w.lower << ": "
              << (w.point.empty() ? "no witness" : w.point + " (multiplicity " + std::to_string(w.multiplicity) + ")")
              << "\n";
        t << "subset of cellular order: " << (a.subset_of_cellular ? "yes" : "NO") << "\n";
        const bool ok = a.vanishing_holds() && a.subset_of_cellular && a.missing_witnesses() == 0;
        t << (ok ? "PASS" : "FAIL") << "\n";
        emit(c, "decomp", to_json(a), t.str());
        return ok ? kOk : kVerificationFailed;
    }
    DecompositionData d = decomposition(n, sf.spec(), sf.parametrisation());
    std::ostringstream t;
    t << "decomposition matrix at " << d.spec_key << " (rows Sb(lambda), columns L(mu))\n      ";
    for (int m : d.labels) t << std::setw(4) << m;
    t << "\n";
    for (int l : d.labels) {
        t << std::setw(4) << l << ": ";
        for (int m : d.labels) t << std::setw(4) << d.at(l, m);
        t << "   dim Sb " << d.standard_dims.at(l) << ", dim L " << d.simple_dims.at(l) << "\n";
    }
    emit(c, "decomp", to_json(d), t.str());
    return kOk;
}

int cmd_identities(const Common& c, const std::string& battery, const std::string& name, int subs, unsigned seed,
                   int jobs) {
    std::vector<const Identity*> ids;
    if (name.empty())
        for (const auto& id : identity_battery()) ids.push_back(&id);
    else
        ids.push_back(&find_identity(name));
    std::vector<IdentityReport> reps(ids.size());
    if (jobs <= 1) {
        for (size_t i = 0; i < ids.size(); ++i) reps[i] = check_identity(*ids[i], subs, seed);
    } else {
        std::vector<std::future<IdentityReport>> fs;
        for (size_t i = 0; i < ids.size(); ++i)
            fs.push_back(std::async(std::launch::async, [&, i] { return check_identity(*ids[i], subs, seed); }));
        for (size_t i = 0; i < ids.size(); ++i) reps[i] = fs[i].get();
    }
    bool all = true;
    json j = json::array();
    std::ostringstream t;
    for (size_t i = 0; i < ids.size(); ++i) {
        const auto& r = reps[i];
        all = all && r.ok();
        j.push_back(to_json(r));
        t << (r.ok() ? "pass " : "FAIL ") << r.name << "  symbolic " << (r.symbolic_ok ? "ok" : "failed") << " ("
          << r.symbolic_cases << " cases), substitutions " << r.substitutions_ok << "/" << r.substitutions;
        if (!r.failure.empty()) t << "  first failure: " << r.failure;
        t << "\n    " << ids[i]->statement << "\n";
    }
    t << (all ? "all identities hold" : "some identities FAILED") << "\n";
    emit(c, "identities", json{{"battery", battery}, {"results", j}, {"pass", all}}, t.str());
    return all ? kOk : kVerificationFailed;
}

int cmd_presentation(const Common& c, const SpecFlags& sf, int n) {
    require_n(n, 1);
    BlobAlgebra alg(n, Ring::get(sf.spec()), sf.parametrisation());
    auto res = presentation_check(alg);
    bool all = true;
    json j = json::array();
    std::ostringstream t;
    for (const auto& r : res) {
        all = all && r.pass;
        j.push_back({{"relation", r.name}, {"pass", r.pass}});
        t << (r.pass ? "pass " : "FAIL ") << r.name << "\n";
    }
    t << res.size() << " relations, " << (all ? "all hold" : "some FAILED") << "\n";
    emit(c, "presentation-check", json{{"n", n}, {"spec", alg.ring()->spec().key()}, {"relations", j}, {"pass", all}},
         t.str());
    return all ? kOk : kVerificationFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact computations in the symplectic blob algebra b_n^x"};
    app.require_subcommand(1);
    app.fallthrough();
    Common common;
    app.add_option("--format", common.format, "output format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--output", common.output, "output file ('-' for stdout); relative to $SBLOB_OUTPUT_DIR if set");

    int n = 0, label = 0, src = 0, dst = 0, jobs = 1, subs = 20;
    unsigned seed = 1;
    std::optional<int> opt_label;
    bool gram_norm = false;
    std::string a, b, kind = "coarsened", battery, name;

    auto* basis = app.add_subcommand("basis", "list the diagram basis of b_n or of a cell module");
    basis->add_option("--n", n)->required();
    basis->add_option("--label", opt_label, "cell label; omit for the algebra basis");

    SpecFlags mult_spec, gram_spec, det_spec, space_spec, decomp_spec, pres_spec;
    auto* multiply = app.add_subcommand("multiply", "compose two diagrams");
    multiply->add_option("--a", a, "upper diagram")->required();
    multiply->add_option("--b", b, "lower diagram")->required();
    mult_spec.add(multiply);

    auto* gram = app.add_subcommand("gram", "Gram matrix of a cell module");
    gram->add_option("--n", n)->required();
    gram->add_option("--label", label)->required();
    gram->add_flag("--gram-normalisation", gram_norm, "use delta = [2], delta_L = delta_R = 1, kappa = [w]/[w+1]");
    gram_spec.add(gram);

    auto* det = app.add_subcommand("det", "Gram determinant of a cell module");
    det->add_option("--n", n)->required();
    det->add_option("--label", label)->required();
    det->add_flag("--gram-normalisation", gram_norm, "use delta = [2], delta_L = delta_R = 1, kappa = [w]/[w+1]");
    det_spec.add(det);

    HomFlags build_flags, verify_flags;
    auto* hom_build = app.add_subcommand("hom-build", "construct an explicit homomorphism");
    build_flags.add(hom_build);
    auto* hom_verify = app.add_subcommand("hom-verify", "check that a constructed homomorphism intertwines");
    verify_flags.add(hom_verify);

    auto* hom_sp = app.add_subcommand("hom-space", "exact dimension of Hom(Sb_n(src), Sb_n(dst))");
    hom_sp->add_option("--n", n)->required();
    hom_sp->add_option("--src", src)->required();
    hom_sp->add_option("--dst", dst)->required();
    hom_sp->add_option("--seed", seed, "seed for replacing formal parameters by rationals");
    space_spec.add(hom_sp);

    auto* poset = app.add_subcommand("poset", "cellular or coarsened order on the labels (DOT text)");
    poset->add_option("--n", n)->required();
    poset->add_option("--kind", kind, "cellular | coarsened");

    auto* decomp = app.add_subcommand("decomp", "decomposition numbers at a point, or a battery audit");
    decomp->add_option("--n", n)->required();
    decomp->add_option("--battery", battery, "JSON battery file; runs the poset audit");
    decomp->add_option("--jobs", jobs, "battery points computed concurrently")->check(CLI::PositiveNumber);
    decomp_spec.add(decomp);

    std::string id_battery = "appendixA";
    auto* idents = app.add_subcommand("identities", "quantum-integer identity battery");
    idents->add_option("--battery", id_battery, "battery name; appendixA and all both select every identity")
        ->check(CLI::IsMember({"appendixA", "all"}));
    idents->add_option("--name", name, "check a single identity");
    idents->add_option("--substitutions", subs, "random integer substitutions per identity")->check(CLI::PositiveNumber);
    idents->add_option("--seed", seed);
    idents->add_option("--jobs", jobs, "identities checked concurrently")->check(CLI::PositiveNumber);

    auto* pres = app.add_subcommand("presentation-check", "check the defining relations on diagrams");
    pres->add_option("--n", n)->required();
    pres_spec.add(pres);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kInvalidInput;
    }

    try {
        if (*basis) return cmd_basis(common, n, opt_label);
        if (*multiply) return cmd_multiply(common, mult_spec, a, b);
        if (*gram) return cmd_gram(common, gram_spec, n, label, gram_norm);
        if (*det) return cmd_det(common, det_spec, n, label, gram_norm);
        if (*hom_build) return cmd_hom_build(common, build_flags);
        if (*hom_verify) return cmd_hom_verify(common, verify_flags);
        if (*hom_sp) return cmd_hom_space(common, space_spec, n, src, dst, seed);
        if (*poset) return cmd_poset(common, n, kind);
        if (*decomp) return cmd_decomp(common, decomp_spec, n, battery, jobs);
        if (*idents) return cmd_identities(common, id_battery, name, subs, seed, jobs);
        if (*pres) return cmd_presentation(common, pres_spec, n);
    } catch (const std::invalid_argument& e) {
        // ParseError, ConditionUnsatisfied and malformed arguments.
        std::cerr << "error: " << e.what() << "\n";
        return kInvalidInput;
    } catch (const NonUnitParameter& e) {
        std::cerr << "error: " << e.what() << " (choose parameters where all six are units)\n";
        return kInvalidInput;
    } catch (const HookUndefined& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalidInput;
    } catch (const std::exception& e) {
        // Anything else means a computation could not be completed.
        std::cerr << "error: " << e.what() << "\n";
        return kVerificationFailed;
    }
    return kInvalidInput;
}
