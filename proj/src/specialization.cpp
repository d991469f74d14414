#include "sblob/specialization.hpp"

#include "sblob/errors.hpp"

#include <sstream>
#include <vector>

namespace sblob {

WSpec WSpec::integer(int w, int sign) {
    WSpec s;
    s.mode = WMode::Fixed;
    s.c = sign;
    s.w = w;
    return s;
}

WSpec WSpec::fixed(const mpq_class& c, int w) {
    if (c == 0) throw std::invalid_argument("Fixed parameter requires a nonzero coefficient");
    WSpec s;
    s.mode = WMode::Fixed;
    s.c = c;
    s.w = w;
    return s;
}

WSpec WSpec::linked(int m, int sign) {
    WSpec s;
    s.mode = WMode::Linked;
    s.m = m;
    s.sign = sign;
    return s;
}

WSpec WSpec::linked_diff(int m, int sign) {
    WSpec s;
    s.mode = WMode::LinkedDiff;
    s.m = m;
    s.sign = sign;
    return s;
}

KSpec KSpec::formal(int sign) {
    KSpec k;
    k.sign = sign;
    return k;
}

KSpec KSpec::theta(int theta2, int parity, int sign) {
    KSpec k;
    k.mode = KMode::Theta;
    k.theta2 = theta2;
    k.parity = parity & 1;
    k.sign = sign;
    return k;
}

KSpec KSpec::constant(const mpq_class& v) {
    KSpec k;
    k.mode = KMode::Value;
    k.value = v;
    return k;
}

Specialization Specialization::root(int l) {
    Specialization s;
    s.q.mode = QMode::Root;
    s.q.l = l;
    return s;
}

namespace {

std::string wkey(const WSpec& w) {
    switch (w.mode) {
        case WMode::Formal: return "formal";
        case WMode::Fixed: return "fixed:" + w.c.get_str() + ":" + std::to_string(w.w);
        case WMode::Linked: return "linked:" + std::to_string(w.m) + ":" + std::to_string(w.sign);
        case WMode::LinkedDiff:
            return "linkeddiff:" + std::to_string(w.m) + ":" + std::to_string(w.sign);
    }
    return "";
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    return out;
}

int to_int(const std::string& s) {
    try {
        size_t pos = 0;
        int v = std::stoi(s, &pos);
        if (pos != s.size()) throw ParseError("bad integer '" + s + "'");
        return v;
    } catch (const std::logic_error&) {
        throw ParseError("bad integer '" + s + "'");
    }
}

mpq_class to_rat(const std::string& s) {
    mpq_class r;
    if (s.empty() || r.set_str(s, 10) != 0) throw ParseError("bad rational '" + s + "'");
    r.canonicalize();
    return r;
}

int to_sign(const std::string& s) {
    int v = to_int(s);
    if (v != 1 && v != -1) throw ParseError("sign must be 1 or -1, got '" + s + "'");
    return v;
}

WSpec parse_w(const std::string& s) {
    auto p = split(s, ':');
    if (p.empty()) throw ParseError("empty w mode");
    if (p[0] == "formal" && p.size() == 1) return WSpec::formal();
    if (p[0] == "fixed" && p.size() == 3) return WSpec::fixed(to_rat(p[1]), to_int(p[2]));
    if (p[0] == "integer" && (p.size() == 2 || p.size() == 3))
        return WSpec::integer(to_int(p[1]), p.size() == 3 ? to_sign(p[2]) : 1);
    if (p[0] == "value" && p.size() == 2) return WSpec::fixed(to_rat(p[1]), 0);
    if (p[0] == "linked" && (p.size() == 2 || p.size() == 3))
        return WSpec::linked(to_int(p[1]), p.size() == 3 ? to_sign(p[2]) : 1);
    if (p[0] == "linkeddiff" && (p.size() == 2 || p.size() == 3))
        return WSpec::linked_diff(to_int(p[1]), p.size() == 3 ? to_sign(p[2]) : 1);
    throw ParseError("unknown w mode '" + s + "'");
}

}  // namespace

std::string Specialization::key() const {
    std::string out = "q=";
    switch (q.mode) {
        case QMode::Formal: out += "formal"; break;
        case QMode::Root: out += "root:" + std::to_string(q.l); break;
        case QMode::Value: out += "value:" + q.s0.get_str(); break;
    }
    out += ";w1=" + wkey(w1) + ";w2=" + wkey(w2) + ";k=";
    switch (kappa.mode) {
        case KMode::Formal: out += "formal:" + std::to_string(kappa.sign); break;
        case KMode::Theta:
            out += "theta:" + std::to_string(kappa.theta2) + ":" + std::to_string(kappa.parity) + ":" +
                   std::to_string(kappa.sign);
            break;
        case KMode::Value: out += "value:" + kappa.value.get_str(); break;
    }
    return out;
}

Specialization Specialization::parse_key(const std::string& key) {
    Specialization s;
    for (const auto& field : split(key, ';')) {
        if (field.empty()) continue;
        auto eq = field.find('=');
        if (eq == std::string::npos) throw ParseError("specialization field without '=': " + field);
        std::string name = field.substr(0, eq), val = field.substr(eq + 1);
        if (name == "q") {
            auto p = split(val, ':');
            if (p.size() == 1 && p[0] == "formal") {
                s.q = QSpec{};
            } else if (p.size() == 2 && p[0] == "root") {
                s.q.mode = QMode::Root;
                s.q.l = to_int(p[1]);
                if (s.q.l < 1) throw ParseError("root order l must be positive");
            } else if (p.size() == 2 && p[0] == "value") {
                s.q.mode = QMode::Value;
                s.q.s0 = to_rat(p[1]);
                if (s.q.s0 == 0) throw ParseError("q^{1/2} value must be nonzero");
            } else {
                throw ParseError("unknown q mode '" + val + "'");
            }
        } else if (name == "w1") {
            s.w1 = parse_w(val);
            if (s.w1.mode == WMode::Linked || s.w1.mode == WMode::LinkedDiff)
                throw ParseError("linked modes apply to w2 only");
        } else if (name == "w2") {
            s.w2 = parse_w(val);
        } else if (name == "k") {
            auto p = split(val, ':');
            if (!p.empty() && p[0] == "formal" && p.size() <= 2) {
                s.kappa = KSpec::formal(p.size() == 2 ? to_sign(p[1]) : 1);
            } else if (!p.empty() && p[0] == "theta" && p.size() >= 3 && p.size() <= 4) {
                s.kappa = KSpec::theta(to_int(p[1]), to_int(p[2]), p.size() == 4 ? to_sign(p[3]) : 1);
            } else if (p.size() == 2 && p[0] == "value") {
                s.kappa = KSpec::constant(to_rat(p[1]));
            } else {
                throw ParseError("unknown kappa mode '" + val + "'");
            }
        } else {
            throw ParseError("unknown specialization field '" + name + "'");
        }
    }
    return s;
}

bool Specialization::concrete() const {
    return q.mode != QMode::Formal && w1.mode != WMode::Formal && w2.mode != WMode::Formal &&
           kappa.mode != KMode::Formal;
}

std::string to_string(Parametrisation p) {
    switch (p) {
        case Parametrisation::GMP1: return "GMP1";
        case Parametrisation::GMP2: return "GMP2";
        case Parametrisation::DN: return "DN";
    }
    return "";
}

Parametrisation parse_parametrisation(const std::string& s) {
    if (s == "GMP1") return Parametrisation::GMP1;
    if (s == "GMP2") return Parametrisation::GMP2;
    if (s == "DN") return Parametrisation::DN;
    throw ParseError("unknown parametrisation '" + s + "' (expected GMP1, GMP2 or DN)");
}

Specialization swap_params(Swap tag, const Specialization& s, Parametrisation p) {
    Specialization out = s;
    if (tag == Swap::G) {
        if (s.w1.mode == WMode::Fixed) out.w1 = WSpec::fixed(1 / s.w1.c, -s.w1.w - 1);
        if (s.w2.mode == WMode::Linked) out.w2 = WSpec::linked_diff(1 - s.w2.m, s.w2.sign);
        if (s.w2.mode == WMode::LinkedDiff) out.w2 = WSpec::linked(1 - s.w2.m, s.w2.sign);
    } else {
        if (s.w2.mode == WMode::Fixed) out.w2 = WSpec::fixed(1 / s.w2.c, -s.w2.w - 1);
        if (s.w2.mode == WMode::Linked) out.w2 = WSpec::linked_diff(s.w2.m - 1, s.w2.sign);
        if (s.w2.mode == WMode::LinkedDiff) out.w2 = WSpec::linked(s.w2.m + 1, s.w2.sign);
    }
    // Swapping one side turns the even theta formula into the negated odd
    // one and vice versa. Under GMP1 the generator E0 (resp. E_n) changes
    // sign, which negates kappa_LR; under GMP2 and DN the value is kept.
    const bool negate = p == Parametrisation::GMP1;
    switch (s.kappa.mode) {
        case KMode::Formal:
            if (negate) out.kappa.sign = -s.kappa.sign;
            break;
        case KMode::Value:
            if (negate) out.kappa.value = -s.kappa.value;
            break;
        case KMode::Theta:
            out.kappa.parity = 1 - s.kappa.parity;
            if (!negate) out.kappa.sign = -s.kappa.sign;
            break;
    }
    return out;
}

}  // namespace sblob
