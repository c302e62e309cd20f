#include <algorithm>
#include <cctype>

#include "semifact/errors.hpp"
#include "semifact/semialgebra.hpp"

namespace semifact {

Semialgebra Semialgebra::nat() { return {}; }

Semialgebra Semialgebra::qnn() {
    Semialgebra s;
    s.kind = Kind::NonnegRationals;
    return s;
}

Semialgebra Semialgebra::formal_exp() {
    Semialgebra s;
    s.kind = Kind::FormalExp;
    return s;
}

Semialgebra Semialgebra::cyclic(const Rat& r) {
    if (r.is_zero() || r.is_one()) throw DomainError("cyclic generator must be positive and different from 1");
    Semialgebra s;
    s.kind = Kind::Cyclic;
    s.r = r;
    s.n_gt_1 = r.num() > 1;
    s.d_gt_1 = r.den() > 1;
    s.d_prime = is_prime(r.den());
    return s;
}

Semialgebra Semialgebra::conducted(const Rat& r) {
    Semialgebra s;
    s.kind = Kind::Conducted;
    s.r = r;
    s.n_gt_1 = r.num() > 1;
    s.d_gt_1 = r.den() > 1;
    s.d_prime = is_prime(r.den());
    return s;
}

Semialgebra Semialgebra::parse(std::string_view s) {
    if (s == "nat") return nat();
    if (s == "qnn") return qnn();
    if (s == "exp") return formal_exp();
    auto colon = s.find(':');
    if (colon != std::string_view::npos) {
        auto head = s.substr(0, colon);
        Rat r = Rat::parse(s.substr(colon + 1));
        if (head == "cyclic") return cyclic(r);
        if (head == "conducted") return conducted(r);
    }
    throw ParseError("unknown semialgebra '" + std::string(s) + "'");
}

std::string Semialgebra::str() const {
    switch (kind) {
        case Kind::Nat: return "nat";
        case Kind::NonnegRationals: return "qnn";
        case Kind::FormalExp: return "exp";
        case Kind::Cyclic: return "cyclic:" + r.str();
        case Kind::Conducted: return "conducted:" + r.str();
    }
    return {};
}

bool Semialgebra::reduced() const {
    switch (kind) {
        case Kind::Nat:
        case Kind::FormalExp: return true;
        case Kind::NonnegRationals: return false;
        case Kind::Cyclic: return n_gt_1;
        case Kind::Conducted: return r >= Rat(1);
    }
    return false;
}

ExpSum ExpSum::term(const Rat& q, const Int& c) {
    if (!mem_M(q)) throw DomainError("exponent " + q.str() + " is outside M");
    ExpSum e;
    if (c != 0) e.terms.emplace(q, c);
    return e;
}

std::string ExpSum::str() const {
    std::string s = "e:{";
    bool first = true;
    for (const auto& [q, c] : terms) {
        if (!first) s += ',';
        first = false;
        s += q.str() + ":" + c.get_str();
    }
    return s + "}";
}

std::strong_ordering operator<=>(const ExpSum& a, const ExpSum& b) {
    auto ia = a.terms.begin(), ib = b.terms.begin();
    for (; ia != a.terms.end() && ib != b.terms.end(); ++ia, ++ib) {
        if (auto c = ia->first <=> ib->first; c != 0) return c;
        int cc = cmp(ia->second, ib->second);
        if (cc != 0) return cc < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    if (ia == a.terms.end() && ib == b.terms.end()) return std::strong_ordering::equal;
    return ia == a.terms.end() ? std::strong_ordering::less : std::strong_ordering::greater;
}

const Rat& Element::rat() const {
    if (!is_rat()) throw DomainError("expected a rational element, got " + str());
    return std::get<Rat>(v_);
}

const ExpSum& Element::exp() const {
    if (is_rat()) throw DomainError("expected a formal exponential sum, got " + str());
    return std::get<ExpSum>(v_);
}

bool Element::is_zero() const { return is_rat() ? rat().is_zero() : exp().is_zero(); }

bool Element::is_one() const {
    if (is_rat()) return rat().is_one();
    const auto& t = exp().terms;
    return t.size() == 1 && t.begin()->first.is_zero() && t.begin()->second == 1;
}

std::string Element::str() const { return is_rat() ? std::get<Rat>(v_).str() : std::get<ExpSum>(v_).str(); }

Element Element::parse(std::string_view s) {
    auto trim = [](std::string_view v) {
        while (!v.empty() && std::isspace(static_cast<unsigned char>(v.front()))) v.remove_prefix(1);
        while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back()))) v.remove_suffix(1);
        return v;
    };
    s = trim(s);
    if (s.substr(0, 2) != "e:") return Element(Rat::parse(s));
    auto body = s.substr(2);
    if (body.size() < 2 || body.front() != '{' || body.back() != '}')
        throw ParseError("malformed exponential sum '" + std::string(s) + "'");
    body = body.substr(1, body.size() - 2);
    ExpSum e;
    while (!trim(body).empty()) {
        auto comma = body.find(',');
        auto item = trim(body.substr(0, comma));
        body = comma == std::string_view::npos ? std::string_view{} : body.substr(comma + 1);
        auto colon = item.find(':');
        if (colon == std::string_view::npos) throw ParseError("exponential term needs q:c, got '" + std::string(item) + "'");
        Rat q = Rat::parse(trim(item.substr(0, colon)));
        Rat c = Rat::parse(trim(item.substr(colon + 1)));
        if (!c.is_integer()) throw ParseError("coefficient must be an integer");
        if (!mem_M(q)) throw DomainError("exponent " + q.str() + " is outside M");
        if (c.is_zero()) continue;
        if ((e.terms[q] += c.num()) == 0) e.terms.erase(q);
    }
    return Element(e);
}

namespace {

// Integers embed into the formal exponentials as c * e^0.
ExpSum as_exp(const Element& x) {
    if (!x.is_rat()) return x.exp();
    if (!x.rat().is_integer()) throw DomainError("cannot mix " + x.str() + " with exponential sums");
    return ExpSum::term(Rat(0), x.rat().num());
}

}  // namespace

Element operator+(const Element& a, const Element& b) {
    if (a.is_rat() && b.is_rat()) return Element(a.rat() + b.rat());
    ExpSum s = as_exp(a);
    for (const auto& [q, c] : as_exp(b).terms) s.terms[q] += c;
    return Element(s);
}

Element operator*(const Element& a, const Element& b) {
    if (a.is_rat() && b.is_rat()) return Element(a.rat() * b.rat());
    ExpSum s;
    for (const auto& [q1, c1] : as_exp(a).terms)
        for (const auto& [q2, c2] : as_exp(b).terms) s.terms[q1 + q2] += c1 * c2;
    return Element(s);
}

std::strong_ordering operator<=>(const Element& a, const Element& b) {
    if (a.is_rat() != b.is_rat()) return a.is_rat() ? std::strong_ordering::less : std::strong_ordering::greater;
    if (a.is_rat()) return a.rat() <=> b.rat();
    return a.exp() <=> b.exp();
}

long Factorization::length() const {
    long n = 0;
    for (const auto& [a, k] : atoms) n += k;
    return n;
}

std::vector<Element> Factorization::expanded() const {
    std::vector<Element> out;
    for (const auto& [a, k] : atoms) out.insert(out.end(), static_cast<size_t>(k), a);
    return out;
}

Element Factorization::value() const {
    bool add = mode == Mode::Additive;
    std::optional<Element> acc;
    for (const auto& [a, k] : atoms)
        for (long i = 0; i < k; ++i) acc = acc ? (add ? *acc + a : *acc * a) : a;
    if (acc) return *acc;
    if (!atoms.empty() || add) return Element(0);
    return Element(1);
}

bool factorization_less(const Factorization& a, const Factorization& b) {
    size_t i = 0, j = 0;
    long ui = 0, uj = 0;
    while (i < a.atoms.size() && j < b.atoms.size()) {
        const auto& x = a.atoms[i].first;
        const auto& y = b.atoms[j].first;
        if (x != y) return x < y;
        long step = std::min(a.atoms[i].second - ui, b.atoms[j].second - uj);
        ui += step;
        uj += step;
        if (ui == a.atoms[i].second) ++i, ui = 0;
        if (uj == b.atoms[j].second) ++j, uj = 0;
    }
    return i == a.atoms.size() && j < b.atoms.size();
}

}  // namespace semifact
