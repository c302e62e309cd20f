#include "semifact/serialize.hpp"

namespace semifact {

namespace {

const char* mode_name(Mode m) { return m == Mode::Additive ? "add" : "mult"; }

template <class T>
Json strings(const std::vector<T>& xs) {
    Json a = Json::array();
    for (const auto& x : xs) a.push_back(x.str());
    return a;
}

}  // namespace

Json to_json(const Bounds& b) {
    return {{"max_len", b.max_len}, {"max_exp", b.max_exp}, {"max_den", b.max_den},
            {"max_count", b.max_count}, {"depth", b.depth}};
}

Json to_json(const Factorization& f) {
    return {{"atoms", strings(f.expanded())}, {"length", f.length()}};
}

Json to_json(const Enumeration<Factorization>& e) {
    Json items = Json::array();
    for (const auto& f : e.items) items.push_back(to_json(f));
    return {{"items", items}, {"count", e.items.size()}, {"complete", e.complete}, {"bounds", to_json(e.bounds)}};
}

Json to_json(const Enumeration<Element>& e) {
    return {{"items", strings(e.items)}, {"count", e.items.size()}, {"complete", e.complete}, {"bounds", to_json(e.bounds)}};
}

Json to_json(const LengthSet& ls) {
    return {{"lengths", std::vector<long>(ls.lengths.begin(), ls.lengths.end())}, {"complete", ls.complete}};
}

Json to_json(const ChainReport& c) {
    Json j{{"found", c.found}, {"mode", mode_name(c.mode)}, {"depth", c.depth}};
    if (!c.found) {
        j["result"] = "NoneFound";
        return j;
    }
    j["chain"] = strings(c.chain);
    j["cofactors"] = strings(c.cofactors);
    if (c.extends_to) j["extends_to"] = c.extends_to->str();
    return j;
}

Json to_json(const RigidFactorization& f) {
    Json factors = Json::array();
    for (const UTMatrix& A : f.factors) {
        auto s = atom_shape(A);
        if (!s) {
            factors.push_back({{"matrix", A.str()}});
            continue;
        }
        factors.push_back({{"type", s->type == AtomType::Additive ? "add" : "mult"},
                           {"pos", {s->i + 1, s->j + 1}},
                           {"atom", s->a.str()}});
    }
    return {{"factors", factors}, {"length", f.length()}};
}

Json to_json(const Enumeration<RigidFactorization>& e) {
    Json items = Json::array();
    for (const auto& f : e.items) items.push_back(to_json(f));
    std::set<long> lengths;
    for (const auto& f : e.items) lengths.insert(static_cast<long>(f.length()));
    return {{"items", items},
            {"count", e.items.size()},
            {"lengths", std::vector<long>(lengths.begin(), lengths.end())},
            {"complete", e.complete},
            {"bounds", to_json(e.bounds)}};
}

Json to_json(const AplReport& r) {
    Json w = Json::array();
    for (const auto& x : r.witnesses) w.push_back({{"X", x.X.str()}, {"Y", x.Y.str()}});
    Json j{{"found", !r.witnesses.empty()}};
    if (r.witnesses.empty()) j["result"] = "NoneFound";
    j["witnesses"] = w;
    j["products_tested"] = r.products_tested;
    j["inconclusive"] = r.inconclusive;
    return j;
}

Json to_json(const HfmCounterexample& h) {
    return {{"matrix", h.A.str()}, {"long_form", to_json(h.long_form)}, {"short_form", to_json(h.short_form)}};
}

Json to_json(const CheckReport& r) {
    Json j{{"check_name", r.check_name},
           {"instances_tested", r.instances_tested},
           {"violations", r.violations},
           {"status", status_name(r.status)}};
    if (r.seed) j["seed"] = *r.seed;
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

}  // namespace semifact
