#include <algorithm>
#include <map>

#include "internal.hpp"
#include "semifact/errors.hpp"

namespace semifact {

using namespace detail;

namespace {

std::vector<Element> additive_cofactors(const Semialgebra& S, const Element& start, const Bounds& b) {
    std::vector<Element> c;
    if (S.kind == Kind::FormalExp) {
        for (const auto& [q, k] : as_exp(start).terms) c.emplace_back(ExpSum::term(q));
        return c;
    }
    const Rat& x = start.rat();
    if (natural_like(S)) {
        c.emplace_back(1);
    } else if (additively_antimatter(S)) {
        for (const Rat& y : rationals_between(Rat(0), x, b.max_den))
            if (!y.is_zero() && contains(S, Element(y))) c.emplace_back(y);
    } else if (S.kind == Kind::Cyclic) {
        for (long i = 0; i <= b.max_exp; ++i) {
            Rat p = pow(S.r, static_cast<unsigned long>(i));
            if (p <= x) c.emplace_back(p);
        }
    } else {
        for (const Rat& a : conducted_add_atoms(S.r, b.max_den, x)) c.emplace_back(a);
    }
    return c;
}

std::vector<Element> multiplicative_cofactors(const Semialgebra& S, const Element& start, const Bounds& b) {
    std::vector<Element> c;
    for (const Element& d : mult_divisors(S, start, b).items) {
        if (is_mult_unit(S, d)) continue;
        bool keep = true;
        if (S.reduced()) {
            try {
                keep = is_mult_atom(S, d, b);
            } catch (const Inconclusive&) {
            }
        }
        if (keep) c.push_back(d);
    }
    return c;
}

std::optional<Element> step(const Semialgebra& S, Mode mode, const Element& cur, const Element& c) {
    if (mode == Mode::Additive) {
        if (S.kind == Kind::FormalExp) {
            ExpSum e = as_exp(cur);
            const auto& [q, k] = *as_exp(c).terms.begin();
            auto it = e.terms.find(q);
            if (it == e.terms.end()) return std::nullopt;
            if (--it->second == 0) e.terms.erase(it);
            if (e.is_zero()) return std::nullopt;
            return Element(e);
        }
        auto next = try_sub(cur.rat(), c.rat());
        if (!next || next->is_zero() || !contains(S, Element(*next))) return std::nullopt;
        return Element(*next);
    }
    if (S.kind == Kind::FormalExp) throw Unsupported("multiplicative chains of exponential sums are not supported");
    Element next(cur.rat() / c.rat());
    if (!contains(S, next) || is_mult_unit(S, next)) return std::nullopt;
    return next;
}

}  // namespace

ChainReport accp_probe(const Semialgebra& S, Mode mode, const Element& start, long depth, const Bounds& b) {
    if (!contains(S, start)) throw DomainError(start.str() + " is not in " + S.str());
    if (depth < 1) throw DomainError("depth must be at least 1");
    ChainReport rep;
    rep.mode = mode;
    rep.depth = depth;
    if (mode == Mode::Multiplicative && start.is_zero()) throw DomainError("0 is excluded from multiplicative operations");
    bool unit = mode == Mode::Additive ? start.is_zero() : is_mult_unit(S, start);
    if (unit) return rep;

    auto cof = mode == Mode::Additive ? additive_cofactors(S, start, b) : multiplicative_cofactors(S, start, b);
    std::sort(cof.begin(), cof.end(), std::greater<>());

    // A reported chain of `depth` ideals must admit one more proper step.
    const long need = depth + 1;
    std::map<Element, long> failed;
    std::vector<Element> path{start}, used;
    auto dfs = [&](auto&& self, long remaining) -> bool {
        if (remaining <= 1) return true;
        const Element cur = path.back();
        auto f = failed.find(cur);
        if (f != failed.end() && f->second <= remaining) return false;
        for (const Element& c : cof) {
            if (mode == Mode::Additive && S.rational() && c.rat() > cur.rat()) continue;
            auto next = step(S, mode, cur, c);
            if (!next) continue;
            path.push_back(*next);
            used.push_back(c);
            if (self(self, remaining - 1)) return true;
            path.pop_back();
            used.pop_back();
        }
        auto [slot, fresh] = failed.try_emplace(cur, remaining);
        if (!fresh) slot->second = std::min(slot->second, remaining);
        return false;
    };
    if (!dfs(dfs, need)) return rep;
    rep.found = true;
    rep.chain.assign(path.begin(), path.begin() + depth);
    rep.cofactors.assign(used.begin(), used.begin() + (depth - 1));
    rep.extends_to = path[static_cast<size_t>(depth)];
    return rep;
}

}  // namespace semifact
