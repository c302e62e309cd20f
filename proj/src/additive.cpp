#include <algorithm>
#include <set>

#include "internal.hpp"
#include "semifact/budget.hpp"
#include "semifact/errors.hpp"

namespace semifact {

using namespace detail;

namespace {

void require_member(const Semialgebra& S, const Element& x) {
    if (!contains(S, x)) throw DomainError(x.str() + " is not in " + S.str());
}

Enumeration<Factorization> from_knapsack(const Knapsack& k, const Bounds& b) {
    Enumeration<Factorization> out;
    out.bounds = b;
    for (const auto& sol : k.solutions) out.items.push_back(to_factorization(Mode::Additive, sol));
    sort_factorizations(out.items);
    out.complete = !k.count_cut;
    return out;
}

}  // namespace

Enumeration<Factorization> add_factorizations(const Semialgebra& S, const Element& x, const Bounds& b) {
    require_member(S, x);
    Enumeration<Factorization> out;
    out.bounds = b;
    if (S.kind == Kind::FormalExp) {
        Factorization f;
        for (const auto& [q, c] : as_exp(x).terms) f.atoms.emplace_back(Element(ExpSum::term(q)), c.get_si());
        out.items.push_back(f);
        return out;
    }
    const Rat& q = x.rat();
    if (q.is_zero()) {
        out.items.emplace_back();
        return out;
    }
    if (natural_like(S)) {
        Factorization f;
        f.atoms.emplace_back(Element(1), q.num().get_si());
        out.items.push_back(f);
        return out;
    }
    if (additively_antimatter(S)) return out;

    if (S.kind == Kind::Conducted) {
        // max_den bounds every atom but the largest, which the remainder pins down
        const Rat r = S.r;
        auto atoms = conducted_add_atoms(r, b.max_den, q);
        auto k = knapsack(atoms, q, kUnbounded, b.max_count, [&](const Rat& a) { return conducted_add_atom(r, a); });
        out = from_knapsack(k, b);
        Int need = std::max(S.r.den(), q.den());
        out.complete = out.complete && conducted_add_finite(S.r, q) && Int(b.max_den) >= need;
        return out;
    }

    // proper cyclic
    const Rat& r = S.r;
    long top = 0;
    if (r > Rat(1)) {
        for (Rat p = r; p <= q; p *= r) ++top;
    } else {
        top = b.max_exp;
    }
    auto sols = cyclic_representations(r, q, top, r > Rat(1) ? kUnbounded : b.max_len, b.max_count);
    for (const auto& c : sols.counts) {
        Factorization f;
        for (long j = 0; j <= top; ++j) {
            long i = r > Rat(1) ? j : top - j;
            const Int& ci = c[static_cast<size_t>(i)];
            if (ci == 0) continue;
            f.atoms.emplace_back(Element(pow(r, static_cast<unsigned long>(i))), ci.get_si());
        }
        out.items.push_back(std::move(f));
    }
    sort_factorizations(out.items);
    if (r > Rat(1)) {
        out.complete = !sols.count_cut;
        return out;
    }
    // If some canonical digit reaches n(r), the move n(r) r^i -> d(r) r^(i+1) applies
    // forever. Otherwise the canonical representation is the only factorization.
    const Int a = r.num();
    auto digits = *cyclic_digits(r, q);
    bool movable = std::any_of(digits.begin(), digits.end(), [&](const Int& c) { return c >= a; });
    Int len = 0;
    for (const Int& c : digits) len += c;
    long m = static_cast<long>(digits.size()) - 1;
    out.complete = !sols.count_cut && !movable && b.max_exp >= m && Int(b.max_len) >= len;
    return out;
}

LengthSet add_length_set(const Semialgebra& S, const Element& x, const Bounds& b) {
    auto fs = add_factorizations(S, x, b);
    LengthSet ls;
    ls.complete = fs.complete;
    for (const auto& f : fs.items) ls.lengths.insert(f.length());
    return ls;
}

Enumeration<Element> add_divisors(const Semialgebra& S, const Element& x, const Bounds& b) {
    require_member(S, x);
    Enumeration<Element> out;
    out.bounds = b;
    std::set<Element> found;
    auto finish = [&](bool complete) {
        out.items.assign(found.begin(), found.end());
        out.complete = complete;
        charge(out.items.size() * 48);
        return out;
    };

    if (S.kind == Kind::FormalExp) {
        std::vector<std::pair<Rat, Int>> terms(as_exp(x).terms.begin(), as_exp(x).terms.end());
        auto rec = [&](auto&& self, size_t i, ExpSum acc) -> void {
            if (i == terms.size()) {
                found.insert(Element(acc));
                return;
            }
            for (Int c = 0; c <= terms[i].second; ++c) {
                ExpSum next = acc;
                if (c > 0) next.terms[terms[i].first] = c;
                self(self, i + 1, next);
            }
        };
        rec(rec, 0, ExpSum{});
        return finish(true);
    }

    const Rat& q = x.rat();
    if (natural_like(S)) {
        for (Int d = 0; d <= q.num(); ++d) found.insert(Element(Rat(d)));
        return finish(true);
    }

    auto cofactor_in = [&](const Rat& d) {
        auto rest = try_sub(q, d);
        return rest && contains(S, Element(*rest));
    };

    if (S.kind == Kind::Cyclic && S.n_gt_1) {
        const Rat& r = S.r;
        if (r > Rat(1)) {
            long top = 0;
            for (Rat p = r; p <= q; p *= r) ++top;
            for (const Rat& y : cyclic_members(r, top, q))
                if (cofactor_in(y)) found.insert(Element(y));
            return finish(true);
        }
        // every divisor is a sub-sum of some factorization
        auto fs = add_factorizations(S, x, b);
        for (const auto& f : fs.items) {
            auto rec = [&](auto&& self, size_t i, const Rat& acc) -> void {
                if (i == f.atoms.size()) {
                    found.insert(Element(acc));
                    return;
                }
                const Rat& a = f.atoms[i].first.rat();
                for (long c = 0; c <= f.atoms[i].second; ++c) self(self, i + 1, acc + Rat(c) * a);
            };
            rec(rec, 0, Rat(0));
            if (static_cast<long>(found.size()) > b.max_count) break;
        }
        return finish(fs.complete);
    }

    if (S.kind == Kind::Conducted && S.r >= Rat(1)) {
        const Rat& r = S.r;
        for (Int k = 0; Rat(k) <= q; ++k) {
            if (cofactor_in(Rat(k))) found.insert(Element(Rat(k)));
            Rat d = q - Rat(k);
            if (contains(S, Element(d))) found.insert(Element(d));
        }
        auto hi = try_sub(q, r);
        bool complete = true;
        if (hi && *hi >= r) {
            if (*hi == r) {
                found.insert(Element(r));
            } else {
                complete = false;
                for (const Rat& d : rationals_between(r, *hi, b.max_den))
                    if ((q - d).den() <= b.max_den) found.insert(Element(d));
            }
        }
        return finish(complete);
    }

    // additively antimatter: every member below x divides it
    for (const Rat& d : rationals_between(Rat(0), q, b.max_den))
        if (contains(S, Element(d)) && cofactor_in(d) && (q - d).den() <= b.max_den) found.insert(Element(d));
    return finish(q.is_zero());
}

}  // namespace semifact
