#include <algorithm>
#include <set>

#include "internal.hpp"
#include "semifact/budget.hpp"
#include "semifact/errors.hpp"

namespace semifact {

using namespace detail;

namespace {

void require_nonzero_member(const Semialgebra& S, const Element& x) {
    if (!contains(S, x)) throw DomainError(x.str() + " is not in " + S.str());
    if (x.is_zero()) throw DomainError("0 is excluded from multiplicative operations");
}

Int b_smooth_part(Int n, const Int& b) {
    Int s = 1;
    for (const Int& p : prime_factors(b))
        while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
            n /= p;
            s *= p;
        }
    return s;
}

// Additive factorizations of q in M over the atoms 1/p, for primes p <= prime_bound
// or dividing d(q).
struct ExpSplit {
    std::vector<Rat> atoms;
    Knapsack k;
};

ExpSplit split_exponent(const Rat& q, const Bounds& b) {
    std::set<Int> ps;
    for (const Int& p : primes_upto(static_cast<unsigned long>(std::max(0L, b.max_exp)))) ps.insert(p);
    for (const Int& p : prime_factors(q.den())) ps.insert(p);
    ExpSplit s;
    for (auto it = ps.rbegin(); it != ps.rend(); ++it) s.atoms.push_back(Rat::make(1, *it));
    s.k = knapsack(s.atoms, q, b.max_len, b.max_count);
    return s;
}

// Only finitely many splittings when q < 1: primes outside d(q) would need c_p >= p.
bool split_complete(const Rat& q, const ExpSplit& s) { return q < Rat(1) && !s.k.len_cut && !s.k.count_cut; }

}  // namespace

Enumeration<Element> mult_divisors(const Semialgebra& S, const Element& x, const Bounds& b) {
    require_nonzero_member(S, x);
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
        ExpSum e = as_exp(x);
        if (e.terms.size() != 1) throw Unsupported("multiplicative divisors of multi-term sums are not supported");
        const auto [q, c] = *e.terms.begin();
        auto split = split_exponent(q, b);
        std::set<Rat> parts;
        for (const auto& sol : split.k.solutions) {
            auto f = to_factorization(Mode::Additive, sol);
            auto rec = [&](auto&& self, size_t i, const Rat& acc) -> void {
                if (i == f.atoms.size()) {
                    parts.insert(acc);
                    return;
                }
                for (long k = 0; k <= f.atoms[i].second; ++k) self(self, i + 1, acc + Rat(k) * f.atoms[i].first.rat());
            };
            rec(rec, 0, Rat(0));
        }
        for (const Int& cd : divisors(c))
            for (const Rat& p : parts) found.insert(Element(ExpSum::term(p, cd)));
        return finish(q.is_zero() || split_complete(q, split));
    }

    const Rat& q = x.rat();
    auto cofactor_in = [&](const Rat& y) { return contains(S, Element(q / y)); };

    if (natural_like(S)) {
        for (const Int& d : divisors(q.num())) found.insert(Element(Rat(d)));
        return finish(true);
    }
    switch (S.kind) {
        case Kind::NonnegRationals:
            for (long p = 1; p <= b.max_den; ++p)
                for (long d = 1; d <= b.max_den; ++d) found.insert(Element(Rat::make(p, d)));
            return finish(false);
        case Kind::Conducted: {
            const Rat& r = S.r;
            if (r < Rat(1)) {
                for (long p = 1; p <= b.max_den; ++p)
                    for (long d = 1; d <= b.max_den; ++d) found.insert(Element(Rat::make(p, d)));
                return finish(false);
            }
            if (r == Rat(1)) {
                for (const Rat& y : rationals_between(Rat(1), q, b.max_den))
                    if ((q / y).den() <= b.max_den) found.insert(Element(y));
                found.insert(Element(q));
                return finish(q.is_one());
            }
            for (Int k = 1; Rat(k) <= q; ++k) {
                if (cofactor_in(Rat(k))) found.insert(Element(Rat(k)));
                Rat y = q / Rat(k);
                if (contains(S, Element(y))) found.insert(Element(y));
            }
            Rat hi = q / r;
            bool complete = hi <= r;
            if (hi == r) found.insert(Element(r));
            if (hi > r)
                for (const Rat& y : rationals_between(r, hi, b.max_den))
                    if ((q / y).den() <= b.max_den) found.insert(Element(y));
            return finish(complete);
        }
        case Kind::Cyclic: {
            const Rat& r = S.r;
            if (!S.n_gt_1) {
                // divisors are units times divisors of the part of n(x) prime to d(r)
                const Int bb = r.den();
                Int core = q.num() / b_smooth_part(q.num(), bb);
                std::vector<Rat> units;
                for (long p = 1; p <= b.max_den; ++p)
                    for (long d = 1; d <= b.max_den; ++d)
                        if (b_smooth_part(Int(p), bb) == p && b_smooth_part(Int(d), bb) == d)
                            units.push_back(Rat::make(p, d));
                for (const Int& d : divisors(core))
                    for (const Rat& u : units) found.insert(Element(Rat(d) * u));
                return finish(false);
            }
            if (r > Rat(1)) {
                long top = 0;
                for (Rat p = r; p <= q; p *= r) ++top;
                for (const Rat& y : cyclic_members(r, top, q))
                    if (y >= Rat(1) && cofactor_in(y)) found.insert(Element(y));
                return finish(true);
            }
            // r < 1, x = y z. A member of index i is at least r^i. With d(r) = p prime and
            // index(y) = i > m, p^(i-m) divides the integer z, so n(r)^i <= x p^m.
            const Int a = r.num();
            const Int scaled = (q * Rat(ipow(r.den(), *cyclic_index(q, r.den())))).num();
            long top = 0;
            for (Int t = a; t <= scaled; t *= a) ++top;
            const Rat cap = q / pow(r, static_cast<unsigned long>(top));
            for (const Rat& y : cyclic_members(r, top, cap)) {
                if (y.is_zero() || !cofactor_in(y)) continue;
                found.insert(Element(y));
                if (static_cast<long>(found.size()) > b.max_count) return finish(false);
            }
            return finish(S.d_prime);
        }
        default: break;
    }
    return finish(false);
}

Enumeration<Factorization> mult_factorizations(const Semialgebra& S, const Element& x, const Bounds& b) {
    require_nonzero_member(S, x);
    Enumeration<Factorization> out;
    out.bounds = b;
    auto single = [&](std::vector<std::pair<Element, long>> atoms) {
        Factorization f;
        f.mode = Mode::Multiplicative;
        f.atoms = std::move(atoms);
        std::sort(f.atoms.begin(), f.atoms.end());
        out.items.push_back(std::move(f));
        return out;
    };
    auto prime_powers = [](Int n) {
        std::vector<std::pair<Int, long>> pk;
        for (const Int& p : prime_factors(n)) {
            long k = 0;
            while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) n /= p, ++k;
            pk.emplace_back(p, k);
        }
        return pk;
    };
    if (x.is_one()) {
        out.items.push_back(Factorization{Mode::Multiplicative, {}});
        return out;
    }
    if (is_mult_unit(S, x)) throw DomainError(x.str() + " is a unit of " + S.str());

    if (S.kind == Kind::FormalExp) {
        ExpSum e = as_exp(x);
        if (e.terms.size() != 1) throw Unsupported("multiplicative factorization of multi-term sums is not supported");
        const auto [q, c] = *e.terms.begin();
        std::vector<std::pair<Element, long>> consts;
        for (auto [p, k] : prime_powers(c)) consts.emplace_back(Element(ExpSum::term(Rat(0), p)), k);
        if (q.is_zero()) return single(consts);
        auto split = split_exponent(q, b);
        for (const auto& sol : split.k.solutions) {
            Factorization f = to_factorization(Mode::Multiplicative, sol);
            for (auto& [a, k] : f.atoms) a = Element(ExpSum::term(a.rat()));
            f.atoms.insert(f.atoms.end(), consts.begin(), consts.end());
            std::sort(f.atoms.begin(), f.atoms.end());
            out.items.push_back(std::move(f));
        }
        sort_factorizations(out.items);
        out.complete = split_complete(q, split);
        return out;
    }

    const Rat& q = x.rat();
    if (natural_like(S) || (S.kind == Kind::Cyclic && !S.n_gt_1)) {
        Int core = q.num();
        if (S.kind == Kind::Cyclic && S.d_gt_1) core /= b_smooth_part(core, S.r.den());
        std::vector<std::pair<Element, long>> atoms;
        for (auto [p, k] : prime_powers(core)) atoms.emplace_back(Element(Rat(p)), k);
        return single(atoms);
    }
    if (S.kind == Kind::Conducted && S.r == Rat(1)) return out;

    auto divs = mult_divisors(S, x, b);
    std::vector<Rat> atoms;
    for (const Element& d : divs.items) {
        if (d.is_one()) continue;
        bool atom;
        if (S.kind == Kind::Conducted) {
            atom = is_mult_atom(S, d, b);
        } else {
            atom = std::none_of(divs.items.begin(), divs.items.end(), [&](const Element& e) {
                return !e.is_one() && e != d && contains(S, Element(d.rat() / e.rat()));
            });
        }
        if (atom) atoms.push_back(d.rat());
    }
    bool len_cut = false, count_cut = false;
    std::vector<Rat> seq;
    auto dfs = [&](auto&& self, size_t i, const Rat& rem) -> void {
        if (count_cut) return;
        if (rem.is_one()) {
            out.items.push_back(to_factorization(Mode::Multiplicative, seq));
            charge(seq.size() * 48 + 32);
            if (static_cast<long>(out.items.size()) >= b.max_count) count_cut = true;
            return;
        }
        if (static_cast<long>(seq.size()) >= b.max_len) {
            len_cut = true;
            return;
        }
        for (size_t k = i; k < atoms.size(); ++k) {
            Rat next = rem / atoms[k];
            if (!contains(S, Element(next))) continue;
            seq.push_back(atoms[k]);
            self(self, k, next);
            seq.pop_back();
        }
    };
    dfs(dfs, 0, q);
    sort_factorizations(out.items);
    out.complete = divs.complete && !len_cut && !count_cut;
    return out;
}

LengthSet mult_length_set(const Semialgebra& S, const Element& x, const Bounds& b) {
    auto fs = mult_factorizations(S, x, b);
    LengthSet ls;
    ls.complete = fs.complete;
    for (const auto& f : fs.items) ls.lengths.insert(f.length());
    return ls;
}

Enumeration<Element> list_atoms(const Semialgebra& S, Mode mode, const Bounds& b) {
    Enumeration<Element> out;
    out.bounds = b;
    std::vector<Element> items;
    if (mode == Mode::Additive) {
        if (S.kind == Kind::FormalExp) {
            for (long d = 1; d <= b.max_den; ++d)
                for (long n = 0; n <= d; ++n) {
                    Rat q = Rat::make(n, d);
                    if (q.den() == d && mem_M(q)) items.emplace_back(ExpSum::term(q));
                }
            out.complete = false;
        } else if (natural_like(S)) {
            items.emplace_back(1);
        } else if (additively_antimatter(S)) {
        } else if (S.kind == Kind::Cyclic) {
            for (long i = 0; i <= b.max_exp; ++i) items.emplace_back(pow(S.r, static_cast<unsigned long>(i)));
            out.complete = false;
        } else {
            for (const Rat& a : conducted_add_atoms(S.r, b.max_den, S.r + Rat(1))) items.emplace_back(a);
            out.complete = false;
        }
    } else {
        bool antimatter = S.kind == Kind::NonnegRationals || (S.kind == Kind::Conducted && S.r <= Rat(1));
        if (S.kind == Kind::FormalExp) {
            for (const Int& p : primes_upto(static_cast<unsigned long>(b.max_den))) items.emplace_back(ExpSum::term(Rat(0), p));
            for (const Int& p : primes_upto(static_cast<unsigned long>(b.max_exp))) items.emplace_back(ExpSum::term(Rat::make(1, p)));
            out.complete = false;
        } else if (!antimatter) {
            out.complete = false;
            for (long d = 1; d <= b.max_den; ++d)
                for (long n = 1; n <= b.max_den; ++n) {
                    Rat y = Rat::make(n, d);
                    if (y.den() != d || !contains(S, Element(y))) continue;
                    try {
                        if (is_mult_atom(S, Element(y), b)) items.emplace_back(y);
                    } catch (const Inconclusive&) {
                    }
                }
        }
    }
    auto key = [](const Element& e) {
        return e.is_rat() ? std::make_pair(e.rat().den(), e.rat().num()) : std::make_pair(Int(0), Int(0));
    };
    std::stable_sort(items.begin(), items.end(), [&](const Element& a, const Element& c) {
        if (a.is_rat() && c.is_rat()) return key(a) < key(c);
        return a < c;
    });
    out.items = std::move(items);
    return out;
}

}  // namespace semifact
