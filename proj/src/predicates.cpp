#include <algorithm>
#include <queue>

#include "internal.hpp"
#include "semifact/errors.hpp"

namespace semifact {

using namespace detail;

bool mem_M(const Rat& q) {
    const Int d = q.den();
    if (d == 1) return true;
    auto ps = prime_factors(d);
    Int prod = 1;
    for (const Int& p : ps) prod *= p;
    if (prod != d) return false;
    std::vector<Int> gens;
    for (const Int& p : ps) gens.push_back(d / p);
    std::sort(gens.begin(), gens.end());
    const Int g0 = gens.front();
    if (g0 == 1) return true;
    if (!g0.fits_ulong_p() || g0 > 5000000) throw Inconclusive("denominator too large for the membership test in M");
    // Apery set of the numerical semigroup with respect to its least generator.
    const unsigned long m = g0.get_ui();
    std::vector<Int> w(m);
    std::vector<bool> seen(m, false);
    using Item = std::pair<Int, unsigned long>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    w[0] = 0;
    pq.emplace(Int(0), 0UL);
    std::vector<bool> set(m, false);
    set[0] = true;
    while (!pq.empty()) {
        auto [dist, res] = pq.top();
        pq.pop();
        if (seen[res]) continue;
        seen[res] = true;
        for (size_t i = 1; i < gens.size(); ++i) {
            Int nd = dist + gens[i];
            unsigned long nr = Int(nd % g0).get_ui();
            if (!set[nr] || nd < w[nr]) {
                set[nr] = true;
                w[nr] = nd;
                pq.emplace(nd, nr);
            }
        }
    }
    const Int n = q.num();
    unsigned long res = Int(n % g0).get_ui();
    return set[res] && n >= w[res];
}

bool contains(const Semialgebra& S, const Element& x) {
    if (S.kind == Kind::FormalExp) {
        ExpSum e = as_exp(x);
        return std::all_of(e.terms.begin(), e.terms.end(), [](const auto& t) { return t.second > 0 && mem_M(t.first); });
    }
    const Rat& q = as_rat(S, x);
    switch (S.kind) {
        case Kind::Nat: return q.is_integer();
        case Kind::NonnegRationals: return true;
        case Kind::Conducted: return conducted_contains(S.r, q);
        case Kind::Cyclic:
            if (!S.d_gt_1) return q.is_integer();
            return cyclic_digits(S.r, q).has_value();
        default: return false;
    }
}

namespace {

void require_member(const Semialgebra& S, const Element& x) {
    if (!contains(S, x)) throw DomainError(x.str() + " is not in " + S.str());
}

}  // namespace

bool is_add_atom(const Semialgebra& S, const Element& x) {
    require_member(S, x);
    if (S.kind == Kind::FormalExp) {
        ExpSum e = as_exp(x);
        return e.terms.size() == 1 && e.terms.begin()->second == 1;
    }
    const Rat& q = x.rat();
    if (natural_like(S)) return q.is_one();
    switch (S.kind) {
        case Kind::NonnegRationals: return false;
        case Kind::Conducted: return conducted_add_atom(S.r, q);
        case Kind::Cyclic: {
            if (!S.n_gt_1 || q.is_zero()) return false;
            // q = r^k iff n(q), d(q) are the k-th powers of n(r), d(r)
            const Int &a = S.r.num(), &b = S.r.den(), &n = q.num(), &d = q.den();
            Int ak = 1, bk = 1;
            for (;;) {
                if (ak == n && bk == d) return true;
                if (ak > n || bk > d) return false;
                ak *= a;
                bk *= b;
            }
        }
        default: return false;
    }
}

bool is_mult_unit(const Semialgebra& S, const Element& x) {
    require_member(S, x);
    if (x.is_zero()) return false;
    if (S.kind == Kind::FormalExp) return x.is_one() || as_exp(x) == ExpSum::term(Rat(0));
    const Rat& q = x.rat();
    switch (S.kind) {
        case Kind::NonnegRationals: return true;
        case Kind::Conducted: return S.r < Rat(1) || q.is_one();
        case Kind::Cyclic:
            if (!S.n_gt_1) {
                auto sr = support(S.r);
                auto sq = support(q);
                return std::includes(sr.begin(), sr.end(), sq.begin(), sq.end());
            }
            return q.is_one();
        default: return q.is_one();
    }
}

std::vector<Int> canonical_digits(const Semialgebra& S, const Rat& x) {
    if (S.kind != Kind::Cyclic || !S.d_gt_1) throw DomainError("canonical digits need a cyclic semialgebra with d(r) > 1");
    auto c = cyclic_digits(S.r, x);
    if (!c) throw NotMember(x.str() + " is not in " + S.str());
    return *c;
}

bool is_mult_atom(const Semialgebra& S, const Element& x, const Bounds& b) {
    require_member(S, x);
    if (x.is_zero()) throw DomainError("0 is excluded from multiplicative operations");
    if (is_mult_unit(S, x)) return false;
    if (S.kind == Kind::FormalExp) {
        ExpSum e = as_exp(x);
        if (e.terms.size() == 1) {
            const auto& [q, c] = *e.terms.begin();
            if (q.is_zero()) return is_prime(c);
            if (c != 1) return false;
            return q.num() == 1 && is_prime(q.den());
        }
        Int g = 0;
        for (const auto& t : e.terms) g = gcd(g, t.second);
        if (g > 1) return false;
        const Rat q0 = e.terms.begin()->first;
        if (!q0.is_zero() && std::all_of(e.terms.begin(), e.terms.end(), [&](const auto& t) { return mem_M(t.first - q0); }))
            return false;
        throw Inconclusive("no divisor of " + x.str() + " found by the bounded search");
    }
    const Rat& q = x.rat();
    if (natural_like(S)) return is_prime(q.num());
    switch (S.kind) {
        case Kind::NonnegRationals: return false;
        case Kind::Conducted: {
            const Rat& r = S.r;
            if (r <= Rat(1)) return false;
            Rat r2 = r * r;
            bool in_range = (q.is_integer() && is_prime(q.num()) && q < r2) || (q >= r && q < r2);
            if (!in_range) return false;
            for (const Int& p : primes_upto(q.floor().get_ui())) {
                Rat cof = q / Rat(p);
                if (cof > Rat(1) && conducted_contains(r, cof)) return false;
            }
            return true;
        }
        case Kind::Cyclic: {
            if (!S.n_gt_1) {
                // free on the primes outside supp(r), up to units
                Int core = q.num();
                for (const Int& p : support(S.r))
                    while (mpz_divisible_p(core.get_mpz_t(), p.get_mpz_t())) core /= p;
                return is_prime(core);
            }
            auto divs = mult_divisors(S, x, b);
            for (const Element& d : divs.items)
                if (!d.is_one() && d != x) return false;
            if (divs.complete) return true;
            throw Inconclusive("no proper divisor of " + x.str() + " within bounds");
        }
        default: return false;
    }
}

}  // namespace semifact
