#include <algorithm>
#include <cstdint>
#include <numeric>

#include "internal.hpp"
#include "semifact/budget.hpp"
#include "semifact/errors.hpp"

namespace semifact::detail {

Int ipow(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

const Rat& as_rat(const Semialgebra& S, const Element& x) {
    if (!S.rational()) throw DomainError("operation needs a rational semialgebra, got " + S.str());
    if (!x.is_rat()) throw DomainError(x.str() + " is not a rational element");
    return x.rat();
}

ExpSum as_exp(const Element& x) {
    if (!x.is_rat()) return x.exp();
    if (!x.rat().is_integer()) throw DomainError(x.str() + " is not a formal exponential sum");
    return ExpSum::term(Rat(0), x.rat().num());
}

bool additively_antimatter(const Semialgebra& S) {
    switch (S.kind) {
        case Kind::NonnegRationals: return true;
        case Kind::Cyclic: return !S.n_gt_1 && S.d_gt_1;
        case Kind::Conducted: return S.r < Rat(1);
        default: return false;
    }
}

std::optional<unsigned long> cyclic_index(const Rat& x, const Int& b) {
    if (x.den().fits_ulong_p() && b.fits_ulong_p()) {
        unsigned long d = x.den().get_ui(), bb = b.get_ui(), m = 0;
        while (d != 1) {
            unsigned long g = std::gcd(d, bb);
            if (g == 1) return std::nullopt;
            d /= g;
            ++m;
        }
        return m;
    }
    Int d = x.den();
    unsigned long m = 0;
    while (d != 1) {
        Int g = gcd(d, b);
        if (g == 1) return std::nullopt;
        d /= g;
        ++m;
    }
    return m;
}

namespace {

// Same recurrence as cyclic_digits when everything fits in 64 bits.
std::optional<std::vector<Int>> small_cyclic_digits(std::int64_t X, std::int64_t ai, std::int64_t a, std::int64_t b,
                                                    std::int64_t inv_i, unsigned long m) {
    std::vector<Int> c(m + 1);
    for (unsigned long i = m; i >= 1; --i) {
        std::int64_t ci = static_cast<std::int64_t>((static_cast<__int128>(X % b) * inv_i) % b);
        __int128 rest = static_cast<__int128>(X) - static_cast<__int128>(ci) * ai;
        if (rest < 0) return std::nullopt;
        X = static_cast<std::int64_t>(rest / b);
        ai /= a;
        inv_i = static_cast<std::int64_t>((static_cast<__int128>(inv_i) * (a % b)) % b);
        c[i] = static_cast<long>(ci);
    }
    c[0] = static_cast<long>(X);
    return c;
}

}  // namespace

std::optional<std::vector<Int>> cyclic_digits(const Rat& r, const Rat& x) {
    const Int a = r.num(), b = r.den();
    auto m = cyclic_index(x, b);
    if (!m) return std::nullopt;
    // X = x b^m = sum c_i a^i b^(m-i); peel off the top digit, which is pinned mod b.
    Int X = x.num() * (ipow(b, *m) / x.den());
    Int ai = ipow(a, *m);
    Int inv;
    mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    Int inv_i;
    mpz_powm_ui(inv_i.get_mpz_t(), inv.get_mpz_t(), *m, b.get_mpz_t());
    const Int limit = Int(1) << 40;
    if (X < limit && ai < limit && b < limit && a < limit)
        return small_cyclic_digits(X.get_si(), ai.get_si(), a.get_si(), b.get_si(), inv_i.get_si(), *m);
    std::vector<Int> c(*m + 1);
    for (unsigned long i = *m; i >= 1; --i) {
        Int t = X * inv_i;
        mpz_fdiv_r(c[i].get_mpz_t(), t.get_mpz_t(), b.get_mpz_t());
        X -= c[i] * ai;
        if (X < 0) return std::nullopt;
        mpz_divexact(X.get_mpz_t(), X.get_mpz_t(), b.get_mpz_t());
        mpz_divexact(ai.get_mpz_t(), ai.get_mpz_t(), a.get_mpz_t());
        inv_i = (inv_i * a) % b;
    }
    c[0] = X;
    return c;
}

Rat digits_value(const Rat& r, const std::vector<Int>& digits) {
    Rat v;
    for (size_t i = 0; i < digits.size(); ++i) v += Rat(digits[i]) * pow(r, i);
    return v;
}

std::vector<Rat> cyclic_members(const Rat& r, long max_index, const Rat& cap, long exact_index) {
    const Int b = r.den();
    std::vector<Rat> out;
    long top = exact_index >= 0 ? exact_index : max_index;
    std::vector<Rat> powers;
    for (long i = 0; i <= top; ++i) powers.push_back(pow(r, i));
    auto rec = [&](auto&& self, long i, const Rat& partial) -> void {
        if (i == 0) {
            Int c0max = (cap - partial).floor();
            for (Int c = 0; c <= c0max; ++c) out.push_back(partial + Rat(c));
            return;
        }
        Int lo = (exact_index >= 0 && i == exact_index) ? Int(1) : Int(0);
        for (Int c = lo; c < b; ++c) {
            Rat p = partial + Rat(c) * powers[i];
            if (p > cap) break;
            self(self, i - 1, p);
        }
    };
    if (exact_index == 0) {
        for (Int c = 1; c <= cap.floor(); ++c) out.push_back(Rat(c));
    } else {
        rec(rec, top, Rat(0));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool conducted_contains(const Rat& r, const Rat& x) {
    if (r < Rat(1)) return true;
    if (r == Rat(1)) return x.is_zero() || x >= r;
    return x.is_integer() || x >= r;
}

bool conducted_add_atom(const Rat& r, const Rat& x) {
    if (r < Rat(1)) return false;
    if (r == Rat(1)) return x >= Rat(1) && x < Rat(2);
    if (x.is_one()) return true;
    return x >= r && x < r + Rat(1) && x != Rat(r.ceil());
}

std::vector<Rat> rationals_between(const Rat& lo, const Rat& hi, long max_den) {
    std::vector<Rat> out;
    for (long q = 1; q <= max_den; ++q) {
        Int Q(q);
        Rat lq = lo * Rat(Q), hq = hi * Rat(Q);
        for (Int p = lq.ceil(); p <= hq.floor(); ++p)
            if (gcd(p, Q) == 1) out.push_back(Rat::make(p, Q));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Rat> conducted_add_atoms(const Rat& r, long max_den, const Rat& cap) {
    std::vector<Rat> out;
    if (r < Rat(1)) return out;
    Rat hi = std::min(cap, r + Rat(1));
    for (const Rat& q : rationals_between(r, hi, max_den))
        if (q < r + Rat(1) && conducted_add_atom(r, q)) out.push_back(q);
    if (r > Rat(1) && cap >= Rat(1)) out.insert(out.begin(), Rat(1));
    return out;
}

bool conducted_add_finite(const Rat& r, const Rat& x) {
    if (r == Rat(1)) {
        for (Int k = 2; Rat(k) < x; ++k)
            if (x < Rat(Int(2 * k))) return false;
        return true;
    }
    for (Int j = 0; Rat(j) <= x; ++j) {
        Rat v = x - Rat(j);
        for (Int k = 2; Rat(k) * r < v; ++k)
            if (v < Rat(k) * (r + Rat(1))) return false;
    }
    return true;
}

Knapsack knapsack(const std::vector<Rat>& atoms, const Rat& x, long max_len, long max_count,
                  const std::function<bool(const Rat&)>& last_atom) {
    Knapsack res;
    if (x.is_zero()) {
        res.solutions.emplace_back();
        return res;
    }
    std::vector<Int> suffix_lcm(atoms.size() + 1, Int(1));
    for (size_t i = atoms.size(); i-- > 0;) suffix_lcm[i] = lcm(suffix_lcm[i + 1], atoms[i].den());
    std::vector<Rat> seq;
    bool stop = false;
    auto emit = [&](const Rat& last) {
        seq.push_back(last);
        res.solutions.push_back(seq);
        charge(24 * seq.size() + 32);
        seq.pop_back();
        if (static_cast<long>(res.solutions.size()) >= max_count) {
            stop = true;
            res.count_cut = true;
        }
    };
    auto dfs = [&](auto&& self, size_t i, const Rat& rem, long len) -> void {
        if (stop) return;
        bool closes;
        if (last_atom) {
            closes = (i >= atoms.size() || rem >= atoms[i]) && last_atom(rem);
        } else {
            auto it = std::lower_bound(atoms.begin() + static_cast<long>(i), atoms.end(), rem);
            closes = it != atoms.end() && *it == rem;
        }
        if (closes) {
            if (len + 1 <= max_len) emit(rem);
            else res.len_cut = true;
        }
        for (size_t k = i; k < atoms.size() && !stop; ++k) {
            Rat twice = atoms[k] + atoms[k];
            if (twice > rem) break;
            if (len + 2 > max_len) {
                res.len_cut = true;
                break;
            }
            Rat rest = rem - atoms[k];
            if (!last_atom && !mpz_divisible_p(suffix_lcm[k].get_mpz_t(), rest.den().get_mpz_t())) continue;
            seq.push_back(atoms[k]);
            self(self, k, rest, len + 1);
            seq.pop_back();
        }
    };
    if (last_atom || mpz_divisible_p(suffix_lcm[0].get_mpz_t(), x.den().get_mpz_t())) dfs(dfs, 0, x, 0);
    return res;
}

DigitSolutions cyclic_representations(const Rat& r, const Rat& x, long top, long max_len, long max_count) {
    DigitSolutions res;
    const Int a = r.num(), b = r.den();
    Int inv;
    mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    std::vector<Rat> powers;
    for (long i = 0; i <= top; ++i) powers.push_back(pow(r, static_cast<unsigned long>(i)));
    std::vector<Int> c(static_cast<size_t>(top) + 1);
    bool stop = false;
    const Int lenmax(max_len);
    auto dfs = [&](auto&& self, long i, const Rat& rem, const Int& len) -> void {
        if (stop) return;
        if (i == 0) {
            if (len + rem.num() > lenmax) {
                res.len_cut = true;
                return;
            }
            c[0] = rem.num();
            res.counts.push_back(c);
            charge(c.size() * 16 + 32);
            if (static_cast<long>(res.counts.size()) >= max_count) {
                stop = true;
                res.count_cut = true;
            }
            return;
        }
        Rat scaled = rem * Rat(ipow(b, static_cast<unsigned long>(i)));
        if (!scaled.is_integer()) return;
        Int t = scaled.num() * ipow(inv, static_cast<unsigned long>(i));
        Int ci;
        mpz_fdiv_r(ci.get_mpz_t(), t.get_mpz_t(), b.get_mpz_t());
        for (; !stop; ci += b) {
            Rat used = Rat(ci) * powers[static_cast<size_t>(i)];
            if (used > rem) break;
            if (len + ci > lenmax) {
                res.len_cut = true;
                break;
            }
            c[static_cast<size_t>(i)] = ci;
            self(self, i - 1, rem - used, len + ci);
        }
        c[static_cast<size_t>(i)] = 0;
    };
    Rat start = x * Rat(ipow(b, static_cast<unsigned long>(top)));
    if (start.is_integer()) dfs(dfs, top, x, Int(0));
    return res;
}

Factorization to_factorization(Mode mode, const std::vector<Rat>& atoms) {
    Factorization f;
    f.mode = mode;
    for (const Rat& a : atoms) {
        if (!f.atoms.empty() && f.atoms.back().first == Element(a)) ++f.atoms.back().second;
        else f.atoms.emplace_back(Element(a), 1);
    }
    return f;
}

void sort_factorizations(std::vector<Factorization>& fs) {
    std::sort(fs.begin(), fs.end(), factorization_less);
}

}  // namespace semifact::detail
