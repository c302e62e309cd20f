#include "semifact/verifier.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <random>
#include <set>

#include "semifact/errors.hpp"

namespace semifact {

std::string status_name(Status s) {
    switch (s) {
        case Status::Pass: return "Pass";
        case Status::Fail: return "Fail";
        default: return "Inconclusive";
    }
}

void CheckReport::settle() {
    if (!violations.empty()) status = Status::Fail;
}

namespace {

using IMat = std::vector<std::vector<long>>;

IMat to_ints(const UTMatrix& A) {
    IMat m(A.n(), std::vector<long>(A.n(), 0));
    for (size_t i = 0; i < A.n(); ++i)
        for (size_t j = i; j < A.n(); ++j) {
            const Rat& v = A.at(i, j);
            if (!v.is_integer() || !v.num().fits_slong_p()) throw DomainError("brute force needs small integer entries");
            m[i][j] = v.num().get_si();
        }
    return m;
}

bool is_identity(const IMat& m) {
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = i; j < m.size(); ++j)
            if (m[i][j] != (i == j ? 1 : 0)) return false;
    return true;
}

// C with B C = A over the naturals, by back substitution.
std::optional<IMat> solve_right(const IMat& B, const IMat& A) {
    const size_t n = A.size();
    IMat C(n, std::vector<long>(n, 0));
    for (size_t j = 0; j < n; ++j)
        for (size_t ii = j + 1; ii-- > 0;) {
            long s = A[ii][j];
            for (size_t k = ii + 1; k <= j; ++k) s -= B[ii][k] * C[k][j];
            if (s < 0 || s % B[ii][ii] != 0) return std::nullopt;
            C[ii][j] = s / B[ii][ii];
        }
    return C;
}

// Calls f on every regular upper triangular matrix with diagonal in [1, max(1,bound)]
// and off-diagonal entries in [0, cap(i,j)]; stops when f returns true.
template <class Cap, class F>
bool for_each_regular(size_t n, long bound, Cap cap, F f) {
    std::vector<std::pair<size_t, size_t>> pos;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i; j < n; ++j) pos.emplace_back(i, j);
    IMat m(n, std::vector<long>(n, 0));
    auto lo = [](size_t i, size_t j) { return i == j ? 1L : 0L; };
    auto hi = [&](size_t i, size_t j) { return std::min(cap(i, j), i == j ? std::max(1L, bound) : bound); };
    for (auto [i, j] : pos) {
        m[i][j] = lo(i, j);
        if (hi(i, j) < lo(i, j)) return false;
    }
    while (true) {
        if (f(m)) return true;
        size_t k = 0;
        for (; k < pos.size(); ++k) {
            auto [i, j] = pos[k];
            if (m[i][j] < hi(i, j)) {
                ++m[i][j];
                break;
            }
            m[i][j] = lo(i, j);
        }
        if (k == pos.size()) return false;
    }
}

UTMatrix from_ints(const IMat& m) {
    UTMatrix A(Semialgebra::nat(), m.size());
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = i; j < m.size(); ++j) A.set(i, j, Rat(m[i][j]));
    return A;
}

}  // namespace

bool brute_force_matrix_atom(const UTMatrix& A, long entry_bound) {
    if (!is_regular(A)) throw DomainError("matrix is not regular");
    IMat a = to_ints(A);
    if (is_identity(a)) return false;
    // B_ij C_jj <= A_ij with C_jj >= 1, so B is entrywise below A
    bool split = for_each_regular(a.size(), entry_bound, [&](size_t i, size_t j) { return a[i][j]; },
                                  [&](const IMat& B) {
                                      if (is_identity(B)) return false;
                                      auto C = solve_right(B, a);
                                      return C && !is_identity(*C);
                                  });
    return !split;
}

CheckReport check_atom_characterization(size_t n, long entry_bound) {
    CheckReport rep;
    rep.check_name = "atom_characterization(n=" + std::to_string(n) + ",bound=" + std::to_string(entry_bound) + ")";
    for_each_regular(n, entry_bound, [](size_t, size_t) { return std::numeric_limits<long>::max(); },
                     [&](const IMat& m) {
                         ++rep.instances_tested;
                         UTMatrix A = from_ints(m);
                         if (is_matrix_atom(A) != brute_force_matrix_atom(A, std::max(1L, entry_bound)))
                             rep.violations.push_back(A.str());
                         return false;
                     });
    rep.settle();
    return rep;
}

CheckReport check_sigma_superadditivity(long samples, std::uint64_t seed) {
    CheckReport rep;
    rep.check_name = "sigma_superadditivity";
    rep.seed = seed;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> dim(2, 3), diag(1, 4), off(0, 4);
    auto random_matrix = [&](size_t n) {
        UTMatrix M(Semialgebra::nat(), n);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i; j < n; ++j) M.set(i, j, Rat(i == j ? diag(rng) : off(rng)));
        return M;
    };
    for (long s = 0; s < samples; ++s) {
        size_t n = static_cast<size_t>(dim(rng));
        UTMatrix A = random_matrix(n), B = random_matrix(n);
        ++rep.instances_tested;
        if (sigma(mat_mul(A, B)) < sigma(A) + sigma(B)) rep.violations.push_back(A.str() + " x " + B.str());
    }
    rep.settle();
    return rep;
}

namespace {

// Whether x has finitely many additive atom divisors; nullopt when not applicable.
std::optional<bool> atom_divisors_finite(const Semialgebra& S, const Rat& x) {
    switch (S.kind) {
        case Kind::Nat: return true;
        case Kind::Cyclic: {
            if (!S.d_gt_1) return true;
            if (!S.n_gt_1) return std::nullopt;
            if (S.r > Rat(1)) return true;
            // infinitely many powers divide x iff one beyond the top index does
            auto digits = canonical_digits(S, x);
            Rat tail = pow(S.r, digits.size());
            auto rest = try_sub(x, tail);
            return !(rest && contains(S, Element(*rest)));
        }
        case Kind::Conducted:
            if (S.r < Rat(1)) return std::nullopt;
            return x <= S.r * Rat(2);
        default: return std::nullopt;
    }
}

}  // namespace

CheckReport check_divisor_atom_factorization_equivalence(const Semialgebra& S, const std::vector<Rat>& samples,
                                                         const Bounds& b) {
    CheckReport rep;
    rep.check_name = "divisor_atom_factorization_equivalence(" + S.str() + ")";
    bool undecided = false;
    for (const Rat& x : samples) {
        if (!contains(S, Element(x))) continue;
        auto a_finite = atom_divisors_finite(S, x);
        if (!a_finite) {
            undecided = true;
            rep.note = "no atom-divisor oracle for " + S.str();
            continue;
        }
        ++rep.instances_tested;
        bool d_finite = add_divisors(S, Element(x), b).complete;
        bool z_finite = add_factorizations(S, Element(x), b).complete;
        if (d_finite && *a_finite && z_finite) continue;
        if (!d_finite && !*a_finite && !z_finite) {
            undecided = true;
            continue;
        }
        rep.violations.push_back(x.str() + " D=" + (d_finite ? "finite" : "open") + " A=" +
                                 (*a_finite ? "finite" : "infinite") + " Z=" + (z_finite ? "finite" : "open"));
    }
    if (undecided) rep.status = Status::Inconclusive;
    rep.settle();
    return rep;
}

namespace {

std::vector<UTMatrix> transfer_samples(const Semialgebra& S, size_t n) {
    std::vector<Rat> off, diag;
    const Rat& r = S.r;
    switch (S.kind) {
        case Kind::Nat:
            off = {0, 1, 2, 3, 4};
            diag = {1, 2, 3, 4};
            break;
        case Kind::Cyclic:
            off = {Rat(0), Rat(1), r, r * r, Rat(1) + r, Rat(2)};
            diag = {Rat(1), r, Rat(1) + r};
            break;
        case Kind::Conducted:
            off = {Rat(0), Rat(1), Rat(2), r + Rat::make(1, 2), Rat(3)};
            diag = {Rat(1), Rat(2), Rat(3), r * r};
            break;
        default: throw Unsupported("no transfer samples for " + S.str());
    }
    std::vector<std::pair<size_t, size_t>> pos;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i; j < n; ++j) pos.emplace_back(i, j);
    std::vector<size_t> idx(pos.size(), 0);
    std::vector<UTMatrix> out;
    const size_t cap = 200;
    while (out.size() < cap) {
        UTMatrix M(S, n);
        bool ok = true;
        for (size_t k = 0; k < pos.size(); ++k) {
            auto [i, j] = pos[k];
            const Rat& v = i == j ? diag[idx[k]] : off[idx[k]];
            if (!contains(S, Element(v))) ok = false;
            else M.set(i, j, v);
        }
        if (ok) out.push_back(M);
        size_t k = 0;
        for (; k < pos.size(); ++k) {
            auto [i, j] = pos[k];
            if (++idx[k] < (i == j ? diag.size() : off.size())) break;
            idx[k] = 0;
        }
        if (k == pos.size()) break;
    }
    if (S.kind != Kind::Cyclic && n == 2 && S.rational()) {
        for (long m = 2; m <= 4; ++m)
            if (is_add_atom(S, Element(1))) out.push_back(hfm_counterexample(S, m).A);
    }
    return out;
}

}  // namespace

CheckReport check_transfer_diagram(const Semialgebra& S, size_t n, const Bounds& b) {
    CheckReport rep;
    rep.check_name = "transfer_diagram(" + S.str() + ",n=" + std::to_string(n) + ")";
    const bool accp_row = S.kind == Kind::Nat || (S.kind == Kind::Cyclic && S.r > Rat(1)) ||
                          (S.kind == Kind::Conducted && S.r > Rat(1));
    const bool chain_row = S.kind == Kind::Cyclic && S.r < Rat(1) && S.n_gt_1 && S.d_gt_1;
    bool chain_seen = false, flagged = false;
    std::set<Rat> probed;
    for (const UTMatrix& B : transfer_samples(S, n)) {
        ++rep.instances_tested;
        bool oracles_complete = true;
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j)
                if (!B.at(i, j).is_zero() && !add_factorizations(S, Element(B.at(i, j)), b).complete)
                    oracles_complete = false;
        if (!B.det().is_one() && !mult_factorizations(S, Element(B.det()), b).complete) oracles_complete = false;
        std::optional<long> w;
        try {
            w = weight(B, b);
        } catch (const Inconclusive&) {
        }
        if (oracles_complete || w) {
            auto rf = rigid_factorizations(B, b);
            if (oracles_complete && (!rf.complete || rf.items.empty()))
                rep.violations.push_back("FFM side: " + B.str());
            if (!oracles_complete && !rf.complete) flagged = true;
            for (const auto& f : rf.items) {
                if (w && static_cast<long>(f.length()) > *w) rep.violations.push_back("BFM side: " + B.str());
                if (!(product(S, n, f.factors) == B)) rep.violations.push_back("product: " + B.str());
            }
        } else {
            flagged = true;
        }
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j) {
                const Rat& x = B.at(i, j);
                if (x.is_zero() || !probed.insert(x).second || !(accp_row || chain_row)) continue;
                auto ch = accp_probe(S, Mode::Additive, Element(x), b.depth, b);
                if (ch.found) {
                    chain_seen = true;
                    if (accp_row) rep.violations.push_back("chain in an ACCP monoid from " + x.str());
                }
            }
    }
    if (chain_row && !chain_seen) rep.violations.push_back("no ascending chain found at depth " + std::to_string(b.depth));
    if (flagged) rep.note = "some enumerations were incomplete and only flagged";
    rep.settle();
    return rep;
}

namespace {

std::vector<long> sieve_primes_below(long n) {
    std::vector<bool> comp(static_cast<size_t>(std::max(n, 2L)), false);
    std::vector<long> out;
    for (long p = 2; p < n; ++p) {
        if (comp[p]) continue;
        out.push_back(p);
        for (long q = p * p; q < n; q += p) comp[q] = true;
    }
    return out;
}

// Canonical-digit members sum c_i r^i with c_0 <= c0_max, c_i < d(r), i <= top.
void digit_members(const Rat& r, long top, long c0_max, const std::function<void(const Rat&)>& f) {
    const long d = r.den().get_si();
    std::vector<long> c(static_cast<size_t>(top) + 1, 0);
    while (true) {
        Rat x;
        Rat p(1);
        for (size_t i = 0; i < c.size(); ++i, p *= r)
            if (c[i]) x += Rat(c[i]) * p;
        f(x);
        size_t k = 0;
        for (; k < c.size(); ++k) {
            if (++c[k] <= (k == 0 ? c0_max : d - 1)) break;
            c[k] = 0;
        }
        if (k == c.size()) return;
    }
}

}  // namespace

CheckReport check_atom_census(const Semialgebra& S, long bound) {
    CheckReport rep;
    rep.check_name = "atom_census(" + S.str() + ",bound=" + std::to_string(bound) + ")";
    const bool nat_like = S.kind == Kind::Nat || (S.kind == Kind::Cyclic && !S.d_gt_1);
    if (nat_like) {
        for (long cap : {bound, 2 * bound}) {
            long adds = 0, mults = 0;
            for (long k = 0; k < cap; ++k) {
                ++rep.instances_tested;
                if (is_add_atom(S, Element(k))) ++adds;
                if (k > 0 && is_mult_atom(S, Element(k))) ++mults;
            }
            if (adds != 1) rep.violations.push_back("additive census below " + std::to_string(cap) + " is " + std::to_string(adds));
            long expect = static_cast<long>(sieve_primes_below(cap).size());
            if (mults != expect)
                rep.violations.push_back("multiplicative census below " + std::to_string(cap) + " is " +
                                         std::to_string(mults) + ", sieve says " + std::to_string(expect));
            rep.note += (rep.note.empty() ? "" : "; ") + std::string("below ") + std::to_string(cap) + ": " +
                        std::to_string(adds) + " additive, " + std::to_string(mults) + " multiplicative";
        }
        for (long q = 1; q <= 4; ++q)
            for (long p = 0; p <= 4 * q; ++p) {
                Rat x = Rat::make(p, q);
                if (contains(S, Element(x)) != x.is_integer()) rep.violations.push_back("membership of " + x.str());
            }
    } else if (S.kind == Kind::Cyclic && S.n_gt_1) {
        std::vector<long> census;
        for (long top : {bound / 2, bound}) {
            long adds = 0;
            digit_members(S.r, top, 1, [&](const Rat& x) {
                ++rep.instances_tested;
                if (!is_add_atom(S, Element(x))) return;
                ++adds;
                bool power = false;
                for (long k = 0; k <= top && !power; ++k) power = x == pow(S.r, k);
                if (!power) rep.violations.push_back("non-power additive atom " + x.str());
            });
            if (adds != top + 1) rep.violations.push_back("additive census at exponent " + std::to_string(top) + " is " + std::to_string(adds));
            census.push_back(adds);
        }
        if (census[1] <= census[0]) rep.violations.push_back("additive census does not grow");
        std::vector<long> mult;
        bool undecided = false;
        for (long top : {1L, 2L}) {
            long count = 0;
            digit_members(S.r, top, 6, [&](const Rat& x) {
                if (x.is_zero() || x > Rat(6)) return;
                ++rep.instances_tested;
                try {
                    if (is_mult_atom(S, Element(x))) ++count;
                } catch (const Inconclusive&) {
                    undecided = true;
                }
            });
            mult.push_back(count);
        }
        if (mult[1] <= mult[0] && !undecided) rep.violations.push_back("multiplicative census does not grow");
        if (undecided) rep.status = Status::Inconclusive;
        rep.note = "additive " + std::to_string(census[0]) + " -> " + std::to_string(census[1]) + ", multiplicative " +
                   std::to_string(mult[0]) + " -> " + std::to_string(mult[1]);
    } else if (S.kind == Kind::Conducted && S.r >= Rat(1)) {
        std::vector<long> adds, mults;
        for (long den : {bound, 2 * bound}) {
            long a = 0, m = 0;
            for (long q = 1; q <= den; ++q)
                for (long p = 1; p <= q * (S.r.ceil().get_si() + 2); ++p) {
                    Rat x = Rat::make(p, q);
                    if (x.den() != q || !contains(S, Element(x))) continue;
                    ++rep.instances_tested;
                    if (is_add_atom(S, Element(x))) ++a;
                    if (S.r > Rat(1) && is_mult_atom(S, Element(x))) ++m;
                }
            adds.push_back(a);
            mults.push_back(m);
        }
        if (adds[0] < 2 || adds[1] <= adds[0]) rep.violations.push_back("additive census does not grow");
        if (S.r > Rat(1) && mults[1] <= mults[0]) rep.violations.push_back("multiplicative census does not grow");
        rep.note = "additive " + std::to_string(adds[0]) + " -> " + std::to_string(adds[1]) + ", multiplicative " +
                   std::to_string(mults[0]) + " -> " + std::to_string(mults[1]);
    } else {
        rep.status = Status::Inconclusive;
        rep.note = S.str() + " has antimatter rows";
    }
    rep.settle();
    return rep;
}

std::vector<CheckReport> run_suite(const std::string& name, std::uint64_t seed) {
    const bool all = name == "all";
    static const std::set<std::string> known{"all", "atoms", "sigma", "equivalence", "transfer", "census"};
    if (!known.count(name)) throw DomainError("unknown suite " + name);
    std::vector<CheckReport> out;
    auto want = [&](const char* s) { return all || name == s; };
    const Rat two_thirds = Rat::make(2, 3), three_halves = Rat::make(3, 2);
    if (want("atoms")) {
        out.push_back(check_atom_characterization(2, 5));
        out.push_back(check_atom_characterization(3, 2));
    }
    if (want("sigma")) out.push_back(check_sigma_superadditivity(500, seed));
    if (want("equivalence")) {
        std::vector<Rat> naturals;
        for (long k = 1; k <= 20; ++k) naturals.emplace_back(k);
        out.push_back(check_divisor_atom_factorization_equivalence(Semialgebra::nat(), naturals));
        std::vector<Rat> up;
        digit_members(three_halves, 2, 3, [&](const Rat& x) {
            if (!x.is_zero() && up.size() < 15) up.push_back(x);
        });
        out.push_back(check_divisor_atom_factorization_equivalence(Semialgebra::cyclic(three_halves), up));
        std::vector<Rat> down{Rat(1), two_thirds, Rat(1) + two_thirds, Rat(2), Rat::make(4, 3)};
        out.push_back(check_divisor_atom_factorization_equivalence(Semialgebra::cyclic(two_thirds), down));
        out.push_back(check_divisor_atom_factorization_equivalence(Semialgebra::conducted(Rat(2)),
                                                                   {Rat(3), Rat(4), Rat::make(9, 2)}));
    }
    if (want("transfer")) {
        Bounds b;
        b.depth = 6;
        out.push_back(check_transfer_diagram(Semialgebra::nat(), 2, b));
        out.push_back(check_transfer_diagram(Semialgebra::cyclic(three_halves), 2, b));
        out.push_back(check_transfer_diagram(Semialgebra::cyclic(two_thirds), 2, b));
        b.max_den = 12;
        out.push_back(check_transfer_diagram(Semialgebra::conducted(Rat(2)), 2, b));
    }
    if (want("census")) {
        out.push_back(check_atom_census(Semialgebra::nat(), 100));
        out.push_back(check_atom_census(Semialgebra::cyclic(two_thirds), 10));
        out.push_back(check_atom_census(Semialgebra::cyclic(three_halves), 8));
        out.push_back(check_atom_census(Semialgebra::conducted(Rat(2)), 8));
        out.push_back(check_atom_census(Semialgebra::qnn(), 8));
    }
    for (auto& r : out) r.seed = seed;
    return out;
}

}  // namespace semifact
