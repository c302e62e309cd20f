#include <algorithm>
#include <map>
#include <set>

#include "internal.hpp"
#include "semifact/budget.hpp"
#include "semifact/errors.hpp"
#include "semifact/matrix.hpp"

namespace semifact {

namespace {

// Additive atoms a with a * diag an additive divisor of entry, ascending.
std::vector<Rat> additive_candidates(const Semialgebra& S, const Rat& entry, const Rat& diag, const Bounds& b,
                                     bool& complete) {
    if (detail::natural_like(S)) return {Rat(1)};
    if (detail::cyclic_proper(S)) {
        // atoms are the powers of r
        std::vector<Rat> out;
        const bool up = S.r > Rat(1);
        long top = b.max_exp;
        if (!up) {
            // Z(entry) finite: a * diag is one of finitely many sub-sums, whose index is at
            // most that of entry, and index(r^e diag) >= e - log2 n(diag)
            auto digits = detail::cyclic_digits(S.r, entry);
            bool finite = std::all_of(digits->begin(), digits->end(), [&](const Int& c) { return c < S.r.num(); });
            if (finite)
                top = std::max<long>(top, static_cast<long>(digits->size()) +
                                              static_cast<long>(mpz_sizeinbase(diag.num().get_mpz_t(), 2)));
            else
                complete = false;
        }
        Rat a(1);
        for (long e = 0; up || e <= top; ++e, a *= S.r) {
            Rat used = a * diag;
            if (used > entry) {
                if (up) break;
                continue;
            }
            if (contains(S, Element(entry - used))) out.push_back(a);
        }
        std::sort(out.begin(), out.end());
        return out;
    }
    auto ds = add_divisors(S, Element(entry), b);
    complete = complete && ds.complete;
    std::set<Rat> vals;
    for (const Element& d : ds.items) {
        if (d.is_zero()) continue;
        Rat a = d.rat() / diag;
        if (contains(S, Element(a)) && is_add_atom(S, Element(a))) vals.insert(a);
    }
    return {vals.begin(), vals.end()};
}

}  // namespace

CandidateSet atom_candidates(const UTMatrix& B, const Bounds& b) {
    if (!is_regular(B)) throw DomainError("matrix is not regular");
    const Semialgebra& S = B.semialgebra();
    const size_t n = B.n();
    CandidateSet out;
    for (size_t k = 0; k < n; ++k)
        for (size_t l = k + 1; l < n; ++l) {
            if (B.at(k, l).is_zero()) continue;
            for (const Rat& a : additive_candidates(S, B.at(k, l), B.at(l, l), b, out.complete))
                out.atoms.push_back(atom_matrix(S, n, {AtomType::Additive, k, l, a}));
        }
    Rat det = B.det();
    if (det.is_one()) return out;
    auto ds = mult_divisors(S, Element(det), b);
    out.complete = out.complete && ds.complete;
    std::vector<Rat> atoms;
    for (const Element& d : ds.items) {
        if (d.is_one()) continue;
        try {
            if (is_mult_atom(S, d, b)) atoms.push_back(d.rat());
        } catch (const Inconclusive&) {
            out.complete = false;
        }
    }
    std::sort(atoms.begin(), atoms.end());
    for (size_t i = 0; i < n; ++i)
        for (const Rat& a : atoms) out.atoms.push_back(atom_matrix(S, n, {AtomType::Multiplicative, i, i, a}));
    return out;
}

namespace {

struct RigidSearch {
    const Bounds& b;
    bool unit_only;
    long limit;
    std::map<UTMatrix, CandidateSet> memo;
    std::vector<RigidFactorization> found;
    std::vector<UTMatrix> path;
    bool candidates_complete = true;
    bool len_cut = false;
    bool count_cut = false;

    const CandidateSet& candidates(const UTMatrix& C) {
        auto it = memo.find(C);
        if (it == memo.end()) it = memo.emplace(C, atom_candidates(C, b)).first;
        return it->second;
    }

    void dfs(const UTMatrix& C) {
        if (count_cut) return;
        if (C.is_identity()) {
            if (static_cast<long>(found.size()) >= b.max_count) {
                count_cut = true;
                return;
            }
            charge(64 * path.size() + 32);
            found.push_back({path});
            return;
        }
        if (static_cast<long>(path.size()) >= limit) {
            len_cut = true;
            return;
        }
        const CandidateSet& cs = candidates(C);
        if (!cs.complete) candidates_complete = false;
        for (const UTMatrix& A : cs.atoms) {
            if (unit_only && atom_shape(A)->type == AtomType::Multiplicative) continue;
            auto next = left_divide(A, C);
            // S is reduced in every supported atomic case, so a division never returns C itself
            if (!next || *next == C) continue;
            path.push_back(A);
            dfs(*next);
            path.pop_back();
            if (count_cut) return;
        }
    }
};

}  // namespace

Enumeration<RigidFactorization> rigid_factorizations(const UTMatrix& B, const Bounds& b, bool restrict_unit_triangular) {
    if (!is_regular(B)) throw DomainError("matrix is not regular");
    Enumeration<RigidFactorization> out;
    out.bounds = b;
    if (restrict_unit_triangular && !B.is_unit_triangular()) return out;
    long limit = b.max_len;
    try {
        limit = weight(B, b);
    } catch (const Inconclusive&) {
    }
    RigidSearch search{b, restrict_unit_triangular, limit, {}, {}, {}};
    search.dfs(B);
    out.items = std::move(search.found);
    out.complete = search.candidates_complete && !search.len_cut && !search.count_cut;
    return out;
}

LengthSet rigid_length_set(const UTMatrix& B, const Bounds& b, bool restrict_unit_triangular) {
    auto e = rigid_factorizations(B, b, restrict_unit_triangular);
    LengthSet ls;
    ls.complete = e.complete;
    for (const auto& f : e.items) ls.lengths.insert(static_cast<long>(f.length()));
    return ls;
}

namespace {

long search_limit(const UTMatrix& B, const Bounds& b) {
    try {
        return weight(B, b);
    } catch (const Inconclusive&) {
        return b.max_len;
    }
}

// Memoized left-division search over cofactors; depth-limited, tri-state.
struct DivisionSearch {
    const Bounds& b;
    std::map<UTMatrix, CandidateSet> cands;
    std::map<std::pair<UTMatrix, long>, Verdict> fact_memo;
    std::map<std::pair<UTMatrix, long>, Verdict> div_memo;

    const CandidateSet& candidates(const UTMatrix& C) {
        auto it = cands.find(C);
        if (it == cands.end()) {
            it = cands.emplace(C, atom_candidates(C, b)).first;
            charge(64 * it->second.atoms.size() + 64);
        }
        return it->second;
    }

    std::vector<std::pair<UTMatrix, UTMatrix>> steps(const UTMatrix& C, bool& complete) {
        const CandidateSet& cs = candidates(C);
        complete = cs.complete;
        std::vector<std::pair<UTMatrix, UTMatrix>> out;
        for (const UTMatrix& W : cs.atoms)
            if (auto next = left_divide(W, C); next && !(*next == C)) out.emplace_back(W, *next);
        return out;
    }

    // Whether C is a product of atoms of length <= d.
    Verdict factorable(const UTMatrix& C, long d) {
        if (C.is_identity()) return Verdict::Yes;
        if (d <= 0) return Verdict::Inconclusive;
        auto key = std::make_pair(C, d);
        if (auto it = fact_memo.find(key); it != fact_memo.end()) return it->second;
        bool complete;
        Verdict v = Verdict::No;
        for (const auto& [W, next] : steps(C, complete)) {
            Verdict w = factorable(next, d - 1);
            if (w == Verdict::Yes) {
                v = Verdict::Yes;
                break;
            }
            if (w == Verdict::Inconclusive) v = Verdict::Inconclusive;
        }
        if (v == Verdict::No && !complete) v = Verdict::Inconclusive;
        return fact_memo[key] = v;
    }

    // Whether A occurs in a rigid factorization of C of length <= d.
    Verdict divides(const UTMatrix& A, const UTMatrix& C, long d) {
        if (C.is_identity()) return Verdict::No;
        if (d <= 0) return Verdict::Inconclusive;
        auto key = std::make_pair(C, d);
        if (auto it = div_memo.find(key); it != div_memo.end()) return it->second;
        bool complete;
        Verdict v = Verdict::No;
        for (const auto& [W, next] : steps(C, complete)) {
            Verdict w = W == A ? factorable(next, d - 1) : divides(A, next, d - 1);
            if (w == Verdict::Yes) {
                v = Verdict::Yes;
                break;
            }
            if (w == Verdict::Inconclusive) v = Verdict::Inconclusive;
        }
        if (v == Verdict::No && !complete) v = Verdict::Inconclusive;
        return div_memo[key] = v;
    }
};

}  // namespace

Verdict divides_up_to_permutation(const UTMatrix& A, const UTMatrix& B, const Bounds& b) {
    if (!atom_shape(A)) throw DomainError("divisor must be an atom");
    if (!is_regular(B)) throw DomainError("matrix is not regular");
    if (A == B) return Verdict::Yes;
    DivisionSearch ds{b, {}, {}, {}};
    return ds.divides(A, B, search_limit(B, b));
}

AplReport almost_prime_like_probe(const UTMatrix& A, const Bounds& b, long pool) {
    if (!atom_shape(A)) throw DomainError("probe needs an atom");
    const Semialgebra& S = A.semialgebra();
    const size_t n = A.n();

    std::vector<Rat> add_pool, mult_pool;
    for (const Element& a : list_atoms(S, Mode::Additive, b).items) {
        if (static_cast<long>(add_pool.size()) >= pool) break;
        add_pool.push_back(a.rat());
    }
    std::set<Rat> mult_try(add_pool.begin(), add_pool.end());
    for (long k = 2; k <= pool + 1; ++k) mult_try.insert(Rat(k));
    for (const Rat& a : mult_try) {
        if (a.is_zero() || !contains(S, Element(a))) continue;
        try {
            if (is_mult_atom(S, Element(a), b)) mult_pool.push_back(a);
        } catch (const Inconclusive&) {
        }
    }

    std::vector<UTMatrix> atoms;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            for (const Rat& a : add_pool) atoms.push_back(atom_matrix(S, n, {AtomType::Additive, i, j, a}));
    for (size_t i = 0; i < n; ++i)
        for (const Rat& a : mult_pool) atoms.push_back(atom_matrix(S, n, {AtomType::Multiplicative, i, i, a}));

    std::set<UTMatrix> products;
    for (const UTMatrix& W : atoms) {
        products.insert(mat_mul(W, A));
        products.insert(mat_mul(A, W));
        for (const UTMatrix& V : atoms) {
            products.insert(mat_mul(A, mat_mul(W, V)));
            products.insert(mat_mul(mat_mul(W, V), A));
            products.insert(mat_mul(W, mat_mul(A, V)));
        }
    }

    AplReport rep;
    DivisionSearch ds{b, {}, {}, {}};
    std::set<std::pair<UTMatrix, UTMatrix>> seen;
    for (const UTMatrix& M : products) {
        ++rep.products_tested;
        const long limit = search_limit(M, b);
        // right cofactors Y of M = X Y with X a nonempty product of atoms
        std::map<UTMatrix, UTMatrix> prefix;
        std::vector<std::pair<UTMatrix, long>> frontier{{M, 0}};
        std::set<UTMatrix> visited{M};
        while (!frontier.empty()) {
            auto [Y, depth] = frontier.back();
            frontier.pop_back();
            if (depth >= limit) continue;
            bool complete;
            for (const auto& [W, next] : ds.steps(Y, complete)) {
                if (!visited.insert(next).second) continue;
                UTMatrix X = Y == M ? W : mat_mul(prefix.at(Y), W);
                prefix.emplace(next, X);
                frontier.emplace_back(next, depth + 1);
            }
        }
        for (const auto& [Y, X] : prefix) {
            if (Y.is_identity() || !seen.insert({X, Y}).second) continue;
            const long dx = search_limit(X, b), dy = search_limit(Y, b);
            Verdict fy = ds.factorable(Y, dy);
            if (fy == Verdict::No) continue;
            Verdict vx = X == A ? Verdict::Yes : ds.divides(A, X, dx);
            if (vx == Verdict::Yes) continue;
            Verdict vy = Y == A ? Verdict::Yes : ds.divides(A, Y, dy);
            if (vy == Verdict::Yes) continue;
            if (fy == Verdict::Yes && vx == Verdict::No && vy == Verdict::No)
                rep.witnesses.push_back({X, Y});
            else
                rep.inconclusive = true;
        }
    }
    return rep;
}

HfmCounterexample hfm_counterexample(const Semialgebra& S, long m, const Bounds& b) {
    if (m < 2) throw DomainError("m must be at least 2");
    if (!S.rational()) throw Unsupported("matrix operations need a rational semialgebra");
    if (!is_add_atom(S, Element(1))) throw DomainError("1 is not an additive atom of " + S.str());
    auto mf = mult_factorizations(S, Element(Rat(m)), b);
    if (mf.items.empty()) throw DomainError(std::to_string(m) + " has no multiplicative factorization in " + S.str());
    UTMatrix U = atom_matrix(S, 2, {AtomType::Additive, 0, 1, Rat(1)});
    std::vector<UTMatrix> d_atoms;
    for (const Element& a : mf.items.front().expanded())
        d_atoms.push_back(atom_matrix(S, 2, {AtomType::Multiplicative, 1, 1, a.rat()}));

    HfmCounterexample h{product(S, 2, d_atoms), {}, {}};
    h.long_form.factors = d_atoms;
    for (long k = 0; k < m; ++k) h.long_form.factors.push_back(U);
    h.short_form.factors.push_back(U);
    h.short_form.factors.insert(h.short_form.factors.end(), d_atoms.begin(), d_atoms.end());
    h.A = product(S, 2, h.long_form.factors);
    if (!(product(S, 2, h.short_form.factors) == h.A)) throw std::logic_error("hfm identity failed");
    return h;
}

}  // namespace semifact
