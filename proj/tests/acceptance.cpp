// One PASS/FAIL line per acceptance criterion. Exit status is the number of failures.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <random>
#include <set>
#include <sstream>

#include "semifact/errors.hpp"
#include "semifact/matrix.hpp"
#include "semifact/verifier.hpp"

using namespace semifact;

namespace {

Rat q(long n, long d = 1) { return make_rat(n, d); }

Rat rpow(const Rat& r, long k) { return pow(r, static_cast<unsigned long>(k)); }

// Collects the reasons a criterion failed.
struct Check {
    std::vector<std::string> problems;
    void expect(bool ok, const std::string& what) {
        if (!ok && problems.size() < 5) problems.push_back(what);
    }
};

// Canonical-digit members sum c_i r^i, c_0 <= c0_max, c_i < d(r) for 1 <= i <= top.
void digit_members(const Rat& r, long top, long c0_max, const Rat& below,
                   const std::function<void(const Rat&, const std::vector<long>&)>& f) {
    const long d = r.den().get_si();
    std::vector<long> c(static_cast<size_t>(top) + 1, 0);
    std::vector<Rat> pw;
    for (long k = 0; k <= top; ++k) pw.push_back(rpow(r, k));
    std::function<void(size_t, const Rat&)> rec = [&](size_t i, const Rat& acc) {
        if (!below.is_zero() && acc >= below) return;
        if (i == c.size()) {
            f(acc, c);
            return;
        }
        const long hi = i == 0 ? c0_max : d - 1;
        for (long v = 0; v <= hi; ++v) {
            c[i] = v;
            rec(i + 1, acc + Rat(v) * pw[i]);
        }
        c[i] = 0;
    };
    rec(0, Rat(0));
}

// 1. Additive atoms of S_{2/3} among canonical-digit members are exactly the powers.
void atom_census(Check& c) {
    const Rat r = q(2, 3);
    const Semialgebra S = Semialgebra::cyclic(r);
    std::set<Rat> powers;
    for (long k = 0; k <= 10; ++k) powers.insert(rpow(r, k));
    // Members are X / 3^10 with X = sum c_i 2^i 3^(10-i), c_0 <= 2, c_i < 3.
    std::vector<long> weights;
    long den = 1;
    for (long i = 0; i < 10; ++i) den *= 3;
    for (long i = 0, w = den; i <= 10; ++i, w = w / 3 * 2) weights.push_back(w);
    long hits = 0;
    std::vector<long> digits(11, 0);
    while (true) {
        long X = 0;
        for (size_t i = 0; i < digits.size(); ++i) X += digits[i] * weights[i];
        if (X != 0) {
            Rat x = q(X, den);
            bool atom = is_add_atom(S, Element(x));
            hits += atom;
            c.expect(atom == static_cast<bool>(powers.count(x)), "atom predicate wrong at " + x.str());
        }
        size_t i = 0;
        while (i < digits.size() && digits[i] == 2) digits[i++] = 0;
        if (i == digits.size()) break;
        ++digits[i];
    }
    c.expect(hits == 11, "expected 11 atoms, saw " + std::to_string(hits));
}

// 2. Digits reconstruct the element and no other digit vector does.
void canonical_digits_unique(Check& c) {
    const Rat r = q(2, 3);
    const Semialgebra S = Semialgebra::cyclic(r);
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<long> c0(0, 6), ci(0, 2);
    std::vector<Rat> pw;
    for (long k = 0; k <= 8; ++k) pw.push_back(rpow(r, k));
    for (int t = 0; t < 200; ++t) {
        std::vector<long> digits(9);
        Rat x;
        for (size_t i = 0; i < 9; ++i) {
            digits[i] = i == 0 ? c0(rng) : ci(rng);
            x += Rat(digits[i]) * pw[i];
        }
        while (digits.size() > 1 && digits.back() == 0) digits.pop_back();
        auto got = canonical_digits(S, x);
        Rat back;
        for (size_t i = 0; i < got.size(); ++i) back += Rat(got[i]) * pw[i];
        c.expect(back == x, "digits do not reconstruct " + x.str());
        std::vector<long> as_long;
        for (const Int& g : got) as_long.push_back(g.get_si());
        c.expect(as_long == digits, "digits differ from construction at " + x.str());
        // Brute force over c_1..c_8 in {0,1,2}; c_0 is whatever remains.
        long reps = 0;
        std::vector<long> v(9, 0);
        std::function<void(size_t, const Rat&)> rec = [&](size_t i, const Rat& acc) {
            if (acc > x) return;
            if (i == 9) {
                reps += (x - acc).is_integer();
                return;
            }
            for (long d = 0; d <= 2; ++d) rec(i + 1, acc + Rat(d) * pw[i]);
        };
        rec(1, Rat(0));
        c.expect(reps == 1, "digit representation of " + x.str() + " not unique");
    }
}

// 3. Units: 1/2 is a unit of S_{1/2}; the other samples have only the trivial unit.
void reducedness(Check& c) {
    c.expect(is_mult_unit(Semialgebra::cyclic(q(1, 2)), Element(q(1, 2))), "1/2 should be a unit of S_{1/2}");
    for (const Rat& r : {q(2, 3), q(3, 2), q(5, 4)}) {
        const Semialgebra S = Semialgebra::cyclic(r);
        long seen = 0;
        digit_members(r, 8, 3, Rat(4), [&](const Rat& x, const std::vector<long>&) {
            if (x.is_zero() || x.is_one()) return;
            ++seen;
            bool unit = is_mult_unit(S, Element(x));
            c.expect(!unit, "unexpected unit " + x.str() + " in " + S.str());
            c.expect(!contains(S, Element(Rat(1) / x)), "inverse of " + x.str() + " is a member of " + S.str());
        });
        c.expect(seen >= 5, "too few members sampled in " + S.str());
    }
}

// 4. Q_2 atom predicates against the closed form and a divisor scan.
void conducted_atoms(Check& c) {
    const Semialgebra S = Semialgebra::conducted(q(2));
    for (long d = 1; d <= 12; ++d)
        for (long n = 1; n <= 5 * d; ++n) {
            Rat x = q(n, d);
            if (x.den() != d || !contains(S, Element(x))) continue;
            bool closed = x == 1 || (x > 2 && x < 3);
            c.expect(is_add_atom(S, Element(x)) == closed, "additive atom mismatch at " + x.str());
            // x is reducible iff x = y z with y, z non-units; scan y over a fine grid.
            bool reducible = false;
            for (long e = 1; e <= 24 && !reducible; ++e)
                for (long m = 1; m <= 5 * e && !reducible; ++m) {
                    Rat y = q(m, e);
                    if (y.is_one() || !contains(S, Element(y))) continue;
                    Rat z = x / y;
                    reducible = !z.is_one() && contains(S, Element(z));
                }
            bool oracle = !x.is_one() && !reducible;
            c.expect(is_mult_atom(S, Element(x)) == oracle, "multiplicative atom mismatch at " + x.str());
        }
    for (const Rat& a : {q(2), q(3), q(7, 2)}) c.expect(is_mult_atom(S, Element(a)), a.str() + " should be an atom");
    for (const Rat& a : {q(4), q(9, 2)}) c.expect(!is_mult_atom(S, Element(a)), a.str() + " should not be an atom");
}

// 5. Growing families of length-2 factorizations of 9/2 in Q_2.
void conducted_not_ffm(Check& c) {
    const Semialgebra S = Semialgebra::conducted(q(2));
    long previous = -1;
    for (long D : {6, 10, 20}) {
        Bounds b;
        b.max_den = D;
        auto e = add_factorizations(S, Element(q(9, 2)), b);
        c.expect(!e.complete, "complete=true at max_den " + std::to_string(D));
        std::set<Rat> smaller;
        for (const auto& f : e.items) {
            if (f.length() != 2) continue;
            auto v = f.expanded();
            Rat lo = std::min(v[0].rat(), v[1].rat()), hi = std::max(v[0].rat(), v[1].rat());
            c.expect(lo > 2 && lo + hi == q(9, 2), "bad length-2 item " + lo.str() + "+" + hi.str());
            smaller.insert(lo);
        }
        for (long n = 3; n <= D; ++n) {
            Rat t = q(1, n);
            if (t >= q(1, 4)) continue;  // 2 + t is then the larger summand
            c.expect(smaller.count(q(2) + t), "missing (2+1/" + std::to_string(n) + ")+(5/2-1/" + std::to_string(n) +
                                                  ") at max_den " + std::to_string(D));
        }
        long count = static_cast<long>(smaller.size());
        c.expect(count > previous, "length-2 count did not grow at max_den " + std::to_string(D));
        previous = count;
    }
}

// 6. Ascending chain of principal ideals in S_{2/3}; none in the ACCP samples.
void accp(Check& c) {
    const Rat r = q(2, 3);
    auto ch = accp_probe(Semialgebra::cyclic(r), Mode::Additive, Element(q(2)), 8);
    c.expect(ch.found && ch.chain.size() == 8, "no depth-8 chain in S_{2/3}");
    for (size_t k = 0; k < ch.chain.size(); ++k) {
        c.expect(ch.chain[k].rat() == Rat(2) * rpow(r, static_cast<long>(k)), "chain element " + std::to_string(k));
        Rat rk = rpow(r, static_cast<long>(k));
        c.expect(Rat(2) * rk == rk * r + Rat(2) * rk * r, "identity fails at k=" + std::to_string(k));
        if (k + 1 < ch.chain.size())
            c.expect(ch.chain[k + 1] + ch.cofactors[k] == ch.chain[k] && !ch.cofactors[k].is_zero(),
                     "step " + std::to_string(k) + " is not proper");
    }
    for (const Semialgebra& S : {Semialgebra::nat(), Semialgebra::cyclic(q(3, 2)), Semialgebra::conducted(q(2))})
        for (const Rat& x : {q(2), q(5)})
            c.expect(!accp_probe(S, Mode::Additive, Element(x), 8).found, "chain found in " + S.str() + " from " + x.str());
}

// 7. Matrix atoms against exhaustive decomposition.
void matrix_atoms(Check& c) {
    for (auto [n, bound] : {std::pair<size_t, long>{2, 5}, {3, 2}}) {
        CheckReport r = check_atom_characterization(n, bound);
        c.expect(r.status == Status::Pass && r.instances_tested > 0, r.check_name + " did not pass");
    }
}

// 8. Rigid length sets with a gap of m - 1.
void not_hfm(Check& c) {
    for (const Semialgebra& S : {Semialgebra::nat(), Semialgebra::conducted(q(2))})
        for (long m = 2; m <= 4; ++m) {
            auto h = hfm_counterexample(S, m);
            auto ls = rigid_length_set(h.A);
            std::string tag = S.str() + " m=" + std::to_string(m);
            c.expect(ls.complete, "incomplete enumeration for " + tag);
            bool gap = false;
            for (long a : ls.lengths) gap = gap || ls.lengths.count(a + m - 1);
            c.expect(gap, "no lengths differing by m-1 for " + tag);
            long w = weight(h.A);
            for (long l : ls.lengths) c.expect(l <= w, "length above weight for " + tag);
            c.expect(product(S, 2, h.long_form.factors) == h.A && product(S, 2, h.short_form.factors) == h.A,
                     "forms do not multiply out for " + tag);
        }
}

// 9. Almost prime-like failure in T_2(S_{2/3}) and no witness over the naturals.
void almost_prime_like(Check& c) {
    const Bounds b{.max_len = 3, .max_exp = 4, .max_count = 200};
    const Semialgebra S = Semialgebra::cyclic(q(2, 3));
    auto rep = almost_prime_like_probe(UTMatrix::parse(S, "1,2/3;0,1"), b);
    bool pair = false;
    for (const auto& w : rep.witnesses)
        pair = pair || (w.X == UTMatrix::parse(S, "2/3,0;0,1") && w.Y == UTMatrix::parse(S, "1,1;0,1"));
    c.expect(pair, "witness (diag(2/3,1), I+E12) not found");
    for (const char* a : {"1,1;0,1", "2,0;0,1"}) {
        auto r = almost_prime_like_probe(UTMatrix::parse(Semialgebra::nat(), a), b);
        c.expect(r.witnesses.empty(), std::string("witness found for ") + a);
    }
}

// 10. Sigma superadditivity on random pairs.
void sigma_superadditive(Check& c) {
    CheckReport r = check_sigma_superadditivity(500, 1);
    c.expect(r.status == Status::Pass && r.instances_tested == 500, "sigma check: " + status_name(r.status));
}

// 11. Formal exponentials: free addition, multiplicative lengths through prime parts.
void formal_exp(Check& c) {
    const Semialgebra S = Semialgebra::formal_exp();
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> num(0, 12), den(1, 6), coef(1, 3), terms(1, 3);
    for (int t = 0; t < 50; ++t) {
        ExpSum e;
        for (long k = terms(rng); k > 0; --k) {
            Rat qv = q(num(rng), den(rng));
            if (!mem_M(qv)) continue;
            e.terms[qv] += coef(rng);
        }
        if (e.is_zero()) continue;
        auto f = add_factorizations(S, Element(e));
        c.expect(f.complete && f.items.size() == 1, "additive factorization of " + e.str() + " not unique");
        if (!f.items.empty()) c.expect(f.items[0].value() == Element(e), "factorization value of " + e.str());
    }
    Bounds b;
    b.max_exp = 7;
    auto m = mult_factorizations(S, Element(ExpSum::term(Rat(1))), b);
    std::set<long> lengths;
    for (const auto& f : m.items) lengths.insert(f.length());
    for (long l : {2, 3, 5, 7}) c.expect(lengths.count(l), "missing length " + std::to_string(l));
    c.expect(!m.complete, "mult_factorizations(e^1) claimed complete");
}

// 12. The full verifier suite through the command line.
void verify_suite(Check& c) {
    FILE* p = popen(SEMIFACT_BIN " verify --suite all --seed 1", "r");
    if (!p) {
        c.expect(false, "could not start semifact");
        return;
    }
    std::string out;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, got);
    int status = pclose(p);
    c.expect(WIFEXITED(status) && WEXITSTATUS(status) == 0, "verify exited with " + std::to_string(status));
    std::istringstream lines(out);
    std::string line;
    long checks = 0;
    while (std::getline(lines, line)) {
        auto j = nlohmann::json::parse(line);
        ++checks;
        c.expect(j["status"] != "Fail", j["check_name"].get<std::string>() + " failed");
    }
    c.expect(checks > 0, "no reports");
}

struct Criterion {
    int id;
    const char* title;
    double budget_s;
    void (*run)(Check&);
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "additive atoms of S_{2/3} are the powers r^0..r^10", 1, atom_census},
        {2, "canonical digits reconstruct and are unique", 5, canonical_digits_unique},
        {3, "units: S_{1/2} has 1/2, S_{2/3}, S_{3/2}, S_{5/4} only 1", 2, reducedness},
        {4, "Q_2 additive and multiplicative atoms", 3, conducted_atoms},
        {5, "Q_2: length-2 factorizations of 9/2 keep growing", 3, conducted_not_ffm},
        {6, "ascending chain in S_{2/3}, none in N_0, S_{3/2}, Q_2", 2, accp},
        {7, "matrix atoms agree with exhaustive search", 30, matrix_atoms},
        {8, "rigid lengths differ by m-1 for m = 2, 3, 4", 5, not_hfm},
        {9, "almost prime-like probe", 5, almost_prime_like},
        {10, "sigma superadditivity", 5, sigma_superadditive},
        {11, "formal exponentials", 2, formal_exp},
        {12, "verify --suite all --seed 1 has no Fail", 60, verify_suite},
    };
    int failures = 0;
    for (const Criterion& cr : criteria) {
        Check c;
        auto t0 = std::chrono::steady_clock::now();
        try {
            cr.run(c);
        } catch (const std::exception& e) {
            c.problems.push_back(std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > cr.budget_s) c.problems.push_back("took longer than " + std::to_string(cr.budget_s) + " s");
        bool ok = c.problems.empty();
        failures += !ok;
        std::printf("%s %2d %s (%.2f s)\n", ok ? "PASS" : "FAIL", cr.id, cr.title, secs);
        for (const auto& p : c.problems) std::printf("       %s\n", p.c_str());
        std::fflush(stdout);
    }
    return failures;
}
