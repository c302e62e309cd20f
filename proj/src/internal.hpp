#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "semifact/semialgebra.hpp"

namespace semifact::detail {

inline constexpr long kUnbounded = std::numeric_limits<long>::max();

Int ipow(const Int& base, unsigned long e);

const Rat& as_rat(const Semialgebra& S, const Element& x);
ExpSum as_exp(const Element& x);

// Cyclic S_r with d(r) = 1 is just the naturals.
inline bool cyclic_integral(const Semialgebra& S) { return S.kind == Kind::Cyclic && !S.d_gt_1; }
// Semialgebras whose members are exactly the nonnegative integers.
inline bool natural_like(const Semialgebra& S) { return S.kind == Kind::Nat || cyclic_integral(S); }
// Cyclic with n(r) > 1 and d(r) > 1: the atomic cyclic case.
inline bool cyclic_proper(const Semialgebra& S) { return S.kind == Kind::Cyclic && S.n_gt_1 && S.d_gt_1; }
bool additively_antimatter(const Semialgebra& S);

// Least m with x * b^m integral, if any.
std::optional<unsigned long> cyclic_index(const Rat& x, const Int& b);
// Top-down digit reduction for r = a/b with b > 1; nullopt when x is not in S_r.
std::optional<std::vector<Int>> cyclic_digits(const Rat& r, const Rat& x);
Rat digits_value(const Rat& r, const std::vector<Int>& digits);

// Canonical members of S_r (d(r) > 1) with index <= max_index and value <= cap.
// With exact_index >= 0 only members of exactly that index are produced.
std::vector<Rat> cyclic_members(const Rat& r, long max_index, const Rat& cap, long exact_index = -1);

bool conducted_contains(const Rat& r, const Rat& x);
// Closed-form additive atom test for Q_r, r >= 1.
bool conducted_add_atom(const Rat& r, const Rat& x);
// Additive atoms of Q_r (r >= 1) with denominator <= max_den and value <= cap, ascending.
std::vector<Rat> conducted_add_atoms(const Rat& r, long max_den, const Rat& cap);
// Whether Q_r (r >= 1) has finitely many additive factorizations of x.
bool conducted_add_finite(const Rat& r, const Rat& x);

// Rationals p/q with q <= max_den in [lo, hi], ascending.
std::vector<Rat> rationals_between(const Rat& lo, const Rat& hi, long max_den);

struct Knapsack {
    std::vector<std::vector<Rat>> solutions;  // nondecreasing atoms
    bool len_cut = false;
    bool count_cut = false;
};

// All multisets over atoms (ascending, distinct) summing to x. When last_atom is
// given, the largest atom is instead pinned by the remainder and only has to pass it.
Knapsack knapsack(const std::vector<Rat>& atoms, const Rat& x, long max_len, long max_count,
                  const std::function<bool(const Rat&)>& last_atom = {});

struct DigitSolutions {
    std::vector<std::vector<Int>> counts;  // c_0 .. c_top
    bool len_cut = false;
    bool count_cut = false;
};

// All representations x = sum c_i r^i (0 <= i <= top) of total length <= max_len.
// Each c_i is pinned modulo d(r) by integrality of the remainder.
DigitSolutions cyclic_representations(const Rat& r, const Rat& x, long top, long max_len, long max_count);

Factorization to_factorization(Mode mode, const std::vector<Rat>& atoms);
void sort_factorizations(std::vector<Factorization>& fs);

}  // namespace semifact::detail
