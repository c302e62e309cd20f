#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "semifact/rational.hpp"

namespace semifact {

enum class Kind { Nat, Cyclic, Conducted, NonnegRationals, FormalExp };

/// One of the five supported semialgebras. r is the generator (Cyclic) or
/// conductor (Conducted) and is zero otherwise.
struct Semialgebra {
    Kind kind = Kind::Nat;
    Rat r;
    bool n_gt_1 = false;
    bool d_gt_1 = false;
    bool d_prime = false;

    static Semialgebra nat();
    static Semialgebra qnn();
    static Semialgebra formal_exp();
    static Semialgebra cyclic(const Rat& r);
    static Semialgebra conducted(const Rat& r);

    /// "nat", "qnn", "cyclic:N/D", "conducted:N/D", "exp".
    static Semialgebra parse(std::string_view s);
    std::string str() const;

    bool rational() const { return kind != Kind::FormalExp; }
    // No additive or multiplicative units besides 0 and 1.
    bool reduced() const;

    friend bool operator==(const Semialgebra& a, const Semialgebra& b) {
        return a.kind == b.kind && a.r == b.r;
    }
};

/// Finite sum of c * e^q. The map holds no zero coefficients.
struct ExpSum {
    std::map<Rat, Int> terms;

    static ExpSum term(const Rat& q, const Int& c = 1);
    bool is_zero() const { return terms.empty(); }
    std::string str() const;

    friend bool operator==(const ExpSum& a, const ExpSum& b) { return a.terms == b.terms; }
    friend std::strong_ordering operator<=>(const ExpSum& a, const ExpSum& b);
};

class Element {
public:
    Element() : v_(Rat(0)) {}
    Element(const Rat& q) : v_(q) {}
    Element(long q) : v_(Rat(q)) {}
    Element(int q) : v_(Rat(q)) {}
    Element(const ExpSum& e) : v_(e) {}

    bool is_rat() const { return std::holds_alternative<Rat>(v_); }
    const Rat& rat() const;
    const ExpSum& exp() const;
    bool is_zero() const;
    bool is_one() const;

    /// "n/d" or "e:{q1:c1,q2:c2}".
    std::string str() const;
    static Element parse(std::string_view s);

    friend Element operator+(const Element& a, const Element& b);
    friend Element operator*(const Element& a, const Element& b);
    friend bool operator==(const Element& a, const Element& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Element& a, const Element& b);

private:
    std::variant<Rat, ExpSum> v_;
};

enum class Mode { Additive, Multiplicative };

struct Bounds {
    long max_len = 12;
    long max_exp = 12;
    long max_den = 64;
    long max_count = 10000;
    long depth = 8;
};

/// Multiset of atoms, sorted ascending, as (atom, multiplicity).
struct Factorization {
    Mode mode = Mode::Additive;
    std::vector<std::pair<Element, long>> atoms;

    long length() const;
    std::vector<Element> expanded() const;
    Element value() const;
    friend bool operator==(const Factorization&, const Factorization&) = default;
};

/// Lexicographic comparison of the expanded sorted atom lists.
bool factorization_less(const Factorization& a, const Factorization& b);

template <class T>
struct Enumeration {
    std::vector<T> items;
    bool complete = true;
    Bounds bounds;
};

struct LengthSet {
    std::set<long> lengths;
    bool complete = true;
};

struct ChainReport {
    bool found = false;
    Mode mode = Mode::Additive;
    long depth = 0;
    std::vector<Element> chain;
    // cofactors[k] takes chain[k+1] to chain[k]
    std::vector<Element> cofactors;
    // a further proper step below the last reported element
    std::optional<Element> extends_to;
};

bool contains(const Semialgebra& S, const Element& x);
bool mem_M(const Rat& q);

bool is_add_atom(const Semialgebra& S, const Element& x);
bool is_mult_atom(const Semialgebra& S, const Element& x, const Bounds& b = {});
bool is_mult_unit(const Semialgebra& S, const Element& x);

/// Digits (c_0, ..., c_m) with c_i < d(r) for i >= 1 and x = sum c_i r^i.
std::vector<Int> canonical_digits(const Semialgebra& S, const Rat& x);

Enumeration<Factorization> add_factorizations(const Semialgebra& S, const Element& x, const Bounds& b = {});
LengthSet add_length_set(const Semialgebra& S, const Element& x, const Bounds& b = {});
Enumeration<Element> add_divisors(const Semialgebra& S, const Element& x, const Bounds& b = {});
Enumeration<Element> mult_divisors(const Semialgebra& S, const Element& x, const Bounds& b = {});
Enumeration<Factorization> mult_factorizations(const Semialgebra& S, const Element& x, const Bounds& b = {});
LengthSet mult_length_set(const Semialgebra& S, const Element& x, const Bounds& b = {});

ChainReport accp_probe(const Semialgebra& S, Mode mode, const Element& start, long depth, const Bounds& b = {});

/// Atoms of S within the bounds, ordered by denominator then numerator.
Enumeration<Element> list_atoms(const Semialgebra& S, Mode mode, const Bounds& b = {});

}  // namespace semifact
