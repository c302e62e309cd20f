#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "semifact/semialgebra.hpp"

namespace semifact {

/// Upper triangular n x n matrix over a rational semialgebra. Indices are 0-based.
class UTMatrix {
public:
    UTMatrix(const Semialgebra& S, size_t n);
    static UTMatrix identity(const Semialgebra& S, size_t n);
    /// Rows separated by ';', entries by ',', e.g. "1,3;0,2".
    static UTMatrix parse(const Semialgebra& S, std::string_view text);

    size_t n() const { return n_; }
    const Semialgebra& semialgebra() const { return S_; }
    const Rat& at(size_t i, size_t j) const { return e_[i * n_ + j]; }
    // Checks i <= j and membership of v.
    void set(size_t i, size_t j, const Rat& v);

    bool is_identity() const;
    bool is_unit_triangular() const;
    bool is_diagonal() const;
    Rat det() const;
    std::string str() const;

    friend bool operator==(const UTMatrix& a, const UTMatrix& b) { return a.n_ == b.n_ && a.e_ == b.e_; }
    friend std::strong_ordering operator<=>(const UTMatrix& a, const UTMatrix& b);

private:
    friend UTMatrix mat_mul(const UTMatrix&, const UTMatrix&);
    friend std::optional<UTMatrix> left_divide(const UTMatrix&, const UTMatrix&);
    Semialgebra S_;
    size_t n_;
    std::vector<Rat> e_;
};

UTMatrix mat_mul(const UTMatrix& A, const UTMatrix& B);
bool is_regular(const UTMatrix& A);

enum class AtomType { Additive, Multiplicative };

/// I + a E_ij (additive, i < j) or I + (a - 1) E_ii (multiplicative, i == j).
struct AtomShape {
    AtomType type;
    size_t i, j;
    Rat a;
};

/// The shape of A if it is the identity changed in exactly one place; says nothing about atomicity.
std::optional<AtomShape> atom_shape(const UTMatrix& A);
UTMatrix atom_matrix(const Semialgebra& S, size_t n, const AtomShape& s);

bool is_matrix_atom(const UTMatrix& A, const Bounds& b = {});

long sigma(const UTMatrix& A, const Bounds& b = {});
long weight(const UTMatrix& A, const Bounds& b = {});

/// C with B = A C when C has all entries in S and is regular.
std::optional<UTMatrix> left_divide(const UTMatrix& A, const UTMatrix& B);

struct CandidateSet {
    std::vector<UTMatrix> atoms;
    bool complete = true;
};

/// Atoms that may left-divide B: additive atoms before multiplicative, then
/// row-major position, then value.
CandidateSet atom_candidates(const UTMatrix& B, const Bounds& b = {});

struct RigidFactorization {
    std::vector<UTMatrix> factors;
    size_t length() const { return factors.size(); }
    friend bool operator==(const RigidFactorization&, const RigidFactorization&) = default;
};

UTMatrix product(const Semialgebra& S, size_t n, const std::vector<UTMatrix>& factors);

Enumeration<RigidFactorization> rigid_factorizations(const UTMatrix& B, const Bounds& b = {},
                                                     bool restrict_unit_triangular = false);
LengthSet rigid_length_set(const UTMatrix& B, const Bounds& b = {}, bool restrict_unit_triangular = false);

enum class Verdict { No, Yes, Inconclusive };
Verdict divides_up_to_permutation(const UTMatrix& A, const UTMatrix& B, const Bounds& b = {});

struct AplWitness {
    UTMatrix X, Y;
};

struct AplReport {
    std::vector<AplWitness> witnesses;
    long products_tested = 0;
    // some divisibility test along the way could not conclude
    bool inconclusive = false;
};

/// Searches products M = W A, A W, W1 A W2 over a pool of small atoms W and
/// every split of every rigid factorization of M into X Y with A dividing neither.
AplReport almost_prime_like_probe(const UTMatrix& A, const Bounds& b = {}, long pool = 3);

struct HfmCounterexample {
    UTMatrix A;
    RigidFactorization long_form;   // D-atoms, then U^m
    RigidFactorization short_form;  // U, then D-atoms
};

HfmCounterexample hfm_counterexample(const Semialgebra& S, long m, const Bounds& b = {});

/// 1-based positions, matching the usual E_ij notation.
UTMatrix embed_additive(const Semialgebra& S, const Rat& s, size_t i, size_t j, size_t n);
UTMatrix embed_multiplicative(const Semialgebra& S, const Rat& s, size_t i, size_t n);

}  // namespace semifact
