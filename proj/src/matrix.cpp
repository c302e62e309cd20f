#include "semifact/matrix.hpp"

#include <algorithm>

#include "semifact/errors.hpp"

namespace semifact {

namespace {

void require_rational(const Semialgebra& S) {
    if (!S.rational()) throw Unsupported("matrix operations need a rational semialgebra, not " + S.str());
}

}  // namespace

UTMatrix::UTMatrix(const Semialgebra& S, size_t n) : S_(S), n_(n), e_(n * n) {
    require_rational(S);
    if (n == 0) throw DomainError("matrix dimension must be at least 1");
}

UTMatrix UTMatrix::identity(const Semialgebra& S, size_t n) {
    UTMatrix I(S, n);
    for (size_t i = 0; i < n; ++i) I.e_[i * n + i] = Rat(1);
    return I;
}

UTMatrix UTMatrix::parse(const Semialgebra& S, std::string_view text) {
    std::vector<std::vector<Rat>> rows;
    while (true) {
        auto semi = text.find(';');
        auto row = text.substr(0, semi);
        std::vector<Rat> vals;
        while (true) {
            auto comma = row.find(',');
            auto item = row.substr(0, comma);
            while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
            while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
            vals.push_back(Rat::parse(item));
            if (comma == std::string_view::npos) break;
            row = row.substr(comma + 1);
        }
        rows.push_back(std::move(vals));
        if (semi == std::string_view::npos) break;
        text = text.substr(semi + 1);
    }
    const size_t n = rows.size();
    UTMatrix M(S, n);
    for (size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n) throw ParseError("matrix rows must all have " + std::to_string(n) + " entries");
        for (size_t j = 0; j < n; ++j) {
            if (j < i) {
                if (!rows[i][j].is_zero()) throw DomainError("matrix is not upper triangular");
                continue;
            }
            M.set(i, j, rows[i][j]);
        }
    }
    return M;
}

void UTMatrix::set(size_t i, size_t j, const Rat& v) {
    if (i >= n_ || j >= n_ || j < i) throw DomainError("entry outside the upper triangle");
    if (!contains(S_, Element(v))) throw DomainError("entry " + v.str() + " is not in " + S_.str());
    e_[i * n_ + j] = v;
}

bool UTMatrix::is_identity() const {
    for (size_t i = 0; i < n_; ++i)
        for (size_t j = i; j < n_; ++j)
            if (at(i, j) != Rat(i == j ? 1 : 0)) return false;
    return true;
}

bool UTMatrix::is_unit_triangular() const {
    for (size_t i = 0; i < n_; ++i)
        if (!at(i, i).is_one()) return false;
    return true;
}

bool UTMatrix::is_diagonal() const {
    for (size_t i = 0; i < n_; ++i)
        for (size_t j = i + 1; j < n_; ++j)
            if (!at(i, j).is_zero()) return false;
    return true;
}

Rat UTMatrix::det() const {
    Rat d(1);
    for (size_t i = 0; i < n_; ++i) d *= at(i, i);
    return d;
}

std::string UTMatrix::str() const {
    std::string s;
    for (size_t i = 0; i < n_; ++i) {
        if (i) s += ';';
        for (size_t j = 0; j < n_; ++j) {
            if (j) s += ',';
            s += at(i, j).str();
        }
    }
    return s;
}

std::strong_ordering operator<=>(const UTMatrix& a, const UTMatrix& b) {
    if (a.n_ != b.n_) return a.n_ <=> b.n_;
    for (size_t k = 0; k < a.e_.size(); ++k)
        if (auto c = a.e_[k] <=> b.e_[k]; c != 0) return c;
    return std::strong_ordering::equal;
}

UTMatrix mat_mul(const UTMatrix& A, const UTMatrix& B) {
    if (A.n_ != B.n_) throw DomainError("dimension mismatch");
    if (!(A.S_ == B.S_)) throw DomainError("semialgebra mismatch");
    const size_t n = A.n_;
    UTMatrix C(A.S_, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i; j < n; ++j) {
            Rat s;
            for (size_t k = i; k <= j; ++k)
                if (!A.at(i, k).is_zero() && !B.at(k, j).is_zero()) s += A.at(i, k) * B.at(k, j);
            C.e_[i * n + j] = s;
        }
    return C;
}

bool is_regular(const UTMatrix& A) {
    for (size_t i = 0; i < A.n(); ++i)
        if (A.at(i, i).is_zero()) return false;
    return true;
}

std::optional<AtomShape> atom_shape(const UTMatrix& A) {
    std::optional<AtomShape> s;
    const size_t n = A.n();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i; j < n; ++j) {
            const Rat& v = A.at(i, j);
            bool off = i == j ? !v.is_one() : !v.is_zero();
            if (!off) continue;
            if (s) return std::nullopt;
            s = AtomShape{i == j ? AtomType::Multiplicative : AtomType::Additive, i, j, v};
        }
    return s;
}

UTMatrix atom_matrix(const Semialgebra& S, size_t n, const AtomShape& s) {
    UTMatrix M = UTMatrix::identity(S, n);
    M.set(s.i, s.j, s.a);
    return M;
}

bool is_matrix_atom(const UTMatrix& A, const Bounds& b) {
    if (!is_regular(A)) throw DomainError("matrix is not regular");
    const Semialgebra& S = A.semialgebra();
    if (!S.reduced()) throw DomainError(S.str() + " is not reduced");
    auto s = atom_shape(A);
    if (!s) return false;
    if (s->type == AtomType::Additive) return is_add_atom(S, Element(s->a));
    return is_mult_atom(S, Element(s->a), b);
}

long sigma(const UTMatrix& A, const Bounds& b) {
    long total = 0;
    for (size_t i = 0; i < A.n(); ++i)
        for (size_t j = i + 1; j < A.n(); ++j) {
            if (A.at(i, j).is_zero()) continue;
            auto ls = add_length_set(A.semialgebra(), Element(A.at(i, j)), b);
            if (!ls.complete || ls.lengths.empty())
                throw Inconclusive("length set of " + A.at(i, j).str() + " is not known within bounds");
            total += *ls.lengths.rbegin();
        }
    return total;
}

long weight(const UTMatrix& A, const Bounds& b) {
    long w = sigma(A, b);
    Rat d = A.det();
    if (d.is_one()) return w;
    auto ls = mult_length_set(A.semialgebra(), Element(d), b);
    if (!ls.complete || ls.lengths.empty())
        throw Inconclusive("multiplicative length set of " + d.str() + " is not known within bounds");
    return w + *ls.lengths.rbegin();
}

std::optional<UTMatrix> left_divide(const UTMatrix& A, const UTMatrix& B) {
    if (A.n() != B.n() || !(A.semialgebra() == B.semialgebra())) throw DomainError("shape mismatch");
    auto s = atom_shape(A);
    if (!s) throw DomainError("left_divide expects an atom-shaped divisor");
    const Semialgebra& S = B.semialgebra();
    const size_t n = B.n();
    UTMatrix C = B;
    if (s->type == AtomType::Additive) {
        for (size_t c = s->j; c < n; ++c) {
            auto v = try_sub(B.at(s->i, c), s->a * B.at(s->j, c));
            if (!v || !contains(S, Element(*v))) return std::nullopt;
            C.e_[s->i * n + c] = *v;
        }
    } else {
        if (s->a.is_zero()) return std::nullopt;
        for (size_t c = s->i; c < n; ++c) {
            Rat v = B.at(s->i, c) / s->a;
            if (!contains(S, Element(v))) return std::nullopt;
            C.e_[s->i * n + c] = v;
        }
    }
    if (!is_regular(C)) return std::nullopt;
    return C;
}

UTMatrix product(const Semialgebra& S, size_t n, const std::vector<UTMatrix>& factors) {
    UTMatrix P = UTMatrix::identity(S, n);
    for (const auto& F : factors) P = mat_mul(P, F);
    return P;
}

UTMatrix embed_additive(const Semialgebra& S, const Rat& s, size_t i, size_t j, size_t n) {
    if (i < 1 || j <= i || j > n) throw DomainError("need 1 <= i < j <= n");
    UTMatrix M = UTMatrix::identity(S, n);
    M.set(i - 1, j - 1, s);
    return M;
}

UTMatrix embed_multiplicative(const Semialgebra& S, const Rat& s, size_t i, size_t n) {
    if (i < 1 || i > n) throw DomainError("need 1 <= i <= n");
    if (s.is_zero()) throw DomainError("0 is excluded from multiplicative operations");
    UTMatrix M = UTMatrix::identity(S, n);
    M.set(i - 1, i - 1, s);
    return M;
}

}  // namespace semifact
