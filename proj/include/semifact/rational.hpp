#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace semifact {

using Int = mpz_class;

/// Exact nonnegative rational, always in lowest terms.
class Rat {
public:
    Rat() = default;
    Rat(long v);
    Rat(int v) : Rat(static_cast<long>(v)) {}
    explicit Rat(const Int& v);

    /// Canonical n/d; throws DomainError when d = 0 or the value is negative.
    static Rat make(const Int& n, const Int& d);

    Int num() const { return q_.get_num(); }
    Int den() const { return q_.get_den(); }
    const mpq_class& raw() const { return q_; }

    bool is_zero() const { return sgn(q_) == 0; }
    bool is_one() const { return q_ == 1; }
    bool is_integer() const { return q_.get_den() == 1; }
    Int floor() const;
    Int ceil() const;

    Rat& operator+=(const Rat& o);
    Rat& operator*=(const Rat& o);
    // Throws DomainError if the difference would be negative.
    Rat& operator-=(const Rat& o);
    // Throws DomainError on division by zero.
    Rat& operator/=(const Rat& o);

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
        int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
                     : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }

    /// "n/d", or "n" when d = 1.
    std::string str() const;
    static Rat parse(std::string_view s);

private:
    explicit Rat(mpq_class q) : q_(std::move(q)) {}
    mpq_class q_{0};

    friend std::optional<Rat> try_sub(const Rat&, const Rat&);
};

Rat make_rat(const Int& n, const Int& d);

/// (n(q), d(q)); q must be positive.
std::pair<Int, Int> num_den(const Rat& q);

/// Primes dividing n(q) or d(q); q must be positive.
std::set<Int> support(const Rat& q);

/// a - b when it is nonnegative.
std::optional<Rat> try_sub(const Rat& a, const Rat& b);

Rat pow(const Rat& q, unsigned long e);

// Integer helpers shared by the engines.
bool is_prime(const Int& n);
std::set<Int> prime_factors(Int n);
std::vector<Int> divisors(const Int& n);
std::vector<Int> primes_upto(unsigned long n);

}  // namespace semifact
