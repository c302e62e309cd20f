#include "semifact/rational.hpp"

#include <algorithm>
#include <cctype>

#include "semifact/errors.hpp"

namespace semifact {

Rat::Rat(long v) : q_(v) {
    if (v < 0) throw DomainError("negative rational");
}

Rat::Rat(const Int& v) : q_(v) {
    if (sgn(v) < 0) throw DomainError("negative rational");
}

Rat Rat::make(const Int& n, const Int& d) {
    if (d == 0) throw DomainError("zero denominator");
    mpq_class q(n, d);
    q.canonicalize();
    if (sgn(q) < 0) throw DomainError("negative rational");
    return Rat(std::move(q));
}

Int Rat::floor() const {
    Int r;
    mpz_fdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return r;
}

Int Rat::ceil() const {
    Int r;
    mpz_cdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return r;
}

Rat& Rat::operator+=(const Rat& o) {
    q_ += o.q_;
    return *this;
}

Rat& Rat::operator*=(const Rat& o) {
    q_ *= o.q_;
    return *this;
}

Rat& Rat::operator-=(const Rat& o) {
    if (o.q_ > q_) throw DomainError("negative difference");
    q_ -= o.q_;
    return *this;
}

Rat& Rat::operator/=(const Rat& o) {
    if (o.is_zero()) throw DomainError("division by zero");
    q_ /= o.q_;
    return *this;
}

std::string Rat::str() const {
    if (is_integer()) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

namespace {

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

}  // namespace

Rat Rat::parse(std::string_view s) {
    bool neg = false;
    if (!s.empty() && s.front() == '-') {
        neg = true;
        s.remove_prefix(1);
    }
    auto slash = s.find('/');
    std::string_view n = s.substr(0, slash);
    std::string_view d = slash == std::string_view::npos ? std::string_view("1") : s.substr(slash + 1);
    if (!all_digits(n) || !all_digits(d)) throw ParseError("not a rational: '" + std::string(s) + "'");
    Int num{std::string(n)}, den{std::string(d)};
    if (neg && num != 0) throw DomainError("negative rational");
    return make(num, den);
}

Rat make_rat(const Int& n, const Int& d) { return Rat::make(n, d); }

std::pair<Int, Int> num_den(const Rat& q) {
    if (q.is_zero()) throw DomainError("numerator/denominator undefined at 0");
    return {q.num(), q.den()};
}

std::set<Int> support(const Rat& q) {
    if (q.is_zero()) throw DomainError("support undefined at 0");
    auto s = prime_factors(q.num());
    s.merge(prime_factors(q.den()));
    return s;
}

std::optional<Rat> try_sub(const Rat& a, const Rat& b) {
    if (b.q_ > a.q_) return std::nullopt;
    return Rat(mpq_class(a.q_ - b.q_));
}

Rat pow(const Rat& q, unsigned long e) {
    Int n, d;
    mpz_pow_ui(n.get_mpz_t(), q.raw().get_num_mpz_t(), e);
    mpz_pow_ui(d.get_mpz_t(), q.raw().get_den_mpz_t(), e);
    return Rat::make(n, d);
}

bool is_prime(const Int& n) { return n >= 2 && mpz_probab_prime_p(n.get_mpz_t(), 30) > 0; }

namespace {

// Brent's variant of Pollard rho; n odd composite.
Int rho(const Int& n) {
    for (unsigned long c = 1;; ++c) {
        Int x = 2, y = 2, g = 1, q = 1, ys;
        auto f = [&](const Int& v) { Int t = v * v + c; return Int(t % n); };
        unsigned long r = 1;
        do {
            x = y;
            for (unsigned long i = 0; i < r; ++i) y = f(y);
            unsigned long k = 0;
            do {
                ys = y;
                for (unsigned long i = 0; i < std::min(128UL, r - k); ++i) {
                    y = f(y);
                    Int diff = x - y;
                    q = q * abs(diff) % n;
                }
                g = gcd(q, n);
                k += 128;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                Int diff = x - ys;
                g = gcd(Int(abs(diff)), n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void factor_into(Int n, std::set<Int>& out) {
    if (n < 2) return;
    if (is_prime(n)) {
        out.insert(n);
        return;
    }
    Int d = rho(n);
    factor_into(d, out);
    factor_into(Int(n / d), out);
}

}  // namespace

std::set<Int> prime_factors(Int n) {
    std::set<Int> out;
    if (n < 0) n = -n;
    for (unsigned long p = 2; p < 10000 && n > 1; ++p) {
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            out.insert(Int(p));
            while (mpz_divisible_ui_p(n.get_mpz_t(), p)) n /= p;
        }
        if (Int(p) * p > n) break;
    }
    factor_into(n, out);
    return out;
}

std::vector<Int> divisors(const Int& n) {
    std::vector<Int> ds{1};
    Int m = n;
    for (const Int& p : prime_factors(n)) {
        size_t base = ds.size();
        Int pk = 1;
        while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
            m /= p;
            pk *= p;
            for (size_t i = 0; i < base; ++i) ds.push_back(ds[i] * pk);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

std::vector<Int> primes_upto(unsigned long n) {
    std::vector<Int> ps;
    std::vector<bool> sieve(n + 1, true);
    for (unsigned long i = 2; i <= n; ++i) {
        if (!sieve[i]) continue;
        ps.emplace_back(i);
        for (unsigned long j = i * i; j <= n; j += i) sieve[j] = false;
    }
    return ps;
}

}  // namespace semifact
