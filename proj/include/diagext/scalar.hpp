#ifndef DIAGEXT_SCALAR_HPP
#define DIAGEXT_SCALAR_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "diagext/errors.hpp"

namespace diagext {

class Field;

/* Exact field element: a reduced rational over Q, or a residue in [0,p)
 * over GF(p). Arithmetic goes through the owning Field. */
class Scalar {
public:
    Scalar() : v_(0) {}

    bool is_zero() const { return v_ == 0; }
    bool operator==(const Scalar& o) const { return v_ == o.v_; }
    bool operator!=(const Scalar& o) const { return v_ != o.v_; }
    bool operator<(const Scalar& o) const { return v_ < o.v_; } // container order only

    const mpq_class& raw() const { return v_; }
    std::string str() const { return v_.get_str(); }

private:
    explicit Scalar(mpq_class v) : v_(std::move(v)) {}
    mpq_class v_;
    friend class Field;
};

class Field {
public:
    static Field rationals() { return Field(0); }

    static Field prime(unsigned long p) {
        if (!is_prime(p))
            throw ParseError(ParseError::Kind::NonPrimeModulus,
                             "GF(" + std::to_string(p) + "): modulus is not prime");
        return Field(p);
    }

    bool is_rational() const { return p_ == 0; }
    unsigned long characteristic() const { return p_; }

    bool operator==(const Field& o) const { return p_ == o.p_; }
    bool operator!=(const Field& o) const { return p_ != o.p_; }

    Scalar zero() const { return Scalar(mpq_class(0)); }
    Scalar one() const { return Scalar(mpq_class(1)); }

    Scalar from_long(long n) const { return reduce(mpq_class(n)); }

    /* num/den with den nonzero (mod p: den invertible). */
    Scalar from_fraction(const mpz_class& num, const mpz_class& den) const {
        if (den == 0) throw Error("division by zero scalar");
        if (is_rational()) {
            mpq_class q(num, den);
            q.canonicalize();
            return Scalar(q);
        }
        return div(reduce(mpq_class(num)), reduce(mpq_class(den)));
    }

    Scalar add(const Scalar& a, const Scalar& b) const { return reduce(a.v_ + b.v_); }
    Scalar sub(const Scalar& a, const Scalar& b) const { return reduce(a.v_ - b.v_); }
    Scalar mul(const Scalar& a, const Scalar& b) const { return reduce(a.v_ * b.v_); }
    Scalar neg(const Scalar& a) const { return reduce(-a.v_); }

    Scalar inv(const Scalar& a) const {
        if (a.is_zero()) throw Error("inverse of zero");
        if (is_rational()) return Scalar(mpq_class(1) / a.v_);
        mpz_class r;
        mpz_class p(p_);
        if (mpz_invert(r.get_mpz_t(), a.v_.get_num().get_mpz_t(), p.get_mpz_t()) == 0)
            throw Error("noninvertible residue");
        return reduce(mpq_class(r));
    }

    Scalar div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }

    /* a^k for k >= 0 */
    Scalar pow(const Scalar& a, unsigned long k) const {
        Scalar r = one(), base = a;
        while (k) {
            if (k & 1) r = mul(r, base);
            base = mul(base, base);
            k >>= 1;
        }
        return r;
    }

    /* Multiplicative order of a nonzero element; 0 if no order <= cap. */
    unsigned long order(const Scalar& a, unsigned long cap = 10000) const {
        if (a.is_zero()) throw Error("order of zero");
        Scalar x = a;
        for (unsigned long k = 1; k <= cap; ++k) {
            if (x == one()) return k;
            x = mul(x, a);
        }
        return 0;
    }

    std::string describe() const {
        return is_rational() ? std::string("Q") : ("GF(" + std::to_string(p_) + ")");
    }

    static bool is_prime(unsigned long n) {
        if (n < 2) return false;
        for (unsigned long d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

private:
    explicit Field(unsigned long p) : p_(p) {}

    Scalar reduce(mpq_class v) const {
        if (is_rational()) {
            v.canonicalize();
            return Scalar(std::move(v));
        }
        v.canonicalize();
        mpz_class p(p_);
        mpz_class num = v.get_num(), den = v.get_den();
        mpz_class dm = den % p;
        if (dm < 0) dm += p;
        if (dm == 0) throw Error("denominator divisible by modulus");
        mpz_class dinv;
        mpz_invert(dinv.get_mpz_t(), dm.get_mpz_t(), p.get_mpz_t());
        mpz_class r = (num * dinv) % p;
        if (r < 0) r += p;
        return Scalar(mpq_class(r));
    }

    unsigned long p_; // 0 = rationals
};

} // namespace diagext

#endif
