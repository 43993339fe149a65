// Exact scalar arithmetic for the two sides of the equivalence:
// SkeinScalar is an element of R = Z[q^{±1}, (q-1)^{-1}] in canonical form,
// ExactRational is an element of Q. skein_eval specializes R at a prime power.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>
#include <vector>

namespace flagtangle {

using BigInt = boost::multiprecision::cpp_int;

class ExactRational {
public:
    ExactRational() : num_(0), den_(1) {}
    ExactRational(long n) : num_(n), den_(1) {}
    ExactRational(BigInt n) : num_(std::move(n)), den_(1) {}
    ExactRational(BigInt n, BigInt d);

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }
    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }

    ExactRational operator+(const ExactRational& o) const;
    ExactRational operator-(const ExactRational& o) const;
    ExactRational operator*(const ExactRational& o) const;
    ExactRational operator/(const ExactRational& o) const;
    ExactRational operator-() const;
    ExactRational& operator+=(const ExactRational& o) { return *this = *this + o; }
    ExactRational& operator*=(const ExactRational& o) { return *this = *this * o; }
    bool operator==(const ExactRational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const ExactRational& o) const { return !(*this == o); }

    // q^e for any integer e
    static ExactRational int_pow(long q, long e);

    std::string str() const;

private:
    BigInt num_, den_;  // den_ > 0, gcd(|num_|, den_) = 1
    void reduce();
};

// Laurent polynomial in q over Z, divided by (q-1)^denomPow.
// Canonical form: coeffs empty iff zero (then lowExp = denomPow = 0);
// otherwise first and last coefficients are nonzero and the numerator is
// not divisible by (q-1) unless denomPow = 0.
class SkeinScalar {
public:
    SkeinScalar() = default;  // zero
    SkeinScalar(long c);
    SkeinScalar(std::vector<BigInt> coeffs, int lowExp, int denomPow);

    static SkeinScalar zero() { return SkeinScalar(); }
    static SkeinScalar one() { return SkeinScalar(1); }
    static SkeinScalar q_pow(long e);                 // q^e
    static SkeinScalar q_minus_one_pow(long e);       // (q-1)^e, e may be negative
    static SkeinScalar monomial(BigInt c, long e);    // c·q^e

    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<BigInt>& coeffs() const { return coeffs_; }
    int low_exp() const { return lowExp_; }
    int denom_pow() const { return denomPow_; }

    SkeinScalar operator+(const SkeinScalar& o) const;
    SkeinScalar operator-(const SkeinScalar& o) const;
    SkeinScalar operator*(const SkeinScalar& o) const;
    SkeinScalar operator-() const;
    SkeinScalar& operator+=(const SkeinScalar& o) { return *this = *this + o; }
    SkeinScalar& operator*=(const SkeinScalar& o) { return *this = *this * o; }
    bool operator==(const SkeinScalar& o) const {
        return coeffs_ == o.coeffs_ && lowExp_ == o.lowExp_ && denomPow_ == o.denomPow_;
    }
    bool operator!=(const SkeinScalar& o) const { return !(*this == o); }

    // Substitute q := q0 (prime power >= 2; q0 = 1 has no (q-1)^{-1}).
    ExactRational eval(long q0) const;

    // Unit test: of the form ±q^a (q-1)^b with b >= 0 (after clearing denomPow).
    bool is_unit() const;

    std::string str() const;

private:
    std::vector<BigInt> coeffs_;  // coeffs_[i] is the coefficient of q^{lowExp_+i}
    int lowExp_ = 0;
    int denomPow_ = 0;
    void canonicalize();
};

}  // namespace flagtangle
