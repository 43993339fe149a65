#include "flagtangle/ring.hpp"

#include <sstream>

namespace flagtangle {

namespace {
BigInt big_gcd(BigInt a, BigInt b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        BigInt t = a % b;
        a = b;
        b = t;
    }
    return a;
}
}  // namespace

ExactRational::ExactRational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) {
    if (den_ == 0) throw std::invalid_argument("ExactRational: zero denominator");
    reduce();
}

void ExactRational::reduce() {
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    if (num_ == 0) {
        den_ = 1;
        return;
    }
    BigInt g = big_gcd(num_, den_);
    num_ /= g;
    den_ /= g;
}

ExactRational ExactRational::operator+(const ExactRational& o) const {
    return ExactRational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}
ExactRational ExactRational::operator-(const ExactRational& o) const {
    return ExactRational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}
ExactRational ExactRational::operator*(const ExactRational& o) const {
    return ExactRational(num_ * o.num_, den_ * o.den_);
}
ExactRational ExactRational::operator/(const ExactRational& o) const {
    if (o.num_ == 0) throw std::domain_error("ExactRational: division by zero");
    return ExactRational(num_ * o.den_, den_ * o.num_);
}
ExactRational ExactRational::operator-() const { return ExactRational(-num_, den_); }

ExactRational ExactRational::int_pow(long q, long e) {
    BigInt p = 1;
    for (long i = 0; i < (e >= 0 ? e : -e); ++i) p *= q;
    return e >= 0 ? ExactRational(p) : ExactRational(BigInt(1), p);
}

std::string ExactRational::str() const {
    std::ostringstream os;
    os << num_;
    if (den_ != 1) os << "/" << den_;
    return os.str();
}

SkeinScalar::SkeinScalar(long c) {
    if (c != 0) coeffs_.push_back(BigInt(c));
}

SkeinScalar::SkeinScalar(std::vector<BigInt> coeffs, int lowExp, int denomPow)
    : coeffs_(std::move(coeffs)), lowExp_(lowExp), denomPow_(denomPow) {
    if (denomPow_ < 0) throw std::invalid_argument("SkeinScalar: negative denomPow");
    canonicalize();
}

void SkeinScalar::canonicalize() {
    size_t lo = 0, hi = coeffs_.size();
    while (lo < hi && coeffs_[lo] == 0) ++lo;
    while (hi > lo && coeffs_[hi - 1] == 0) --hi;
    if (lo > 0 || hi < coeffs_.size()) {
        coeffs_ = std::vector<BigInt>(coeffs_.begin() + lo, coeffs_.begin() + hi);
        lowExp_ += static_cast<int>(lo);
    }
    if (coeffs_.empty()) {
        lowExp_ = 0;
        denomPow_ = 0;
        return;
    }
    // strip common (q-1) factors against the denominator; p divisible by (q-1) iff p(1) = 0
    while (denomPow_ > 0) {
        BigInt at1 = 0;
        for (const auto& c : coeffs_) at1 += c;
        if (at1 != 0) break;
        // synthetic division by (q-1): if p = sum c_i q^i then (p/(q-1))_i = -(c_0+...+c_i)
        std::vector<BigInt> qout(coeffs_.size() - 1);
        BigInt acc = 0;
        for (size_t i = 0; i + 1 < coeffs_.size(); ++i) {
            acc += coeffs_[i];
            qout[i] = -acc;
        }
        coeffs_ = std::move(qout);
        --denomPow_;
    }
}

SkeinScalar SkeinScalar::q_pow(long e) { return monomial(BigInt(1), e); }

SkeinScalar SkeinScalar::monomial(BigInt c, long e) {
    if (c == 0) return SkeinScalar();
    SkeinScalar s;
    s.coeffs_ = {std::move(c)};
    s.lowExp_ = static_cast<int>(e);
    return s;
}

SkeinScalar SkeinScalar::q_minus_one_pow(long e) {
    if (e >= 0) {
        SkeinScalar r = one();
        SkeinScalar qm1({BigInt(-1), BigInt(1)}, 0, 0);
        for (long i = 0; i < e; ++i) r = r * qm1;
        return r;
    }
    SkeinScalar r;
    r.coeffs_ = {BigInt(1)};
    r.denomPow_ = static_cast<int>(-e);
    return r;
}

namespace {
// raw numerator scaling by (q-1)^e, e >= 0, without re-canonicalizing
std::vector<BigInt> scale_by_qm1(std::vector<BigInt> c, int e) {
    for (int t = 0; t < e; ++t) {
        std::vector<BigInt> out(c.size() + 1);
        for (size_t i = 0; i < c.size(); ++i) {
            out[i] -= c[i];
            out[i + 1] += c[i];
        }
        c = std::move(out);
    }
    return c;
}
}  // namespace

SkeinScalar SkeinScalar::operator+(const SkeinScalar& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    // bring both over (q-1)^k, k = max denomPow
    int k = std::max(denomPow_, o.denomPow_);
    std::vector<BigInt> ac = scale_by_qm1(coeffs_, k - denomPow_);
    std::vector<BigInt> bc = scale_by_qm1(o.coeffs_, k - o.denomPow_);
    int lo = std::min(lowExp_, o.lowExp_);
    int hi = std::max(lowExp_ + static_cast<int>(ac.size()),
                      o.lowExp_ + static_cast<int>(bc.size()));
    std::vector<BigInt> sum(hi - lo);
    for (size_t i = 0; i < ac.size(); ++i) sum[lowExp_ - lo + i] += ac[i];
    for (size_t i = 0; i < bc.size(); ++i) sum[o.lowExp_ - lo + i] += bc[i];
    return SkeinScalar(std::move(sum), lo, k);
}

SkeinScalar SkeinScalar::operator-() const {
    SkeinScalar r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

SkeinScalar SkeinScalar::operator-(const SkeinScalar& o) const { return *this + (-o); }

SkeinScalar SkeinScalar::operator*(const SkeinScalar& o) const {
    if (is_zero() || o.is_zero()) return SkeinScalar();
    std::vector<BigInt> prod(coeffs_.size() + o.coeffs_.size() - 1);
    for (size_t i = 0; i < coeffs_.size(); ++i)
        for (size_t j = 0; j < o.coeffs_.size(); ++j) prod[i + j] += coeffs_[i] * o.coeffs_[j];
    return SkeinScalar(std::move(prod), lowExp_ + o.lowExp_, denomPow_ + o.denomPow_);
}

ExactRational SkeinScalar::eval(long q0) const {
    if (q0 < 2) throw std::domain_error("skein_eval: q must be >= 2 ((q-1) invertible)");
    ExactRational num;
    for (size_t i = 0; i < coeffs_.size(); ++i)
        num += ExactRational(coeffs_[i]) * ExactRational::int_pow(q0, lowExp_ + static_cast<int>(i));
    ExactRational den = ExactRational::int_pow(q0 - 1, denomPow_);
    return num / den;
}

bool SkeinScalar::is_unit() const {
    if (is_zero()) return false;
    std::vector<BigInt> c = coeffs_;
    // peel off (q-1) factors from the numerator
    for (;;) {
        if (c.size() == 1) return c[0] == 1 || c[0] == -1;
        BigInt at1 = 0;
        for (const auto& x : c) at1 += x;
        if (at1 != 0) return false;
        std::vector<BigInt> qout(c.size() - 1);
        BigInt acc = 0;
        for (size_t i = 0; i + 1 < c.size(); ++i) {
            acc += c[i];
            qout[i] = -acc;
        }
        c = std::move(qout);
        while (!c.empty() && c.back() == 0) c.pop_back();
        size_t lo = 0;
        while (lo < c.size() && c[lo] == 0) ++lo;
        c.erase(c.begin(), c.begin() + lo);
        if (c.empty()) return false;
    }
}

std::string SkeinScalar::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        const BigInt& c = coeffs_[i];
        if (c == 0) continue;
        int e = lowExp_ + static_cast<int>(i);
        if (!first) os << (c > 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        BigInt a = c < 0 ? BigInt(-c) : c;
        if (a != 1 || e == 0) os << a;
        if (e != 0) {
            if (a != 1) os << "*";
            os << "q";
            if (e != 1) os << "^" << e;
        }
        first = false;
    }
    std::string s = os.str();
    if (denomPow_ > 0) {
        std::string den = denomPow_ == 1 ? "(q-1)" : "(q-1)^" + std::to_string(denomPow_);
        if (coeffs_.size() > 1) s = "(" + s + ")";
        s += "/" + den;
    }
    return s;
}

}  // namespace flagtangle
