#include <doctest.h>

#include <random>

#include "flagtangle/ring.hpp"

using namespace flagtangle;

namespace {
SkeinScalar random_scalar(std::mt19937& rng) {
    std::uniform_int_distribution<int> coef(-3, 3), exp(-2, 2), dp(0, 2);
    std::vector<BigInt> c;
    int len = std::uniform_int_distribution<int>(0, 3)(rng);
    for (int i = 0; i < len; ++i) c.push_back(BigInt(coef(rng)));
    return SkeinScalar(c, exp(rng), dp(rng));
}
}  // namespace

TEST_CASE("skein_add canonical forms") {
    SkeinScalar inv = SkeinScalar::q_minus_one_pow(-1);
    SkeinScalar two_inv = inv + inv;
    CHECK(two_inv == SkeinScalar(2) * inv);

    SkeinScalar x = random_scalar(*new std::mt19937(7));
    CHECK(x + SkeinScalar::zero() == x);

    // q + (-1) = (q-1); then dividing by (q-1) gives 1
    SkeinScalar qm1 = SkeinScalar::q_pow(1) + SkeinScalar(-1);
    CHECK(qm1 == SkeinScalar::q_minus_one_pow(1));
    CHECK(qm1 * SkeinScalar::q_minus_one_pow(-1) == SkeinScalar::one());
}

TEST_CASE("skein_mul examples") {
    CHECK(SkeinScalar::q_minus_one_pow(-1) * SkeinScalar::q_minus_one_pow(1) == SkeinScalar::one());
    CHECK(SkeinScalar::q_pow(-1) * SkeinScalar::q_pow(1) == SkeinScalar::one());
    // (1 - q^{-1}) * q = q - 1
    SkeinScalar lhs = (SkeinScalar::one() - SkeinScalar::q_pow(-1)) * SkeinScalar::q_pow(1);
    CHECK(lhs == SkeinScalar::q_minus_one_pow(1));
}

TEST_CASE("skein_eval examples") {
    CHECK(SkeinScalar::q_minus_one_pow(-1).eval(3) == ExactRational(BigInt(1), BigInt(2)));
    CHECK(SkeinScalar::q_pow(-1).eval(2) == ExactRational(BigInt(1), BigInt(2)));
    SkeinScalar s = SkeinScalar::q_minus_one_pow(1) * SkeinScalar::q_pow(2);
    CHECK(s.eval(2) == ExactRational(4));
    CHECK_THROWS(s.eval(1));
}

TEST_CASE("ring axioms and eval homomorphism on random triples") {
    std::mt19937 rng(42);
    for (int t = 0; t < 200; ++t) {
        SkeinScalar a = random_scalar(rng), b = random_scalar(rng), c = random_scalar(rng);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        for (long q0 : {2L, 3L, 4L, 5L}) {
            CHECK((a * b).eval(q0) == a.eval(q0) * b.eval(q0));
            CHECK((a + b).eval(q0) == a.eval(q0) + b.eval(q0));
        }
    }
}

TEST_CASE("canonicalization is idempotent") {
    std::mt19937 rng(11);
    for (int t = 0; t < 100; ++t) {
        SkeinScalar a = random_scalar(rng);
        SkeinScalar again(a.coeffs(), a.low_exp(), a.denom_pow());
        CHECK(a == again);
        if (!a.is_zero()) {
            CHECK(a.coeffs().front() != 0);
            CHECK(a.coeffs().back() != 0);
        } else {
            CHECK(a.denom_pow() == 0);
            CHECK(a.low_exp() == 0);
        }
    }
}

TEST_CASE("is_unit recognizes ±q^m (q-1)^n") {
    CHECK(SkeinScalar::q_pow(3).is_unit());
    CHECK((-(SkeinScalar::q_pow(-2) * SkeinScalar::q_minus_one_pow(2))).is_unit());
    CHECK(SkeinScalar::q_minus_one_pow(-2).is_unit());
    CHECK_FALSE((SkeinScalar::q_pow(1) + SkeinScalar::one()).is_unit());
    CHECK_FALSE(SkeinScalar::zero().is_unit());
    CHECK_FALSE(SkeinScalar(2).is_unit());
}

TEST_CASE("exact rationals") {
    ExactRational r(BigInt(6), BigInt(-4));
    CHECK(r.num() == -3);
    CHECK(r.den() == 2);
    CHECK(ExactRational(1) / ExactRational(3) + ExactRational(2) / ExactRational(3) == ExactRational(1));
    CHECK_THROWS(ExactRational(1) / ExactRational(0));
}
