// Exact linear algebra and exhaustive enumeration over small finite fields.
// Supported sizes q in {2,3,4,5,7,8,9}; prime-power fields use the fixed
// irreducible polynomials x^2+x+1 (F4), x^3+x+1 (F8), x^2+1 (F9).

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace flagtangle {

using Fq = uint8_t;  // field elements are 0..q-1 in the canonical order

class FieldSpec {
public:
    // cached registry; throws for unsupported sizes
    static const FieldSpec& get(int q);

    int q() const { return q_; }
    Fq add(Fq a, Fq b) const { return add_[a * q_ + b]; }
    Fq sub(Fq a, Fq b) const { return add_[a * q_ + neg_[b]]; }
    Fq mul(Fq a, Fq b) const { return mul_[a * q_ + b]; }
    Fq neg(Fq a) const { return neg_[a]; }
    Fq inv(Fq a) const;
    Fq div(Fq a, Fq b) const { return mul(a, inv(b)); }

private:
    explicit FieldSpec(int q);
    void check_axioms() const;
    int q_;
    std::vector<Fq> add_, mul_, neg_, inv_;
};

class FqMatrix {
public:
    FqMatrix() : rows_(0), cols_(0), field_(&FieldSpec::get(2)) {}
    FqMatrix(int rows, int cols, const FieldSpec& f)
        : rows_(rows), cols_(cols), field_(&f), e_(static_cast<size_t>(rows) * cols, 0) {}

    static FqMatrix identity(int n, const FieldSpec& f);
    // e_{ij}: single 1 in row i, column j (0-based)
    static FqMatrix unit(int rows, int cols, int i, int j, const FieldSpec& f);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const FieldSpec& field() const { return *field_; }
    Fq at(int r, int c) const { return e_[static_cast<size_t>(r) * cols_ + c]; }
    void set(int r, int c, Fq v) { e_[static_cast<size_t>(r) * cols_ + c] = v; }
    bool is_zero() const;

    FqMatrix operator*(const FqMatrix& o) const;
    FqMatrix operator+(const FqMatrix& o) const;
    FqMatrix operator-(const FqMatrix& o) const;
    FqMatrix scaled(Fq s) const;
    bool operator==(const FqMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
    }
    bool operator!=(const FqMatrix& o) const { return !(*this == o); }

    int rank() const;
    // inverse of a square invertible matrix; throws if singular
    FqMatrix inverse() const;

private:
    int rows_, cols_;
    const FieldSpec* field_;
    std::vector<Fq> e_;
};

// Affine solution set of a linear system A x = b over F_q:
// all solutions are particular + span(kernel basis); count = q^(kernel dim).
struct AffineSolution {
    std::vector<Fq> particular;
    std::vector<std::vector<Fq>> kernel;  // basis vectors
    int q = 2;

    size_t count() const;
    // enumerate all q^(dim kernel) assignments, lexicographic in kernel coordinates
    void enumerate(const std::function<void(const std::vector<Fq>&)>& visit) const;
};

// returns nullopt when the system is inconsistent
std::optional<AffineSolution> solve_affine(const FqMatrix& a, const std::vector<Fq>& b);

// nullspace basis of A (solve_affine with b = 0, kernel only)
std::vector<std::vector<Fq>> nullspace(const FqMatrix& a);

}  // namespace flagtangle
