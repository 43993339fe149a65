// Graded ordered sets, (partial) rulings, flagged chain complexes,
// Bruhat normal form of flag-decreasing differentials, automorphism counting.
//
// Conventions (fixed once, used everywhere):
//  - indices are 0-based internally, bottom-to-top flag order;
//  - flag-decreasing means strictly upper triangular: entry (r,c) != 0 => r < c;
//  - the differential has degree 1: entry (r,c) != 0 => deg(r) = deg(c) + 1;
//  - a ruling pair is written (opener, closer) with opener < closer and
//    deg(opener) = deg(closer) + 1.

#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "flagtangle/gfq.hpp"
#include "flagtangle/ring.hpp"

namespace flagtangle {

struct GradedOrderedSet {
    std::vector<int> degrees;

    GradedOrderedSet() = default;
    explicit GradedOrderedSet(std::vector<int> d) : degrees(std::move(d)) {}

    int size() const { return static_cast<int>(degrees.size()); }
    int deg(int i) const { return degrees[i]; }
    bool operator==(const GradedOrderedSet& o) const { return degrees == o.degrees; }
    bool operator!=(const GradedOrderedSet& o) const { return !(*this == o); }
    bool operator<(const GradedOrderedSet& o) const { return degrees < o.degrees; }
};

// shift subtracts k from every degree: shift(x,k)[i] = deg(i) - k
GradedOrderedSet shift(const GradedOrderedSet& x, int k);
// concat appends y after x; x is the bottom block
GradedOrderedSet concat(const GradedOrderedSet& x, const GradedOrderedSet& y);

struct PartialRuling {
    // pairs (opener, closer), opener < closer, sorted by closer
    std::vector<std::pair<int, int>> pairs;

    PartialRuling() = default;
    explicit PartialRuling(std::vector<std::pair<int, int>> p);

    int count() const { return static_cast<int>(pairs.size()); }
    bool is_full(int n) const { return 2 * count() == n; }
    bool valid_on(const GradedOrderedSet& x) const;
    // partner[i] = j if (i,j) or (j,i) is a pair, else -1
    std::vector<int> partners(int n) const;
    // indices not in D ∪ δ(D)
    std::vector<int> unpaired(int n) const;
    bool pairs_contains(int opener, int closer) const;

    bool operator==(const PartialRuling& o) const { return pairs == o.pairs; }
    bool operator!=(const PartialRuling& o) const { return !(*this == o); }
    bool operator<(const PartialRuling& o) const { return pairs < o.pairs; }
};

struct FlaggedComplex {
    GradedOrderedSet base;
    FqMatrix diff;  // n x n over base field

    FlaggedComplex() = default;
    FlaggedComplex(GradedOrderedSet b, FqMatrix d) : base(std::move(b)), diff(std::move(d)) {}
    int dim() const { return base.size(); }
    // checks flag-decreasing, degree 1, and diff^2 = 0; throws on violation
    void validate() const;
};

// all partial rulings of x, deterministic order (DFS over closers)
std::vector<PartialRuling> enumerate_partial_rulings(const GradedOrderedSet& x);
// full rulings only
std::vector<PartialRuling> enumerate_rulings(const GradedOrderedSet& x);

// normal-form differential d(D,δ): entry 1 at (δ(i), i) for each pair
FlaggedComplex ruling_differential(const GradedOrderedSet& x, const PartialRuling& r,
                                   const FieldSpec& f);

// the partial ruling naming the conjugation class of a flag-decreasing
// differential; persistence-style left-to-right column reduction
PartialRuling bruhat_reduce(const FqMatrix& diff);
PartialRuling bruhat_reduce(const FlaggedComplex& c);

// the two counting statistics behind automorphism counts and the β-tangle
// weight exponents: m = #{i<j, deg i = deg j},
// s(D,δ) = #{(i,j) : deg i = deg j+1, (j in D and δ(j) > i) or (i in δ(D) and δ^{-1}(i) < j)}
int m_statistic(const GradedOrderedSet& x);
int s_statistic(const GradedOrderedSet& x, const PartialRuling& r);

// |Aut(V, d(D,δ))| = (q-1)^{n-r} q^{m-s}, symbolically in q
SkeinScalar aut_count(const GradedOrderedSet& x, const PartialRuling& r);
BigInt aut_count_at(const GradedOrderedSet& x, const PartialRuling& r, long q);
// orbit size of the class under flag/grading-preserving conjugation: (q-1)^r q^s
BigInt orbit_size_at(const GradedOrderedSet& x, const PartialRuling& r, long q);

// all invertible flag/grading-preserving matrices commuting with d(D,δ);
// parametrized by the free entries of the centralizer relations
std::vector<FqMatrix> enumerate_aut(const GradedOrderedSet& x, const PartialRuling& r,
                                    const FieldSpec& f);

// dim of degree-k homogeneous maps src -> dst: #{(r,c): deg_dst(r) = deg_src(c) + k}
int hom_dim(const GradedOrderedSet& src, const GradedOrderedSet& dst, int k);
// flag-lowering ones on x: #{(r,c): r < c, deg(r) = deg(c) + k}
int hom_dim_strict(const GradedOrderedSet& x, int k);

// all flag-decreasing degree-1 square-zero matrices on x (brute force; small n)
std::vector<FqMatrix> enumerate_differentials(const GradedOrderedSet& x, const FieldSpec& f);

// all invertible upper-triangular grading-preserving matrices on x (brute force; small n)
std::vector<FqMatrix> enumerate_flag_automorphisms(const GradedOrderedSet& x, const FieldSpec& f);

}  // namespace flagtangle
