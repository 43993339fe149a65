// The category of flagged chain complexes at a fixed prime power q:
// canonical morphism keys (cone rulings), counting composition, the two
// tensor-product implementations, identities, dualities, cones and bending.
//
// A morphism X -> Y is stored on the basis of equivalence classes of triples
// (d_X, f, d_Y); the class of a triple is named by the Bruhat class of its
// cone, a full ruling of concat(shift(Y,-1), X). Equivalently a quintuple
// (ruling part on X, ruling part on Y, degree-preserving bijection between
// the unpaired remainders).

#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "flagtangle/flags.hpp"

namespace flagtangle {

struct NotQuasiIso : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MorphismKey {
    PartialRuling coneRuling;  // full ruling of concat(shift(dst,-1), src)

    bool operator==(const MorphismKey& o) const { return coneRuling == o.coneRuling; }
    bool operator!=(const MorphismKey& o) const { return !(*this == o); }
    bool operator<(const MorphismKey& o) const { return coneRuling < o.coneRuling; }
};

// quintuple view of a key
struct KeyParts {
    PartialRuling srcRuling;                     // (D1, δ1) on src
    PartialRuling dstRuling;                     // (D2, δ2) on dst
    std::vector<std::pair<int, int>> sigma;      // (src index, dst index), sorted by src index
};

KeyParts split_key(const MorphismKey& k, int dimSrc, int dimDst);
MorphismKey join_key(const KeyParts& parts, int dimSrc, int dimDst);

struct HTriple {
    FlaggedComplex src, dst;
    FqMatrix map;  // dim(dst) x dim(src), degree 0

    // degree-0, chain-map and quasi-isomorphism (acyclic cone) checks
    void validate() const;
};

struct HMorphism {
    GradedOrderedSet src, dst;
    long q = 2;
    std::map<MorphismKey, ExactRational> terms;

    HMorphism() = default;
    HMorphism(GradedOrderedSet s, GradedOrderedSet d, long q_) : src(std::move(s)), dst(std::move(d)), q(q_) {}

    void add_term(const MorphismKey& k, const ExactRational& c);
    bool is_zero() const { return terms.empty(); }
    HMorphism operator+(const HMorphism& o) const;
    HMorphism operator*(const ExactRational& c) const;
    bool operator==(const HMorphism& o) const {
        return src == o.src && dst == o.dst && q == o.q && terms == o.terms;
    }
    bool operator!=(const HMorphism& o) const { return !(*this == o); }
};

// ambient object of the cone: dst-shifted block first (bottom), then src
GradedOrderedSet cone_base(const GradedOrderedSet& src, const GradedOrderedSet& dst);
// cone complex of a triple, differential [[-d_dst, f],[0, d_src]]
FlaggedComplex cone(const HTriple& t);
// Bruhat class of the cone; throws NotQuasiIso if the reduction is not full
MorphismKey canonical_key(const HTriple& t);
HTriple key_to_representative(const MorphismKey& k, const GradedOrderedSet& src,
                              const GradedOrderedSet& dst, const FieldSpec& f);

// counting composition; middle automorphism sums collapse to aut_count
// whenever either representative map is the zero matrix
HMorphism compose(const HMorphism& g, const HMorphism& f);
HMorphism identity(const GradedOrderedSet& x, long q);

// monoidal product, direct route: sum over cocycle triples δ
HMorphism tensor_full(const HMorphism& a, const HMorphism& b);
// monoidal product, cohomological route: Ext prefactor, sum over Ext^1 cosets
HMorphism tensor_ext(const HMorphism& a, const HMorphism& b);

// dualities
HMorphism dual_D(const HMorphism& m);
GradedOrderedSet dual_object(const GradedOrderedSet& x);
HMorphism dual_vee(const HMorphism& m);

// β_W in Hom(W[-1]⊗W, ∅) and the bending isomorphism Hom(X,Y) ≅ Hom(Y[-1]⊗X, ∅)
HMorphism beta_morphism(const GradedOrderedSet& w, long q);
HMorphism bend_iso(const HMorphism& m);
HMorphism unbend_iso(const HMorphism& oneSided, const GradedOrderedSet& src,
                     const GradedOrderedSet& dst);

// ---- chain-complex utilities (shared by the tensor routes and tests) ----

// a plain chain complex with named graded basis and block differentials
struct GradedComplexView {
    GradedOrderedSet base;
    FqMatrix diff;
    // dimension of the degree-k component
    int component_dim(int k) const;
    int min_deg() const;
    int max_deg() const;
    // matrix of d restricted to degree k -> k+1 components
    FqMatrix component_diff(int k) const;
    int cohomology_dim(int k) const;
    // rank of d: C^{k} -> C^{k+1} (size of the coboundary space B^{k+1} is q^rank)
    int coboundary_rank(int k) const;
};

// Hom complex between two complexes: degree-k basis = entry positions
// (r in dst, c in src) with deg_dst(r) = deg_src(c) + k;
// differential φ ↦ d_dst∘φ − (−1)^k φ∘d_src.
struct HomComplex {
    const FlaggedComplex* src;
    const FlaggedComplex* dst;
    std::vector<std::pair<int, int>> basis(int k) const;  // (row in dst, col in src)
    FqMatrix differential(int k) const;                   // deg k -> deg k+1
    int cohomology_dim(int k) const;                      // Ext^k dimension
};

// Appendix-A dg-model of Hom between two one-arrow diagrams
// E = (X --S--> Y), F = (U --T--> V); degree-k component is
// Hom^k(X,U) ⊕ Hom^k(Y,V) ⊕ Hom^{k-1}(X,V).
struct A2HomComplex {
    const HTriple* from;  // E
    const HTriple* to;    // F

    struct Basis {
        std::vector<std::pair<int, int>> f1;  // X -> U entries
        std::vector<std::pair<int, int>> f2;  // Y -> V entries
        std::vector<std::pair<int, int>> g;   // X -> V entries (degree k-1)
        int total() const { return static_cast<int>(f1.size() + f2.size() + g.size()); }
    };
    Basis basis(int k) const;
    FqMatrix differential(int k) const;  // deg k -> deg k+1
    int cohomology_dim(int k) const;

    // cocycles in degree 1 (the δ-solution space), as coordinate vectors over basis(1)
    std::vector<std::vector<Fq>> cocycles_deg1() const;
    // coboundaries in degree 1, as coordinate vectors
    std::vector<std::vector<Fq>> coboundaries_deg1() const;
};

}  // namespace flagtangle
