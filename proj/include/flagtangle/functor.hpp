// The functor from the tangle category to the flagged-complex category at a
// fixed prime power q: images of elementary tangles and slices, word images,
// the ruling dictionary, and the verification suites (Hecke relations, flag
// operator oracle, ν-vs-Φ comparison, dualities, bend squares).

#pragma once

#include <string>

#include "flagtangle/hcat.hpp"
#include "flagtangle/tangle.hpp"

namespace flagtangle {

// Φ on objects: the combinatorial encodings already coincide
inline GradedOrderedSet phi_object(const GradedOrderedSet& x) { return x; }

// elementary images
HMorphism phi_lambda(int n, long q);      // birth cusp: Hom([n+1,n], [])
HMorphism phi_rho(int n, long q);         // death cusp: Hom([], [n+1,n])
HMorphism phi_sigma(int m, int n, long q);  // crossing: Hom([n,m], [m,n])

// the slice image 1_below ⊗ e ⊗ 1_above in canonical form, where `before` is
// the boundary on the left (target side) of the slice; the sums over ambient
// differentials collapse to conjugation classes with orbit coefficients
// (crossings additionally average over the local Bruhat cell)
HMorphism phi_slice(const Slice& s, const GradedOrderedSet& before, long q);
// the same morphism assembled as tensor_full(identity, tensor_full(e, identity));
// exponential in the ambient size, used to cross-check phi_slice
HMorphism phi_slice_assembled(const Slice& s, const GradedOrderedSet& before, long q);

// Φ of a word: fold of compose over slice images; words with an empty left
// boundary keep the accumulator one-sided, which collapses every middle
// automorphism sum in closed form
HMorphism phi_word(const TangleWord& w, long q);
// the generic two-sided fold (no one-sided shortcut), for cross-validation
HMorphism phi_word_general(const TangleWord& w, long q);

// the dictionary between rulings of x and keys of Hom(x, ∅)
inline MorphismKey ruling_to_key(const PartialRuling& r) { return MorphismKey{r}; }
inline PartialRuling key_to_ruling(const MorphismKey& k) { return k.coneRuling; }

// ν evaluated at q, transported along the dictionary
HMorphism nu_as_morphism(const SkeinVector& v, long q);

struct CheckReport {
    std::string check;
    int instances = 0;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

// Φ(w) versus the weighted ruling count, exact
CheckReport compare_nu_phi(const TangleWord& w, long q);
// Φ(bend(w)) versus bend_iso(Φ(w))
CheckReport bend_square(const TangleWord& w, long q);
// Φ ∘ D_v = D ∘ Φ and Φ ∘ D_h ∘ D_v = ∨ ∘ Φ
CheckReport duality_compat(const TangleWord& w, long q);

struct HeckeContext {
    int rank;                  // n: generators T_1..T_n on n+1 strands
    long q;
    GradedOrderedSet ambient;  // degree-0 object of size n+1
    std::vector<HMorphism> T;  // T[i] is the crossing image at position i+1
};
HeckeContext make_hecke(int rank, long q);

// braid, commutation and quadratic relations as exact morphism identities
CheckReport hecke_verify(int rank, long q);
// independent oracle: the same relations for the flag-modification operators
// on the free vector space over complete flags of F_q^{rank+1}
CheckReport flag_oracle_verify(int rank, long q);

}  // namespace flagtangle
