// Graded Legendrian tangle words: front projections as left-to-right slice
// sequences, grading propagation, the normal-ruling sweep with the weight
// table, the invariant ν, bending, β_Y, generator tangles and the two
// dualities of the tangle category.
//
// Conventions: positions are 1-based from the bottom; the source of a word is
// its right boundary and the target its left boundary (a word drawn left of
// another is composed after it). A birth cusp of degree n creates strands of
// degrees (n+1, n) bottom-to-top; a death cusp consumes strands graded the
// same way.

#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "flagtangle/flags.hpp"

namespace flagtangle {

struct GradingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class SliceKind { Birth, Death, Crossing };

struct Slice {
    SliceKind kind;
    int pos;         // 1-based from the bottom
    int degree = 0;  // birth cusps only: the degree parameter n

    static Slice birth(int degree, int pos) { return {SliceKind::Birth, pos, degree}; }
    static Slice death(int pos) { return {SliceKind::Death, pos, 0}; }
    static Slice crossing(int pos) { return {SliceKind::Crossing, pos, 0}; }
    bool operator==(const Slice& o) const {
        return kind == o.kind && pos == o.pos && (kind != SliceKind::Birth || degree == o.degree);
    }
};

struct TangleWord {
    GradedOrderedSet left;  // target boundary
    std::vector<Slice> slices;

    bool operator==(const TangleWord& o) const { return left == o.left && slices == o.slices; }
};

struct GradingResult {
    // boundaries[j] is the strand degree sequence after j slices; front() is the
    // left boundary, back() the right boundary
    std::vector<GradedOrderedSet> boundaries;
    const GradedOrderedSet& right() const { return boundaries.back(); }
};

// propagate degrees left to right; throws GradingError on a bad position or a
// death cusp whose strands are not graded (n+1, n)
GradingResult check_grading(const TangleWord& w);

// g drawn left of f: g.right must equal f.left
TangleWord compose_words(const TangleWord& g, const TangleWord& f);
// bottom occupies the lower strands; top's slices are shifted up past it
TangleWord stack_words(const TangleWord& top, const TangleWord& bottom);

// one entry per normal ruling of the word (weights from the cusp/crossing
// table); requires an empty left boundary
struct RulingTerm {
    PartialRuling boundary;  // induced ruling of the right boundary
    SkeinScalar weight;
};
std::vector<RulingTerm> enumerate_tangle_rulings(const TangleWord& w);

// ν: weighted ruling count grouped by boundary ruling
struct SkeinVector {
    GradedOrderedSet src;
    std::map<PartialRuling, SkeinScalar> terms;

    void add_term(const PartialRuling& r, const SkeinScalar& c);
    bool operator==(const SkeinVector& o) const { return src == o.src && terms == o.terms; }
    bool operator!=(const SkeinVector& o) const { return !(*this == o); }
};
SkeinVector nu(const TangleWord& w);

// β_Y: |Y| nested birth cusps and |Y|(|Y|-1)/2 crossings routing the k-th pair
// to positions k (lower block) and |Y|+k (upper block)
TangleWord beta_word(const GradedOrderedSet& y);

// the closed formula for ν(β_Y) over partial rulings of Y
SkeinVector beta_rulings_formula(const GradedOrderedSet& y);

// reattach the left boundary below the right one: β_Y ∘ (1_{Y[-1]} ⊗ w)
TangleWord bend(const TangleWord& w);

// the spanning family of one-sided words from single-cusp generator tangles,
// ordered by the recursion that also orders enumerate_rulings below
std::vector<TangleWord> generator_words(const GradedOrderedSet& x);
// full rulings of x in the matching recursive order
std::vector<PartialRuling> generator_ruling_order(const GradedOrderedSet& x);

// dualities: D_v flips on the vertical axis (reverses the word, swaps cusp
// kinds, keeps degrees); D_h flips on the horizontal axis (flips positions,
// negates degrees)
TangleWord dual_v(const TangleWord& w);
TangleWord dual_h(const TangleWord& w);

// Reidemeister / skein move instances as pairs of formal R-combinations
enum class MoveKind { R1, R2, R3, S1, S2, S3 };
struct MoveInstance {
    std::string name;
    std::vector<std::pair<SkeinScalar, TangleWord>> lhs, rhs;
};
std::vector<MoveInstance> move_instances(MoveKind kind, const std::vector<int>& degrees);

// the tangle-word text DSL
TangleWord parse_tangle(const std::string& text);
std::string format_word(const TangleWord& w);

}  // namespace flagtangle
