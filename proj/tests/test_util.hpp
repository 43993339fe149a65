// shared random generators for category-level tests
#pragma once

#include <optional>
#include <random>

#include "flagtangle/hcat.hpp"

namespace flagtangle::testutil {

inline GradedOrderedSet random_gos(std::mt19937& rng, int maxSize, int degLo = -1, int degHi = 1,
                                   int minSize = 0) {
    int n = std::uniform_int_distribution<int>(minSize, maxSize)(rng);
    std::vector<int> d(n);
    for (int& x : d) x = std::uniform_int_distribution<int>(degLo, degHi)(rng);
    return GradedOrderedSet(d);
}

// a random single-key morphism src -> dst, when Hom is nonzero
inline std::optional<HMorphism> random_key_morphism(std::mt19937& rng, const GradedOrderedSet& src,
                                                    const GradedOrderedSet& dst, long q) {
    auto rulings = enumerate_rulings(cone_base(src, dst));
    if (rulings.empty()) return std::nullopt;
    HMorphism m(src, dst, q);
    const auto& r = rulings[std::uniform_int_distribution<size_t>(0, rulings.size() - 1)(rng)];
    int num = std::uniform_int_distribution<int>(-3, 3)(rng);
    if (num == 0) num = 1;
    m.add_term(MorphismKey{r}, ExactRational(BigInt(num), BigInt(1 + std::uniform_int_distribution<int>(0, 2)(rng))));
    return m;
}

// a composable / tensorable morphism with nonempty Hom, retrying over random objects
inline HMorphism random_morphism_between(std::mt19937& rng, const GradedOrderedSet& src,
                                         const GradedOrderedSet& dst, long q) {
    auto m = random_key_morphism(rng, src, dst, q);
    if (!m) throw std::runtime_error("random_morphism_between: empty Hom");
    return *m;
}

// pick (src, dst) with nonzero Hom at the given sizes
inline std::pair<GradedOrderedSet, GradedOrderedSet> random_hom_pair(std::mt19937& rng, int maxSize,
                                                                     int degLo = -1, int degHi = 1) {
    for (;;) {
        GradedOrderedSet s = random_gos(rng, maxSize, degLo, degHi);
        GradedOrderedSet d = random_gos(rng, maxSize, degLo, degHi);
        if (!enumerate_rulings(cone_base(s, d)).empty()) return {s, d};
    }
}

}  // namespace flagtangle::testutil
