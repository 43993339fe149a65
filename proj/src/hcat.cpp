#include "flagtangle/hcat.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <tuple>

namespace flagtangle {

namespace {

ExactRational q_exp(long q, long e) { return ExactRational::int_pow(q, e); }

ExactRational qm1_pow(long q, long e) { return ExactRational::int_pow(q - 1, e); }

int degree_span(const GradedOrderedSet& x) {
    int lo = 0, hi = 0;
    for (int d : x.degrees) {
        lo = std::min(lo, d);
        hi = std::max(hi, d);
    }
    return hi - lo;
}

// Π_{i>=1} |Hom^{-i}_{<0}(x,x)|^{(-1)^i} — the composition prefactor
ExactRational compose_prefactor(const GradedOrderedSet& x, long q) {
    long e = 0;
    for (int i = 1; i <= degree_span(x); ++i) e += (i % 2 == 1 ? -1 : 1) * hom_dim_strict(x, -i);
    return q_exp(q, e);
}

// Π_{i>=0} |Hom^{-i}_{<0}(x,x)|^{(-1)^{i+1}} — appears in h_id and β_W
ExactRational identity_homs_prefactor(const GradedOrderedSet& x, long q) {
    long e = 0;
    for (int i = 0; i <= degree_span(x); ++i) e += (i % 2 == 0 ? -1 : 1) * hom_dim_strict(x, -i);
    return q_exp(q, e);
}

const FieldSpec& field_of(long q) { return FieldSpec::get(static_cast<int>(q)); }

}  // namespace

KeyParts split_key(const MorphismKey& k, int dimSrc, int dimDst) {
    (void)dimSrc;
    KeyParts out;
    std::vector<std::pair<int, int>> sp, dp;
    for (const auto& [o, c] : k.coneRuling.pairs) {
        if (c < dimDst) {
            dp.emplace_back(o, c);
        } else if (o >= dimDst) {
            sp.emplace_back(o - dimDst, c - dimDst);
        } else {
            out.sigma.emplace_back(c - dimDst, o);  // src index -> dst index
        }
    }
    out.srcRuling = PartialRuling(std::move(sp));
    out.dstRuling = PartialRuling(std::move(dp));
    std::sort(out.sigma.begin(), out.sigma.end());
    return out;
}

MorphismKey join_key(const KeyParts& parts, int dimSrc, int dimDst) {
    (void)dimSrc;
    std::vector<std::pair<int, int>> pairs;
    for (const auto& [o, c] : parts.dstRuling.pairs) pairs.emplace_back(o, c);
    for (const auto& [o, c] : parts.srcRuling.pairs) pairs.emplace_back(o + dimDst, c + dimDst);
    for (const auto& [s, d] : parts.sigma) pairs.emplace_back(d, s + dimDst);
    return MorphismKey{PartialRuling(std::move(pairs))};
}

void HTriple::validate() const {
    src.validate();
    dst.validate();
    if (map.rows() != dst.dim() || map.cols() != src.dim())
        throw std::invalid_argument("HTriple: map shape mismatch");
    for (int r = 0; r < map.rows(); ++r)
        for (int c = 0; c < map.cols(); ++c)
            if (map.at(r, c) != 0 && dst.base.deg(r) != src.base.deg(c))
                throw std::invalid_argument("HTriple: map not degree 0");
    if (dst.diff * map != map * src.diff) throw std::invalid_argument("HTriple: not a chain map");
    canonical_key(*this);  // throws NotQuasiIso when the cone is not acyclic
}

void HMorphism::add_term(const MorphismKey& k, const ExactRational& c) {
    if (c.is_zero()) return;
    auto it = terms.find(k);
    if (it == terms.end()) {
        terms.emplace(k, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
}

HMorphism HMorphism::operator+(const HMorphism& o) const {
    if (src != o.src || dst != o.dst || q != o.q) throw std::invalid_argument("HMorphism+: type mismatch");
    HMorphism r = *this;
    for (const auto& [k, c] : o.terms) r.add_term(k, c);
    return r;
}

HMorphism HMorphism::operator*(const ExactRational& c) const {
    HMorphism r(src, dst, q);
    if (c.is_zero()) return r;
    for (const auto& [k, v] : terms) r.terms.emplace(k, v * c);
    return r;
}

GradedOrderedSet cone_base(const GradedOrderedSet& src, const GradedOrderedSet& dst) {
    return concat(shift(dst, -1), src);
}

FlaggedComplex cone(const HTriple& t) {
    int w = t.dst.dim(), u = t.src.dim();
    const FieldSpec& f = t.src.diff.field();
    FqMatrix d(w + u, w + u, f);
    for (int r = 0; r < w; ++r)
        for (int c = 0; c < w; ++c)
            if (t.dst.diff.at(r, c) != 0) d.set(r, c, f.neg(t.dst.diff.at(r, c)));
    for (int r = 0; r < w; ++r)
        for (int c = 0; c < u; ++c) d.set(r, w + c, t.map.at(r, c));
    for (int r = 0; r < u; ++r)
        for (int c = 0; c < u; ++c) d.set(w + r, w + c, t.src.diff.at(r, c));
    FlaggedComplex fc(cone_base(t.src.base, t.dst.base), std::move(d));
    return fc;
}

MorphismKey canonical_key(const HTriple& t) {
    PartialRuling r = bruhat_reduce(cone(t));
    if (!r.is_full(t.src.dim() + t.dst.dim()))
        throw NotQuasiIso("canonical_key: cone not acyclic (map is not a quasi-isomorphism)");
    return MorphismKey{std::move(r)};
}

HTriple key_to_representative(const MorphismKey& k, const GradedOrderedSet& src,
                              const GradedOrderedSet& dst, const FieldSpec& f) {
    KeyParts parts = split_key(k, src.size(), dst.size());
    HTriple t;
    t.src = ruling_differential(src, parts.srcRuling, f);
    t.dst = ruling_differential(dst, parts.dstRuling, f);
    t.map = FqMatrix(dst.size(), src.size(), f);
    for (const auto& [s, d] : parts.sigma) t.map.set(d, s, 1);
    return t;
}

namespace {
// aut enumerations are reused heavily inside compose; cache per (q, degrees, ruling)
const std::vector<FqMatrix>& cached_auts(const GradedOrderedSet& x, const PartialRuling& r, long q) {
    using Key = std::tuple<long, std::vector<int>, std::vector<std::pair<int, int>>>;
    static std::map<Key, std::vector<FqMatrix>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    Key key{q, x.degrees, r.pairs};
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(std::move(key), enumerate_aut(x, r, field_of(q))).first;
    return it->second;
}
}  // namespace

HMorphism compose(const HMorphism& g, const HMorphism& f) {
    if (f.dst != g.src) throw std::invalid_argument("compose: boundary mismatch");
    if (f.q != g.q) throw std::invalid_argument("compose: field mismatch");
    const long q = f.q;
    const FieldSpec& fld = field_of(q);
    const GradedOrderedSet &U = f.src, &V = f.dst, &W = g.dst;
    HMorphism out(U, W, q);
    ExactRational vpref = compose_prefactor(V, q);

    for (const auto& [kf, cf] : f.terms) {
        KeyParts fp = split_key(kf, U.size(), V.size());
        HTriple frep = key_to_representative(kf, U, V, fld);
        for (const auto& [kg, cg] : g.terms) {
            KeyParts gp = split_key(kg, V.size(), W.size());
            if (fp.dstRuling != gp.srcRuling) continue;  // middle classes must agree
            HTriple grep = key_to_representative(kg, V, W, fld);
            ExactRational base = cf * cg * vpref;
            HTriple comp;
            comp.src = frep.src;
            comp.dst = grep.dst;
            if (frep.map.is_zero() || grep.map.is_zero()) {
                // g·b·f is independent of b: the whole automorphism group at once
                comp.map = FqMatrix(W.size(), U.size(), fld);
                out.add_term(canonical_key(comp), base * ExactRational(aut_count_at(V, fp.dstRuling, q)));
            } else {
                for (const FqMatrix& b : cached_auts(V, fp.dstRuling, q)) {
                    comp.map = grep.map * b * frep.map;
                    out.add_term(canonical_key(comp), base);
                }
            }
        }
    }
    return out;
}

HMorphism identity(const GradedOrderedSet& x, long q) {
    const FieldSpec& fld = field_of(q);
    HMorphism out(x, x, q);
    ExactRational pref = qm1_pow(q, -x.size()) * identity_homs_prefactor(x, q);
    for (const PartialRuling& r : enumerate_partial_rulings(x)) {
        HTriple t;
        t.src = ruling_differential(x, r, fld);
        t.dst = t.src;
        t.map = FqMatrix::identity(x.size(), fld);
        out.add_term(canonical_key(t), pref * ExactRational(orbit_size_at(x, r, q)));
    }
    return out;
}

// ---- chain complex views ----

int GradedComplexView::component_dim(int k) const {
    int n = 0;
    for (int d : base.degrees)
        if (d == k) ++n;
    return n;
}

int GradedComplexView::min_deg() const {
    int lo = 0;
    for (int d : base.degrees) lo = std::min(lo, d);
    return lo;
}

int GradedComplexView::max_deg() const {
    int hi = 0;
    for (int d : base.degrees) hi = std::max(hi, d);
    return hi;
}

FqMatrix GradedComplexView::component_diff(int k) const {
    std::vector<int> rows, cols;
    for (int i = 0; i < base.size(); ++i) {
        if (base.deg(i) == k + 1) rows.push_back(i);
        if (base.deg(i) == k) cols.push_back(i);
    }
    FqMatrix m(static_cast<int>(rows.size()), static_cast<int>(cols.size()), diff.field());
    for (size_t r = 0; r < rows.size(); ++r)
        for (size_t c = 0; c < cols.size(); ++c)
            m.set(static_cast<int>(r), static_cast<int>(c), diff.at(rows[r], cols[c]));
    return m;
}

int GradedComplexView::coboundary_rank(int k) const { return component_diff(k).rank(); }

int GradedComplexView::cohomology_dim(int k) const {
    return component_dim(k) - component_diff(k).rank() - component_diff(k - 1).rank();
}

// ---- Hom complexes ----

std::vector<std::pair<int, int>> HomComplex::basis(int k) const {
    std::vector<std::pair<int, int>> out;
    for (int r = 0; r < dst->dim(); ++r)
        for (int c = 0; c < src->dim(); ++c)
            if (dst->base.deg(r) == src->base.deg(c) + k) out.emplace_back(r, c);
    return out;
}

FqMatrix HomComplex::differential(int k) const {
    const FieldSpec& f = src->diff.field();
    auto bk = basis(k), bk1 = basis(k + 1);
    std::map<std::pair<int, int>, int> idx;
    for (size_t i = 0; i < bk1.size(); ++i) idx[bk1[i]] = static_cast<int>(i);
    FqMatrix m(static_cast<int>(bk1.size()), static_cast<int>(bk.size()), f);
    Fq signk = (k % 2 == 0) ? 1 : f.neg(1);  // (-1)^k
    for (size_t j = 0; j < bk.size(); ++j) {
        auto [r, c] = bk[j];
        for (int r2 = 0; r2 < dst->dim(); ++r2) {
            Fq v = dst->diff.at(r2, r);
            if (v == 0) continue;
            int i = idx.at({r2, c});
            m.set(i, static_cast<int>(j), f.add(m.at(i, static_cast<int>(j)), v));
        }
        for (int c2 = 0; c2 < src->dim(); ++c2) {
            Fq v = src->diff.at(c, c2);
            if (v == 0) continue;
            int i = idx.at({r, c2});
            m.set(i, static_cast<int>(j), f.sub(m.at(i, static_cast<int>(j)), f.mul(signk, v)));
        }
    }
    return m;
}

int HomComplex::cohomology_dim(int k) const {
    int dk = static_cast<int>(basis(k).size());
    return dk - differential(k).rank() - differential(k - 1).rank();
}

// ---- Appendix-A dg-model for one-arrow diagrams ----

A2HomComplex::Basis A2HomComplex::basis(int k) const {
    Basis b;
    const auto &X = from->src, &Y = from->dst, &U = to->src, &V = to->dst;
    for (int r = 0; r < U.dim(); ++r)
        for (int c = 0; c < X.dim(); ++c)
            if (U.base.deg(r) == X.base.deg(c) + k) b.f1.emplace_back(r, c);
    for (int r = 0; r < V.dim(); ++r)
        for (int c = 0; c < Y.dim(); ++c)
            if (V.base.deg(r) == Y.base.deg(c) + k) b.f2.emplace_back(r, c);
    for (int r = 0; r < V.dim(); ++r)
        for (int c = 0; c < X.dim(); ++c)
            if (V.base.deg(r) == X.base.deg(c) + (k - 1)) b.g.emplace_back(r, c);
    return b;
}

FqMatrix A2HomComplex::differential(int k) const {
    const FieldSpec& f = from->src.diff.field();
    Basis bk = basis(k), bk1 = basis(k + 1);
    const auto &X = from->src, &Y = from->dst, &U = to->src, &V = to->dst;
    const FqMatrix &S = from->map, &T = to->map;
    std::map<std::pair<int, int>, int> if1, if2, ig;
    for (size_t i = 0; i < bk1.f1.size(); ++i) if1[bk1.f1[i]] = static_cast<int>(i);
    int off2 = static_cast<int>(bk1.f1.size());
    for (size_t i = 0; i < bk1.f2.size(); ++i) if2[bk1.f2[i]] = off2 + static_cast<int>(i);
    int off3 = off2 + static_cast<int>(bk1.f2.size());
    for (size_t i = 0; i < bk1.g.size(); ++i) ig[bk1.g[i]] = off3 + static_cast<int>(i);

    FqMatrix m(bk1.total(), bk.total(), f);
    Fq signk = (k % 2 == 0) ? 1 : f.neg(1);  // (-1)^k; |g| carries the shifted degree k
    auto add = [&](int row, int col, Fq v) {
        if (v != 0) m.set(row, col, f.add(m.at(row, col), v));
    };

    int col = 0;
    for (const auto& [r, c] : bk.f1) {
        // d_U f1 - (-1)^k f1 d_X, plus (-1)^k T∘f1 into the g-part
        for (int r2 = 0; r2 < U.dim(); ++r2)
            if (U.diff.at(r2, r) != 0) add(if1.at({r2, c}), col, U.diff.at(r2, r));
        for (int c2 = 0; c2 < X.dim(); ++c2)
            if (X.diff.at(c, c2) != 0) add(if1.at({r, c2}), col, f.neg(f.mul(signk, X.diff.at(c, c2))));
        for (int r2 = 0; r2 < V.dim(); ++r2)
            if (T.at(r2, r) != 0) add(ig.at({r2, c}), col, f.mul(signk, T.at(r2, r)));
        ++col;
    }
    for (const auto& [r, c] : bk.f2) {
        // d_V f2 - (-1)^k f2 d_Y, minus (-1)^k f2∘S into the g-part
        for (int r2 = 0; r2 < V.dim(); ++r2)
            if (V.diff.at(r2, r) != 0) add(if2.at({r2, c}), col, V.diff.at(r2, r));
        for (int c2 = 0; c2 < Y.dim(); ++c2)
            if (Y.diff.at(c, c2) != 0) add(if2.at({r, c2}), col, f.neg(f.mul(signk, Y.diff.at(c, c2))));
        for (int c2 = 0; c2 < X.dim(); ++c2)
            if (S.at(c, c2) != 0) add(ig.at({r, c2}), col, f.neg(f.mul(signk, S.at(c, c2))));
        ++col;
    }
    for (const auto& [r, c] : bk.g) {
        // d_V g + (-1)^k g d_X
        for (int r2 = 0; r2 < V.dim(); ++r2)
            if (V.diff.at(r2, r) != 0) add(ig.at({r2, c}), col, V.diff.at(r2, r));
        for (int c2 = 0; c2 < X.dim(); ++c2)
            if (X.diff.at(c, c2) != 0) add(ig.at({r, c2}), col, f.mul(signk, X.diff.at(c, c2)));
        ++col;
    }
    return m;
}

int A2HomComplex::cohomology_dim(int k) const {
    return basis(k).total() - differential(k).rank() - differential(k - 1).rank();
}

std::vector<std::vector<Fq>> A2HomComplex::cocycles_deg1() const { return nullspace(differential(1)); }

std::vector<std::vector<Fq>> A2HomComplex::coboundaries_deg1() const {
    FqMatrix d0 = differential(0);
    std::vector<std::vector<Fq>> cols;
    for (int c = 0; c < d0.cols(); ++c) {
        std::vector<Fq> v(d0.rows());
        for (int r = 0; r < d0.rows(); ++r) v[r] = d0.at(r, c);
        cols.push_back(std::move(v));
    }
    return cols;
}

// ---- tensor products ----

namespace {

struct TensorGeometry {
    GradedOrderedSet srcUX, dstVY;
    int dimU, dimX, dimV, dimY;
};

MorphismKey tensor_term_key(const HTriple& arep, const HTriple& brep, const TensorGeometry& geo,
                            const A2HomComplex::Basis& b1, const std::vector<Fq>& delta,
                            const FieldSpec& fld) {
    HTriple t;
    FqMatrix ds(geo.dimU + geo.dimX, geo.dimU + geo.dimX, fld);
    for (int r = 0; r < geo.dimU; ++r)
        for (int c = 0; c < geo.dimU; ++c) ds.set(r, c, arep.src.diff.at(r, c));
    for (int r = 0; r < geo.dimX; ++r)
        for (int c = 0; c < geo.dimX; ++c) ds.set(geo.dimU + r, geo.dimU + c, brep.src.diff.at(r, c));
    FqMatrix dd(geo.dimV + geo.dimY, geo.dimV + geo.dimY, fld);
    for (int r = 0; r < geo.dimV; ++r)
        for (int c = 0; c < geo.dimV; ++c) dd.set(r, c, arep.dst.diff.at(r, c));
    for (int r = 0; r < geo.dimY; ++r)
        for (int c = 0; c < geo.dimY; ++c) dd.set(geo.dimV + r, geo.dimV + c, brep.dst.diff.at(r, c));
    FqMatrix mp(geo.dimV + geo.dimY, geo.dimU + geo.dimX, fld);
    for (int r = 0; r < geo.dimV; ++r)
        for (int c = 0; c < geo.dimU; ++c) mp.set(r, c, arep.map.at(r, c));
    for (int r = 0; r < geo.dimY; ++r)
        for (int c = 0; c < geo.dimX; ++c) mp.set(geo.dimV + r, geo.dimU + c, brep.map.at(r, c));
    size_t i = 0;
    for (const auto& [r, c] : b1.f1) ds.set(r, geo.dimU + c, delta[i++]);   // δ11: X -> U
    for (const auto& [r, c] : b1.f2) dd.set(r, geo.dimV + c, delta[i++]);   // δ22: Y -> V
    for (const auto& [r, c] : b1.g) mp.set(r, geo.dimU + c, delta[i++]);    // δ12: X -> V
    t.src = FlaggedComplex(geo.srcUX, std::move(ds));
    t.dst = FlaggedComplex(geo.dstVY, std::move(dd));
    t.map = std::move(mp);
    return canonical_key(t);
}

// Σ_{i>=0} (-1)^{i+1} [dim Hom^{-i}(X,U) + dim Hom^{-i}(Y,V) + dim Hom^{-i-1}(X,V)]
long tensor_full_exponent(const GradedOrderedSet& X, const GradedOrderedSet& U,
                          const GradedOrderedSet& Y, const GradedOrderedSet& V) {
    int span = 1;
    for (const GradedOrderedSet* o : {&X, &U, &Y, &V})
        for (int d : o->degrees) span = std::max(span, 2 * std::abs(d) + 2);
    long e = 0;
    for (int i = 0; i <= span; ++i) {
        int d = hom_dim(X, U, -i) + hom_dim(Y, V, -i) + hom_dim(X, V, -i - 1);
        e += (i % 2 == 0 ? -1 : 1) * d;
    }
    return e;
}

}  // namespace

HMorphism tensor_full(const HMorphism& a, const HMorphism& b) {
    if (a.q != b.q) throw std::invalid_argument("tensor: field mismatch");
    const long q = a.q;
    const FieldSpec& fld = field_of(q);
    TensorGeometry geo{concat(a.src, b.src), concat(a.dst, b.dst), a.src.size(), b.src.size(),
                       a.dst.size(), b.dst.size()};
    HMorphism out(geo.srcUX, geo.dstVY, q);
    for (const auto& [ka, ca] : a.terms) {
        HTriple arep = key_to_representative(ka, a.src, a.dst, fld);
        for (const auto& [kb, cb] : b.terms) {
            HTriple brep = key_to_representative(kb, b.src, b.dst, fld);
            A2HomComplex hc{&brep, &arep};
            auto b1 = hc.basis(1);
            ExactRational base =
                ca * cb * q_exp(q, tensor_full_exponent(b.src, a.src, b.dst, a.dst));
            AffineSolution sol;
            sol.q = static_cast<int>(q);
            sol.particular.assign(b1.total(), 0);
            sol.kernel = hc.cocycles_deg1();
            sol.enumerate([&](const std::vector<Fq>& delta) {
                out.add_term(tensor_term_key(arep, brep, geo, b1, delta, fld), base);
            });
        }
    }
    return out;
}

HMorphism tensor_ext(const HMorphism& a, const HMorphism& b) {
    if (a.q != b.q) throw std::invalid_argument("tensor: field mismatch");
    const long q = a.q;
    const FieldSpec& fld = field_of(q);
    TensorGeometry geo{concat(a.src, b.src), concat(a.dst, b.dst), a.src.size(), b.src.size(),
                       a.dst.size(), b.dst.size()};
    HMorphism out(geo.srcUX, geo.dstVY, q);
    for (const auto& [ka, ca] : a.terms) {
        HTriple arep = key_to_representative(ka, a.src, a.dst, fld);
        for (const auto& [kb, cb] : b.terms) {
            HTriple brep = key_to_representative(kb, b.src, b.dst, fld);
            A2HomComplex hc{&brep, &arep};
            auto b1 = hc.basis(1);
            // Ext prefactor from the plain Hom complex (X,d_X) -> (U,d_U)
            HomComplex plain{&brep.src, &arep.src};
            int span = 1;
            for (const GradedOrderedSet* o : {&geo.srcUX, &geo.dstVY})
                for (int d : o->degrees) span = std::max(span, 2 * std::abs(d) + 2);
            long e = 0;
            for (int i = 0; i <= span; ++i) e += (i % 2 == 0 ? -1 : 1) * plain.cohomology_dim(-i);
            ExactRational base = ca * cb * q_exp(q, e);
            // deterministic Ext^1 coset representatives: greedily extend span(B^1) by
            // cocycle basis vectors, enumerate the span of the complement
            auto Z = hc.cocycles_deg1();
            auto B = hc.coboundaries_deg1();
            int dim = b1.total();
            std::vector<std::vector<Fq>> rows;
            auto try_insert = [&](std::vector<Fq> v) -> bool {
                for (auto& rvec : rows) {
                    int piv = -1;
                    for (int i = 0; i < dim; ++i)
                        if (rvec[i] != 0) {
                            piv = i;
                            break;
                        }
                    if (piv >= 0 && v[piv] != 0) {
                        Fq factor = fld.div(v[piv], rvec[piv]);
                        for (int i = 0; i < dim; ++i) v[i] = fld.sub(v[i], fld.mul(factor, rvec[i]));
                    }
                }
                bool nonzero = false;
                for (int i = 0; i < dim; ++i)
                    if (v[i] != 0) nonzero = true;
                if (nonzero) rows.push_back(std::move(v));
                return nonzero;
            };
            std::vector<std::vector<Fq>> complement;
            for (auto& v : B) try_insert(v);
            for (auto& z : Z)
                if (try_insert(z)) complement.push_back(z);
            AffineSolution reps;
            reps.q = static_cast<int>(q);
            reps.particular.assign(dim, 0);
            reps.kernel = complement;
            reps.enumerate([&](const std::vector<Fq>& delta) {
                out.add_term(tensor_term_key(arep, brep, geo, b1, delta, fld), base);
            });
        }
    }
    return out;
}

// ---- dualities, β and bending ----

HMorphism dual_D(const HMorphism& m) {
    HMorphism out(m.dst, m.src, m.q);
    for (const auto& [k, c] : m.terms) {
        KeyParts p = split_key(k, m.src.size(), m.dst.size());
        KeyParts np;
        np.srcRuling = p.dstRuling;
        np.dstRuling = p.srcRuling;
        for (const auto& [s, d] : p.sigma) np.sigma.emplace_back(d, s);
        std::sort(np.sigma.begin(), np.sigma.end());
        out.add_term(join_key(np, m.dst.size(), m.src.size()), c);
    }
    return out;
}

GradedOrderedSet dual_object(const GradedOrderedSet& x) {
    GradedOrderedSet r;
    for (int i = x.size() - 1; i >= 0; --i) r.degrees.push_back(-x.deg(i));
    return r;
}

namespace {
FqMatrix anti_transpose(const FqMatrix& m) {
    FqMatrix r(m.cols(), m.rows(), m.field());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r.set(m.cols() - 1 - j, m.rows() - 1 - i, m.at(i, j));
    return r;
}
}  // namespace

HMorphism dual_vee(const HMorphism& m) {
    const FieldSpec& fld = field_of(m.q);
    GradedOrderedSet nsrc = dual_object(m.dst), ndst = dual_object(m.src);
    HMorphism out(nsrc, ndst, m.q);
    for (const auto& [k, c] : m.terms) {
        HTriple rep = key_to_representative(k, m.src, m.dst, fld);
        HTriple dualt;
        dualt.src = FlaggedComplex(nsrc, anti_transpose(rep.dst.diff));
        dualt.dst = FlaggedComplex(ndst, anti_transpose(rep.src.diff));
        dualt.map = anti_transpose(rep.map);
        out.add_term(canonical_key(dualt), c);
    }
    return out;
}

HMorphism beta_morphism(const GradedOrderedSet& w, long q) {
    const FieldSpec& fld = field_of(q);
    GradedOrderedSet srcObj = cone_base(w, w);  // concat(shift(w,-1), w)
    HMorphism out(srcObj, GradedOrderedSet{}, q);
    ExactRational pref = qm1_pow(q, -w.size()) * identity_homs_prefactor(w, q);
    int n = w.size();
    for (const PartialRuling& r : enumerate_partial_rulings(w)) {
        FlaggedComplex d = ruling_differential(w, r, fld);
        FqMatrix big(2 * n, 2 * n, fld);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (d.diff.at(i, j) != 0) big.set(i, j, fld.neg(d.diff.at(i, j)));
        for (int i = 0; i < n; ++i) big.set(i, n + i, 1);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) big.set(n + i, n + j, d.diff.at(i, j));
        PartialRuling cls = bruhat_reduce(big);
        if (!cls.is_full(2 * n)) throw std::logic_error("beta_morphism: cone not acyclic");
        out.add_term(MorphismKey{cls}, pref * ExactRational(orbit_size_at(w, r, q)));
    }
    return out;
}

HMorphism bend_iso(const HMorphism& m) {
    HMorphism out(cone_base(m.src, m.dst), GradedOrderedSet{}, m.q);
    for (const auto& [k, c] : m.terms) out.add_term(k, c);
    return out;
}

HMorphism unbend_iso(const HMorphism& oneSided, const GradedOrderedSet& src,
                     const GradedOrderedSet& dst) {
    if (oneSided.dst.size() != 0 || oneSided.src != cone_base(src, dst))
        throw std::invalid_argument("unbend_iso: shape mismatch");
    HMorphism out(src, dst, oneSided.q);
    for (const auto& [k, c] : oneSided.terms) out.add_term(k, c);
    return out;
}

}  // namespace flagtangle
