#include "flagtangle/functor.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace flagtangle {

namespace {

const FieldSpec& field_of(long q) { return FieldSpec::get(static_cast<int>(q)); }

ExactRational qm1_inv_pow(long q, int k) {
    return ExactRational(BigInt(1), ExactRational::int_pow(q - 1, k).num());
}

// Π_{i>=0} |Hom^{-i}_{<0}(x,x)|^{(-1)^{i+1}}
ExactRational identity_homs_prefactor(const GradedOrderedSet& x, long q) {
    int lo = 0, hi = 0;
    for (int d : x.degrees) {
        lo = std::min(lo, d);
        hi = std::max(hi, d);
    }
    long e = 0;
    for (int i = 0; i <= hi - lo; ++i) e += (i % 2 == 0 ? -1 : 1) * hom_dim_strict(x, -i);
    return ExactRational::int_pow(q, e);
}

// τ_{m,n} at a specific q: 1 when m > n, q^{(-1)^{m-n}} otherwise
ExactRational tau_at(int m, int n, long q) {
    if (m > n) return ExactRational(1);
    return ExactRational::int_pow(q, ((m - n) % 2 == 0) ? 1 : -1);
}

// the local 2x2 crossing cell: degree-0 invertible maps E_src -> E_dst with a
// nonzero lower-left entry; E_src has degrees (n, m), E_dst (m, n)
std::vector<FqMatrix> crossing_cell(int m, int n, const FieldSpec& f) {
    std::vector<FqMatrix> out;
    const int q = f.q();
    if (m == n) {
        for (int a = 0; a < q; ++a)
            for (int b = 0; b < q; ++b)
                for (int c = 1; c < q; ++c)
                    for (int d = 0; d < q; ++d) {
                        // det = ad - bc must be nonzero
                        Fq det = f.sub(f.mul(static_cast<Fq>(a), static_cast<Fq>(d)),
                                       f.mul(static_cast<Fq>(b), static_cast<Fq>(c)));
                        if (det == 0) continue;
                        FqMatrix g(2, 2, f);
                        g.set(0, 0, static_cast<Fq>(a));
                        g.set(0, 1, static_cast<Fq>(b));
                        g.set(1, 0, static_cast<Fq>(c));
                        g.set(1, 1, static_cast<Fq>(d));
                        out.push_back(std::move(g));
                    }
    } else {
        for (int b = 1; b < q; ++b)
            for (int c = 1; c < q; ++c) {
                FqMatrix g(2, 2, f);
                g.set(0, 1, static_cast<Fq>(b));
                g.set(1, 0, static_cast<Fq>(c));
                out.push_back(std::move(g));
            }
    }
    return out;
}

PartialRuling insert_pair(const PartialRuling& r, int pp) {
    std::vector<std::pair<int, int>> pairs;
    for (auto [o, c] : r.pairs)
        pairs.emplace_back(o + (o >= pp ? 2 : 0), c + (c >= pp ? 2 : 0));
    pairs.emplace_back(pp, pp + 1);
    return PartialRuling(std::move(pairs));
}

PartialRuling remove_pair(const PartialRuling& r, int pp) {
    std::vector<std::pair<int, int>> pairs;
    for (auto [o, c] : r.pairs) {
        if (o == pp && c == pp + 1) continue;
        pairs.emplace_back(o - (o > pp + 1 ? 2 : 0), c - (c > pp + 1 ? 2 : 0));
    }
    return PartialRuling(std::move(pairs));
}

GradedOrderedSet slice_source(const Slice& s, const GradedOrderedSet& before) {
    TangleWord w;
    w.left = before;
    w.slices = {s};
    return check_grading(w).right();
}

}  // namespace

HMorphism phi_lambda(int n, long q) {
    HMorphism m(GradedOrderedSet({n + 1, n}), GradedOrderedSet{}, q);
    m.add_term(MorphismKey{PartialRuling({{0, 1}})}, qm1_inv_pow(q, 1));
    return m;
}

HMorphism phi_rho(int n, long q) {
    HMorphism m(GradedOrderedSet{}, GradedOrderedSet({n + 1, n}), q);
    m.add_term(MorphismKey{PartialRuling({{0, 1}})}, qm1_inv_pow(q, 1));
    return m;
}

HMorphism phi_sigma(int m, int n, long q) {
    HMorphism out(GradedOrderedSet({n, m}), GradedOrderedSet({m, n}), q);
    out.add_term(MorphismKey{PartialRuling({{0, 3}, {1, 2}})}, qm1_inv_pow(q, 2));
    return out;
}

HMorphism phi_slice(const Slice& s, const GradedOrderedSet& before, long q) {
    const FieldSpec& fld = field_of(q);
    GradedOrderedSet after = slice_source(s, before);
    HMorphism out(after, before, q);
    const int pp = s.pos - 1;
    ExactRational homPref = identity_homs_prefactor(before, q);
    switch (s.kind) {
        case SliceKind::Birth: {
            ExactRational pref = qm1_inv_pow(q, before.size() + 1) * homPref;
            for (const PartialRuling& r : enumerate_partial_rulings(before)) {
                HTriple t;
                t.dst = ruling_differential(before, r, fld);
                t.src = ruling_differential(after, insert_pair(r, pp), fld);
                t.map = FqMatrix(before.size(), after.size(), fld);
                for (int c = 0; c < after.size(); ++c) {
                    if (c == pp || c == pp + 1) continue;
                    t.map.set(c < pp ? c : c - 2, c, 1);
                }
                out.add_term(canonical_key(t), pref * ExactRational(orbit_size_at(before, r, q)));
            }
            break;
        }
        case SliceKind::Death: {
            ExactRational pref = qm1_inv_pow(q, before.size()) * homPref;
            for (const PartialRuling& r : enumerate_partial_rulings(before)) {
                if (!r.pairs_contains(pp, pp + 1)) continue;
                HTriple t;
                t.dst = ruling_differential(before, r, fld);
                t.src = ruling_differential(after, remove_pair(r, pp), fld);
                t.map = FqMatrix(before.size(), after.size(), fld);
                for (int c = 0; c < after.size(); ++c) t.map.set(c < pp ? c : c + 2, c, 1);
                out.add_term(canonical_key(t), pref * ExactRational(orbit_size_at(before, r, q)));
            }
            break;
        }
        case SliceKind::Crossing: {
            int m = before.deg(pp), n = before.deg(pp + 1);
            auto cell = crossing_cell(m, n, fld);
            ExactRational pref = qm1_inv_pow(q, before.size()) * homPref * tau_at(m, n, q) /
                                 ExactRational(BigInt(cell.size()));
            for (const PartialRuling& r : enumerate_partial_rulings(before)) {
                if (r.pairs_contains(pp, pp + 1)) continue;  // forces the excluded E-block entry
                FlaggedComplex drho = ruling_differential(before, r, fld);
                ExactRational base = pref * ExactRational(orbit_size_at(before, r, q));
                for (const FqMatrix& g : cell) {
                    FqMatrix ghat = FqMatrix::identity(before.size(), fld);
                    FqMatrix ginv2 = g.inverse();
                    for (int i = 0; i < 2; ++i)
                        for (int j = 0; j < 2; ++j) ghat.set(pp + i, pp + j, g.at(i, j));
                    FqMatrix ghatInv = FqMatrix::identity(before.size(), fld);
                    for (int i = 0; i < 2; ++i)
                        for (int j = 0; j < 2; ++j) ghatInv.set(pp + i, pp + j, ginv2.at(i, j));
                    HTriple t;
                    t.dst = drho;
                    t.src = FlaggedComplex(after, ghatInv * drho.diff * ghat);
                    t.map = ghat;
                    out.add_term(canonical_key(t), base);
                }
            }
            break;
        }
    }
    return out;
}

HMorphism phi_slice_assembled(const Slice& s, const GradedOrderedSet& before, long q) {
    const int pp = s.pos - 1;
    GradedOrderedSet below(std::vector<int>(before.degrees.begin(), before.degrees.begin() + pp));
    HMorphism elem = phi_lambda(0, q);
    GradedOrderedSet above;
    switch (s.kind) {
        case SliceKind::Birth:
            above.degrees.assign(before.degrees.begin() + pp, before.degrees.end());
            elem = phi_lambda(s.degree, q);
            break;
        case SliceKind::Death:
            above.degrees.assign(before.degrees.begin() + pp + 2, before.degrees.end());
            elem = phi_rho(before.deg(pp + 1), q);
            break;
        case SliceKind::Crossing:
            above.degrees.assign(before.degrees.begin() + pp + 2, before.degrees.end());
            elem = phi_sigma(before.deg(pp), before.deg(pp + 1), q);
            break;
    }
    return tensor_full(identity(below, q), tensor_full(elem, identity(above, q)));
}

HMorphism phi_word_general(const TangleWord& w, long q) {
    GradingResult gr = check_grading(w);
    HMorphism acc = identity(gr.right(), q);
    for (size_t j = w.slices.size(); j-- > 0;)
        acc = compose(phi_slice(w.slices[j], gr.boundaries[j], q), acc);
    return acc;
}

namespace {

// one-sided fold: acc in Hom(boundary, ∅) composed with a slice on the right;
// the closed-form transfer factors come from collapsing h_comp against the
// class-summed slice images (birth (q-1)^{-1}, death 1, crossing τ/|cell| per
// cell element)
HMorphism fold_slice_onesided(const HMorphism& acc, const Slice& s, const GradedOrderedSet& before,
                              long q) {
    const FieldSpec& fld = field_of(q);
    GradedOrderedSet after = slice_source(s, before);
    HMorphism out(after, GradedOrderedSet{}, q);
    const int pp = s.pos - 1;
    switch (s.kind) {
        case SliceKind::Birth: {
            ExactRational f = qm1_inv_pow(q, 1);
            for (const auto& [k, c] : acc.terms)
                out.add_term(MorphismKey{insert_pair(k.coneRuling, pp)}, c * f);
            break;
        }
        case SliceKind::Death: {
            for (const auto& [k, c] : acc.terms) {
                if (!k.coneRuling.pairs_contains(pp, pp + 1)) continue;
                out.add_term(MorphismKey{remove_pair(k.coneRuling, pp)}, c);
            }
            break;
        }
        case SliceKind::Crossing: {
            int m = before.deg(pp), n = before.deg(pp + 1);
            auto cell = crossing_cell(m, n, fld);
            ExactRational factor = tau_at(m, n, q) / ExactRational(BigInt(cell.size()));
            std::vector<FqMatrix> ghat, ghatInv;
            for (const FqMatrix& g : cell) {
                FqMatrix gh = FqMatrix::identity(before.size(), fld);
                FqMatrix gi = FqMatrix::identity(before.size(), fld);
                FqMatrix g2 = g.inverse();
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j) {
                        gh.set(pp + i, pp + j, g.at(i, j));
                        gi.set(pp + i, pp + j, g2.at(i, j));
                    }
                ghat.push_back(std::move(gh));
                ghatInv.push_back(std::move(gi));
            }
            for (const auto& [k, c] : acc.terms) {
                if (k.coneRuling.pairs_contains(pp, pp + 1)) continue;
                FlaggedComplex drho = ruling_differential(before, k.coneRuling, fld);
                ExactRational base = c * factor;
                for (size_t gi = 0; gi < ghat.size(); ++gi) {
                    PartialRuling cls = bruhat_reduce(ghatInv[gi] * drho.diff * ghat[gi]);
                    out.add_term(MorphismKey{std::move(cls)}, base);
                }
            }
            break;
        }
    }
    return out;
}

}  // namespace

HMorphism phi_word(const TangleWord& w, long q) {
    if (w.left.size() != 0) return phi_word_general(w, q);
    GradingResult gr = check_grading(w);
    HMorphism acc = identity(GradedOrderedSet{}, q);
    for (size_t j = 0; j < w.slices.size(); ++j)
        acc = fold_slice_onesided(acc, w.slices[j], gr.boundaries[j], q);
    return acc;
}

HMorphism nu_as_morphism(const SkeinVector& v, long q) {
    HMorphism out(v.src, GradedOrderedSet{}, q);
    for (const auto& [r, c] : v.terms) out.add_term(ruling_to_key(r), c.eval(q));
    return out;
}

namespace {
std::string describe(const HMorphism& m) {
    std::ostringstream os;
    os << m.terms.size() << " term(s):";
    for (const auto& [k, c] : m.terms) {
        os << " {";
        for (auto [o, cl] : k.coneRuling.pairs) os << "(" << o + 1 << "," << cl + 1 << ")";
        os << "}:" << c.str();
    }
    return os.str();
}
}  // namespace

CheckReport compare_nu_phi(const TangleWord& w, long q) {
    CheckReport rep;
    rep.check = "compare_nu_phi";
    rep.instances = 1;
    HMorphism lhs = nu_as_morphism(nu(w), q);
    HMorphism rhs = phi_word(w, q);
    if (lhs != rhs)
        rep.failures.push_back("word " + format_word(w) + " nu: " + describe(lhs) +
                               " phi: " + describe(rhs));
    return rep;
}

CheckReport bend_square(const TangleWord& w, long q) {
    CheckReport rep;
    rep.check = "bend_square";
    rep.instances = 1;
    HMorphism viaTangle = phi_word(bend(w), q);
    HMorphism viaCone = bend_iso(phi_word(w, q));
    if (viaTangle != viaCone)
        rep.failures.push_back("word " + format_word(w) + " phi(bend): " + describe(viaTangle) +
                               " bend(phi): " + describe(viaCone));
    return rep;
}

CheckReport duality_compat(const TangleWord& w, long q) {
    CheckReport rep;
    rep.check = "duality_compat";
    rep.instances = 2;
    HMorphism phiW = phi_word(w, q);
    HMorphism lhsV = phi_word(dual_v(w), q);
    HMorphism rhsV = dual_D(phiW);
    if (lhsV != rhsV)
        rep.failures.push_back("D_v mismatch on " + format_word(w) + " lhs: " + describe(lhsV) +
                               " rhs: " + describe(rhsV));
    HMorphism lhsVee = phi_word(dual_h(dual_v(w)), q);
    HMorphism rhsVee = dual_vee(phiW);
    if (lhsVee != rhsVee)
        rep.failures.push_back("D_h∘D_v mismatch on " + format_word(w) + " lhs: " + describe(lhsVee) +
                               " rhs: " + describe(rhsVee));
    return rep;
}

HeckeContext make_hecke(int rank, long q) {
    HeckeContext ctx;
    ctx.rank = rank;
    ctx.q = q;
    ctx.ambient = GradedOrderedSet(std::vector<int>(rank + 1, 0));
    for (int i = 1; i <= rank; ++i) {
        TangleWord w;
        w.left = ctx.ambient;
        w.slices = {Slice::crossing(i)};
        ctx.T.push_back(phi_word(w, q));
    }
    return ctx;
}

CheckReport hecke_verify(int rank, long q) {
    CheckReport rep;
    rep.check = "hecke_verify(rank=" + std::to_string(rank) + ",q=" + std::to_string(q) + ")";
    HeckeContext ctx = make_hecke(rank, q);
    HMorphism one = identity(ctx.ambient, q);
    // the Bruhat basis of End(V): (rank+1)! keys
    size_t factorial = 1;
    for (int i = 2; i <= rank + 1; ++i) factorial *= i;
    ++rep.instances;
    if (enumerate_rulings(cone_base(ctx.ambient, ctx.ambient)).size() != factorial)
        rep.failures.push_back("basis count != (rank+1)!");
    for (int i = 0; i < rank; ++i) {
        ++rep.instances;
        HMorphism lhs = compose(ctx.T[i], ctx.T[i]);
        HMorphism rhs = ctx.T[i] * ExactRational(q - 1) + one * ExactRational(q);
        if (lhs != rhs) rep.failures.push_back("T^2 != (q-1)T + q at i=" + std::to_string(i + 1));
    }
    for (int i = 0; i + 1 < rank; ++i) {
        ++rep.instances;
        HMorphism lhs = compose(ctx.T[i], compose(ctx.T[i + 1], ctx.T[i]));
        HMorphism rhs = compose(ctx.T[i + 1], compose(ctx.T[i], ctx.T[i + 1]));
        if (lhs != rhs) rep.failures.push_back("braid relation fails at i=" + std::to_string(i + 1));
    }
    for (int i = 0; i < rank; ++i)
        for (int j = i + 2; j < rank; ++j) {
            ++rep.instances;
            if (compose(ctx.T[i], ctx.T[j]) != compose(ctx.T[j], ctx.T[i]))
                rep.failures.push_back("commutation fails at (" + std::to_string(i + 1) + "," +
                                       std::to_string(j + 1) + ")");
        }
    return rep;
}

namespace {

// canonical rref basis of a subspace given spanning vectors, over F_q
std::vector<std::vector<Fq>> rref_basis(std::vector<std::vector<Fq>> rows, const FieldSpec& f) {
    size_t ncols = rows.empty() ? 0 : rows[0].size();
    size_t rank = 0;
    for (size_t c = 0; c < ncols && rank < rows.size(); ++c) {
        size_t piv = rank;
        while (piv < rows.size() && rows[piv][c] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[rank], rows[piv]);
        Fq inv = f.inv(rows[rank][c]);
        for (auto& v : rows[rank]) v = f.mul(v, inv);
        for (size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][c] == 0) continue;
            Fq factor = rows[r][c];
            for (size_t k = 0; k < ncols; ++k)
                rows[r][k] = f.sub(rows[r][k], f.mul(factor, rows[rank][k]));
        }
        ++rank;
    }
    rows.resize(rank);
    return rows;
}

using Flag = std::vector<std::vector<std::vector<Fq>>>;  // rref bases of V_1..V_n

void enumerate_flags_rec(int dimAmbient, const FieldSpec& f, Flag& cur, std::vector<Flag>& out) {
    int step = static_cast<int>(cur.size()) + 1;
    if (step == dimAmbient) {
        out.push_back(cur);
        return;
    }
    // all vectors extending the current top subspace; dedupe extensions by rref
    const int q = f.q();
    std::vector<std::vector<std::vector<Fq>>> seen;
    std::vector<Fq> v(dimAmbient, 0);
    for (;;) {
        size_t i = 0;
        for (; i < v.size(); ++i) {
            if (++v[i] < q) break;
            v[i] = 0;
        }
        if (i == v.size()) break;
        std::vector<std::vector<Fq>> span = cur.empty() ? std::vector<std::vector<Fq>>{} : cur.back();
        span.push_back(v);
        auto basis = rref_basis(span, f);
        if (static_cast<int>(basis.size()) != step) continue;  // v was already inside
        if (std::find(seen.begin(), seen.end(), basis) != seen.end()) continue;
        seen.push_back(basis);
        cur.push_back(basis);
        enumerate_flags_rec(dimAmbient, f, cur, out);
        cur.pop_back();
    }
}

}  // namespace

CheckReport flag_oracle_verify(int rank, long q) {
    CheckReport rep;
    rep.check = "flag_oracle(rank=" + std::to_string(rank) + ",q=" + std::to_string(q) + ")";
    const FieldSpec& f = field_of(q);
    int dim = rank + 1;
    std::vector<Flag> flags;
    Flag cur;
    enumerate_flags_rec(dim, f, cur, flags);
    std::map<Flag, int> index;
    for (size_t i = 0; i < flags.size(); ++i) index[flags[i]] = static_cast<int>(i);
    int nf = static_cast<int>(flags.size());
    // the q-factorial count of complete flags: Π_{k=2}^{dim} (q^k - 1)/(q - 1)
    long long expectFlags = 1, qk = q;
    for (int k = 2; k <= dim; ++k) {
        qk *= q;
        expectFlags *= (qk - 1) / (q - 1);
    }
    ++rep.instances;
    if (nf != expectFlags)
        rep.failures.push_back("flag count " + std::to_string(nf) + " != expected " +
                               std::to_string(expectFlags));

    // T_i replaces V_i by the q other subspaces between V_{i-1} and V_{i+1}
    std::vector<std::vector<std::vector<long long>>> T(
        rank, std::vector<std::vector<long long>>(nf, std::vector<long long>(nf, 0)));
    const int qi = static_cast<int>(q);
    for (int fi = 0; fi < nf; ++fi) {
        const Flag& fl = flags[fi];
        for (int i = 1; i <= rank; ++i) {
            // enumerate subspaces V_{i-1} ⊂ W ⊂ V_{i+1} of dimension i
            std::vector<std::vector<std::vector<Fq>>> mids;
            std::vector<std::vector<Fq>> upper =
                (i == rank) ? [&] {
                    std::vector<std::vector<Fq>> all;
                    for (int e = 0; e < dim; ++e) {
                        std::vector<Fq> b(dim, 0);
                        b[e] = 1;
                        all.push_back(b);
                    }
                    return all;
                }()
                            : fl[i];
            // vectors of V_{i+1} not in V_{i-1}: span with V_{i-1}
            std::vector<Fq> coords(upper.size(), 0);
            for (;;) {
                size_t t = 0;
                for (; t < coords.size(); ++t) {
                    if (++coords[t] < qi) break;
                    coords[t] = 0;
                }
                if (t == coords.size()) break;
                std::vector<Fq> v(dim, 0);
                for (size_t b = 0; b < upper.size(); ++b)
                    for (int e = 0; e < dim; ++e)
                        v[e] = f.add(v[e], f.mul(coords[b], upper[b][e]));
                std::vector<std::vector<Fq>> span =
                    (i >= 2) ? fl[i - 2] : std::vector<std::vector<Fq>>{};
                span.push_back(v);
                auto basis = rref_basis(span, f);
                if (static_cast<int>(basis.size()) != i) continue;
                if (std::find(mids.begin(), mids.end(), basis) == mids.end()) mids.push_back(basis);
            }
            int hits = 0;
            for (const auto& w : mids) {
                if (w == fl[i - 1]) continue;  // V_i' ≠ V_i
                Flag g = fl;
                g[i - 1] = w;
                T[i - 1][index.at(g)][fi] += 1;
                ++hits;
            }
            if (hits != qi)
                rep.failures.push_back("row weight != q at flag " + std::to_string(fi) +
                                       ", i=" + std::to_string(i));
        }
    }

    auto matmul = [&](const std::vector<std::vector<long long>>& a,
                      const std::vector<std::vector<long long>>& b) {
        std::vector<std::vector<long long>> r(nf, std::vector<long long>(nf, 0));
        for (int i = 0; i < nf; ++i)
            for (int k = 0; k < nf; ++k)
                if (a[i][k])
                    for (int j = 0; j < nf; ++j) r[i][j] += a[i][k] * b[k][j];
        return r;
    };
    for (int i = 0; i < rank; ++i) {
        ++rep.instances;
        auto sq = matmul(T[i], T[i]);
        for (int r = 0; r < nf; ++r)
            for (int c = 0; c < nf; ++c) {
                long long expect = (q - 1) * T[i][r][c] + (r == c ? q : 0);
                if (sq[r][c] != expect) {
                    rep.failures.push_back("flag oracle: T^2 != (q-1)T + q at i=" + std::to_string(i + 1));
                    r = c = nf;
                }
            }
    }
    for (int i = 0; i + 1 < rank; ++i) {
        ++rep.instances;
        auto lhs = matmul(T[i], matmul(T[i + 1], T[i]));
        auto rhs = matmul(T[i + 1], matmul(T[i], T[i + 1]));
        if (lhs != rhs) rep.failures.push_back("flag oracle: braid relation at i=" + std::to_string(i + 1));
    }
    for (int i = 0; i < rank; ++i)
        for (int j = i + 2; j < rank; ++j) {
            ++rep.instances;
            if (matmul(T[i], T[j]) != matmul(T[j], T[i]))
                rep.failures.push_back("flag oracle: commutation at (" + std::to_string(i + 1) + "," +
                                       std::to_string(j + 1) + ")");
        }
    return rep;
}

}  // namespace flagtangle
