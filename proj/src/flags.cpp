#include "flagtangle/flags.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace flagtangle {

GradedOrderedSet shift(const GradedOrderedSet& x, int k) {
    GradedOrderedSet r = x;
    for (int& d : r.degrees) d -= k;
    return r;
}

GradedOrderedSet concat(const GradedOrderedSet& x, const GradedOrderedSet& y) {
    GradedOrderedSet r = x;
    r.degrees.insert(r.degrees.end(), y.degrees.begin(), y.degrees.end());
    return r;
}

PartialRuling::PartialRuling(std::vector<std::pair<int, int>> p) : pairs(std::move(p)) {
    for (auto& pr : pairs)
        if (pr.first >= pr.second) throw std::invalid_argument("PartialRuling: opener must precede closer");
    std::sort(pairs.begin(), pairs.end(),
              [](const auto& a, const auto& b) { return a.second < b.second; });
}

bool PartialRuling::valid_on(const GradedOrderedSet& x) const {
    std::vector<int> used(x.size(), 0);
    for (const auto& [o, c] : pairs) {
        if (o < 0 || c >= x.size()) return false;
        if (x.deg(o) != x.deg(c) + 1) return false;
        if (used[o]++ || used[c]++) return false;
    }
    return true;
}

std::vector<int> PartialRuling::partners(int n) const {
    std::vector<int> p(n, -1);
    for (const auto& [o, c] : pairs) {
        p[o] = c;
        p[c] = o;
    }
    return p;
}

std::vector<int> PartialRuling::unpaired(int n) const {
    std::vector<int> p = partners(n), u;
    for (int i = 0; i < n; ++i)
        if (p[i] < 0) u.push_back(i);
    return u;
}

bool PartialRuling::pairs_contains(int opener, int closer) const {
    for (const auto& pr : pairs)
        if (pr.first == opener && pr.second == closer) return true;
    return false;
}

void FlaggedComplex::validate() const {
    int n = dim();
    if (diff.rows() != n || diff.cols() != n) throw std::invalid_argument("FlaggedComplex: shape");
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            if (diff.at(r, c) != 0) {
                if (r >= c) throw std::invalid_argument("FlaggedComplex: not flag-decreasing");
                if (base.deg(r) != base.deg(c) + 1)
                    throw std::invalid_argument("FlaggedComplex: differential not degree 1");
            }
    if (!(diff * diff).is_zero()) throw std::invalid_argument("FlaggedComplex: d^2 != 0");
}

namespace {
void enumerate_rulings_rec(const GradedOrderedSet& x, int closer, std::vector<int>& partner,
                           std::vector<std::pair<int, int>>& acc, bool full_only,
                           std::vector<PartialRuling>& out) {
    int n = x.size();
    if (closer == n) {
        if (!full_only || static_cast<int>(acc.size()) * 2 == n) out.push_back(PartialRuling(acc));
        return;
    }
    // option: closer stays unpaired
    if (!full_only) {
        enumerate_rulings_rec(x, closer + 1, partner, acc, full_only, out);
    } else {
        // in a full ruling every index is matched; an index may still be an opener
        // for a later closer, so "unpaired for now" is always allowed
        enumerate_rulings_rec(x, closer + 1, partner, acc, full_only, out);
    }
    for (int o = 0; o < closer; ++o) {
        if (partner[o] >= 0) continue;
        if (x.deg(o) != x.deg(closer) + 1) continue;
        partner[o] = closer;
        partner[closer] = o;
        acc.emplace_back(o, closer);
        enumerate_rulings_rec(x, closer + 1, partner, acc, full_only, out);
        acc.pop_back();
        partner[o] = -1;
        partner[closer] = -1;
    }
}
}  // namespace

std::vector<PartialRuling> enumerate_partial_rulings(const GradedOrderedSet& x) {
    std::vector<PartialRuling> out;
    std::vector<int> partner(x.size(), -1);
    std::vector<std::pair<int, int>> acc;
    enumerate_rulings_rec(x, 0, partner, acc, false, out);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<PartialRuling> enumerate_rulings(const GradedOrderedSet& x) {
    std::vector<PartialRuling> out;
    if (x.size() % 2 != 0) return out;
    std::vector<int> partner(x.size(), -1);
    std::vector<std::pair<int, int>> acc;
    enumerate_rulings_rec(x, 0, partner, acc, true, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

FlaggedComplex ruling_differential(const GradedOrderedSet& x, const PartialRuling& r,
                                   const FieldSpec& f) {
    if (!r.valid_on(x)) throw std::invalid_argument("ruling_differential: ruling invalid on x");
    FqMatrix d(x.size(), x.size(), f);
    for (const auto& [o, c] : r.pairs) d.set(o, c, 1);
    FlaggedComplex fc(x, std::move(d));
    fc.validate();
    return fc;
}

PartialRuling bruhat_reduce(const FqMatrix& diff) {
    const FieldSpec& f = diff.field();
    int n = diff.cols();
    // columns as dense vectors; owner[r] = column whose pivot row is r
    std::vector<std::vector<Fq>> col(n, std::vector<Fq>(n, 0));
    for (int c = 0; c < n; ++c)
        for (int r = 0; r < n; ++r) col[c][r] = diff.at(r, c);
    std::vector<int> owner(n, -1);
    std::vector<std::pair<int, int>> pairs;
    for (int c = 0; c < n; ++c) {
        for (;;) {
            int piv = -1;
            for (int r = n - 1; r >= 0; --r)
                if (col[c][r] != 0) {
                    piv = r;
                    break;
                }
            if (piv < 0) break;  // column died: c unpaired
            if (owner[piv] < 0) {
                owner[piv] = c;
                pairs.emplace_back(piv, c);
                break;
            }
            int c2 = owner[piv];
            Fq factor = f.div(col[c][piv], col[c2][piv]);
            for (int r = 0; r <= piv; ++r) col[c][r] = f.sub(col[c][r], f.mul(factor, col[c2][r]));
        }
    }
    return PartialRuling(std::move(pairs));
}

PartialRuling bruhat_reduce(const FlaggedComplex& c) { return bruhat_reduce(c.diff); }

int m_statistic(const GradedOrderedSet& x) {
    int m = 0;
    for (int i = 0; i < x.size(); ++i)
        for (int j = i + 1; j < x.size(); ++j)
            if (x.deg(i) == x.deg(j)) ++m;
    return m;
}

int s_statistic(const GradedOrderedSet& x, const PartialRuling& r) {
    int n = x.size();
    std::vector<int> closer_of(n, -1), opener_of(n, -1);  // closer_of[o]=c, opener_of[c]=o
    for (const auto& [o, c] : r.pairs) {
        closer_of[o] = c;
        opener_of[c] = o;
    }
    int s = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (x.deg(i) != x.deg(j) + 1) continue;
            bool cond1 = opener_of[j] >= 0 && opener_of[j] > i;     // j in D, δ(j) > i
            bool cond2 = closer_of[i] >= 0 && closer_of[i] < j;     // i in δ(D), δ^{-1}(i) < j
            if (cond1 || cond2) ++s;
        }
    return s;
}

namespace {
// Constraint structure on the strictly-upper degree-preserving entries of an
// automorphism commuting with d(D,δ). Distinct
// relation instances can impose the same entry constraint when degree levels
// chain (closer of one pair preceding an opener of the same degree), so the
// number of free entries is computed from the deduplicated structure rather
// than the raw instance count.
struct AutConstraints {
    std::vector<std::pair<int, int>> free_entries;
    // tie source -> target (relation 3); sources and targets are disjoint
    std::map<std::pair<int, int>, std::pair<int, int>> tied_to;
};

AutConstraints aut_constraints(const GradedOrderedSet& x, const PartialRuling& r) {
    int n = x.size();
    std::vector<int> closer_of(n, -1), opener_of(n, -1);
    for (const auto& [o, c] : r.pairs) {
        closer_of[o] = c;
        opener_of[c] = o;
    }
    std::map<std::pair<int, int>, int> entry_state;  // 0 free, 1 zero
    AutConstraints out;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (x.deg(i) == x.deg(j)) entry_state[{i, j}] = 0;
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            if (x.deg(i) != x.deg(k) + 1) continue;
            bool jinD = opener_of[k] >= 0 && opener_of[k] > i;      // k in D with δ(k) > i
            bool iinDelta = closer_of[i] >= 0 && closer_of[i] < k;  // i in δ(D) with δ^{-1}(i) < k
            if (jinD && iinDelta) {
                out.tied_to[{i, opener_of[k]}] = {closer_of[i], k};  // relation 3
            } else if (jinD) {
                entry_state[{i, opener_of[k]}] = 1;  // relation 1
            } else if (iinDelta) {
                entry_state[{closer_of[i], k}] = 1;  // relation 2
            }
        }
    for (auto& [pos, st] : entry_state) {
        if (st == 1) continue;
        if (out.tied_to.count(pos)) continue;
        out.free_entries.push_back(pos);
    }
    return out;
}
}  // namespace

SkeinScalar aut_count(const GradedOrderedSet& x, const PartialRuling& r) {
    int n = x.size();
    int rr = r.count();
    int free = static_cast<int>(aut_constraints(x, r).free_entries.size());
    return SkeinScalar::q_minus_one_pow(n - rr) * SkeinScalar::q_pow(free);
}

BigInt aut_count_at(const GradedOrderedSet& x, const PartialRuling& r, long q) {
    ExactRational v = aut_count(x, r).eval(q);
    if (!v.is_integer()) throw std::logic_error("aut_count_at: not an integer");
    return v.num();
}

BigInt orbit_size_at(const GradedOrderedSet& x, const PartialRuling& r, long q) {
    // orbit-stabilizer against the full flag/grading-preserving group (q-1)^n q^m
    BigInt v = 1;
    for (int i = 0; i < r.count(); ++i) v *= (q - 1);
    int e = m_statistic(x) - static_cast<int>(aut_constraints(x, r).free_entries.size());
    for (int i = 0; i < e; ++i) v *= q;
    return v;
}

std::vector<FqMatrix> enumerate_aut(const GradedOrderedSet& x, const PartialRuling& r,
                                    const FieldSpec& f) {
    int n = x.size();
    AutConstraints cons = aut_constraints(x, r);
    const auto& free_entries = cons.free_entries;
    const auto& tied_to = cons.tied_to;
    // diagonal classes: representative = min(k, δ(k)) for pairs, k otherwise
    std::vector<int> diag_rep(n);
    for (int i = 0; i < n; ++i) diag_rep[i] = i;
    for (const auto& [o, c] : r.pairs) diag_rep[c] = o;
    std::vector<int> diag_classes;
    for (int i = 0; i < n; ++i)
        if (diag_rep[i] == i) diag_classes.push_back(i);

    const int q = f.q();
    std::vector<FqMatrix> out;
    std::vector<Fq> diag_val(diag_classes.size(), 1);
    std::vector<Fq> free_val(free_entries.size(), 0);
    FlaggedComplex nf = ruling_differential(x, r, f);
    for (;;) {
        FqMatrix a(n, n, f);
        for (int i = 0; i < n; ++i) a.set(i, i, diag_val[0]);
        for (size_t t = 0; t < diag_classes.size(); ++t) {
            // all members of the class share the value
            for (int i = 0; i < n; ++i)
                if (diag_rep[i] == diag_classes[t]) a.set(i, i, diag_val[t]);
        }
        for (size_t t = 0; t < free_entries.size(); ++t)
            a.set(free_entries[t].first, free_entries[t].second, free_val[t]);
        for (auto& [src, dst] : tied_to) a.set(src.first, src.second, a.at(dst.first, dst.second));
        if (a * nf.diff != nf.diff * a) throw std::logic_error("enumerate_aut: relation mismatch");
        out.push_back(std::move(a));
        // advance mixed-radix counter: diagonal values over 1..q-1, free over 0..q-1
        size_t t = 0;
        for (; t < diag_val.size(); ++t) {
            if (++diag_val[t] < q) break;
            diag_val[t] = 1;
        }
        if (t < diag_val.size()) continue;
        size_t u = 0;
        for (; u < free_val.size(); ++u) {
            if (++free_val[u] < q) break;
            free_val[u] = 0;
        }
        if (u == free_val.size()) break;
    }
    return out;
}

int hom_dim(const GradedOrderedSet& src, const GradedOrderedSet& dst, int k) {
    int d = 0;
    for (int r = 0; r < dst.size(); ++r)
        for (int c = 0; c < src.size(); ++c)
            if (dst.deg(r) == src.deg(c) + k) ++d;
    return d;
}

int hom_dim_strict(const GradedOrderedSet& x, int k) {
    int d = 0;
    for (int r = 0; r < x.size(); ++r)
        for (int c = r + 1; c < x.size(); ++c)
            if (x.deg(r) == x.deg(c) + k) ++d;
    return d;
}

std::vector<FqMatrix> enumerate_differentials(const GradedOrderedSet& x, const FieldSpec& f) {
    int n = x.size();
    std::vector<std::pair<int, int>> slots;
    for (int r = 0; r < n; ++r)
        for (int c = r + 1; c < n; ++c)
            if (x.deg(r) == x.deg(c) + 1) slots.emplace_back(r, c);
    std::vector<FqMatrix> out;
    std::vector<Fq> val(slots.size(), 0);
    const int q = f.q();
    for (;;) {
        FqMatrix d(n, n, f);
        for (size_t t = 0; t < slots.size(); ++t) d.set(slots[t].first, slots[t].second, val[t]);
        if ((d * d).is_zero()) out.push_back(d);
        size_t t = 0;
        for (; t < val.size(); ++t) {
            if (++val[t] < q) break;
            val[t] = 0;
        }
        if (t == val.size()) break;
    }
    return out;
}

std::vector<FqMatrix> enumerate_flag_automorphisms(const GradedOrderedSet& x, const FieldSpec& f) {
    int n = x.size();
    std::vector<std::pair<int, int>> slots;
    for (int r = 0; r < n; ++r)
        for (int c = r + 1; c < n; ++c)
            if (x.deg(r) == x.deg(c)) slots.emplace_back(r, c);
    std::vector<FqMatrix> out;
    const int q = f.q();
    std::vector<Fq> diag(n, 1), val(slots.size(), 0);
    for (;;) {
        FqMatrix a(n, n, f);
        for (int i = 0; i < n; ++i) a.set(i, i, diag[i]);
        for (size_t t = 0; t < slots.size(); ++t) a.set(slots[t].first, slots[t].second, val[t]);
        out.push_back(std::move(a));
        size_t t = 0;
        for (; t < diag.size(); ++t) {
            if (++diag[t] < q) break;
            diag[t] = 1;
        }
        if (t < diag.size()) continue;
        size_t u = 0;
        for (; u < val.size(); ++u) {
            if (++val[u] < q) break;
            val[u] = 0;
        }
        if (u == val.size()) break;
    }
    return out;
}

}  // namespace flagtangle
