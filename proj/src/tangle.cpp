#include "flagtangle/tangle.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace flagtangle {

GradingResult check_grading(const TangleWord& w) {
    GradingResult out;
    std::vector<int> degs = w.left.degrees;
    out.boundaries.push_back(GradedOrderedSet(degs));
    for (size_t j = 0; j < w.slices.size(); ++j) {
        const Slice& s = w.slices[j];
        int k = static_cast<int>(degs.size());
        int p = s.pos - 1;  // 0-based bottom strand of the slice
        switch (s.kind) {
            case SliceKind::Birth:
                if (p < 0 || p > k)
                    throw GradingError("slice " + std::to_string(j + 1) + ": birth position out of range");
                degs.insert(degs.begin() + p, {s.degree + 1, s.degree});
                break;
            case SliceKind::Death:
                if (p < 0 || p + 1 >= k)
                    throw GradingError("slice " + std::to_string(j + 1) + ": death position out of range");
                if (degs[p] != degs[p + 1] + 1)
                    throw GradingError("slice " + std::to_string(j + 1) +
                                       ": death cusp degrees are not (n+1, n)");
                degs.erase(degs.begin() + p, degs.begin() + p + 2);
                break;
            case SliceKind::Crossing:
                if (p < 0 || p + 1 >= k)
                    throw GradingError("slice " + std::to_string(j + 1) + ": crossing position out of range");
                std::swap(degs[p], degs[p + 1]);
                break;
        }
        out.boundaries.push_back(GradedOrderedSet(degs));
    }
    return out;
}

TangleWord compose_words(const TangleWord& g, const TangleWord& f) {
    if (check_grading(g).right() != f.left) throw GradingError("compose_words: boundary mismatch");
    TangleWord out = g;
    out.slices.insert(out.slices.end(), f.slices.begin(), f.slices.end());
    return out;
}

TangleWord stack_words(const TangleWord& top, const TangleWord& bottom) {
    TangleWord out;
    out.left = concat(bottom.left, top.left);
    out.slices = bottom.slices;
    int offset = check_grading(bottom).right().size();
    for (Slice s : top.slices) {
        s.pos += offset;
        out.slices.push_back(s);
    }
    return out;
}

namespace {

struct SweepState {
    std::vector<int> partner;  // 0-based; every strand paired
    std::vector<int> degs;
};

bool interleaved(int a1, int a2, int b1, int b2) {
    if (a1 > a2) std::swap(a1, a2);
    if (b1 > b2) std::swap(b1, b2);
    return (a1 < b1 && b1 < a2 && a2 < b2) || (b1 < a1 && a1 < b2 && b2 < a2);
}

void sweep(const TangleWord& w, size_t j, SweepState st, SkeinScalar weight,
           std::vector<RulingTerm>& out) {
    if (j == w.slices.size()) {
        std::vector<std::pair<int, int>> pairs;
        for (size_t i = 0; i < st.partner.size(); ++i)
            if (static_cast<int>(i) < st.partner[i]) pairs.emplace_back(static_cast<int>(i), st.partner[i]);
        out.push_back({PartialRuling(std::move(pairs)), std::move(weight)});
        return;
    }
    const Slice& s = w.slices[j];
    int p = s.pos - 1;
    switch (s.kind) {
        case SliceKind::Birth: {
            for (int& q : st.partner)
                if (q >= p) q += 2;
            st.partner.insert(st.partner.begin() + p, {p + 1, p});
            st.degs.insert(st.degs.begin() + p, {s.degree + 1, s.degree});
            sweep(w, j + 1, std::move(st), weight * SkeinScalar::q_minus_one_pow(-1), out);
            return;
        }
        case SliceKind::Death: {
            if (st.partner[p] != p + 1) return;  // dying strands must be mutually paired
            st.partner.erase(st.partner.begin() + p, st.partner.begin() + p + 2);
            for (int& q : st.partner)
                if (q > p + 1) q -= 2;
            st.degs.erase(st.degs.begin() + p, st.degs.begin() + p + 2);
            sweep(w, j + 1, std::move(st), std::move(weight), out);
            return;
        }
        case SliceKind::Crossing: {
            int a = st.partner[p], b = st.partner[p + 1];
            if (a == p + 1) return;  // crossing of mutually paired strands
            int degBot = st.degs[p], degTop = st.degs[p + 1];
            if (degBot != degTop) {
                // graded crossing σ_{m,n}, m entering at the bottom, n at the top
                SkeinScalar factor = degBot < degTop
                                         ? SkeinScalar::q_pow(((degTop - degBot) % 2 == 0) ? 1 : -1)
                                         : SkeinScalar::one();
                std::swap(st.degs[p], st.degs[p + 1]);
                st.partner[a] = p + 1;
                st.partner[b] = p;
                st.partner[p] = b;
                st.partner[p + 1] = a;
                sweep(w, j + 1, std::move(st), weight * factor, out);
                return;
            }
            bool il = interleaved(a, p, b, p + 1);
            // pass-through flips the interleaving: a return when interleaved before,
            // a departure otherwise
            {
                SweepState st2 = st;
                std::swap(st2.degs[p], st2.degs[p + 1]);
                st2.partner[a] = p + 1;
                st2.partner[b] = p;
                st2.partner[p] = b;
                st2.partner[p + 1] = a;
                SkeinScalar factor = il ? SkeinScalar::q_pow(1) : SkeinScalar::one();
                sweep(w, j + 1, std::move(st2), weight * factor, out);
            }
            if (!il) {
                // switch: permitted only when the chords are disjoint or nested
                sweep(w, j + 1, std::move(st), weight * SkeinScalar::q_minus_one_pow(1), out);
            }
            return;
        }
    }
}

}  // namespace

std::vector<RulingTerm> enumerate_tangle_rulings(const TangleWord& w) {
    if (w.left.size() != 0)
        throw GradingError("enumerate_tangle_rulings: left boundary must be empty (bend first)");
    check_grading(w);
    std::vector<RulingTerm> out;
    sweep(w, 0, SweepState{}, SkeinScalar::one(), out);
    return out;
}

void SkeinVector::add_term(const PartialRuling& r, const SkeinScalar& c) {
    if (c.is_zero()) return;
    auto it = terms.find(r);
    if (it == terms.end()) {
        terms.emplace(r, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
}

SkeinVector nu(const TangleWord& w) {
    SkeinVector v;
    v.src = check_grading(w).right();
    for (const RulingTerm& t : enumerate_tangle_rulings(w)) v.add_term(t.boundary, t.weight);
    return v;
}

TangleWord beta_word(const GradedOrderedSet& y) {
    int n = y.size();
    TangleWord w;
    // births innermost-first leave [d_1+1, d_1, d_2+1, d_2, ...]
    for (int i = n - 1; i >= 0; --i) w.slices.push_back(Slice::birth(y.deg(i), 1));
    // route to [d_1+1, ..., d_n+1, d_1, ..., d_n]: tag the k-th pair's endpoints
    // with targets k-1 (opener) and n+k-1 (closer), then selection-sort by target
    std::vector<int> target;
    for (int i = 0; i < n; ++i) {
        target.push_back(i);
        target.push_back(n + i);
    }
    for (int t = 0; t < 2 * n; ++t) {
        int j = t;
        while (target[j] != t) ++j;
        for (; j > t; --j) {
            std::swap(target[j - 1], target[j]);
            w.slices.push_back(Slice::crossing(j));  // 1-based position of the lower strand
        }
    }
    return w;
}

SkeinVector beta_rulings_formula(const GradedOrderedSet& y) {
    int n = y.size();
    SkeinVector v;
    v.src = concat(shift(y, -1), y);
    int degSum = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (y.deg(i) <= y.deg(j)) degSum += ((y.deg(i) - y.deg(j)) % 2 == 0) ? 1 : -1;
    for (const PartialRuling& r : enumerate_partial_rulings(y)) {
        int a = s_statistic(y, r) - degSum;
        SkeinScalar coeff = SkeinScalar::q_minus_one_pow(-n + r.count()) * SkeinScalar::q_pow(a);
        std::vector<std::pair<int, int>> pairs;
        for (const auto& [o, c] : r.pairs) {
            pairs.emplace_back(o, c);          // lower block
            pairs.emplace_back(o + n, c + n);  // upper block
        }
        for (int u : r.unpaired(n)) pairs.emplace_back(u, u + n);
        v.add_term(PartialRuling(std::move(pairs)), coeff);
    }
    return v;
}

TangleWord bend(const TangleWord& w) {
    TangleWord idWord;  // identity on Y[-1], as a slice-free word
    idWord.left = shift(w.left, -1);
    return compose_words(beta_word(w.left), stack_words(w, idWord));
}

std::vector<TangleWord> generator_words(const GradedOrderedSet& x) {
    if (x.size() == 0) return {TangleWord{GradedOrderedSet{}, {}}};
    if (x.size() % 2 != 0) return {};
    std::vector<TangleWord> out;
    for (int j = 1; j < x.size(); ++j) {
        if (x.deg(j) != x.deg(0) - 1) continue;
        GradedOrderedSet rest;
        for (int i = 1; i < x.size(); ++i)
            if (i != j) rest.degrees.push_back(x.deg(i));
        for (const TangleWord& sub : generator_words(rest)) {
            TangleWord w = sub;
            w.slices.push_back(Slice::birth(x.deg(j), 1));
            for (int p = 2; p <= j; ++p) w.slices.push_back(Slice::crossing(p));
            out.push_back(std::move(w));
        }
    }
    return out;
}

std::vector<PartialRuling> generator_ruling_order(const GradedOrderedSet& x) {
    if (x.size() == 0) return {PartialRuling{}};
    if (x.size() % 2 != 0) return {};
    std::vector<PartialRuling> out;
    for (int j = 1; j < x.size(); ++j) {
        if (x.deg(j) != x.deg(0) - 1) continue;
        GradedOrderedSet rest;
        std::vector<int> restIdx;
        for (int i = 1; i < x.size(); ++i)
            if (i != j) {
                rest.degrees.push_back(x.deg(i));
                restIdx.push_back(i);
            }
        for (const PartialRuling& sub : generator_ruling_order(rest)) {
            std::vector<std::pair<int, int>> pairs = {{0, j}};
            for (const auto& [o, c] : sub.pairs) pairs.emplace_back(restIdx[o], restIdx[c]);
            out.push_back(PartialRuling(std::move(pairs)));
        }
    }
    return out;
}

TangleWord dual_v(const TangleWord& w) {
    GradingResult gr = check_grading(w);
    TangleWord out;
    out.left = gr.right();
    for (size_t i = w.slices.size(); i-- > 0;) {
        const Slice& s = w.slices[i];
        switch (s.kind) {
            case SliceKind::Birth:
                out.slices.push_back(Slice::death(s.pos));
                break;
            case SliceKind::Death:
                // the strands consumed at boundary i had degrees (n+1, n)
                out.slices.push_back(Slice::birth(gr.boundaries[i].deg(s.pos), s.pos));
                break;
            case SliceKind::Crossing:
                out.slices.push_back(Slice::crossing(s.pos));
                break;
        }
    }
    return out;
}

TangleWord dual_h(const TangleWord& w) {
    GradingResult gr = check_grading(w);
    TangleWord out;
    out.left.degrees.assign(w.left.degrees.rbegin(), w.left.degrees.rend());
    for (int& d : out.left.degrees) d = -d;
    for (size_t i = 0; i < w.slices.size(); ++i) {
        const Slice& s = w.slices[i];
        switch (s.kind) {
            case SliceKind::Birth: {
                int k = gr.boundaries[i + 1].size();  // strand count including the new pair
                out.slices.push_back(Slice::birth(-s.degree - 1, k - s.pos));
                break;
            }
            case SliceKind::Death: {
                int k = gr.boundaries[i].size();
                out.slices.push_back(Slice::death(k - s.pos));
                break;
            }
            case SliceKind::Crossing: {
                int k = gr.boundaries[i].size();
                out.slices.push_back(Slice::crossing(k - s.pos));
                break;
            }
        }
    }
    return out;
}

namespace {
TangleWord word_on(std::vector<int> left, std::vector<Slice> slices) {
    TangleWord w;
    w.left = GradedOrderedSet(std::move(left));
    w.slices = std::move(slices);
    check_grading(w);
    return w;
}
}  // namespace

std::vector<MoveInstance> move_instances(MoveKind kind, const std::vector<int>& degrees) {
    const SkeinScalar one = SkeinScalar::one();
    std::vector<MoveInstance> out;
    switch (kind) {
        case MoveKind::R1: {
            int n = degrees.at(0);
            MoveInstance a;
            a.name = "R1(" + std::to_string(n) + ")";
            a.lhs = {{one, word_on({n}, {Slice::birth(n - 1, 2), Slice::crossing(1), Slice::death(2)})}};
            a.rhs = {{one, word_on({n}, {})}};
            out.push_back(std::move(a));
            MoveInstance b;
            b.name = "R1flip(" + std::to_string(n) + ")";
            b.lhs = {{one, word_on({n}, {Slice::birth(n, 1), Slice::crossing(2), Slice::death(1)})}};
            b.rhs = {{one, word_on({n}, {})}};
            out.push_back(std::move(b));
            break;
        }
        case MoveKind::R2: {
            int m = degrees.at(0), n = degrees.at(1);
            MoveInstance a;
            a.name = "R2(" + std::to_string(m) + "," + std::to_string(n) + ")";
            a.lhs = {{one, word_on({m, n + 1, n},
                                   {Slice::crossing(1), Slice::crossing(2), Slice::death(1)})}};
            a.rhs = {{one, word_on({m, n + 1, n}, {Slice::death(2)})}};
            out.push_back(std::move(a));
            break;
        }
        case MoveKind::R3: {
            int k = degrees.at(0), n = degrees.at(1), m = degrees.at(2);
            MoveInstance a;
            a.name =
                "R3(" + std::to_string(k) + "," + std::to_string(n) + "," + std::to_string(m) + ")";
            a.lhs = {{one, word_on({k, n, m},
                                   {Slice::crossing(2), Slice::crossing(1), Slice::crossing(2)})}};
            a.rhs = {{one, word_on({k, n, m},
                                   {Slice::crossing(1), Slice::crossing(2), Slice::crossing(1)})}};
            out.push_back(std::move(a));
            break;
        }
        case MoveKind::S1: {
            int m = degrees.at(0), n = degrees.at(1);
            MoveInstance a;
            a.name = "S1(" + std::to_string(m) + "," + std::to_string(n) + ")";
            if (m == n) {
                a.lhs = {{one, word_on({n, n}, {Slice::crossing(1), Slice::crossing(1)})}};
                a.rhs = {{SkeinScalar::q_pow(1), word_on({n, n}, {})},
                         {SkeinScalar::q_minus_one_pow(1), word_on({n, n}, {Slice::crossing(1)})}};
            } else if (m == n + 1) {
                a.lhs = {{one, word_on({n + 1, n}, {})}};
                a.rhs = {{SkeinScalar::q_pow(1),
                          word_on({n + 1, n}, {Slice::crossing(1), Slice::crossing(1)})},
                         {SkeinScalar::q_minus_one_pow(1),
                          word_on({n + 1, n}, {Slice::death(1), Slice::birth(n, 1)})}};
            } else {
                a.lhs = {{one, word_on({m, n}, {Slice::crossing(1), Slice::crossing(1)})}};
                a.rhs = {{SkeinScalar::q_pow(((m - n) % 2 == 0) ? 1 : -1), word_on({m, n}, {})}};
            }
            out.push_back(std::move(a));
            break;
        }
        case MoveKind::S2: {
            int n = degrees.at(0);
            MoveInstance a;
            a.name = "S2(" + std::to_string(n) + ")";
            a.lhs = {{one, word_on({}, {Slice::birth(n, 1), Slice::death(1)})}};
            a.rhs = {{SkeinScalar::q_minus_one_pow(-1), word_on({}, {})}};
            out.push_back(std::move(a));
            break;
        }
        case MoveKind::S3: {
            // the zigzag strand (λ_n ⊗ 1_{n-1}) ∘ (1_{n+1} ⊗ ρ_{n-1}); the closed
            // one-crossing eye admits no grading at all, so the open form is the move
            int n = degrees.at(0);
            MoveInstance a;
            a.name = "S3(" + std::to_string(n) + ")";
            a.lhs = {{one, word_on({n - 1}, {Slice::birth(n, 1), Slice::death(2)})}};
            a.rhs = {};
            out.push_back(std::move(a));
            break;
        }
    }
    return out;
}

// ---- DSL ----

namespace {
std::string strip_comments(const std::string& text) {
    std::string out;
    bool comment = false;
    for (char ch : text) {
        if (ch == '#') comment = true;
        if (ch == '\n') comment = false;
        if (!comment) out.push_back(ch);
    }
    return out;
}

void skip_ws(const std::string& s, size_t& i) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
}

bool consume(const std::string& s, size_t& i, const std::string& tok) {
    skip_ws(s, i);
    if (s.compare(i, tok.size(), tok) == 0) {
        i += tok.size();
        return true;
    }
    return false;
}

int parse_int(const std::string& s, size_t& i) {
    skip_ws(s, i);
    size_t start = i;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == start || !std::isdigit(static_cast<unsigned char>(s[i - 1])))
        throw GradingError("parse: expected an integer at offset " + std::to_string(start));
    return std::stoi(s.substr(start, i - start));
}
}  // namespace

TangleWord parse_tangle(const std::string& text) {
    std::string s = strip_comments(text);
    size_t i = 0;
    TangleWord w;
    if (!consume(s, i, "left")) throw GradingError("parse: expected 'left:'");
    if (!consume(s, i, ":")) throw GradingError("parse: expected ':' after 'left'");
    if (!consume(s, i, "[")) throw GradingError("parse: expected '['");
    skip_ws(s, i);
    if (!consume(s, i, "]")) {
        for (;;) {
            w.left.degrees.push_back(parse_int(s, i));
            if (consume(s, i, ",")) continue;
            if (consume(s, i, "]")) break;
            throw GradingError("parse: expected ',' or ']' in the left boundary");
        }
    }
    if (!consume(s, i, "slices")) throw GradingError("parse: expected 'slices:'");
    if (!consume(s, i, ":")) throw GradingError("parse: expected ':' after 'slices'");
    while (i < s.size()) {
        skip_ws(s, i);
        if (i >= s.size()) break;
        char c = s[i];
        if (c == ';') {
            ++i;
            continue;
        }
        if (c == 'B') {
            ++i;
            if (!consume(s, i, "(")) throw GradingError("parse: expected '(' after B");
            int deg = parse_int(s, i);
            if (!consume(s, i, ")")) throw GradingError("parse: expected ')'");
            if (!consume(s, i, "@")) throw GradingError("parse: expected '@'");
            w.slices.push_back(Slice::birth(deg, parse_int(s, i)));
        } else if (c == 'D') {
            ++i;
            if (!consume(s, i, "@")) throw GradingError("parse: expected '@' after D");
            w.slices.push_back(Slice::death(parse_int(s, i)));
        } else if (c == 'X') {
            ++i;
            if (!consume(s, i, "@")) throw GradingError("parse: expected '@' after X");
            w.slices.push_back(Slice::crossing(parse_int(s, i)));
        } else {
            throw GradingError(std::string("parse: unexpected character '") + c + "'");
        }
    }
    return w;
}

std::string format_word(const TangleWord& w) {
    std::ostringstream os;
    os << "left: [";
    for (int i = 0; i < w.left.size(); ++i) os << (i ? ", " : "") << w.left.deg(i);
    os << "]\nslices:";
    bool first = true;
    for (const Slice& s : w.slices) {
        os << (first ? " " : " ; ");
        first = false;
        switch (s.kind) {
            case SliceKind::Birth: os << "B(" << s.degree << ")@" << s.pos; break;
            case SliceKind::Death: os << "D@" << s.pos; break;
            case SliceKind::Crossing: os << "X@" << s.pos; break;
        }
    }
    os << "\n";
    return os.str();
}

}  // namespace flagtangle
