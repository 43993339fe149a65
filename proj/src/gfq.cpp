#include "flagtangle/gfq.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace flagtangle {

namespace {

struct FieldParams {
    int p, deg;
    // modulus coefficients for x^deg, low to high, excluding the leading 1
    std::vector<int> mod;
};

FieldParams params_for(int q) {
    switch (q) {
        case 2: return {2, 1, {}};
        case 3: return {3, 1, {}};
        case 5: return {5, 1, {}};
        case 7: return {7, 1, {}};
        case 4: return {2, 2, {1, 1}};  // x^2 + x + 1
        case 8: return {2, 3, {1, 1, 0}};  // x^3 + x + 1
        case 9: return {3, 2, {1, 0}};  // x^2 + 1
        default: throw std::invalid_argument("FieldSpec: unsupported field size q=" + std::to_string(q));
    }
}

// element <-> coefficient vector in base p (digit i = coefficient of x^i)
std::vector<int> digits(int e, int p, int deg) {
    std::vector<int> d(deg);
    for (int i = 0; i < deg; ++i) {
        d[i] = e % p;
        e /= p;
    }
    return d;
}

int undigits(const std::vector<int>& d, int p) {
    int e = 0;
    for (size_t i = d.size(); i-- > 0;) e = e * p + d[i];
    return e;
}

}  // namespace

FieldSpec::FieldSpec(int q) : q_(q) {
    FieldParams fp = params_for(q);
    add_.resize(q * q);
    mul_.resize(q * q);
    neg_.resize(q);
    inv_.resize(q, 0);
    for (int a = 0; a < q; ++a) {
        auto da = digits(a, fp.p, fp.deg);
        std::vector<int> dn(fp.deg);
        for (int i = 0; i < fp.deg; ++i) dn[i] = (fp.p - da[i]) % fp.p;
        neg_[a] = static_cast<Fq>(undigits(dn, fp.p));
        for (int b = 0; b < q; ++b) {
            auto db = digits(b, fp.p, fp.deg);
            std::vector<int> ds(fp.deg);
            for (int i = 0; i < fp.deg; ++i) ds[i] = (da[i] + db[i]) % fp.p;
            add_[a * q + b] = static_cast<Fq>(undigits(ds, fp.p));
            // polynomial product reduced modulo the irreducible
            std::vector<int> prod(2 * fp.deg - 1, 0);
            for (int i = 0; i < fp.deg; ++i)
                for (int j = 0; j < fp.deg; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % fp.p;
            for (int k = 2 * fp.deg - 2; k >= fp.deg; --k) {
                int c = prod[k];
                if (c == 0) continue;
                prod[k] = 0;
                // x^k = -mod(x) * x^{k-deg}
                for (int i = 0; i < fp.deg; ++i)
                    prod[k - fp.deg + i] = ((prod[k - fp.deg + i] - c * fp.mod[i]) % fp.p + fp.p) % fp.p;
            }
            prod.resize(fp.deg);
            mul_[a * q + b] = static_cast<Fq>(undigits(prod, fp.p));
        }
    }
    for (int a = 1; a < q; ++a)
        for (int b = 1; b < q; ++b)
            if (mul_[a * q + b] == 1) inv_[a] = static_cast<Fq>(b);
    check_axioms();
}

void FieldSpec::check_axioms() const {
    for (int a = 0; a < q_; ++a) {
        if (add_[a * q_ + 0] != a || mul_[a * q_ + 1] != a) throw std::logic_error("field: identity");
        if (a != 0 && mul_[a * q_ + inv_[a]] != 1) throw std::logic_error("field: inverse");
        for (int b = 0; b < q_; ++b) {
            if (add_[a * q_ + b] != add_[b * q_ + a]) throw std::logic_error("field: comm +");
            if (mul_[a * q_ + b] != mul_[b * q_ + a]) throw std::logic_error("field: comm *");
            for (int c = 0; c < q_; ++c) {
                if (add_[add_[a * q_ + b] * q_ + c] != add_[a * q_ + add_[b * q_ + c]])
                    throw std::logic_error("field: assoc +");
                if (mul_[mul_[a * q_ + b] * q_ + c] != mul_[a * q_ + mul_[b * q_ + c]])
                    throw std::logic_error("field: assoc *");
                if (mul_[a * q_ + add_[b * q_ + c]] != add_[mul_[a * q_ + b] * q_ + mul_[a * q_ + c]])
                    throw std::logic_error("field: distributive");
            }
        }
    }
}

const FieldSpec& FieldSpec::get(int q) {
    static std::mutex mtx;
    static std::map<int, std::unique_ptr<FieldSpec>> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(q);
    if (it == cache.end())
        it = cache.emplace(q, std::unique_ptr<FieldSpec>(new FieldSpec(q))).first;
    return *it->second;
}

Fq FieldSpec::inv(Fq a) const {
    if (a == 0) throw std::domain_error("field: inverse of zero");
    return inv_[a];
}

FqMatrix FqMatrix::identity(int n, const FieldSpec& f) {
    FqMatrix m(n, n, f);
    for (int i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

FqMatrix FqMatrix::unit(int rows, int cols, int i, int j, const FieldSpec& f) {
    FqMatrix m(rows, cols, f);
    m.set(i, j, 1);
    return m;
}

bool FqMatrix::is_zero() const {
    for (Fq v : e_)
        if (v != 0) return false;
    return true;
}

FqMatrix FqMatrix::operator*(const FqMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("mat_mul: dimension mismatch");
    FqMatrix r(rows_, o.cols_, *field_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            Fq a = at(i, k);
            if (a == 0) continue;
            for (int j = 0; j < o.cols_; ++j)
                r.set(i, j, field_->add(r.at(i, j), field_->mul(a, o.at(k, j))));
        }
    return r;
}

FqMatrix FqMatrix::operator+(const FqMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("mat_add: shape mismatch");
    FqMatrix r(rows_, cols_, *field_);
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = field_->add(e_[i], o.e_[i]);
    return r;
}

FqMatrix FqMatrix::operator-(const FqMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("mat_sub: shape mismatch");
    FqMatrix r(rows_, cols_, *field_);
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = field_->sub(e_[i], o.e_[i]);
    return r;
}

FqMatrix FqMatrix::scaled(Fq s) const {
    FqMatrix r(rows_, cols_, *field_);
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = field_->mul(e_[i], s);
    return r;
}

int FqMatrix::rank() const {
    FqMatrix m = *this;
    const FieldSpec& f = *field_;
    int rank = 0;
    for (int c = 0; c < cols_ && rank < rows_; ++c) {
        int pivot = -1;
        for (int r = rank; r < rows_; ++r)
            if (m.at(r, c) != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        for (int j = 0; j < cols_; ++j) {
            Fq t = m.at(rank, j);
            m.set(rank, j, m.at(pivot, j));
            m.set(pivot, j, t);
        }
        Fq pin = f.inv(m.at(rank, c));
        for (int j = 0; j < cols_; ++j) m.set(rank, j, f.mul(m.at(rank, j), pin));
        for (int r = 0; r < rows_; ++r) {
            if (r == rank) continue;
            Fq v = m.at(r, c);
            if (v == 0) continue;
            for (int j = 0; j < cols_; ++j)
                m.set(r, j, f.sub(m.at(r, j), f.mul(v, m.at(rank, j))));
        }
        ++rank;
    }
    return rank;
}

FqMatrix FqMatrix::inverse() const {
    if (rows_ != cols_) throw std::invalid_argument("inverse: not square");
    const FieldSpec& f = *field_;
    FqMatrix m = *this;
    FqMatrix inv = identity(rows_, f);
    for (int c = 0; c < cols_; ++c) {
        int pivot = -1;
        for (int r = c; r < rows_; ++r)
            if (m.at(r, c) != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) throw std::domain_error("inverse: singular matrix");
        for (int j = 0; j < cols_; ++j) {
            Fq t = m.at(c, j);
            m.set(c, j, m.at(pivot, j));
            m.set(pivot, j, t);
            t = inv.at(c, j);
            inv.set(c, j, inv.at(pivot, j));
            inv.set(pivot, j, t);
        }
        Fq pin = f.inv(m.at(c, c));
        for (int j = 0; j < cols_; ++j) {
            m.set(c, j, f.mul(m.at(c, j), pin));
            inv.set(c, j, f.mul(inv.at(c, j), pin));
        }
        for (int r = 0; r < rows_; ++r) {
            if (r == c) continue;
            Fq v = m.at(r, c);
            if (v == 0) continue;
            for (int j = 0; j < cols_; ++j) {
                m.set(r, j, f.sub(m.at(r, j), f.mul(v, m.at(c, j))));
                inv.set(r, j, f.sub(inv.at(r, j), f.mul(v, inv.at(c, j))));
            }
        }
    }
    return inv;
}

size_t AffineSolution::count() const {
    size_t n = 1;
    for (size_t i = 0; i < kernel.size(); ++i) n *= static_cast<size_t>(q);
    return n;
}

void AffineSolution::enumerate(const std::function<void(const std::vector<Fq>&)>& visit) const {
    const FieldSpec& f = FieldSpec::get(q);
    std::vector<Fq> coord(kernel.size(), 0);
    std::vector<Fq> x = particular;
    for (;;) {
        visit(x);
        // increment coordinates lexicographically, updating x incrementally
        size_t i = 0;
        for (; i < coord.size(); ++i) {
            // x += kernel[i] (moving coordinate i up by one)
            for (size_t j = 0; j < x.size(); ++j) x[j] = f.add(x[j], kernel[i][j]);
            if (++coord[i] < q) break;
            coord[i] = 0;  // wrapped: x has absorbed q*kernel[i] = 0, continue carry
        }
        if (i == coord.size()) return;
    }
}

std::optional<AffineSolution> solve_affine(const FqMatrix& a, const std::vector<Fq>& b) {
    if (static_cast<int>(b.size()) != a.rows()) throw std::invalid_argument("solve_affine: rhs size");
    const FieldSpec& f = a.field();
    int rows = a.rows(), cols = a.cols();
    // row reduce the augmented matrix
    FqMatrix m(rows, cols + 1, f);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) m.set(r, c, a.at(r, c));
        m.set(r, cols, b[r]);
    }
    std::vector<int> pivot_col;
    int rr = 0;
    for (int c = 0; c < cols && rr < rows; ++c) {
        int pivot = -1;
        for (int r = rr; r < rows; ++r)
            if (m.at(r, c) != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        for (int j = 0; j <= cols; ++j) {
            Fq t = m.at(rr, j);
            m.set(rr, j, m.at(pivot, j));
            m.set(pivot, j, t);
        }
        Fq pin = f.inv(m.at(rr, c));
        for (int j = 0; j <= cols; ++j) m.set(rr, j, f.mul(m.at(rr, j), pin));
        for (int r = 0; r < rows; ++r) {
            if (r == rr) continue;
            Fq v = m.at(r, c);
            if (v == 0) continue;
            for (int j = 0; j <= cols; ++j) m.set(r, j, f.sub(m.at(r, j), f.mul(v, m.at(rr, j))));
        }
        pivot_col.push_back(c);
        ++rr;
    }
    for (int r = rr; r < rows; ++r)
        if (m.at(r, cols) != 0) return std::nullopt;  // inconsistent

    AffineSolution sol;
    sol.q = f.q();
    sol.particular.assign(cols, 0);
    for (int i = 0; i < rr; ++i) sol.particular[pivot_col[i]] = m.at(i, cols);
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivot_col) is_pivot[c] = true;
    for (int c = 0; c < cols; ++c) {
        if (is_pivot[c]) continue;
        std::vector<Fq> v(cols, 0);
        v[c] = 1;
        for (int i = 0; i < rr; ++i) v[pivot_col[i]] = f.neg(m.at(i, c));
        sol.kernel.push_back(std::move(v));
    }
    return sol;
}

std::vector<std::vector<Fq>> nullspace(const FqMatrix& a) {
    auto sol = solve_affine(a, std::vector<Fq>(a.rows(), 0));
    return sol->kernel;
}

}  // namespace flagtangle
