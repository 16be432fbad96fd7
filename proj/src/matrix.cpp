#include "eqh/matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace eqh {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    e_.reserve(rows_ * cols_);
    for (auto& r : rows) {
        if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
        for (long long v : r) e_.emplace_back(v);
    }
}

IntMatrix IntMatrix::identity(size_t n) {
    IntMatrix m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Vec IntMatrix::column(size_t j) const {
    Vec v(rows_);
    for (size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

Vec IntMatrix::row_vec(size_t i) const { return Vec(row(i), row(i) + cols_); }

void IntMatrix::set_column(size_t j, const Vec& v) {
    for (size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

IntMatrix IntMatrix::rows_range(size_t begin, size_t end) const {
    IntMatrix m(end - begin, cols_);
    for (size_t i = begin; i < end; ++i)
        for (size_t j = 0; j < cols_; ++j) m(i - begin, j) = (*this)(i, j);
    return m;
}

IntMatrix IntMatrix::cols_range(size_t begin, size_t end) const {
    IntMatrix m(rows_, end - begin);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = begin; j < end; ++j) m(i, j - begin) = (*this)(i, j);
    return m;
}

bool IntMatrix::is_zero() const {
    for (auto& x : e_)
        if (!x.is_zero()) return false;
    return true;
}

void IntMatrix::swap_rows(size_t a, size_t b) {
    if (a == b) return;
    for (size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(size_t a, size_t b) {
    if (a == b) return;
    for (size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row(size_t dst, size_t src, const Integer& f) {
    if (f.is_zero()) return;
    Integer* d = row(dst);
    const Integer* s = row(src);
    for (size_t j = 0; j < cols_; ++j)
        if (!s[j].is_zero()) d[j] += f * s[j];
}

void IntMatrix::add_col(size_t dst, size_t src, const Integer& f) {
    if (f.is_zero()) return;
    for (size_t i = 0; i < rows_; ++i) {
        const Integer& s = (*this)(i, src);
        if (!s.is_zero()) (*this)(i, dst) += f * s;
    }
}

void IntMatrix::negate_row(size_t i) {
    for (size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
}

void IntMatrix::negate_col(size_t j) {
    for (size_t i = 0; i < rows_; ++i) (*this)(i, j) = -(*this)(i, j);
}

std::string IntMatrix::str() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < rows_; ++i) {
        if (i) os << ",";
        os << "[";
        for (size_t j = 0; j < cols_; ++j) {
            if (j) os << ",";
            os << (*this)(i, j);
        }
        os << "]";
    }
    os << "]";
    return os.str();
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix product: dimension mismatch");
    IntMatrix c(a.rows(), b.cols());
    for (size_t i = 0; i < a.rows(); ++i) {
        Integer* crow = c.row(i);
        for (size_t k = 0; k < a.cols(); ++k) {
            const Integer& x = a(i, k);
            if (x.is_zero()) continue;
            const Integer* brow = b.row(k);
            for (size_t j = 0; j < b.cols(); ++j)
                if (!brow[j].is_zero()) crow[j] += x * brow[j];
        }
    }
    return c;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix sum: dimension mismatch");
    IntMatrix c = a;
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) c(i, j) += b(i, j);
    return c;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix difference: dimension mismatch");
    IntMatrix c = a;
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) c(i, j) -= b(i, j);
    return c;
}

Vec operator*(const IntMatrix& a, const Vec& v) {
    if (a.cols() != v.size()) throw std::invalid_argument("matrix-vector product: dimension mismatch");
    Vec r(a.rows());
    for (size_t j = 0; j < a.cols(); ++j) {
        if (v[j].is_zero()) continue;
        for (size_t i = 0; i < a.rows(); ++i)
            if (!a(i, j).is_zero()) r[i] += a(i, j) * v[j];
    }
    return r;
}

IntMatrix hstack(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("hstack: row mismatch");
    IntMatrix c(a.rows(), a.cols() + b.cols());
    for (size_t i = 0; i < a.rows(); ++i) {
        for (size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
        for (size_t j = 0; j < b.cols(); ++j) c(i, a.cols() + j) = b(i, j);
    }
    return c;
}

IntMatrix vstack(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.cols()) throw std::invalid_argument("vstack: column mismatch");
    IntMatrix c(a.rows() + b.rows(), a.cols());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
    for (size_t i = 0; i < b.rows(); ++i)
        for (size_t j = 0; j < b.cols(); ++j) c(a.rows() + i, j) = b(i, j);
    return c;
}

IntMatrix reduce_mod(const IntMatrix& a, const Integer& q) {
    IntMatrix c = a;
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) c(i, j) = mod_floor(a(i, j), q);
    return c;
}

bool is_zero(const Vec& v) {
    for (auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

Vec add(const Vec& a, const Vec& b) {
    Vec r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

Vec sub(const Vec& a, const Vec& b) {
    Vec r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

Vec scale(const Vec& a, const Integer& f) {
    Vec r = a;
    for (auto& x : r) x *= f;
    return r;
}

std::string vec_str(const Vec& v) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ")";
    return os.str();
}

Vec SnfResult::diagonal() const {
    Vec d;
    for (size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
    return d;
}

namespace {

struct Reducer {
    IntMatrix a;
    SnfOptions opt;
    IntMatrix U, Uinv, V, Vinv;

    void row_add(size_t dst, size_t src, const Integer& f) {
        a.add_row(dst, src, f);
        if (opt.want_u) U.add_row(dst, src, f);
        if (opt.want_u_inverse) Uinv.add_col(src, dst, -f);
    }
    void col_add(size_t dst, size_t src, const Integer& f) {
        a.add_col(dst, src, f);
        if (opt.want_v) V.add_col(dst, src, f);
        if (opt.want_v_inverse) Vinv.add_row(src, dst, -f);
    }
    void row_swap(size_t x, size_t y) {
        if (x == y) return;
        a.swap_rows(x, y);
        if (opt.want_u) U.swap_rows(x, y);
        if (opt.want_u_inverse) Uinv.swap_cols(x, y);
    }
    void col_swap(size_t x, size_t y) {
        if (x == y) return;
        a.swap_cols(x, y);
        if (opt.want_v) V.swap_cols(x, y);
        if (opt.want_v_inverse) Vinv.swap_rows(x, y);
    }
    void row_negate(size_t i) {
        a.negate_row(i);
        if (opt.want_u) U.negate_row(i);
        if (opt.want_u_inverse) Uinv.negate_col(i);
    }

    // Moves the smallest nonzero entry of row t / column t (from t on) to (t,t).
    bool pivot_in_cross(size_t t) {
        size_t bi = t, bj = t;
        Integer best;
        bool found = false;
        auto consider = [&](size_t i, size_t j) {
            const Integer& x = a(i, j);
            if (x.is_zero()) return;
            Integer ax = abs(x);
            if (!found || ax < best) {
                best = ax;
                bi = i;
                bj = j;
                found = true;
            }
        };
        consider(t, t);
        for (size_t i = t + 1; i < a.rows(); ++i) consider(i, t);
        for (size_t j = t + 1; j < a.cols(); ++j) consider(t, j);
        if (!found) return false;
        row_swap(t, bi);
        col_swap(t, bj);
        return true;
    }

    void run() {
        size_t m = a.rows(), n = a.cols();
        size_t t = 0;
        while (t < m && t < n) {
            // global pivot: smallest nonzero in the remaining block
            size_t bi = m, bj = n;
            Integer best;
            for (size_t i = t; i < m; ++i) {
                const Integer* r = a.row(i);
                for (size_t j = t; j < n; ++j) {
                    if (r[j].is_zero()) continue;
                    if (bi == m || abs(r[j]) < best) {
                        best = abs(r[j]);
                        bi = i;
                        bj = j;
                        if (best.is_unit()) break;
                    }
                }
                if (bi != m && best.is_unit()) break;
            }
            if (bi == m) break;
            row_swap(t, bi);
            col_swap(t, bj);
            for (;;) {
                bool clean = true;
                for (size_t i = t + 1; i < m; ++i) {
                    if (a(i, t).is_zero()) continue;
                    Integer q = a(i, t) / a(t, t);
                    row_add(i, t, -q);
                    if (!a(i, t).is_zero()) clean = false;
                }
                for (size_t j = t + 1; j < n; ++j) {
                    if (a(t, j).is_zero()) continue;
                    Integer q = a(t, j) / a(t, t);
                    col_add(j, t, -q);
                    if (!a(t, j).is_zero()) clean = false;
                }
                if (!clean) {
                    pivot_in_cross(t);
                    continue;
                }
                const Integer& p = a(t, t);
                bool fixed = false;
                if (!p.is_unit()) {
                    for (size_t i = t + 1; i < m && !fixed; ++i) {
                        const Integer* r = a.row(i);
                        for (size_t j = t + 1; j < n; ++j) {
                            if (!r[j].is_zero() && !(r[j] % p).is_zero()) {
                                row_add(t, i, Integer(1));
                                fixed = true;
                                break;
                            }
                        }
                    }
                }
                if (!fixed) break;
                pivot_in_cross(t);
            }
            if (a(t, t).sign() < 0) row_negate(t);
            ++t;
        }
    }
};

}  // namespace

SnfResult smith(const IntMatrix& a, SnfOptions opt) {
    Reducer r{a, opt, {}, {}, {}, {}};
    if (opt.want_u) r.U = IntMatrix::identity(a.rows());
    if (opt.want_u_inverse) r.Uinv = IntMatrix::identity(a.rows());
    if (opt.want_v) r.V = IntMatrix::identity(a.cols());
    if (opt.want_v_inverse) r.Vinv = IntMatrix::identity(a.cols());
    r.run();
    SnfResult res;
    res.D = std::move(r.a);
    res.U = std::move(r.U);
    res.Uinv = std::move(r.Uinv);
    res.V = std::move(r.V);
    res.Vinv = std::move(r.Vinv);
    size_t k = 0;
    while (k < res.D.rows() && k < res.D.cols() && !res.D(k, k).is_zero()) ++k;
    res.rank = k;
    return res;
}

std::optional<Vec> solve(const IntMatrix& a, const Vec& b) {
    if (b.size() != a.rows()) throw std::invalid_argument("solve: right-hand side has wrong length");
    if (is_zero(b)) return Vec(a.cols());
    SnfResult s = smith(a, {true, true, false, false});
    Vec c = s.U * b;
    Vec y(a.cols());
    for (size_t i = 0; i < c.size(); ++i) {
        if (i < s.rank) {
            const Integer& d = s.D(i, i);
            if (!(c[i] % d).is_zero()) return std::nullopt;
            y[i] = c[i] / d;
        } else if (!c[i].is_zero()) {
            return std::nullopt;
        }
    }
    return s.V * y;
}

IntMatrix kernel_basis(const IntMatrix& a) {
    SnfResult s = smith(a, {false, true, false, false});
    return s.V.cols_range(s.rank, a.cols());
}

size_t rank(const IntMatrix& a) { return smith(a, {false, false, false, false}).rank; }

Integer determinant(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
    size_t n = m.rows();
    if (n == 0) return 1;
    IntMatrix a = m;
    Integer prev = 1;
    int sgn = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k).is_zero()) {
            size_t piv = k + 1;
            while (piv < n && a(piv, k).is_zero()) ++piv;
            if (piv == n) return 0;
            a.swap_rows(k, piv);
            sgn = -sgn;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
        prev = a(k, k);
    }
    return sgn > 0 ? a(n - 1, n - 1) : -a(n - 1, n - 1);
}

Vec HomologyGroup::reduce(Vec coords) const {
    for (size_t i = 0; i < torsion.size() && i < coords.size(); ++i) coords[i] = mod_floor(coords[i], torsion[i]);
    return coords;
}

Vec HomologyGroup::express(const Vec& cycle) const {
    if (cycle.size() != ambient_) throw std::invalid_argument("express: vector has wrong length");
    return reduce(proj_ * cycle);
}

void HomologyGroup::negate_generator(size_t i) {
    generators[i] = scale(generators[i], Integer(-1));
    proj_.negate_row(i);
}

std::string HomologyGroup::describe() const {
    if (generators.empty()) return "0";
    std::string s;
    for (size_t i = 0; i < free_rank; ++i) s += (s.empty() ? "" : "+") + std::string("Z");
    for (auto& t : torsion) s += (s.empty() ? "" : "+") + std::string("Z/") + t.str();
    return s;
}

HomologyGroup homology(const IntMatrix& d_in, const IntMatrix& d_out) {
    size_t n = d_out.cols();
    if (d_in.rows() != n) throw std::invalid_argument("homology: d_in and d_out are not composable");
    if (!(d_out * d_in).is_zero()) throw std::invalid_argument("homology: d_out * d_in != 0");
    HomologyGroup h;
    h.ambient_ = n;
    SnfResult s1 = smith(d_out, {false, true, false, true});
    size_t r = s1.rank, f = n - r;
    IntMatrix K = s1.V.cols_range(r, n);
    IntMatrix P = s1.Vinv.rows_range(r, n);
    IntMatrix R = P * d_in;
    SnfResult s2 = smith(R, {true, false, true, false});
    size_t rr = s2.rank;
    std::vector<size_t> keep;
    for (size_t i = 0; i < rr; ++i) {
        const Integer& d = s2.D(i, i);
        if (!d.is_unit()) {
            keep.push_back(i);
            h.torsion.push_back(d);
        }
    }
    for (size_t i = rr; i < f; ++i) keep.push_back(i);
    h.free_rank = f - rr;
    IntMatrix UP = s2.U * P;
    h.proj_ = IntMatrix(keep.size(), n);
    for (size_t a = 0; a < keep.size(); ++a) {
        for (size_t j = 0; j < n; ++j) h.proj_(a, j) = UP(keep[a], j);
        h.generators.push_back(K * s2.Uinv.column(keep[a]));
    }
    return h;
}

}  // namespace eqh
