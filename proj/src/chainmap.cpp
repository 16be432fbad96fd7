#include "eqh/chainmap.hpp"

#include <stdexcept>

namespace eqh {

void ChainMap::accumulate(int k, size_t idx, const Integer& c, Vec& out) const {
    if (!target->has(k) || c.is_zero()) return;
    const FreeMackeyModule& sm = source->module(k);
    const FreeMackeyModule& tm = target->module(k);
    size_t b = sm.cell_of(idx);
    long i = static_cast<long>(idx - sm.offset(b));
    const Vec& img = images[k - source->lo][b];
    for (size_t e = 0; e < img.size(); ++e)
        if (!img[e].is_zero()) out[tm.act(e, i)] += c * img[e];
}

Vec ChainMap::apply(int k, const Vec& x) const {
    Vec out(target->rank(k));
    for (size_t i = 0; i < x.size(); ++i) accumulate(k, i, x[i], out);
    return out;
}

namespace {

struct Affine {
    Vec particular;
    IntMatrix kernel;  // columns
};

// All integer solutions of m x = b, or nothing.
std::optional<Affine> affine_solutions(const IntMatrix& m, const Vec& b) {
    size_t n = m.cols();
    if (m.rows() == 0) return Affine{Vec(n), IntMatrix::identity(n)};
    SnfResult s = smith(m, {true, true, false, false});
    Vec ub = s.U * b;
    Vec y(n);
    for (size_t i = 0; i < ub.size(); ++i) {
        if (i < s.rank) {
            const Integer& d = s.D(i, i);
            if (!(ub[i] % d).is_zero()) return std::nullopt;
            y[i] = ub[i] / d;
        } else if (!ub[i].is_zero()) {
            return std::nullopt;
        }
    }
    Affine a;
    a.particular = s.V * y;
    a.kernel = s.V.cols_range(s.rank, n);
    return a;
}

struct Step {
    size_t n_phi = 0, n_t = 0;
    Vec particular;   // (phi, t, w)
    IntMatrix kernel;  // columns restricted to a basis of the phi-projection
    // unknown layout for phi: per cell, level basis of the stabilizer
    std::vector<std::vector<std::vector<size_t>>> cell_basis;
    std::vector<size_t> cell_offset;
};

}  // namespace

ChainMap solve_comparison(const ComplexPtr& sp, const ComplexPtr& tp) {
    const ChainComplex& s = *sp;
    const ChainComplex& t = *tp;
    if (s.top_degree != t.top_degree) throw std::invalid_argument("solve_comparison: fundamental degrees differ");
    std::vector<Step> steps;
    for (int k = s.lo; k <= s.hi; ++k) {
        Step st;
        const FreeMackeyModule& sm = s.module(k);
        size_t ncell = sm.size();
        st.cell_offset.resize(ncell + 1, 0);
        st.cell_basis.resize(ncell);
        if (t.has(k)) {
            for (size_t b = 0; b < ncell; ++b) {
                st.cell_basis[b] = t.module(k).level_basis(sm.basis()[b].orbit);
                st.cell_offset[b + 1] = st.cell_offset[b] + st.cell_basis[b].size();
            }
        }
        st.n_phi = st.cell_offset[ncell];
        const Step* prev = steps.empty() ? nullptr : &steps.back();
        st.n_t = prev ? prev->kernel.cols() : 0;
        bool norm = (k == s.top_degree);
        size_t n_w = norm ? t.rank(k + 1) : 0;
        size_t rows_d = t.has(k - 1) ? ncell * t.rank(k - 1) : 0;
        size_t rows_n = norm ? t.rank(k) : 0;
        size_t ncols = st.n_phi + st.n_t + n_w;
        IntMatrix m(rows_d + rows_n, ncols);
        Vec rhs(rows_d + rows_n);
        if (rows_d) {
            size_t tr = t.rank(k - 1);
            IntMatrix dt = t.d(k);
            // d_T phi_k(e_b)
            for (size_t b = 0; b < ncell; ++b)
                for (size_t j = 0; j < st.cell_basis[b].size(); ++j)
                    for (size_t e : st.cell_basis[b][j])
                        for (size_t r = 0; r < tr; ++r)
                            if (!dt(r, e).is_zero()) m(b * tr + r, st.cell_offset[b] + j) += dt(r, e);
            // - phi_{k-1}(d_S e_b), with phi_{k-1} = p + K t
            if (prev && s.has(k - 1)) {
                IntMatrix ds = s.d(k);
                const FreeMackeyModule& pm = s.module(k - 1);
                const FreeMackeyModule& tm = t.module(k - 1);
                for (size_t b = 0; b < ncell; ++b) {
                    size_t col = sm.offset(b);
                    for (size_t r = 0; r < ds.rows(); ++r) {
                        const Integer& c = ds(r, col);
                        if (c.is_zero()) continue;
                        size_t pb = pm.cell_of(r);
                        long shift = static_cast<long>(r - pm.offset(pb));
                        for (size_t j = 0; j < prev->cell_basis[pb].size(); ++j) {
                            size_t var = prev->cell_offset[pb] + j;
                            // g^shift applied to orbit sum j, coefficient c
                            for (size_t e : prev->cell_basis[pb][j]) {
                                size_t row = b * tr + tm.act(e, shift);
                                rhs[row] += c * prev->particular[var];
                                for (size_t q = 0; q < st.n_t; ++q)
                                    if (!prev->kernel(var, q).is_zero())
                                        m(row, st.n_phi + q) -= c * prev->kernel(var, q);
                            }
                        }
                    }
                }
            }
        }
        if (norm) {
            // phi(z_S) - d w = z_T
            const Vec& z = s.fundamental;
            IntMatrix dt1 = t.d(k + 1);
            for (size_t idx = 0; idx < z.size(); ++idx) {
                if (z[idx].is_zero()) continue;
                size_t b = sm.cell_of(idx);
                long shift = static_cast<long>(idx - sm.offset(b));
                for (size_t j = 0; j < st.cell_basis[b].size(); ++j)
                    for (size_t e : st.cell_basis[b][j])
                        m(rows_d + t.module(k).act(e, shift), st.cell_offset[b] + j) += z[idx];
            }
            for (size_t r = 0; r < rows_n; ++r) {
                rhs[rows_d + r] += t.fundamental[r];
                for (size_t q = 0; q < n_w; ++q) m(rows_d + r, st.n_phi + st.n_t + q) -= dt1(r, q);
            }
        }
        auto sol = affine_solutions(m, rhs);
        if (!sol) throw std::logic_error("solve_comparison: no equivariant chain map in degree " + std::to_string(k));
        st.particular = sol->particular;
        // keep a basis of the phi-projection of the kernel
        IntMatrix proj = sol->kernel.rows_range(0, st.n_phi);
        if (proj.cols() == 0 || st.n_phi == 0) {
            st.kernel = IntMatrix(ncols, 0);
        } else {
            SnfResult ps = smith(proj, {false, true, false, false});
            st.kernel = (sol->kernel * ps.V).cols_range(0, ps.rank);
        }
        steps.push_back(std::move(st));
    }
    ChainMap phi;
    phi.source = sp;
    phi.target = tp;
    phi.images.resize(steps.size());
    Vec param;  // parameters of the current step
    for (int k = s.hi; k >= s.lo; --k) {
        Step& st = steps[k - s.lo];
        Vec x = st.particular;
        if (!param.empty()) {
            Vec add = st.kernel * param;
            for (size_t i = 0; i < x.size(); ++i) x[i] += add[i];
        }
        const FreeMackeyModule& sm = s.module(k);
        auto& imgs = phi.images[k - s.lo];
        imgs.assign(sm.size(), Vec(t.rank(k)));
        for (size_t b = 0; b < sm.size() && t.has(k); ++b)
            for (size_t j = 0; j < st.cell_basis[b].size(); ++j) {
                const Integer& c = x[st.cell_offset[b] + j];
                if (c.is_zero()) continue;
                for (size_t e : st.cell_basis[b][j]) imgs[b][e] += c;
            }
        param = Vec(x.begin() + st.n_phi, x.begin() + st.n_phi + st.n_t);
    }
    return phi;
}

}  // namespace eqh
