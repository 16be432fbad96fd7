#include "eqh/massey.hpp"

#include <stdexcept>

namespace eqh {

namespace {

Vec unit_vector(size_t n, size_t i) {
    Vec v(n);
    v[i] = 1;
    return v;
}

GradingPoint at_degree(const GradingPoint& p, int k) {
    GradingPoint q = p;
    q.degree = k;
    return q;
}

}  // namespace

bool MasseyResult::in_indeterminacy(GreenEngine& e, const HomologyElement& d) const {
    const LevelHomology& g = e.level_group(d.point, d.level);
    size_t s = g.size(), nt = g.group.torsion.size();
    if (s == 0) return true;
    IntMatrix m(s, indeterminacy.size() + nt);
    for (size_t j = 0; j < indeterminacy.size(); ++j)
        for (size_t i = 0; i < s; ++i) m(i, j) = indeterminacy[j].coords[i];
    for (size_t i = 0; i < nt; ++i) m(i, indeterminacy.size() + i) = g.group.torsion[i];
    return solve(m, d.coords).has_value();
}

bool MasseyResult::contains(GreenEngine& e, const HomologyElement& c) const {
    if (!defined || !(c.point == representative.point) || c.level != representative.level) return false;
    return in_indeterminacy(e, e.add(c, e.scale(representative, -1)));
}

ComplexPtr MasseyEngine::pair_model(const GradingPoint& p, const GradingPoint& q) {
    auto key = std::make_pair(p.rep, q.rep);
    auto it = pairs_.find(key);
    if (it != pairs_.end()) return it->second;
    return pairs_[key] = box_complex(e_.model(p.rep), e_.model(q.rep));
}

Vec MasseyEngine::tensor(const GradingPoint& p, const Vec& a, const GradingPoint& q, const Vec& b) {
    ComplexPtr c = pair_model(p, q);
    int k = p.degree + q.degree;
    Vec out(c->rank(k));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (size_t j = 0; j < b.size(); ++j)
            if (!b[j].is_zero()) out[c->tensor_index(k, p.degree, i, j)] += a[i] * b[j];
    }
    return out;
}

std::optional<Vec> MasseyEngine::bounding_chain(const GradingPoint& p, const Vec& a, const GradingPoint& q,
                                                const Vec& b, SubgroupIndex h) {
    ComplexPtr c = pair_model(p, q);
    int k = p.degree + q.degree;
    Vec target = tensor(p, a, q, b);
    if (!c->has(k + 1)) {
        if (is_zero(reduce_coefficients(target))) return Vec{};
        return std::nullopt;
    }
    const FreeMackeyModule& src = c->module(k + 1);
    IntMatrix d = c->d_level(k + 1, h);
    Vec tl = c->module(k).to_level(target, h);
    const Integer& q_mod = e_.coefficients().modulus;
    IntMatrix a_mat = d;
    if (!q_mod.is_zero()) {
        // d s + q w = target
        IntMatrix qi(d.rows(), d.rows());
        for (size_t i = 0; i < d.rows(); ++i) qi(i, i) = q_mod;
        a_mat = hstack(d, qi);
    }
    auto sol = solve(a_mat, tl);
    if (!sol) return std::nullopt;
    Vec sl(sol->begin(), sol->begin() + d.cols());
    return src.from_level(sl, h);
}

Vec MasseyEngine::reduce_coefficients(const Vec& v) const {
    const Integer& q = e_.coefficients().modulus;
    if (q.is_zero()) return v;
    Vec out = v;
    for (auto& x : out) {
        x = x % q;
        if (x.sign() < 0) x += q;
    }
    return out;
}

bool MasseyEngine::bounds(const GradingPoint& p, const Vec& a, const GradingPoint& q, const Vec& b, const Vec& s) {
    ComplexPtr c = pair_model(p, q);
    int k = p.degree + q.degree;
    Vec target = tensor(p, a, q, b);
    Vec ds = c->has(k + 1) && !s.empty() ? c->apply_d(k + 1, s) : Vec(target.size());
    return is_zero(reduce_coefficients(sub(ds, target)));
}

std::vector<Vec> MasseyEngine::fixed_cycles(const GradingPoint& p, const GradingPoint& q, int k, SubgroupIndex h) {
    ComplexPtr c = pair_model(p, q);
    std::vector<Vec> out;
    if (!c->has(k)) return out;
    IntMatrix d = c->d_level(k, h);
    const Integer& q_mod = e_.coefficients().modulus;
    size_t n = d.cols();
    IntMatrix a_mat = d;
    if (!q_mod.is_zero() && d.rows()) {
        IntMatrix qi(d.rows(), d.rows());
        for (size_t i = 0; i < d.rows(); ++i) qi(i, i) = q_mod;
        a_mat = hstack(d, qi);
    }
    IntMatrix ker = d.rows() ? kernel_basis(a_mat) : IntMatrix::identity(n);
    for (size_t j = 0; j < ker.cols(); ++j) {
        Vec col = ker.column(j);
        Vec l(col.begin(), col.begin() + n);
        if (!is_zero(l)) out.push_back(c->module(k).from_level(l, h));
    }
    return out;
}

Vec MasseyEngine::pair_product(const GradingPoint& p, const GradingPoint& q, int k, const Vec& chain) {
    ComplexPtr c = pair_model(p, q);
    ComplexPtr target = e_.model((p + q).rep);
    Vec out(target->rank(k));
    if (chain.empty()) return out;
    const auto& entries = c->tensor->entries[k - c->lo];
    const auto& blocks = c->tensor->blocks[k - c->lo];
    for (size_t i = 0; i < chain.size(); ++i) {
        if (chain[i].is_zero()) continue;
        const auto& en = entries[i];
        const TensorBlock& bl = blocks[en.block];
        ComplexPtr l = e_.model(p.rep), r = e_.model(q.rep);
        Vec prod = e_.multiply_chains(at_degree(p, bl.left_degree), unit_vector(l->rank(bl.left_degree), en.left),
                                      at_degree(q, bl.right_degree), unit_vector(r->rank(bl.right_degree), en.right));
        for (size_t j = 0; j < out.size(); ++j) out[j] += chain[i] * prod[j];
    }
    return out;
}

HomologyElement MasseyEngine::assemble(const HomologyElement& x, const HomologyElement& y, const HomologyElement& z,
                                       const Vec& s, const Vec& t) {
    SubgroupIndex h = x.level;
    GradingPoint pxy = x.point + y.point, pyz = y.point + z.point;
    GradingPoint out = pxy + z.point;
    out.degree += 1;
    ComplexPtr target = e_.model(out.rep);
    if (!target->has(out.degree)) return e_.zero(out, h);
    Vec xr = e_.chain_representative(x), zr = e_.chain_representative(z);
    int ks = pxy.degree + 1;
    // s * z
    Vec sz = e_.multiply_chains(at_degree(pxy, ks), pair_product(x.point, y.point, ks, s), z.point, zr);
    // x * t through mu(mu(x, b), c)
    Vec xt(target->rank(out.degree));
    int kt = pyz.degree + 1;
    ComplexPtr pm = pair_model(y.point, z.point);
    if (pm->has(kt) && !t.empty()) {
        const auto& entries = pm->tensor->entries[kt - pm->lo];
        const auto& blocks = pm->tensor->blocks[kt - pm->lo];
        ComplexPtr my = e_.model(y.point.rep), mz = e_.model(z.point.rep);
        std::map<std::pair<int, uint32_t>, Vec> xb;  // mu(x, e_b) by (degree, index)
        for (size_t i = 0; i < t.size(); ++i) {
            if (t[i].is_zero()) continue;
            const auto& en = entries[i];
            int db = blocks[en.block].left_degree, dc = blocks[en.block].right_degree;
            auto key = std::make_pair(db, en.left);
            auto it = xb.find(key);
            if (it == xb.end())
                it = xb.emplace(key, e_.multiply_chains(x.point, xr, at_degree(y.point, db),
                                                        unit_vector(my->rank(db), en.left)))
                         .first;
            GradingPoint pb = x.point + at_degree(y.point, db);
            Vec v = e_.multiply_chains(pb, it->second, at_degree(z.point, dc), unit_vector(mz->rank(dc), en.right));
            for (size_t j = 0; j < xt.size(); ++j) xt[j] += t[i] * v[j];
        }
    }
    int sign = (x.point.degree + 1) % 2 == 0 ? 1 : -1;
    Vec rep = add(sz, scale(xt, sign));
    if (!is_zero(reduce_coefficients(target->has(out.degree - 1) ? target->apply_d(out.degree, rep)
                                                                  : Vec{})))
        throw std::logic_error("massey: assembled chain is not a cycle");
    return e_.from_cycle(out, h, rep);
}

std::vector<HomologyElement> MasseyEngine::indeterminacy(const HomologyElement& x, const HomologyElement& y,
                                                         const HomologyElement& z) {
    SubgroupIndex h = x.level;
    GradingPoint pyz = y.point + z.point, pxy = x.point + y.point;
    pyz.degree += 1;
    pxy.degree += 1;
    std::vector<HomologyElement> out;
    for (size_t i = 0; i < e_.level_group(pyz, h).size(); ++i) out.push_back(e_.multiply(x, e_.generator(pyz, h, i)));
    for (size_t i = 0; i < e_.level_group(pxy, h).size(); ++i) out.push_back(e_.multiply(e_.generator(pxy, h, i), z));
    return out;
}

MasseyResult MasseyEngine::massey3(const HomologyElement& x, const HomologyElement& y, const HomologyElement& z) {
    if (x.level != y.level || y.level != z.level) throw std::invalid_argument("massey3: classes on different levels");
    MasseyResult r;
    GradingPoint out = x.point + y.point + z.point;
    out.degree += 1;
    r.representative = e_.zero(out, x.level);
    if (!e_.is_zero(e_.multiply(x, y)) || !e_.is_zero(e_.multiply(y, z))) return r;
    Vec xr = e_.chain_representative(x), yr = e_.chain_representative(y), zr = e_.chain_representative(z);
    auto s = bounding_chain(x.point, xr, y.point, yr, x.level);
    auto t = bounding_chain(y.point, yr, z.point, zr, x.level);
    if (!s || !t) throw std::logic_error("massey3: a vanishing product has no bounding chain in the box model");
    r.defined = true;
    r.representative = assemble(x, y, z, *s, *t);
    r.indeterminacy = indeterminacy(x, y, z);
    return r;
}

}  // namespace eqh
