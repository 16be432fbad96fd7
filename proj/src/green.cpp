#include "eqh/green.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <unordered_map>

namespace eqh {

GradingPoint GradingPoint::of(const VirtualRep& v, int k) {
    GradingPoint p;
    p.degree = k - v.net(Irrep::trivial());
    for (auto r : v.support())
        if (r.kind != IrrepKind::Trivial && v.net(r) != 0) p.rep.add(r, v.net(r));
    return p;
}

std::string GradingPoint::str(const GroupSpec& g) const {
    return "H_" + std::to_string(degree) + "(S^" + rep.str(g) + ")";
}

GradingPoint operator+(const GradingPoint& a, const GradingPoint& b) {
    return GradingPoint::of((a.rep + b.rep).normalized(), a.degree + b.degree);
}

GradingPoint operator-(const GradingPoint& a, const GradingPoint& b) {
    return GradingPoint::of((a.rep - b.rep).normalized(), a.degree - b.degree);
}

std::string element_str(const HomologyElement& x, const GroupSpec& g) {
    return x.point.str(g) + " level " + std::to_string(x.level) + " " + vec_str(x.coords);
}

GreenEngine::GreenEngine(GroupSpec g, CoefficientSystem k) : g_(g), k_(k), irreps_(nontrivial_irreps(g)) {}

std::vector<int> GreenEngine::mults(const VirtualRep& v) const {
    std::vector<int> m;
    for (auto r : irreps_) m.push_back(v.net(r));
    for (auto r : v.support())
        if (r.kind != IrrepKind::Trivial && v.net(r) != 0 &&
            std::find(irreps_.begin(), irreps_.end(), r) == irreps_.end())
            throw std::invalid_argument("grading uses an irreducible outside " + g_.str());
    return m;
}

ComplexPtr GreenEngine::factor(Irrep r, int a) {
    auto key = std::make_pair(r, a);
    auto it = factors_.find(key);
    if (it != factors_.end()) return it->second;
    ComplexPtr c;
    if (a > 0) c = positive_chains(VirtualRep::of(r, a), g_);
    else if (a < 0) c = negative_cochains(VirtualRep::of(r, -a), g_);
    else c = unit_complex(g_);
    c = with_coefficients(c, k_);
    factors_[key] = c;
    return c;
}

const std::vector<ComplexPtr>& GreenEngine::partial_models(const VirtualRep& v) {
    std::vector<int> m = mults(v);
    auto it = models_.find(m);
    if (it != models_.end()) return it->second;
    std::vector<ComplexPtr> parts;
    for (size_t j = 0; j < irreps_.size(); ++j) {
        ComplexPtr f = factor(irreps_[j], m[j]);
        parts.push_back(j == 0 ? f : box_complex(parts.back(), f));
    }
    if (parts.empty()) parts.push_back(with_coefficients(unit_complex(g_), k_));
    return models_[m] = parts;
}

ComplexPtr GreenEngine::model(const VirtualRep& v) { return partial_models(v).back(); }

const MackeyPresentation& GreenEngine::presentation(const GradingPoint& p) {
    auto it = presentations_.find(p);
    if (it != presentations_.end()) return it->second;
    return presentations_[p] = compute_homology(*model(p.rep), p.degree);
}

const std::vector<std::vector<GreenEngine::FactorIndex>>& GreenEngine::factor_table(const VirtualRep& v, int k) {
    std::vector<int> m = mults(v);
    auto key = std::make_pair(m, k);
    auto it = tables_.find(key);
    if (it != tables_.end()) return it->second;
    const auto& parts = partial_models(v);
    size_t r = irreps_.size();
    std::vector<std::vector<FactorIndex>> table;
    const ChainComplex& top = *parts.back();
    for (size_t idx = 0; idx < top.rank(k); ++idx) {
        std::vector<FactorIndex> f(std::max<size_t>(r, 1));
        int deg = k;
        size_t cur = idx;
        for (size_t j = r; j-- > 1;) {
            const ChainComplex& mj = *parts[j];
            const auto& e = mj.tensor->entries[deg - mj.lo][cur];
            const TensorBlock& bl = mj.tensor->blocks[deg - mj.lo][e.block];
            f[j] = {bl.right_degree, e.right};
            deg = bl.left_degree;
            cur = e.left;
        }
        f[0] = {deg, static_cast<uint32_t>(cur)};
        table.push_back(std::move(f));
    }
    return tables_[key] = std::move(table);
}

size_t GreenEngine::join(const VirtualRep& v, const std::vector<FactorIndex>& parts) {
    const auto& ms = partial_models(v);
    size_t idx = parts[0].index;
    int deg = parts[0].degree;
    for (size_t j = 1; j < parts.size(); ++j) {
        int nd = deg + parts[j].degree;
        idx = ms[j]->tensor_index(nd, deg, idx, parts[j].index);
        deg = nd;
    }
    return idx;
}

const ChainMap& GreenEngine::comparison(Irrep r, int a, int b) {
    auto key = std::make_tuple(r, a, b);
    auto it = comparisons_.find(key);
    if (it != comparisons_.end()) return it->second;
    ComplexPtr s = box_complex(factor(r, a), factor(r, b));
    return comparisons_[key] = solve_comparison(s, factor(r, a + b));
}

Vec GreenEngine::multiply_chains(const GradingPoint& p, const Vec& x, const GradingPoint& q, const Vec& y) {
    GradingPoint pq = p + q;
    ComplexPtr target = model(pq.rep);
    int k = p.degree + q.degree;
    Vec out(target->rank(k));
    if (x.empty() || y.empty() || out.empty()) return out;
    const auto& tx = factor_table(p.rep, p.degree);
    const auto& ty = factor_table(q.rep, q.degree);
    std::vector<int> mp = mults(p.rep), mq = mults(q.rep);
    size_t r = irreps_.size();
    if (r == 0) {
        out[0] = x[0] * y[0];
        return out;
    }
    std::vector<const ChainMap*> phis;
    for (size_t f = 0; f < r; ++f) phis.push_back(&comparison(irreps_[f], mp[f], mq[f]));
    using Sparse = std::vector<std::pair<uint32_t, Integer>>;
    std::vector<std::unordered_map<uint64_t, Sparse>> memo(r);
    auto image = [&](size_t f, const FactorIndex& a, const FactorIndex& b) -> const Sparse& {
        const ChainMap& phi = *phis[f];
        int deg = a.degree + b.degree;
        size_t sidx = phi.source->tensor_index(deg, a.degree, a.index, b.index);
        uint64_t key = (static_cast<uint64_t>(static_cast<uint32_t>(deg + 1000)) << 32) | sidx;
        auto it = memo[f].find(key);
        if (it != memo[f].end()) return it->second;
        Vec v(phi.target->rank(deg));
        phi.accumulate(deg, sidx, Integer(1), v);
        Sparse s;
        for (size_t i = 0; i < v.size(); ++i)
            if (!v[i].is_zero()) s.push_back({static_cast<uint32_t>(i), v[i]});
        return memo[f][key] = std::move(s);
    };
    std::vector<FactorIndex> parts(r);
    for (size_t i = 0; i < x.size(); ++i) {
        if (x[i].is_zero()) continue;
        const auto& P = tx[i];
        for (size_t j = 0; j < y.size(); ++j) {
            if (y[j].is_zero()) continue;
            const auto& Q = ty[j];
            int parity = 0;
            for (size_t a = 0; a < r; ++a)
                for (size_t b = 0; b < a; ++b) parity ^= (P[a].degree & Q[b].degree) & 1;
            Integer c = x[i] * y[j];
            if (parity) c = -c;
            std::vector<const Sparse*> imgs(r);
            bool zero = false;
            for (size_t f = 0; f < r && !zero; ++f) {
                imgs[f] = &image(f, P[f], Q[f]);
                zero = imgs[f]->empty();
                parts[f].degree = P[f].degree + Q[f].degree;
            }
            if (zero) continue;
            // expand the tensor product of the factor images
            std::vector<size_t> pos(r, 0);
            while (true) {
                Integer coef = c;
                for (size_t f = 0; f < r; ++f) {
                    const auto& e = (*imgs[f])[pos[f]];
                    parts[f].index = e.first;
                    coef *= e.second;
                }
                out[join(pq.rep, parts)] += coef;
                size_t f = 0;
                while (f < r && ++pos[f] == imgs[f]->size()) pos[f++] = 0;
                if (f == r) break;
            }
        }
    }
    return out;
}

HomologyElement GreenEngine::element(const GradingPoint& p, SubgroupIndex h, Vec coords) {
    const LevelHomology& l = level_group(p, h);
    if (coords.size() != l.size()) throw std::invalid_argument("element: coordinate vector has wrong length");
    return {p, h, l.reduce(coords)};
}

HomologyElement GreenEngine::zero(const GradingPoint& p, SubgroupIndex h) {
    return {p, h, Vec(level_group(p, h).size())};
}

HomologyElement GreenEngine::generator(const GradingPoint& p, SubgroupIndex h, size_t i) {
    HomologyElement e = zero(p, h);
    e.coords.at(i) = 1;
    return e;
}

HomologyElement GreenEngine::unit(SubgroupIndex h) {
    GradingPoint p;
    ComplexPtr c = model(p.rep);
    return from_cycle(p, h, c->fundamental);
}

HomologyElement GreenEngine::add(const HomologyElement& x, const HomologyElement& y) {
    if (!(x.point == y.point) || x.level != y.level) throw std::invalid_argument("add: elements live in different groups");
    Vec s = x.coords;
    for (size_t i = 0; i < s.size(); ++i) s[i] += y.coords[i];
    return element(x.point, x.level, s);
}

HomologyElement GreenEngine::scale(const HomologyElement& x, const Integer& c) {
    Vec s = x.coords;
    for (auto& v : s) v *= c;
    return element(x.point, x.level, s);
}

bool GreenEngine::is_zero(const HomologyElement& x) {
    for (auto& c : x.coords)
        if (!c.is_zero()) return false;
    return true;
}

Integer GreenEngine::order(const HomologyElement& x) {
    const LevelHomology& l = level_group(x.point, x.level);
    Integer o = 1;
    for (size_t i = 0; i < x.coords.size(); ++i) {
        if (x.coords[i].is_zero()) continue;
        Integer t = l.order(i);
        if (t.is_zero()) return 0;
        Integer oi = t / gcd(t, x.coords[i]);
        o = o / gcd(o, oi) * oi;
    }
    return o;
}

HomologyElement GreenEngine::restrict(const HomologyElement& x) {
    if (x.level == 0) throw std::invalid_argument("restrict: element is already on the bottom level");
    const MackeyPresentation& m = presentation(x.point);
    return element(x.point, x.level - 1, m.res[x.level] * x.coords);
}

HomologyElement GreenEngine::transfer(const HomologyElement& x) {
    if (x.level >= top()) throw std::invalid_argument("transfer: element is already on the top level");
    const MackeyPresentation& m = presentation(x.point);
    return element(x.point, x.level + 1, m.tr[x.level + 1] * x.coords);
}

Vec GreenEngine::chain_representative(const HomologyElement& x) {
    ComplexPtr c = model(x.point.rep);
    if (!c->has(x.point.degree)) return {};
    const LevelHomology& l = level_group(x.point, x.level);
    return c->module(x.point.degree).from_level(l.representative(x.coords), x.level);
}

HomologyElement GreenEngine::from_cycle(const GradingPoint& p, SubgroupIndex h, const Vec& bottom) {
    ComplexPtr c = model(p.rep);
    const LevelHomology& l = level_group(p, h);
    if (!c->has(p.degree) || l.size() == 0) return zero(p, h);
    const FreeMackeyModule& m = c->module(p.degree);
    if (!m.is_fixed(bottom, h)) throw std::logic_error("from_cycle: chain is not fixed at level " + std::to_string(h));
    return {p, h, l.express(m.to_level(bottom, h))};
}

HomologyElement GreenEngine::multiply(const HomologyElement& x, const HomologyElement& y) {
    if (x.level != y.level) throw std::invalid_argument("multiply: factors live on different levels");
    GradingPoint pq = x.point + y.point;
    if (is_zero(x) || is_zero(y) || level_group(pq, x.level).size() == 0) return zero(pq, x.level);
    Vec z = multiply_chains(x.point, chain_representative(x), y.point, chain_representative(y));
    return from_cycle(pq, x.level, z);
}

const IntMatrix& GreenEngine::right_multiplication(const GradingPoint& p, const HomologyElement& x) {
    auto key = std::make_tuple(p, x.level, x.point, x.coords);
    auto it = right_mult_.find(key);
    if (it != right_mult_.end()) return it->second;
    size_t n = level_group(p, x.level).size();
    GradingPoint pq = p + x.point;
    IntMatrix m(level_group(pq, x.level).size(), n);
    for (size_t i = 0; i < n; ++i) m.set_column(i, multiply(generator(p, x.level, i), x).coords);
    return right_mult_[key] = m;
}

std::optional<HomologyElement> GreenEngine::divide(const HomologyElement& y, const HomologyElement& x) {
    if (x.level != y.level) throw std::invalid_argument("divide: elements live on different levels");
    SubgroupIndex h = y.level;
    GradingPoint cp = y.point - x.point;
    const LevelHomology& gc = level_group(cp, h);
    const LevelHomology& gy = level_group(y.point, h);
    const IntMatrix& m = right_multiplication(cp, x);
    Integer oy = order(y);
    if (oy.is_zero()) {
        size_t nt = gy.group.torsion.size();
        IntMatrix a(gy.size(), gc.size() + nt);
        for (size_t i = 0; i < m.rows(); ++i)
            for (size_t j = 0; j < m.cols(); ++j) a(i, j) = m(i, j);
        for (size_t i = 0; i < nt; ++i) a(i, gc.size() + i) = gy.group.torsion[i];
        auto sol = solve(a, y.coords);
        if (!sol) return std::nullopt;
        IntMatrix ker = kernel_basis(a);
        for (size_t j = 0; j < ker.cols(); ++j) {
            Vec col = ker.column(j);
            Vec c(col.begin(), col.begin() + gc.size());
            if (!is_zero(element(cp, h, c))) return std::nullopt;
        }
        return element(cp, h, Vec(sol->begin(), sol->begin() + gc.size()));
    }
    // finite order: enumerate the torsion subgroup of the source
    const Vec& tors = gc.group.torsion;
    Vec c(gc.size());
    std::optional<HomologyElement> found;
    size_t count = 0;
    std::function<void(size_t)> rec = [&](size_t i) {
        if (count > 1) return;
        if (i == tors.size()) {
            HomologyElement e{cp, h, c};
            if (order(e) != oy) return;
            if (gy.reduce(m * c) != y.coords) return;
            ++count;
            found = e;
            return;
        }
        for (Integer v = 0; v < tors[i]; v += 1) {
            c[i] = v;
            rec(i + 1);
        }
        c[i] = 0;
    };
    rec(0);
    if (count != 1) return std::nullopt;
    return found;
}

std::optional<HomologyElement> GreenEngine::invert(const HomologyElement& x) { return divide(unit(x.level), x); }

HomologyElement GreenEngine::euler_class(const VirtualRep& v) {
    if (!v.is_actual()) throw std::invalid_argument("euler_class: representation is not actual");
    GradingPoint p = GradingPoint::of(v, 0);
    ComplexPtr c = model(p.rep);
    std::vector<FactorIndex> parts(std::max<size_t>(irreps_.size(), 1), FactorIndex{0, 0});
    Vec e(c->rank(0));
    e[join(p.rep, parts)] = 1;
    HomologyElement x = from_cycle(p, top(), e);
    x.point = GradingPoint::of(v, 0);
    return x;
}

HomologyElement GreenEngine::orientation_class(const VirtualRep& v, SubgroupIndex h) {
    GradingPoint p = GradingPoint::of(v, v.dim());
    ComplexPtr c = model(p.rep);
    if (c->top_degree != p.degree) throw std::logic_error("orientation_class: unexpected top degree");
    if (!c->module(p.degree).is_fixed(c->fundamental, h))
        throw std::invalid_argument("orientation_class: " + v.str(g_) + " is not orientable at level " + std::to_string(h));
    return from_cycle(p, h, c->fundamental);
}

}  // namespace eqh
