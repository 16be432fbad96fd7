#include "eqh/chains.hpp"

#include <sstream>
#include <stdexcept>

namespace eqh {

const FreeMackeyModule& ChainComplex::module(int k) const {
    static thread_local std::vector<std::pair<GroupSpec, FreeMackeyModule>> empties;
    if (has(k)) return modules[k - lo];
    for (auto& [g, m] : empties)
        if (g == group) return m;
    empties.emplace_back(group, FreeMackeyModule(group, {}));
    return empties.back().second;
}

IntMatrix ChainComplex::d(int k) const {
    if (has(k) && has(k - 1)) return diffs[k - lo];
    return IntMatrix(rank(k - 1), rank(k));
}

IntMatrix ChainComplex::d_level(int k, SubgroupIndex h) const {
    return level_matrix(d(k), module(k), module(k - 1), h);
}

Vec ChainComplex::apply_d(int k, const Vec& v) const {
    if (!(has(k) && has(k - 1))) return Vec(rank(k - 1));
    return diffs[k - lo] * v;
}

size_t ChainComplex::tensor_index(int k, int left_degree, size_t left, size_t right) const {
    if (!tensor) throw std::logic_error("tensor_index on a complex that is not a box product");
    for (const TensorBlock& bl : tensor->blocks[k - lo])
        if (bl.left_degree == left_degree)
            return bl.offset + bl.product.tensor_to_box[left * tensor->right->rank(bl.right_degree) + right];
    throw std::out_of_range("tensor_index: no such block");
}

void ChainComplex::check() const {
    if (static_cast<int>(modules.size()) != hi - lo + 1 || modules.size() != diffs.size())
        throw std::logic_error("chain complex: inconsistent degree range");
    for (int k = lo; k <= hi; ++k) {
        IntMatrix dk = d(k);
        if (dk.rows() != rank(k - 1) || dk.cols() != rank(k)) throw std::logic_error("chain complex: bad shape");
        if (!(d(k - 1) * dk).is_zero())
            throw std::logic_error("chain complex: d o d != 0 at degree " + std::to_string(k));
    }
}

namespace {

Vec act_vec(const FreeMackeyModule& m, const Vec& v, long s) {
    Vec w(v.size());
    for (size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) w[m.act(i, s)] += v[i];
    return w;
}

std::shared_ptr<ChainComplex> fresh(const GroupSpec& g) {
    auto c = std::make_shared<ChainComplex>();
    c->group = g;
    return c;
}

}  // namespace

ComplexPtr unit_complex(const GroupSpec& g) {
    auto c = fresh(g);
    c->lo = c->hi = 0;
    c->modules.push_back(FreeMackeyModule(g, {{g.n, "1"}}));
    c->diffs.push_back(IntMatrix(0, 1));
    c->top_degree = 0;
    c->fundamental = {Integer(1)};
    return c;
}

ComplexPtr positive_chains(const VirtualRep& v, const GroupSpec& g) {
    if (!v.is_actual()) throw std::invalid_argument("positive_chains: representation has negative multiplicities");
    for (auto r : v.support()) r.validate(g);
    auto c = fresh(g);
    c->modules.push_back(FreeMackeyModule(g, {{g.n, "1"}}));
    c->diffs.push_back(IntMatrix(0, 1));
    Vec z{Integer(1)};
    int eps = 1;
    auto push = [&](FreeMackeyModule m, const Vec& boundary_of_first) {
        const FreeMackeyModule& below = c->modules.back();
        IntMatrix d(below.bottom_rank(), m.bottom_rank());
        for (long i = 0; i < m.orbit_size(0); ++i) d.set_column(i, act_vec(below, boundary_of_first, i));
        c->modules.push_back(std::move(m));
        c->diffs.push_back(std::move(d));
    };
    for (Irrep r : nontrivial_irreps(g)) {
        int mult = v.net(r);
        int level = r.kernel_level(g);
        for (int copy = 0; copy < mult; ++copy) {
            if (r.kind == IrrepKind::Sigma) {
                push(FreeMackeyModule(g, {{level, "x+"}}), z);
                z = Vec{Integer(1), Integer(-eps)};
                eps = -eps;
            } else {
                FreeMackeyModule a(g, {{level, "(x+,0)"}});
                long q = a.orbit_size(0);
                push(a, z);
                Vec da(q);
                da[0] += 1;
                da[1 % q] -= eps;
                push(FreeMackeyModule(g, {{level, "(x+,y+)"}}), da);
                z = Vec(q);
                for (long i = 0; i < q; ++i) z[i] = (i % 2 == 1 && eps < 0) ? -1 : 1;
            }
        }
    }
    c->lo = 0;
    c->hi = static_cast<int>(c->modules.size()) - 1;
    c->top_degree = c->hi;
    c->fundamental = z;
    c->check();
    int t = v.net(Irrep::trivial());
    return t ? shift_complex(c, t) : c;
}

ComplexPtr dual_complex(const ChainComplex& src) {
    auto c = fresh(src.group);
    c->coeffs = src.coeffs;
    c->lo = -src.hi;
    c->hi = -src.lo;
    for (int k = c->lo; k <= c->hi; ++k) {
        c->modules.push_back(src.module(-k));
        // D_k -> D_{k-1} is the transpose of C_{-k+1} -> C_{-k}
        c->diffs.push_back(k == c->lo ? IntMatrix(0, src.rank(-k)) : src.d(-k + 1).transpose());
    }
    c->top_degree = -src.top_degree;
    c->fundamental = Vec(src.rank(src.top_degree));
    bool found = false;
    for (size_t i = 0; i < src.fundamental.size() && !found; ++i)
        if (src.fundamental[i].is_unit()) {
            c->fundamental[i] = src.fundamental[i];
            found = true;
        }
    if (!found) throw std::logic_error("dual_complex: fundamental cycle is not primitive on a basis element");
    return c;
}

ComplexPtr negative_cochains(const VirtualRep& v, const GroupSpec& g) {
    if (!v.is_actual()) throw std::invalid_argument("negative_cochains: representation has negative multiplicities");
    return dual_complex(*positive_chains(v, g));
}

ComplexPtr shift_complex(const ComplexPtr& src, int t) {
    if (t == 0) return src;
    auto c = std::make_shared<ChainComplex>(*src);
    c->lo += t;
    c->hi += t;
    c->top_degree += t;
    c->tensor.reset();
    return c;
}

ComplexPtr box_complex(const ComplexPtr& a, const ComplexPtr& b) {
    if (!(a->group == b->group)) throw std::invalid_argument("box_complex: different groups");
    auto c = fresh(a->group);
    c->coeffs = a->coeffs;
    c->lo = a->lo + b->lo;
    c->hi = a->hi + b->hi;
    auto info = std::make_shared<TensorInfo>();
    info->left = a;
    info->right = b;
    for (int k = c->lo; k <= c->hi; ++k) {
        std::vector<TensorBlock> blocks;
        std::vector<OrbitCell> cells;
        std::vector<TensorInfo::Entry> entries;
        size_t offset = 0;
        for (int i = std::max(a->lo, k - b->hi); i <= std::min(a->hi, k - b->lo); ++i) {
            TensorBlock bl{i, k - i, offset, box(a->module(i), b->module(k - i))};
            for (auto& cell : bl.product.module.basis()) cells.push_back(cell);
            for (auto& [x, y] : bl.product.box_to_tensor)
                entries.push_back({static_cast<uint32_t>(blocks.size()), x, y});
            offset += bl.product.module.bottom_rank();
            blocks.push_back(std::move(bl));
        }
        c->modules.push_back(FreeMackeyModule(a->group, cells));
        info->blocks.push_back(std::move(blocks));
        info->entries.push_back(std::move(entries));
    }
    c->tensor = info;
    for (int k = c->lo; k <= c->hi; ++k) {
        IntMatrix d(c->rank(k - 1), c->rank(k));
        if (k > c->lo) {
            const auto& ent = info->entries[k - c->lo];
            const auto& blocks = info->blocks[k - c->lo];
            for (size_t col = 0; col < ent.size(); ++col) {
                const TensorBlock& bl = blocks[ent[col].block];
                int i = bl.left_degree, j = bl.right_degree;
                if (a->has(i - 1)) {
                    const IntMatrix& da = a->diffs[i - a->lo];
                    for (size_t r = 0; r < da.rows(); ++r) {
                        const Integer& x = da(r, ent[col].left);
                        if (!x.is_zero()) d(c->tensor_index(k - 1, i - 1, r, ent[col].right), col) += x;
                    }
                }
                if (b->has(j - 1)) {
                    const IntMatrix& db = b->diffs[j - b->lo];
                    for (size_t r = 0; r < db.rows(); ++r) {
                        const Integer& x = db(r, ent[col].right);
                        if (x.is_zero()) continue;
                        size_t row = c->tensor_index(k - 1, i, ent[col].left, r);
                        if (i % 2) d(row, col) -= x;
                        else d(row, col) += x;
                    }
                }
            }
        }
        c->diffs.push_back(std::move(d));
    }
    c->top_degree = a->top_degree + b->top_degree;
    c->fundamental = Vec(c->rank(c->top_degree));
    for (size_t x = 0; x < a->fundamental.size(); ++x)
        for (size_t y = 0; y < b->fundamental.size(); ++y)
            if (!a->fundamental[x].is_zero() && !b->fundamental[y].is_zero())
                c->fundamental[c->tensor_index(c->top_degree, a->top_degree, x, y)] += a->fundamental[x] * b->fundamental[y];
    return c;
}

ComplexPtr sphere_complex(const VirtualRep& v, const GroupSpec& g) {
    auto [plus, minus] = split_virtual(v);
    int t = plus.net(Irrep::trivial()) - minus.net(Irrep::trivial());
    VirtualRep p, m;
    for (auto r : nontrivial_irreps(g)) {
        p.add(r, plus.net(r));
        m.add(r, minus.net(r));
    }
    for (auto r : v.support()) r.validate(g);
    ComplexPtr c;
    if (m.is_zero()) c = positive_chains(p, g);
    else if (p.is_zero()) c = negative_cochains(m, g);
    else c = box_complex(positive_chains(p, g), negative_cochains(m, g));
    return shift_complex(c, t);
}

ComplexPtr with_coefficients(const ComplexPtr& src, const CoefficientSystem& k) {
    if (src->coeffs == k) return src;
    auto c = std::make_shared<ChainComplex>(*src);
    c->coeffs = k;
    return c;
}

std::string dump(const ChainComplex& c) {
    std::ostringstream os;
    os << "complex " << c.group.str() << " coefficients " << c.coeffs.str() << "\n";
    os << "degrees " << c.lo << " " << c.hi << "\n";
    os << "top " << c.top_degree << " " << vec_str(c.fundamental) << "\n";
    for (int k = c.hi; k >= c.lo; --k) {
        const FreeMackeyModule& m = c.module(k);
        os << "degree " << k << " cells " << m.size() << " bottom " << m.bottom_rank() << "\n";
        for (size_t b = 0; b < m.size(); ++b)
            os << "  cell " << b << " orbit " << m.basis()[b].orbit << " label " << m.basis()[b].label << "\n";
        if (k > c.lo) {
            IntMatrix d = c.d(k);
            os << "d " << k << " " << d.rows() << "x" << d.cols() << "\n";
            for (size_t i = 0; i < d.rows(); ++i) {
                os << " ";
                for (size_t j = 0; j < d.cols(); ++j) os << " " << d(i, j);
                os << "\n";
            }
        }
    }
    return os.str();
}

}  // namespace eqh
