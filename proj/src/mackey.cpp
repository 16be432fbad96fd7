#include "eqh/mackey.hpp"

#include <cctype>
#include <stdexcept>

namespace eqh {

CoefficientSystem CoefficientSystem::parse(const std::string& text) {
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t == "Z") return {};
    if (t.rfind("Z/", 0) == 0) {
        Integer q;
        try {
            q = Integer(t.substr(2));
        } catch (const std::exception&) {
            throw ParseError("bad modulus in '" + text + "'", 2);
        }
        if (q < 2) throw ParseError("modulus must be at least 2", 2);
        return {q};
    }
    throw ParseError("coefficients must be Z or Z/q", 0);
}

FreeMackeyModule::FreeMackeyModule(GroupSpec g, std::vector<OrbitCell> basis) : g_(g), basis_(std::move(basis)) {
    for (size_t b = 0; b < basis_.size(); ++b) {
        if (basis_[b].orbit < 0 || basis_[b].orbit > g_.n) throw std::invalid_argument("orbit level out of range");
        long s = orbit_size(b);
        offsets_.push_back(offsets_.back() + s);
        for (long i = 0; i < s; ++i) cell_.push_back(static_cast<uint32_t>(b));
    }
}

size_t FreeMackeyModule::level_rank(SubgroupIndex h) const {
    size_t r = 0;
    for (auto& c : basis_) r += GroupSpec::ipow(g_.p, g_.n - std::max(h, c.orbit));
    return r;
}

size_t FreeMackeyModule::element(size_t b, long i) const {
    long s = orbit_size(b);
    i %= s;
    if (i < 0) i += s;
    return offsets_[b] + i;
}

size_t FreeMackeyModule::cell_of(size_t idx) const { return cell_[idx]; }

size_t FreeMackeyModule::act(size_t idx, long s) const {
    size_t b = cell_[idx];
    return element(b, static_cast<long>(idx - offsets_[b]) + s);
}

std::vector<std::vector<size_t>> FreeMackeyModule::level_basis(SubgroupIndex h) const {
    std::vector<std::vector<size_t>> out;
    for (size_t b = 0; b < basis_.size(); ++b) {
        long s = orbit_size(b);
        long reps = GroupSpec::ipow(g_.p, g_.n - std::max(h, basis_[b].orbit));
        for (long j = 0; j < reps; ++j) {
            std::vector<size_t> orbit;
            for (long i = j; i < s; i += reps) orbit.push_back(offsets_[b] + i);
            out.push_back(std::move(orbit));
        }
    }
    return out;
}

std::vector<size_t> FreeMackeyModule::level_leaders(SubgroupIndex h) const {
    std::vector<size_t> out;
    for (size_t b = 0; b < basis_.size(); ++b) {
        long reps = GroupSpec::ipow(g_.p, g_.n - std::max(h, basis_[b].orbit));
        for (long j = 0; j < reps; ++j) out.push_back(offsets_[b] + j);
    }
    return out;
}

Vec FreeMackeyModule::to_level(const Vec& bottom, SubgroupIndex h) const {
    auto lead = level_leaders(h);
    Vec r(lead.size());
    for (size_t i = 0; i < lead.size(); ++i) r[i] = bottom[lead[i]];
    return r;
}

Vec FreeMackeyModule::from_level(const Vec& level, SubgroupIndex h) const {
    Vec r(bottom_rank());
    auto lb = level_basis(h);
    for (size_t i = 0; i < lb.size(); ++i)
        if (!level[i].is_zero())
            for (size_t e : lb[i]) r[e] += level[i];
    return r;
}

bool FreeMackeyModule::is_fixed(const Vec& bottom, SubgroupIndex h) const {
    long step = GroupSpec::ipow(g_.p, g_.n - h);
    for (size_t i = 0; i < bottom.size(); ++i)
        if (bottom[act(i, step)] != bottom[i]) return false;
    return true;
}

IntMatrix FreeMackeyModule::res(SubgroupIndex h) const {
    if (h < 1 || h > g_.n) throw std::invalid_argument("res: level out of range");
    auto lead = level_leaders(h - 1);
    auto lb = level_basis(h);
    std::vector<long> pos(bottom_rank(), -1);
    for (size_t i = 0; i < lead.size(); ++i) pos[lead[i]] = static_cast<long>(i);
    IntMatrix m(lead.size(), lb.size());
    for (size_t j = 0; j < lb.size(); ++j)
        for (size_t e : lb[j])
            if (pos[e] >= 0) m(pos[e], j) += 1;
    return m;
}

IntMatrix FreeMackeyModule::tr(SubgroupIndex h) const {
    if (h < 1 || h > g_.n) throw std::invalid_argument("tr: level out of range");
    auto lb = level_basis(h - 1);
    long step = GroupSpec::ipow(g_.p, g_.n - h);
    IntMatrix m(level_rank(h), lb.size());
    for (size_t j = 0; j < lb.size(); ++j) {
        Vec v(bottom_rank());
        for (long s = 0; s < g_.p; ++s)
            for (size_t e : lb[j]) v[act(e, s * step)] += 1;
        m.set_column(j, to_level(v, h));
    }
    return m;
}

IntMatrix FreeMackeyModule::weyl(SubgroupIndex h) const {
    auto lb = level_basis(h);
    IntMatrix m(lb.size(), lb.size());
    for (size_t j = 0; j < lb.size(); ++j) {
        Vec v(bottom_rank());
        for (size_t e : lb[j]) v[act(e, 1)] += 1;
        m.set_column(j, to_level(v, h));
    }
    return m;
}

IntMatrix FreeMackeyModule::bottom_action() const {
    IntMatrix m(bottom_rank(), bottom_rank());
    for (size_t i = 0; i < bottom_rank(); ++i) m(act(i, 1), i) = 1;
    return m;
}

LevelMaps structure_maps(const FreeMackeyModule& m) {
    LevelMaps lm;
    int n = m.group().n;
    lm.res.resize(n + 1);
    lm.tr.resize(n + 1);
    for (int h = 1; h <= n; ++h) {
        lm.res[h] = m.res(h);
        lm.tr[h] = m.tr(h);
    }
    for (int h = 0; h <= n; ++h) lm.weyl.push_back(m.weyl(h));
    return lm;
}

IntMatrix level_matrix(const IntMatrix& bottom, const FreeMackeyModule& src, const FreeMackeyModule& dst,
                       SubgroupIndex h) {
    auto lb = src.level_basis(h);
    auto lead = dst.level_leaders(h);
    IntMatrix m(lead.size(), lb.size());
    for (size_t j = 0; j < lb.size(); ++j)
        for (size_t i = 0; i < lead.size(); ++i) {
            Integer s;
            for (size_t e : lb[j]) {
                const Integer& x = bottom(lead[i], e);
                if (!x.is_zero()) s += x;
            }
            m(i, j) = s;
        }
    return m;
}

IntMatrix BoxProduct::identification() const {
    IntMatrix m(box_to_tensor.size(), tensor_to_box.size());
    for (size_t t = 0; t < tensor_to_box.size(); ++t) m(tensor_to_box[t], t) = 1;
    return m;
}

BoxProduct box(const FreeMackeyModule& m1, const FreeMackeyModule& m2) {
    if (!(m1.group() == m2.group())) throw std::invalid_argument("box: different groups");
    const GroupSpec& g = m1.group();
    std::vector<OrbitCell> cells;
    struct Block {
        size_t b1, b2;
        long s1, s2, copies;
    };
    std::vector<Block> blocks;
    for (size_t b1 = 0; b1 < m1.size(); ++b1)
        for (size_t b2 = 0; b2 < m2.size(); ++b2) {
            auto op = orbit_product(m1.basis()[b1].orbit, m2.basis()[b2].orbit, g);
            blocks.push_back({b1, b2, m1.orbit_size(b1), m2.orbit_size(b2), op.copies});
            for (long c = 0; c < op.copies; ++c) {
                std::string lab = m1.basis()[b1].label + "*" + m2.basis()[b2].label;
                if (op.copies > 1) lab += "#" + std::to_string(c);
                cells.push_back({op.orbit, lab});
            }
        }
    BoxProduct bp;
    bp.module = FreeMackeyModule(g, cells);
    size_t r2 = m2.bottom_rank();
    bp.tensor_to_box.assign(m1.bottom_rank() * r2, 0);
    bp.box_to_tensor.assign(bp.module.bottom_rank(), {0, 0});
    size_t cell = 0;
    for (auto& bl : blocks) {
        for (long i1 = 0; i1 < bl.s1; ++i1)
            for (long i2 = 0; i2 < bl.s2; ++i2) {
                long c, t;
                if (bl.s1 <= bl.s2) {
                    c = ((i2 - i1) % bl.s1 + bl.s1) % bl.s1;
                    t = ((i2 - c) % bl.s2 + bl.s2) % bl.s2;
                } else {
                    c = ((i1 - i2) % bl.s2 + bl.s2) % bl.s2;
                    t = ((i1 - c) % bl.s1 + bl.s1) % bl.s1;
                }
                size_t bi = bp.module.element(cell + c, t);
                size_t ti = m1.element(bl.b1, i1) * r2 + m2.element(bl.b2, i2);
                bp.tensor_to_box[ti] = static_cast<uint32_t>(bi);
                bp.box_to_tensor[bi] = {static_cast<uint32_t>(m1.element(bl.b1, i1)),
                                        static_cast<uint32_t>(m2.element(bl.b2, i2))};
            }
        cell += bl.copies;
    }
    return bp;
}

}  // namespace eqh
