#include "doctest.h"
#include "eqh/mackey.hpp"

#include <random>
#include <set>

using namespace eqh;

namespace {

const GroupSpec C4(2, 2);

FreeMackeyModule orbit_module(const GroupSpec& g, std::vector<int> levels) {
    std::vector<OrbitCell> cells;
    for (int l : levels) cells.push_back({l, "c"});
    return FreeMackeyModule(g, cells);
}

IntMatrix power(const IntMatrix& m, long e) {
    IntMatrix r = IntMatrix::identity(m.rows());
    for (long i = 0; i < e; ++i) r = r * m;
    return r;
}

void check_structure(const FreeMackeyModule& m) {
    const GroupSpec& g = m.group();
    LevelMaps lm = structure_maps(m);
    for (int h = 0; h <= g.n; ++h) {
        CHECK(lm.weyl[h].rows() == m.level_rank(h));
        CHECK(power(lm.weyl[h], g.order() / g.subgroup_order(h)) == IntMatrix::identity(m.level_rank(h)));
    }
    for (int h = 1; h <= g.n; ++h) {
        const IntMatrix& res = lm.res[h];
        const IntMatrix& tr = lm.tr[h];
        CHECK(res.rows() == m.level_rank(h - 1));
        CHECK(res.cols() == m.level_rank(h));
        CHECK(rank(res) == res.cols());
        // res o tr = sum over the cosets of H_{h-1} in H_h
        IntMatrix sum(m.level_rank(h - 1), m.level_rank(h - 1));
        long step = g.order() / g.subgroup_order(h);
        for (long s = 0; s < g.p; ++s) sum = sum + power(lm.weyl[h - 1], s * step);
        CHECK(res * tr == sum);
        // tr o res = multiplication by the index
        IntMatrix p = IntMatrix::identity(m.level_rank(h));
        for (size_t i = 0; i < p.rows(); ++i) p(i, i) = g.p;
        CHECK(tr * res == p);
        CHECK(lm.weyl[h - 1] * res == res * lm.weyl[h]);
    }
}

}  // namespace

TEST_CASE("level bases") {
    FreeMackeyModule zc4 = orbit_module(C4, {0});
    CHECK(zc4.level_basis(0).size() == 4);
    CHECK(zc4.level_basis(2).size() == 1);
    CHECK(zc4.level_basis(2)[0] == std::vector<size_t>{0, 1, 2, 3});
    FreeMackeyModule zc2 = orbit_module(C4, {1});
    CHECK(zc2.level_basis(1).size() == 2);
    CHECK(zc4.level_basis(1) == std::vector<std::vector<size_t>>{{0, 2}, {1, 3}});
    FreeMackeyModule mixed = orbit_module(C4, {2, 1, 0});
    CHECK(mixed.level_rank(0) == 7);
    CHECK(mixed.level_rank(1) == 1 + 2 + 2);
    CHECK(mixed.level_rank(2) == 3);
}

TEST_CASE("structure maps: examples") {
    FreeMackeyModule z = orbit_module(C4, {2});
    LevelMaps lm = structure_maps(z);
    CHECK(lm.res[2] == IntMatrix{{1}});
    CHECK(lm.res[1] == IntMatrix{{1}});
    CHECK(lm.tr[2] == IntMatrix{{2}});
    CHECK(lm.tr[1] == IntMatrix{{2}});
    FreeMackeyModule zc4 = orbit_module(C4, {0});
    CHECK(zc4.res(2) == IntMatrix{{1}, {1}});
    CHECK(zc4.weyl(0) == IntMatrix{{0, 0, 0, 1}, {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}});
    CHECK(zc4.weyl(2) == IntMatrix{{1}});
}

TEST_CASE("structure maps: Mackey identities on assorted modules") {
    for (auto g : {GroupSpec(2, 1), GroupSpec(2, 2), GroupSpec(2, 3), GroupSpec(3, 2), GroupSpec(5, 1)}) {
        std::vector<int> levels;
        for (int l = 0; l <= g.n; ++l) levels.push_back(l);
        check_structure(orbit_module(g, levels));
        check_structure(orbit_module(g, {0, 0, g.n}));
    }
}

TEST_CASE("box: examples and brute-force orbit counts") {
    auto z = orbit_module(C4, {2}), zc2 = orbit_module(C4, {1}), zc4 = orbit_module(C4, {0});
    BoxProduct a = box(z, zc2);
    CHECK(a.module.size() == 1);
    CHECK(a.module.basis()[0].orbit == 1);
    BoxProduct b = box(zc4, zc2);
    CHECK(b.module.size() == 2);
    CHECK(b.module.basis()[0].orbit == 0);
    CHECK(b.module.bottom_rank() == 8);
    BoxProduct c = box(zc2, zc2);
    CHECK(c.module.size() == 2);
    CHECK(c.module.basis()[1].orbit == 1);
}

TEST_CASE("box: identification is an equivariant bijection") {
    for (auto g : {GroupSpec(2, 2), GroupSpec(2, 3), GroupSpec(3, 2)}) {
        std::vector<int> all;
        for (int l = 0; l <= g.n; ++l) all.push_back(l);
        FreeMackeyModule m1 = orbit_module(g, all), m2 = orbit_module(g, {0, g.n - 1});
        BoxProduct bp = box(m1, m2);
        size_t r1 = m1.bottom_rank(), r2 = m2.bottom_rank();
        CHECK(bp.module.bottom_rank() == r1 * r2);
        std::set<uint32_t> image(bp.tensor_to_box.begin(), bp.tensor_to_box.end());
        CHECK(image.size() == r1 * r2);
        for (size_t i = 0; i < r1; ++i)
            for (size_t j = 0; j < r2; ++j) {
                size_t t = bp.tensor_to_box[i * r2 + j];
                CHECK(bp.box_to_tensor[t] == std::pair<uint32_t, uint32_t>(i, j));
                size_t moved = bp.tensor_to_box[m1.act(i, 1) * r2 + m2.act(j, 1)];
                CHECK(moved == bp.module.act(t, 1));
            }
        for (int h = 0; h <= g.n; ++h) CHECK(bp.module.level_rank(h) <= r1 * r2);
        CHECK(bp.module.level_rank(0) == m1.level_rank(0) * m2.level_rank(0));
        check_structure(bp.module);
        IntMatrix id = bp.identification();
        CHECK(id * id.transpose() == IntMatrix::identity(r1 * r2));
    }
}
