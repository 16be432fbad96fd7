#include "doctest.h"
#include "eqh/chains.hpp"

using namespace eqh;

namespace {

const GroupSpec C4(2, 2);

VirtualRep rep(const std::string& s, const GroupSpec& g = C4) { return parse_virtual(s, g); }

// Bottom-level homology: Z in the top degree, zero elsewhere.
void check_sphere(const ChainComplex& c) {
    c.check();
    for (int k = c.lo; k <= c.hi; ++k) {
        HomologyGroup h = homology(c.d(k + 1), c.d(k));
        if (k == c.top_degree) {
            CHECK(h.free_rank == 1);
            CHECK(h.torsion.empty());
            REQUIRE(!h.is_zero());
            Vec coords = h.express(c.fundamental);
            CHECK(abs(coords[0]) == 1);
        } else {
            CHECK(h.is_zero());
        }
    }
    // differentials commute with g
    for (int k = c.lo + 1; k <= c.hi; ++k)
        CHECK(c.module(k - 1).bottom_action() * c.d(k) == c.d(k) * c.module(k).bottom_action());
}

}  // namespace

TEST_CASE("positive chains: small examples") {
    auto s = positive_chains(rep("sigma"), C4);
    CHECK(s->lo == 0);
    CHECK(s->hi == 1);
    CHECK(s->module(1).basis()[0].orbit == 1);
    CHECK(s->d(1) == IntMatrix{{1, 1}});
    auto z = positive_chains(VirtualRep(), C4);
    CHECK(z->lo == 0);
    CHECK(z->hi == 0);
    CHECK(z->rank(0) == 1);
    auto l = positive_chains(rep("lambda"), C4);
    CHECK(l->hi == 2);
    CHECK(l->d(1) == IntMatrix{{1, 1, 1, 1}});
    CHECK(l->d(2) == IntMatrix{{1, 0, 0, -1}, {-1, 1, 0, 0}, {0, -1, 1, 0}, {0, 0, -1, 1}});
}

TEST_CASE("positive chains: sigma block and junction differentials") {
    // even number of sigma cells: junction is x+ + x-
    auto c = positive_chains(rep("2*sigma+lambda"), C4);
    CHECK(c->d(2) == IntMatrix{{1, -1}, {-1, 1}});
    CHECK(c->d(3).column(0) == Vec{Integer(1), Integer(1)});
    // top lambda block, even case: d(x+,y+) = (x+,0) - (0,y+)
    CHECK(c->d(4).column(0) == Vec{Integer(1), Integer(-1), Integer(0), Integer(0)});
    // odd number: junction x+ - x-, then 1+g and the alternating norm
    auto d = positive_chains(rep("sigma+2*lambda"), C4);
    CHECK(d->d(2).column(0) == Vec{Integer(1), Integer(-1)});
    CHECK(d->d(3).column(0) == Vec{Integer(1), Integer(1), Integer(0), Integer(0)});
    CHECK(d->d(4).column(0) == Vec{Integer(1), Integer(-1), Integer(1), Integer(-1)});
    CHECK(d->d(3).column(1) == Vec{Integer(0), Integer(1), Integer(1), Integer(0)});
    auto s3 = positive_chains(rep("3*sigma"), C4);
    CHECK(s3->d(3) == IntMatrix{{1, 1}, {1, 1}});
}

TEST_CASE("positive chains: bottom level is a sphere") {
    for (int n = 0; n <= 6; ++n)
        for (int m = 0; m <= 6; ++m) {
            VirtualRep v;
            v.add(Irrep::sigma(), n);
            v.add(Irrep::lambda(2), m);
            auto c = positive_chains(v, C4);
            CHECK(c->top_degree == n + 2 * m);
            check_sphere(*c);
        }
    check_sphere(*positive_chains(rep("2*sigma+lambda2+2*lambda3+1", GroupSpec(2, 3)), GroupSpec(2, 3)));
    check_sphere(*positive_chains(rep("lambda1+2*lambda2", GroupSpec(3, 2)), GroupSpec(3, 2)));
    check_sphere(*positive_chains(rep("3*lambda", GroupSpec(5, 1)), GroupSpec(5, 1)));
}

TEST_CASE("negative cochains and virtual spheres") {
    for (const char* s : {"sigma", "lambda", "2*sigma+3*lambda", "3*sigma+lambda"}) {
        auto c = negative_cochains(rep(s), C4);
        CHECK(c->lo == -rep(s).dim());
        CHECK(c->hi == 0);
        check_sphere(*c);
    }
    for (const char* s : {"sigma-lambda", "2*sigma-3*lambda", "lambda-3*sigma", "lambda-lambda", "1+sigma-2*lambda",
                          "-2*sigma-lambda", "0"}) {
        auto c = sphere_complex(rep(s), C4);
        CHECK(c->top_degree == rep(s).dim());
        check_sphere(*c);
    }
    check_sphere(*sphere_complex(rep("2*sigma-lambda2+lambda3", GroupSpec(2, 3)), GroupSpec(2, 3)));
    check_sphere(*sphere_complex(rep("lambda1-lambda2", GroupSpec(3, 2)), GroupSpec(3, 2)));
}

TEST_CASE("box complex: tensor identification") {
    auto a = positive_chains(rep("sigma"), C4);
    auto b = negative_cochains(rep("lambda"), C4);
    auto c = box_complex(a, b);
    CHECK(c->lo == -2);
    CHECK(c->hi == 1);
    for (int k = c->lo; k <= c->hi; ++k) {
        size_t total = 0;
        for (int i = a->lo; i <= a->hi; ++i)
            if (b->has(k - i)) total += a->rank(i) * b->rank(k - i);
        CHECK(c->rank(k) == total);
    }
    // d(x*y) = dx*y + (-1)^|x| x*dy checked on a basis element
    size_t idx = c->tensor_index(0, 1, 0, 0);  // x+ in degree 1 tensor dual cell in degree -1
    Vec e(c->rank(0));
    e[idx] = 1;
    Vec de = c->apply_d(0, e);
    CHECK(de[c->tensor_index(-1, 0, 0, 0)] == 1);
}

TEST_CASE("dump format is stable") {
    auto c = positive_chains(rep("sigma+lambda"), C4);
    std::string expected =
        "complex C4 coefficients Z\n"
        "degrees 0 3\n"
        "top 3 (1,-1,1,-1)\n"
        "degree 3 cells 1 bottom 4\n"
        "  cell 0 orbit 0 label (x+,y+)\n"
        "d 3 4x4\n"
        "  1 0 0 1\n"
        "  1 1 0 0\n"
        "  0 1 1 0\n"
        "  0 0 1 1\n"
        "degree 2 cells 1 bottom 4\n"
        "  cell 0 orbit 0 label (x+,0)\n"
        "d 2 2x4\n"
        "  1 -1 1 -1\n"
        "  -1 1 -1 1\n"
        "degree 1 cells 1 bottom 2\n"
        "  cell 0 orbit 1 label x+\n"
        "d 1 1x2\n"
        "  1 1\n"
        "degree 0 cells 1 bottom 1\n"
        "  cell 0 orbit 2 label 1\n";
    CHECK(dump(*c) == expected);
}
