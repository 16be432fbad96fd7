#include "doctest.h"
#include "eqh/group.hpp"

#include <vector>

using namespace eqh;

TEST_CASE("orbit_product: examples") {
    GroupSpec c4(2, 2);
    auto a = orbit_product(2, 2, c4);
    CHECK(a.orbit == 2);
    CHECK(a.copies == 1);
    auto b = orbit_product(0, 1, c4);
    CHECK(b.orbit == 0);
    CHECK(b.copies == 2);
    auto c = orbit_product(1, 1, c4);
    CHECK(c.orbit == 1);
    CHECK(c.copies == 2);
}

TEST_CASE("orbit_product: commutativity and cardinality by brute force") {
    for (int p : {2, 3, 5, 7, 11, 13}) {
        for (int n = 1; GroupSpec::ipow(p, n) <= 16; ++n) {
            GroupSpec g(p, n);
            long order = g.order();
            for (int h = 0; h <= n; ++h)
                for (int k = 0; k <= n; ++k) {
                    auto x = orbit_product(h, k, g), y = orbit_product(k, h, g);
                    CHECK(x.orbit == y.orbit);
                    CHECK(x.copies == y.copies);
                    long sh = order / g.subgroup_order(h), sk = order / g.subgroup_order(k);
                    CHECK(x.copies * (order / g.subgroup_order(x.orbit)) == sh * sk);
                    // orbits of the diagonal action on Z/sh x Z/sk, counted directly
                    std::vector<char> seen(sh * sk, 0);
                    long orbits = 0, size = 0;
                    for (long i = 0; i < sh; ++i)
                        for (long j = 0; j < sk; ++j) {
                            if (seen[i * sk + j]) continue;
                            ++orbits;
                            long s = 0, a = i, b = j;
                            do {
                                seen[a * sk + b] = 1;
                                a = (a + 1) % sh;
                                b = (b + 1) % sk;
                                ++s;
                            } while (a != i || b != j);
                            size = s;
                        }
                    CHECK(orbits == x.copies);
                    CHECK(size == order / g.subgroup_order(x.orbit));
                }
        }
    }
}

TEST_CASE("virtual representations: parsing and splitting") {
    GroupSpec c4(2, 2);
    VirtualRep v = parse_virtual("3*sigma-2*lambda", c4);
    CHECK(v.net(Irrep::sigma()) == 3);
    CHECK(v.net(Irrep::lambda(2)) == -2);
    CHECK(v.dim() == -1);
    CHECK(v.str(c4) == "3*sigma-2*lambda");
    auto [p, m] = split_virtual(v);
    CHECK(p == VirtualRep::of(Irrep::sigma(), 3));
    CHECK(m == VirtualRep::of(Irrep::lambda(2), 2));
    auto [p2, m2] = split_virtual(parse_virtual("-sigma - lambda", c4));
    CHECK(p2.is_zero());
    CHECK(m2 == parse_virtual("sigma+lambda", c4));
    auto [p3, m3] = split_virtual(parse_virtual(" 2 + sigma ", c4));
    CHECK(p3 == parse_virtual("sigma+2", c4));
    CHECK(m3.is_zero());
    CHECK(parse_virtual("1+2*sigma", c4).dim() == 3);
    CHECK(parse_virtual("-lambda2", c4) == VirtualRep::of(Irrep::lambda(2), -1));
    GroupSpec c8(2, 3);
    CHECK(parse_virtual("lambda", c8) == parse_virtual("lambda3", c8));
    CHECK(parse_virtual("lambda2-sigma", c8).str(c8) == "-sigma+lambda2");
    // lambda - lambda keeps both halves
    VirtualRep ll = parse_virtual("lambda-lambda", c4);
    CHECK(ll.is_zero());
    CHECK(ll.plus_mult(Irrep::lambda(2)) == 1);
    CHECK(ll.minus_mult(Irrep::lambda(2)) == 1);
    CHECK(ll.normalized().support().empty());
}

TEST_CASE("virtual representations: parse errors carry positions") {
    GroupSpec c4(2, 2);
    try {
        parse_virtual("2*sigma+*lambda", c4);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.position == 8);
    }
    try {
        parse_virtual("sigma+omega", c4);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.position == 6);
    }
    CHECK_THROWS_AS(parse_virtual("lambda1", c4), ParseError);
    CHECK_THROWS_AS(parse_virtual("sigma", GroupSpec(3, 1)), ParseError);
    CHECK_THROWS_AS(parse_virtual("", c4), ParseError);
}
