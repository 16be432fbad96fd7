#include "doctest.h"
#include "massey_support.hpp"

#include <iostream>

using namespace eqh;
using namespace masseycheck;

namespace {

void check_triple(GreenEngine& e, MasseyEngine& me, const Triple& t, bool brute, size_t* enumerated = nullptr) {
    auto bad = triple_problems(e, me, t, brute, enumerated);
    for (const auto& b : bad)
        MESSAGE("<" << element_str(t.x, e.group()) << ", " << element_str(t.y, e.group()) << ", "
                    << element_str(t.z, e.group()) << ">: " << b);
    CHECK(bad.empty());
}

}  // namespace

TEST_CASE("zero middle factor") {
    GreenEngine e(GroupSpec(2, 2));
    MasseyEngine me(e);
    HomologyElement a = e.euler_class(VirtualRep::of(Irrep::sigma(), 1));
    HomologyElement u = e.orientation_class(VirtualRep::of(Irrep::lambda(2), 1), 2);
    GradingPoint p0 = GradingPoint::of(VirtualRep::of(Irrep::sigma(), 2), -1);
    MasseyResult r = me.massey3(a, e.zero(p0, 2), u);
    CHECK(r.defined);
    CHECK(r.contains(e, e.zero(r.representative.point, 2)));
    CHECK(r.representative.point.degree == a.point.degree + p0.degree + u.point.degree + 1);
}

TEST_CASE("undefined when a product is nonzero") {
    GreenEngine e(GroupSpec(2, 2));
    MasseyEngine me(e);
    HomologyElement a = e.euler_class(VirtualRep::of(Irrep::sigma(), 1));
    HomologyElement two = e.scale(e.unit(2), 2);
    REQUIRE(!e.is_zero(e.multiply(a, a)));
    CHECK_FALSE(me.massey3(a, a, two).defined);
    CHECK_FALSE(me.massey3(two, a, a).defined);
    CHECK(me.massey3(two, a, two).defined);
}

TEST_CASE("properties on C2") {
    GreenEngine e(GroupSpec(2, 1));
    MasseyEngine me(e);
    auto triples = defined_triples(e, small_classes(e, 2), 400);
    REQUIRE(triples.size() > 20);
    size_t brute = 0, nonzero = 0, enumerated = 0;
    for (const auto& t : triples) {
        bool small = small_enough(me, t);
        brute += small;
        check_triple(e, me, t, small, &enumerated);
        MasseyResult r = me.massey3(t.x, t.y, t.z);
        nonzero += !r.contains(e, e.zero(r.representative.point, r.representative.level));
    }
    CHECK(brute > 10);
    CHECK(enumerated > 100);
    MESSAGE("C2 triples " << triples.size() << ", brute forced " << brute << ", not containing 0 " << nonzero);
}

TEST_CASE("properties on C4") {
    GreenEngine e(GroupSpec(2, 2));
    MasseyEngine me(e);
    auto triples = defined_triples(e, small_classes(e, 1), 250);
    REQUIRE(triples.size() > 20);
    size_t brute = 0;
    for (const auto& t : triples) {
        bool small = small_enough(me, t);
        brute += small;
        check_triple(e, me, t, small);
    }
    CHECK(brute > 10);
}

TEST_CASE("a_sigma, a_sigma, y on C4 is undefined and <2, a_sigma, 2> is checked exhaustively") {
    GreenEngine e(GroupSpec(2, 2));
    MasseyEngine me(e);
    HomologyElement a = e.euler_class(VirtualRep::of(Irrep::sigma(), 1));
    HomologyElement two = e.scale(e.unit(2), 2);
    CHECK_FALSE(me.massey3(a, a, two).defined);
    check_triple(e, me, {two, a, two}, true);
    check_triple(e, me, {a, two, a}, true);
}

TEST_CASE("mod 2 smoke runs") {
    for (int n : {1, 2}) {
        GreenEngine e(GroupSpec(2, n), CoefficientSystem{2});
        MasseyEngine me(e);
        auto triples = defined_triples(e, small_classes(e, n == 1 ? 3 : 1), 150);
        size_t nonzero = 0;
        for (const auto& t : triples) {
            check_triple(e, me, t, false);
            MasseyResult r = me.massey3(t.x, t.y, t.z);
            if (!r.contains(e, e.zero(r.representative.point, r.representative.level))) {
                if (nonzero++ < 5)
                    std::cout << "C" << (1 << n) << " F2 <" << element_str(t.x, e.group()) << ", "
                              << element_str(t.y, e.group()) << ", " << element_str(t.z, e.group())
                              << "> contains " << element_str(r.representative, e.group()) << "\n";
            }
        }
        MESSAGE("C" << (1 << n) << " mod 2: " << triples.size() << " triples, " << nonzero << " not containing 0");
    }
}
