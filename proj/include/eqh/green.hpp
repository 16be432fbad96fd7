#pragma once

#include "eqh/chainmap.hpp"
#include "eqh/homology.hpp"

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace eqh {

// Grading with the trivial summand removed: H_k(S^{V+t}) is stored as H_{k-t}(S^V).
struct GradingPoint {
    VirtualRep rep;  // net multiplicities of nontrivial irreducibles only
    int degree = 0;

    static GradingPoint of(const VirtualRep& v, int k);
    std::string str(const GroupSpec& g) const;
    friend bool operator==(const GradingPoint& a, const GradingPoint& b) {
        return a.degree == b.degree && a.rep == b.rep;
    }
    friend bool operator<(const GradingPoint& a, const GradingPoint& b) {
        if (a.rep < b.rep) return true;
        if (b.rep < a.rep) return false;
        return a.degree < b.degree;
    }
    friend GradingPoint operator+(const GradingPoint& a, const GradingPoint& b);
    friend GradingPoint operator-(const GradingPoint& a, const GradingPoint& b);
};

struct HomologyElement {
    GradingPoint point;
    SubgroupIndex level = 0;
    Vec coords;  // in the generator basis of the level group

    friend bool operator==(const HomologyElement& a, const HomologyElement& b) {
        return a.level == b.level && a.point == b.point && a.coords == b.coords;
    }
    friend bool operator<(const HomologyElement& a, const HomologyElement& b) {
        return std::tie(a.point, a.level, a.coords) < std::tie(b.point, b.level, b.coords);
    }
};

// Products, transfers and divisions in the RO(G)-graded homology of a point.
// Gradings are modelled by C(V) = C_{rho_1}(a_1) box ... box C_{rho_r}(a_r) over all
// nontrivial irreducibles; products go through per-irreducible comparison maps.
// Not thread safe: every method may fill a cache.
class GreenEngine {
public:
    explicit GreenEngine(GroupSpec g, CoefficientSystem k = {});

    const GroupSpec& group() const { return g_; }
    const CoefficientSystem& coefficients() const { return k_; }
    SubgroupIndex top() const { return g_.n; }

    ComplexPtr factor(Irrep r, int a);
    ComplexPtr model(const VirtualRep& v);
    const MackeyPresentation& presentation(const GradingPoint& p);
    const LevelHomology& level_group(const GradingPoint& p, SubgroupIndex h) { return presentation(p).levels[h]; }

    HomologyElement zero(const GradingPoint& p, SubgroupIndex h);
    HomologyElement unit(SubgroupIndex h);
    HomologyElement generator(const GradingPoint& p, SubgroupIndex h, size_t i);
    // Reduced coordinates.
    HomologyElement element(const GradingPoint& p, SubgroupIndex h, Vec coords);

    HomologyElement add(const HomologyElement& x, const HomologyElement& y);
    HomologyElement scale(const HomologyElement& x, const Integer& c);
    bool is_zero(const HomologyElement& x);
    // 0 for elements of infinite order
    Integer order(const HomologyElement& x);

    HomologyElement restrict(const HomologyElement& x);
    HomologyElement transfer(const HomologyElement& x);

    // Bottom-level chain representative and the inverse passage.
    Vec chain_representative(const HomologyElement& x);
    HomologyElement from_cycle(const GradingPoint& p, SubgroupIndex h, const Vec& bottom);

    HomologyElement multiply(const HomologyElement& x, const HomologyElement& y);
    // Matrix of c -> c * x from the level group at p to the level group at p + x.point.
    const IntMatrix& right_multiplication(const GradingPoint& p, const HomologyElement& x);
    // The unique c with c * x = y and ord(c) = ord(y), if there is exactly one.
    std::optional<HomologyElement> divide(const HomologyElement& y, const HomologyElement& x);
    std::optional<HomologyElement> invert(const HomologyElement& x);

    // Euler class of an actual representation at the top level.
    HomologyElement euler_class(const VirtualRep& v);
    // Class of the fundamental cycle at level h (it must be fixed there).
    HomologyElement orientation_class(const VirtualRep& v, SubgroupIndex h);

    // Chain-level product of bottom cycles of the models at p and q.
    Vec multiply_chains(const GradingPoint& p, const Vec& x, const GradingPoint& q, const Vec& y);

    const ChainMap& comparison(Irrep r, int a, int b);

    // Factor decomposition of a bottom basis element of model(v) in degree k.
    struct FactorIndex {
        int degree;
        uint32_t index;
    };
    const std::vector<std::vector<FactorIndex>>& factor_table(const VirtualRep& v, int k);
    size_t join(const VirtualRep& v, const std::vector<FactorIndex>& parts);

private:
    GroupSpec g_;
    CoefficientSystem k_;
    std::vector<Irrep> irreps_;
    std::map<std::pair<Irrep, int>, ComplexPtr> factors_;
    std::map<std::vector<int>, std::vector<ComplexPtr>> models_;  // partial boxes M_1..M_r
    std::map<GradingPoint, MackeyPresentation> presentations_;
    std::map<std::tuple<Irrep, int, int>, ChainMap> comparisons_;
    std::map<std::pair<std::vector<int>, int>, std::vector<std::vector<FactorIndex>>> tables_;
    std::map<std::tuple<GradingPoint, SubgroupIndex, GradingPoint, Vec>, IntMatrix> right_mult_;

    std::vector<int> mults(const VirtualRep& v) const;
    const std::vector<ComplexPtr>& partial_models(const VirtualRep& v);
};

std::string element_str(const HomologyElement& x, const GroupSpec& g);

}  // namespace eqh
