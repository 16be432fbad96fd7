#pragma once

#include "eqh/green.hpp"

#include <map>
#include <optional>
#include <vector>

namespace eqh {

struct MasseyResult {
    bool defined = false;
    HomologyElement representative;
    std::vector<HomologyElement> indeterminacy;  // generators of x*H + H*z

    // c lies in representative + indeterminacy
    bool contains(GreenEngine& e, const HomologyElement& c) const;
    // the subgroup generated by indeterminacy contains d
    bool in_indeterminacy(GreenEngine& e, const HomologyElement& d) const;
};

// Triple Massey products <x, y, z> at a common level. Bounding chains are solved in
// the box models box(C(V_x), C(V_y)) and box(C(V_y), C(V_z)), where tensors of chains are
// strictly associative; s*z + (-1)^{|x|+1} x*t is then pushed into C(V_x+V_y+V_z) by
// the chain map mu o (mu box 1).
class MasseyEngine {
public:
    explicit MasseyEngine(GreenEngine& e) : e_(e) {}

    MasseyResult massey3(const HomologyElement& x, const HomologyElement& y, const HomologyElement& z);

    // Pieces, exposed so bounding chains can be chosen freely.
    ComplexPtr pair_model(const GradingPoint& p, const GradingPoint& q);
    // a (x) b in the pair model, degree |a| + |b|
    Vec tensor(const GradingPoint& p, const Vec& a, const GradingPoint& q, const Vec& b);
    // A fixed chain s with d s = a (x) b (mod the coefficient modulus) at level h.
    std::optional<Vec> bounding_chain(const GradingPoint& p, const Vec& a, const GradingPoint& q, const Vec& b,
                                      SubgroupIndex h);
    // Fixed cycles (mod the modulus) in the pair model at degree k, level h, as bottom vectors.
    std::vector<Vec> fixed_cycles(const GradingPoint& p, const GradingPoint& q, int k, SubgroupIndex h);
    bool bounds(const GradingPoint& p, const Vec& a, const GradingPoint& q, const Vec& b, const Vec& s);
    // Class of s*z + (-1)^{|x|+1} x*t for given bounding chains.
    HomologyElement assemble(const HomologyElement& x, const HomologyElement& y, const HomologyElement& z,
                             const Vec& s, const Vec& t);
    std::vector<HomologyElement> indeterminacy(const HomologyElement& x, const HomologyElement& y,
                                               const HomologyElement& z);

private:
    GreenEngine& e_;
    std::map<std::pair<VirtualRep, VirtualRep>, ComplexPtr> pairs_;

    // mu applied to a chain of the pair model in degree k
    Vec pair_product(const GradingPoint& p, const GradingPoint& q, int k, const Vec& chain);
    Vec reduce_coefficients(const Vec& v) const;
};

}  // namespace eqh
