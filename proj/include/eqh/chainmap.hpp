#pragma once

#include "eqh/chains.hpp"

#include <vector>

namespace eqh {

// Equivariant chain map stored through the images of the orbit representatives.
class ChainMap {
public:
    ComplexPtr source, target;
    // images[k - source->lo][b]: bottom vector in target degree k, fixed by the stabilizer of cell b
    std::vector<std::vector<Vec>> images;

    // out += c * phi(e_idx) for a bottom basis element of source degree k
    void accumulate(int k, size_t idx, const Integer& c, Vec& out) const;
    Vec apply(int k, const Vec& x) const;
};

// Equivariant chain map s -> t sending the fundamental cycle of s to the fundamental
// cycle of t modulo boundaries at the bottom level. Throws if none exists.
ChainMap solve_comparison(const ComplexPtr& s, const ComplexPtr& t);

}  // namespace eqh
