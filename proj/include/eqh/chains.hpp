#pragma once

#include "eqh/group.hpp"
#include "eqh/mackey.hpp"
#include "eqh/matrix.hpp"

#include <memory>
#include <string>
#include <vector>

namespace eqh {

class ChainComplex;
using ComplexPtr = std::shared_ptr<const ChainComplex>;

// How a box-product complex is assembled from its two factors.
struct TensorBlock {
    int left_degree;
    int right_degree;
    size_t offset;  // position of this block inside the bottom level of the product degree
    BoxProduct product;
};

struct TensorInfo {
    ComplexPtr left, right;
    std::vector<std::vector<TensorBlock>> blocks;  // per degree (k - lo)
    // per degree: bottom index -> (block number, left bottom index, right bottom index)
    struct Entry {
        uint32_t block, left, right;
    };
    std::vector<std::vector<Entry>> entries;
};

// Complex of free Mackey functors, stored through its bottom level: a complex of
// permutation modules with G-equivariant differentials.
class ChainComplex {
public:
    GroupSpec group;
    CoefficientSystem coeffs;
    int lo = 0, hi = 0;
    std::vector<FreeMackeyModule> modules;  // index k - lo
    std::vector<IntMatrix> diffs;           // index k - lo: C_k -> C_{k-1}
    // Generator of the nonequivariant homology (a sphere has exactly one).
    int top_degree = 0;
    Vec fundamental;
    std::shared_ptr<const TensorInfo> tensor;

    bool has(int k) const { return k >= lo && k <= hi; }
    const FreeMackeyModule& module(int k) const;
    size_t rank(int k) const { return has(k) ? modules[k - lo].bottom_rank() : 0; }
    // Bottom-level differential C_k -> C_{k-1}; zero outside the range.
    IntMatrix d(int k) const;
    // Differential at level h in orbit-sum coordinates.
    IntMatrix d_level(int k, SubgroupIndex h) const;
    Vec apply_d(int k, const Vec& v) const;

    // Index of a box-product bottom element from its factor indices.
    size_t tensor_index(int k, int left_degree, size_t left, size_t right) const;

    void check() const;  // throws if d o d != 0 or shapes are inconsistent
};

// Cellular chains of S^V for an actual representation V.
ComplexPtr positive_chains(const VirtualRep& v, const GroupSpec& g);
// Dual cochains of S^V placed in degrees [-dim V, 0]; a model for S^{-V}.
ComplexPtr negative_cochains(const VirtualRep& v, const GroupSpec& g);
// Degree-wise dual: D_{-k} = Hom(C_k, Z) with transposed differentials.
ComplexPtr dual_complex(const ChainComplex& c);
ComplexPtr shift_complex(const ComplexPtr& c, int t);
// Box product with differential d(x*y) = dx*y + (-1)^{|x|} x*dy.
ComplexPtr box_complex(const ComplexPtr& a, const ComplexPtr& b);
// S^{V+} smash S^{-V-} for V = V+ - V-, with trivial summands as a degree shift.
ComplexPtr sphere_complex(const VirtualRep& v, const GroupSpec& g);
// One-cell complex Z in degree 0.
ComplexPtr unit_complex(const GroupSpec& g);

ComplexPtr with_coefficients(const ComplexPtr& c, const CoefficientSystem& k);

std::string dump(const ChainComplex& c);

}  // namespace eqh
