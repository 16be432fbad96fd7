#pragma once

#include "eqh/group.hpp"
#include "eqh/matrix.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace eqh {

struct CoefficientSystem {
    Integer modulus = 0;  // 0 means Z

    bool is_integral() const { return modulus.is_zero(); }
    std::string str() const { return is_integral() ? "Z" : "Z/" + modulus.str(); }
    static CoefficientSystem parse(const std::string& text);
    friend bool operator==(const CoefficientSystem& a, const CoefficientSystem& b) { return a.modulus == b.modulus; }
};

struct OrbitCell {
    SubgroupIndex orbit;  // stabilizer level; the cell is a copy of G/H
    std::string label;
};

// Fixed-point functor of the permutation module Z[ coprod G/H_i ].
// Bottom basis: for each basis cell b, the elements g^i * b for 0 <= i < |G/H_b|.
class FreeMackeyModule {
public:
    FreeMackeyModule() = default;
    FreeMackeyModule(GroupSpec g, std::vector<OrbitCell> basis);

    const GroupSpec& group() const { return g_; }
    const std::vector<OrbitCell>& basis() const { return basis_; }
    size_t size() const { return basis_.size(); }

    long orbit_size(size_t b) const { return GroupSpec::ipow(g_.p, g_.n - basis_[b].orbit); }
    size_t offset(size_t b) const { return offsets_[b]; }
    size_t bottom_rank() const { return offsets_.back(); }
    size_t level_rank(SubgroupIndex h) const;

    // Bottom index of g^i * b.
    size_t element(size_t b, long i) const;
    size_t cell_of(size_t idx) const;
    // g^s applied to a bottom index.
    size_t act(size_t idx, long s) const;

    // H-orbit sums, ordered by basis cell then coset power of g.
    std::vector<std::vector<size_t>> level_basis(SubgroupIndex h) const;
    // First bottom element of each H-orbit sum; reading a fixed vector there gives level coordinates.
    std::vector<size_t> level_leaders(SubgroupIndex h) const;

    Vec to_level(const Vec& bottom, SubgroupIndex h) const;
    Vec from_level(const Vec& level, SubgroupIndex h) const;
    bool is_fixed(const Vec& bottom, SubgroupIndex h) const;

    // Restriction from level h to h-1, transfer from h-1 to h, Weyl action at level h.
    IntMatrix res(SubgroupIndex h) const;
    IntMatrix tr(SubgroupIndex h) const;
    IntMatrix weyl(SubgroupIndex h) const;

    // Permutation matrix of g on the bottom level.
    IntMatrix bottom_action() const;

private:
    GroupSpec g_;
    std::vector<OrbitCell> basis_;
    std::vector<size_t> offsets_{0};
    std::vector<uint32_t> cell_;
};

struct LevelMaps {
    std::vector<IntMatrix> res;   // res[h]: level h -> h-1, h = 1..n (res[0] unused)
    std::vector<IntMatrix> tr;    // tr[h]: level h-1 -> h
    std::vector<IntMatrix> weyl;  // weyl[h]
};

LevelMaps structure_maps(const FreeMackeyModule& m);

// Matrix at level h of a G-equivariant bottom-level map between free modules.
IntMatrix level_matrix(const IntMatrix& bottom, const FreeMackeyModule& src, const FreeMackeyModule& dst,
                       SubgroupIndex h);

// Box product with the identification of its bottom level with the tensor product of bottom levels.
struct BoxProduct {
    FreeMackeyModule module;
    // tensor index (i1 * rank2 + i2) -> bottom index of module, and back.
    std::vector<uint32_t> tensor_to_box;
    std::vector<std::pair<uint32_t, uint32_t>> box_to_tensor;

    IntMatrix identification() const;  // permutation matrix: box bottom <- tensor
};

BoxProduct box(const FreeMackeyModule& m1, const FreeMackeyModule& m2);

}  // namespace eqh
