#pragma once

#include "eqh/chains.hpp"

#include <optional>
#include <string>
#include <vector>

namespace eqh {

// Homology of the level-h complex in one degree. With Z/q coefficients the level
// complex is replaced by the mapping cone of q, whose integral homology is the
// mod-q homology; chain representatives are the first cone component.
class LevelHomology {
public:
    HomologyGroup group;
    size_t chain_rank = 0;  // rank of C_k at this level
    Integer modulus = 0;
    IntMatrix d_out;  // level differential C_k -> C_{k-1}, used to lift mod-q cycles

    size_t size() const { return group.size(); }
    Integer order(size_t i) const { return group.order(i); }
    // Chain-level cycle (level coordinates) representing coords.
    Vec representative(const Vec& coords) const;
    Vec generator_rep(size_t i) const;
    // Coordinates of a level-coordinate cycle (a cycle mod q for Z/q).
    Vec express(const Vec& cycle) const;
    Vec reduce(const Vec& coords) const { return group.reduce(coords); }
    bool is_cycle(const Vec& chain) const;
};

// Level groups and structure maps in generator coordinates; level 0 is the bottom.
struct MackeyPresentation {
    GroupSpec group;
    CoefficientSystem coeffs;
    int degree = 0;
    std::vector<LevelHomology> levels;
    std::vector<IntMatrix> res;   // res[h]: level h -> h-1
    std::vector<IntMatrix> tr;    // tr[h]: level h-1 -> h
    std::vector<IntMatrix> weyl;  // weyl[h]

    bool is_zero() const;
    // "top;...;bottom"
    std::string groups_string() const;
};

std::string group_string(const HomologyGroup& g);

MackeyPresentation compute_homology(const ChainComplex& c, int k);
std::vector<MackeyPresentation> compute_all(const ChainComplex& c);

// Abstract Lewis diagram: level groups in normal form (torsion then free) and maps.
struct LewisDiagram {
    struct Level {
        Vec torsion;  // ascending, divisibility chain
        size_t free_rank = 0;
        size_t size() const { return torsion.size() + free_rank; }
        Integer order(size_t i) const { return i < torsion.size() ? torsion[i] : Integer(0); }
        friend bool operator==(const Level&, const Level&) = default;
    };
    int n = 2;  // levels 0..n
    std::vector<Level> levels;
    std::vector<IntMatrix> res, tr, weyl;

    static LewisDiagram from(const MackeyPresentation& m);
    std::string groups_string() const;
};

LewisDiagram direct_sum(const std::vector<LewisDiagram>& parts);

struct CatalogEntry {
    std::string name;
    LewisDiagram diagram;
};

// The C_4 catalog, in rendering order: summands with a free part first.
const std::vector<CatalogEntry>& c4_catalog();
const CatalogEntry* catalog_entry(const std::string& name);

struct Identification {
    bool known = false;
    std::string name;  // canonical name, "0" for the zero functor, "unknown" otherwise
    std::vector<size_t> summands;  // catalog indices
    std::vector<IntMatrix> witness;  // level-wise isomorphisms computed -> catalog
};

Identification identify(const LewisDiagram& d);
Identification identify(const MackeyPresentation& m);

// Canonical form of a name or "+"-joined sum; throws on unknown names.
std::vector<size_t> parse_catalog_name(const std::string& name);
std::string render_catalog_name(std::vector<size_t> summands);
std::string canonical_name(const std::string& name);

// Level-wise isomorphism test with witness (bounded search on free parts).
std::optional<std::vector<IntMatrix>> find_isomorphism(const LewisDiagram& a, const LewisDiagram& b);

}  // namespace eqh
