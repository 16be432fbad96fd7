#pragma once

#include <compare>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace eqh {

// The cyclic group C_{p^n} with a fixed generator g.
struct GroupSpec {
    int p = 2;
    int n = 2;

    GroupSpec() = default;
    GroupSpec(int p_, int n_);
    long order() const { return ipow(p, n); }
    static long ipow(long b, int e);
    // Order of the subgroup at a given level (levels 0..n, level l has order p^l).
    long subgroup_order(int level) const { return ipow(p, level); }
    std::string str() const;
    friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

// Subgroups of a cyclic p-group form a chain; a subgroup is named by its order exponent.
using SubgroupIndex = int;

enum class IrrepKind { Trivial = 0, Sigma = 1, Lambda = 2 };

struct Irrep {
    IrrepKind kind = IrrepKind::Trivial;
    int k = 0;  // for Lambda: rotation by 2*pi/p^k

    static Irrep trivial() { return {IrrepKind::Trivial, 0}; }
    static Irrep sigma() { return {IrrepKind::Sigma, 0}; }
    static Irrep lambda(int k) { return {IrrepKind::Lambda, k}; }

    int dim() const { return kind == IrrepKind::Lambda ? 2 : 1; }
    // Level of the kernel; cells of this irreducible have orbit type G/kernel.
    int kernel_level(const GroupSpec& g) const;
    void validate(const GroupSpec& g) const;
    std::string name(const GroupSpec& g) const;
    auto operator<=>(const Irrep&) const = default;
};

// Nontrivial irreducibles ordered by decreasing kernel: sigma (p = 2), then lambda_k with k increasing.
std::vector<Irrep> nontrivial_irreps(const GroupSpec& g);

// Formal difference plus - minus of actual representations. The two halves are kept
// as written so that e.g. lambda - lambda is not cancelled; normalized() cancels.
class VirtualRep {
public:
    VirtualRep() = default;
    static VirtualRep of(Irrep r, int mult);

    int net(Irrep r) const;
    int plus_mult(Irrep r) const;
    int minus_mult(Irrep r) const;
    const std::map<Irrep, int>& plus() const { return plus_; }
    const std::map<Irrep, int>& minus() const { return minus_; }

    void add(Irrep r, int mult);
    bool is_actual() const { return minus_.empty(); }
    bool is_zero() const;
    int dim() const;
    VirtualRep normalized() const;
    VirtualRep negated() const;
    std::vector<Irrep> support() const;

    std::string str(const GroupSpec& g) const;

    VirtualRep& operator+=(const VirtualRep& o);
    VirtualRep& operator-=(const VirtualRep& o);
    friend VirtualRep operator+(VirtualRep a, const VirtualRep& b) { return a += b; }
    friend VirtualRep operator-(VirtualRep a, const VirtualRep& b) { return a -= b; }
    // Equality and ordering compare net multiplicities.
    friend bool operator==(const VirtualRep& a, const VirtualRep& b);
    friend bool operator<(const VirtualRep& a, const VirtualRep& b);

private:
    std::map<Irrep, int> plus_, minus_;
};

std::pair<VirtualRep, VirtualRep> split_virtual(const VirtualRep& v);

struct ParseError : std::runtime_error {
    size_t position;
    ParseError(const std::string& msg, size_t pos)
        : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}
};

// "3*sigma-2*lambda", "1+2*sigma", "-lambda2". Bare "lambda" is the faithful lambda_n.
VirtualRep parse_virtual(const std::string& text, const GroupSpec& g);

struct OrbitProduct {
    SubgroupIndex orbit;
    long copies;
};

// G/H x G/K decomposes as copies of G/(H cap K).
OrbitProduct orbit_product(SubgroupIndex h, SubgroupIndex k, const GroupSpec& g);

}  // namespace eqh
