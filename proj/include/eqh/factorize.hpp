#pragma once

#include "eqh/expression.hpp"

#include <map>
#include <vector>

namespace eqh {

struct FactorizeOptions {
    int box = 4;              // |n|, |m| bound on every grading visited
    bool adjoin_s3 = false;   // seed the extension class s_3 as well
    int max_weight = 24;      // safety bound on expression weight
};

struct GeneratorExpression {
    size_t index;        // generator index in the level group
    ExprPtr expr;        // evaluates exactly to that generator
};

struct SpotFactorization {
    GradingPoint point;
    SubgroupIndex level;
    bool generated = false;  // reached classes generate the level group
    std::vector<std::pair<ExprPtr, HomologyElement>> basis;  // shortest generating set found
    std::vector<GeneratorExpression> generators;             // filled when generated
};

struct FactorizationResult {
    std::vector<SpotFactorization> spots;  // every nonzero level group in the box
    size_t states = 0;
    std::vector<const SpotFactorization*> unreachable() const;
};

// Shortest-first search over classes built from the Euler and orientation classes by
// multiplication, division by Euler/orientation monomials, transfer and restriction.
// Only meaningful for C4 with integral coefficients.
FactorizationResult factorize(ClassEvaluator& ev, const FactorizeOptions& opt = {});

}  // namespace eqh
