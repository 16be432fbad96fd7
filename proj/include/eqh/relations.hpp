#pragma once

#include "eqh/expression.hpp"

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace eqh {

// One line of a relation file: "name | i=0..4 j=1..3 | lhs | rhs", with [expr]
// placeholders in lhs and rhs. "-" means no parameters; rhs "0" asserts vanishing.
// The range field may also carry the flag zero-if-negative.
struct RelationTemplate {
    struct Range {
        std::string name;
        int lo = 0, hi = 0;
    };
    std::string name;
    std::vector<Range> ranges;
    bool zero_if_negative = false;  // a negative exponent on the right means zero
    std::string lhs, rhs;
    int line = 0;
};

std::vector<RelationTemplate> parse_relations(std::istream& in);
std::vector<RelationTemplate> load_relations(const std::string& path);

// Substitutes [expr] placeholders; expr uses + - * over integers and parameters.
std::string instantiate(const std::string& text, const std::map<std::string, int>& values);

struct RelationFailure {
    std::string name;
    std::string lhs, rhs;
    std::string detail;
};

struct RelationReport {
    size_t checked = 0;
    size_t skipped = 0;
    std::map<std::string, size_t> checked_by_name;
    std::vector<RelationFailure> failures;
    std::vector<std::string> unchecked;  // templates without an instance in range
    bool ok() const { return failures.empty(); }
};

// Evaluates every instance at the given level. A template with no checkable instance
// counts as a failure unless require_instances is off; then it is listed as unchecked.
RelationReport check_relations(ClassEvaluator& ev, const std::vector<RelationTemplate>& rels, int box,
                               SubgroupIndex level, bool require_instances = true);

}  // namespace eqh
