#pragma once

#include "eqh/green.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace eqh {

struct ClassExpression;
using ExprPtr = std::shared_ptr<const ClassExpression>;

// Expression tree over named classes. A tree rather than a flat fraction because
// (x/z)*y and (x*y)/z are different elements in general.
struct ClassExpression {
    enum class Kind { Number, Atom, Power, Product, Quotient, Sum, Difference, Negation, Transfer, Restriction };
    Kind kind = Kind::Number;
    Integer number = 0;
    std::string atom;
    int exponent = 1;
    std::vector<ExprPtr> args;

    static ExprPtr num(const Integer& n);
    static ExprPtr named(const std::string& atom);
    static ExprPtr pow(ExprPtr base, int k);
    static ExprPtr mul(ExprPtr a, ExprPtr b);
    static ExprPtr div(ExprPtr a, ExprPtr b);
    static ExprPtr sum(ExprPtr a, ExprPtr b);
    static ExprPtr difference(ExprPtr a, ExprPtr b);
    static ExprPtr negate(ExprPtr a);
    static ExprPtr tr(ExprPtr a);
    static ExprPtr res(ExprPtr a);

    std::string str() const;
    int divisions() const;
    int weight() const;
    bool mentions(const std::string& atom_prefix) const;
};

// "u_{2s}^2 * s_3 / (a_l * u_l)", "2u_{2s}/u_l", "Tr(2 * u_s / u_l^2)". Throws ParseError.
ExprPtr parse_expression(const std::string& text);
// Canonical spelling of an atom ("a_sigma" -> "a_s"); throws ParseError on unknown names.
std::string canonical_atom(const std::string& name);

// Evaluates expressions at a level: atoms are restricted from their native level, Tr and
// Res move between levels, and a failed division makes the whole value absent.
class ClassEvaluator {
public:
    explicit ClassEvaluator(GreenEngine& engine) : e_(engine) {}

    GreenEngine& engine() { return e_; }
    // Level where the atom is defined.
    SubgroupIndex native_level(const std::string& atom) const;
    HomologyElement atom(const std::string& name, SubgroupIndex level);
    std::optional<HomologyElement> evaluate(const ExprPtr& e, SubgroupIndex level);
    std::optional<HomologyElement> evaluate(const std::string& text, SubgroupIndex level) {
        return evaluate(parse_expression(text), level);
    }
    // Grading of the value, computed from the tree without evaluating.
    GradingPoint grading(const ExprPtr& e) const;
    // Every subexpression has |multiplicity| <= box for each nontrivial irreducible.
    bool within(const ExprPtr& e, int box) const;
    // Product using cached multiplication matrices.
    HomologyElement times(const HomologyElement& x, const HomologyElement& y);

private:
    GreenEngine& e_;
    std::map<std::pair<std::string, SubgroupIndex>, HomologyElement> atoms_;
    std::map<std::pair<std::string, SubgroupIndex>, std::optional<HomologyElement>> memo_;
    HomologyElement power(const HomologyElement& x, int k);
};

}  // namespace eqh
