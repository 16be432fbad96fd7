#include "eqh/expression.hpp"

#include <cctype>
#include <regex>
#include <stdexcept>

namespace eqh {

using K = ClassExpression::Kind;

namespace {

ExprPtr make(K kind, std::vector<ExprPtr> args = {}) {
    auto e = std::make_shared<ClassExpression>();
    e->kind = kind;
    e->args = std::move(args);
    return e;
}

}  // namespace

ExprPtr ClassExpression::num(const Integer& n) {
    auto e = std::make_shared<ClassExpression>();
    e->kind = K::Number;
    e->number = n;
    return e;
}

ExprPtr ClassExpression::named(const std::string& a) {
    auto e = std::make_shared<ClassExpression>();
    e->kind = K::Atom;
    e->atom = a;
    return e;
}

ExprPtr ClassExpression::pow(ExprPtr base, int k) {
    if (k == 1) return base;
    auto e = std::make_shared<ClassExpression>();
    e->kind = K::Power;
    e->exponent = k;
    e->args = {std::move(base)};
    return e;
}

ExprPtr ClassExpression::mul(ExprPtr a, ExprPtr b) { return make(K::Product, {std::move(a), std::move(b)}); }
ExprPtr ClassExpression::div(ExprPtr a, ExprPtr b) { return make(K::Quotient, {std::move(a), std::move(b)}); }
ExprPtr ClassExpression::sum(ExprPtr a, ExprPtr b) { return make(K::Sum, {std::move(a), std::move(b)}); }
ExprPtr ClassExpression::difference(ExprPtr a, ExprPtr b) { return make(K::Difference, {std::move(a), std::move(b)}); }
ExprPtr ClassExpression::negate(ExprPtr a) { return make(K::Negation, {std::move(a)}); }
ExprPtr ClassExpression::tr(ExprPtr a) { return make(K::Transfer, {std::move(a)}); }
ExprPtr ClassExpression::res(ExprPtr a) { return make(K::Restriction, {std::move(a)}); }

namespace {

bool simple(const ClassExpression& e) {
    return e.kind == K::Atom || e.kind == K::Transfer || e.kind == K::Restriction ||
           (e.kind == K::Number && e.number.sign() >= 0);
}

std::string wrap(const ExprPtr& e, bool paren) { return paren ? "(" + e->str() + ")" : e->str(); }

bool additive(const ClassExpression& e) {
    return e.kind == K::Sum || e.kind == K::Difference || e.kind == K::Negation ||
           (e.kind == K::Number && e.number.sign() < 0);
}

}  // namespace

std::string ClassExpression::str() const {
    switch (kind) {
    case K::Number: return number.str();
    case K::Atom: return atom;
    case K::Power: return wrap(args[0], !simple(*args[0])) + "^" + std::to_string(exponent);
    case K::Product: {
        const ExprPtr& b = args[1];
        bool pb = additive(*b) || b->kind == K::Product || b->kind == K::Quotient;
        return wrap(args[0], additive(*args[0])) + " * " + wrap(b, pb);
    }
    case K::Quotient: {
        const ExprPtr& b = args[1];
        return wrap(args[0], additive(*args[0])) + " / " + wrap(b, !(simple(*b) || b->kind == K::Power));
    }
    case K::Sum: return args[0]->str() + " + " + wrap(args[1], args[1]->kind == K::Sum || args[1]->kind == K::Difference);
    case K::Difference: return args[0]->str() + " - " + wrap(args[1], additive(*args[1]));
    case K::Negation: return "-" + wrap(args[0], !(simple(*args[0]) || args[0]->kind == K::Power));
    case K::Transfer: return "Tr(" + args[0]->str() + ")";
    case K::Restriction: return "Res(" + args[0]->str() + ")";
    }
    return "";
}

int ClassExpression::divisions() const {
    int d = kind == K::Quotient ? 1 : 0;
    for (auto& a : args) d += a->divisions();
    return d;
}

int ClassExpression::weight() const {
    switch (kind) {
    case K::Number: return number == 1 || number == -1 ? 0 : 1;
    case K::Atom: return 1;
    case K::Power: return std::abs(exponent) * args[0]->weight();
    case K::Transfer:
    case K::Restriction: return 1 + args[0]->weight();
    default: {
        int w = 0;
        for (auto& a : args) w += a->weight();
        return w;
    }
    }
}

bool ClassExpression::mentions(const std::string& prefix) const {
    if (kind == K::Atom && atom.rfind(prefix, 0) == 0) return true;
    for (auto& a : args)
        if (a->mentions(prefix)) return true;
    return false;
}

std::string canonical_atom(const std::string& name) {
    static const std::map<std::string, std::string> alias = {
        {"a_s", "a_s"},       {"a_sigma", "a_s"},   {"a_l", "a_l"},           {"a_lambda", "a_l"},
        {"u_s", "u_s"},       {"u_sigma", "u_s"},   {"u_l", "u_l"},           {"u_lambda", "u_l"},
        {"u_{2s}", "u_{2s}"}, {"u_2s", "u_{2s}"},   {"u_{2sigma}", "u_{2s}"}, {"s_3", "s_3"},
        {"s3", "s_3"},        {"s_{3}", "s_3"},
    };
    auto it = alias.find(name);
    if (it != alias.end()) return it->second;
    std::smatch m;
    static const std::regex w(R"(w_\{?(\d+)\}?)"), x(R"(x_\{(\d+),(\d+)\})");
    if (std::regex_match(name, m, w)) {
        int n = std::stoi(m[1]);
        if (n >= 3 && n % 2 == 1) return "w_" + std::to_string(n);
    }
    if (std::regex_match(name, m, x)) {
        int n = std::stoi(m[1]), k = std::stoi(m[2]);
        if (n >= 1 && n % 2 == 1 && k >= 1) return "x_{" + std::to_string(n) + "," + std::to_string(k) + "}";
    }
    throw ParseError("unknown class '" + name + "'", 0);
}

namespace {

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    ExprPtr parse() {
        ExprPtr e = expr();
        skip();
        if (i_ != s_.size()) throw ParseError("unexpected '" + std::string(1, s_[i_]) + "'", i_);
        return e;
    }

private:
    const std::string& s_;
    size_t i_ = 0;

    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool peek(char c) {
        skip();
        return i_ < s_.size() && s_[i_] == c;
    }
    bool starts_factor() {
        skip();
        if (i_ >= s_.size()) return false;
        char c = s_[i_];
        return std::isalpha(static_cast<unsigned char>(c)) || c == '(' || std::isdigit(static_cast<unsigned char>(c));
    }

    ExprPtr expr() {
        ExprPtr e = term();
        while (true) {
            if (peek('+')) {
                ++i_;
                e = ClassExpression::sum(e, term());
            } else if (peek('-')) {
                ++i_;
                e = ClassExpression::difference(e, term());
            } else {
                return e;
            }
        }
    }

    ExprPtr term() {
        ExprPtr e = unary();
        while (true) {
            if (peek('*')) {
                ++i_;
                e = ClassExpression::mul(e, unary());
            } else if (peek('/')) {
                ++i_;
                e = ClassExpression::div(e, unary());
            } else if (starts_factor()) {
                e = ClassExpression::mul(e, power());
            } else {
                return e;
            }
        }
    }

    ExprPtr unary() {
        if (peek('-')) {
            ++i_;
            ExprPtr a = unary();
            if (a->kind == K::Number) return ClassExpression::num(-a->number);
            return ClassExpression::negate(a);
        }
        return power();
    }

    ExprPtr power() {
        ExprPtr b = primary();
        if (peek('^')) {
            ++i_;
            skip();
            bool neg = false;
            if (i_ < s_.size() && s_[i_] == '-') {
                neg = true;
                ++i_;
            }
            size_t start = i_;
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
            if (start == i_) throw ParseError("expected an exponent", start);
            int k = std::stoi(s_.substr(start, i_ - start));
            return ClassExpression::pow(b, neg ? -k : k);
        }
        return b;
    }

    ExprPtr primary() {
        skip();
        if (i_ >= s_.size()) throw ParseError("unexpected end of expression", i_);
        char c = s_[i_];
        if (c == '(') {
            ++i_;
            ExprPtr e = expr();
            if (!peek(')')) throw ParseError("expected ')'", i_);
            ++i_;
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = i_;
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
            return ClassExpression::num(Integer(s_.substr(start, i_ - start)));
        }
        if (!std::isalpha(static_cast<unsigned char>(c))) throw ParseError("unexpected '" + std::string(1, c) + "'", i_);
        size_t start = i_;
        while (i_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[i_]))) ++i_;
        std::string word = s_.substr(start, i_ - start);
        if (word == "Tr" || word == "Res") {
            if (!peek('(')) throw ParseError("expected '(' after " + word, i_);
            ++i_;
            ExprPtr a = expr();
            if (!peek(')')) throw ParseError("expected ')'", i_);
            ++i_;
            return word == "Tr" ? ClassExpression::tr(a) : ClassExpression::res(a);
        }
        if (i_ < s_.size() && s_[i_] == '_') {
            word += '_';
            ++i_;
            if (i_ < s_.size() && s_[i_] == '{') {
                size_t close = s_.find('}', i_);
                if (close == std::string::npos) throw ParseError("unterminated '{'", i_);
                word += s_.substr(i_, close - i_ + 1);
                i_ = close + 1;
            } else {
                size_t b = i_;
                while (i_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[i_]))) ++i_;
                word += s_.substr(b, i_ - b);
            }
        } else {
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) word += s_[i_++];
        }
        try {
            return ClassExpression::named(canonical_atom(word));
        } catch (const ParseError& e) {
            throw ParseError("unknown class '" + word + "'", start);
        }
    }
};

}  // namespace

ExprPtr parse_expression(const std::string& text) { return Parser(text).parse(); }

SubgroupIndex ClassEvaluator::native_level(const std::string& a) const {
    if (a == "u_s") return e_.top() - 1;
    return e_.top();
}

GradingPoint ClassEvaluator::grading(const ExprPtr& e) const {
    const GroupSpec& g = e_.group();
    Irrep s = Irrep::sigma(), l = Irrep::lambda(g.n);
    auto at = [](VirtualRep v, int k) { return GradingPoint::of(v, k); };
    switch (e->kind) {
    case K::Number: return GradingPoint{};
    case K::Atom: {
        const std::string& a = e->atom;
        if (a == "a_s") return at(VirtualRep::of(s, 1), 0);
        if (a == "a_l") return at(VirtualRep::of(l, 1), 0);
        if (a == "u_{2s}") return at(VirtualRep::of(s, 2), 2);
        if (a == "u_l") return at(VirtualRep::of(l, 1), 2);
        if (a == "u_s") return at(VirtualRep::of(s, 1), 1);
        if (a == "s_3") return at(VirtualRep::of(l, -2), -3);
        if (a[0] == 'w') {
            int n = std::stoi(a.substr(2));
            return at(VirtualRep::of(s, -n), -n);
        }
        int n = 0, m = 0;
        std::sscanf(a.c_str(), "x_{%d,%d}", &n, &m);
        return at(VirtualRep::of(s, -n) + VirtualRep::of(l, -m), -n - 2 * m);
    }
    case K::Power: {
        GradingPoint b = grading(e->args[0]), r;
        for (int i = 0; i < std::abs(e->exponent); ++i) r = e->exponent > 0 ? r + b : r - b;
        return r;
    }
    case K::Product: return grading(e->args[0]) + grading(e->args[1]);
    case K::Quotient: return grading(e->args[0]) - grading(e->args[1]);
    case K::Sum:
    case K::Difference: {
        GradingPoint a = grading(e->args[0]), b = grading(e->args[1]);
        if (!(a == b)) throw std::invalid_argument("sum of classes in different gradings: " + e->str());
        return a;
    }
    default: return grading(e->args[0]);
    }
}

namespace {

bool fits(const GradingPoint& p, int box) {
    VirtualRep v = p.rep.normalized();
    for (auto r : v.support())
        if (std::abs(v.net(r)) > box) return false;
    return true;
}

}  // namespace

bool ClassEvaluator::within(const ExprPtr& e, int box) const {
    if (!fits(grading(e), box)) return false;
    for (auto& a : e->args)
        if (!within(a, box)) return false;
    if (e->kind == K::Power) {
        GradingPoint b = grading(e->args[0]), r;
        for (int i = 0; i < std::abs(e->exponent); ++i) {
            r = e->exponent > 0 ? r + b : r - b;
            if (!fits(r, box)) return false;
        }
    }
    return true;
}

HomologyElement ClassEvaluator::power(const HomologyElement& x, int k) {
    HomologyElement r = e_.unit(x.level);
    if (k < 0) {
        auto inv = e_.invert(x);
        if (!inv) throw std::domain_error("not invertible");
        for (int i = 0; i < -k; ++i) r = times(r, *inv);
        return r;
    }
    for (int i = 0; i < k; ++i) r = times(r, x);
    return r;
}

HomologyElement ClassEvaluator::times(const HomologyElement& x, const HomologyElement& y) {
    if (x.level != y.level) throw std::invalid_argument("multiply: factors live on different levels");
    const IntMatrix& m = e_.right_multiplication(x.point, y);
    return e_.element(x.point + y.point, x.level, m * x.coords);
}

HomologyElement ClassEvaluator::atom(const std::string& raw, SubgroupIndex level) {
    std::string name = canonical_atom(raw);
    auto key = std::make_pair(name, level);
    auto it = atoms_.find(key);
    if (it != atoms_.end()) return it->second;
    SubgroupIndex nat = native_level(name);
    if (level > nat) throw std::invalid_argument(name + " is not defined above level " + std::to_string(nat));
    const GroupSpec& g = e_.group();
    HomologyElement v;
    if (level < nat) {
        v = e_.restrict(atom(name, level + 1));
    } else {
        Irrep s = Irrep::sigma(), l = Irrep::lambda(g.n);
        bool c4 = g.p == 2 && g.n == 2;
        if (name == "a_s") v = e_.euler_class(VirtualRep::of(s, 1));
        else if (name == "a_l") v = e_.euler_class(VirtualRep::of(l, 1));
        else if (name == "u_{2s}") v = e_.orientation_class(VirtualRep::of(s, 2), nat);
        else if (name == "u_l") v = e_.orientation_class(VirtualRep::of(l, 1), nat);
        else if (name == "u_s") v = e_.orientation_class(VirtualRep::of(s, 1), nat);
        else if (!c4) throw std::invalid_argument(name + " is only defined for C4");
        else if (name == "s_3") {
            GradingPoint p = GradingPoint::of(VirtualRep::of(l, -2), -3);
            v = e_.generator(p, nat, 0);
        } else if (name[0] == 'w') {
            int n = std::stoi(name.substr(2));
            v = e_.transfer(power(atom("u_s", nat - 1), -n));
        } else {
            int n = 0, m = 0;
            std::sscanf(name.c_str(), "x_{%d,%d}", &n, &m);
            HomologyElement b = times(power(atom("u_s", 0), -n), power(atom("u_l", 0), -m));
            v = e_.transfer(e_.transfer(b));
        }
    }
    atoms_[key] = v;
    return v;
}

std::optional<HomologyElement> ClassEvaluator::evaluate(const ExprPtr& e, SubgroupIndex level) {
    if (level < 0 || level > e_.top()) throw std::invalid_argument("level out of range");
    auto key = std::make_pair(e->str(), level);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    std::optional<HomologyElement> out;
    auto sub = [&](size_t i, SubgroupIndex h) { return evaluate(e->args[i], h); };
    switch (e->kind) {
    case K::Number: out = e_.scale(e_.unit(level), e->number); break;
    case K::Atom: out = atom(e->atom, level); break;
    case K::Power: {
        auto b = sub(0, level);
        if (b) {
            if (e->exponent < 0 && !e_.invert(*b)) out = std::nullopt;
            else out = power(*b, e->exponent);
        }
        break;
    }
    case K::Product: {
        const ExprPtr &a = e->args[0], &b = e->args[1];
        if (a->kind == K::Number) {
            auto y = sub(1, level);
            if (y) out = e_.scale(*y, a->number);
        } else if (b->kind == K::Number) {
            auto x = sub(0, level);
            if (x) out = e_.scale(*x, b->number);
        } else {
            auto x = sub(0, level), y = sub(1, level);
            if (x && y) out = times(*x, *y);
        }
        break;
    }
    case K::Quotient: {
        auto x = sub(0, level), y = sub(1, level);
        if (x && y) out = e_.divide(*x, *y);
        break;
    }
    case K::Sum:
    case K::Difference: {
        auto x = sub(0, level), y = sub(1, level);
        if (x && y) out = e_.add(*x, e->kind == K::Sum ? *y : e_.scale(*y, -1));
        break;
    }
    case K::Negation: {
        auto x = sub(0, level);
        if (x) out = e_.scale(*x, -1);
        break;
    }
    case K::Transfer: {
        if (level == 0) throw std::invalid_argument("Tr needs a level below");
        auto x = sub(0, level - 1);
        if (x) out = e_.transfer(*x);
        break;
    }
    case K::Restriction: {
        if (level == e_.top()) throw std::invalid_argument("Res needs a level above");
        auto x = sub(0, level + 1);
        if (x) out = e_.restrict(*x);
        break;
    }
    }
    memo_[key] = out;
    return out;
}

}  // namespace eqh
