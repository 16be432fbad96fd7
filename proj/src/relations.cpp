#include "eqh/relations.hpp"

#include <cctype>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace eqh {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r"), b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, sep)) out.push_back(trim(part));
    return out;
}

// Tiny integer arithmetic for placeholders.
class Arith {
public:
    Arith(const std::string& s, const std::map<std::string, int>& v) : s_(s), v_(v) {}
    int parse() {
        int r = sum();
        skip();
        if (i_ != s_.size()) throw ParseError("bad placeholder '" + s_ + "'", i_);
        return r;
    }

private:
    const std::string& s_;
    const std::map<std::string, int>& v_;
    size_t i_ = 0;
    void skip() {
        while (i_ < s_.size() && s_[i_] == ' ') ++i_;
    }
    int sum() {
        int r = prod();
        for (skip(); i_ < s_.size() && (s_[i_] == '+' || s_[i_] == '-'); skip()) {
            char op = s_[i_++];
            int b = prod();
            r = op == '+' ? r + b : r - b;
        }
        return r;
    }
    int prod() {
        int r = atom();
        for (skip(); i_ < s_.size() && s_[i_] == '*'; skip()) {
            ++i_;
            r *= atom();
        }
        return r;
    }
    int atom() {
        skip();
        if (i_ < s_.size() && s_[i_] == '-') {
            ++i_;
            return -atom();
        }
        size_t b = i_;
        if (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
            return std::stoi(s_.substr(b, i_ - b));
        }
        while (i_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[i_]))) ++i_;
        auto it = v_.find(s_.substr(b, i_ - b));
        if (b == i_ || it == v_.end()) throw ParseError("unknown parameter in '" + s_ + "'", b);
        return it->second;
    }
};

bool has_negative_power(const ExprPtr& e) {
    if (e->kind == ClassExpression::Kind::Power && e->exponent < 0) return true;
    for (auto& a : e->args)
        if (has_negative_power(a)) return true;
    return false;
}

}  // namespace

std::string instantiate(const std::string& text, const std::map<std::string, int>& values) {
    std::string out;
    for (size_t i = 0; i < text.size(); ++i) {
        if (text[i] != '[') {
            out += text[i];
            continue;
        }
        size_t close = text.find(']', i);
        if (close == std::string::npos) throw ParseError("unterminated '['", i);
        int v = Arith(text.substr(i + 1, close - i - 1), values).parse();
        out += v < 0 ? "-" + std::to_string(-v) : std::to_string(v);
        i = close;
    }
    return out;
}

std::vector<RelationTemplate> parse_relations(std::istream& in) {
    std::vector<RelationTemplate> out;
    std::string line;
    int no = 0;
    while (std::getline(in, line)) {
        ++no;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto f = split(t, '|');
        if (f.size() != 4) throw ParseError("relation line " + std::to_string(no) + ": expected 4 fields", 0);
        RelationTemplate r;
        r.name = f[0];
        r.lhs = f[2];
        r.rhs = f[3];
        r.line = no;
        if (f[1] != "-") {
            for (auto& tok : split(f[1], ' ')) {
                if (tok.empty()) continue;
                if (tok == "zero-if-negative") {
                    r.zero_if_negative = true;
                    continue;
                }
                auto eq = tok.find('='), dots = tok.find("..");
                if (eq == std::string::npos || dots == std::string::npos)
                    throw ParseError("relation line " + std::to_string(no) + ": bad range '" + tok + "'", 0);
                r.ranges.push_back({tok.substr(0, eq), std::stoi(tok.substr(eq + 1, dots - eq - 1)),
                                    std::stoi(tok.substr(dots + 2))});
            }
        }
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<RelationTemplate> load_relations(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_relations(in);
}

RelationReport check_relations(ClassEvaluator& ev, const std::vector<RelationTemplate>& rels, int box,
                               SubgroupIndex level, bool require_instances) {
    RelationReport rep;
    GreenEngine& e = ev.engine();
    for (const auto& r : rels) {
        std::map<std::string, int> vals;
        size_t before = rep.checked;
        std::function<void(size_t)> run = [&](size_t k) {
            if (k < r.ranges.size()) {
                for (int v = r.ranges[k].lo; v <= r.ranges[k].hi; ++v) {
                    vals[r.ranges[k].name] = v;
                    run(k + 1);
                }
                return;
            }
            std::string ls = instantiate(r.lhs, vals), rs = instantiate(r.rhs, vals);
            ExprPtr lhs = parse_expression(ls);
            bool zero = rs == "0";
            ExprPtr rhs = parse_expression(rs);
            if (has_negative_power(rhs)) {
                if (!r.zero_if_negative) {
                    ++rep.skipped;
                    return;
                }
                zero = true;
            }
            if (!ev.within(lhs, box) || (!zero && !ev.within(rhs, box))) {
                ++rep.skipped;
                return;
            }
            auto lv = ev.evaluate(lhs, level);
            if (!lv) {
                ++rep.skipped;
                return;
            }
            ++rep.checked;
            ++rep.checked_by_name[r.name];
            if (zero) {
                if (!e.is_zero(*lv))
                    rep.failures.push_back({r.name, ls, rs, "expected zero, got " + element_str(*lv, e.group())});
                return;
            }
            auto rv = ev.evaluate(rhs, level);
            if (!rv) {
                rep.failures.push_back({r.name, ls, rs, "right side does not exist"});
                return;
            }
            if (!(lv->point == rv->point)) {
                rep.failures.push_back({r.name, ls, rs, "gradings differ"});
                return;
            }
            if (!(*lv == *rv))
                rep.failures.push_back({r.name, ls, rs,
                                        element_str(*lv, e.group()) + " != " + element_str(*rv, e.group())});
        };
        run(0);
        if (rep.checked == before) {
            if (require_instances) rep.failures.push_back({r.name, r.lhs, r.rhs, "no instance could be checked"});
            else rep.unchecked.push_back(r.name);
        }
    }
    return rep;
}

}  // namespace eqh
