#include "eqh/group.hpp"

#include <algorithm>
#include <cctype>

namespace eqh {

GroupSpec::GroupSpec(int p_, int n_) : p(p_), n(n_) {
    if (p < 2) throw std::invalid_argument("group: p must be prime");
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) throw std::invalid_argument("group: p must be prime");
    if (n < 1) throw std::invalid_argument("group: n must be positive");
    if (order() > (1L << 20)) throw std::invalid_argument("group: order too large");
}

long GroupSpec::ipow(long b, int e) {
    long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

std::string GroupSpec::str() const { return "C" + std::to_string(order()); }

int Irrep::kernel_level(const GroupSpec& g) const {
    switch (kind) {
        case IrrepKind::Trivial: return g.n;
        case IrrepKind::Sigma: return g.n - 1;
        case IrrepKind::Lambda: return g.n - k;
    }
    return g.n;
}

void Irrep::validate(const GroupSpec& g) const {
    if (kind == IrrepKind::Sigma && g.p != 2) throw std::invalid_argument("sigma exists only for p = 2");
    if (kind == IrrepKind::Lambda) {
        int lo = g.p == 2 ? 2 : 1;
        if (k < lo || k > g.n)
            throw std::invalid_argument("lambda" + std::to_string(k) + " is not an irreducible of " + g.str());
    }
}

std::string Irrep::name(const GroupSpec& g) const {
    switch (kind) {
        case IrrepKind::Trivial: return "1";
        case IrrepKind::Sigma: return "sigma";
        case IrrepKind::Lambda: return k == g.n ? "lambda" : "lambda" + std::to_string(k);
    }
    return "?";
}

std::vector<Irrep> nontrivial_irreps(const GroupSpec& g) {
    std::vector<Irrep> r;
    if (g.p == 2) r.push_back(Irrep::sigma());
    for (int k = g.p == 2 ? 2 : 1; k <= g.n; ++k) r.push_back(Irrep::lambda(k));
    return r;
}

VirtualRep VirtualRep::of(Irrep r, int mult) {
    VirtualRep v;
    v.add(r, mult);
    return v;
}

int VirtualRep::plus_mult(Irrep r) const {
    auto it = plus_.find(r);
    return it == plus_.end() ? 0 : it->second;
}

int VirtualRep::minus_mult(Irrep r) const {
    auto it = minus_.find(r);
    return it == minus_.end() ? 0 : it->second;
}

int VirtualRep::net(Irrep r) const { return plus_mult(r) - minus_mult(r); }

void VirtualRep::add(Irrep r, int mult) {
    if (mult > 0) plus_[r] += mult;
    if (mult < 0) minus_[r] += -mult;
}

bool VirtualRep::is_zero() const {
    for (auto r : support())
        if (net(r) != 0) return false;
    return true;
}

int VirtualRep::dim() const {
    int d = 0;
    for (auto& [r, m] : plus_) d += r.dim() * m;
    for (auto& [r, m] : minus_) d -= r.dim() * m;
    return d;
}

std::vector<Irrep> VirtualRep::support() const {
    std::vector<Irrep> s;
    for (auto& [r, m] : plus_) s.push_back(r);
    for (auto& [r, m] : minus_)
        if (!plus_.count(r)) s.push_back(r);
    std::sort(s.begin(), s.end());
    return s;
}

VirtualRep VirtualRep::normalized() const {
    VirtualRep v;
    for (auto r : support()) v.add(r, net(r));
    return v;
}

VirtualRep VirtualRep::negated() const {
    VirtualRep v;
    v.plus_ = minus_;
    v.minus_ = plus_;
    return v;
}

VirtualRep& VirtualRep::operator+=(const VirtualRep& o) {
    for (auto& [r, m] : o.plus_) plus_[r] += m;
    for (auto& [r, m] : o.minus_) minus_[r] += m;
    return *this;
}

VirtualRep& VirtualRep::operator-=(const VirtualRep& o) {
    for (auto& [r, m] : o.plus_) minus_[r] += m;
    for (auto& [r, m] : o.minus_) plus_[r] += m;
    return *this;
}

bool operator==(const VirtualRep& a, const VirtualRep& b) {
    auto s = a.support();
    for (auto r : b.support()) s.push_back(r);
    for (auto r : s)
        if (a.net(r) != b.net(r)) return false;
    return true;
}

bool operator<(const VirtualRep& a, const VirtualRep& b) {
    auto s = a.support();
    for (auto r : b.support()) s.push_back(r);
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    for (auto r : s)
        if (a.net(r) != b.net(r)) return a.net(r) < b.net(r);
    return false;
}

std::string VirtualRep::str(const GroupSpec& g) const {
    std::string out;
    auto term = [&](Irrep r, int m) {
        if (m == 0) return;
        bool neg = m < 0;
        int a = neg ? -m : m;
        if (out.empty()) out += neg ? "-" : "";
        else out += neg ? "-" : "+";
        if (r.kind == IrrepKind::Trivial) {
            out += std::to_string(a);
            return;
        }
        if (a != 1) out += std::to_string(a) + "*";
        out += r.name(g);
    };
    for (auto r : support()) {
        if (plus_mult(r) && minus_mult(r)) {
            term(r, plus_mult(r));
            term(r, -minus_mult(r));
        } else {
            term(r, net(r));
        }
    }
    return out.empty() ? "0" : out;
}

std::pair<VirtualRep, VirtualRep> split_virtual(const VirtualRep& v) {
    VirtualRep plus, minus;
    for (auto& [r, m] : v.plus()) plus.add(r, m);
    for (auto& [r, m] : v.minus()) minus.add(r, m);
    return {plus, minus};
}

VirtualRep parse_virtual(const std::string& text, const GroupSpec& g) {
    VirtualRep v;
    size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    auto read_int = [&](long& out) {
        size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (start == i) return false;
        out = std::stol(text.substr(start, i - start));
        return true;
    };
    skip();
    if (i == text.size()) throw ParseError("empty representation", 0);
    bool first = true;
    while (true) {
        skip();
        if (i == text.size()) break;
        int sign = 1;
        if (text[i] == '+' || text[i] == '-') {
            sign = text[i] == '-' ? -1 : 1;
            ++i;
            skip();
        } else if (!first) {
            throw ParseError("expected '+' or '-'", i);
        }
        first = false;
        long coeff = 1;
        bool have_coeff = false;
        if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            read_int(coeff);
            have_coeff = true;
            skip();
            if (i < text.size() && text[i] == '*') {
                ++i;
                skip();
            } else if (i == text.size() || text[i] == '+' || text[i] == '-') {
                v.add(Irrep::trivial(), static_cast<int>(sign * coeff));
                continue;
            }
        }
        size_t start = i;
        while (i < text.size() && std::isalpha(static_cast<unsigned char>(text[i]))) ++i;
        std::string word = text.substr(start, i - start);
        Irrep r;
        if (word == "sigma" || word == "s") {
            r = Irrep::sigma();
        } else if (word == "lambda" || word == "l") {
            long k = g.n;
            if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) read_int(k);
            r = Irrep::lambda(static_cast<int>(k));
        } else if (word.empty()) {
            throw ParseError(have_coeff ? "expected '*' or representation name" : "expected a term", i);
        } else {
            throw ParseError("unknown representation '" + word + "'", start);
        }
        try {
            r.validate(g);
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what(), start);
        }
        v.add(r, static_cast<int>(sign * coeff));
    }
    return v;
}

OrbitProduct orbit_product(SubgroupIndex h, SubgroupIndex k, const GroupSpec& g) {
    if (h < 0 || k < 0 || h > g.n || k > g.n) throw std::invalid_argument("orbit_product: subgroup out of range");
    return {std::min(h, k), GroupSpec::ipow(g.p, g.n - std::max(h, k))};
}

}  // namespace eqh
