#include "eqh/factorize.hpp"

#include <queue>
#include <set>
#include <stdexcept>

namespace eqh {

namespace {

using K = ClassExpression::Kind;

// Numerator atoms in printing order; u_s and u_l may carry negative exponents below the top.
const char* const kBase[] = {"a_s", "u_{2s}", "u_s", "a_l", "u_l"};
constexpr size_t kBaseCount = 5;
// Denominator atoms per level.
const std::vector<std::string> kDen[] = {{}, {"a_l", "u_l"}, {"a_s", "u_{2s}", "a_l", "u_l"}};

struct Monomial {
    Integer scalar = 1;
    std::string seed;  // optional extra factor: s_3, w_n, x_{n,m}
    std::vector<int> e = std::vector<int>(kBaseCount, 0);

    ExprPtr expr() const {
        ExprPtr out;
        auto push = [&](ExprPtr f) { out = out ? ClassExpression::mul(out, f) : f; };
        if (scalar != 1) push(ClassExpression::num(scalar));
        for (size_t i = 0; i < kBaseCount; ++i)
            if (e[i]) push(ClassExpression::pow(ClassExpression::named(kBase[i]), e[i]));
        if (!seed.empty()) push(ClassExpression::named(seed));
        return out ? out : ClassExpression::num(1);
    }
};

ExprPtr monomial_expr(const std::vector<std::string>& names, const std::vector<int>& e) {
    ExprPtr out;
    for (size_t i = 0; i < names.size(); ++i) {
        if (!e[i]) continue;
        ExprPtr f = ClassExpression::pow(ClassExpression::named(names[i]), e[i]);
        out = out ? ClassExpression::mul(out, f) : f;
    }
    return out;
}

// atom^sign * rest, folding into a leading power of the same atom
ExprPtr times_atom(const std::string& name, int sign, const ExprPtr& rest) {
    if (rest->kind == K::Product) {
        const ExprPtr& lead = rest->args[0];
        int k = 0;
        if (lead->kind == K::Atom && lead->atom == name) k = 1;
        if (lead->kind == K::Power && lead->args[0]->kind == K::Atom && lead->args[0]->atom == name) k = lead->exponent;
        if (k * sign > 0)
            return ClassExpression::mul(ClassExpression::pow(ClassExpression::named(name), k + sign), rest->args[1]);
    }
    return ClassExpression::mul(ClassExpression::pow(ClassExpression::named(name), sign), rest);
}

enum class Shape { Mono, Quot, General };

struct State {
    Shape shape;
    SubgroupIndex level;
    ExprPtr expr;
    HomologyElement value;
    Monomial mono;             // Mono, and the numerator of a Quot
    HomologyElement numerator;  // Quot
    ExprPtr num_expr;           // Quot
    std::vector<int> den;       // Quot, over kDen[level]
    // priority
    int divisions = 0, weight = 0;
    std::string text = {};
};

struct Later {
    bool operator()(const State& a, const State& b) const {
        return std::tie(a.divisions, a.weight, a.text) > std::tie(b.divisions, b.weight, b.text);
    }
};

bool fits(const GradingPoint& p, int box) {
    VirtualRep v = p.rep.normalized();
    for (auto r : v.support())
        if (std::abs(v.net(r)) > box) return false;
    return true;
}

bool generates(GreenEngine& e, const GradingPoint& p, SubgroupIndex h, const std::vector<HomologyElement>& xs) {
    const LevelHomology& g = e.level_group(p, h);
    size_t s = g.size(), nt = g.group.torsion.size();
    size_t cols = xs.size() + nt;
    IntMatrix m(s, cols);
    size_t c = 0;
    auto put = [&](const Vec& v) {
        for (size_t i = 0; i < s; ++i) m(i, c) = v[i];
        ++c;
    };
    for (auto& x : xs) put(x.coords);
    for (size_t i = 0; i < nt; ++i) m(i, c++) = g.group.torsion[i];
    Vec d = smith(m).diagonal();
    size_t units = 0;
    for (auto& x : d)
        if (x == 1 || x == -1) ++units;
    return units == s;
}

}  // namespace

std::vector<const SpotFactorization*> FactorizationResult::unreachable() const {
    std::vector<const SpotFactorization*> out;
    for (auto& s : spots)
        if (!s.generated) out.push_back(&s);
    return out;
}

FactorizationResult factorize(ClassEvaluator& ev, const FactorizeOptions& opt) {
    GreenEngine& e = ev.engine();
    const GroupSpec& g = e.group();
    if (!(g.p == 2 && g.n == 2) || !e.coefficients().is_integral())
        throw std::invalid_argument("factorize: only C4 with integral coefficients is supported");

    std::priority_queue<State, std::vector<State>, Later> queue;
    std::set<HomologyElement> expanded;
    std::set<std::tuple<HomologyElement, std::vector<int>>> quotients;
    std::map<std::pair<GradingPoint, SubgroupIndex>, std::vector<std::pair<ExprPtr, HomologyElement>>> reached;
    FactorizationResult result;

    auto push = [&](State s) {
        if (e.is_zero(s.value) || !fits(s.value.point, opt.box)) return;
        s.divisions = s.expr->divisions();
        s.weight = s.expr->weight();
        if (s.weight > opt.max_weight) return;
        s.text = s.expr->str();
        queue.push(std::move(s));
    };
    auto mono_state = [&](const Monomial& m, SubgroupIndex h, const HomologyElement& v) {
        State s{Shape::Mono, h, m.expr(), v, m, {}, nullptr, {}};
        push(std::move(s));
    };

    // atoms usable as multipliers at each level, with their exponent slot and sign
    struct Step {
        std::string name;
        size_t slot;
        int sign;
        HomologyElement value;
    };
    std::vector<Step> steps[3];
    for (SubgroupIndex h = 0; h <= 2; ++h) {
        auto add = [&](const std::string& n, size_t slot, int sign) {
            HomologyElement v = ev.atom(n, h);
            if (sign < 0) {
                auto inv = e.invert(v);
                if (!inv) return;
                v = *inv;
            }
            if (!e.is_zero(v)) steps[h].push_back({n, slot, sign, v});
        };
        if (h == 2) {
            add("a_s", 0, 1);
            add("u_{2s}", 1, 1);
        } else {
            add("u_s", 2, 1);
            add("u_s", 2, -1);
        }
        add("a_l", 3, 1);
        add("u_l", 4, 1);
        if (h == 0) add("u_l", 4, -1);
    }

    // seeds
    std::vector<std::string> seeds = {"w_3"};
    for (int n = 1; n <= opt.box; n += 2)
        for (int m = 1; m <= opt.box; ++m) seeds.push_back("x_{" + std::to_string(n) + "," + std::to_string(m) + "}");
    if (opt.adjoin_s3) seeds.push_back("s_3");
    for (SubgroupIndex h = 0; h <= 2; ++h) {
        mono_state(Monomial{}, h, e.unit(h));
        for (auto& st : steps[h]) {
            Monomial m;
            m.e[st.slot] = st.sign;
            mono_state(m, h, st.value);
        }
    }
    for (auto& sd : seeds) {
        ExprPtr a = ClassExpression::named(sd);
        if (!ev.within(a, opt.box)) continue;
        Monomial m;
        m.seed = sd;
        mono_state(m, 2, ev.atom(sd, 2));
    }

    while (!queue.empty()) {
        State s = queue.top();
        queue.pop();
        if (s.shape == Shape::Quot && !quotients.insert({s.numerator, s.den}).second) continue;
        bool fresh = expanded.insert(s.value).second;
        if (!fresh && s.shape != Shape::Quot) continue;
        ++result.states;
        SubgroupIndex h = s.level;
        if (fresh) reached[{s.value.point, h}].push_back({s.expr, s.value});

        // extend a quotient's denominator
        if (s.shape == Shape::Quot) {
            for (size_t i = 0; i < kDen[h].size(); ++i) {
                std::vector<int> d = s.den;
                ++d[i];
                ExprPtr dex = monomial_expr(kDen[h], d);
                if (!ev.within(dex, opt.box)) continue;
                HomologyElement dv = *ev.evaluate(dex, h);
                if (!fits(s.numerator.point - dv.point, opt.box)) continue;
                auto q = e.divide(s.numerator, dv);
                if (!q) continue;
                State n{Shape::Quot, h, ClassExpression::div(s.num_expr, dex), *q, {}, s.numerator, s.num_expr, d};
                push(std::move(n));
            }
            if (!fresh) continue;
        }
        // start a quotient
        if (s.shape != Shape::Quot) {
            for (size_t i = 0; i < kDen[h].size(); ++i) {
                std::vector<int> d(kDen[h].size(), 0);
                d[i] = 1;
                ExprPtr dex = monomial_expr(kDen[h], d);
                HomologyElement dv = ev.atom(kDen[h][i], h);
                if (!fits(s.value.point - dv.point, opt.box)) continue;
                auto q = e.divide(s.value, dv);
                if (!q) continue;
                State n{Shape::Quot, h, ClassExpression::div(s.expr, dex), *q, {}, s.value, s.expr, d};
                push(std::move(n));
            }
        }
        // multiply by an atom
        for (auto& st : steps[h]) {
            if (!fits(s.value.point + st.value.point, opt.box)) continue;
            HomologyElement v = ev.times(s.value, st.value);
            if (s.shape == Shape::Mono) {
                Monomial m = s.mono;
                if (m.e[st.slot] * st.sign < 0) continue;  // never multiply u by its inverse
                m.e[st.slot] += st.sign;
                mono_state(m, h, v);
            } else {
                State n{Shape::General, h, times_atom(st.name, st.sign, s.expr), v, {}, {}, nullptr, {}};
                push(std::move(n));
            }
        }
        // scalars on pure monomials
        if (s.shape == Shape::Mono && s.mono.scalar == 1) {
            for (int c : {2, 4}) {
                Monomial m = s.mono;
                m.scalar = c;
                mono_state(m, h, e.scale(s.value, c));
            }
        }
        if (h < 2) push(State{Shape::General, h + 1, ClassExpression::tr(s.expr), e.transfer(s.value), {}, {}, nullptr, {}});
        if (h > 0) push(State{Shape::General, h - 1, ClassExpression::res(s.expr), e.restrict(s.value), {}, {}, nullptr, {}});
    }

    // coverage of every nonzero level group in the box
    for (int n = -opt.box; n <= opt.box; ++n)
        for (int m = -opt.box; m <= opt.box; ++m) {
            VirtualRep v = VirtualRep::of(Irrep::sigma(), n) + VirtualRep::of(Irrep::lambda(2), m);
            ComplexPtr c = e.model(GradingPoint::of(v, 0).rep);
            for (int k = c->lo; k <= c->hi; ++k) {
                GradingPoint p = GradingPoint::of(v, k);
                for (SubgroupIndex h = 0; h <= 2; ++h) {
                    const LevelHomology& lg = e.level_group(p, h);
                    if (!lg.size()) continue;
                    SpotFactorization sf;
                    sf.point = p;
                    sf.level = h;
                    auto it = reached.find({p, h});
                    std::vector<HomologyElement> chosen;
                    if (it != reached.end()) {
                        // a single generator if there is one, else a greedy shortest-first set
                        for (auto& [ex, val] : it->second)
                            if (generates(e, p, h, {val})) {
                                chosen.push_back(val);
                                sf.basis.push_back({ex, val});
                                break;
                            }
                        for (auto& [ex, val] : it->second) {
                            if (generates(e, p, h, chosen)) break;
                            // keep only elements that enlarge the span
                            IntMatrix a(lg.size(), chosen.size() + lg.group.torsion.size());
                            for (size_t j = 0; j < chosen.size(); ++j)
                                for (size_t i = 0; i < lg.size(); ++i) a(i, j) = chosen[j].coords[i];
                            for (size_t i = 0; i < lg.group.torsion.size(); ++i) a(i, chosen.size() + i) = lg.group.torsion[i];
                            if (chosen.empty() || !solve(a, val.coords)) {
                                chosen.push_back(val);
                                sf.basis.push_back({ex, val});
                            }
                        }
                    }
                    sf.generated = generates(e, p, h, chosen);
                    if (sf.generated) {
                        size_t b = chosen.size(), nt = lg.group.torsion.size();
                        IntMatrix a(lg.size(), b + nt);
                        for (size_t j = 0; j < b; ++j)
                            for (size_t i = 0; i < lg.size(); ++i) a(i, j) = chosen[j].coords[i];
                        for (size_t i = 0; i < nt; ++i) a(i, b + i) = lg.group.torsion[i];
                        for (size_t gi = 0; gi < lg.size(); ++gi) {
                            Vec target(lg.size());
                            target[gi] = 1;
                            auto sol = solve(a, target);
                            if (!sol) throw std::logic_error("factorize: generating set does not solve");
                            ExprPtr out;
                            for (size_t j = 0; j < b; ++j) {
                                Integer c = (*sol)[j];
                                if (c.is_zero()) continue;
                                ExprPtr term = sf.basis[j].first;
                                bool neg = c.sign() < 0;
                                Integer ac = neg ? -c : c;
                                if (ac != 1) term = ClassExpression::mul(ClassExpression::num(ac), term);
                                if (!out) out = neg ? ClassExpression::negate(term) : term;
                                else out = neg ? ClassExpression::difference(out, term) : ClassExpression::sum(out, term);
                            }
                            if (!out) throw std::logic_error("factorize: empty generator expression");
                            sf.generators.push_back({gi, out});
                        }
                    }
                    result.spots.push_back(std::move(sf));
                }
            }
        }
    return result;
}

}  // namespace eqh
