#include "eqh/homology.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>

namespace eqh {

Vec LevelHomology::generator_rep(size_t i) const {
    const Vec& g = group.generators[i];
    return Vec(g.begin(), g.begin() + chain_rank);
}

Vec LevelHomology::representative(const Vec& coords) const {
    Vec r(chain_rank);
    for (size_t i = 0; i < coords.size(); ++i)
        if (!coords[i].is_zero())
            for (size_t j = 0; j < chain_rank; ++j) r[j] += coords[i] * group.generators[i][j];
    return r;
}

bool LevelHomology::is_cycle(const Vec& chain) const {
    Vec b = d_out * chain;
    for (auto& x : b)
        if (modulus.is_zero() ? !x.is_zero() : !(x % modulus).is_zero()) return false;
    return true;
}

Vec LevelHomology::express(const Vec& cycle) const {
    if (cycle.size() != chain_rank) throw std::invalid_argument("express: chain has wrong length");
    if (modulus.is_zero()) return group.express(cycle);
    Vec b = d_out * cycle;
    Vec full = cycle;
    for (auto& x : b) {
        if (!(x % modulus).is_zero()) throw std::invalid_argument("express: not a cycle mod q");
        full.push_back(-(x / modulus));
    }
    return group.express(full);
}

bool MackeyPresentation::is_zero() const {
    for (auto& l : levels)
        if (!l.group.is_zero()) return false;
    return true;
}

std::string group_string(const HomologyGroup& g) {
    if (g.is_zero()) return "0";
    std::string s;
    for (size_t i = 0; i < g.free_rank; ++i) s += (s.empty() ? "" : "+") + std::string("Z");
    for (auto& t : g.torsion) s += (s.empty() ? "" : "+") + std::string("Z/") + t.str();
    return s;
}

std::string MackeyPresentation::groups_string() const {
    std::string s;
    for (int h = static_cast<int>(levels.size()) - 1; h >= 0; --h) {
        s += group_string(levels[h].group);
        if (h) s += ";";
    }
    return s;
}

namespace {

IntMatrix scalar_identity(size_t n, const Integer& q) {
    IntMatrix m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = q;
    return m;
}

// [[a, b], [0, c]]
IntMatrix block2(const IntMatrix& a, const IntMatrix& b, const IntMatrix& c) {
    IntMatrix m(a.rows() + c.rows(), a.cols() + b.cols());
    for (size_t i = 0; i < a.rows(); ++i) {
        for (size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
        for (size_t j = 0; j < b.cols(); ++j) m(i, a.cols() + j) = b(i, j);
    }
    for (size_t i = 0; i < c.rows(); ++i)
        for (size_t j = 0; j < c.cols(); ++j) m(a.rows() + i, a.cols() + j) = c(i, j);
    return m;
}

IntMatrix negated(IntMatrix m) {
    for (size_t i = 0; i < m.rows(); ++i) m.negate_row(i);
    return m;
}

LevelHomology level_homology(const IntMatrix& din, const IntMatrix& dout, const IntMatrix& dprev,
                             const Integer& q) {
    LevelHomology lh;
    lh.chain_rank = dout.cols();
    lh.modulus = q;
    lh.d_out = dout;
    if (q.is_zero()) {
        lh.group = homology(din, dout);
    } else {
        // cone of multiplication by q
        IntMatrix cin = block2(din, scalar_identity(din.rows(), q), negated(dout));
        IntMatrix cout = block2(dout, scalar_identity(dout.rows(), q), negated(dprev));
        lh.group = homology(cin, cout);
    }
    for (size_t i = 0; i < lh.group.size(); ++i) {
        const Vec& g = lh.group.generators[i];
        for (size_t j = 0; j < lh.chain_rank; ++j) {
            if (g[j].is_zero()) continue;
            if (g[j].sign() < 0) lh.group.negate_generator(i);
            break;
        }
    }
    return lh;
}

IntMatrix map_generators(const LevelHomology& src, const LevelHomology& dst, const IntMatrix& chain_map) {
    IntMatrix m(dst.size(), src.size());
    for (size_t i = 0; i < src.size(); ++i) m.set_column(i, dst.express(chain_map * src.generator_rep(i)));
    return m;
}

}  // namespace

MackeyPresentation compute_homology(const ChainComplex& c, int k) {
    MackeyPresentation m;
    m.group = c.group;
    m.coeffs = c.coeffs;
    m.degree = k;
    int n = c.group.n;
    for (int h = 0; h <= n; ++h) {
        IntMatrix din = c.d_level(k + 1, h), dout = c.d_level(k, h);
        IntMatrix dprev = c.coeffs.is_integral() ? IntMatrix() : c.d_level(k - 1, h);
        m.levels.push_back(level_homology(din, dout, dprev, c.coeffs.modulus));
    }
    const FreeMackeyModule& mod = c.module(k);
    m.res.resize(n + 1);
    m.tr.resize(n + 1);
    for (int h = 1; h <= n; ++h) {
        m.res[h] = map_generators(m.levels[h], m.levels[h - 1], mod.res(h));
        m.tr[h] = map_generators(m.levels[h - 1], m.levels[h], mod.tr(h));
    }
    for (int h = 0; h <= n; ++h) m.weyl.push_back(map_generators(m.levels[h], m.levels[h], mod.weyl(h)));
    return m;
}

std::vector<MackeyPresentation> compute_all(const ChainComplex& c) {
    std::vector<MackeyPresentation> out;
    for (int k = c.lo; k <= c.hi; ++k) out.push_back(compute_homology(c, k));
    return out;
}

// ---------------------------------------------------------------------------
// Lewis diagrams and the catalog

LewisDiagram LewisDiagram::from(const MackeyPresentation& m) {
    LewisDiagram d;
    d.n = m.group.n;
    for (auto& l : m.levels) d.levels.push_back({l.group.torsion, l.group.free_rank});
    d.res = m.res;
    d.tr = m.tr;
    d.weyl = m.weyl;
    return d;
}

std::string LewisDiagram::groups_string() const {
    std::string s;
    for (int h = n; h >= 0; --h) {
        const Level& l = levels[h];
        std::string g;
        for (size_t i = 0; i < l.free_rank; ++i) g += (g.empty() ? "" : "+") + std::string("Z");
        for (auto& t : l.torsion) g += (g.empty() ? "" : "+") + std::string("Z/") + t.str();
        s += g.empty() ? "0" : g;
        if (h) s += ";";
    }
    return s;
}

LewisDiagram direct_sum(const std::vector<LewisDiagram>& parts) {
    LewisDiagram d;
    d.n = parts.empty() ? 2 : parts[0].n;
    int n = d.n;
    // new position of (part, local generator) at each level
    std::vector<std::vector<std::vector<size_t>>> pos(n + 1);
    for (int h = 0; h <= n; ++h) {
        struct Item {
            Integer order;
            size_t part, local;
        };
        std::vector<Item> items;
        for (size_t p = 0; p < parts.size(); ++p)
            for (size_t i = 0; i < parts[p].levels[h].size(); ++i) items.push_back({parts[p].levels[h].order(i), p, i});
        std::stable_sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
            bool fa = a.order.is_zero(), fb = b.order.is_zero();
            if (fa != fb) return fb;
            return a.order < b.order;
        });
        pos[h].resize(parts.size());
        for (size_t p = 0; p < parts.size(); ++p) pos[h][p].resize(parts[p].levels[h].size());
        LewisDiagram::Level lv;
        for (size_t j = 0; j < items.size(); ++j) {
            pos[h][items[j].part][items[j].local] = j;
            if (items[j].order.is_zero()) ++lv.free_rank;
            else lv.torsion.push_back(items[j].order);
        }
        d.levels.push_back(lv);
    }
    auto assemble = [&](int hs, int ht, auto get) {
        IntMatrix m(d.levels[ht].size(), d.levels[hs].size());
        for (size_t p = 0; p < parts.size(); ++p) {
            const IntMatrix& pm = get(parts[p]);
            for (size_t i = 0; i < pm.rows(); ++i)
                for (size_t j = 0; j < pm.cols(); ++j) m(pos[ht][p][i], pos[hs][p][j]) = pm(i, j);
        }
        return m;
    };
    d.res.resize(n + 1);
    d.tr.resize(n + 1);
    d.weyl.resize(n + 1);
    for (int h = 1; h <= n; ++h) {
        d.res[h] = assemble(h, h - 1, [h](const LewisDiagram& x) -> const IntMatrix& { return x.res[h]; });
        d.tr[h] = assemble(h - 1, h, [h](const LewisDiagram& x) -> const IntMatrix& { return x.tr[h]; });
    }
    for (int h = 0; h <= n; ++h)
        d.weyl[h] = assemble(h, h, [h](const LewisDiagram& x) -> const IntMatrix& { return x.weyl[h]; });
    return d;
}

namespace {

LewisDiagram::Level level_of(const std::string& g) {
    if (g == "0") return {};
    if (g == "Z") return {{}, 1};
    if (g == "Z/2") return {{Integer(2)}, 0};
    if (g == "Z/4") return {{Integer(4)}, 0};
    throw std::logic_error("catalog level " + g);
}

IntMatrix one_by_one(const LewisDiagram::Level& target, const LewisDiagram::Level& source, long v) {
    IntMatrix m(target.size(), source.size());
    if (m.rows() && m.cols()) m(0, 0) = target.torsion.empty() ? Integer(v) : mod_floor(Integer(v), target.torsion[0]);
    return m;
}

// Levels top, middle, bottom; maps res/tr top<->middle, res/tr middle<->bottom, Weyl on middle and bottom.
LewisDiagram lewis(const std::string& top, const std::string& mid, const std::string& bot, long r2, long t2,
                   long r1, long t1, long w1, long w0) {
    LewisDiagram d;
    d.n = 2;
    d.levels = {level_of(bot), level_of(mid), level_of(top)};
    d.res.resize(3);
    d.tr.resize(3);
    d.res[2] = one_by_one(d.levels[1], d.levels[2], r2);
    d.tr[2] = one_by_one(d.levels[2], d.levels[1], t2);
    d.res[1] = one_by_one(d.levels[0], d.levels[1], r1);
    d.tr[1] = one_by_one(d.levels[1], d.levels[0], t1);
    d.weyl = {one_by_one(d.levels[0], d.levels[0], w0), one_by_one(d.levels[1], d.levels[1], w1),
              one_by_one(d.levels[2], d.levels[2], 1)};
    return d;
}

}  // namespace

const std::vector<CatalogEntry>& c4_catalog() {
    static const std::vector<CatalogEntry> cat = {
        {"Z", lewis("Z", "Z", "Z", 1, 2, 1, 2, 1, 1)},
        {"Z-", lewis("0", "Z", "Z", 0, 0, 1, 2, -1, -1)},
        {"L", lewis("Z", "Z", "Z", 2, 1, 2, 1, 1, 1)},
        {"p*L", lewis("Z", "Z", "Z", 2, 1, 1, 2, 1, 1)},
        {"L-", lewis("Z/2", "Z", "Z", 0, 1, 2, 1, -1, -1)},
        {"p*L-", lewis("Z/2", "Z", "Z", 0, 1, 1, 2, -1, -1)},
        {"L#", lewis("Z", "Z", "Z", 1, 2, 2, 1, 1, 1)},
        {"Z-b", lewis("0", "Z", "Z", 0, 0, 2, 1, -1, -1)},
        {"<Z/4>", lewis("Z/4", "Z/2", "0", 1, 2, 0, 0, 1, 1)},
        {"<Z/2>", lewis("Z/2", "0", "0", 0, 0, 0, 0, 1, 1)},
        {"bar<Z/2>", lewis("0", "Z/2", "0", 0, 0, 0, 0, 1, 1)},
        {"Q", lewis("Z/2", "Z/2", "0", 0, 1, 0, 0, 1, 1)},
        {"Q#", lewis("Z/2", "Z/2", "0", 1, 0, 0, 0, 1, 1)},
    };
    return cat;
}

const CatalogEntry* catalog_entry(const std::string& name) {
    for (auto& e : c4_catalog())
        if (e.name == name) return &e;
    return nullptr;
}

std::vector<size_t> parse_catalog_name(const std::string& name) {
    std::vector<size_t> out;
    std::string cur;
    auto flush = [&] {
        std::string t;
        for (char c : cur)
            if (!std::isspace(static_cast<unsigned char>(c))) t += c;
        cur.clear();
        if (t.empty()) throw std::invalid_argument("empty summand in '" + name + "'");
        if (t == "0") return;
        const auto& cat = c4_catalog();
        for (size_t i = 0; i < cat.size(); ++i)
            if (cat[i].name == t) {
                out.push_back(i);
                return;
            }
        throw std::invalid_argument("unknown Mackey functor name '" + t + "'");
    };
    for (char c : name) {
        if (c == '+') flush();
        else cur += c;
    }
    flush();
    std::sort(out.begin(), out.end());
    return out;
}

std::string render_catalog_name(std::vector<size_t> summands) {
    if (summands.empty()) return "0";
    std::sort(summands.begin(), summands.end());
    std::string s;
    for (size_t i : summands) s += (s.empty() ? "" : "+") + c4_catalog()[i].name;
    return s;
}

std::string canonical_name(const std::string& name) {
    if (name == "unknown") return name;
    return render_catalog_name(parse_catalog_name(name));
}

namespace {

using Level = LewisDiagram::Level;

// Equality of homomorphisms into `target`, comparing torsion coordinates modulo their orders.
bool equal_mod(const IntMatrix& a, const IntMatrix& b, const Level& target) {
    for (size_t i = 0; i < a.rows(); ++i) {
        Integer o = target.order(i);
        for (size_t j = 0; j < a.cols(); ++j) {
            if (o.is_zero()) {
                if (a(i, j) != b(i, j)) return false;
            } else if (!((a(i, j) - b(i, j)) % o).is_zero()) {
                return false;
            }
        }
    }
    return true;
}

// All automorphisms-as-matrices between two presentations of the same group,
// with free-part entries bounded by 1 in absolute value.
std::vector<IntMatrix> level_isomorphisms(const Level& l) {
    size_t n = l.size(), t = l.torsion.size();
    std::vector<std::vector<Vec>> choices(n);
    for (size_t i = 0; i < n; ++i) {
        Integer o = l.order(i);
        std::vector<Vec> opts{Vec(n)};
        for (size_t j = 0; j < n; ++j) {
            std::vector<Vec> next;
            std::vector<Integer> vals;
            if (j < t) {
                for (Integer x = 0; x < l.torsion[j]; x += 1)
                    if (o.is_zero() || ((o * x) % l.torsion[j]).is_zero()) vals.push_back(x);
            } else if (o.is_zero()) {
                vals = {Integer(-1), Integer(0), Integer(1)};
            } else {
                vals = {Integer(0)};
            }
            for (auto& v : opts)
                for (auto& x : vals) {
                    Vec w = v;
                    w[j] = x;
                    next.push_back(w);
                }
            opts = std::move(next);
        }
        choices[i] = std::move(opts);
    }
    // torsion subgroup elements for the bijectivity test
    std::vector<Vec> telems{Vec(t)};
    for (size_t j = 0; j < t; ++j) {
        std::vector<Vec> next;
        for (auto& v : telems)
            for (Integer x = 0; x < l.torsion[j]; x += 1) {
                Vec w = v;
                w[j] = x;
                next.push_back(w);
            }
        telems = std::move(next);
    }
    std::vector<IntMatrix> out;
    IntMatrix cur(n, n);
    std::function<void(size_t)> rec = [&](size_t i) {
        if (i == n) {
            IntMatrix fb(n - t, n - t);
            for (size_t a = t; a < n; ++a)
                for (size_t b = t; b < n; ++b) fb(a - t, b - t) = cur(a, b);
            if (!determinant(fb).is_unit()) return;
            std::set<Vec> img;
            for (auto& e : telems) {
                Vec r(t);
                for (size_t a = 0; a < t; ++a) {
                    Integer s = 0;
                    for (size_t b = 0; b < t; ++b) s += cur(a, b) * e[b];
                    r[a] = mod_floor(s, l.torsion[a]);
                }
                img.insert(r);
            }
            if (img.size() != telems.size()) return;
            out.push_back(cur);
            return;
        }
        for (auto& v : choices[i]) {
            cur.set_column(i, v);
            rec(i + 1);
        }
    };
    rec(0);
    return out;
}

}  // namespace

std::optional<std::vector<IntMatrix>> find_isomorphism(const LewisDiagram& a, const LewisDiagram& b) {
    if (a.n != b.n) return std::nullopt;
    int n = a.n;
    for (int h = 0; h <= n; ++h)
        if (!(a.levels[h] == b.levels[h])) return std::nullopt;
    std::vector<std::vector<IntMatrix>> isos(n + 1);
    for (int h = 0; h <= n; ++h) {
        for (auto& m : level_isomorphisms(a.levels[h]))
            if (equal_mod(m * a.weyl[h], b.weyl[h] * m, b.levels[h])) isos[h].push_back(m);
        if (isos[h].empty()) return std::nullopt;
    }
    std::vector<IntMatrix> phi(n + 1);
    std::function<bool(int)> rec = [&](int h) {
        if (h < 0) return true;
        for (auto& m : isos[h]) {
            if (h < n) {
                if (!equal_mod(m * a.res[h + 1], b.res[h + 1] * phi[h + 1], b.levels[h])) continue;
                if (!equal_mod(phi[h + 1] * a.tr[h + 1], b.tr[h + 1] * m, b.levels[h + 1])) continue;
            }
            phi[h] = m;
            if (rec(h - 1)) return true;
        }
        return false;
    };
    if (!rec(n)) return std::nullopt;
    return phi;
}

Identification identify(const LewisDiagram& d) {
    Identification id;
    bool zero = true;
    for (auto& l : d.levels)
        if (l.size()) zero = false;
    if (zero) {
        id.known = true;
        id.name = "0";
        return id;
    }
    id.name = "unknown";
    if (d.n != 2) return id;
    const auto& cat = c4_catalog();
    size_t total = 0;
    for (auto& l : d.levels) total += l.size();
    static std::mutex mu;
    static std::vector<std::pair<std::vector<size_t>, LewisDiagram>> sums;
    {
        std::lock_guard<std::mutex> lock(mu);
        if (sums.empty()) {
            for (size_t i = 0; i < cat.size(); ++i) {
                sums.push_back({{i}, cat[i].diagram});
            }
            for (size_t i = 0; i < cat.size(); ++i)
                for (size_t j = i; j < cat.size(); ++j)
                    sums.push_back({{i, j}, direct_sum({cat[i].diagram, cat[j].diagram})});
            for (size_t i = 0; i < cat.size(); ++i)
                for (size_t j = i; j < cat.size(); ++j)
                    for (size_t k = j; k < cat.size(); ++k)
                        sums.push_back({{i, j, k}, direct_sum({cat[i].diagram, cat[j].diagram, cat[k].diagram})});
        }
    }
    for (auto& [idx, cand] : sums) {
        size_t ct = 0;
        for (auto& l : cand.levels) ct += l.size();
        if (ct != total) continue;
        auto w = find_isomorphism(d, cand);
        if (w) {
            id.known = true;
            id.summands = idx;
            id.name = render_catalog_name(idx);
            id.witness = *w;
            return id;
        }
    }
    return id;
}

Identification identify(const MackeyPresentation& m) { return identify(LewisDiagram::from(m)); }

}  // namespace eqh
