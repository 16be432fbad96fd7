#include "eqh/cli.hpp"

#include "eqh/factorize.hpp"
#include "eqh/massey.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

namespace eqh {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n"), b = s.find_last_not_of(" \t\r\n");
    return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

bool is_c4_integral(const GroupSpec& g, const CoefficientSystem& k) { return g.p == 2 && g.n == 2 && k.is_integral(); }

std::vector<int> multiplicities(const VirtualRep& v, const GroupSpec& g) {
    std::vector<int> out;
    for (Irrep r : nontrivial_irreps(g)) out.push_back(v.net(r));
    return out;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string s;
    for (size_t i = 0; i < parts.size(); ++i) s += (i ? sep : "") + parts[i];
    return s;
}

std::string coords_str(const Vec& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].str();
    return s + ")";
}

// Payload that depends only on (version, group, coefficients, grading): cacheable.
struct AdditiveEntry {
    int degree;
    std::string name, levels;
};

std::vector<AdditiveEntry> compute_additive(GreenEngine& e, const VirtualRep& v) {
    std::vector<AdditiveEntry> out;
    int t = v.net(Irrep::trivial());
    ComplexPtr c = e.model(GradingPoint::of(v, 0).rep);
    bool named = is_c4_integral(e.group(), e.coefficients());
    for (int j = c->lo; j <= c->hi; ++j) {
        GradingPoint p = GradingPoint::of(v, j + t);
        const MackeyPresentation& m = e.presentation(p);
        if (m.is_zero()) continue;
        out.push_back({j + t, named ? identify(m).name : "-", m.groups_string()});
    }
    return out;
}

std::string cache_key(const GroupSpec& g, const CoefficientSystem& k, const VirtualRep& v) {
    return std::string(kEngineVersion) + "|" + g.str() + "|" + k.str() + "|" + v.str(g);
}

std::optional<std::vector<AdditiveEntry>> cache_load(const std::string& dir, const std::string& key) {
    fs::path path = fs::path(dir) / (hex64(fnv1a(key)) + ".json");
    std::ifstream in(path);
    if (!in) return std::nullopt;
    try {
        ordered_json j = ordered_json::parse(in);
        if (j.at("key").get<std::string>() != key) return std::nullopt;
        std::vector<AdditiveEntry> out;
        for (const auto& d : j.at("degrees"))
            out.push_back({d.at("degree").get<int>(), d.at("name").get<std::string>(), d.at("levels").get<std::string>()});
        return out;
    } catch (const std::exception&) {
        return std::nullopt;  // unreadable entries are recomputed
    }
}

void cache_store(const std::string& dir, const std::string& key, const std::vector<AdditiveEntry>& entries) {
    fs::create_directories(dir);
    ordered_json j;
    j["key"] = key;
    j["degrees"] = ordered_json::array();
    for (const auto& a : entries) j["degrees"].push_back({{"degree", a.degree}, {"name", a.name}, {"levels", a.levels}});
    std::string name = hex64(fnv1a(key));
    fs::path tmp = fs::path(dir) / (name + ".tmp" + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id())));
    {
        std::ofstream out(tmp);
        if (!out) throw std::runtime_error("cannot write cache file " + tmp.string());
        out << j.dump(1) << "\n";
    }
    fs::rename(tmp, fs::path(dir) / (name + ".json"));
}

struct Multiplier {
    std::string name;
    HomologyElement value;
};

std::vector<Multiplier> basic_multipliers(GreenEngine& e) {
    const GroupSpec& g = e.group();
    bool c4 = g.p == 2 && g.n == 2;
    std::vector<Multiplier> out;
    for (Irrep r : nontrivial_irreps(g)) {
        std::string n = c4 ? (r.kind == IrrepKind::Sigma ? "s" : "l") : r.name(g);
        out.push_back({"a_" + n, e.euler_class(VirtualRep::of(r, 1))});
    }
    for (Irrep r : nontrivial_irreps(g)) {
        if (r.kind == IrrepKind::Sigma)
            out.push_back({c4 ? "u_{2s}" : "u_2sigma", e.orientation_class(VirtualRep::of(r, 2), e.top())});
        else
            out.push_back({"u_" + (c4 ? std::string("l") : r.name(g)), e.orientation_class(VirtualRep::of(r, 1), e.top())});
    }
    return out;
}

}  // namespace

uint64_t fnv1a(const std::string& s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i, v >>= 4) s[i] = digits[v & 15];
    return s;
}

GroupSpec parse_group(const std::string& text) {
    size_t comma = text.find(',');
    if (comma == std::string::npos) throw ParseError("expected 'p,n'", 0);
    try {
        size_t used = 0;
        int p = std::stoi(text.substr(0, comma), &used);
        if (used != comma) throw ParseError("bad prime", used);
        std::string rest = text.substr(comma + 1);
        int n = std::stoi(rest, &used);
        if (used != rest.size()) throw ParseError("trailing characters", comma + 1 + used);
        return GroupSpec(p, n);
    } catch (const std::invalid_argument&) {
        throw ParseError("expected integers 'p,n'", 0);
    } catch (const std::out_of_range&) {
        throw ParseError("integer out of range", 0);
    }
}

std::map<Irrep, int> parse_box(const std::string& text, const GroupSpec& g) {
    std::map<Irrep, int> out;
    size_t at = 0;
    while (at < text.size()) {
        size_t comma = text.find(',', at);
        if (comma == std::string::npos) comma = text.size();
        std::string item = text.substr(at, comma - at);
        size_t le = item.find("<=");
        if (le == std::string::npos) throw ParseError("expected NAME<=BOUND", at);
        std::string key = trim(item.substr(0, le)), num = trim(item.substr(le + 2));
        Irrep r;
        if (key == "n") {
            if (g.p != 2) throw ParseError("'n' (sigma) needs p = 2", at);
            r = Irrep::sigma();
        } else if (key == "m") {
            if (g.p == 2 && g.n < 2) throw ParseError("'m' (lambda) needs n >= 2 for p = 2", at);
            r = Irrep::lambda(g.n);
        } else {
            VirtualRep v;
            try {
                v = parse_virtual(key, g);
            } catch (const ParseError& e) {
                throw ParseError("unknown irreducible '" + key + "'", at + e.position);
            }
            auto s = v.support();
            if (s.size() != 1 || v.net(s[0]) != 1 || s[0].kind == IrrepKind::Trivial)
                throw ParseError("expected one nontrivial irreducible, got '" + key + "'", at);
            r = s[0];
        }
        size_t used = 0;
        int b = 0;
        try {
            b = std::stoi(num, &used);
        } catch (const std::exception&) {
            throw ParseError("expected a bound", at + le + 2);
        }
        if (used != num.size() || b < 0) throw ParseError("bound must be a non-negative integer", at + le + 2);
        if (out.count(r)) throw ParseError("duplicate bound for " + r.name(g), at);
        out[r] = b;
        at = comma + 1;
    }
    if (out.empty()) throw ParseError("empty box", 0);
    return out;
}

std::set<std::string> parse_tasks(const std::string& text) {
    static const std::set<std::string> known{"additive", "names", "products", "relations", "massey"};
    std::set<std::string> out;
    size_t at = 0;
    while (at <= text.size()) {
        size_t comma = text.find(',', at);
        if (comma == std::string::npos) comma = text.size();
        std::string t = trim(text.substr(at, comma - at));
        if (!known.count(t)) throw ParseError("unknown task '" + t + "'", at);
        out.insert(t);
        at = comma + 1;
    }
    return out;
}

void RangeQuery::validate() const {
    if (tasks.empty()) throw std::invalid_argument("no tasks");
    if (spheres.empty() && bounds.empty()) throw std::invalid_argument("give a sphere or a box");
    for (const auto& s : spheres)
        for (Irrep r : s.support()) r.validate(group);
    if ((tasks.count("names") || tasks.count("relations")) && !is_c4_integral(group, coeffs))
        throw std::invalid_argument("names and relations need C4 with Z coefficients");
    if (tasks.count("relations") && relations_path.empty()) throw std::invalid_argument("relations task needs --fixtures");
}

std::vector<VirtualRep> RangeQuery::gradings() const {
    std::vector<VirtualRep> out;
    if (!spheres.empty()) {
        out = spheres;
    } else {
        std::vector<Irrep> irreps = nontrivial_irreps(group);
        std::vector<int> lo, hi;
        for (Irrep r : irreps) {
            auto it = bounds.find(r);
            int b = it == bounds.end() ? 0 : it->second;
            lo.push_back(-b);
            hi.push_back(b);
        }
        std::vector<int> cur = lo;
        while (true) {
            VirtualRep v;
            for (size_t i = 0; i < irreps.size(); ++i)
                if (cur[i]) v.add(irreps[i], cur[i]);
            out.push_back(v);
            size_t i = irreps.size();
            while (i > 0 && cur[i - 1] == hi[i - 1]) {
                cur[i - 1] = lo[i - 1];
                --i;
            }
            if (i == 0) break;
            ++cur[i - 1];
        }
    }
    std::stable_sort(out.begin(), out.end(), [&](const VirtualRep& a, const VirtualRep& b) {
        auto ma = multiplicities(a, group), mb = multiplicities(b, group);
        if (ma != mb) return ma < mb;
        return a.net(Irrep::trivial()) < b.net(Irrep::trivial());
    });
    return out;
}

std::string RangeQuery::canonical() const {
    std::string s = "group=" + group.str() + ";coefficients=" + coeffs.str() + ";";
    if (!spheres.empty()) {
        s += "spheres=";
        for (const auto& v : spheres) s += v.str(group) + ",";
    } else {
        s += "box=";
        for (const auto& [r, b] : bounds) s += r.name(group) + "<=" + std::to_string(b) + ",";
    }
    s += ";tasks=";
    for (const auto& t : tasks) s += t + ",";
    if (tasks.count("relations")) s += ";relations=" + relations_path;
    return s;
}

RunOutput run(const RangeQuery& q, const RunOptions& opt) {
    q.validate();
    std::vector<VirtualRep> grads = q.gradings();
    std::vector<std::vector<AdditiveEntry>> additive(grads.size());

    // additive part: one engine per worker, gradings handed out in order
    std::atomic<size_t> next{0};
    std::mutex err_mutex;
    std::string error;
    auto worker = [&]() {
        GreenEngine e(q.group, q.coeffs);
        while (true) {
            size_t i = next++;
            if (i >= grads.size()) return;
            try {
                std::string key = cache_key(q.group, q.coeffs, grads[i]);
                std::optional<std::vector<AdditiveEntry>> hit;
                if (!opt.cache_dir.empty()) hit = cache_load(opt.cache_dir, key);
                if (hit) {
                    additive[i] = *hit;
                } else {
                    additive[i] = compute_additive(e, grads[i]);
                    if (!opt.cache_dir.empty()) cache_store(opt.cache_dir, key, additive[i]);
                }
            } catch (const std::exception& ex) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (error.empty()) error = ex.what();
            }
        }
    };
    int jobs = std::max(1, std::min<int>(opt.jobs, static_cast<int>(grads.size())));
    std::vector<std::thread> pool;
    for (int i = 1; i < jobs; ++i) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (!error.empty()) throw std::runtime_error(error);

    RunOutput out;
    std::string canon = q.canonical();
    std::map<GradingPoint, size_t> index;
    for (size_t i = 0; i < grads.size(); ++i)
        for (const auto& a : additive[i]) {
            ResultRecord r;
            r.grading = grads[i].str(q.group);
            r.multiplicities = multiplicities(grads[i], q.group);
            r.degree = a.degree;
            r.name = a.name;
            r.levels = a.levels;
            r.provenance = hex64(fnv1a(std::string(kEngineVersion) + "|" + canon + "|" + r.grading + "|" +
                                       std::to_string(r.degree)));
            index[GradingPoint::of(grads[i], a.degree)] = out.records.size();
            out.records.push_back(std::move(r));
        }

    bool extra = q.tasks.count("names") || q.tasks.count("products") || q.tasks.count("massey") ||
                 q.tasks.count("relations");
    if (!extra) return out;
    GreenEngine e(q.group, q.coeffs);
    ClassEvaluator ev(e);

    if (q.tasks.count("names")) {
        int box = 0;
        for (const auto& v : grads)
            for (int m : multiplicities(v, q.group)) box = std::max(box, std::abs(m));
        FactorizationResult f = factorize(ev, FactorizeOptions{box, false, 24});
        std::map<std::pair<GradingPoint, SubgroupIndex>, const SpotFactorization*> spots;
        for (const auto& s : f.spots) spots[{s.point, s.level}] = &s;
        for (const auto& [p, i] : index) {
            ResultRecord& r = out.records[i];
            for (int h = e.top(); h >= 0; --h) {
                std::vector<std::string> names;
                size_t size = e.level_group(p, h).size();
                auto it = spots.find({p, h});
                for (size_t g = 0; g < size; ++g) {
                    std::string n = "?";
                    if (it != spots.end())
                        for (const auto& ge : it->second->generators)
                            if (ge.index == g) n = ge.expr->str();
                    names.push_back(n);
                }
                r.generators.push_back(names);
            }
        }
    }

    if (q.tasks.count("products")) {
        // products of top generators with Euler and orientation classes, kept inside the range
        std::set<VirtualRep> in_range;
        for (const auto& v : grads) in_range.insert(GradingPoint::of(v, 0).rep);
        auto mult = basic_multipliers(e);
        for (const auto& [p, i] : index) {
            ResultRecord& r = out.records[i];
            size_t size = e.level_group(p, e.top()).size();
            for (size_t g = 0; g < size; ++g)
                for (const auto& m : mult) {
                    if (!in_range.count((p + m.value.point).rep)) continue;
                    HomologyElement x = e.multiply(e.generator(p, e.top(), g), m.value);
                    r.products.push_back("g" + std::to_string(g) + " * " + m.name + " = " +
                                         (e.is_zero(x) ? std::string("0") : coords_str(x.coords)));
                }
        }
    }

    if (q.tasks.count("massey")) {
        MasseyEngine me(e);
        std::vector<Multiplier> basic = basic_multipliers(e);
        for (int c : {2, 4})
            if (!e.is_zero(e.scale(e.unit(e.top()), c)))
                basic.insert(basic.begin(), {std::to_string(c), e.scale(e.unit(e.top()), c)});
        for (const auto& x : basic)
            for (const auto& y : basic)
                for (const auto& z : basic) {
                    GradingPoint t = x.value.point + y.value.point + z.value.point;
                    t.degree += 1;
                    auto it = index.find(t);
                    if (it == index.end() || !e.level_group(t, e.top()).size()) continue;
                    MasseyResult m = me.massey3(x.value, y.value, z.value);
                    if (!m.defined) continue;
                    std::vector<std::string> ind;
                    for (const auto& g : m.indeterminacy)
                        if (!e.is_zero(g)) ind.push_back(coords_str(g.coords));
                    out.records[it->second].massey.push_back("<" + x.name + ", " + y.name + ", " + z.name + "> = " +
                                                             (e.is_zero(m.representative) ? std::string("0") : coords_str(m.representative.coords)) + " mod {" +
                                                             join(ind, ", ") + "}");
                }
    }

    if (q.tasks.count("relations")) {
        int box = 0;
        for (const auto& v : grads)
            for (int m : multiplicities(v, q.group)) box = std::max(box, std::abs(m));
        out.relations = check_relations(ev, load_relations(q.relations_path), box, e.top(), false);
    }
    return out;
}

ordered_json to_json(const ResultRecord& r) {
    ordered_json j;
    j["grading"] = r.grading;
    j["multiplicities"] = r.multiplicities;
    j["degree"] = r.degree;
    j["name"] = r.name;
    j["levels"] = r.levels;
    if (!r.generators.empty()) j["generators"] = r.generators;
    if (!r.products.empty()) j["products"] = r.products;
    if (!r.massey.empty()) j["massey"] = r.massey;
    j["provenance"] = r.provenance;
    return j;
}

ResultRecord record_from_json(const ordered_json& j) {
    ResultRecord r;
    r.grading = j.at("grading").get<std::string>();
    r.multiplicities = j.at("multiplicities").get<std::vector<int>>();
    r.degree = j.at("degree").get<int>();
    r.name = j.at("name").get<std::string>();
    r.levels = j.at("levels").get<std::string>();
    if (j.contains("generators")) r.generators = j["generators"].get<std::vector<std::vector<std::string>>>();
    if (j.contains("products")) r.products = j["products"].get<std::vector<std::string>>();
    if (j.contains("massey")) r.massey = j["massey"].get<std::vector<std::string>>();
    r.provenance = j.at("provenance").get<std::string>();
    return r;
}

ordered_json to_json(const RangeQuery& q, const RunOutput& out) {
    ordered_json j;
    j["engine"] = kEngineVersion;
    j["query"] = q.canonical();
    j["records"] = ordered_json::array();
    for (const auto& r : out.records) j["records"].push_back(to_json(r));
    if (out.relations) {
        ordered_json rel;
        rel["checked"] = out.relations->checked;
        rel["skipped"] = out.relations->skipped;
        rel["unchecked"] = out.relations->unchecked;
        rel["failures"] = ordered_json::array();
        for (const auto& f : out.relations->failures)
            rel["failures"].push_back({{"name", f.name}, {"lhs", f.lhs}, {"rhs", f.rhs}, {"detail", f.detail}});
        j["relations"] = rel;
    }
    return j;
}

std::vector<ResultRecord> records_from_json(const ordered_json& j) {
    std::vector<ResultRecord> out;
    for (const auto& r : j.at("records")) out.push_back(record_from_json(r));
    return out;
}

std::string render_table(const RangeQuery& q, const RunOutput& out) {
    std::ostringstream s;
    s << "# " << q.group.str() << " coefficients " << q.coeffs.str() << "\n";
    std::string current;
    for (const auto& r : out.records) {
        if (r.grading != current) {
            current = r.grading;
            s << "\nH_*(S^{" << r.grading << "})\n";
        }
        std::string deg = "H_" + std::to_string(r.degree);
        s << "  " << deg << std::string(deg.size() < 6 ? 6 - deg.size() : 1, ' ') << r.name
          << std::string(r.name.size() < 12 ? 12 - r.name.size() : 1, ' ') << r.levels;
        if (!r.generators.empty()) {
            std::vector<std::string> lv;
            for (const auto& g : r.generators) lv.push_back(g.empty() ? "0" : join(g, ", "));
            s << "   " << join(lv, " | ");
        }
        s << "\n";
        for (const auto& p : r.products) s << "      " << p << "\n";
        for (const auto& m : r.massey) s << "      " << m << "\n";
    }
    if (out.relations) {
        s << "\nrelations: " << out.relations->checked << " checked, " << out.relations->skipped << " skipped, "
          << out.relations->failures.size() << " failed, " << out.relations->unchecked.size()
          << " templates without an instance in range\n";
        for (const auto& f : out.relations->failures)
            s << "  FAIL " << f.name << ": " << f.lhs << " = " << f.rhs << " (" << f.detail << ")\n";
    }
    return s.str();
}

void parse_fixtures(std::istream& in, std::vector<FixtureRow>& rows, std::vector<RelationTemplate>& rels) {
    std::string line, relation_text;
    int no = 0;
    while (std::getline(in, line)) {
        ++no;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') {
            relation_text += "\n";
            continue;
        }
        size_t bars = std::count(t.begin(), t.end(), '|');
        if (bars == 3) {
            relation_text += line + "\n";
            continue;
        }
        relation_text += "\n";
        if (bars != 4) throw ParseError("line " + std::to_string(no) + ": expected 5 fields", 0);
        std::vector<std::string> f;
        size_t at = 0;
        for (int i = 0; i < 5; ++i) {
            size_t bar = t.find('|', at);
            if (bar == std::string::npos) bar = t.size();
            f.push_back(trim(t.substr(at, bar - at)));
            at = bar + 1;
        }
        FixtureRow r;
        r.line = no;
        r.grading = f[0];
        try {
            size_t used = 0;
            r.degree = std::stoi(f[1], &used);
            if (used != f[1].size()) throw std::invalid_argument("degree");
        } catch (const std::exception&) {
            throw ParseError("line " + std::to_string(no) + ": bad degree '" + f[1] + "'", 0);
        }
        r.name = f[2];
        r.levels = f[3];
        r.expr = f[4];
        rows.push_back(r);
    }
    std::istringstream rs(relation_text);
    for (auto& r : parse_relations(rs)) rels.push_back(r);
}

VerifyReport verify(const std::vector<std::string>& paths, const VerifyOptions& opt) {
    VerifyReport rep;
    std::vector<FixtureRow> rows;
    std::vector<RelationTemplate> rels;
    std::vector<std::string> row_files;
    for (const auto& path : paths) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot read fixture file " + path);
        parse_fixtures(in, rows, rels);
        row_files.resize(rows.size(), path);
    }
    GreenEngine e(opt.group, opt.coeffs);
    ClassEvaluator ev(e);
    bool named = is_c4_integral(opt.group, opt.coeffs);
    for (size_t i = 0; i < rows.size(); ++i) {
        const FixtureRow& row = rows[i];
        ++rep.rows;
        std::string where = row_files[i] + ":" + std::to_string(row.line) + ": H_" + std::to_string(row.degree) +
                            "(S^{" + row.grading + "})";
        std::vector<std::string> diffs;
        try {
            VirtualRep v = parse_virtual(row.grading, opt.group);
            GradingPoint p = GradingPoint::of(v, row.degree);
            const MackeyPresentation& m = e.presentation(p);
            std::string name = named ? identify(m).name : "-";
            std::string want = row.name;
            if (named && want != "0") {
                try {
                    want = canonical_name(want);
                } catch (const std::exception&) {
                    diffs.push_back("unknown name '" + row.name + "'");
                }
            }
            if (name != want) diffs.push_back("name: expected " + row.name + ", computed " + name);
            std::string levels = m.groups_string();
            if (!row.levels.empty() && row.levels != "-" && row.levels != levels)
                diffs.push_back("levels: expected " + row.levels + ", computed " + levels);
            if (!row.expr.empty() && row.expr != "-") {
                const LevelHomology& top = e.level_group(p, e.top());
                if (row.expr == "0") {
                    if (top.size()) diffs.push_back("generator: expected a zero top level");
                } else {
                    auto x = ev.evaluate(row.expr, e.top());
                    if (!x) {
                        diffs.push_back("generator: " + row.expr + " does not exist");
                    } else if (!(x->point == p)) {
                        diffs.push_back("generator: " + row.expr + " lives in " + x->point.str(opt.group));
                    } else if (top.size() != 1) {
                        diffs.push_back("generator: top level is not cyclic");
                    } else {
                        // generates iff the coordinate is a unit modulo the order
                        Integer o = top.order(0), c = x->coords[0];
                        bool gen = o.is_zero() ? (c == Integer(1) || c == Integer(-1)) : e.order(*x) == o;
                        if (!gen)
                            diffs.push_back("generator: " + row.expr + " = " + element_str(*x, opt.group) +
                                            " does not generate");
                    }
                }
            }
        } catch (const std::exception& ex) {
            diffs.push_back(ex.what());
        }
        if (diffs.empty()) ++rep.passed;
        else rep.failures.push_back(where + ": " + join(diffs, "; "));
    }
    if (!rels.empty()) {
        rep.relations = check_relations(ev, rels, opt.relation_box, e.top());
        for (const auto& f : rep.relations->failures)
            rep.failures.push_back("relation " + f.name + ": " + f.lhs + " = " + f.rhs + ": " + f.detail);
    }
    return rep;
}

}  // namespace eqh
