#pragma once

#include "eqh/expression.hpp"
#include "eqh/relations.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace eqh {

inline constexpr const char* kEngineVersion = "eqh-1.0";

// What to compute: a rectangular box of multiplicities or an explicit list of spheres.
struct RangeQuery {
    GroupSpec group{2, 2};
    CoefficientSystem coeffs;
    std::vector<VirtualRep> spheres;  // used when non-empty
    std::map<Irrep, int> bounds;      // |multiplicity| <= bound, missing irreducibles fixed at 0
    std::set<std::string> tasks{"additive"};
    std::string relations_path;       // templates for the relations task

    void validate() const;
    // Gradings in output order.
    std::vector<VirtualRep> gradings() const;
    // Stable text used for provenance hashing.
    std::string canonical() const;
};

GroupSpec parse_group(const std::string& text);
// "n<=2,m<=3" (n: sigma, m: the faithful lambda) or irreducible names, "sigma<=2,lambda1<=1".
std::map<Irrep, int> parse_box(const std::string& text, const GroupSpec& g);
std::set<std::string> parse_tasks(const std::string& text);

struct ResultRecord {
    std::string grading;
    std::vector<int> multiplicities;  // net multiplicity per nontrivial irreducible
    int degree = 0;
    std::string name;    // catalog name, "-" where there is no catalog
    std::string levels;  // "top;...;bottom"
    std::vector<std::vector<std::string>> generators;  // per level, top first; "?" if not reached
    std::vector<std::string> products;
    std::vector<std::string> massey;
    std::string provenance;
};

struct RunOutput {
    std::vector<ResultRecord> records;
    std::optional<RelationReport> relations;
};

struct RunOptions {
    std::string cache_dir;  // empty: no cache
    int jobs = 1;
};

RunOutput run(const RangeQuery& q, const RunOptions& opt = {});

uint64_t fnv1a(const std::string& s);
std::string hex64(uint64_t v);

nlohmann::ordered_json to_json(const ResultRecord& r);
ResultRecord record_from_json(const nlohmann::ordered_json& j);
nlohmann::ordered_json to_json(const RangeQuery& q, const RunOutput& out);
std::vector<ResultRecord> records_from_json(const nlohmann::ordered_json& j);
std::string render_table(const RangeQuery& q, const RunOutput& out);

// Fixture rows "grading | degree | name | top;middle;bottom | generator-expression" and,
// in the same or another file, relation templates (4 fields).
struct FixtureRow {
    int line = 0;
    std::string grading;
    int degree = 0;
    std::string name, levels, expr;
};

struct VerifyReport {
    size_t rows = 0;
    size_t passed = 0;
    std::vector<std::string> failures;
    std::optional<RelationReport> relations;
    bool ok() const { return failures.empty(); }
};

struct VerifyOptions {
    GroupSpec group{2, 2};
    CoefficientSystem coeffs;
    int relation_box = 4;
};

// Splits a fixture file into table rows and relation templates; throws ParseError.
void parse_fixtures(std::istream& in, std::vector<FixtureRow>& rows, std::vector<RelationTemplate>& rels);
VerifyReport verify(const std::vector<std::string>& paths, const VerifyOptions& opt = {});

// Entry point of the command-line tool; returns the exit status (0 ok, 1 failure, 2 usage).
int cli_main(int argc, char** argv);

}  // namespace eqh
