#include "eqh/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

namespace eqh {

int cli_main(int argc, char** argv) {
    CLI::App app{"RO(G)-graded homology of representation spheres for cyclic p-groups"};
    app.require_subcommand(1);

    std::string group_text = "2,2", coeff_text = "Z", sphere, box, tasks = "additive", format = "table";
    std::vector<std::string> fixtures;
    std::string cache_dir;
    int jobs = 1, relation_box = 4;
    if (const char* env = std::getenv("EQH_CACHE_DIR")) cache_dir = env;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--group", group_text, "p,n for C_{p^n}")->capture_default_str();
        sub->add_option("--coefficients", coeff_text, "Z or Z/q")->capture_default_str();
    };

    CLI::App* run_cmd = app.add_subcommand("run", "compute homology over a sphere or a box");
    common(run_cmd);
    auto* sphere_opt = run_cmd->add_option("--sphere", sphere, "virtual representation, e.g. 2*sigma-lambda");
    auto* box_opt = run_cmd->add_option("--box", box, "multiplicity bounds, e.g. n<=2,m<=2");
    sphere_opt->excludes(box_opt);
    run_cmd->add_option("--tasks", tasks, "additive,names,products,relations,massey")->capture_default_str();
    run_cmd->add_option("--format", format, "json or table")
        ->check(CLI::IsMember({"json", "table"}))
        ->capture_default_str();
    run_cmd->add_option("--fixtures", fixtures, "relation templates for the relations task");
    run_cmd->add_option("--cache", cache_dir, "cache directory (default $EQH_CACHE_DIR)");
    run_cmd->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

    CLI::App* verify_cmd = app.add_subcommand("verify", "compare fixture files with computed results");
    common(verify_cmd);
    verify_cmd->add_option("--fixtures", fixtures, "fixture files")->required();
    verify_cmd->add_option("--box", relation_box, "range bound for relation instances")->capture_default_str();

    CLI::App* dump_cmd = app.add_subcommand("dump", "print the cellular chain model of a sphere");
    common(dump_cmd);
    dump_cmd->add_option("--sphere", sphere, "virtual representation")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    GroupSpec g;
    CoefficientSystem k;
    try {
        g = parse_group(group_text);
        k = CoefficientSystem::parse(coeff_text);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    if (*dump_cmd) {
        try {
            VirtualRep v = parse_virtual(sphere, g);
            std::cout << dump(*with_coefficients(sphere_complex(v, g), k));
            return 0;
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 2;
        }
    }

    if (*verify_cmd) {
        VerifyReport rep;
        try {
            rep = verify(fixtures, VerifyOptions{g, k, relation_box});
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 2;
        }
        for (const auto& f : rep.failures) std::cout << "FAIL " << f << "\n";
        std::cout << rep.passed << "/" << rep.rows << " rows passed";
        if (rep.relations)
            std::cout << ", relations " << rep.relations->checked << " checked, " << rep.relations->failures.size()
                      << " failed";
        std::cout << "\n";
        return rep.ok() ? 0 : 1;
    }

    RangeQuery q;
    try {
        q.group = g;
        q.coeffs = k;
        if (!sphere.empty()) q.spheres.push_back(parse_virtual(sphere, g));
        else if (!box.empty()) q.bounds = parse_box(box, g);
        else throw std::invalid_argument("give --sphere or --box");
        q.tasks = parse_tasks(tasks);
        if (!fixtures.empty()) q.relations_path = fixtures.front();
        q.validate();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    RunOutput out;
    try {
        out = run(q, RunOptions{cache_dir, jobs});
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    if (format == "json") std::cout << to_json(q, out).dump(2) << "\n";
    else std::cout << render_table(q, out);
    return out.relations && !out.relations->ok() ? 1 : 0;
}

}  // namespace eqh
