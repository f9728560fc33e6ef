#include <exception>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include <toric/cli.hpp>

int main(int argc, char **argv)
{
    using toric::cli::JobConfig;
    CLI::App app{"Equivariant genera of torus manifolds by fixed-point localization"};
    app.require_subcommand(1);
    JobConfig job;
    std::string mode = "linear";
    int genus_order = -1;

    const std::map<std::string, std::string> help{
        {"validate", "check a quasitoric pair or fixed-point file"},
        {"fixed-points", "print signs and weight vectors"},
        {"phi", "print the normalized localization series"},
        {"genus", "print the genus value"},
        {"check-cf", "check the Conner-Floyd relations"},
        {"check-rigidity", "check that the equivariant genus is constant"},
        {"pairing", "test augmentation sums over blocks of fixed points"},
        {"special-check", "check a specially omnioriented pair"},
        {"list-builtins", "list builtin manifolds"},
    };
    for (const auto &name : toric::cli::commands()) {
        auto *sub = app.add_subcommand(name, help.at(name));
        sub->callback([&job, name] { job.command = name; });
        if (name == "list-builtins") {
            sub->add_option("--format", job.format, "text or json")->check(CLI::IsMember({"text", "json"}));
            continue;
        }
        sub->add_option("--input", job.input, "manifold JSON file or builtin:<family>[:<param>=<value>]*")
            ->required();
        sub->add_option("--genus", job.genus, "genus name")->check(CLI::IsMember(toric::catalog_names()));
        sub->add_option("--genus-order", genus_order, "number of Hurewicz generators (default n + order)");
        sub->add_option("--mode", mode, "linear or universal")->check(CLI::IsMember({"linear", "universal"}));
        sub->add_option("--order", job.order, "truncation order")->check(CLI::NonNegativeNumber);
        sub->add_option("--format", job.format, "text or json")->check(CLI::IsMember({"text", "json"}));
        sub->add_flag("--flip-orientation", job.flip_orientation, "negate every sign");
        sub->add_option("--pairing", job.pairing, "blocks of 1-based point indices, e.g. 1-4,2-3");
        sub->add_flag("--search-pairings", job.search_pairings, "search all perfect pairings");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : toric::cli::input;
    }
    job.mode = mode == "universal" ? toric::Mode::universal : toric::Mode::linear;
    if (genus_order >= 0) {
        job.genus_order = genus_order;
    }
    try {
        return toric::cli::run(job, std::cout, std::cerr);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return toric::cli::input;
    }
}
