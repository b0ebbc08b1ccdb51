#include "mobileba/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace mobileba;

int main(int argc, char **argv)
{
    CLI::App app{"Mobile Byzantine agreement simulator"};
    app.require_subcommand(1);

    std::string scenario, output, graph;
    auto *run = app.add_subcommand("run", "Run one scenario (or a scenario pair) and print its verdict");
    run->add_option("scenario", scenario, "Scenario file")->required();
    run->add_option("-o,--output", output, "Write the trace (JSON lines) here");

    int m = 1;
    int source = 1;
    bool as_json = false;
    auto *analyze = app.add_subcommand("analyze", "Report connectivity, bounds and a feasibility verdict for a graph");
    analyze->add_option("graph", graph, "Edge-list file")->required();
    analyze->add_option("--m", m, "Faults per round")->check(CLI::NonNegativeNumber);
    analyze->add_option("--source", source, "Source processor");
    analyze->add_flag("--json", as_json, "Print one JSON object");

    std::optional<int> seeds;
    auto *campaign = app.add_subcommand("campaign", "Run a scenario over consecutive seeds");
    campaign->add_option("scenario", scenario, "Scenario file")->required();
    campaign->add_option("--seeds", seeds, "Number of seeds (default from the file)");

    std::string kind;
    int n = 0, clique = 0, bridge = 0, pairs = 0;
    auto *generate = app.add_subcommand("generate", "Write a generated network as an edge list");
    generate->add_option("kind", kind, "complete | two-clique | cycle | star | complete-minus-matching")->required();
    generate->add_option("--n", n, "Processors");
    generate->add_option("--clique", clique, "Clique size (two-clique)");
    generate->add_option("--bridge", bridge, "Universal vertices (two-clique)");
    generate->add_option("--pairs", pairs, "Removed matching edges (complete-minus-matching)");
    generate->add_option("-o,--output", output, "Output file (default stdout)");

    cli::PairSpec spec;
    int value = 1;
    int observer = 0;
    std::string cut, perturb;
    auto *pair = app.add_subcommand("pair", "Build a scenario pair and check observer indistinguishability");
    pair->add_option("kind", spec.kind, "five-set | cutset")->required()->check(CLI::IsMember({"five-set", "cutset"}));
    pair->add_option("--n", spec.n, "Processors (five-set)");
    pair->add_option("--m", spec.m, "Faults per round");
    pair->add_option("--value", value, "True source value (five-set)");
    pair->add_flag("--swapped", spec.swapped, "Symmetric pair observed by A u B (five-set)");
    pair->add_option("--cut", cut, "Cut-set, comma separated (cutset)");
    pair->add_option("--observer", observer, "Far observer (cutset)");
    pair->add_option("--graph", graph, "Edge-list file (cutset, default two-clique 4+4)");
    pair->add_option("--perturb", perturb, "round:sender:target or auto; the perturbed pair must diverge");

    auto *bounds = app.add_subcommand("bounds", "Print the connectivity bounds for n and m");
    bounds->add_option("--n", n, "Processors")->required();
    bounds->add_option("--m", m, "Faults per round")->required();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e);
        return cli::kUsage;
    }

    if (*run)
        return cli::cmd_run(scenario, output, std::cout, std::cerr);
    if (*analyze)
        return cli::cmd_analyze(graph, m, source, as_json, std::cout, std::cerr);
    if (*campaign)
        return cli::cmd_campaign(scenario, seeds, std::cout, std::cerr);
    if (*generate)
        return cli::cmd_generate(kind, n, clique, bridge, pairs, output, std::cout, std::cerr);
    if (*bounds)
        return cli::cmd_bounds(n, m, std::cout, std::cerr);
    try
    {
        spec.value = Value::plain(value);
        spec.cut = cli::parse_id_list(cut);
        spec.observer = ProcessorId(observer);
        if (!perturb.empty())
            spec.perturb = perturb;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return cli::kUsage;
    }
    return cli::cmd_pair(spec, graph, std::cout, std::cerr);
}
