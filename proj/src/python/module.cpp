#include "mobileba/cli.hpp"
#include "mobileba/relcomm.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace mobileba;

namespace
{

py::object to_python(const nlohmann::json &j)
{
    return py::module_::import("json").attr("loads")(j.dump());
}

net::Network network_from(int n, const std::vector<std::pair<int, int>> &edges)
{
    std::vector<net::Edge> e;
    for (auto [u, v] : edges)
        e.emplace_back(ProcessorId(u), ProcessorId(v));
    return net::Network(n, e);
}

/// Runs a command, returning its JSON lines; exit status 2 becomes ValueError.
std::pair<int, std::vector<nlohmann::json>> command(const std::function<int(std::ostream &, std::ostream &)> &f)
{
    std::ostringstream out, err;
    const int code = f(out, err);
    if (code == cli::kUsage)
        throw py::value_error(err.str());
    std::vector<nlohmann::json> lines;
    std::istringstream is(out.str());
    for (std::string line; std::getline(is, line);)
        if (!line.empty())
            lines.push_back(nlohmann::json::parse(line));
    return {code, lines};
}

} // namespace

PYBIND11_MODULE(mobileba, m)
{
    m.doc() = "Mobile Byzantine agreement simulator";

    py::register_exception_translator([](std::exception_ptr p) {
        try
        {
            if (p)
                std::rethrow_exception(p);
        }
        catch (const PreconditionError &e)
        {
            PyErr_SetString(PyExc_ValueError, e.what());
        }
        catch (const cli::ParseError &e)
        {
            PyErr_SetString(PyExc_ValueError, e.what());
        }
    });

    m.def(
        "analyze",
        [](int n, const std::vector<std::pair<int, int>> &edges, int faults, int source) {
            return to_python(cli::analyze(network_from(n, edges), faults, ProcessorId(source)));
        },
        py::arg("n"), py::arg("edges"), py::arg("m"), py::arg("source") = 1);

    m.def(
        "run",
        [](const std::string &path, const std::string &trace_path) {
            auto [code, lines] = command([&](auto &out, auto &err) { return cli::cmd_run(path, trace_path, out, err); });
            return to_python(lines.back());
        },
        py::arg("scenario"), py::arg("trace_path") = "");

    m.def(
        "campaign",
        [](const std::string &path, std::optional<int> count) {
            auto [code, lines] = command([&](auto &out, auto &err) { return cli::cmd_campaign(path, count, out, err); });
            nlohmann::json summary = lines.back();
            lines.pop_back();
            summary["runs_detail"] = lines;
            return to_python(summary);
        },
        py::arg("scenario"), py::arg("count") = py::none());

    m.def(
        "pair",
        [](const std::string &kind, int n, int faults, int value, bool swapped, std::optional<std::string> perturb) {
            cli::PairSpec spec;
            spec.kind = kind;
            spec.n = n;
            spec.m = faults;
            spec.value = Value::plain(value);
            spec.swapped = swapped;
            spec.perturb = perturb;
            if (kind == "cutset")
                spec.observer = ProcessorId(0);
            return to_python(cli::pair_report(spec, std::nullopt));
        },
        py::arg("kind") = "five-set", py::arg("n") = 5, py::arg("m") = 1, py::arg("value") = 1,
        py::arg("swapped") = false, py::arg("perturb") = py::none());

    m.def("bounds", [](int n, int faults) { return to_python(cli::bounds(n, faults)); }, py::arg("n"), py::arg("m"));

    m.def("compute_T", &relcomm::compute_T, py::arg("n"), py::arg("m"), py::arg("kappa"));

    m.def(
        "generate",
        [](const std::string &kind, int n, int clique, int bridge, int pairs) {
            net::Network g = cli::generate(kind, n, clique, bridge, pairs);
            std::vector<std::pair<int, int>> edges;
            for (auto [u, v] : g.edges())
                edges.emplace_back(u.index, v.index);
            return py::make_tuple(g.size(), edges);
        },
        py::arg("kind"), py::arg("n") = 0, py::arg("clique") = 0, py::arg("bridge") = 0, py::arg("pairs") = 0);
}
