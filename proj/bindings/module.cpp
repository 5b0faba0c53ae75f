#include "daestruct/errors.hpp"
#include "daestruct/index.hpp"
#include "daestruct/membership.hpp"
#include "daestruct/parser.hpp"
#include "daestruct/reduce.hpp"
#include "daestruct/report.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace daestruct;

namespace {

struct PySystem {
    DAESystem sys;
};

AnalyzeOptions make_options(const PySystem& s, const std::string& witnessJson, uint64_t seed,
                            int trials, int maxK) {
    AnalyzeOptions opts;
    opts.seed = seed;
    opts.trials = trials;
    opts.maxK = maxK;
    if (!witnessJson.empty()) opts.witness = read_witness_json(s.sys, witnessJson);
    return opts;
}

} // namespace

PYBIND11_MODULE(_daestruct, m) {
    m.doc() = "structural analysis of polynomial DAE systems (exact rational arithmetic)";

    // base first: translators registered later run first
    py::register_exception<Error>(m, "DAEError");
    py::register_exception<ParseError>(m, "DAEParseError");

    py::class_<PySystem>(m, "System")
        .def_property_readonly("n", [](const PySystem& s) { return s.sys.n; })
        .def_property_readonly("r", [](const PySystem& s) { return s.sys.r(); })
        .def_property_readonly("e", [](const PySystem& s) { return s.sys.e(); })
        .def_property_readonly("unknowns", [](const PySystem& s) { return s.sys.unknownNames; })
        .def_property_readonly("parameters", [](const PySystem& s) { return s.sys.paramNames; })
        .def("__repr__", [](const PySystem& s) {
            return "<daestruct.System n=" + std::to_string(s.sys.n) +
                   " r=" + std::to_string(s.sys.r()) + ">";
        });

    m.def("parse_system", [](const std::string& text) {
        PySystem s{parse_system(text)};
        s.sys.validate();
        return s;
    }, py::arg("text"), "Parse the system DSL.");

    m.def("serialize_system", [](const PySystem& s) { return serialize_system(s.sys); },
          py::arg("system"));

    m.def("analyze_json",
          [](const PySystem& s, const std::string& witnessJson, uint64_t seed, int trials,
             int maxK) {
              IndexReport rep = analyze(s.sys, make_options(s, witnessJson, seed, trials, maxK));
              return analyze_report_json(s.sys, rep);
          },
          py::arg("system"), py::arg("witness_json") = "", py::arg("seed") = 0,
          py::arg("trials") = 3, py::arg("max_k") = 0,
          "Full index report (mu, sigma, order, bounds, diagnostics) as JSON.");

    m.def("jacobi_json", [](const PySystem& s) { return jacobi_report_json(s.sys); },
          py::arg("system"), "Jacobi numbers, bounds and a dual cover as JSON.");

    m.def("jacobi_number",
          [](const std::vector<std::vector<py::object>>& rows) {
              std::vector<std::vector<long>> a;
              for (const auto& row : rows) {
                  std::vector<long> r;
                  for (const auto& cell : row) {
                      if (cell.is_none()) r.push_back(NEG_INF);
                      else r.push_back(cell.cast<long>());
                  }
                  a.push_back(std::move(r));
              }
              long j = jacobi_number(ExtMatrix(a));
              return j == NEG_INF ? py::object(py::none()) : py::object(py::int_(j));
          },
          py::arg("matrix"),
          "Jacobi number of an integer matrix; None marks absent entries (-inf).");

    m.def("membership_json",
          [](const PySystem& s, const std::string& expr, const std::string& witnessJson,
             uint64_t seed, bool find, long degCap) {
              DiffPoly f = parse_poly(s.sys, expr);
              if (f.is_zero()) throw Error("f must be nonzero");
              AnalyzeOptions opts = make_options(s, witnessJson, seed, 3, 0);
              ProlongationCache cache(s.sys);
              RankOracle oracle = opts.witness
                                      ? RankOracle::witness_oracle(*opts.witness, opts.policy())
                                      : RankOracle::generic_oracle(opts.seed, opts.trials);
              int sigma = differentiation_index(cache, oracle).sigma;
              MembershipBounds bounds = membership_bounds(s.sys, sigma, f);
              std::optional<Representation> rep;
              if (find) {
                  MembershipOptions mopts;
                  mopts.degCap = degCap;
                  rep = find_representation(cache, f, bounds.N, mopts);
              }
              return membership_report_json(s.sys, f, bounds, find, rep);
          },
          py::arg("system"), py::arg("f"), py::arg("witness_json") = "", py::arg("seed") = 0,
          py::arg("find") = false, py::arg("deg_cap") = -1,
          "Membership bounds (and optionally a verified representation) as JSON.");

    m.def("simulate_csv",
          [](const PySystem& s, const std::string& witnessJson, const std::string& h, long steps,
             int jet, const std::string& tol, uint64_t seed) {
              Witness w = read_witness_json(s.sys, witnessJson);
              SimulateOptions opts;
              opts.h = rational_from_string(h);
              opts.steps = steps;
              opts.jetDepth = jet;
              opts.projectionTol = rational_from_string(tol);
              opts.seed = seed;
              ProlongationCache cache(s.sys);
              return trajectory_csv(s.sys, simulate(cache, w, opts));
          },
          py::arg("system"), py::arg("witness_json"), py::arg("h") = "1/1000",
          py::arg("steps") = 1000, py::arg("jet") = 4, py::arg("tol") = "1/10000000000",
          py::arg("seed") = 0, "Taylor-jet simulation; returns the trajectory CSV.");

#ifdef VERSION_INFO
#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)
    m.attr("__version__") = MACRO_STRINGIFY(VERSION_INFO);
#else
    m.attr("__version__") = "dev";
#endif
}
