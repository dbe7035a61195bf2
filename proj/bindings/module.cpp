#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "ngpsim/harness.hpp"
#include "ngpsim/verifier.hpp"
#include "ngpsim/world.hpp"

namespace py = pybind11;

namespace {

py::dict summary_dict(const ngpsim::RunSummary& s) {
  py::dict d;
  d["n"] = s.n;
  d["algorithm"] = s.algorithm;
  d["questions"] = s.questions_used;
  d["bound"] = s.bound;
  d["within_bound"] = s.within_bound;
  d["result"] = s.result;
  d["majority_ok"] = s.majority_ok;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Fault diagnosis of unreliable yes/no respondents";

  py::register_exception<ngpsim::Error>(m, "NgpsimError", PyExc_ValueError);

  py::class_<ngpsim::Census>(m, "Census")
      .def_readonly("knights", &ngpsim::Census::knights)
      .def_readonly("knaves", &ngpsim::Census::knaves)
      .def_readonly("normals", &ngpsim::Census::normals)
      .def_readonly("majority_ok", &ngpsim::Census::majority_ok)
      .def("__repr__", [](const ngpsim::Census& c) {
        return "Census(knights=" + std::to_string(c.knights) +
               ", knaves=" + std::to_string(c.knaves) +
               ", normals=" + std::to_string(c.normals) +
               ", majority_ok=" + (c.majority_ok ? std::string("True") : std::string("False")) +
               ")";
      });

  m.def(
      "census",
      [](const std::string& world) { return ngpsim::census(ngpsim::parse_world(world)); },
      py::arg("world"), "Count Knights, Knaves and Normals in a world string.");

  m.def(
      "question_bound",
      [](const std::string& algorithm, std::size_t n) {
        return ngpsim::question_bound(ngpsim::algorithm_from_name(algorithm), n);
      },
      py::arg("algorithm"), py::arg("n"),
      "Worst-case question count guaranteed for the algorithm on n processors.");

  m.def(
      "enumerate_worlds",
      [](std::size_t n, bool require_majority) {
        std::vector<std::string> out;
        for (const ngpsim::World& w : ngpsim::enumerate_worlds(n, require_majority)) {
          out.push_back(ngpsim::to_string(w));
        }
        return out;
      },
      py::arg("n"), py::arg("require_majority") = true,
      "All type assignments of size n, optionally restricted to a reliable majority.");

  m.def(
      "run_scenario",
      [](const std::string& world, const std::string& algorithm, const std::string& strategy,
         std::optional<std::vector<std::string>> script, std::optional<std::uint64_t> seed,
         std::optional<std::size_t> budget) {
        ngpsim::ScenarioConfig config;
        config.world = world;
        config.algorithm = ngpsim::algorithm_from_name(algorithm);
        config.strategy = ngpsim::strategy_from_name(strategy);
        if (script) {
          std::vector<ngpsim::Answer> answers;
          for (const std::string& s : *script) answers.push_back(ngpsim::answer_from_name(s));
          config.script = std::move(answers);
        }
        config.seed = seed;
        config.normal_budget = budget;
        const ngpsim::ScenarioOutcome outcome = ngpsim::run_scenario(config);
        py::dict d = summary_dict(outcome.summary);
        d["transcript_json"] = outcome.transcript_json;
        return d;
      },
      py::arg("world"), py::arg("algorithm"), py::arg("strategy") = "always_no",
      py::arg("script") = py::none(), py::arg("seed") = py::none(),
      py::arg("budget") = py::none(),
      "Run one diagnosis scenario; returns the summary plus the transcript JSON.");

  m.def(
      "exhaustive_check",
      [](std::size_t n_max) {
        const ngpsim::VerificationReport report = ngpsim::exhaustive_check(n_max);
        py::dict d;
        d["ok"] = report.ok();
        d["worlds_checked"] = report.worlds_checked;
        d["branches_checked"] = report.branches_checked;
        d["failures"] = report.failures.size();
        d["report_json"] = ngpsim::verification_report_to_json(report);
        return d;
      },
      py::arg("n_max") = 5,
      "Check every algorithm on every majority-ok world and Normal behavior up to n_max.");

  m.def(
      "run_sweep",
      [](std::size_t n_from, std::size_t n_to, const std::string& algorithm, std::size_t trials,
         std::uint64_t seed) {
        ngpsim::SweepConfig config;
        config.n_from = n_from;
        config.n_to = n_to;
        config.algorithm = ngpsim::algorithm_from_name(algorithm);
        config.trials = trials;
        config.seed = seed;
        return ngpsim::run_sweep(config);
      },
      py::arg("n_from") = 2, py::arg("n_to") = 8,
      py::arg("algorithm") = "find_reliable_pairing", py::arg("trials") = 20,
      py::arg("seed") = 1, "Randomized trials over a range of sizes; returns CSV text.");
}
