// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "twostage/bounds.hpp"
#include "twostage/core.hpp"
#include "twostage/distributed.hpp"
#include "twostage/experiment.hpp"
#include "twostage/greedy.hpp"
#include "twostage/objectives.hpp"
#include "twostage/oracle.hpp"
#include "twostage/streaming.hpp"

namespace py = pybind11;
using namespace twostage;

namespace {

// Functions implemented in Python; the GIL is taken for every call.
class PySetFunction final : public SetFunction {
 public:
  PySetFunction(py::function fn, std::size_t n) : fn_(std::move(fn)), n_(n) {}
  double value(std::span<const ElementId> set) const override {
    py::gil_scoped_acquire gil;
    return fn_(std::vector<ElementId>(set.begin(), set.end())).cast<double>();
  }
  std::size_t ground_size() const override { return n_; }

 private:
  py::function fn_;
  std::size_t n_;
};

ObjectiveFamily from_callables(std::size_t n, const std::vector<py::function>& fns) {
  std::vector<std::shared_ptr<const SetFunction>> out;
  for (const auto& f : fns) out.push_back(std::make_shared<PySetFunction>(f, n));
  return ObjectiveFamily(n, std::move(out));
}

ObjectiveFamily from_weights(const std::vector<std::vector<double>>& weights) {
  if (weights.empty()) throw ArgumentError("need at least one weight vector");
  std::vector<std::shared_ptr<const SetFunction>> out;
  for (const auto& w : weights) out.push_back(std::make_shared<ModularFunction>(w));
  return ObjectiveFamily(weights.front().size(), std::move(out));
}

ObjectiveFamily from_points(const std::vector<std::pair<double, double>>& candidates,
                            const std::vector<std::vector<std::pair<double, double>>>& regions) {
  std::vector<Point> pts;
  for (auto [x, y] : candidates) pts.push_back({x, y});
  std::vector<Region> rs;
  for (const auto& r : regions) {
    Region region;
    for (auto [x, y] : r) region.members.push_back({x, y});
    rs.push_back(std::move(region));
  }
  return make_facility_family(pts, rs);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Two-stage monotone submodular maximization";

  py::register_exception<ArgumentError>(m, "ArgumentError", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<StateError>(m, "StateError", PyExc_RuntimeError);
  py::register_exception<InvariantError>(m, "InvariantError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);

  py::class_<ObjectiveFamily, std::shared_ptr<ObjectiveFamily>>(m, "ObjectiveFamily")
      .def_property_readonly("m", &ObjectiveFamily::size)
      .def_property_readonly("n", &ObjectiveFamily::ground_size)
      .def_property_readonly("evaluations", &ObjectiveFamily::evaluations)
      .def("reset_evaluations", &ObjectiveFamily::reset_evaluations)
      .def("value", [](const ObjectiveFamily& f, std::size_t i, const ElementSet& set) {
        return f.value(i, set);
      });

  m.def("make_synthetic",
        [](const std::string& kind, std::size_t n, std::size_t mm, std::uint64_t seed) {
          return std::make_shared<ObjectiveFamily>(make_synthetic(kind, n, mm, seed));
        },
        py::arg("kind"), py::arg("n"), py::arg("m"), py::arg("seed"));
  m.def("modular_family",
        [](const std::vector<std::vector<double>>& w) {
          return std::make_shared<ObjectiveFamily>(from_weights(w));
        },
        py::arg("weights"));
  m.def("facility_family",
        [](const std::vector<std::pair<double, double>>& c,
           const std::vector<std::vector<std::pair<double, double>>>& r) {
          return std::make_shared<ObjectiveFamily>(from_points(c, r));
        },
        py::arg("candidates"), py::arg("regions"));
  m.def("callable_family",
        [](std::size_t n, const std::vector<py::function>& fns) {
          return std::make_shared<ObjectiveFamily>(from_callables(n, fns));
        },
        py::arg("n"), py::arg("functions"),
        "Family of Python callables taking a sorted id list; they must be monotone "
        "submodular.");

  py::class_<SwapOutcome>(m, "SwapOutcome")
      .def_readonly("replaced", &SwapOutcome::replaced)
      .def_readonly("gain", &SwapOutcome::gain);

  py::class_<TwoStageSolution>(m, "TwoStageSolution")
      .def_readonly("summary", &TwoStageSolution::summary)
      .def_readonly("per_function", &TwoStageSolution::per_function)
      .def_readonly("value", &TwoStageSolution::value)
      .def_readonly("ell", &TwoStageSolution::ell)
      .def_readonly("k", &TwoStageSolution::k)
      .def("__repr__", [](const TwoStageSolution& s) {
        return "<TwoStageSolution |S|=" + std::to_string(s.summary.size()) +
               " value=" + std::to_string(s.value) + ">";
      });

  m.def("marginal",
        [](const ObjectiveFamily& f, std::size_t i, ElementId x, const ElementSet& a) {
          return marginal(f, i, x, a);
        },
        py::arg("family"), py::arg("i"), py::arg("x"), py::arg("A"));
  m.def("rep",
        [](const ObjectiveFamily& f, std::size_t i, ElementId x, const ElementSet& a) {
          return rep(f, i, x, a);
        },
        py::arg("family"), py::arg("i"), py::arg("x"), py::arg("A"));
  m.def("nabla",
        [](const ObjectiveFamily& f, std::size_t i, ElementId x, const ElementSet& a,
           double alpha, std::size_t k) { return nabla(f, i, x, a, alpha, k); },
        py::arg("family"), py::arg("i"), py::arg("x"), py::arg("A"), py::arg("alpha"),
        py::arg("k"));
  m.def("lambda_gain",
        [](const ObjectiveFamily& f, std::size_t i, ElementId x, const ElementSet& a,
           std::size_t k) { return lambda_gain(f, i, x, a, k); },
        py::arg("family"), py::arg("i"), py::arg("x"), py::arg("A"), py::arg("k"));
  m.def("evaluate_solution", &evaluate_solution, py::arg("family"), py::arg("solution"));
  m.def("facility_convenience",
        [](std::pair<double, double> a, std::pair<double, double> b) {
          return facility_convenience({a.first, a.second}, {b.first, b.second});
        });

  m.def("replacement_greedy",
        [](const ObjectiveFamily& f, const ElementSet& c, std::size_t ell, std::size_t k) {
          py::gil_scoped_release release;
          return replacement_greedy(f, c, ell, k);
        },
        py::arg("family"), py::arg("candidates"), py::arg("ell"), py::arg("k"));

  py::class_<StreamingResult>(m, "StreamingResult")
      .def_readonly("solution", &StreamingResult::solution)
      .def_readonly("level", &StreamingResult::level)
      .def_readonly("tau", &StreamingResult::tau)
      .def_readonly("peak_stored", &StreamingResult::peak_stored)
      .def_readonly("peak_instances", &StreamingResult::peak_instances);

  m.def("run_streaming",
        [](const ObjectiveFamily& f, const ElementSet& stream, double epsilon, std::size_t ell,
           std::size_t k, double alpha, std::optional<double> beta) {
          StreamParams p;
          p.epsilon = epsilon;
          p.alpha = alpha;
          p.beta = beta;
          p.ell = ell;
          p.k = k;
          py::gil_scoped_release release;
          return run_streaming(stream, f, p);
        },
        py::arg("family"), py::arg("stream"), py::arg("epsilon"), py::arg("ell"), py::arg("k"),
        py::arg("alpha") = 1.0, py::arg("beta") = std::nullopt);
  m.def("run_know_opt",
        [](const ObjectiveFamily& f, const ElementSet& stream, double opt, std::size_t ell,
           std::size_t k, double alpha, double beta) {
          KnowOptParams p;
          p.alpha = alpha;
          p.beta = beta;
          p.ell = ell;
          p.k = k;
          py::gil_scoped_release release;
          return run_know_opt(stream, f, opt, p);
        },
        py::arg("family"), py::arg("stream"), py::arg("opt"), py::arg("ell"), py::arg("k"),
        py::arg("alpha") = 1.0, py::arg("beta") = 6.0);

  py::class_<DistributedResult>(m, "DistributedResult")
      .def_readonly("solution", &DistributedResult::solution)
      .def_readonly("best_worker", &DistributedResult::best_worker)
      .def_readonly("merged", &DistributedResult::merged)
      .def_readonly("merge_candidates", &DistributedResult::merge_candidates);

  m.def("replacement_distributed",
        [](const ObjectiveFamily& f, const ElementSet& ground, std::size_t machines,
           std::size_t ell, std::size_t k, std::uint64_t seed) {
          py::gil_scoped_release release;
          return replacement_distributed(f, ground, machines, ell, k, seed);
        },
        py::arg("family"), py::arg("ground"), py::arg("machines"), py::arg("ell"), py::arg("k"),
        py::arg("seed"));
  m.def("distributed_fast",
        [](const ObjectiveFamily& f, const ElementSet& ground, std::size_t machines,
           double epsilon, std::size_t ell, std::size_t k, std::uint64_t seed) {
          py::gil_scoped_release release;
          return distributed_fast(f, ground, machines, epsilon, ell, k, seed);
        },
        py::arg("family"), py::arg("ground"), py::arg("machines"), py::arg("epsilon"),
        py::arg("ell"), py::arg("k"), py::arg("seed"));
  m.def("recommend_machine_count",
        [](std::size_t n, std::size_t ell, const std::string& variant) {
          if (variant == "distributed")
            return recommend_machine_count(n, ell, DistributedVariant::Greedy);
          if (variant == "fast") return recommend_machine_count(n, ell, DistributedVariant::Fast);
          throw ArgumentError("variant must be 'distributed' or 'fast'");
        },
        py::arg("n"), py::arg("ell"), py::arg("variant"));

  py::class_<OracleResult>(m, "OracleResult")
      .def_readonly("value", &OracleResult::value)
      .def_readonly("summary", &OracleResult::summary)
      .def_readonly("per_function", &OracleResult::per_function)
      .def_readonly("work", &OracleResult::work);
  m.def("brute_force_opt",
        [](const ObjectiveFamily& f, const ElementSet& ground, std::size_t ell, std::size_t k,
           std::uint64_t budget) { return brute_force_opt(f, ground, ell, k, budget); },
        py::arg("family"), py::arg("ground"), py::arg("ell"), py::arg("k"),
        py::arg("budget") = kDefaultOracleBudget);

  m.def("run_experiment_json",
        [](const std::string& config_text) {
          return report_json(run_experiment(parse_config(config_text)));
        },
        py::arg("config_text"), "Runs a key = value experiment config; returns the JSON report.");

  auto b = m.def_submodule("bounds", "Approximation factors");
  b.def("greedy_ratio", &bounds::greedy_ratio);
  b.def("know_opt_ratio", &bounds::know_opt_ratio, py::arg("alpha"), py::arg("beta"));
  b.def("streaming_ratio", &bounds::streaming_ratio, py::arg("alpha"), py::arg("beta"),
        py::arg("epsilon"));
  b.def("distributed_ratio", &bounds::distributed_ratio);
  b.def("distributed_fast_ratio", &bounds::distributed_fast_ratio, py::arg("epsilon"));
}
