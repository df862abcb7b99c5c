#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "axelrod_lab/analysis.hpp"
#include "axelrod_lab/cli.hpp"
#include "axelrod_lab/engine.hpp"
#include "axelrod_lab/errors.hpp"
#include "axelrod_lab/theory.hpp"
#include "axelrod_lab/verify.hpp"

namespace py = pybind11;
using namespace axelrod;

namespace {

ModelParams make_params(std::vector<int> opinions, std::size_t length, std::uint64_t seed) {
  ModelParams p;
  p.opinions = std::move(opinions);
  p.length = length;
  p.seed = seed;
  p.validate();
  return p;
}

py::dict summary_dict(const RunSummary& s) {
  py::dict d;
  d["events"] = s.events;
  d["active_events"] = s.active_events;
  d["collisions"] = s.collisions;
  d["flips_per_level"] = s.flips_per_level;
  d["final_time"] = s.final_time;
  d["absorbed"] = s.absorbed;
  d["absorption_time"] = s.absorption_time;
  d["stop_reason"] = to_string(s.stop_reason);
  d["snapshots"] = s.snapshots;
  return d;
}

py::dict density_dict(const DensitySnapshot& d) {
  py::dict out;
  out["time"] = d.time;
  out["ubar"] = std::vector<double>{d.ubar(0), d.ubar(1)};
  out["u_active"] = std::vector<double>{d.u_active(0), d.u_active(1)};
  out["blockade_density"] = d.blockade_density();
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Axelrod model simulator core";

  py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<UnsupportedConfiguration>(m, "UnsupportedConfiguration", PyExc_ValueError);
  py::register_exception<ConsistencyError>(m, "ConsistencyError", PyExc_RuntimeError);
  py::register_exception<CouplingError>(m, "CouplingError", PyExc_RuntimeError);

  py::class_<ModelParams>(m, "ModelParams")
      .def(py::init(&make_params), py::arg("opinions"), py::arg("length") = 10'000,
           py::arg("seed") = 0)
      .def_readonly("length", &ModelParams::length)
      .def_readonly("opinions", &ModelParams::opinions)
      .def_readonly("seed", &ModelParams::seed)
      .def_property_readonly("features", &ModelParams::features);

  py::class_<CultureState>(m, "CultureState")
      .def_property_readonly("length", &CultureState::length)
      .def_property_readonly("features", &CultureState::features)
      .def_readonly("time", &CultureState::time)
      .def("opinion", &CultureState::opinion, py::arg("x"), py::arg("i"))
      .def("opinions", [](const CultureState& s) {
        return std::vector<Opinion>(s.opinions().begin(), s.opinions().end());
      })
      .def("__eq__", [](const CultureState& a, const CultureState& b) { return a == b; });

  py::class_<SpinConfig>(m, "SpinConfig")
      .def_property_readonly("length", &SpinConfig::length)
      .def_property_readonly("features", &SpinConfig::features)
      .def_readonly("time", &SpinConfig::time)
      .def("occupied", &SpinConfig::occupied, py::arg("edge"), py::arg("level"))
      .def("count", &SpinConfig::count, py::arg("edge"))
      .def("level_count", &SpinConfig::level_count, py::arg("level"))
      .def_property_readonly("blockade_count", &SpinConfig::blockade_count)
      .def_property_readonly("live_count", &SpinConfig::live_count)
      .def("__eq__", [](const SpinConfig& a, const SpinConfig& b) { return a == b; });

  m.def("init_state", [](const ModelParams& p, std::uint64_t seed) {
    RandomStream rng(seed);
    return init_state(p, rng);
  }, py::arg("params"), py::arg("seed"));
  m.def("make_state", [](const ModelParams& p, const std::vector<Opinion>& opinions) {
    return make_state(p, opinions);
  }, py::arg("params"), py::arg("opinions"), "Site-major opinions in 1..q_i.");
  m.def("hamming", &hamming, py::arg("state"), py::arg("x"), py::arg("y"));
  m.def("interaction_rate", &interaction_rate, py::arg("j"), py::arg("features"));
  m.def("acceptance_threshold", &acceptance_threshold, py::arg("j"), py::arg("features"));
  m.def("derive_spins", &derive_spins, py::arg("state"));
  m.def("absorption_detect", &absorption_detect, py::arg("spins"));
  m.def("density_estimates", [](const SpinConfig& s) { return density_dict(density_estimates(s)); },
        py::arg("spins"));
  m.def("derive_seed", &derive_seed, py::arg("seed"), py::arg("index"));

  py::class_<Simulation>(m, "Simulation")
      .def(py::init([](const ModelParams& p, std::uint64_t seed, const std::string& mode,
                       bool track_ancestors) {
             SimulationOptions o;
             o.mode = parse_sampling_mode(mode);
             o.track_ancestors = track_ancestors;
             return Simulation(p, RandomStream(seed), o);
           }),
           py::arg("params"), py::arg("seed"), py::arg("mode") = "active-only",
           py::arg("track_ancestors") = false)
      .def("run",
           [](Simulation& sim, std::optional<double> t_max, std::optional<std::uint64_t> max_events,
              bool stop_on_absorption, std::vector<double> snapshot_times) {
             RunConfig cfg;
             cfg.t_max = t_max;
             cfg.max_events = max_events;
             cfg.stop_on_absorption = stop_on_absorption;
             cfg.snapshot_times = std::move(snapshot_times);
             py::gil_scoped_release release;
             RunSummary s = sim.run(cfg);
             py::gil_scoped_acquire acquire;
             return summary_dict(s);
           },
           py::arg("t_max") = py::none(), py::arg("max_events") = py::none(),
           py::arg("stop_on_absorption") = true,
           py::arg("snapshot_times") = std::vector<double>{})
      .def_property_readonly("state", &Simulation::state, py::return_value_policy::copy)
      .def_property_readonly("initial_state", &Simulation::initial_state,
                             py::return_value_policy::copy)
      .def_property_readonly("spins", &Simulation::spins, py::return_value_policy::copy)
      .def_property_readonly("initial_spins", &Simulation::initial_spins,
                             py::return_value_policy::copy)
      .def_property_readonly("time", &Simulation::time)
      .def_property_readonly("absorbed", &Simulation::absorbed)
      .def("ancestor", [](const Simulation& s, SiteIndex x, FeatureIndex i) {
        if (!s.ancestors()) throw PreconditionError("ancestors are not tracked");
        return s.ancestors()->ancestor(x, i);
      }, py::arg("x"), py::arg("i"));

  // Exact values cross the boundary as "a/b" strings; the package wraps them in Fraction.
  auto th = m.def_submodule("theory");
  th.def("probabilities", [](int q1, int q2) {
    const auto p = theory::probabilities(q1, q2);
    py::dict d;
    d["p0"] = theory::to_fraction(p.p0);
    d["p1"] = theory::to_fraction(p.p1);
    d["p2"] = theory::to_fraction(p.p2);
    d["p11"] = theory::to_fraction(p.p11);
    d["p12"] = theory::to_fraction(p.p12);
    return d;
  });
  th.def("h1", [](int q1, int q2) { return theory::to_fraction(theory::h1(q1, q2)); });
  th.def("h2", [](int q1, int q2) { return theory::to_fraction(theory::h2(q1, q2)); });
  th.def("geometric_tail", [](int q, std::uint64_t n) {
    return theory::to_fraction(theory::geometric_tail(q, n));
  });
  th.def("geometric_mean", [](int q) { return theory::to_fraction(theory::geometric_mean(q)); });
  th.def("symmetric_fixation_condition", &theory::symmetric_fixation_condition);
  th.def("predict_regime", [](int q1, int q2) {
    return std::string(theory::to_string(theory::predict_regime(q1, q2)));
  });

  m.def("verification_targets", &verification_targets);
  m.def("verify",
        [](const std::string& target, std::vector<int> q, std::optional<std::size_t> length,
           std::optional<std::size_t> replicates, std::optional<std::uint64_t> max_events,
           std::uint64_t seed) {
          VerifyOptions o;
          o.q = std::move(q);
          o.length = length;
          o.replicates = replicates;
          o.max_events = max_events;
          o.seed = seed;
          VerificationReport r;
          {
            py::gil_scoped_release release;
            r = verify(target, o);
          }
          py::list checks;
          for (const auto& c : r.checks) {
            py::dict d;
            d["label"] = c.label;
            d["estimate"] = c.estimate;
            d["target"] = c.target;
            d["bound"] = c.bound;
            d["n"] = c.n;
            d["pass"] = c.pass;
            checks.append(d);
          }
          py::dict out;
          out["target"] = r.target;
          out["passed"] = r.passed();
          out["checks"] = checks;
          out["notes"] = r.notes;
          return out;
        },
        py::arg("target"), py::arg("q") = std::vector<int>{}, py::arg("length") = py::none(),
        py::arg("replicates") = py::none(), py::arg("max_events") = py::none(),
        py::arg("seed") = 1);

  m.def("run_cli", [](std::vector<std::string> args) {
    args.insert(args.begin(), "axelrod-lab");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = 0;
    {
      py::gil_scoped_release release;
      code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    }
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"), "Runs the command line in-process; returns (exit code, stdout, stderr).");
}
