#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "subrad/closedform.hpp"
#include "subrad/distribution.hpp"
#include "subrad/errors.hpp"
#include "subrad/evolve.hpp"
#include "subrad/io.hpp"
#include "subrad/kmc.hpp"
#include "subrad/model.hpp"
#include "subrad/noneq.hpp"
#include "subrad/rates.hpp"
#include "subrad/steady.hpp"

namespace py = pybind11;
using namespace subrad;

namespace {

py::object multiplicity_py(int n_atoms, int j) {
  // GMP integer -> python int via its decimal form, exact at any size.
  return py::int_(py::str(multiplicity(n_atoms, j).get_str()));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Collective jump-process toolkit for a repumped atomic ensemble";

  py::register_exception<SingularOrNonUnique>(m, "SingularOrNonUnique");
  py::register_exception<NotConverged>(m, "NotConverged");
  py::register_exception<DivergentEntropy>(m, "DivergentEntropy");
  py::register_exception<DarkState>(m, "DarkState");

  py::class_<ModelParams>(m, "ModelParams")
      .def(py::init([](int n_atoms, double w, double gamma) {
             ModelParams p{n_atoms, w, gamma};
             p.validate();
             return p;
           }),
           py::arg("n_atoms"), py::arg("w"), py::arg("gamma"))
      .def_readonly("n_atoms", &ModelParams::n_atoms)
      .def_readonly("w", &ModelParams::w)
      .def_readonly("gamma", &ModelParams::gamma)
      .def_property_readonly("j_max", &ModelParams::j_max)
      .def("__repr__", [](const ModelParams& p) {
        return "ModelParams(n_atoms=" + std::to_string(p.n_atoms) +
               ", w=" + format_double(p.w) +
               ", gamma=" + format_double(p.gamma) + ")";
      });

  py::class_<LevelIndex>(m, "LevelIndex")
      .def(py::init<int, int>(), py::arg("j"), py::arg("m"))
      .def_readonly("j", &LevelIndex::j)
      .def_readonly("m", &LevelIndex::m)
      .def("__eq__",
           [](const LevelIndex& a, const LevelIndex& b) { return a == b; })
      .def("__repr__", [](const LevelIndex& lv) {
        return "LevelIndex(j=" + std::to_string(lv.j) +
               ", m=" + std::to_string(lv.m) + ")";
      });

  py::enum_<Channel>(m, "Channel")
      .value("collective_decay", Channel::CollectiveDecay)
      .value("repump_same_j", Channel::RepumpSameJ)
      .value("repump_j_minus", Channel::RepumpJMinus)
      .value("repump_j_plus", Channel::RepumpJPlus)
      .value("decay_same_j", Channel::DecaySameJ)
      .value("decay_j_minus", Channel::DecayJMinus)
      .value("decay_j_plus", Channel::DecayJPlus);

  m.def("state_count", &state_count, py::arg("params"));
  m.def("index_of", &index_of, py::arg("params"), py::arg("level"));
  m.def("level_of", &level_of, py::arg("params"), py::arg("index"));
  m.def("is_valid_level", &is_valid_level, py::arg("params"),
        py::arg("level"));
  m.def("multiplicity", &multiplicity_py, py::arg("n_atoms"), py::arg("j"));
  m.def("channel_rate", &channel_rate, py::arg("params"), py::arg("level"),
        py::arg("channel"));
  m.def("channel_target", &channel_target, py::arg("level"),
        py::arg("channel"));
  m.def("collective_rate_factor", &collective_rate_factor, py::arg("level"));

  py::class_<Distribution>(m, "Distribution")
      .def_readonly("params", &Distribution::params)
      .def_property_readonly(
          "weights", [](const Distribution& d) { return d.weights; })
      .def("total", &Distribution::total)
      .def("__len__",
           [](const Distribution& d) { return d.weights.size(); });

  m.def("point_mass", &point_mass, py::arg("params"), py::arg("at"));
  m.def("uniform_distribution", &uniform_distribution, py::arg("params"));
  m.def("total_variation", &total_variation, py::arg("a"), py::arg("b"));

  py::class_<Generator>(m, "Generator")
      .def_property_readonly("dim", &Generator::dim)
      .def_readonly("max_exit_rate", &Generator::max_exit_rate)
      .def_property_readonly(
          "exit_rates", [](const Generator& g) { return g.exit_rates; })
      .def("label", &Generator::label, py::arg("index"));

  m.def("build_generator", &build_generator, py::arg("params"));
  m.def("boundary_generator", &boundary_generator, py::arg("params"));

  m.def(
      "steady_state",
      [](const Generator& g) { return steady_state(g); },
      py::arg("generator"));
  m.def("residual", &residual, py::arg("generator"), py::arg("dist"));

  py::class_<ObservableSet>(m, "ObservableSet")
      .def_readonly("intensity", &ObservableSet::intensity)
      .def_readonly("inversion", &ObservableSet::inversion)
      .def_readonly("mean_j", &ObservableSet::mean_j)
      .def_readonly("mean_m", &ObservableSet::mean_m)
      .def_readonly("boundary_mass", &ObservableSet::boundary_mass);

  m.def("observables", &observables, py::arg("dist"));
  m.def("jump_map", &jump_map, py::arg("dist"));
  m.def(
      "evolve",
      [](const Generator& g, const Distribution& d, double tau) {
        return evolve(g, d, tau);
      },
      py::arg("generator"), py::arg("dist"), py::arg("tau"));
  m.def(
      "g2",
      [](const Generator& g, const Distribution& steady,
         const std::vector<double>& taus) { return g2(g, steady, taus); },
      py::arg("generator"), py::arg("steady"), py::arg("taus"));

  py::class_<EntropyReport>(m, "EntropyReport")
      .def_readonly("s_tot", &EntropyReport::s_tot)
      .def_readonly("s_e", &EntropyReport::s_e)
      .def_readonly("s_i", &EntropyReport::s_i)
      .def_readonly("s_i_per_atom", &EntropyReport::s_i_per_atom)
      .def_readonly("n_edges_skipped", &EntropyReport::n_edges_skipped);

  m.def("entropy_rates", &entropy_rates, py::arg("generator"),
        py::arg("dist"));

  py::class_<BalanceReport>(m, "BalanceReport")
      .def_readonly("passed", &BalanceReport::passed)
      .def_readonly("max_violation", &BalanceReport::max_violation);

  m.def("detailed_balance_check", &detailed_balance_check,
        py::arg("generator"), py::arg("dist"), py::arg("tol") = 1e-9);

  py::class_<JumpEvent>(m, "JumpEvent")
      .def_readonly("t", &JumpEvent::t)
      .def_readonly("channel", &JumpEvent::channel)
      .def_readonly("from_level", &JumpEvent::from);

  py::class_<JumpRecord>(m, "JumpRecord")
      .def_readonly("params", &JumpRecord::params)
      .def_readonly("initial", &JumpRecord::initial)
      .def_readonly("seed", &JumpRecord::seed)
      .def_readonly("rng_name", &JumpRecord::rng_name)
      .def_readonly("t_end", &JumpRecord::t_end)
      .def_readonly("absorbed", &JumpRecord::absorbed)
      .def_readonly("events", &JumpRecord::events)
      .def("final_state", &JumpRecord::final_state)
      .def("__len__",
           [](const JumpRecord& r) { return r.events.size(); });

  m.def("simulate", &simulate, py::arg("params"), py::arg("initial"),
        py::arg("t_max"), py::arg("seed"));
  m.def("occupancy", &occupancy, py::arg("record"), py::arg("t_burn") = 0.0);

  py::class_<Rational>(m, "Rational")
      .def_readonly("num", &Rational::num)
      .def_readonly("den", &Rational::den)
      .def("to_float", &Rational::to_double)
      .def("__repr__", &Rational::to_string);

  py::class_<BoundaryDistribution>(m, "BoundaryDistribution")
      .def_property_readonly(
          "p", [](const BoundaryDistribution& b) { return b.p; })
      .def("mean", &BoundaryDistribution::mean)
      .def("variance", &BoundaryDistribution::variance);

  m.def("boundary_recursion", &boundary_recursion, py::arg("params"));
  m.def("ratio_table", &ratio_table, py::arg("j"));
  m.def("finite_n_ratio", &finite_n_ratio, py::arg("n_atoms"), py::arg("j"));
  m.def("gaussian_limit", [](const ModelParams& p) {
    const GaussianLimit g = gaussian_limit(p);
    return py::make_tuple(g.mu, g.sigma2);
  });
  m.def("small_w_populations", []() {
    const SmallPumpPopulations pops = small_w_populations();
    return py::make_tuple(pops.p0, pops.p1, pops.p2);
  });
}
