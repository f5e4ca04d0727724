#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mrb/amiv.hpp"
#include "mrb/binary_iv.hpp"
#include "mrb/commands.hpp"
#include "mrb/errors.hpp"
#include "mrb/intersect.hpp"
#include "mrb/lattice.hpp"

namespace py = pybind11;
using namespace mrb;

namespace {

// Results cross the boundary as JSON text; the Python package decodes them.
std::string dump(const Json& j) { return j.dump(); }

py::tuple report_tuple(const Report& r) {
  return py::make_tuple(r.json.dump(), r.markdown, r.exit_code);
}

std::string intersect_bounds(std::vector<double> weights, std::vector<double> lower, std::vector<double> upper) {
  const auto m = BoundsMoments::make({}, std::move(weights), std::move(lower), std::move(upper));
  const auto b = sharp_bounds(m);
  Json j{{"gamma_lower", real_to_json(b.gamma_lower)},
         {"gamma_upper", real_to_json(b.gamma_upper)},
         {"refuted", b.refuted},
         {"mrb", to_json(mrb_intersection(m))}};
  if (b.refuted) j["pointid_region"] = to_json(pointid_region(m));
  return dump(j);
}

std::string binary_iv(std::array<double, 4> z0, std::array<double, 4> z1) {
  const auto r = mrb_binary_iv(BinaryIVData::make(z0, z1));
  Json ineq = Json::array();
  for (const auto& q : r.inequalities) ineq.push_back({{"index", q.index}, {"lhs", q.lhs}, {"pass", q.pass}});
  Json proj = Json::array();
  for (std::size_t a = 0; a < 4; ++a) proj.push_back(to_json(r.set.project(a)));
  return dump({{"row", r.selected.row},
               {"retained", combo_name(r.selected.combo)},
               {"inequalities", ineq},
               {"projections", proj},
               {"set", to_json(IdentifiedSet(r.set))}});
}

std::string amiv(std::vector<double> weights, std::array<std::vector<double>, 2> q_lower,
                 std::array<std::vector<double>, 2> q_upper, std::array<double, 2> y_lower,
                 std::array<double, 2> y_upper, bool per_outcome) {
  const auto m = AMIVMoments::make(std::move(weights), std::move(q_lower), std::move(q_upper), y_lower, y_upper);
  const auto r = amiv_mrb(m, per_outcome ? CutoffMode::PerOutcome : CutoffMode::Joint);
  Json out;
  for (int d : {1, 0}) {
    const int s = amiv_slot(d);
    out["d" + std::to_string(d)] = {{"z_star", r.z_star[s] ? Json(*r.z_star[s]) : Json(nullptr)},
                                    {"mrb", to_json(r.mrb[s])},
                                    {"mi", to_json(r.mi[s])},
                                    {"miv", to_json(r.miv[s])},
                                    {"fallback", r.fallback[s]}};
  }
  return dump(out);
}

std::string intervals_lattice(std::vector<std::string> ids, std::vector<std::pair<double, double>> atoms) {
  std::vector<IdentifiedSet> sets;
  for (const auto& [lo, hi] : atoms) sets.emplace_back(Interval::closed(lo, hi));
  return dump(to_json(find_minimal_relaxations(AssumptionFamily::intersection(std::move(ids), std::move(sets)))));
}

}  // namespace

PYBIND11_MODULE(_mrb, m) {
  m.doc() = "Misspecification-robust bounds: native core";

  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<IngestError>(m, "IngestError", PyExc_ValueError);
  py::register_exception<UnsupportedError>(m, "UnsupportedError", PyExc_NotImplementedError);

  m.def("intersect_bounds", &intersect_bounds, py::arg("weights"), py::arg("lower"), py::arg("upper"));
  m.def("binary_iv", &binary_iv, py::arg("z0"), py::arg("z1"));
  m.def("amiv", &amiv, py::arg("weights"), py::arg("q_lower"), py::arg("q_upper"), py::arg("y_lower"),
        py::arg("y_upper"), py::arg("per_outcome") = false);
  m.def("intervals_lattice", &intervals_lattice, py::arg("ids"), py::arg("atoms"));

  m.def("run_binary_iv", [](const std::string& path, bool oracle) { return report_tuple(run_binary_iv(path, oracle)); },
        py::arg("path"), py::arg("oracle") = false);
  m.def("run_lattice", [](const std::string& path, bool oracle) { return report_tuple(run_lattice(path, oracle)); },
        py::arg("path"), py::arg("oracle") = false);
  m.def("run_artstein",
        [](const std::string& path, std::optional<std::uint64_t> seed, bool oracle) {
          return report_tuple(run_artstein(path, seed, oracle));
        },
        py::arg("path"), py::arg("seed") = py::none(), py::arg("oracle") = false);
  m.def("run_intersect",
        [](const std::string& path, std::optional<double> y_min, std::optional<double> y_max, bool oracle) {
          IntersectMicroOptions opt;
          opt.y_min = y_min;
          opt.y_max = y_max;
          return report_tuple(run_intersect(path, opt, oracle));
        },
        py::arg("path"), py::arg("y_min") = py::none(), py::arg("y_max") = py::none(), py::arg("oracle") = false);
  m.def("run_amiv",
        [](const std::string& path, bool per_outcome, bool oracle) {
          return report_tuple(run_amiv(path, {}, per_outcome ? CutoffMode::PerOutcome : CutoffMode::Joint, oracle));
        },
        py::arg("path"), py::arg("per_outcome") = false, py::arg("oracle") = false);
}
