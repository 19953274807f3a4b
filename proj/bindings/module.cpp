#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "axpir/analysis.hpp"
#include "axpir/audit.hpp"
#include "axpir/scenario_io.hpp"

namespace py = pybind11;
using namespace axpir;

namespace {

py::object fraction(const Rational& r) {
  static py::object ctor = py::module_::import("fractions").attr("Fraction");
  return ctor(r.num(), r.den());
}

py::list fraction_pairs(const std::vector<analysis::Point>& pts) {
  py::list out;
  for (const auto& p : pts) out.append(py::make_tuple(fraction(p.first), fraction(p.second)));
  return out;
}

std::vector<topology::ServerSet> sets_from_one_based(const std::vector<std::vector<int>>& raw) {
  std::vector<topology::ServerSet> out;
  for (const auto& s : raw) {
    topology::ServerSet shifted;
    for (int v : s) shifted.push_back(v - 1);
    out.push_back(topology::make_server_set(shifted));
  }
  return out;
}

py::list one_based(const topology::ServerSet& s) {
  py::list out;
  for (int v : s) out.append(v + 1);
  return out;
}

py::dict report_dict(const audit::AuditReport& r) {
  py::dict d;
  d["check"] = r.check;
  d["verdict"] = r.passed() ? "pass" : "fail";
  d["mode"] = r.mode;
  d["statistic"] = r.statistic;
  d["enumeration_size"] = r.enumeration_size;
  if (r.tv) d["tv"] = fraction(*r.tv);
  d["findings"] = r.findings;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "exact-arithmetic toolkit for grouped private retrieval schemes";

  m.def("c_tpir", [](int t, int g, int k) { return fraction(analysis::c_tpir(t, g, k)); },
        py::arg("t"), py::arg("g"), py::arg("k"),
        "colluding-retrieval capacity (1 + t/g + ... + (t/g)^(k-1))^-1");

  m.def("zeta", [](int k, int t, int n, int link_size) {
          return fraction(analysis::zeta(k, t, n, link_size));
        },
        py::arg("k"), py::arg("t"), py::arg("n"), py::arg("link_size"));

  m.def("solve_grouping",
        [](int n, const std::vector<std::vector<int>>& links) {
          auto cm = topology::CommMatrix::from_one_based(n, links);
          auto res = topology::solve_grouping(cm);
          py::dict d;
          d["g"] = res.g;
          py::list optima;
          for (const auto& gr : res.optima) {
            py::list groups;
            for (const auto& s : gr.groups) groups.append(one_based(s));
            optima.append(groups);
          }
          d["optima"] = optima;
          return d;
        },
        py::arg("n"), py::arg("links"),
        "maximum number of disjoint groups not contained in any link, with all optima (1-based)");

  m.def("achievable_rate",
        [](int n, const std::vector<std::vector<int>>& groups, int t, int k) {
          auto gr = topology::make_grouping(n, sets_from_one_based(groups));
          return fraction(analysis::achievable_rate(gr, t, k));
        },
        py::arg("n"), py::arg("groups"), py::arg("t") = 1, py::arg("k") = 2);

  m.def("rate_upper_bound",
        [](int n, const std::vector<std::vector<int>>& links, int k, int t) {
          auto cm = topology::CommMatrix::from_one_based(n, links);
          return fraction(analysis::rate_upper_bound(cm, k, t));
        },
        py::arg("n"), py::arg("links"), py::arg("k") = 2, py::arg("t") = 1);

  m.def("capacity",
        [](int n, const std::vector<std::vector<int>>& links,
           const std::vector<std::vector<int>>& groups, int k) {
          auto cm = topology::CommMatrix::from_one_based(n, links);
          auto gr = topology::make_grouping(n, sets_from_one_based(groups));
          auto res = analysis::theorem4_capacity(cm, gr, k);
          py::dict d;
          d["conditions_met"] = res.conditions_met;
          if (res.conditions_met) d["capacity"] = fraction(res.capacity);
          else d["failed_hypothesis"] = res.failed_hypothesis;
          return d;
        },
        py::arg("n"), py::arg("links"), py::arg("groups"), py::arg("k") = 2);

  m.def("region_vertices",
        []() {
          auto region = analysis::theorem1_region();
          py::dict d;
          d["vertices"] = fraction_pairs(region.vertices);
          d["rays"] = fraction_pairs(region.rays);
          d["redundant"] = region.redundant;
          return d;
        },
        "vertices and rays of the four-server reference bound region");

  m.def("simulate",
        [](const std::string& scenario_json, int theta, std::uint64_t seed, int sessions) {
          auto sc = io::scenario_from_json(scenario_json);
          sc.validate();
          std::uint64_t state = seed * 2654435769ull + 0x9e3779b97f4a7c15ull;
          auto next = [&state]() {
            state = state * 6364136223846793005ull + 1442695040888963407ull;
            return state >> 33;
          };
          std::vector<protocol::Transcript> ts;
          bool decoded_ok = true;
          for (int i = 0; i < sessions; ++i) {
            std::vector<std::vector<std::int64_t>> msgs(std::size_t(sc.k_messages));
            for (auto& row : msgs) {
              row.resize(std::size_t(sc.l_symbols()));
              for (auto& v : row) v = std::int64_t(next() % std::uint64_t(sc.q));
            }
            std::vector<std::int64_t> noise(std::size_t(sc.layout().noise_dim));
            for (auto& v : noise) v = std::int64_t(next() % std::uint64_t(sc.q));
            std::uint64_t space = sc.randomness_space();
            std::uint64_t r = space ? next() % space : next();
            ts.push_back(protocol::run_session(sc, theta, msgs, noise, r));
            if (ts.back().decoded != msgs[std::size_t(theta - 1)]) decoded_ok = false;
          }
          auto meas = protocol::measure(sc, ts);
          py::dict d;
          d["alpha"] = fraction(meas.alpha);
          d["beta"] = fraction(meas.beta);
          d["rate"] = fraction(meas.rate);
          d["identity_ok"] = meas.identity_ok;
          d["decoded_ok"] = decoded_ok;
          d["downloads"] = ts.front().total_downloads();
          return d;
        },
        py::arg("scenario_json"), py::arg("theta") = 1, py::arg("seed") = 0,
        py::arg("sessions") = 1,
        "run retrieval sessions and report the measured operating point");

  m.def("audit_privacy",
        [](const std::string& scenario_json, const std::vector<int>& coalition) {
          auto sc = io::scenario_from_json(scenario_json);
          sc.validate();
          topology::ServerSet coal;
          for (int v : coalition) coal.push_back(v - 1);
          return report_dict(audit::audit_privacy(sc, topology::make_server_set(coal)));
        },
        py::arg("scenario_json"), py::arg("coalition"),
        "exact total-variation distance of a coalition's query view across retrieval targets");

  m.def("audit_correctness_sampled",
        [](const std::string& scenario_json, std::uint64_t samples, std::uint64_t seed) {
          auto sc = io::scenario_from_json(scenario_json);
          sc.validate();
          return report_dict(
              audit::audit_correctness(sc, audit::CorrectnessMode::sampled, samples, seed));
        },
        py::arg("scenario_json"), py::arg("samples") = 1000, py::arg("seed") = 0);

  m.def("scenario_to_json", [](const std::string& scenario_json) {
          return io::scenario_to_json(io::scenario_from_json(scenario_json));
        },
        py::arg("scenario_json"), "parse and re-emit a scenario (normalizes the grouping)");
}
