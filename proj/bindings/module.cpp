// Python bindings for the core operations. Item indices are zero-based on
// this surface, mirroring the C++ API (the text file formats and the CLI
// are one-based).

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>

#include "gti/bounds.hpp"
#include "gti/complexity.hpp"
#include "gti/decode.hpp"
#include "gti/design.hpp"
#include "gti/harness.hpp"
#include "gti/io.hpp"
#include "gti/model.hpp"
#include "gti/oracle.hpp"

namespace py = pybind11;

namespace {

std::optional<double> opt_p(double p) {
  return p > 0 ? std::optional<double>(p) : std::nullopt;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Non-adaptive group testing with inhibitors: designs, decoders, "
            "sample-complexity bounds and Monte Carlo experiments";

  py::class_<gti::Population>(m, "Population")
      .def(py::init<std::int64_t, std::vector<std::int64_t>,
                    std::vector<std::int64_t>>(),
           py::arg("n"), py::arg("defectives"), py::arg("inhibitors"))
      .def_property_readonly("n", &gti::Population::n)
      .def_property_readonly("defectives", &gti::Population::defectives)
      .def_property_readonly("inhibitors", &gti::Population::inhibitors)
      .def("is_defective", &gti::Population::is_defective)
      .def("is_inhibitor", &gti::Population::is_inhibitor)
      .def("__repr__", [](const gti::Population& p) {
        std::ostringstream ss;
        ss << "Population(n=" << p.n() << ", d=" << p.defective_count()
           << ", r=" << p.inhibitor_count() << ")";
        return ss.str();
      });

  py::class_<gti::PoolingDesign>(m, "PoolingDesign")
      .def_static("from_rows", &gti::PoolingDesign::from_rows,
                  py::arg("rows"))
      .def_property_readonly("tests", &gti::PoolingDesign::tests)
      .def_property_readonly("items", &gti::PoolingDesign::items)
      .def("entry", &gti::PoolingDesign::entry, py::arg("test"),
           py::arg("item"))
      .def("row_items", &gti::PoolingDesign::row_items, py::arg("test"))
      .def("to_rows",
           [](const gti::PoolingDesign& d) {
             std::vector<std::vector<int>> rows(
                 static_cast<std::size_t>(d.tests()),
                 std::vector<int>(static_cast<std::size_t>(d.items()), 0));
             for (std::int64_t i = 0; i < d.tests(); ++i)
               for (std::int64_t j : d.row_items(i))
                 rows[static_cast<std::size_t>(i)]
                     [static_cast<std::size_t>(j)] = 1;
             return rows;
           })
      .def("__repr__", [](const gti::PoolingDesign& d) {
        std::ostringstream ss;
        ss << "PoolingDesign(tests=" << d.tests() << ", items=" << d.items()
           << ")";
        return ss.str();
      });

  py::class_<gti::ItemStats>(m, "ItemStats")
      .def_readonly("item", &gti::ItemStats::item)
      .def_readonly("t_count", &gti::ItemStats::t_count)
      .def_readonly("s_count", &gti::ItemStats::s_count)
      .def("__repr__", [](const gti::ItemStats& s) {
        std::ostringstream ss;
        ss << "ItemStats(item=" << s.item << ", t=" << s.t_count
           << ", s=" << s.s_count << ")";
        return ss.str();
      });

  m.def("simulate_outcomes", &gti::simulate_outcomes, py::arg("design"),
        py::arg("truth"),
        "Outcome per test: positive iff >=1 defective and no inhibitors");
  m.def("item_stats", &gti::item_stats, py::arg("design"),
        py::arg("outcomes"), py::arg("item"));
  m.def("all_item_stats", &gti::all_item_stats, py::arg("design"),
        py::arg("outcomes"));

  py::class_<gti::ExactParams>(m, "ExactParams")
      .def_readonly("p", &gti::ExactParams::p)
      .def_readonly("q", &gti::ExactParams::q)
      .def_readonly("a", &gti::ExactParams::a)
      .def_readonly("b", &gti::ExactParams::b)
      .def_readonly("tau", &gti::ExactParams::tau)
      .def_readonly("threshold_fraction",
                    &gti::ExactParams::threshold_fraction);

  py::class_<gti::UbParams>(m, "UbParams")
      .def_readonly("p1", &gti::UbParams::p1)
      .def_readonly("p2", &gti::UbParams::p2)
      .def_readonly("qR", &gti::UbParams::qR)
      .def_readonly("tau", &gti::UbParams::tau)
      .def_readonly("stage1_threshold_fraction",
                    &gti::UbParams::stage1_threshold_fraction);

  m.def("iid_design", &gti::iid_design, py::arg("tests"), py::arg("items"),
        py::arg("p"), py::arg("seed"),
        "i.i.d. Bernoulli(p) design, reproducible per seed");
  m.def(
      "exact_params",
      [](std::int64_t n, std::int64_t d, std::int64_t r, double p) {
        return gti::exact_params(n, d, r, opt_p(p));
      },
      py::arg("n"), py::arg("d"), py::arg("r"), py::arg("p") = 0.0);
  m.def("ub_params", &gti::ub_params, py::arg("R"), py::arg("D"));

  py::enum_<gti::Label>(m, "Label")
      .value("Defective", gti::Label::Defective)
      .value("Inhibitor", gti::Label::Inhibitor)
      .value("Normal", gti::Label::Normal);

  py::class_<gti::Classification>(m, "Classification")
      .def_readonly("labels", &gti::Classification::labels)
      .def_readonly("non_participants",
                    &gti::Classification::non_participants)
      .def("defectives",
           [](const gti::Classification& c) {
             return c.with_label(gti::Label::Defective);
           })
      .def("inhibitors",
           [](const gti::Classification& c) {
             return c.with_label(gti::Label::Inhibitor);
           })
      .def("normals", [](const gti::Classification& c) {
        return c.with_label(gti::Label::Normal);
      });

  m.def("classify_item", &gti::classify_item, py::arg("t_count"),
        py::arg("s_count"), py::arg("threshold_fraction"));
  m.def("decode_exact", &gti::decode_exact, py::arg("design"),
        py::arg("outcomes"), py::arg("params"));
  m.def("decode_ub", &gti::decode_ub, py::arg("design1"),
        py::arg("outcomes1"), py::arg("design2"), py::arg("outcomes2"),
        py::arg("params"));
  m.def("defective_set", &gti::defective_set, py::arg("classification"));

  py::class_<gti::BetaBreakdown>(m, "BetaBreakdown")
      .def_readonly("terms", &gti::BetaBreakdown::terms)
      .def_readonly("labels", &gti::BetaBreakdown::labels)
      .def_readonly("beta", &gti::BetaBreakdown::beta)
      .def_readonly("delta", &gti::BetaBreakdown::delta)
      .def_readonly("n", &gti::BetaBreakdown::n)
      .def_readonly("tests", &gti::BetaBreakdown::tests);

  m.def(
      "beta_exact",
      [](std::int64_t n, std::int64_t d, std::int64_t r, double delta,
         double p) { return gti::beta_exact(n, d, r, delta, opt_p(p)); },
      py::arg("n"), py::arg("d"), py::arg("r"), py::arg("delta") = 1.0,
      py::arg("p") = 0.0);
  m.def("beta_exact_asymptotic", &gti::beta_exact_asymptotic, py::arg("n"),
        py::arg("d"), py::arg("r"), py::arg("delta") = 1.0);
  m.def("beta_ub", &gti::beta_ub, py::arg("n"), py::arg("R"), py::arg("D"),
        py::arg("delta") = 1.0);
  m.def(
      "beta_dcp",
      [](std::int64_t n, std::int64_t d, std::int64_t r, double delta,
         double p) { return gti::beta_dcp(n, d, r, delta, opt_p(p)); },
      py::arg("n"), py::arg("d"), py::arg("r"), py::arg("delta") = 1.0,
      py::arg("p") = 0.0);
  m.def("beta_dcp_ub", &gti::beta_dcp_ub, py::arg("n"), py::arg("R"),
        py::arg("D"), py::arg("delta") = 1.0);
  m.def("thumb_rule_tests", &gti::thumb_rule_tests, py::arg("p"),
        py::arg("a"), py::arg("b"));

  py::enum_<gti::Problem>(m, "Problem")
      .value("Scp", gti::Problem::Scp)
      .value("Dcp", gti::Problem::Dcp);

  py::class_<gti::PoolSizeAnalysis>(m, "PoolSizeAnalysis")
      .def_readonly("g0", &gti::PoolSizeAnalysis::g0)
      .def_readonly("g1", &gti::PoolSizeAnalysis::g1)
      .def_readonly("g_opt", &gti::PoolSizeAnalysis::g_opt)
      .def_readonly("p_y_max", &gti::PoolSizeAnalysis::p_y_max)
      .def_readonly("asymptote", &gti::PoolSizeAnalysis::asymptote)
      .def_readonly("max_entropy", &gti::PoolSizeAnalysis::max_entropy);

  py::class_<gti::LowerBoundReport>(m, "LowerBoundReport")
      .def_readonly("numerator_bits", &gti::LowerBoundReport::numerator_bits)
      .def_readonly("max_entropy", &gti::LowerBoundReport::max_entropy)
      .def_readonly("tests_lb", &gti::LowerBoundReport::tests_lb)
      .def_readonly("pool", &gti::LowerBoundReport::pool)
      .def_readonly("py_max_below_half",
                    &gti::LowerBoundReport::py_max_below_half)
      .def_readonly("dominating_branch",
                    &gti::LowerBoundReport::dominating_branch);

  m.def("p_y", &gti::p_y, py::arg("n"), py::arg("d"), py::arg("r"),
        py::arg("g"), "Probability a uniform size-g pool tests positive");
  m.def("p_y_scan", &gti::p_y_scan, py::arg("n"), py::arg("d"), py::arg("r"),
        py::arg("g_max"));
  m.def("switch_points", &gti::switch_points, py::arg("n"), py::arg("d"),
        py::arg("r"));
  m.def("g_opt_search", &gti::g_opt_search, py::arg("n"), py::arg("d"),
        py::arg("r"));
  m.def("fano_lb_scp", &gti::fano_lb_scp, py::arg("n"), py::arg("d"),
        py::arg("r"), py::arg("pe") = 0.0);
  m.def("fano_lb_dcp", &gti::fano_lb_dcp, py::arg("n"), py::arg("d"),
        py::arg("r"), py::arg("pe") = 0.0);
  m.def("fano_lb_ub_scenario", &gti::fano_lb_ub_scenario, py::arg("n"),
        py::arg("R"), py::arg("D"), py::arg("pe") = 0.0,
        py::arg("problem") = gti::Problem::Scp);
  m.def("log2_binomial", &gti::log2_binomial, py::arg("n"), py::arg("k"));
  m.def("binary_entropy", &gti::binary_entropy, py::arg("p"));

  py::class_<gti::ConsistencySet>(m, "ConsistencySet")
      .def_readonly("assignments", &gti::ConsistencySet::assignments)
      .def_readonly("identifiable", &gti::ConsistencySet::identifiable);

  py::class_<gti::SampledProbability>(m, "SampledProbability")
      .def_readonly("estimate", &gti::SampledProbability::estimate)
      .def_readonly("half_width_99", &gti::SampledProbability::half_width_99)
      .def_readonly("samples", &gti::SampledProbability::samples);

  m.def("consistent_assignments", &gti::consistent_assignments,
        py::arg("design"), py::arg("outcomes"), py::arg("d"), py::arg("r"),
        py::arg("max_candidates") = 10'000'000);
  m.def("empirical_p_y_exact", &gti::empirical_p_y_exact, py::arg("n"),
        py::arg("d"), py::arg("r"), py::arg("g"));
  m.def("empirical_p_y_sampled", &gti::empirical_p_y_sampled, py::arg("n"),
        py::arg("d"), py::arg("r"), py::arg("g"), py::arg("samples"),
        py::arg("seed") = 0);
  m.def("empirical_event_tail", &gti::empirical_event_tail, py::arg("t"),
        py::arg("p_event"), py::arg("threshold"));

  py::enum_<gti::Knowledge>(m, "Knowledge")
      .value("Exact", gti::Knowledge::Exact)
      .value("UpperBound", gti::Knowledge::UpperBound);

  py::class_<gti::TrialConfig>(m, "TrialConfig")
      .def(py::init<>())
      .def_readwrite("n", &gti::TrialConfig::n)
      .def_readwrite("mode", &gti::TrialConfig::mode)
      .def_readwrite("problem", &gti::TrialConfig::problem)
      .def_readwrite("d", &gti::TrialConfig::d)
      .def_readwrite("r", &gti::TrialConfig::r)
      .def_readwrite("R", &gti::TrialConfig::R)
      .def_readwrite("D", &gti::TrialConfig::D)
      .def_readwrite("delta", &gti::TrialConfig::delta)
      .def_readwrite("trials", &gti::TrialConfig::trials)
      .def_readwrite("seed", &gti::TrialConfig::seed)
      .def_readwrite("workers", &gti::TrialConfig::workers)
      .def_readwrite("p_override", &gti::TrialConfig::p_override)
      .def_readwrite("tests_override", &gti::TrialConfig::tests_override)
      .def_readwrite("tests2_override", &gti::TrialConfig::tests2_override);

  py::class_<gti::CellReport>(m, "CellReport")
      .def_readonly("r", &gti::CellReport::r)
      .def_readonly("d", &gti::CellReport::d)
      .def_readonly("trials", &gti::CellReport::trials)
      .def_readonly("e1", &gti::CellReport::e1)
      .def_readonly("e2", &gti::CellReport::e2)
      .def_readonly("e3", &gti::CellReport::e3)
      .def_readonly("e4", &gti::CellReport::e4)
      .def_readonly("scp_errors", &gti::CellReport::scp_errors)
      .def_readonly("dcp_errors", &gti::CellReport::dcp_errors)
      .def_readonly("inhibitor_mislabels",
                    &gti::CellReport::inhibitor_mislabels)
      .def_readonly("scp_rate", &gti::CellReport::scp_rate)
      .def_readonly("dcp_rate", &gti::CellReport::dcp_rate)
      .def_readonly("scp_half_width", &gti::CellReport::scp_half_width)
      .def_readonly("dcp_half_width", &gti::CellReport::dcp_half_width);

  py::class_<gti::TrialReport>(m, "TrialReport")
      .def_readonly("tests1", &gti::TrialReport::tests1)
      .def_readonly("tests2", &gti::TrialReport::tests2)
      .def_readonly("cells", &gti::TrialReport::cells)
      .def_readonly("trials_total", &gti::TrialReport::trials_total)
      .def_readonly("e1", &gti::TrialReport::e1)
      .def_readonly("e2", &gti::TrialReport::e2)
      .def_readonly("e3", &gti::TrialReport::e3)
      .def_readonly("e4", &gti::TrialReport::e4)
      .def_readonly("scp_errors", &gti::TrialReport::scp_errors)
      .def_readonly("dcp_errors", &gti::TrialReport::dcp_errors)
      .def_readonly("inhibitor_mislabels",
                    &gti::TrialReport::inhibitor_mislabels)
      .def_readonly("worst_rate", &gti::TrialReport::worst_rate)
      .def_readonly("gate_slack", &gti::TrialReport::gate_slack)
      .def_readonly("theoretical_target",
                    &gti::TrialReport::theoretical_target)
      .def_readonly("pass_gate", &gti::TrialReport::pass)
      .def("render", [](const gti::TrialReport& r) {
        return gti::report_render(r);
      })
      .def("json", [](const gti::TrialReport& r) {
        return gti::report_json(r);
      });

  py::class_<gti::EventCounts>(m, "EventCounts")
      .def_readonly("e1", &gti::EventCounts::e1)
      .def_readonly("e2", &gti::EventCounts::e2)
      .def_readonly("e3", &gti::EventCounts::e3)
      .def_readonly("e4", &gti::EventCounts::e4)
      .def_readonly("inhibitor_mislabels",
                    &gti::EventCounts::inhibitor_mislabels)
      .def_readonly("scp_error", &gti::EventCounts::scp_error)
      .def_readonly("dcp_error", &gti::EventCounts::dcp_error);

  m.def("attribute_events", &gti::attribute_events, py::arg("truth"),
        py::arg("decoded"));

  m.def("run_trials", &gti::run_trials, py::arg("config"),
        py::call_guard<py::gil_scoped_release>());

  py::class_<gti::SweepPoint>(m, "SweepPoint")
      .def(py::init<>())
      .def_readwrite("d", &gti::SweepPoint::d)
      .def_readwrite("r", &gti::SweepPoint::r)
      .def_readwrite("R", &gti::SweepPoint::R)
      .def_readwrite("D", &gti::SweepPoint::D);

  py::class_<gti::SweepSpec>(m, "SweepSpec")
      .def(py::init<>())
      .def_readwrite("n", &gti::SweepSpec::n)
      .def_readwrite("mode", &gti::SweepSpec::mode)
      .def_readwrite("problem", &gti::SweepSpec::problem)
      .def_readwrite("delta", &gti::SweepSpec::delta)
      .def_readwrite("trials", &gti::SweepSpec::trials)
      .def_readwrite("seed", &gti::SweepSpec::seed)
      .def_readwrite("workers", &gti::SweepSpec::workers)
      .def_readwrite("points", &gti::SweepSpec::points);

  py::class_<gti::SweepRow>(m, "SweepRow")
      .def_readonly("n", &gti::SweepRow::n)
      .def_readonly("d", &gti::SweepRow::d)
      .def_readonly("r", &gti::SweepRow::r)
      .def_readonly("R", &gti::SweepRow::R)
      .def_readonly("D", &gti::SweepRow::D)
      .def_readonly("T", &gti::SweepRow::T)
      .def_readonly("scp_err", &gti::SweepRow::scp_err)
      .def_readonly("dcp_err", &gti::SweepRow::dcp_err)
      .def_readonly("e1", &gti::SweepRow::e1)
      .def_readonly("e2", &gti::SweepRow::e2)
      .def_readonly("e3", &gti::SweepRow::e3)
      .def_readonly("e4", &gti::SweepRow::e4)
      .def_readonly("fano_lb", &gti::SweepRow::fano_lb)
      .def_readonly("ratio", &gti::SweepRow::ratio);

  m.def("sweep", &gti::sweep, py::arg("spec"),
        py::call_guard<py::gil_scoped_release>());
  m.def("sweep_csv", &gti::sweep_csv, py::arg("rows"));
  m.def("sweep_json", &gti::sweep_json, py::arg("rows"));

  m.def("read_matrix_file", &gti::read_matrix_file, py::arg("path"));
  m.def("write_matrix_file", &gti::write_matrix_file, py::arg("path"),
        py::arg("design"));
  m.def("read_population_file", &gti::read_population_file, py::arg("path"));
  m.def("write_population_file", &gti::write_population_file,
        py::arg("path"), py::arg("pop"));
  m.def("read_outcomes_file", &gti::read_outcomes_file, py::arg("path"));
  m.def("write_outcomes_file", &gti::write_outcomes_file, py::arg("path"),
        py::arg("outcomes"));
}
