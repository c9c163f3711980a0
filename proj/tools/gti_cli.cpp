// Command line front door: design generation, outcome simulation, decoding,
// test-count calculators, lower bounds, brute-force oracles and Monte Carlo
// experiments. Subcommands print machine-readable JSON (or CSV for sweep);
// item indices are one-based on every CLI surface.
//
// Exit codes: 0 success/pass, 1 experiment gate failed, 2 usage error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gti/bounds.hpp"
#include "gti/complexity.hpp"
#include "gti/decode.hpp"
#include "gti/design.hpp"
#include "gti/harness.hpp"
#include "gti/io.hpp"
#include "gti/model.hpp"
#include "gti/oracle.hpp"
#include "gti/rng.hpp"

namespace {

using nlohmann::json;

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw std::runtime_error("cannot open " + out_path + " for writing");
  f << content;
}

std::vector<std::int64_t> one_based(std::vector<std::int64_t> v) {
  for (auto& x : v) ++x;
  return v;
}

json params_json(const gti::ExactParams& p) {
  json j;
  j["mode"] = "exact";
  j["p"] = p.p;
  j["q"] = p.q;
  j["a"] = p.a;
  j["b"] = p.b;
  if (p.tau)
    j["tau"] = *p.tau;
  else
    j["tau"] = nullptr;  // undefined at r = 0
  j["threshold_fraction"] = p.threshold_fraction;
  return j;
}

json params_json(const gti::UbParams& p) {
  json j;
  j["mode"] = "ub";
  j["p1"] = p.p1;
  j["p2"] = p.p2;
  j["qR"] = p.qR;
  j["tau"] = p.tau;
  j["stage1_threshold_fraction"] = p.stage1_threshold_fraction;
  return j;
}

json breakdown_json(const gti::BetaBreakdown& b) {
  return {{"terms", b.terms},
          {"labels", b.labels},
          {"beta", b.beta},
          {"delta", b.delta},
          {"tests", b.tests}};
}

json bound_json(const gti::LowerBoundReport& rep) {
  return {{"numerator_bits", rep.numerator_bits},
          {"max_entropy", rep.max_entropy},
          {"tests_lb", rep.tests_lb},
          {"g_opt", rep.pool.g_opt},
          {"p_y_max", rep.pool.p_y_max},
          {"asymptote", rep.pool.asymptote},
          {"g0", rep.pool.g0},
          {"g1", rep.pool.g1},
          {"py_max_below_half", rep.py_max_below_half},
          {"dominating_branch", rep.dominating_branch}};
}

json classification_json(const gti::Classification& c) {
  return {{"defectives", one_based(c.with_label(gti::Label::Defective))},
          {"inhibitors", one_based(c.with_label(gti::Label::Inhibitor))},
          {"normals", one_based(c.with_label(gti::Label::Normal))},
          {"non_participants", one_based(c.non_participants)}};
}

struct CommonOpts {
  std::uint64_t seed = 0;
  bool as_json = false;
  std::string out_path;
  int workers = 1;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "gti: non-adaptive group testing with inhibitors - designs, decoders, "
      "bounds and Monte Carlo experiments"};
  app.require_subcommand(1);
  app.fallthrough();

  CommonOpts common;
  app.add_option("--seed", common.seed, "RNG seed (64-bit)");
  app.add_flag("--json", common.as_json, "machine-readable JSON output");
  app.add_option("--out", common.out_path, "write output to this path");
  app.add_option("--workers", common.workers, "worker thread count");

  // ---- design ----------------------------------------------------------
  auto* cmd_design =
      app.add_subcommand("design", "generate an i.i.d. pooling design");
  struct {
    std::int64_t n = 0, d = -1, r = -1, R = -1, D = -1;
    std::int64_t tests = 0, tests2 = 0;
    double delta = 1.0, p = 0.0;
    std::string out2;
  } dsg;
  cmd_design->add_option("--n", dsg.n, "number of items")->required();
  cmd_design->add_option("--d", dsg.d, "exact number of defectives");
  cmd_design->add_option("--r", dsg.r, "exact number of inhibitors");
  cmd_design->add_option("--R", dsg.R, "upper bound on inhibitors");
  cmd_design->add_option("--D", dsg.D, "upper bound on defectives");
  cmd_design->add_option("--tests", dsg.tests,
                         "test count T (T1 in ub mode); default from the "
                         "closed-form bound");
  cmd_design->add_option("--tests2", dsg.tests2, "T2 in ub mode");
  cmd_design->add_option("--delta", dsg.delta, "error exponent delta");
  cmd_design->add_option("--p", dsg.p, "participation probability override");
  cmd_design->add_option("--out2", dsg.out2, "second matrix file (ub mode)");

  // ---- simulate --------------------------------------------------------
  auto* cmd_sim = app.add_subcommand(
      "simulate", "apply the outcome rule to a matrix and a population");
  struct {
    std::string matrix, population;
  } sim;
  cmd_sim->add_option("--matrix", sim.matrix, "matrix file")->required();
  cmd_sim->add_option("--population", sim.population, "population file")
      ->required();

  // ---- decode ----------------------------------------------------------
  auto* cmd_decode =
      app.add_subcommand("decode", "classify items from test outcomes");
  struct {
    std::string matrix, outcomes, matrix2, outcomes2, mode = "exact";
    std::int64_t d = -1, r = -1, R = -1, D = -1;
    double p = 0.0;
  } dec;
  cmd_decode->add_option("--matrix", dec.matrix)->required();
  cmd_decode->add_option("--outcomes", dec.outcomes)->required();
  cmd_decode->add_option("--mode", dec.mode, "exact|ub");
  cmd_decode->add_option("--matrix2", dec.matrix2, "second matrix (ub)");
  cmd_decode->add_option("--outcomes2", dec.outcomes2,
                         "second outcome file (ub)");
  cmd_decode->add_option("--d", dec.d);
  cmd_decode->add_option("--r", dec.r);
  cmd_decode->add_option("--R", dec.R);
  cmd_decode->add_option("--D", dec.D);
  cmd_decode->add_option("--p", dec.p, "participation probability override");

  // ---- tests -----------------------------------------------------------
  auto* cmd_tests = app.add_subcommand(
      "tests", "closed-form sample-complexity calculators");
  struct {
    std::int64_t n = 0, d = -1, r = -1, R = -1, D = -1;
    double delta = 1.0, p = 0.0;
    bool dcp = false, asymptotic = false;
  } tst;
  cmd_tests->add_option("--n", tst.n)->required();
  cmd_tests->add_option("--delta", tst.delta);
  cmd_tests->add_option("--d", tst.d);
  cmd_tests->add_option("--r", tst.r);
  cmd_tests->add_option("--R", tst.R);
  cmd_tests->add_option("--D", tst.D);
  cmd_tests->add_option("--p", tst.p, "participation probability override");
  cmd_tests->add_flag("--dcp", tst.dcp, "defective classification only");
  cmd_tests->add_flag("--asymptotic", tst.asymptotic,
                      "large-(r+d) asymptotic form (exact mode)");

  // ---- bound -----------------------------------------------------------
  auto* cmd_bound =
      app.add_subcommand("bound", "information-theoretic lower bounds");
  struct {
    std::int64_t n = 0, d = -1, r = -1, R = -1, D = -1;
    double pe = 0.0;
    std::string problem = "scp";
  } bnd;
  cmd_bound->add_option("--n", bnd.n)->required();
  cmd_bound->add_option("--d", bnd.d);
  cmd_bound->add_option("--r", bnd.r);
  cmd_bound->add_option("--R", bnd.R);
  cmd_bound->add_option("--D", bnd.D);
  cmd_bound->add_option("--pe", bnd.pe, "allowed error probability");
  cmd_bound->add_option("--problem", bnd.problem, "scp|dcp");

  // ---- sweep -----------------------------------------------------------
  auto* cmd_sweep = app.add_subcommand(
      "sweep", "grid study: designed tests vs lower bounds, CSV/JSON");
  struct {
    std::int64_t n = 0, trials = 0;
    double delta = 1.0;
    std::string mode = "exact", problem = "scp";
    std::vector<std::int64_t> d, r, R, D;
  } swp;
  cmd_sweep->add_option("--n", swp.n)->required();
  cmd_sweep->add_option("--delta", swp.delta);
  cmd_sweep->add_option("--mode", swp.mode, "exact|ub");
  cmd_sweep->add_option("--problem", swp.problem, "scp|dcp");
  cmd_sweep->add_option("--trials", swp.trials, "Monte Carlo trials per point");
  cmd_sweep->add_option("--d", swp.d, "defective counts")->delimiter(',');
  cmd_sweep->add_option("--r", swp.r, "inhibitor counts")->delimiter(',');
  cmd_sweep->add_option("--R", swp.R, "inhibitor bounds")->delimiter(',');
  cmd_sweep->add_option("--D", swp.D, "defective bounds")->delimiter(',');

  // ---- oracle ----------------------------------------------------------
  auto* cmd_oracle = app.add_subcommand(
      "oracle", "brute-force consistency enumeration over populations");
  struct {
    std::string matrix, outcomes;
    std::int64_t d = -1, r = -1, max_candidates = 10'000'000;
  } orc;
  cmd_oracle->add_option("--matrix", orc.matrix);
  cmd_oracle->add_option("--outcomes", orc.outcomes);
  cmd_oracle->add_option("--d", orc.d);
  cmd_oracle->add_option("--r", orc.r);
  cmd_oracle->add_option("--max-candidates", orc.max_candidates,
                         "enumeration guard");

  auto* cmd_oracle_py = cmd_oracle->add_subcommand(
      "py", "positive-pool probability by exact counting or sampling");
  struct {
    std::int64_t n = 0, d = 0, r = 0, g = 0, samples = 0;
  } opy;
  cmd_oracle_py->add_option("--n", opy.n)->required();
  cmd_oracle_py->add_option("--d", opy.d)->required();
  cmd_oracle_py->add_option("--r", opy.r)->required();
  cmd_oracle_py->add_option("--g", opy.g, "pool size")->required();
  cmd_oracle_py->add_option("--samples", opy.samples,
                            "0 = exact counting, else Monte Carlo samples");

  // ---- trial -----------------------------------------------------------
  auto* cmd_trial = app.add_subcommand(
      "trial", "seeded end-to-end Monte Carlo experiment with verdict");
  struct {
    std::int64_t n = 0, d = -1, r = -1, R = -1, D = -1;
    std::int64_t trials = 1000, tests = 0, tests2 = -1;
    double delta = 1.0, p = 0.0;
    std::string problem = "scp";
  } trl;
  cmd_trial->add_option("--n", trl.n)->required();
  cmd_trial->add_option("--d", trl.d);
  cmd_trial->add_option("--r", trl.r);
  cmd_trial->add_option("--R", trl.R);
  cmd_trial->add_option("--D", trl.D);
  cmd_trial->add_option("--delta", trl.delta);
  cmd_trial->add_option("--trials", trl.trials, "trials (per cell in ub)");
  cmd_trial->add_option("--tests", trl.tests, "override T (T1 in ub)");
  cmd_trial->add_option("--tests2", trl.tests2, "override T2 (ub)");
  cmd_trial->add_option("--p", trl.p, "participation probability override");
  cmd_trial->add_option("--problem", trl.problem, "scp|dcp");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  auto parse_problem = [](const std::string& s) {
    if (s == "scp") return gti::Problem::Scp;
    if (s == "dcp") return gti::Problem::Dcp;
    throw std::runtime_error("problem must be scp or dcp");
  };

  try {
    if (*cmd_design) {
      const bool ub_mode = dsg.R >= 0 || dsg.D >= 0;
      if (common.out_path.empty())
        throw std::runtime_error("design requires --out <matrix file>");
      json j;
      if (!ub_mode) {
        if (dsg.d < 0 || dsg.r < 0)
          throw std::runtime_error("exact mode requires --d and --r");
        const auto params = gti::exact_params(
            dsg.n, dsg.d, dsg.r,
            dsg.p > 0 ? std::optional<double>(dsg.p) : std::nullopt);
        const std::int64_t tests =
            dsg.tests > 0
                ? dsg.tests
                : gti::beta_exact(dsg.n, dsg.d, dsg.r, dsg.delta,
                                  dsg.p > 0 ? std::optional<double>(dsg.p)
                                            : std::nullopt)
                      .tests;
        const auto design =
            gti::iid_design(tests, dsg.n, params.p, common.seed);
        gti::write_matrix_file(common.out_path, design);
        j = params_json(params);
        j["tests"] = tests;
        j["matrix"] = common.out_path;
      } else {
        if (dsg.R < 1 || dsg.D < 1)
          throw std::runtime_error("ub mode requires --R and --D");
        if (dsg.out2.empty())
          throw std::runtime_error("ub mode requires --out2 <matrix file>");
        const auto params = gti::ub_params(dsg.R, dsg.D);
        const auto [b1, b2] = gti::beta_ub(dsg.n, dsg.R, dsg.D, dsg.delta);
        const std::int64_t t1 = dsg.tests > 0 ? dsg.tests : b1.tests;
        const std::int64_t t2 = dsg.tests2 > 0 ? dsg.tests2 : b2.tests;
        const auto m1 = gti::iid_design(t1, dsg.n, params.p1,
                                        gti::derive_seed(common.seed, 1));
        const auto m2 = gti::iid_design(t2, dsg.n, params.p2,
                                        gti::derive_seed(common.seed, 2));
        gti::write_matrix_file(common.out_path, m1);
        gti::write_matrix_file(dsg.out2, m2);
        j = params_json(params);
        j["tests1"] = t1;
        j["tests2"] = t2;
        j["matrix1"] = common.out_path;
        j["matrix2"] = dsg.out2;
      }
      std::cout << j.dump(2) << '\n';
      return 0;
    }

    if (*cmd_sim) {
      const auto design = gti::read_matrix_file(sim.matrix);
      const auto pop = gti::read_population_file(sim.population);
      const auto y = gti::simulate_outcomes(design, pop);
      std::int64_t positives = 0;
      for (auto v : y) positives += v;
      if (!common.out_path.empty())
        gti::write_outcomes_file(common.out_path, y);
      else {
        std::ostringstream ss;
        gti::write_outcomes(ss, y);
        std::cout << ss.str();
        return 0;
      }
      json j{{"tests", design.tests()}, {"positives", positives},
             {"outcomes", common.out_path}};
      std::cout << j.dump(2) << '\n';
      return 0;
    }

    if (*cmd_decode) {
      const auto design = gti::read_matrix_file(dec.matrix);
      const auto y = gti::read_outcomes_file(dec.outcomes);
      gti::Classification c;
      if (dec.mode == "exact") {
        if (dec.d < 0 || dec.r < 0)
          throw std::runtime_error("exact decode requires --d and --r");
        const auto params = gti::exact_params(
            design.items(), dec.d, dec.r,
            dec.p > 0 ? std::optional<double>(dec.p) : std::nullopt);
        c = gti::decode_exact(design, y, params);
      } else if (dec.mode == "ub") {
        if (dec.R < 1 || dec.D < 1)
          throw std::runtime_error("ub decode requires --R and --D");
        if (dec.matrix2.empty() || dec.outcomes2.empty())
          throw std::runtime_error(
              "ub decode requires --matrix2 and --outcomes2");
        const auto design2 = gti::read_matrix_file(dec.matrix2);
        const auto y2 = gti::read_outcomes_file(dec.outcomes2);
        c = gti::decode_ub(design, y, design2, y2,
                           gti::ub_params(dec.R, dec.D));
      } else {
        throw std::runtime_error("mode must be exact or ub");
      }
      emit(common.out_path, classification_json(c).dump(2) + "\n");
      return 0;
    }

    if (*cmd_tests) {
      json j;
      if (tst.R >= 0 || tst.D >= 0) {
        if (tst.R < 1 || tst.D < 1)
          throw std::runtime_error("ub mode requires --R and --D");
        if (tst.dcp) {
          j = breakdown_json(gti::beta_dcp_ub(tst.n, tst.R, tst.D, tst.delta));
        } else {
          const auto [b1, b2] = gti::beta_ub(tst.n, tst.R, tst.D, tst.delta);
          j["beta1"] = breakdown_json(b1);
          j["beta2"] = breakdown_json(b2);
          j["T1"] = b1.tests;
          j["T2"] = b2.tests;
          j["T"] = b1.tests + b2.tests;
        }
      } else {
        if (tst.d < 0 || tst.r < 0)
          throw std::runtime_error("exact mode requires --d and --r");
        const auto p_opt =
            tst.p > 0 ? std::optional<double>(tst.p) : std::nullopt;
        gti::BetaBreakdown b;
        if (tst.asymptotic)
          b = gti::beta_exact_asymptotic(tst.n, tst.d, tst.r, tst.delta);
        else if (tst.dcp)
          b = gti::beta_dcp(tst.n, tst.d, tst.r, tst.delta, p_opt);
        else
          b = gti::beta_exact(tst.n, tst.d, tst.r, tst.delta, p_opt);
        j = breakdown_json(b);
      }
      emit(common.out_path, j.dump(2) + "\n");
      return 0;
    }

    if (*cmd_bound) {
      const auto problem = parse_problem(bnd.problem);
      gti::LowerBoundReport rep;
      if (bnd.R >= 0 || bnd.D >= 0) {
        if (bnd.R < 1 || bnd.D < 1)
          throw std::runtime_error("ub mode requires --R and --D");
        rep = gti::fano_lb_ub_scenario(bnd.n, bnd.R, bnd.D, bnd.pe, problem);
      } else {
        if (bnd.d < 1 || bnd.r < 1)
          throw std::runtime_error(
              "exact mode requires --d >= 1 and --r >= 1");
        rep = problem == gti::Problem::Scp
                  ? gti::fano_lb_scp(bnd.n, bnd.d, bnd.r, bnd.pe)
                  : gti::fano_lb_dcp(bnd.n, bnd.d, bnd.r, bnd.pe);
      }
      emit(common.out_path, bound_json(rep).dump(2) + "\n");
      return 0;
    }

    if (*cmd_sweep) {
      gti::SweepSpec spec;
      spec.n = swp.n;
      spec.delta = swp.delta;
      spec.trials = swp.trials;
      spec.seed = common.seed;
      spec.workers = common.workers;
      spec.problem = parse_problem(swp.problem);
      if (swp.mode == "exact") {
        spec.mode = gti::Knowledge::Exact;
        if (swp.d.empty() || swp.d.size() != swp.r.size())
          throw std::runtime_error(
              "exact sweep needs --d and --r lists of equal length");
        for (std::size_t i = 0; i < swp.d.size(); ++i)
          spec.points.push_back({swp.d[i], swp.r[i], 0, 0});
      } else if (swp.mode == "ub") {
        spec.mode = gti::Knowledge::UpperBound;
        if (swp.R.empty() || swp.R.size() != swp.D.size())
          throw std::runtime_error(
              "ub sweep needs --R and --D lists of equal length");
        for (std::size_t i = 0; i < swp.R.size(); ++i)
          spec.points.push_back({0, 0, swp.R[i], swp.D[i]});
      } else {
        throw std::runtime_error("mode must be exact or ub");
      }
      const auto rows = gti::sweep(spec);
      emit(common.out_path,
           common.as_json ? gti::sweep_json(rows) : gti::sweep_csv(rows));
      return 0;
    }

    if (*cmd_oracle) {
      if (*cmd_oracle_py) {
        json j;
        if (opy.samples > 0) {
          const auto est = gti::empirical_p_y_sampled(
              opy.n, opy.d, opy.r, opy.g, opy.samples, common.seed);
          j = {{"mode", "sampled"},
               {"estimate", est.estimate},
               {"half_width_99", est.half_width_99},
               {"samples", est.samples}};
        } else {
          j = {{"mode", "exact"},
               {"p", gti::empirical_p_y_exact(opy.n, opy.d, opy.r, opy.g)}};
        }
        emit(common.out_path, j.dump(2) + "\n");
        return 0;
      }
      if (orc.matrix.empty() || orc.outcomes.empty() || orc.d < 0 ||
          orc.r < 0)
        throw std::runtime_error(
            "oracle requires --matrix, --outcomes, --d and --r");
      const auto design = gti::read_matrix_file(orc.matrix);
      const auto y = gti::read_outcomes_file(orc.outcomes);
      const auto cs = gti::consistent_assignments(design, y, orc.d, orc.r,
                                                  orc.max_candidates);
      json arr = json::array();
      for (const auto& [defs, inhs] : cs.assignments)
        arr.push_back({{"defectives", one_based(defs)},
                       {"inhibitors", one_based(inhs)}});
      json j{{"assignments", arr}, {"identifiable", cs.identifiable}};
      emit(common.out_path, j.dump(2) + "\n");
      return 0;
    }

    if (*cmd_trial) {
      gti::TrialConfig cfg;
      cfg.n = trl.n;
      cfg.delta = trl.delta;
      cfg.trials = trl.trials;
      cfg.seed = common.seed;
      cfg.workers = common.workers;
      cfg.problem = parse_problem(trl.problem);
      if (trl.R >= 0 || trl.D >= 0) {
        cfg.mode = gti::Knowledge::UpperBound;
        cfg.R = trl.R;
        cfg.D = trl.D;
      } else {
        if (trl.d < 0 || trl.r < 0)
          throw std::runtime_error("exact mode requires --d and --r");
        cfg.mode = gti::Knowledge::Exact;
        cfg.d = trl.d;
        cfg.r = trl.r;
      }
      if (trl.p > 0) cfg.p_override = trl.p;
      if (trl.tests > 0) cfg.tests_override = trl.tests;
      if (trl.tests2 >= 0) cfg.tests2_override = trl.tests2;
      const auto rep = gti::run_trials(cfg);
      emit(common.out_path, common.as_json ? gti::report_json(rep)
                                           : gti::report_render(rep));
      return gti::report_exit_code(rep);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
