#include "gti/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "gti/complexity.hpp"
#include "gti/decode.hpp"
#include "gti/design.hpp"
#include "gti/rng.hpp"

namespace gti {

namespace {

constexpr double kZ99OneSided = 2.3263478740408408;

double target_constant(Knowledge mode, Problem problem) {
  // Union-bound event family counts: four in exact mode (SCP), three in the
  // upper-bound mode, two when only defectives are gated.
  if (problem == Problem::Dcp) return 2.0;
  return mode == Knowledge::Exact ? 4.0 : 3.0;
}

double rate_half_width(double rate, std::int64_t trials) {
  return kZ99OneSided *
         std::sqrt(std::max(rate * (1.0 - rate), 0.0) /
                   static_cast<double>(trials));
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

struct CellAccum {
  std::int64_t e1 = 0, e2 = 0, e3 = 0, e4 = 0;
  std::int64_t scp_errors = 0, dcp_errors = 0, inhibitor_mislabels = 0;

  void merge(const CellAccum& o) {
    e1 += o.e1;
    e2 += o.e2;
    e3 += o.e3;
    e4 += o.e4;
    scp_errors += o.scp_errors;
    dcp_errors += o.dcp_errors;
    inhibitor_mislabels += o.inhibitor_mislabels;
  }
};

void accumulate(const EventCounts& ev, CellAccum& acc) {
  acc.e1 += ev.e1;
  acc.e2 += ev.e2;
  acc.e3 += ev.e3;
  acc.e4 += ev.e4;
  acc.inhibitor_mislabels += ev.inhibitor_mislabels;
  acc.scp_errors += ev.scp_error;
  acc.dcp_errors += ev.dcp_error;
}

void validate(const TrialConfig& cfg) {
  if (cfg.n < 2) throw std::invalid_argument("n must be >= 2");
  if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (!(cfg.delta > 0)) throw std::invalid_argument("delta must be > 0");
  if (cfg.workers < 1) throw std::invalid_argument("workers must be >= 1");
  if (cfg.mode == Knowledge::Exact) {
    if (cfg.d < 1) throw std::invalid_argument("d must be >= 1");
    if (cfg.r < 0) throw std::invalid_argument("r must be >= 0");
    if (cfg.d + cfg.r >= cfg.n)
      throw std::invalid_argument("d + r must be < n");
  } else {
    if (cfg.R < 1 || cfg.D < 1)
      throw std::invalid_argument("R and D must be >= 1");
    if (cfg.R + cfg.D >= cfg.n)
      throw std::invalid_argument("R + D must be < n");
  }
}

}  // namespace

EventCounts attribute_events(const Population& truth,
                             const Classification& c) {
  if (static_cast<std::int64_t>(c.labels.size()) != truth.n())
    throw std::invalid_argument("classification size differs from truth");
  EventCounts ev;
  std::vector<std::uint8_t> type(static_cast<std::size_t>(truth.n()), 0);
  for (auto j : truth.defectives()) type[static_cast<std::size_t>(j)] = 1;
  for (auto j : truth.inhibitors()) type[static_cast<std::size_t>(j)] = 2;
  for (std::int64_t j = 0; j < truth.n(); ++j) {
    const Label label = c.labels[static_cast<std::size_t>(j)];
    switch (type[static_cast<std::size_t>(j)]) {
      case 1:  // defective: any non-defective label counts once, absence
               // included (an absent item cannot reach the defective label)
        if (label != Label::Defective) ++ev.e1;
        break;
      case 2:  // inhibitor: only total absence is an error; the decoding
               // rules can never hand it another label
        if (std::binary_search(c.non_participants.begin(),
                               c.non_participants.end(), j))
          ++ev.e4;
        if (label != Label::Inhibitor) ++ev.inhibitor_mislabels;
        break;
      default:  // normal: absence forces the inhibitor label, so e2/e3
                // stay mutually exclusive
        if (label == Label::Defective)
          ++ev.e2;
        else if (label == Label::Inhibitor)
          ++ev.e3;
        break;
    }
  }
  ev.scp_error = (ev.e1 + ev.e2 + ev.e3 + ev.e4) > 0;
  ev.dcp_error = (ev.e1 + ev.e2) > 0;
  return ev;
}

Population random_population(std::int64_t n, std::int64_t d, std::int64_t r,
                             std::uint64_t seed) {
  if (d < 0 || r < 0 || d + r > n)
    throw std::invalid_argument("invalid population sizes");
  SplitMix64 rng(seed);
  // Floyd's uniform k-subset, then a uniform split into the two roles.
  std::vector<std::int64_t> chosen;
  chosen.reserve(static_cast<std::size_t>(d + r));
  for (std::int64_t i = n - (d + r); i < n; ++i) {
    const auto t = static_cast<std::int64_t>(
        rng.next_below(static_cast<std::uint64_t>(i) + 1));
    if (std::find(chosen.begin(), chosen.end(), t) != chosen.end())
      chosen.push_back(i);
    else
      chosen.push_back(t);
  }
  for (std::size_t i = chosen.size(); i > 1; --i)
    std::swap(chosen[i - 1],
              chosen[static_cast<std::size_t>(rng.next_below(i))]);
  std::vector<std::int64_t> defectives(chosen.begin(), chosen.begin() + d);
  std::vector<std::int64_t> inhibitors(chosen.begin() + d, chosen.end());
  return Population(n, std::move(defectives), std::move(inhibitors));
}

TrialReport run_trials(const TrialConfig& cfg) {
  validate(cfg);
  TrialReport rep;
  rep.config = cfg;

  std::vector<std::pair<std::int64_t, std::int64_t>> cells;  // (r, d)
  ExactParams exact;
  UbParams ub;
  if (cfg.mode == Knowledge::Exact) {
    cells.emplace_back(cfg.r, cfg.d);
    exact = exact_params(cfg.n, cfg.d, cfg.r, cfg.p_override);
    const auto breakdown =
        cfg.problem == Problem::Scp
            ? beta_exact(cfg.n, cfg.d, cfg.r, cfg.delta, cfg.p_override)
            : beta_dcp(cfg.n, cfg.d, cfg.r, cfg.delta, cfg.p_override);
    rep.tests1 = cfg.tests_override.value_or(breakdown.tests);
    rep.tests2 = 0;
  } else {
    for (std::int64_t r = 0; r <= cfg.R; ++r)
      for (std::int64_t d = 1; d <= cfg.D; ++d) cells.emplace_back(r, d);
    ub = ub_params(cfg.R, cfg.D);
    const auto [b1, b2] = beta_ub(cfg.n, cfg.R, cfg.D, cfg.delta);
    rep.tests1 = cfg.tests_override.value_or(b1.tests);
    // Only stage 1 matters when gating defectives alone.
    rep.tests2 = cfg.tests2_override.value_or(
        cfg.problem == Problem::Scp ? b2.tests : 0);
  }
  if (rep.tests1 < 1) throw std::invalid_argument("tests must be >= 1");
  if (rep.tests2 < 0) throw std::invalid_argument("tests2 must be >= 0");

  const auto num_cells = static_cast<std::int64_t>(cells.size());
  const std::int64_t total = num_cells * cfg.trials;
  const double work = static_cast<double>(cfg.n) *
                      static_cast<double>(rep.tests1 + rep.tests2) *
                      static_cast<double>(total);
  if (work > 5e12)
    throw std::runtime_error("n * T * trials exceeds the resource guard");

  const int workers = static_cast<int>(
      std::min<std::int64_t>(cfg.workers, std::max<std::int64_t>(total, 1)));
  std::vector<std::vector<CellAccum>> partials(
      static_cast<std::size_t>(workers),
      std::vector<CellAccum>(static_cast<std::size_t>(num_cells)));

  auto worker_fn = [&](int w) {
    auto& local = partials[static_cast<std::size_t>(w)];
    for (std::int64_t g = w; g < total; g += workers) {
      const std::int64_t cell = g / cfg.trials;
      const auto [cell_r, cell_d] = cells[static_cast<std::size_t>(cell)];
      const std::uint64_t tseed =
          derive_seed(cfg.seed, static_cast<std::uint64_t>(g));
      const Population truth =
          random_population(cfg.n, cell_d, cell_r, derive_seed(tseed, 1));
      Classification c;
      if (cfg.mode == Knowledge::Exact) {
        const auto design =
            iid_design(rep.tests1, cfg.n, exact.p, derive_seed(tseed, 2));
        const auto y = simulate_outcomes(design, truth);
        c = decode_exact(design, y, exact);
      } else {
        const auto design1 =
            iid_design(rep.tests1, cfg.n, ub.p1, derive_seed(tseed, 2));
        const auto y1 = simulate_outcomes(design1, truth);
        PoolingDesign design2 =
            rep.tests2 > 0
                ? iid_design(rep.tests2, cfg.n, ub.p2, derive_seed(tseed, 3))
                : PoolingDesign(0, cfg.n);
        const auto y2 = simulate_outcomes(design2, truth);
        c = decode_ub(design1, y1, design2, y2, ub);
      }
      accumulate(attribute_events(truth, c),
                 local[static_cast<std::size_t>(cell)]);
    }
  };

  if (workers == 1) {
    worker_fn(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) threads.emplace_back(worker_fn, w);
    for (auto& t : threads) t.join();
  }

  rep.theoretical_target =
      target_constant(cfg.mode, cfg.problem) *
      std::pow(static_cast<double>(cfg.n), -cfg.delta);
  rep.gate_slack = kZ99OneSided *
                   std::sqrt(rep.theoretical_target *
                             (1.0 - rep.theoretical_target) /
                             static_cast<double>(cfg.trials));
  rep.trials_total = total;
  rep.pass = true;
  for (std::int64_t cidx = 0; cidx < num_cells; ++cidx) {
    CellAccum acc;
    for (int w = 0; w < workers; ++w)
      acc.merge(partials[static_cast<std::size_t>(w)]
                        [static_cast<std::size_t>(cidx)]);
    CellReport cr;
    cr.r = cells[static_cast<std::size_t>(cidx)].first;
    cr.d = cells[static_cast<std::size_t>(cidx)].second;
    cr.trials = cfg.trials;
    cr.e1 = acc.e1;
    cr.e2 = acc.e2;
    cr.e3 = acc.e3;
    cr.e4 = acc.e4;
    cr.scp_errors = acc.scp_errors;
    cr.dcp_errors = acc.dcp_errors;
    cr.inhibitor_mislabels = acc.inhibitor_mislabels;
    cr.scp_rate = static_cast<double>(acc.scp_errors) /
                  static_cast<double>(cfg.trials);
    cr.dcp_rate = static_cast<double>(acc.dcp_errors) /
                  static_cast<double>(cfg.trials);
    cr.scp_half_width = rate_half_width(cr.scp_rate, cfg.trials);
    cr.dcp_half_width = rate_half_width(cr.dcp_rate, cfg.trials);
    rep.e1 += cr.e1;
    rep.e2 += cr.e2;
    rep.e3 += cr.e3;
    rep.e4 += cr.e4;
    rep.scp_errors += cr.scp_errors;
    rep.dcp_errors += cr.dcp_errors;
    rep.inhibitor_mislabels += cr.inhibitor_mislabels;
    const double gated =
        cfg.problem == Problem::Scp ? cr.scp_rate : cr.dcp_rate;
    rep.worst_rate = std::max(rep.worst_rate, gated);
    if (gated > rep.theoretical_target + rep.gate_slack) rep.pass = false;
    rep.cells.push_back(cr);
  }
  return rep;
}

std::vector<SweepRow> sweep(const SweepSpec& spec) {
  if (spec.points.empty())
    throw std::invalid_argument("sweep needs at least one grid point");
  std::vector<SweepRow> rows;
  rows.reserve(spec.points.size());
  for (std::size_t idx = 0; idx < spec.points.size(); ++idx) {
    const auto& pt = spec.points[idx];
    SweepRow row;
    row.n = spec.n;
    LowerBoundReport lb;
    bool lb_defined = true;
    if (spec.mode == Knowledge::Exact) {
      row.d = pt.d;
      row.r = pt.r;
      const auto breakdown =
          spec.problem == Problem::Scp
              ? beta_exact(spec.n, pt.d, pt.r, spec.delta)
              : beta_dcp(spec.n, pt.d, pt.r, spec.delta);
      row.T = breakdown.tests;
      if (pt.r >= 1)
        lb = spec.problem == Problem::Scp ? fano_lb_scp(spec.n, pt.d, pt.r, 0)
                                          : fano_lb_dcp(spec.n, pt.d, pt.r, 0);
      else
        lb_defined = false;
    } else {
      row.R = pt.R;
      row.D = pt.D;
      const auto [b1, b2] = beta_ub(spec.n, pt.R, pt.D, spec.delta);
      row.T = b1.tests +
              (spec.problem == Problem::Scp ? b2.tests : 0);
      lb = fano_lb_ub_scenario(spec.n, pt.R, pt.D, 0, spec.problem);
    }
    if (lb_defined) {
      row.fano_lb = lb.tests_lb;
      row.ratio = lb.tests_lb > 0
                      ? static_cast<double>(row.T) / lb.tests_lb
                      : 0.0;
    }
    if (spec.trials > 0) {
      TrialConfig cfg;
      cfg.n = spec.n;
      cfg.mode = spec.mode;
      cfg.problem = spec.problem;
      cfg.d = pt.d;
      cfg.r = pt.r;
      cfg.R = pt.R;
      cfg.D = pt.D;
      cfg.delta = spec.delta;
      cfg.trials = spec.trials;
      cfg.seed = derive_seed(spec.seed, static_cast<std::uint64_t>(idx));
      cfg.workers = spec.workers;
      const TrialReport tr = run_trials(cfg);
      row.scp_err = static_cast<double>(tr.scp_errors) /
                    static_cast<double>(tr.trials_total);
      row.dcp_err = static_cast<double>(tr.dcp_errors) /
                    static_cast<double>(tr.trials_total);
      row.e1 = tr.e1;
      row.e2 = tr.e2;
      row.e3 = tr.e3;
      row.e4 = tr.e4;
    }
    rows.push_back(row);
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out =
      "n,d,r,R,D,T,scp_err,dcp_err,e1,e2,e3,e4,fano_lb,ratio\n";
  for (const auto& r : rows) {
    char buf[512];
    std::snprintf(buf, sizeof(buf),
                  "%lld,%lld,%lld,%lld,%lld,%lld,%s,%s,%lld,%lld,%lld,%lld,"
                  "%s,%s\n",
                  static_cast<long long>(r.n), static_cast<long long>(r.d),
                  static_cast<long long>(r.r), static_cast<long long>(r.R),
                  static_cast<long long>(r.D), static_cast<long long>(r.T),
                  format_double(r.scp_err).c_str(),
                  format_double(r.dcp_err).c_str(),
                  static_cast<long long>(r.e1), static_cast<long long>(r.e2),
                  static_cast<long long>(r.e3), static_cast<long long>(r.e4),
                  format_double(r.fano_lb).c_str(),
                  format_double(r.ratio).c_str());
    out += buf;
  }
  return out;
}

namespace {

nlohmann::json row_json(const SweepRow& r) {
  return {{"n", r.n},           {"d", r.d},
          {"r", r.r},           {"R", r.R},
          {"D", r.D},           {"T", r.T},
          {"scp_err", r.scp_err}, {"dcp_err", r.dcp_err},
          {"e1", r.e1},         {"e2", r.e2},
          {"e3", r.e3},         {"e4", r.e4},
          {"fano_lb", r.fano_lb}, {"ratio", r.ratio}};
}

nlohmann::json cell_json(const CellReport& c) {
  return {{"r", c.r},
          {"d", c.d},
          {"trials", c.trials},
          {"e1", c.e1},
          {"e2", c.e2},
          {"e3", c.e3},
          {"e4", c.e4},
          {"scp_errors", c.scp_errors},
          {"dcp_errors", c.dcp_errors},
          {"inhibitor_mislabels", c.inhibitor_mislabels},
          {"scp_rate", c.scp_rate},
          {"dcp_rate", c.dcp_rate},
          {"scp_half_width", c.scp_half_width},
          {"dcp_half_width", c.dcp_half_width}};
}

}  // namespace

std::string sweep_json(const std::vector<SweepRow>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rows) arr.push_back(row_json(r));
  return arr.dump(2) + "\n";
}

std::string report_json(const TrialReport& rep) {
  nlohmann::json j;
  j["n"] = rep.config.n;
  j["mode"] = rep.config.mode == Knowledge::Exact ? "exact" : "ub";
  j["problem"] = rep.config.problem == Problem::Scp ? "scp" : "dcp";
  j["d"] = rep.config.d;
  j["r"] = rep.config.r;
  j["R"] = rep.config.R;
  j["D"] = rep.config.D;
  j["delta"] = rep.config.delta;
  j["trials_per_cell"] = rep.config.trials;
  j["seed"] = rep.config.seed;
  j["tests1"] = rep.tests1;
  j["tests2"] = rep.tests2;
  j["trials_total"] = rep.trials_total;
  j["e1"] = rep.e1;
  j["e2"] = rep.e2;
  j["e3"] = rep.e3;
  j["e4"] = rep.e4;
  j["scp_errors"] = rep.scp_errors;
  j["dcp_errors"] = rep.dcp_errors;
  j["inhibitor_mislabels"] = rep.inhibitor_mislabels;
  j["worst_rate"] = rep.worst_rate;
  j["gate_slack"] = rep.gate_slack;
  j["theoretical_target"] = rep.theoretical_target;
  j["pass"] = rep.pass;
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : rep.cells) arr.push_back(cell_json(c));
  j["cells"] = arr;
  return j.dump(2) + "\n";
}

std::string report_render(const TrialReport& rep) {
  std::string out;
  char buf[512];
  std::snprintf(
      buf, sizeof(buf),
      "trial: mode=%s problem=%s n=%lld delta=%s trials=%lld seed=%llu\n",
      rep.config.mode == Knowledge::Exact ? "exact" : "ub",
      rep.config.problem == Problem::Scp ? "scp" : "dcp",
      static_cast<long long>(rep.config.n),
      format_double(rep.config.delta).c_str(),
      static_cast<long long>(rep.trials_total),
      static_cast<unsigned long long>(rep.config.seed));
  out += buf;
  if (rep.config.mode == Knowledge::Exact)
    std::snprintf(buf, sizeof(buf), "population: d=%lld r=%lld  tests: T=%lld\n",
                  static_cast<long long>(rep.config.d),
                  static_cast<long long>(rep.config.r),
                  static_cast<long long>(rep.tests1));
  else
    std::snprintf(buf, sizeof(buf),
                  "population: d<=%lld r<=%lld  tests: T1=%lld T2=%lld\n",
                  static_cast<long long>(rep.config.D),
                  static_cast<long long>(rep.config.R),
                  static_cast<long long>(rep.tests1),
                  static_cast<long long>(rep.tests2));
  out += buf;
  std::snprintf(buf, sizeof(buf),
                "events: e1=%lld e2=%lld e3=%lld e4=%lld "
                "inhibitor_mislabels=%lld\n",
                static_cast<long long>(rep.e1), static_cast<long long>(rep.e2),
                static_cast<long long>(rep.e3), static_cast<long long>(rep.e4),
                static_cast<long long>(rep.inhibitor_mislabels));
  out += buf;
  std::snprintf(buf, sizeof(buf),
                "errors: scp=%lld dcp=%lld over %lld trials\n",
                static_cast<long long>(rep.scp_errors),
                static_cast<long long>(rep.dcp_errors),
                static_cast<long long>(rep.trials_total));
  out += buf;
  if (rep.cells.size() > 1) {
    for (const auto& c : rep.cells) {
      if (c.scp_errors == 0 && c.dcp_errors == 0) continue;
      std::snprintf(buf, sizeof(buf),
                    "  cell r=%lld d=%lld: scp=%lld dcp=%lld\n",
                    static_cast<long long>(c.r), static_cast<long long>(c.d),
                    static_cast<long long>(c.scp_errors),
                    static_cast<long long>(c.dcp_errors));
      out += buf;
    }
  }
  std::snprintf(buf, sizeof(buf),
                "target: %s  worst cell rate: %s  slack: %s  => %s\n",
                format_double(rep.theoretical_target).c_str(),
                format_double(rep.worst_rate).c_str(),
                format_double(rep.gate_slack).c_str(),
                rep.pass ? "PASS" : "FAIL");
  out += buf;
  return out;
}

int report_exit_code(const TrialReport& rep) { return rep.pass ? 0 : 1; }

}  // namespace gti
