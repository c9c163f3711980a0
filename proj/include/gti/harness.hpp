#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gti/bounds.hpp"
#include "gti/decode.hpp"
#include "gti/model.hpp"

namespace gti {

enum class Knowledge : std::uint8_t { Exact = 0, UpperBound = 1 };

/// One Monte Carlo experiment. In Exact mode trials run at the configured
/// (d, r); in UpperBound mode `trials` trials run for every grid cell
/// r in [0, R] x d in [1, D], matching the worst-case objective.
struct TrialConfig {
  std::int64_t n = 0;
  Knowledge mode = Knowledge::Exact;
  Problem problem = Problem::Scp;
  std::int64_t d = 0;
  std::int64_t r = 0;
  std::int64_t R = 0;
  std::int64_t D = 0;
  double delta = 1.0;
  std::int64_t trials = 1;  // per cell in UpperBound mode
  std::uint64_t seed = 0;
  int workers = 1;
  std::optional<double> p_override;             // Exact-mode design p
  std::optional<std::int64_t> tests_override;   // Exact-mode T / ub-mode T1
  std::optional<std::int64_t> tests2_override;  // ub-mode T2
};

/// Error events per true item type: e1 defective not declared defective
/// (includes absent), e2 normal declared defective, e3 normal declared
/// inhibitor (includes absent), e4 inhibitor absent from every test.
struct CellReport {
  std::int64_t r = 0;
  std::int64_t d = 0;
  std::int64_t trials = 0;
  std::int64_t e1 = 0, e2 = 0, e3 = 0, e4 = 0;
  std::int64_t scp_errors = 0;  // trials with any event
  std::int64_t dcp_errors = 0;  // trials where declared defectives != truth
  std::int64_t inhibitor_mislabels = 0;  // true inhibitor not labeled such
  double scp_rate = 0;
  double dcp_rate = 0;
  double scp_half_width = 0;  // one-sided 99%, normal approximation
  double dcp_half_width = 0;
};

struct TrialReport {
  TrialConfig config;
  std::int64_t tests1 = 0;  // Exact-mode T, or ub-mode T1
  std::int64_t tests2 = 0;  // ub-mode T2
  std::vector<CellReport> cells;
  std::int64_t trials_total = 0;
  std::int64_t e1 = 0, e2 = 0, e3 = 0, e4 = 0;
  std::int64_t scp_errors = 0;
  std::int64_t dcp_errors = 0;
  std::int64_t inhibitor_mislabels = 0;
  double worst_rate = 0;       // worst cell rate for the gated problem
  double gate_slack = 0;       // one-sided 99% slack around the target
  double theoretical_target = 0;  // c * n^-delta
  bool pass = false;
};

/// Per-trial error attribution against the ground truth. Every misclassified
/// or absent item lands in exactly one event bucket.
struct EventCounts {
  std::int64_t e1 = 0, e2 = 0, e3 = 0, e4 = 0;
  std::int64_t inhibitor_mislabels = 0;
  bool scp_error = false;  // any event fired
  bool dcp_error = false;  // declared defective set differs from truth
};

EventCounts attribute_events(const Population& truth,
                             const Classification& decoded);

/// Runs the experiment. Bit-reproducible for a given seed: every trial uses
/// substreams derived from (seed, trial index), so the worker count changes
/// nothing but wall time.
TrialReport run_trials(const TrialConfig& config);

struct SweepPoint {
  std::int64_t d = 0;
  std::int64_t r = 0;  // Exact mode
  std::int64_t R = 0;
  std::int64_t D = 0;  // UpperBound mode
};

struct SweepSpec {
  std::int64_t n = 0;
  Knowledge mode = Knowledge::Exact;
  Problem problem = Problem::Scp;
  double delta = 1.0;
  std::int64_t trials = 0;  // 0: closed-form columns only
  std::uint64_t seed = 0;
  int workers = 1;
  std::vector<SweepPoint> points;
};

/// One row per grid point; unused columns are zero (R, D in Exact mode and
/// d, r in UpperBound mode). fano_lb is 0 when undefined (r = 0).
struct SweepRow {
  std::int64_t n = 0, d = 0, r = 0, R = 0, D = 0, T = 0;
  double scp_err = 0, dcp_err = 0;
  std::int64_t e1 = 0, e2 = 0, e3 = 0, e4 = 0;
  double fano_lb = 0;
  double ratio = 0;  // T / fano_lb
};

std::vector<SweepRow> sweep(const SweepSpec& spec);

/// CSV with header n,d,r,R,D,T,scp_err,dcp_err,e1,e2,e3,e4,fano_lb,ratio.
std::string sweep_csv(const std::vector<SweepRow>& rows);
std::string sweep_json(const std::vector<SweepRow>& rows);

/// Human-readable event breakdown with a PASS/FAIL verdict line.
std::string report_render(const TrialReport& report);
/// 0 when every cell meets the target within slack, 1 otherwise.
int report_exit_code(const TrialReport& report);
std::string report_json(const TrialReport& report);

/// Uniform random population with d defectives and r inhibitors. Trials
/// sample positions uniformly; since the i.i.d. designs are exchangeable
/// across items, the error guarantees are position-independent and uniform
/// sampling is representative of the worst case.
Population random_population(std::int64_t n, std::int64_t d, std::int64_t r,
                             std::uint64_t seed);

}  // namespace gti
