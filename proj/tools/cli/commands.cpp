// Copyright 2026 The bellstab Authors
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

#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include "output.hpp"

namespace bellstab::cli {

namespace {

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};

using TimeSeriesPtr = std::unique_ptr<bs_timeseries, Deleter<bs_timeseries, bs_timeseries_free>>;
using SweepPtr = std::unique_ptr<bs_sweep, Deleter<bs_sweep, bs_sweep_free>>;
using TruncationPtr = std::unique_ptr<bs_truncation, Deleter<bs_truncation, bs_truncation_free>>;
using OraclePtr =
    std::unique_ptr<bs_oracle_report, Deleter<bs_oracle_report, bs_oracle_report_free>>;
using RegimePtr =
    std::unique_ptr<bs_regime_report, Deleter<bs_regime_report, bs_regime_report_free>>;

class ApiFailure : public std::runtime_error {
 public:
  explicit ApiFailure(bs_status status)
      : std::runtime_error(std::string(bs_status_string(status)) + ": " + bs_last_error()) {}
};

void check(bs_status status) {
  if (status != BS_OK) throw ApiFailure(status);
}

std::string fixed(double v, int digits) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

void append_config(SummaryLines& lines, const RunConfig& config) {
  for (const auto& [k, v] : echo_settings(config)) lines.emplace_back("config." + k, v);
}

int resolved_ncav(const bs_params& p) {
  if (p.ncav > 0) return p.ncav;
  int n = 0;
  check(bs_default_ncav(p.nbar, &n));
  return n;
}

// Prints the validity ratio and regime checks; returns the number of
// failed checks.
int report_regime(const bs_params& params, std::ostream& out) {
  double ratio = 0.0;
  check(bs_validity_ratio(&params, &ratio));
  bs_regime_report* raw = nullptr;
  check(bs_regime_checks(&params, &raw));
  RegimePtr report(raw);
  out << "validity_ratio: " << fixed(ratio, 4) << "\n";
  int failed = 0;
  for (std::size_t i = 0; i < bs_regime_report_size(report.get()); ++i) {
    bs_regime_check c{};
    check(bs_regime_report_get(report.get(), i, &c));
    out << (c.passed ? "  ok    " : "  WARN  ") << c.name << " = " << fixed(c.value, 4)
        << "  [" << c.relation << ", threshold " << format_number(c.threshold) << "]\n";
    failed += c.passed ? 0 : 1;
  }
  return failed;
}

void warn_validity(const bs_params& params, std::ostream& err) {
  double ratio = 0.0;
  check(bs_validity_ratio(&params, &ratio));
  if (ratio > 0.1) {
    err << "warning: validity ratio " << fixed(ratio, 4)
        << " exceeds 0.1; the pumping model is outside its regime\n";
  }
}

int simulate(const RunConfig& config, std::ostream& out, std::ostream& err) {
  warn_validity(config.params, err);
  bs_timeseries* raw = nullptr;
  check(bs_run_time_series(&config.params, &config.evolution, config.initial, &raw));
  TimeSeriesPtr ts(raw);

  std::vector<bs_record> records(bs_timeseries_size(ts.get()));
  for (std::size_t i = 0; i < records.size(); ++i) {
    check(bs_timeseries_record(ts.get(), i, &records[i]));
  }
  bs_steady_state steady{};
  bs_invariants inv{};
  check(bs_timeseries_steady(ts.get(), &steady));
  check(bs_timeseries_invariants(ts.get(), &inv));

  SummaryLines lines{
      {"mode", "simulate"},
      {"steady_fidelity", format_number(steady.fidelity_mean)},
      {"steady_fidelity_spread", format_number(steady.fidelity_spread)},
      {"steady_chsh", format_number(steady.chsh_mean)},
      {"steady_chsh_spread", format_number(steady.chsh_spread)},
      {"steady_window_start_us", format_number(steady.window_start)},
      {"steady_samples", std::to_string(steady.samples)},
      {"ncav_used", std::to_string(resolved_ncav(config.params))},
      {"records", std::to_string(records.size())},
      {"max_trace_deviation", format_number(inv.max_trace_deviation)},
      {"max_hermiticity_deviation", format_number(inv.max_hermiticity_deviation)},
      {"min_eigenvalue", format_number(inv.min_eigenvalue)},
      {"renormalizations", std::to_string(inv.renormalizations)},
  };
  append_config(lines, config);

  OutputBatch batch(config.out_dir);
  batch.add("timeseries.csv", time_series_csv(records));
  batch.add("summary.txt", summary_text(lines));
  if (config.emit_plots) batch.add("timeseries.svg", time_series_svg(records));
  for (const auto& p : batch.commit()) out << "wrote " << p.string() << "\n";
  out << "steady fidelity " << fixed(steady.fidelity_mean, 4) << ", steady CHSH "
      << fixed(steady.chsh_mean, 4) << "\n";
  return kExitOk;
}

int sweep(const RunConfig& config, std::ostream& out, std::ostream& err) {
  bs_sweep* raw = nullptr;
  check(bs_run_sweep(&config.params, &config.evolution, config.sweep_nbar.data(),
                     config.sweep_nbar.size(), config.sweep_omega_ratio.data(),
                     config.sweep_omega_ratio.size(), config.threads, &raw));
  SweepPtr result(raw);

  std::vector<SweepCell> cells;
  int failures = 0;
  double best = -1.0;
  SweepCell best_cell{};
  for (std::size_t i = 0; i < config.sweep_nbar.size(); ++i) {
    for (std::size_t j = 0; j < config.sweep_omega_ratio.size(); ++j) {
      bs_sweep_point p{};
      check(bs_sweep_point_get(result.get(), i, j, &p));
      cells.push_back({p.nbar, p.omega_ratio, p.ok != 0, p.fidelity, p.chsh});
      if (!p.ok) {
        ++failures;
        err << "sweep point nbar=" << format_number(p.nbar)
            << " omega/kappa=" << format_number(p.omega_ratio) << " failed: " << p.error << "\n";
      } else if (p.fidelity > best) {
        best = p.fidelity;
        best_cell = cells.back();
      }
    }
  }

  SummaryLines lines{
      {"mode", "sweep"},
      {"points", std::to_string(cells.size())},
      {"failed_points", std::to_string(failures)},
  };
  if (best >= 0.0) {
    lines.emplace_back("best_fidelity", format_number(best_cell.fidelity));
    lines.emplace_back("best_chsh", format_number(best_cell.chsh));
    lines.emplace_back("best_nbar", format_number(best_cell.nbar));
    lines.emplace_back("best_omega_nbar_over_kappa", format_number(best_cell.omega_ratio));
  }
  append_config(lines, config);

  OutputBatch batch(config.out_dir);
  batch.add("sweep.csv", sweep_csv(cells));
  batch.add("summary.txt", summary_text(lines));
  if (config.emit_plots) {
    batch.add("sweep.svg", sweep_svg(config.sweep_nbar, config.sweep_omega_ratio, cells));
  }
  for (const auto& p : batch.commit()) out << "wrote " << p.string() << "\n";
  return failures == 0 ? kExitOk : kExitFailure;
}

int truncation(const RunConfig& config, std::ostream& out, std::ostream&) {
  bs_truncation* raw = nullptr;
  check(bs_run_truncation(&config.params, &config.evolution, config.truncation_ncav.data(),
                          config.truncation_ncav.size(), &raw));
  TruncationPtr study(raw);

  std::vector<bs_truncation_row> rows(bs_truncation_size(study.get()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    check(bs_truncation_row_get(study.get(), i, &rows[i]));
  }
  const bs_truncation_row* largest = nullptr;
  for (const auto& r : rows) {
    if (r.valid) largest = &r;
  }
  SummaryLines lines{{"mode", "truncation"}, {"rows", std::to_string(rows.size())}};
  if (largest) {
    double spread = 0.0;
    for (const auto& r : rows) {
      if (r.valid && !r.below_recommended) {
        spread = std::max(spread, std::abs(r.fidelity - largest->fidelity));
      }
    }
    lines.emplace_back("reference_ncav", std::to_string(largest->ncav));
    lines.emplace_back("reference_fidelity", format_number(largest->fidelity));
    lines.emplace_back("max_fidelity_change_recommended", format_number(spread));
  }
  append_config(lines, config);

  OutputBatch batch(config.out_dir);
  batch.add("truncation.csv", truncation_csv(rows));
  batch.add("summary.txt", summary_text(lines));
  for (const auto& p : batch.commit()) out << "wrote " << p.string() << "\n";
  for (const auto& r : rows) {
    out << "  ncav " << r.ncav << ": "
        << (r.valid ? "F=" + fixed(r.fidelity, 5) + " CHSH=" + fixed(r.chsh, 4) : "skipped")
        << (r.note && *r.note ? std::string(" (") + r.note + ")" : "") << "\n";
  }
  return kExitOk;
}

int oracles(const RunConfig& config, std::ostream& out, std::ostream&) {
  bs_oracle_report* raw = nullptr;
  check(bs_run_oracles(config.evolution.dt, &raw));
  OraclePtr report(raw);

  std::string text = "dt_us: " + format_number(config.evolution.dt) + "\n";
  for (std::size_t i = 0; i < bs_oracle_report_size(report.get()); ++i) {
    bs_oracle_entry e{};
    check(bs_oracle_report_get(report.get(), i, &e));
    text += std::string(e.passed ? "PASS " : "FAIL ") + e.name +
            ": error=" + format_number(e.error) + " tolerance=" + format_number(e.tolerance);
    if (e.detail && *e.detail) text += " (" + std::string(e.detail) + ")";
    text += "\n";
  }
  const bool all = bs_oracle_report_all_passed(report.get()) != 0;
  text += std::string("all_passed: ") + (all ? "true" : "false") + "\n";

  OutputBatch batch(config.out_dir);
  batch.add("oracles.txt", text);
  batch.commit();
  out << text;
  return all ? kExitOk : kExitFailure;
}

int validate(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const int failed = report_regime(config.params, out);
  out << "ncav: " << resolved_ncav(config.params) << "\n";
  if (failed > 0) err << "warning: " << failed << " regime check(s) not satisfied\n";
  return kExitOk;
}

}  // namespace

int run_command(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    switch (config.mode) {
      case Mode::Simulate:
        return simulate(config, out, err);
      case Mode::Sweep:
        return sweep(config, out, err);
      case Mode::Truncation:
        return truncation(config, out, err);
      case Mode::Oracles:
        return oracles(config, out, err);
      case Mode::Validate:
        return validate(config, out, err);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace bellstab::cli
