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

#include <cmath>
#include <cstring>
#include <string>

#include "bellstab/bellstab.h"
#include "doctest.h"

TEST_CASE("version and status strings") {
  CHECK(std::strlen(bs_version()) > 0);
  CHECK(std::string(bs_status_string(BS_OK)) == "ok");
  CHECK(std::string(bs_status_string(BS_INVALID_PARAMS)).size() > 0);
}

TEST_CASE("reference parameters round trip through validation") {
  bs_params p{};
  REQUIRE(bs_params_reference(&p) == BS_OK);
  CHECK(p.chi_a == doctest::Approx(2 * M_PI * 10));
  CHECK(p.ncav == 0);
  CHECK(p.epsilon_c_set == 0);
  CHECK(bs_params_validate(&p) == BS_OK);

  p.t2_a = 200.0;
  CHECK(bs_params_validate(&p) == BS_INVALID_PARAMS);
  CHECK(std::string(bs_last_error()).find("T2_A <= 2 T1_A") != std::string::npos);
  CHECK(bs_params_validate(nullptr) == BS_INVALID_ARGUMENT);
}

TEST_CASE("scalar helpers") {
  bs_params p{};
  bs_params_reference(&p);
  double r = 0.0;
  REQUIRE(bs_validity_ratio(&p, &r) == BS_OK);
  CHECK(r == doctest::Approx(4.0 / 190.0).epsilon(1e-12));

  double chi = 0.0;
  int degraded = -1;
  REQUIRE(bs_dispersive_shift(2 * M_PI * 100, 2 * M_PI * 1000, &chi, &degraded) == BS_OK);
  CHECK(chi == doctest::Approx(2 * M_PI * 20));
  CHECK(degraded == 0);
  CHECK(bs_dispersive_shift(1.0, 0.0, &chi, &degraded) == BS_INVALID_ARGUMENT);

  double eps = 0.0;
  CHECK(bs_epsilon_c_default(p.kappa, 4.0, &eps) == BS_OK);
  CHECK(eps == doctest::Approx(p.kappa));
  CHECK(bs_epsilon_c_default(p.kappa, -1.0, &eps) == BS_INVALID_ARGUMENT);

  int n = 0;
  CHECK(bs_min_ncav(4.0, &n) == BS_OK);
  CHECK(n == 14);
  CHECK(bs_default_ncav(4.0, &n) == BS_OK);
  CHECK(n == 16);
}

TEST_CASE("regime report") {
  bs_params p{};
  bs_params_reference(&p);
  bs_regime_report* report = nullptr;
  REQUIRE(bs_regime_checks(&p, &report) == BS_OK);
  REQUIRE(bs_regime_report_size(report) == 7);
  for (size_t i = 0; i < bs_regime_report_size(report); ++i) {
    bs_regime_check c{};
    REQUIRE(bs_regime_report_get(report, i, &c) == BS_OK);
    CHECK(c.passed);
    CHECK(std::strlen(c.name) > 0);
  }
  bs_regime_check c{};
  CHECK(bs_regime_report_get(report, 7, &c) == BS_INVALID_ARGUMENT);
  bs_regime_report_free(report);
  bs_regime_report_free(nullptr);
}

TEST_CASE("time series handle") {
  bs_params p{};
  bs_params_reference(&p);
  bs_evolution evo{};
  REQUIRE(bs_evolution_default(&evo) == BS_OK);
  CHECK(evo.dt == 0.0002);
  evo.t_final = 0.2;
  evo.record_every = 100;

  bs_timeseries* ts = nullptr;
  REQUIRE(bs_run_time_series(&p, &evo, BS_INITIAL_GG0, &ts) == BS_OK);
  REQUIRE(bs_timeseries_size(ts) == 11);
  bs_record rec{};
  REQUIRE(bs_timeseries_record(ts, 10, &rec) == BS_OK);
  CHECK(rec.t == doctest::Approx(0.2));
  CHECK(std::abs(rec.p_gg + rec.p_ee + rec.p_odd - 1.0) < 1e-8);
  CHECK(bs_timeseries_record(ts, 11, &rec) == BS_INVALID_ARGUMENT);
  bs_steady_state steady{};
  CHECK(bs_timeseries_steady(ts, &steady) == BS_OK);
  CHECK(steady.samples == 3);
  bs_invariants inv{};
  CHECK(bs_timeseries_invariants(ts, &inv) == BS_OK);
  CHECK(inv.max_trace_deviation < 1e-8);
  bs_timeseries_free(ts);

  p.ncav = 8;
  ts = reinterpret_cast<bs_timeseries*>(0x1);
  CHECK(bs_run_time_series(&p, &evo, BS_INITIAL_GG0, &ts) == BS_INVALID_PARAMS);
  CHECK(ts == nullptr);
}

TEST_CASE("sweep handle") {
  bs_params p{};
  bs_params_reference(&p);
  bs_evolution evo{};
  bs_evolution_default(&evo);
  evo.t_final = 0.1;
  evo.record_every = 100;
  const double nbar[] = {1.0, 2.0};
  const double omega[] = {1.0};
  bs_sweep* sweep = nullptr;
  REQUIRE(bs_run_sweep(&p, &evo, nbar, 2, omega, 1, 1, &sweep) == BS_OK);
  CHECK(bs_sweep_nbar_count(sweep) == 2);
  CHECK(bs_sweep_omega_count(sweep) == 1);
  bs_sweep_point pt{};
  REQUIRE(bs_sweep_point_get(sweep, 1, 0, &pt) == BS_OK);
  CHECK(pt.nbar == 2.0);
  CHECK(pt.ok);
  CHECK(std::string(pt.error).empty());
  CHECK(bs_sweep_point_get(sweep, 2, 0, &pt) == BS_INVALID_ARGUMENT);
  bs_sweep_free(sweep);
  CHECK(bs_run_sweep(&p, &evo, nbar, 0, omega, 1, 1, &sweep) == BS_INVALID_ARGUMENT);
}

TEST_CASE("truncation handle") {
  bs_params p{};
  bs_params_reference(&p);
  bs_evolution evo{};
  bs_evolution_default(&evo);
  evo.t_final = 0.05;
  evo.record_every = 50;
  const int ncav[] = {4, 14};
  bs_truncation* study = nullptr;
  REQUIRE(bs_run_truncation(&p, &evo, ncav, 2, &study) == BS_OK);
  REQUIRE(bs_truncation_size(study) == 2);
  bs_truncation_row row{};
  REQUIRE(bs_truncation_row_get(study, 0, &row) == BS_OK);
  CHECK(row.valid == 0);
  CHECK(std::strlen(row.note) > 0);
  REQUIRE(bs_truncation_row_get(study, 1, &row) == BS_OK);
  CHECK(row.valid == 1);
  bs_truncation_free(study);
}

TEST_CASE("oracle handle") {
  bs_oracle_report* report = nullptr;
  REQUIRE(bs_run_oracles(0.0002, &report) == BS_OK);
  CHECK(bs_oracle_report_size(report) == 7);
  CHECK(bs_oracle_report_all_passed(report) == 1);
  bs_oracle_entry e{};
  REQUIRE(bs_oracle_report_get(report, 0, &e) == BS_OK);
  CHECK(std::string(e.name) == "t1_decay");
  bs_oracle_report_free(report);
  CHECK(bs_run_oracles(-1.0, &report) == BS_INVALID_ARGUMENT);
}
