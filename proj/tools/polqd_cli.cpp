// Copyright 2026 The polqd Authors
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

// Runs one scenario and writes its CSV to --out (or stdout).
//
// Exit codes: 0 success, 1 I/O or internal failure, 2 invalid spec,
// 3 physics guard violation during integration.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "polqd/scenarios.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Global quantum discord in a dissipative three-cavity polariton chain"};

  std::optional<std::string> config_path;
  app.add_option("--config", config_path, "key = value file; flags override it");

  // Flag name -> value, applied in this order after the config file.
  const char* keys[] = {"scenario", "alpha", "points", "c1",    "c2",     "c3",
                        "middle",   "site",  "tcav-us", "j-over-g", "g",  "dt",
                        "tmax",     "stride", "crossing-tol", "starts", "grid", "seed",
                        "out"};
  std::map<std::string, std::optional<std::string>> flags;
  for (const char* k : keys) {
    flags[k];
    app.add_option(std::string("--") + k, flags[k]);
  }
  app.get_option("--scenario")
      ->description("alpha_sweep | mgqd_trajectory | single_excitation | sudden_transition");
  app.get_option("--middle")->description("initial level of site 2 for sudden_transition (E|G)");
  app.get_option("--tcav-us")->description("cavity photon lifetime in microseconds");
  app.get_option("--out")->description("CSV output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  polqd::ScenarioSpec spec;
  try {
    if (config_path) polqd::apply_config_file(spec, *config_path);
    for (const char* k : keys) {
      if (flags[k]) polqd::apply_setting(spec, k, *flags[k]);
    }
    spec.validate();
  } catch (const polqd::DomainError& e) {
    std::cerr << "invalid scenario: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  polqd::ScenarioOutput result;
  try {
    result = polqd::run_scenario(spec);
  } catch (const polqd::GuardViolation& e) {
    std::cerr << "guard violation at tau=" << e.tau() << ": " << e.what() << '\n';
    return 3;
  } catch (const polqd::DomainError& e) {
    std::cerr << "invalid scenario: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  if (spec.output_path.empty()) {
    polqd::write_csv(std::cout, spec.kind, result.records);
  } else {
    std::ofstream out(spec.output_path, std::ios::binary);
    if (!out) {
      std::cerr << "cannot open " << spec.output_path << " for writing\n";
      return 1;
    }
    polqd::write_csv(out, spec.kind, result.records);
    if (!out.flush()) {
      std::cerr << "write to " << spec.output_path << " failed\n";
      return 1;
    }
  }

  for (double t : result.crossing_times) std::cerr << "probability crossing at tau=" << t << '\n';
  if (result.first_gqd_maximum) {
    std::cerr << "first gqd_123 maximum at tau=" << *result.first_gqd_maximum << '\n';
  }
  return 0;
}
