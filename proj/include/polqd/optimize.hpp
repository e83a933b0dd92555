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

#pragma once

#include <functional>
#include <span>
#include <vector>

namespace polqd {

using Objective = std::function<double(std::span<const double>)>;

struct SimplexOptions {
  int max_iterations = 2000;
  double f_tol = 1e-7;         // spread of simplex values
  double x_tol = 1e-6;         // largest vertex distance from the best vertex
  double initial_step = 0.3;   // edge length of the starting simplex
  int restarts = 1;            // fresh simplices built around the converged point
};

struct SimplexResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
};

/// Derivative-free Nelder-Mead descent (standard reflection 1, expansion 2,
/// contraction 1/2, shrink 1/2). Converges when both the value spread and the
/// simplex size fall below tolerance; each restart rebuilds an axis-aligned
/// simplex at the current best point.
SimplexResult nelder_mead(const Objective& f, std::vector<double> x0,
                          const SimplexOptions& opt = {});

}  // namespace polqd
