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

#include "polqd/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace polqd {

namespace {

using Point = std::vector<double>;

struct Simplex {
  std::vector<Point> vertices;
  std::vector<double> values;

  void sort() {
    std::vector<std::size_t> order(vertices.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<Point> v;
    std::vector<double> f;
    for (auto i : order) {
      v.push_back(std::move(vertices[i]));
      f.push_back(values[i]);
    }
    vertices = std::move(v);
    values = std::move(f);
  }

  double spread() const { return values.back() - values.front(); }

  double size() const {
    double s = 0.0;
    for (std::size_t i = 1; i < vertices.size(); ++i) {
      for (std::size_t d = 0; d < vertices[i].size(); ++d) {
        s = std::max(s, std::abs(vertices[i][d] - vertices[0][d]));
      }
    }
    return s;
  }
};

Point affine(const Point& base, const Point& towards, double t) {
  Point out(base.size());
  for (std::size_t d = 0; d < base.size(); ++d) out[d] = base[d] + t * (towards[d] - base[d]);
  return out;
}

}  // namespace

SimplexResult nelder_mead(const Objective& f, std::vector<double> x0,
                          const SimplexOptions& opt) {
  if (x0.empty()) throw std::invalid_argument("nelder_mead needs at least one dimension");
  const std::size_t n = x0.size();

  SimplexResult result;
  auto eval = [&](const Point& x) {
    ++result.evaluations;
    const double v = f(x);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  };

  Point best = std::move(x0);
  double best_value = eval(best);

  for (int round = 0; round <= opt.restarts; ++round) {
    Simplex s;
    s.vertices.push_back(best);
    s.values.push_back(best_value);
    for (std::size_t d = 0; d < n; ++d) {
      Point v = best;
      v[d] += opt.initial_step;
      s.values.push_back(eval(v));
      s.vertices.push_back(std::move(v));
    }

    bool converged = false;
    while (result.iterations < opt.max_iterations) {
      s.sort();
      if (s.spread() <= opt.f_tol && s.size() <= opt.x_tol) {
        converged = true;
        break;
      }
      ++result.iterations;

      Point centroid(n, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t d = 0; d < n; ++d) centroid[d] += s.vertices[i][d] / double(n);
      }
      const Point& worst = s.vertices[n];
      const double f_worst = s.values[n];

      const Point reflected = affine(centroid, worst, -1.0);
      const double f_r = eval(reflected);
      if (f_r < s.values[0]) {
        const Point expanded = affine(centroid, worst, -2.0);
        const double f_e = eval(expanded);
        if (f_e < f_r) {
          s.vertices[n] = expanded;
          s.values[n] = f_e;
        } else {
          s.vertices[n] = reflected;
          s.values[n] = f_r;
        }
        continue;
      }
      if (f_r < s.values[n - 1]) {
        s.vertices[n] = reflected;
        s.values[n] = f_r;
        continue;
      }
      const bool outside = f_r < f_worst;
      const Point contracted = outside ? affine(centroid, reflected, 0.5)
                                       : affine(centroid, worst, 0.5);
      const double f_c = eval(contracted);
      if (f_c < (outside ? f_r : f_worst)) {
        s.vertices[n] = contracted;
        s.values[n] = f_c;
        continue;
      }
      for (std::size_t i = 1; i <= n; ++i) {
        s.vertices[i] = affine(s.vertices[0], s.vertices[i], 0.5);
        s.values[i] = eval(s.vertices[i]);
      }
    }
    s.sort();
    best = s.vertices[0];
    best_value = s.values[0];
    result.converged = converged;
    if (!converged) break;
  }

  result.x = std::move(best);
  result.value = best_value;
  return result;
}

}  // namespace polqd
