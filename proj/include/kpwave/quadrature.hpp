#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <vector>

#include "kpwave/error.hpp"

namespace kpwave {

struct GaussLegendreRule {
  std::vector<double> nodes;    // on [-1, 1], ascending
  std::vector<double> weights;
};

// n-point Gauss-Legendre rule. Rules are computed once per n and cached.
std::shared_ptr<const GaussLegendreRule> gauss_legendre(int n);

struct QuadratureOptions {
  double rel_tol = 1e-12;
  int initial_nodes = 16;
  int max_nodes = 8192;
};

// Integrates a vector-valued integrand on [lo, hi], doubling the node count
// until every component changes by less than rel_tol relative to the largest
// component magnitude. Throws QuadratureNotConverged.
template <std::size_t K, class F>
std::array<double, K> integrate_doubling(F&& f, double lo, double hi,
                                         const QuadratureOptions& opt = {},
                                         int* nodes_used = nullptr) {
  const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
  auto apply = [&](int n) {
    const auto rule = gauss_legendre(n);
    std::array<double, K> acc{};
    for (std::size_t i = 0; i < rule->nodes.size(); ++i) {
      const std::array<double, K> v = f(mid + half * rule->nodes[i]);
      for (std::size_t k = 0; k < K; ++k) acc[k] += rule->weights[i] * v[k];
    }
    for (double& a : acc) a *= half;
    return acc;
  };
  int n = opt.initial_nodes;
  std::array<double, K> prev = apply(n);
  while (n < opt.max_nodes) {
    n *= 2;
    const std::array<double, K> cur = apply(n);
    double scale = 0.0, diff = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
      scale = std::max(scale, std::abs(cur[k]));
      diff = std::max(diff, std::abs(cur[k] - prev[k]));
    }
    if (diff <= opt.rel_tol * scale) {
      if (nodes_used) *nodes_used = n;
      return cur;
    }
    prev = cur;
  }
  throw Error(ErrorCode::QuadratureNotConverged,
              "no convergence with " + std::to_string(opt.max_nodes) + " nodes");
}

}  // namespace kpwave
