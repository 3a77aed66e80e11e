#pragma once

#include <cstddef>
#include <memory>
#include <vector>

namespace dressline {

// Nodes and weights for \int f(t) e^{-t^2} dt ~ sum_i w_i f(t_i).
//
// For large orders only the nodes whose weight exceeds `prune_below` times the
// largest weight are kept; the dropped weight mass is below ~1e-18 of sqrt(pi)
// for the default threshold, so bounded integrands lose nothing measurable.
struct GaussHermiteRule {
  std::size_t order = 0;
  std::vector<double> nodes;
  std::vector<double> weights;
  bool pruned = false;
};

inline constexpr double gauss_hermite_default_prune = 1e-20;

GaussHermiteRule compute_gauss_hermite(std::size_t order, double prune_below = gauss_hermite_default_prune);

// Shared, memoised rule (thread-safe). Computing an order-16000 rule takes a
// fraction of a second, so callers in loops should use this.
std::shared_ptr<const GaussHermiteRule> gauss_hermite_rule(std::size_t order);

}  // namespace dressline
