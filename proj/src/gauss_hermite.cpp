#include "dressline/gauss_hermite.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <string>

#include "dressline/core_model.hpp"

namespace dressline {
namespace {

// Orthonormal Hermite functions psi_k(x) = p_k(x) e^{-x^2/2}. The recurrence
// is bounded inside the oscillatory region, so large orders do not overflow.
struct HermitePair {
  double previous;  // psi_{n-1}
  double current;   // psi_n
};

class HermiteRecurrence {
 public:
  explicit HermiteRecurrence(std::size_t n) : n_(n), a_(n), b_(n) {
    for (std::size_t k = 1; k < n; ++k) {
      const double kk = static_cast<double>(k);
      a_[k] = std::sqrt(2.0 / (kk + 1.0));
      b_[k] = std::sqrt(kk / (kk + 1.0));
    }
  }

  std::size_t order() const noexcept { return n_; }

  HermitePair operator()(double x) const noexcept {
    double p0 = std::pow(constants::pi, -0.25) * std::exp(-0.5 * x * x);
    if (n_ == 0) return {0.0, p0};
    double p1 = std::sqrt(2.0) * x * p0;
    for (std::size_t k = 1; k < n_; ++k) {
      const double p2 = a_[k] * x * p1 - b_[k] * p0;
      p0 = p1;
      p1 = p2;
    }
    return {p0, p1};
  }

 private:
  std::size_t n_;
  std::vector<double> a_;
  std::vector<double> b_;
};

double refine_root(const HermiteRecurrence& psi, double lo, double hi) {
  const double sqrt_2n = std::sqrt(2.0 * static_cast<double>(psi.order()));
  double flo = psi(lo).current;
  double x = 0.5 * (lo + hi);
  for (int iter = 0; iter < 100; ++iter) {
    const HermitePair h = psi(x);
    // p_n' = sqrt(2n) p_{n-1}, and the Gaussian factor cancels in the ratio.
    const double step = h.current / (sqrt_2n * h.previous);
    if ((h.current < 0.0) == (flo < 0.0)) {
      lo = x;
      flo = h.current;
    } else {
      hi = x;
    }
    double next = x - step;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 1e-15 * std::max(1.0, std::abs(x))) {
      x = next;
      break;
    }
    x = next;
  }
  return x;
}

}  // namespace

GaussHermiteRule compute_gauss_hermite(std::size_t order, double prune_below) {
  if (order < 1) throw DomainError("Gauss-Hermite order must be >= 1");
  const double n = static_cast<double>(order);
  const double largest_root = std::sqrt(2.0 * n + 1.0);
  // Weights behave like e^{-x^2}; nothing beyond this radius survives pruning.
  const double prune_radius = std::sqrt(-std::log(prune_below)) + 1.5;
  const double radius = std::min(largest_root + 0.5, prune_radius);
  const bool complete = radius >= largest_root;

  // Smallest zero spacing is near the origin, ~ pi / sqrt(2n + 1).
  const double step = constants::pi / (8.0 * largest_root);
  GaussHermiteRule rule;
  rule.order = order;

  const HermiteRecurrence psi(order);
  const std::size_t samples = static_cast<std::size_t>(std::ceil(2.0 * radius / step)) + 1;
  double x_prev = -radius;
  double f_prev = psi(x_prev).current;
  for (std::size_t i = 1; i < samples; ++i) {
    const double x = std::min(radius, -radius + step * static_cast<double>(i));
    const double f = psi(x).current;
    if (f == 0.0) {
      rule.nodes.push_back(x);
    } else if ((f < 0.0) != (f_prev < 0.0) && f_prev != 0.0) {
      rule.nodes.push_back(refine_root(psi, x_prev, x));
    }
    x_prev = x;
    f_prev = f;
  }
  if (complete && rule.nodes.size() != order) {
    throw std::runtime_error("Gauss-Hermite: found " + std::to_string(rule.nodes.size()) + " of " +
                             std::to_string(order) + " roots");
  }

  rule.weights.reserve(rule.nodes.size());
  for (double x : rule.nodes) {
    const double below = psi(x).previous;
    rule.weights.push_back(std::exp(-x * x) / (n * below * below));
  }

  const double w_max = *std::max_element(rule.weights.begin(), rule.weights.end());
  std::vector<double> nodes;
  std::vector<double> weights;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    if (rule.weights[i] >= prune_below * w_max) {
      nodes.push_back(rule.nodes[i]);
      weights.push_back(rule.weights[i]);
    }
  }
  rule.pruned = nodes.size() != order;
  rule.nodes = std::move(nodes);
  rule.weights = std::move(weights);
  return rule;
}

std::shared_ptr<const GaussHermiteRule> gauss_hermite_rule(std::size_t order) {
  static std::mutex mutex;
  static std::map<std::size_t, std::shared_ptr<const GaussHermiteRule>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(order);
  if (it != cache.end()) return it->second;
  auto rule = std::make_shared<const GaussHermiteRule>(compute_gauss_hermite(order));
  cache.emplace(order, rule);
  return rule;
}

}  // namespace dressline
