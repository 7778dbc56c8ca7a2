#include "mincorr/quadrature.hpp"

#include <array>
#include <cmath>
#include <queue>
#include <vector>

namespace mincorr {
namespace {

// Kronrod 15-point abscissae (non-negative half) and weights; the odd
// entries are the embedded 7-point Gauss abscissae.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Interval {
  double lo;
  double hi;
  double value;
  double error;
  int depth;

  bool operator<(const Interval& other) const { return error < other.error; }
};

// g is evaluated on t in (0, 1/2], t being the distance to the endpoint.
template <typename G>
Interval gauss_kronrod(const G& g, double lo, double hi, int depth) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double f_center = g(center);
  double kronrod = f_center * kKronrodWeights[7];
  double gauss = f_center * kGaussWeights[3];
  for (std::size_t i = 0; i < 7; ++i) {
    const double dx = half * kNodes[i];
    const double pair = g(center - dx) + g(center + dx);
    kronrod += kKronrodWeights[i] * pair;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
  }
  kronrod *= half;
  gauss *= half;
  double error = std::abs(kronrod - gauss);
  if (!std::isfinite(kronrod)) error = INFINITY;
  return {lo, hi, kronrod, error, depth};
}

}  // namespace

QuadratureResult integrate_unit_interval(const UnitIntegrand& f,
                                         const QuadratureOptions& options) {
  QuadratureResult result;
  std::size_t evaluations = 0;

  auto left = [&](double t) {
    ++evaluations;
    return f(t, 1.0 - t);
  };
  auto right = [&](double t) {
    ++evaluations;
    return f(1.0 - t, t);
  };

  // Each half is integrated as a function of the endpoint distance t.
  std::priority_queue<Interval> open_left;
  std::priority_queue<Interval> open_right;
  std::vector<Interval> frozen;
  double total = 0.0;
  double total_error = 0.0;

  auto seed = [&](auto& g, auto& queue) {
    double hi = 0.5;
    for (int j = 1; j <= options.endpoint_levels; ++j) {
      const double lo = std::ldexp(1.0, -(j + 1));
      queue.push(gauss_kronrod(g, lo, hi, 0));
      hi = lo;
    }
    queue.push(gauss_kronrod(g, 0.0, hi, 0));
  };
  seed(left, open_left);
  seed(right, open_right);

  auto accumulate = [&]() {
    total = 0.0;
    total_error = 0.0;
    for (auto* q : {&open_left, &open_right}) {
      auto copy = *q;
      while (!copy.empty()) {
        total += copy.top().value;
        total_error += copy.top().error;
        copy.pop();
      }
    }
    for (const auto& iv : frozen) {
      total += iv.value;
      total_error += iv.error;
    }
  };
  accumulate();

  std::size_t intervals = open_left.size() + open_right.size();
  while (total_error > options.abs_tol && intervals < options.max_intervals) {
    const bool take_left =
        !open_left.empty() &&
        (open_right.empty() || open_left.top().error >= open_right.top().error);
    auto& queue = take_left ? open_left : open_right;
    if (queue.empty()) break;
    const Interval worst = queue.top();
    queue.pop();
    if (worst.depth >= options.max_refinement) {
      frozen.push_back(worst);
      continue;
    }
    const double mid = 0.5 * (worst.lo + worst.hi);
    const Interval a = take_left ? gauss_kronrod(left, worst.lo, mid, worst.depth + 1)
                                 : gauss_kronrod(right, worst.lo, mid, worst.depth + 1);
    const Interval b = take_left ? gauss_kronrod(left, mid, worst.hi, worst.depth + 1)
                                 : gauss_kronrod(right, mid, worst.hi, worst.depth + 1);
    total += a.value + b.value - worst.value;
    total_error += a.error + b.error - worst.error;
    queue.push(a);
    queue.push(b);
    ++intervals;
    // Incremental sums drift; rebuild them from scratch now and then.
    if (intervals % 4096 == 0) accumulate();
  }
  accumulate();

  result.value = total;
  result.abs_error = total_error;
  result.evaluations = evaluations;
  result.converged = std::isfinite(total) && total_error <= options.abs_tol;
  return result;
}

}  // namespace mincorr
