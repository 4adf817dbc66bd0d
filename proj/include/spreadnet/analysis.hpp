#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "spreadnet/common.hpp"

namespace spreadnet {

namespace detail {

inline void check_pair(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ParameterError("vectors must have equal length");
  if (x.size() < 3) throw DegenerateInput("need at least 3 pairs");
}

/// Fractional ranks (1-based; ties share the average of their positions).
inline std::vector<double> fractional_ranks(std::span<const double> x) {
  const std::size_t n = x.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> rank(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && x[order[j + 1]] == x[order[i]]) ++j;
    const double shared = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) rank[order[k]] = shared;
    i = j + 1;
  }
  return rank;
}

/// Counts strict inversions of y (pairs earlier > later) by merge sort.
inline std::uint64_t merge_count_inversions(std::vector<double>& y, std::vector<double>& tmp,
                                            std::size_t lo, std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::uint64_t inv = merge_count_inversions(y, tmp, lo, mid) + merge_count_inversions(y, tmp, mid, hi);
  std::size_t a = lo, b = mid, out = lo;
  while (a < mid && b < hi) {
    if (y[b] < y[a]) {  // strict: equal values are not discordant
      inv += mid - a;
      tmp[out++] = y[b++];
    } else {
      tmp[out++] = y[a++];
    }
  }
  while (a < mid) tmp[out++] = y[a++];
  while (b < hi) tmp[out++] = y[b++];
  std::copy(tmp.begin() + static_cast<std::ptrdiff_t>(lo), tmp.begin() + static_cast<std::ptrdiff_t>(hi),
            y.begin() + static_cast<std::ptrdiff_t>(lo));
  return inv;
}

}  // namespace detail

inline double pearson(std::span<const double> x, std::span<const double> y) {
  detail::check_pair(x, y);
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double cov = 0, vx = 0, vy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    cov += dx * dy;
    vx += dx * dx;
    vy += dy * dy;
  }
  if (vx == 0.0 || vy == 0.0) throw DegenerateInput("zero variance input");
  return cov / std::sqrt(vx * vy);
}

/// Pearson correlation of fractional ranks.
inline double spearman(std::span<const double> x, std::span<const double> y) {
  detail::check_pair(x, y);
  const auto rx = detail::fractional_ranks(x);
  const auto ry = detail::fractional_ranks(y);
  return pearson(rx, ry);
}

/// Kendall tau-b with the O(n log n) merge-sort inversion count:
///   tau_b = (P - Q) / sqrt((n0 - tx) (n0 - ty))
/// where n0 = n(n-1)/2 and tx, ty count tied pairs within x and y.
inline double kendall(std::span<const double> x, std::span<const double> y) {
  detail::check_pair(x, y);
  const std::size_t n = x.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (x[a] != x[b]) return x[a] < x[b];
    return y[a] < y[b];
  });

  const auto pairs = [](std::uint64_t t) { return t * (t - 1) / 2; };
  const std::uint64_t total = pairs(n);

  std::uint64_t tie_x = 0, tie_xy = 0;
  {
    std::size_t i = 0;
    while (i < n) {
      std::size_t j = i;
      while (j + 1 < n && x[order[j + 1]] == x[order[i]]) ++j;
      tie_x += pairs(j - i + 1);
      std::size_t a = i;
      while (a <= j) {
        std::size_t b = a;
        while (b + 1 <= j && y[order[b + 1]] == y[order[a]]) ++b;
        tie_xy += pairs(b - a + 1);
        a = b + 1;
      }
      i = j + 1;
    }
  }
  std::uint64_t tie_y = 0;
  {
    std::vector<double> ys(y.begin(), y.end());
    std::sort(ys.begin(), ys.end());
    std::size_t i = 0;
    while (i < n) {
      std::size_t j = i;
      while (j + 1 < n && ys[j + 1] == ys[i]) ++j;
      tie_y += pairs(j - i + 1);
      i = j + 1;
    }
  }

  std::vector<double> y_seq(n), tmp(n);
  for (std::size_t i = 0; i < n; ++i) y_seq[i] = y[order[i]];
  const std::uint64_t discordant = detail::merge_count_inversions(y_seq, tmp, 0, n);

  if (tie_x == total || tie_y == total) throw DegenerateInput("zero variance input");
  // total - tie_x - tie_y + tie_xy = concordant + discordant
  const double net = static_cast<double>(total - tie_x - tie_y + tie_xy) -
                     2.0 * static_cast<double>(discordant);
  return net / (std::sqrt(static_cast<double>(total - tie_x)) *
                std::sqrt(static_cast<double>(total - tie_y)));
}

/// Overlap fraction between the top-m entries of two score vectors, where
/// m = max(1, floor(fraction * n)). Boundary ties are resolved by ascending
/// index, so the result is deterministic.
inline double top_fraction_precision(std::span<const double> a, std::span<const double> b,
                                     double fraction) {
  if (a.size() != b.size()) throw ParameterError("vectors must have equal length");
  if (a.empty()) throw ParameterError("empty input");
  if (!(fraction > 0.0 && fraction <= 1.0)) throw ParameterError("fraction must be in (0, 1]");
  const std::size_t n = a.size();
  const std::size_t m =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(fraction * static_cast<double>(n))));

  const auto top_set = [m, n](std::span<const double> v) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t p, std::size_t q) {
      if (v[p] != v[q]) return v[p] > v[q];
      return p < q;
    });
    order.resize(m);
    std::sort(order.begin(), order.end());
    return order;
  };
  const auto ta = top_set(a);
  const auto tb = top_set(b);
  std::vector<std::size_t> common;
  std::set_intersection(ta.begin(), ta.end(), tb.begin(), tb.end(), std::back_inserter(common));
  return static_cast<double>(common.size()) / static_cast<double>(m);
}

/// The four association measures used throughout the experiments, computed
/// on the pairs where both inputs are finite.
struct AssociationReport {
  double pearson_r = 0.0;
  double spearman_rho = 0.0;
  double kendall_tau = 0.0;
  double top_precision = 0.0;
  std::size_t n_pairs = 0;
};

inline AssociationReport associate(std::span<const double> x, std::span<const double> y,
                                   double top_fraction = 0.1) {
  if (x.size() != y.size()) throw ParameterError("vectors must have equal length");
  std::vector<double> xs, ys;
  xs.reserve(x.size());
  ys.reserve(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (std::isfinite(x[i]) && std::isfinite(y[i])) {
      xs.push_back(x[i]);
      ys.push_back(y[i]);
    }
  }
  AssociationReport r;
  r.n_pairs = xs.size();
  r.pearson_r = pearson(xs, ys);
  r.spearman_rho = spearman(xs, ys);
  r.kendall_tau = kendall(xs, ys);
  r.top_precision = top_fraction_precision(xs, ys, top_fraction);
  return r;
}

}  // namespace spreadnet
