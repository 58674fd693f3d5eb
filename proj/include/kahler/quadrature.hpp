#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace kahler {

/// A numerical integral together with a heuristic (Richardson) bound on
/// its error. The bound is not certified.
struct QuadratureEstimate {
  double value = 0.0;
  double error_estimate = 0.0;
};

struct AdaptiveOptions {
  /// Absolute tolerance for the whole integral.
  double abs_tol = 1e-12;
  /// Relative tolerance against a coarse first estimate; the effective
  /// tolerance is max(abs_tol, rel_tol * |coarse|), or the min when
  /// `tightest` is set.
  double rel_tol = 0.0;
  bool tightest = false;
  /// Hard cap on accepted subintervals.
  std::size_t max_subintervals = std::size_t{1} << 20;
  /// Uniform panels before adaptive refinement begins.
  int initial_panels = 8;
  int max_depth = 60;
};

namespace detail {

template <std::size_t K>
using Values = std::array<double, K>;

template <std::size_t K>
struct SimpsonState {
  std::size_t accepted = 0;
  std::array<double, K> sum{};
  std::array<double, K> err{};
};

template <std::size_t K>
Values<K> simpson(double h, const Values<K>& fa, const Values<K>& fm,
                  const Values<K>& fb) {
  Values<K> out{};
  for (std::size_t i = 0; i < K; ++i) out[i] = h / 6.0 * (fa[i] + 4.0 * fm[i] + fb[i]);
  return out;
}

template <std::size_t K, class F>
void simpson_refine(const F& f, double a, double b, const Values<K>& fa,
                    const Values<K>& fm, const Values<K>& fb,
                    const Values<K>& whole, const Values<K>& tol, int depth,
                    const AdaptiveOptions& opts, SimpsonState<K>& state) {
  const double mid = 0.5 * (a + b);
  const double lm = 0.5 * (a + mid);
  const double rm = 0.5 * (mid + b);
  const Values<K> flm = f(lm);
  const Values<K> frm = f(rm);
  const Values<K> left = simpson<K>(mid - a, fa, flm, fm);
  const Values<K> right = simpson<K>(b - mid, fm, frm, fb);

  bool converged = true;
  Values<K> diff{};
  for (std::size_t i = 0; i < K; ++i) {
    diff[i] = left[i] + right[i] - whole[i];
    if (!(std::abs(diff[i]) <= 15.0 * tol[i])) converged = false;
  }
  const bool exhausted =
      depth >= opts.max_depth || state.accepted + 2 > opts.max_subintervals;
  if (converged || exhausted) {
    for (std::size_t i = 0; i < K; ++i) {
      state.sum[i] += left[i] + right[i] + diff[i] / 15.0;
      state.err[i] += std::abs(diff[i]) / 15.0;
    }
    state.accepted += 2;
    return;
  }
  Values<K> half_tol{};
  for (std::size_t i = 0; i < K; ++i) half_tol[i] = 0.5 * tol[i];
  simpson_refine<K>(f, a, mid, fa, flm, fm, left, half_tol, depth + 1, opts,
                    state);
  simpson_refine<K>(f, mid, b, fm, frm, fb, right, half_tol, depth + 1, opts,
                    state);
}

}  // namespace detail

/// Adaptive composite Simpson rule with Richardson extrapolation for K
/// integrands sharing nodes. `f(x)` returns std::array<double, K>. An
/// interval is accepted only when every component meets its tolerance.
template <std::size_t K, class F>
std::array<QuadratureEstimate, K> integrate_adaptive(
    const F& f, double a, double b, const AdaptiveOptions& opts = {}) {
  std::array<QuadratureEstimate, K> out{};
  if (a == b) return out;
  const int panels = opts.initial_panels < 1 ? 1 : opts.initial_panels;
  const double width = (b - a) / panels;

  struct Panel {
    double lo, hi;
    detail::Values<K> flo, fmid, fhi, whole;
  };
  std::vector<Panel> grid;
  grid.reserve(static_cast<std::size_t>(panels));
  detail::Values<K> coarse{};
  detail::Values<K> f_prev = f(a);
  for (int i = 0; i < panels; ++i) {
    const double lo = a + width * i;
    const double hi = (i + 1 == panels) ? b : a + width * (i + 1);
    Panel panel{lo, hi, f_prev, f(0.5 * (lo + hi)), f(hi), {}};
    panel.whole = detail::simpson<K>(hi - lo, panel.flo, panel.fmid, panel.fhi);
    for (std::size_t c = 0; c < K; ++c) coarse[c] += panel.whole[c];
    f_prev = panel.fhi;
    grid.push_back(panel);
  }

  detail::SimpsonState<K> state;
  for (const Panel& panel : grid) {
    detail::Values<K> tol{};
    const double share = (panel.hi - panel.lo) / (b - a);
    for (std::size_t c = 0; c < K; ++c) {
      const double scaled = opts.rel_tol * std::abs(coarse[c]);
      const double total = opts.tightest ? std::min(opts.abs_tol, scaled)
                                         : std::max(opts.abs_tol, scaled);
      tol[c] = total * std::abs(share);
    }
    detail::simpson_refine<K>(f, panel.lo, panel.hi, panel.flo, panel.fmid,
                              panel.fhi, panel.whole, tol, 0, opts, state);
  }
  for (std::size_t c = 0; c < K; ++c) {
    out[c] = {state.sum[c], state.err[c]};
  }
  return out;
}

/// Scalar convenience wrapper.
QuadratureEstimate integrate_adaptive(const std::function<double(double)>& f,
                                      double a, double b,
                                      const AdaptiveOptions& opts = {});

/// Gauss–Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  static GaussLegendreRule make(int order);
  std::size_t size() const noexcept { return nodes.size(); }
};

}  // namespace kahler
