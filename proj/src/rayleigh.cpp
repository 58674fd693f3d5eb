#include "kahler/rayleigh.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "kahler/errors.hpp"

namespace kahler {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kScanPoints = 2048;

void check_theta(double theta) {
  if (!std::isfinite(theta) || theta < 0.0 || theta > kPi) {
    throw DomainError("theta must lie in [0, pi]");
  }
}

void check_m_d(int m, double d) {
  if (m < 2) throw DomainError("m must be >= 2");
  if (!std::isfinite(d) || !(d > 0.0) || d > kPi) {
    throw DomainError("d must lie in (0, pi]");
  }
}

// s^e, through logs once the exponent is large enough to underflow.
double power_of_sine(double s, int e, int n) {
  if (e == 0) return 1.0;
  if (n > 300) return s > 0.0 ? std::exp(e * std::log(s)) : 0.0;
  return std::pow(s, e);
}

double recurrence_forward(int n, double theta, double s, double c) {
  double prev = (n % 2 == 0) ? theta : 2.0 * std::pow(std::sin(0.5 * theta), 2);
  for (int k = (n % 2 == 0) ? 2 : 3; k <= n; k += 2) {
    prev = ((k - 1) * prev - power_of_sine(s, k - 1, n) * c) / k;
  }
  return prev;
}

// J_k = I_k / s^{k+1} obeys J_{k-2} = (k s^2 J_k + c)/(k-1); errors in a
// seed at N shrink like s^{N-n}, so a zero seed far enough up is exact.
double recurrence_backward(int n, double s, double c, long long extra) {
  const double q = s * s;
  double j = 0.0;
  for (long long k = n + 2 * extra; k >= n + 2; k -= 2) {
    j = (static_cast<double>(k) * q * j + c) / static_cast<double>(k - 1);
  }
  return j * std::exp((n + 1) * std::log(s));
}

// Integrands scaled by sin^{2m-1}(d/2) so neither part underflows.
std::array<QuadratureEstimate, 2> scaled_parts(int m, double d) {
  const int n = 2 * m - 1;
  const double half = 0.5 * d;
  const double s_half = std::sin(half);
  auto f = [&](double r) {
    const double w = std::pow(std::sin(r) / s_half, n);
    const double t = std::sin(kPi * r / d);
    return std::array<double, 2>{t * t * w, (1.0 - t * t) * w};
  };
  AdaptiveOptions opts;
  opts.abs_tol = 1e-12;
  opts.rel_tol = 1e-12;
  opts.tightest = true;
  return integrate_adaptive<2>(f, 0.0, half, opts);
}

// Fixed high-order Gauss–Legendre version of the scaled parts; the
// integrands are entire, so this matches the adaptive rule to roundoff at a
// fraction of the cost. Used only to locate sign changes.
double scan_margin(int m, double d) {
  static const GaussLegendreRule rule = GaussLegendreRule::make(160);
  const int n = 2 * m - 1;
  const double half = 0.5 * d;
  const double s_half = std::sin(half);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double r = 0.5 * half * (rule.nodes[i] + 1.0);
    const double w = rule.weights[i] * std::pow(std::sin(r) / s_half, n);
    const double t = std::sin(kPi * r / d);
    num += t * t * w;
    den += (1.0 - t * t) * w;
  }
  const double scale = kPi / d;
  return scale * scale * num / den - 2.0 * (2.0 * m - 1.0);
}

double ratio_from(const std::array<QuadratureEstimate, 2>& parts) {
  if (!(parts[1].value >= 1e-300)) {
    throw DegenerateDomainError("denominator integral vanishes");
  }
  return parts[0].value / parts[1].value;
}

// cos x - 1 + x^2/2 and x - sin x without cancellation for small x.
double cos_lower_slack(double x) {
  if (std::abs(x) < 1e-2) {
    const double x2 = x * x;
    return x2 * x2 * (1.0 / 24.0 - x2 * (1.0 / 720.0 - x2 / 40320.0));
  }
  return std::cos(x) - 1.0 + 0.5 * x * x;
}

double sin_upper_slack(double x) {
  if (std::abs(x) < 1e-2) {
    const double x2 = x * x;
    return x * x2 * (1.0 / 6.0 - x2 * (1.0 / 120.0 - x2 / 5040.0));
  }
  return x - std::sin(x);
}

ChainStep step(std::string name, double lhs, std::string relation, double rhs) {
  bool pass = false;
  if (relation == ">=") pass = lhs >= rhs;
  else if (relation == "<=") pass = lhs <= rhs;
  else if (relation == ">") pass = lhs > rhs;
  else if (relation == "<") pass = lhs < rhs;
  return {std::move(name), lhs, std::move(relation), rhs, pass};
}

}  // namespace

QuadratureEstimate sin_power_integral(int n, double theta,
                                      IntegralBackend backend) {
  if (n < 0) throw DomainError("n must be >= 0");
  check_theta(theta);
  if (theta == 0.0) return {0.0, 0.0};
  if (n == 0) return {theta, 0.0};

  if (backend == IntegralBackend::Quadrature) {
    auto f = [n](double r) {
      return std::array<double, 1>{power_of_sine(std::sin(r), n, n)};
    };
    AdaptiveOptions opts;
    opts.abs_tol = 0.0;
    opts.rel_tol = 1e-13;
    return integrate_adaptive<1>(f, 0.0, theta, opts)[0];
  }

  if (n == 1) {
    const double v = 2.0 * std::pow(std::sin(0.5 * theta), 2);
    return {v, kEps * v};
  }
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  double value = 0.0;
  if (c <= 0.0 || s == 0.0) {
    value = recurrence_forward(n, theta, s, c);
  } else {
    const double decay = -std::log(s * s);
    const double steps = decay > 0.0 ? std::ceil(39.0 / decay) : 1e300;
    if (steps > 2e6) {
      value = recurrence_forward(n, theta, s, c);
    } else {
      value = recurrence_backward(n, s, c, static_cast<long long>(steps));
    }
  }
  return {value, 4.0 * kEps * (n + 1) * std::abs(value)};
}

mpq_class wallis_factor(int m) {
  if (m < 1) throw DomainError("m must be >= 1");
  mpz_class num = 1;
  mpz_class den = 1;
  mpz_class two_pow = 1;
  mpz_class m_fact = 1;
  for (int i = 1; i <= m; ++i) {
    m_fact *= i;
    two_pow *= 4;
  }
  for (int i = 1; i <= 2 * m + 1; ++i) den *= i;
  num = two_pow * m_fact * m_fact;
  mpq_class out(num, den);
  out.canonicalize();
  return out;
}

StirlingCheck stirling_check(int n) {
  if (n < 1) throw DomainError("n must be >= 1");
  const double ln_n = std::log(static_cast<double>(n));
  const double core = n * ln_n - n + 0.5 * ln_n;
  return {n, 0.5 * std::log(2.0 * kPi) + core, std::lgamma(n + 1.0), 1.0 + core};
}

RayleighParts rayleigh_parts(int m, double d) {
  check_m_d(m, d);
  const auto parts = scaled_parts(m, d);
  const double scale = std::pow(std::sin(0.5 * d), 2 * m - 1);
  return {{parts[0].value * scale, parts[0].error_estimate * scale},
          {parts[1].value * scale, parts[1].error_estimate * scale}};
}

QuadratureEstimate rayleigh_ratio(int m, double d) {
  check_m_d(m, d);
  const auto parts = scaled_parts(m, d);
  const double ratio = ratio_from(parts);
  const double rel = parts[0].error_estimate / std::abs(parts[0].value) +
                     parts[1].error_estimate / parts[1].value;
  return {ratio, std::abs(ratio) * (std::isfinite(rel) ? rel : 0.0)};
}

double prop_p_margin(int m, double d) {
  const double ratio = rayleigh_ratio(m, d).value;
  const double scale = kPi / d;
  return scale * scale * ratio - 2.0 * (2.0 * m - 1.0);
}

RayleighSolve solve_max_diameter_detailed(int m, double tol) {
  if (m < 2) throw DomainError("m must be >= 2");
  if (!std::isfinite(tol) || !(tol > 0.0) || tol > 1e-8) {
    throw DomainError("tol must lie in (0, 1e-8]");
  }
  auto last_crossing = [&](auto&& margin_at,
                           std::array<double, kScanPoints + 1>& margins) {
    for (int i = 1; i <= kScanPoints; ++i) {
      margins[i] = margin_at(m, kPi * i / kScanPoints);
    }
    for (int i = kScanPoints - 1; i >= 1; --i) {
      if (margins[i] >= 0.0 && margins[i + 1] < 0.0) return i;
    }
    return 0;
  };
  std::array<double, kScanPoints + 1> margins{};
  int crossing = last_crossing(scan_margin, margins);
  if (crossing != 0) {
    // Confirm the bracket with the adaptive rule; rescan with it if the
    // fast evaluator disagrees on either sign.
    margins[crossing] = prop_p_margin(m, kPi * crossing / kScanPoints);
    margins[crossing + 1] = prop_p_margin(m, kPi * (crossing + 1) / kScanPoints);
    if (!(margins[crossing] >= 0.0 && margins[crossing + 1] < 0.0)) crossing = 0;
  }
  if (crossing == 0) crossing = last_crossing(prop_p_margin, margins);
  if (crossing == 0) {
    throw SolverError("no sign change of the margin on (0, pi]");
  }
  double lo = kPi * crossing / kScanPoints;
  double hi = kPi * (crossing + 1) / kScanPoints;
  const double slope =
      (margins[crossing + 1] - margins[crossing]) / (hi - lo);
  double lo_margin = margins[crossing];
  int iterations = 0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double value = prop_p_margin(m, mid);
    if (value >= 0.0) {
      lo = mid;
      lo_margin = value;
    } else {
      hi = mid;
    }
    ++iterations;
  }
  return {m, lo, lo_margin, lo, hi, iterations, slope};
}

DiameterBound solve_max_diameter(int m, double tol) {
  const RayleighSolve solve = solve_max_diameter_detailed(m, tol);
  return {DiameterMethod::RayleighSolve,
          solve.d_star,
          {std::nullopt, std::nullopt, solve.d_star},
          GeometryParams(m, 2.0 * m - 1.0)};
}

DiameterBound closed_form_200(int m) {
  if (m < 2) throw DomainError("m must be >= 2");
  const double value = kPi * (1.0 - 1.0 / (200.0 * std::sqrt(m) * std::log(m)));
  return {DiameterMethod::ClosedForm200, value, {}, GeometryParams(m, 2.0 * m - 1.0)};
}

double chain_epsilon_threshold(int m) {
  if (m < 2) throw DomainError("m must be >= 2");
  return 1.0 / (100.0 * std::sqrt(m) * std::log(m));
}

bool ChainReport::steps_hold() const noexcept {
  return std::all_of(steps.begin(), steps.end(), [](const ChainStep& s) {
    return s.name == "final" || s.pass;
  });
}

ChainReport replay_chain(int m, double epsilon) {
  if (m < 2) throw DomainError("m must be >= 2");
  if (!std::isfinite(epsilon) || !(epsilon > 0.0)) {
    throw DomainError("epsilon must be positive");
  }
  ChainReport report{};
  report.m = m;
  report.epsilon = epsilon;
  report.d = kPi / (1.0 + epsilon);
  report.in_hypothesis = epsilon < chain_epsilon_threshold(m);
  const double d = report.d;
  const double half = 0.5 * d;
  const double two_m1 = 2.0 * m + 1.0;

  double cos_slack = std::numeric_limits<double>::infinity();
  double sin_slack = std::numeric_limits<double>::infinity();
  for (int i = 1; i < 64; ++i) {
    const double x = epsilon * (0.5 * kPi * i / 64.0);
    const double one_minus_cos = 2.0 * std::pow(std::sin(0.5 * x), 2);
    cos_slack = std::min({cos_slack, one_minus_cos, cos_lower_slack(x)});
    sin_slack = std::min({sin_slack, sin_upper_slack(x), std::sin(x) - 0.5 * x});
  }
  report.steps.push_back(step("cos_bound", cos_slack, ">=", 0.0));
  report.steps.push_back(step("sin_bound", sin_slack, ">=", 0.0));

  const double cos_half = std::sin(epsilon / (1.0 + epsilon) * 0.5 * kPi);
  report.steps.push_back(step("half_cos_lower", cos_half, ">=", 0.5 * epsilon));
  report.steps.push_back(step("half_cos_upper", cos_half, "<=", 2.0 * epsilon));

  // I_{2k+1} for k = 0..m, from both backends.
  std::vector<double> odd(m + 1);
  std::vector<double> odd_quad(m + 1);
  for (int k = 0; k <= m; ++k) {
    odd[k] = sin_power_integral(2 * k + 1, half).value;
    odd_quad[k] =
        sin_power_integral(2 * k + 1, half, IntegralBackend::Quadrature).value;
  }
  const double sin_half = std::sin(half);
  double recurrence_dev = 0.0;
  double step_slack = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= m; ++k) {
    const double kk = 2.0 * k;
    const double predicted =
        kk / (kk + 1.0) * odd_quad[k - 1] -
        std::pow(sin_half, 2 * k) * cos_half / (kk + 1.0);
    recurrence_dev =
        std::max(recurrence_dev, std::abs(odd_quad[k] - predicted) / odd_quad[k]);
    step_slack = std::min(
        step_slack, odd[k] - (kk / (kk + 1.0) * odd[k - 1] - 2.0 * epsilon / (kk + 1.0)));
  }
  report.steps.push_back(step("recurrence", recurrence_dev, "<=", 1e-10));
  report.steps.push_back(step("one_step", step_slack, ">=", 0.0));

  mpq_class harmonic_q = 0;
  for (int j = 1; j <= m; ++j) harmonic_q += mpq_class(1, 2 * j + 1);
  const double harmonic = harmonic_q.get_d();
  const double wallis = wallis_factor(m).get_d();
  const double i_top = odd[m];
  const double iterated = wallis * (1.0 - cos_half) - 2.0 * epsilon * harmonic;
  const double stirling_rhs =
      1.0 / std::sqrt(two_m1) - 2.0 * epsilon * std::log(two_m1);
  report.steps.push_back(step("iterated", i_top, ">=", iterated));
  report.steps.push_back(step("harmonic", harmonic, "<=", std::log(two_m1)));
  report.steps.push_back(step("stirling_lower", i_top, ">=", stirling_rhs));
  report.steps.push_back(step("stirling_chain", iterated, ">=", stirling_rhs));
  report.steps.push_back(step("top_floor", i_top, ">=", 0.8 / std::sqrt(two_m1)));
  report.steps.push_back(
      step("denominator_prerequisite", 2.0 * epsilon / m, "<", i_top / (3.0 * two_m1)));

  const RayleighParts parts = rayleigh_parts(m, d);
  const double i_bottom = odd[m - 1];
  report.steps.push_back(step("denominator_lower", parts.denominator.value, ">=",
                              2.0 / 3.0 * i_bottom / two_m1));
  report.steps.push_back(step("ratio", rayleigh_ratio(m, d).value, "<=", 1.5 * two_m1));

  const double grown = (1.0 + epsilon) * (1.0 + epsilon);
  report.steps.push_back(
      step("final", 2.0 * (2.0 * m - 1.0), ">", 1.5 * grown * two_m1));
  report.contradiction = report.steps.back().pass;
  return report;
}

}  // namespace kahler
