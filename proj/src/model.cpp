#include "mott/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mott/quadrature.hpp"

namespace mott {

std::vector<MultiIndex> multi_indices_upto(int n_max) {
  std::vector<MultiIndex> out;
  for (int d = 0; d <= n_max; ++d)
    for (int n1 = 0; n1 <= d; ++n1)
      for (int n2 = 0; n2 + n1 <= d; ++n2)
        out.push_back({n1, n2, d - n1 - n2});
  return out;
}

namespace {
constexpr double kRelMargin = 1e-9;  // assumption (B) tolerance
}

ValidationReport validate_config(const ModelConfig& cfg) {
  ValidationReport rep;
  auto fail = [&rep](const std::string& msg) {
    rep.pass = false;
    rep.violations.push_back(msg);
  };

  if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0))
    fail("epsilon must lie in (0,1)");
  if (!(cfg.v0 > 0.0)) fail("v0 must be positive");
  if (cfg.oscillators.empty()) fail("at least one oscillator is required");
  if (!(cfg.potential_width > 0.0)) fail("potential_width must be positive");
  if (cfg.n_max < 0) fail("n_max must be non-negative");

  const int N = cfg.num_oscillators();
  for (int j = 0; j < N; ++j) {
    if (norm(cfg.oscillators[j]) < 1e-300)
      fail("oscillator " + std::to_string(j + 1) + " has zero position");
  }

  // assumption (B): strictly increasing norms, no parallel alignment
  for (int j = 0; j + 1 < N; ++j) {
    double a = norm(cfg.oscillators[j]), b = norm(cfg.oscillators[j + 1]);
    if (a <= 0 || b <= 0) continue;
    if ((b - a) / std::max(a, b) <= kRelMargin)
      fail("assumption (B): |a_" + std::to_string(j + 1) +
           "| < |a_" + std::to_string(j + 2) + "| violated (norm ordering)");
  }
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j) {
      double ai = norm(cfg.oscillators[i]), aj = norm(cfg.oscillators[j]);
      if (ai <= 0 || aj <= 0) continue;
      double d = dot(cfg.oscillators[i], cfg.oscillators[j]);
      if (std::abs(d - ai * aj) / (ai * aj) <= kRelMargin)
        fail("assumption (B): oscillators " + std::to_string(i + 1) + " and " +
             std::to_string(j + 1) + " are aligned with the origin");
    }

  if (N > 0 && cfg.v0 > 0.0) {
    double tau_N = norm(cfg.oscillators.back()) / cfg.v0;
    if (!(cfg.t_final > tau_N))
      fail("t_final must exceed the last flight time tau_N = " +
           fmt_g(tau_N, 6));
  }

  const QuadSpec& q = cfg.quad;
  if (q.s_nodes < 4 || q.munu_nodes < 4 || q.xi_nodes < 4)
    fail("quadrature node counts must be at least 4");
  if (!(q.target_tol > 0.0)) fail("target_tol must be positive");
  if (q.target_tol > 0.0) {
    double need = std::sqrt(4.0 * (cfg.n_max + std::log(1.0 / q.target_tol)));
    if (q.xi_cutoff < need)
      fail("xi_cutoff must be at least sqrt(4(n_max + ln(1/target_tol))) = " +
           fmt_g(need, 6));
  }
  return rep;
}

Mat3 rotation_to_pole(const Vec3& a_hat) {
  double len = norm(a_hat);
  if (std::abs(len - 1.0) > 1e-12)
    throw std::invalid_argument("rotation_to_pole: input must be a unit vector");

  const Vec3 e3{0.0, 0.0, 1.0};
  double c = dot(a_hat, e3);
  if (c < -1.0 + 1e-9) {
    // antipodal case: pi rotation about e1
    Mat3 r = Mat3::identity();
    r.m[1][1] = -1.0;
    r.m[2][2] = -1.0;
    return r;
  }
  Vec3 k = cross(a_hat, e3);  // rotation axis scaled by sin(theta)
  // Rodrigues, R = I + [k]x + [k]x^2 / (1 + c); exact for c != -1
  Mat3 kx;
  kx.m = {{{0.0, -k[2], k[1]}, {k[2], 0.0, -k[0]}, {-k[1], k[0], 0.0}}};
  Mat3 kx2 = kx.multiply(kx);
  Mat3 r = Mat3::identity();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      r.m[i][j] += kx.m[i][j] + kx2.m[i][j] / (1.0 + c);
  return r;
}

Geometry derive_geometry(const ModelConfig& cfg) {
  Geometry g;
  const int N = cfg.num_oscillators();
  g.tau.reserve(N);
  g.rotations.reserve(N);
  for (int j = 0; j < N; ++j) {
    double aj = norm(cfg.oscillators[j]);
    if (aj < 1e-300)
      throw std::invalid_argument("derive_geometry: zero oscillator position");
    g.tau.push_back(aj / cfg.v0);
    g.rotations.push_back(rotation_to_pole(normalized(cfg.oscillators[j])));
  }
  double min_angle = kPi;
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j) {
      double c = dot(normalized(cfg.oscillators[i]),
                     normalized(cfg.oscillators[j]));
      c = std::clamp(c, -1.0, 1.0);
      min_angle = std::min(min_angle, std::acos(c));
    }
  g.theta0 = 0.5 * min_angle;
  g.period_osc = 2.0 * kPi * cfg.epsilon;
  g.transit = cfg.epsilon / cfg.v0;
  return g;
}

bool cone_contains(const Geometry& geom, int j, const Vec3& u_hat) {
  if (std::abs(norm(u_hat) - 1.0) > 1e-9)
    throw std::invalid_argument("cone_contains: direction must be a unit vector");
  Vec3 u0 = geom.rotations[j].apply(u_hat);
  double s2 = std::sin(geom.theta0);
  s2 *= s2;
  return (u0[0] * u0[0] + u0[1] * u0[1] < s2) && (u0[2] > 0.0);
}

double energy_level(double eps, const MultiIndex& n) {
  return eps * (n.degree() + 1.5);
}

double normalization_constant(double eps, double v0) {
  double q = (v0 / eps) * (v0 / eps);
  double one_minus = -std::expm1(-q);  // 1 - exp(-q), accurate for small q
  return v0 / (4.0 * kPi) / std::sqrt(one_minus);
}

double spherical_wave_norm_quadrature(double eps, double v0, int nodes) {
  // ||psi||^2 = N^2 64 pi^(3/2) / v0^2 * int_0^inf sin^2(k u) e^{-u^2} du,
  // k = v0/eps, after the angular integral and R = eps u. Integrand support
  // is inside u <= 9 to double precision.
  double n_eps = normalization_constant(eps, v0);
  double k = v0 / eps;
  Rule1D rule = gauss_legendre_on(nodes, 0.0, 9.0);
  std::vector<double> terms(nodes);
  for (int i = 0; i < nodes; ++i) {
    double u = rule.nodes[i];
    double s = std::sin(k * u);
    terms[i] = rule.weights[i] * s * s * std::exp(-u * u);
  }
  double integral = pairwise_sum(terms);
  double norm2 =
      n_eps * n_eps * 64.0 * std::pow(kPi, 1.5) / (v0 * v0) * integral;
  return std::sqrt(norm2);
}

}  // namespace mott
