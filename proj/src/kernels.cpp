#include "mott/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mott/quadrature.hpp"

namespace mott {

namespace {
const double kInvPiQuarter = std::pow(kPi, -0.25);
}

double hermite_1d(int n, double x) {
  if (n < 0) throw std::invalid_argument("hermite_1d: n must be >= 0");
  double p0 = kInvPiQuarter * std::exp(-0.5 * x * x);
  if (n == 0) return p0;
  double p1 = std::sqrt(2.0) * x * p0;
  for (int k = 1; k < n; ++k) {
    double p2 = std::sqrt(2.0 / (k + 1.0)) * x * p1 -
                std::sqrt(k / (k + 1.0)) * p0;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

void hermite_all(double x, std::span<double> out) {
  if (out.empty()) return;
  out[0] = kInvPiQuarter * std::exp(-0.5 * x * x);
  if (out.size() == 1) return;
  out[1] = std::sqrt(2.0) * x * out[0];
  for (size_t k = 1; k + 1 < out.size(); ++k)
    out[k + 1] = std::sqrt(2.0 / (k + 1.0)) * x * out[k] -
                 std::sqrt(k / (k + 1.0)) * out[k - 1];
}

double eigenfunction_3d(const MultiIndex& n, const Vec3& x) {
  return hermite_1d(n.n1, x[0]) * hermite_1d(n.n2, x[1]) *
         hermite_1d(n.n3, x[2]);
}

complexd pair_ft_1d(int n, double xi) {
  if (n < 0) throw std::invalid_argument("pair_ft_1d: n must be >= 0");
  // p_m = p_{m-1} * (-i) xi / sqrt(2 m), p_0 = e^{-xi^2/4}; avoids n! overflow
  complexd p = std::exp(-0.25 * xi * xi);
  for (int m = 1; m <= n; ++m) p *= complexd(0.0, -xi) / std::sqrt(2.0 * m);
  return p;
}

double potential_ft_1d(double xi, double width) {
  if (!(width > 0.0)) throw std::invalid_argument("potential_ft: width must be > 0");
  return width / std::sqrt(2.0 * kPi) * std::exp(-0.5 * width * width * xi * xi);
}

double potential_ft(const Vec3& xi, double width) {
  return potential_ft_1d(xi[0], width) * potential_ft_1d(xi[1], width) *
         potential_ft_1d(xi[2], width);
}

complexd coupling_g(const MultiIndex& n, const Vec3& xi, double width) {
  return pair_ft_1d(n.n1, xi[0]) * pair_ft_1d(n.n2, xi[1]) *
         pair_ft_1d(n.n3, xi[2]) * potential_ft(xi, width);
}

complexd mehler_kernel(double t, double x, double y) {
  if (t < 0.0) return std::conj(mehler_kernel(-t, x, y));
  double st = std::sin(t);
  if (std::abs(st) <= 1e-6) throw std::runtime_error("mehler_kernel: caustic time");
  double m = std::floor(t / kPi);
  complexd branch = std::exp(complexd(0.0, -(0.25 * kPi + 0.5 * kPi * m)));
  double phase = ((x * x + y * y) * std::cos(t) - 2.0 * x * y) / (2.0 * st);
  return branch / std::sqrt(2.0 * kPi * std::abs(st)) *
         std::exp(complexd(0.0, phase));
}

PairSumResult pair_sum(const Vec3& xi, const Vec3& xi2, int n_max, double width) {
  if (n_max < 0) throw std::invalid_argument("pair_sum: n_max must be >= 0");
  // per-axis products t_k[m] = (pair m at xi_k) * conj(pair m at xi2_k)
  std::array<std::vector<complexd>, 3> tk;
  for (int k = 0; k < 3; ++k) {
    tk[k].resize(n_max + 1);
    complexd p = std::exp(-0.25 * xi[k] * xi[k]);
    complexd q = std::exp(-0.25 * xi2[k] * xi2[k]);
    for (int m = 0; m <= n_max; ++m) {
      tk[k][m] = p * std::conj(q);
      p *= complexd(0.0, -xi[k]) / std::sqrt(2.0 * (m + 1.0));
      q *= complexd(0.0, -xi2[k]) / std::sqrt(2.0 * (m + 1.0));
    }
  }
  complexd sum = 0.0;
  for (int n1 = 0; n1 <= n_max; ++n1)
    for (int n2 = 0; n2 + n1 <= n_max; ++n2) {
      complexd t12 = tk[0][n1] * tk[1][n2];
      complexd s3 = 0.0;
      for (int n3 = 0; n3 + n2 + n1 <= n_max; ++n3) s3 += tk[2][n3];
      sum += t12 * s3;
    }
  double vv = potential_ft(xi, width) * potential_ft(xi2, width);
  PairSumResult r;
  r.lhs = vv * sum;
  Vec3 d = xi - xi2;
  r.rhs = vv * std::exp(-0.25 * dot(d, d));
  return r;
}

complexd zeta2_axis(double t, double xi, double xi2) {
  double ct = std::cos(t), st = std::sin(t);
  complexd expo(-0.25 * (xi * xi + xi2 * xi2 - 2.0 * xi * xi2 * ct),
                -0.5 * t - 0.5 * xi * xi2 * st);
  return std::exp(expo);
}

complexd zeta2(double t, const Vec3& xi, const Vec3& xi2) {
  return zeta2_axis(t, xi[0], xi2[0]) * zeta2_axis(t, xi[1], xi2[1]) *
         zeta2_axis(t, xi[2], xi2[2]);
}

complexd zeta2_axis_quadrature(double t, double xi, double xi2, int nodes) {
  // <phi_0, e^{i xi2 x} U(t, x, y) e^{-i xi y} phi_0>, tensor Gauss-Legendre.
  Rule1D rule = gauss_legendre_on(nodes, -8.0, 8.0);
  std::vector<complexd> outer(nodes);
  for (int i = 0; i < nodes; ++i) {
    double x = rule.nodes[i];
    std::vector<complexd> inner(nodes);
    for (int j = 0; j < nodes; ++j) {
      double y = rule.nodes[j];
      inner[j] = rule.weights[j] * mehler_kernel(t, x, y) *
                 std::exp(complexd(-0.5 * y * y, -xi * y));
    }
    outer[i] = rule.weights[i] * std::exp(complexd(-0.5 * x * x, xi2 * x)) *
               pairwise_sum(std::span<const complexd>(inner));
  }
  return pairwise_sum(std::span<const complexd>(outer)) / std::sqrt(kPi);
}

ConjShiftResult conjugated_shift(const std::function<complexd(double)>& g,
                                 const ShiftGrid& grid, double s, double xi,
                                 double eps) {
  const int M = grid.size;
  if (!is_pow2(static_cast<size_t>(M)) || M < 8)
    throw std::invalid_argument("conjugated_shift: grid size must be a power of two >= 8");

  std::vector<complexd> samples(M);
  double gmax = 0.0;
  for (int m = 0; m < M; ++m) {
    samples[m] = g(grid.z0 + m * grid.dz);
    gmax = std::max(gmax, std::abs(samples[m]));
  }
  auto boundary_ok = [&](const std::vector<complexd>& v, double scale) {
    double b = std::max({std::abs(v[0]), std::abs(v[1]), std::abs(v[M - 1]),
                         std::abs(v[M - 2])});
    return b <= 1e-12 * scale;
  };
  if (gmax == 0.0) gmax = 1.0;
  if (!boundary_ok(samples, gmax))
    throw std::runtime_error("conjugated_shift: support escape");

  ConjShiftResult out;

  // closed form: e^{i s xi^2/2} e^{i xi z/eps} g(z + eps s xi)
  out.closed_form.resize(M);
  complexd global = std::exp(complexd(0.0, 0.5 * s * xi * xi));
  double shift = eps * s * xi;
  for (int m = 0; m < M; ++m) {
    double z = grid.z0 + m * grid.dz;
    out.closed_form[m] =
        global * std::exp(complexd(0.0, xi * z / eps)) * g(z + shift);
  }
  if (!boundary_ok(out.closed_form, gmax))
    throw std::runtime_error("conjugated_shift: support escape");

  // spectral path: backward free propagation, boost, forward propagation
  std::vector<complexd> a = samples;
  auto symbol_multiply = [&](std::vector<complexd>& v, double sign) {
    fft_pow2(v, false);
    for (int q = 0; q < M; ++q) {
      int qs = q < M / 2 ? q : q - M;
      double k = 2.0 * kPi * qs / (M * grid.dz);
      v[q] *= std::exp(complexd(0.0, sign * 0.5 * s * eps * eps * k * k));
    }
    fft_pow2(v, true);
  };
  symbol_multiply(a, -1.0);  // e^{-i s h0 / eps^2}
  for (int m = 0; m < M; ++m) {
    double z = grid.z0 + m * grid.dz;
    a[m] *= std::exp(complexd(0.0, xi * z / eps));
  }
  symbol_multiply(a, +1.0);  // e^{+i s h0 / eps^2}
  out.spectral = std::move(a);

  double d = 0.0;
  for (int m = 0; m < M; ++m)
    d = std::max(d, std::abs(out.spectral[m] - out.closed_form[m]));
  out.sup_diff = d;
  return out;
}

}  // namespace mott
