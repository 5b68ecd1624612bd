// Independent numerical evaluation of the first-order Duhamel coefficients
//
//   I_{j,n}(t,x) = -(i N_eps / eps^{5/2}) int_0^t ds int dxi int_region du
//                  F_n(xi, s; x) e^{i Phi_{n,j}(xi, s, u; x)/eps},
//   F_n = e^{i xi.x + i s xi^2/2} g_{n,0}(xi) f(x + s xi),
//   Phi = -xi.a_j + v0 u.(x + s xi) + |n| s,
//
// plus stationary-phase diagnostics and the second-order phase bound.
//
// The 3-D xi integral is separable over lab axes: the Gaussian factors of
// g_{n,0}, f and e^{i s xi^2/2} combine into exp(-alpha xi_k^2 + beta_k xi_k)
// with Re alpha = 1/4 + w^2/2 + s^2/2, so each axis reduces to the moment
// integrals I_m(alpha, beta) with a two-term recurrence. That turns a 6-D
// oscillatory integral into a smooth 3-D one over (s, mu, nu).
#pragma once

#include <span>
#include <string>
#include <vector>

#include "mott/common.hpp"
#include "mott/model.hpp"

namespace mott {

// Phi_{n,j} in lab coordinates.
double phase_value(const Vec3& xi, double s, const Vec3& u_hat, const Vec3& x,
                   const MultiIndex& n, int j, const ModelConfig& cfg,
                   const Geometry& geom);

// Reduced phase Phi^1 after rotating to the frame of oscillator j and
// parametrizing the cap by (mu, nu); xi here is in the rotated frame.
double reduced_phase(const Vec3& xi_rot, double mu, double nu, double s,
                     const Vec3& x, const MultiIndex& n, int j,
                     const ModelConfig& cfg, const Geometry& geom);

struct CriticalPoint {
  Vec3 xi_c{};  // rotated frame: (-x^j_1/tau, -x^j_2/tau, -|n|/v0)
  Vec3 z_c{};   // (mu, nu, s) = (0, 0, tau_j)
};
CriticalPoint critical_point(const Vec3& x, const MultiIndex& n, int j,
                             const ModelConfig& cfg, const Geometry& geom);

// int xi^m exp(-alpha xi^2 + beta xi) dxi by the stable moment recurrence
// I_0 = sqrt(pi/alpha) e^{beta^2/(4 alpha)}, I_1 = (beta/2alpha) I_0,
// I_m = ((m-1) I_{m-2} + beta I_{m-1}) / (2 alpha).
// Throws "oscillatory dominance" when Re alpha < 0.05.
complexd axis_integral(int m, complexd alpha, complexd beta);

enum class Region { Cone, Sphere, Complement };

struct CoeffResult {
  complexd value{};
  double est_error = 0.0;  // node-halving Richardson difference
  Region region = Region::Cone;
};

// All channels of n_list in one pass over the quadrature nodes (the axis
// moment recurrences are shared). Sphere = Cone + Complement by construction,
// so region additivity is exact.
std::vector<complexd> coeff_sweep(const ModelConfig& cfg, const Geometry& geom,
                                  int j, double t, const Vec3& x, Region region,
                                  std::span<const MultiIndex> n_list,
                                  const QuadSpec& quad);

CoeffResult first_order_coeff(const ModelConfig& cfg, const Geometry& geom,
                              int j, const MultiIndex& n, double t,
                              const Vec3& x, Region region);

// Relative deviation between the stationary-phase leading term
//   -(i N_eps sqrt(eps) / (v0^3 tau_j^2)) e^{i(v0 a.x + |n| tau)/eps}
//     (2 pi)^3 F^1(xi_c, z_c; x)
// and eps^2 P_{n,j}(eps x); the two sides are algebraically equal.
double leading_consistency(const ModelConfig& cfg, const Geometry& geom, int j,
                           const MultiIndex& n, const Vec3& x);

// Cylindrical tube of rescaled sample points around the classical track of
// oscillator j, with quadrature weights (midpoint in z, polar Gauss
// transversally). Windows are chosen from the packet centers |n| tau / v0
// of the channel set, padded so the packet is below 1e-6 of its peak outside.
struct XGrid {
  std::vector<Vec3> points;    // lab frame, rescaled coordinates x = R/eps
  std::vector<double> weights;
  double z_lo = 0.0, z_hi = 0.0, radius = 0.0;
};
struct TubeSpec {
  int nz = 12, nr = 4, nphi = 5;
  double radius = 6.0;
  double pad = 5.5;
};
XGrid build_track_tube(const ModelConfig& cfg, const Geometry& geom, int j,
                       std::span<const MultiIndex> n_list, const TubeSpec& spec);

// Discrete L^2 proxy of ||I - eps^2 P|| over the tube,
//   rho = (eps^3 sum_n sum_x w_x |I_{j,n}(t,x) - eps^2 P_{n,j}(eps x)|^2)^{1/2},
// together with the same proxy for the reference eps^2 P and the tube mass
// coverage of each channel against the closed-form packet norm.
struct ResidualResult {
  double rho = 0.0;
  double reference = 0.0;
  double coverage_min = 0.0;
  double max_est_error = 0.0;  // node-halving estimate, relative to reference
  bool flagged = false;        // est error above quad.target_tol
};
ResidualResult residual_norm(const ModelConfig& cfg, const Geometry& geom,
                             int j, double t, double eps, const XGrid& grid,
                             std::span<const MultiIndex> n_list, int threads);

// Proxy norm of the complement-region coefficient T over the proxy norm of
// the cone-region coefficient I.
struct NonstatResult {
  double ratio = 0.0;
  double norm_cone = 0.0;
  double norm_complement = 0.0;
  bool flagged = false;
};
NonstatResult nonstationary_ratio(const ModelConfig& cfg, const Geometry& geom,
                                  int j, double t, double eps, const XGrid& grid,
                                  std::span<const MultiIndex> n_list,
                                  int threads);

// Grid minimum of |grad_{xi,eta} Theta|^2 = v0^2 |sigma u - tau_l a_l|^2
//                                         + v0^2 |s u - tau_k a_k|^2
// over u in S^2 and s, sigma in [0, t]. Asserted cases: every ordered pair
// k != l over the full sphere, and k = l over the complement of cone k. The
// k = l cone-region minimum contains the stationary point and is reported
// without assertion. The claimed lower bound is Delta^2 = v0^2 tau_1^2
// sin^2 theta0.
struct PhaseBoundRow {
  int k = 0, l = 0;        // 0-based; k == l for the single-oscillator cases
  std::string region;      // "sphere", "complement" or "cone"
  double min_value = 0.0;
  bool asserted = false;
};
struct PhaseBoundResult {
  double delta2 = 0.0;
  double min_asserted = 0.0;
  std::vector<PhaseBoundRow> rows;
};
PhaseBoundResult second_order_phase_bound(const ModelConfig& cfg,
                                          const Geometry& geom, double t,
                                          int n_dir = 200, int n_time = 400);

}  // namespace mott
