// Rescaled model definition: experiment parameters, assumption checks and the
// derived classical geometry (flight times, cones, frame rotations).
//
// Units follow the rescaling hbar = eps^2, M = 1, sigma = eps, m = eps,
// omega = 1/eps, delta = eps, lambda = eps^2. The interaction is the isotropic
// Gaussian V(y) = exp(-|y|^2 / (2 w^2)) with w = potential_width.
#pragma once

#include <string>
#include <vector>

#include "mott/common.hpp"

namespace mott {

// Oscillator excitation label n in N^3 with |n| = n1+n2+n3.
struct MultiIndex {
  int n1 = 0, n2 = 0, n3 = 0;

  int degree() const { return n1 + n2 + n3; }
  int operator[](int k) const { return k == 0 ? n1 : (k == 1 ? n2 : n3); }
  bool operator==(const MultiIndex& o) const {
    return n1 == o.n1 && n2 == o.n2 && n3 == o.n3;
  }
};

// All multi-indices with |n| <= n_max, ordered by degree then lexicographic.
// This is the canonical channel-sum order used everywhere.
std::vector<MultiIndex> multi_indices_upto(int n_max);

struct QuadSpec {
  enum class XiMode { ClosedForm, Quadrature };

  int s_nodes = 64;        // Gauss-Legendre count on [0, t]
  int munu_nodes = 32;     // radial angular nodes; azimuthal count is 2x this
  XiMode xi_mode = XiMode::ClosedForm;
  int xi_nodes = 64;       // per-axis nodes when xi_mode == Quadrature
  double xi_cutoff = 12.0; // per-axis cutoff when xi_mode == Quadrature
  double target_tol = 1e-4;
};

struct ModelConfig {
  double epsilon = 0.2;          // in (0,1)
  double v0 = 1.0;               // test-particle speed, > 0
  std::vector<Vec3> oscillators; // positions a_j, ordered
  double potential_width = 1.0;  // Gaussian width w, > 0
  double t_final = 3.0;          // must exceed the last flight time
  int n_max = 2;                 // cap on |n| in channel sums
  QuadSpec quad;

  int num_oscillators() const { return static_cast<int>(oscillators.size()); }
};

struct ValidationReport {
  bool pass = true;
  std::vector<std::string> violations;
};

// Checks every ModelConfig invariant including assumption (B) with a 1e-9
// relative margin. Failures are reported, never thrown.
ValidationReport validate_config(const ModelConfig& cfg);

struct Geometry {
  std::vector<double> tau;     // flight times |a_j|/v0, strictly increasing
  double theta0 = 0.0;         // half minimum angular separation
  std::vector<Mat3> rotations; // R_j with R_j a_hat_j = e3
  double period_osc = 0.0;     // T_o = 2 pi eps
  double transit = 0.0;        // T_t = eps / v0
};

// Derived classical data. Throws std::invalid_argument on a zero oscillator
// position; other invariant violations are validate_config's business.
Geometry derive_geometry(const ModelConfig& cfg);

// Minimal-angle rotation taking a_hat to (0,0,1) (Rodrigues about
// a_hat x e3). For a_hat = -e3 (within 1e-9) returns the pi rotation about
// e1, i.e. diag(1,-1,-1). Throws if |a_hat| != 1 within 1e-12.
Mat3 rotation_to_pole(const Vec3& a_hat);

// Upper-cap cone membership: true iff (R_j u)_1^2 + (R_j u)_2^2 < sin^2 theta0
// and (R_j u)_3 > 0. j is a 0-based oscillator index.
bool cone_contains(const Geometry& geom, int j, const Vec3& u_hat);

// E_n = eps (|n| + 3/2).
double energy_level(double eps, const MultiIndex& n);

// Closed-form normalization of the initial spherical wave,
//   N_eps = (v0 / 4 pi) (1 - exp(-v0^2/eps^2))^(-1/2),
// from ||psi||^2 = N^2 (16 pi^2 / v0^2)(1 - exp(-v0^2/eps^2)) for the
// Gaussian envelope f(x) = pi^(-3/4) exp(-|x|^2/2).
double normalization_constant(double eps, double v0);

// Brute-force ||psi^eps|| via the radial reduction of the 3-D integral;
// the normalization oracle (should return 1 with normalization_constant).
double spherical_wave_norm_quadrature(double eps, double v0, int nodes = 400);

}  // namespace mott
