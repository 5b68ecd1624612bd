// Emergent wave packets: construction, evaluation, norms, moments, Fourier
// representation, free evolution and channel weights.
//
// A packet for channel (j, n) is
//   P(R) = C/eps^{3/2} * A((R - (a.R)a)/eps)
//          * exp(-(a.R - Z)^2/(2 eps^2) + i V (a.R)/eps^2)
// with  C = -i 8 pi^{9/4} N_eps / (v0^3 tau_j^2) * e^{i|n|tau_j/eps + i|n|^2 tau_j/(2 v0^2)},
//       A(y) = e^{-i|y|^2/(2 tau_j)} g_{n,0}(-y/tau_j - (|n|/v0) a_hat_j),
//       Z = eps |n| tau_j / v0,   V = v0 - eps |n| / v0.
// The longitudinal argument of the coupling is -(|n|/v0) a_hat_j, the value of
// the stationary momentum transfer; it matches energy conservation
// (v0^2/2 - V^2/2 = eps|n| + O(eps^2)) and makes the first-order leading-term
// identity exact.
#pragma once

#include <vector>

#include "mott/common.hpp"
#include "mott/model.hpp"

namespace mott {

struct PacketDescriptor {
  int j = 0;            // 0-based oscillator index
  MultiIndex n;
  double eps = 0.0;
  double v0 = 0.0;
  double tau = 0.0;     // tau_j
  double width = 0.0;   // potential width w
  Vec3 a_hat{};         // direction of oscillator j
  Mat3 rot;             // R_j (rows: transverse axis 1, transverse axis 2, a_hat)
  complexd amplitude{}; // C
  double z_shift = 0.0; // Z
  double momentum = 0.0;// V
  double n_eps = 0.0;   // normalization constant used in C
};

PacketDescriptor make_packet(const ModelConfig& cfg, const Geometry& geom,
                             int j, const MultiIndex& n);
PacketDescriptor make_packet(const ModelConfig& cfg, int j, const MultiIndex& n);

// A_{n,j}(y) for y orthogonal to a_hat (checked to 1e-10).
complexd transverse_profile(const PacketDescriptor& desc, const Vec3& y);

complexd packet_eval(const PacketDescriptor& desc, const Vec3& R);

// L^2(dR) norm via the factorized form ||P||^2 = sqrt(pi) |C|^2 int |A|^2;
// the eps factors cancel exactly, so the norm depends on eps only through
// N_eps inside C.
double packet_norm(const PacketDescriptor& desc);

// Unitary 3-D Fourier transform, P~(K) = (2pi)^{-3/2} int P(R) e^{-iK.R} dR
//  = eps^{3/2} C At(eps Kperp) exp(-eps^2 (Kpar - V/eps^2)^2 / 2
//                                  - i Z Kpar + i Z V / eps^2),
// At(k) = (2pi)^{-1} int A(y) e^{-ik.y} d^2y evaluated by quadrature.
complexd packet_ft(const PacketDescriptor& desc, const Vec3& K);

// Position/momentum moments of |P|^2 and |P~|^2 by quadrature, reported in
// the packet frame: component order (transverse 1, transverse 2,
// longitudinal). Momenta are physical (hbar = eps^2 times wave number).
struct MomentReport {
  Vec3 mean_pos{};  // lab-frame mean position
  Vec3 std_pos{};   // (t1, t2, long) standard deviations
  Vec3 mean_mom{};  // lab-frame mean momentum
  Vec3 std_mom{};   // (t1, t2, long) standard deviations
  Vec3 axis_long{}; // a_hat
  Vec3 axis_t1{}, axis_t2{};
};
MomentReport packet_moments(const PacketDescriptor& desc);

// Free evolution e^{-i t h0/eps^2} P. Longitudinal part in closed form
// (Gaussian width parameter eps^2 -> eps^2 (1 + i t)); transverse part by
// spectral propagation of A on a periodic grid spanning >= 16 transverse
// standard deviations. Construction throws "support escape" when more than
// 1e-10 of the transverse mass reaches the boundary ring.
class EvolvedPacket {
 public:
  EvolvedPacket(const PacketDescriptor& desc, double t);

  complexd eval(const Vec3& R) const;
  double norm() const;              // grid Plancherel x closed-form long part
  double mean_longitudinal() const; // quadrature mean of a.R (= Z + V t)

  const PacketDescriptor& descriptor() const { return desc_; }
  double time() const { return t_; }

 private:
  PacketDescriptor desc_;
  double t_;
  int grid_n_ = 0;
  double grid_l_ = 0.0;     // samples at y = -L + (i+0.5) dy, dy = 2L/N
  std::vector<complexd> kspace_;  // DFT of A times the evolution symbol
  double transverse_norm2_ = 0.0; // int |A_t|^2 d^2y
};

complexd packet_evolve(const PacketDescriptor& desc, double t, const Vec3& R);

// eps^4 ||P||^2, the leading-order unnormalized excitation probability.
double channel_weight(const PacketDescriptor& desc);

// One row per (oscillator, channel |n| <= n_max), sorted by weight
// descending (ties broken by j then by channel order). Elastic n = 0 rows are
// flagged; they deform the surviving spherical wave rather than excite.
struct TrackRow {
  int j = 0;  // 0-based
  MultiIndex n;
  Vec3 direction{};
  double momentum = 0.0;
  double z_shift = 0.0;
  double weight = 0.0;
  bool elastic = false;
};
std::vector<TrackRow> track_report(const ModelConfig& cfg, int threads = 1);

}  // namespace mott
