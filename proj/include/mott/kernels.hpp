// Harmonic-oscillator special functions.
//
// Fourier conventions (fixed so that the expansion of V((R-a_j)/eps) against
// the oscillator eigenbasis holds with no stray constants):
//   - potential transform   Vt(xi) = (2 pi)^-3 int V(y) e^{-i xi.y} dy,
//     inverse V(y) = int Vt(xi) e^{+i xi.y} dxi (no prefactor);
//   - pair transform        (phi_n phi_0)~(xi) = int phi_n phi_0 e^{-i xi x} dx
//     (no prefactor).
// Under this split the pair-sum identity reads
//   sum_n g_{n,0}(xi) conj(g_{n,0}(xi')) = Vt(xi) conj(Vt(xi')) e^{-(xi-xi')^2/4},
// i.e. the convention constant is exactly 1.
#pragma once

#include <functional>
#include <span>
#include <vector>

#include "mott/common.hpp"
#include "mott/model.hpp"

namespace mott {

// Orthonormal Hermite function phi_n(x), stable three-term recurrence
// phi_{k+1} = sqrt(2/(k+1)) x phi_k - sqrt(k/(k+1)) phi_{k-1},
// phi_0 = pi^{-1/4} e^{-x^2/2}.
double hermite_1d(int n, double x);

// Fills out[0..out.size()-1] with phi_0(x) .. phi_{size-1}(x) in one sweep.
void hermite_all(double x, std::span<double> out);

// phi_n(x) = phi_{n1}(x1) phi_{n2}(x2) phi_{n3}(x3).
double eigenfunction_3d(const MultiIndex& n, const Vec3& x);

// (phi_n phi_0)~(xi) = 2^{-n/2} (n!)^{-1/2} (-i)^n xi^n e^{-xi^2/4}.
complexd pair_ft_1d(int n, double xi);

// Per-axis factor of the Gaussian potential transform:
// w / sqrt(2 pi) * e^{-w^2 xi^2 / 2}; the 3-D Vt is the product over axes.
double potential_ft_1d(double xi, double width);
double potential_ft(const Vec3& xi, double width);

// g_{n,0}(xi) = (phi_n phi_0)~(xi) Vt(xi), product over lab axes.
complexd coupling_g(const MultiIndex& n, const Vec3& xi, double width);

// 1-D harmonic oscillator propagator kernel (hbar = m = omega = 1),
//   U(t,x,y) = e^{-i(pi/4 + m pi/2)} / sqrt(2 pi |sin t|)
//              * exp(i[(x^2+y^2) cos t - 2xy] / (2 sin t)),  m = floor(t/pi),
// the branch continuous from t -> 0+ that reproduces the eigen-sum
// sum_n phi_n(x) phi_n(y) e^{-it(n+1/2)}. Negative t by conjugation.
// Throws "caustic time" when |sin t| <= 1e-6.
complexd mehler_kernel(double t, double x, double y);

// Truncated channel sum vs the re-derived closed form of the t=0 identity.
struct PairSumResult {
  complexd lhs;  // sum over |n| <= n_max of g_{n,0}(xi) conj(g_{n,0}(xi2))
  complexd rhs;  // Vt(xi) conj(Vt(xi2)) e^{-(xi-xi2)^2/4}
};
PairSumResult pair_sum(const Vec3& xi, const Vec3& xi2, int n_max, double width);

// zeta_t(xi, xi') = <phi_0, e^{i xi'.x} U(t) e^{-i xi.x} phi_0>, the l = 2
// time-ordered oscillator correlation. Closed form per axis from coherent
// state algebra,
//   e^{-it/2} exp(-i xi xi' sin(t)/2 - (xi^2 + xi'^2 - 2 xi xi' cos t)/4),
// regular for all t (caustics included), |zeta| <= 1.
complexd zeta2_axis(double t, double xi, double xi2);
complexd zeta2(double t, const Vec3& xi, const Vec3& xi2);

// Independent check of zeta2_axis by double quadrature over the Mehler
// kernel (valid away from caustic times).
complexd zeta2_axis_quadrature(double t, double xi, double xi2, int nodes = 200);

// Conjugated-shift identity: both sides of
//   e^{i s h0/eps^2} e^{i xi . /eps} e^{-i s h0/eps^2} g
//     = e^{i s xi^2/2} e^{i xi R/eps} g(R + eps s xi)
// on a uniform grid. closed_form evaluates the right side directly from the
// callable; spectral propagates the left side by DFT symbol multiplication.
struct ShiftGrid {
  double z0 = 0.0;  // first sample
  double dz = 0.0;  // spacing
  int size = 0;     // must be a power of two
};
struct ConjShiftResult {
  std::vector<complexd> closed_form;
  std::vector<complexd> spectral;
  double sup_diff = 0.0;
};
// Throws "support escape" when g (or its shifted copy) is not negligible
// (>1e-12 of its max) at the grid boundary.
ConjShiftResult conjugated_shift(const std::function<complexd(double)>& g,
                                 const ShiftGrid& grid, double s, double xi,
                                 double eps);

}  // namespace mott
