#include "mott/packet.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mott/harness.hpp"
#include "mott/kernels.hpp"
#include "mott/quadrature.hpp"

namespace mott {

namespace {

// Transverse-profile helper: A(y1, y2) in the packet frame. The coupling
// argument is the lab vector xi = -(y1 t1 + y2 t2)/tau - (|n|/v0) a_hat;
// only the monomial factors need the lab components, the Gaussian factors
// are radial: |xi|^2 = (y1^2 + y2^2)/tau^2 + (|n|/v0)^2.
struct ProfileEval {
  const PacketDescriptor& d;
  Vec3 t1, t2;
  complexd pref;      // monomial prefactors and the (2 pi)^{-3} Gaussian ones
  double gauss_coef;  // 1/4 + w^2/2

  explicit ProfileEval(const PacketDescriptor& desc) : d(desc) {
    t1 = {desc.rot.m[0][0], desc.rot.m[0][1], desc.rot.m[0][2]};
    t2 = {desc.rot.m[1][0], desc.rot.m[1][1], desc.rot.m[1][2]};
    double w = desc.width;
    pref = std::pow(w / std::sqrt(2.0 * kPi), 3.0);
    for (int k = 0; k < 3; ++k) {
      int nk = d.n[k];
      for (int m = 1; m <= nk; ++m) pref *= complexd(0.0, -1.0) / std::sqrt(2.0 * m);
    }
    gauss_coef = 0.25 + 0.5 * w * w;
  }

  complexd operator()(double y1, double y2) const {
    double r2 = y1 * y1 + y2 * y2;
    double c = d.n.degree() / d.v0;
    Vec3 xi{-(y1 * t1[0] + y2 * t2[0]) / d.tau - c * d.a_hat[0],
            -(y1 * t1[1] + y2 * t2[1]) / d.tau - c * d.a_hat[1],
            -(y1 * t1[2] + y2 * t2[2]) / d.tau - c * d.a_hat[2]};
    double xi2 = r2 / (d.tau * d.tau) + c * c;
    complexd mono(1.0, 0.0);
    for (int k = 0; k < 3; ++k)
      for (int m = 0; m < d.n[k]; ++m) mono *= xi[k];
    return pref * mono *
           std::exp(complexd(-gauss_coef * xi2, -0.5 * r2 / d.tau));
  }

  // Gaussian scale of |A| and of its spectrum (chirped-Gaussian widths).
  double sigma_y() const {
    double gamma = gauss_coef / (d.tau * d.tau);
    return 1.0 / std::sqrt(2.0 * gamma);
  }
  double sigma_k() const {
    double gamma = gauss_coef / (d.tau * d.tau);
    double beta = 0.5 / d.tau;
    return std::sqrt((gamma * gamma + beta * beta) / gamma);
  }
};

double profile_l2(const ProfileEval& A, int nodes = 200) {
  double L = 20.0 * A.sigma_y() + 3.0 * A.d.n.degree();
  Rule1D rule = gauss_legendre_on(nodes, -L, L);
  std::vector<double> rows(nodes);
  for (int i = 0; i < nodes; ++i) {
    std::vector<double> cols(nodes);
    for (int j = 0; j < nodes; ++j) {
      complexd a = A(rule.nodes[i], rule.nodes[j]);
      cols[j] = rule.weights[j] * std::norm(a);
    }
    rows[i] = rule.weights[i] * pairwise_sum(std::span<const double>(cols));
  }
  return pairwise_sum(std::span<const double>(rows));
}

}  // namespace

PacketDescriptor make_packet(const ModelConfig& cfg, const Geometry& geom,
                             int j, const MultiIndex& n) {
  if (j < 0 || j >= cfg.num_oscillators())
    throw std::invalid_argument("make_packet: oscillator index out of range");
  PacketDescriptor d;
  d.j = j;
  d.n = n;
  d.eps = cfg.epsilon;
  d.v0 = cfg.v0;
  d.tau = geom.tau[j];
  d.width = cfg.potential_width;
  d.a_hat = normalized(cfg.oscillators[j]);
  d.rot = geom.rotations[j];
  d.n_eps = normalization_constant(cfg.epsilon, cfg.v0);
  int deg = n.degree();
  d.z_shift = cfg.epsilon * deg * d.tau / cfg.v0;
  d.momentum = cfg.v0 - cfg.epsilon * deg / cfg.v0;
  double mag = 8.0 * std::pow(kPi, 2.25) * d.n_eps / (cfg.v0 * cfg.v0 * cfg.v0 * d.tau * d.tau);
  complexd phase =
      std::exp(complexd(0.0, deg * d.tau / cfg.epsilon +
                                 0.5 * deg * deg * d.tau / (cfg.v0 * cfg.v0)));
  d.amplitude = complexd(0.0, -1.0) * mag * phase;
  return d;
}

PacketDescriptor make_packet(const ModelConfig& cfg, int j, const MultiIndex& n) {
  return make_packet(cfg, derive_geometry(cfg), j, n);
}

complexd transverse_profile(const PacketDescriptor& desc, const Vec3& y) {
  if (std::abs(dot(y, desc.a_hat)) > 1e-10 * std::max(1.0, norm(y)))
    throw std::invalid_argument("transverse_profile: y must be orthogonal to a_hat");
  ProfileEval A(desc);
  double y1 = dot(y, A.t1), y2 = dot(y, A.t2);
  return A(y1, y2);
}

complexd packet_eval(const PacketDescriptor& desc, const Vec3& R) {
  double z = dot(desc.a_hat, R);
  Vec3 yperp = R - z * desc.a_hat;
  ProfileEval A(desc);
  double y1 = dot(yperp, A.t1) / desc.eps, y2 = dot(yperp, A.t2) / desc.eps;
  double dz = z - desc.z_shift;
  double e2 = desc.eps * desc.eps;
  complexd longit =
      std::exp(complexd(-0.5 * dz * dz / e2, desc.momentum * z / e2));
  return desc.amplitude / std::pow(desc.eps, 1.5) * A(y1, y2) * longit;
}

double packet_norm(const PacketDescriptor& desc) {
  ProfileEval A(desc);
  double i2 = profile_l2(A);
  return std::sqrt(std::sqrt(kPi) * std::norm(desc.amplitude) * i2);
}

complexd packet_ft(const PacketDescriptor& desc, const Vec3& K) {
  double kz = dot(desc.a_hat, K);
  Vec3 kperp = K - kz * desc.a_hat;
  ProfileEval A(desc);
  double k1 = desc.eps * dot(kperp, A.t1), k2 = desc.eps * dot(kperp, A.t2);

  // At(k) = (2 pi)^{-1} int A(y) e^{-i k.y} d^2 y
  int nodes = 220;
  double L = 20.0 * A.sigma_y() + 3.0 * desc.n.degree();
  Rule1D rule = gauss_legendre_on(nodes, -L, L);
  std::vector<complexd> rows(nodes);
  for (int i = 0; i < nodes; ++i) {
    std::vector<complexd> cols(nodes);
    for (int j = 0; j < nodes; ++j)
      cols[j] = rule.weights[j] * A(rule.nodes[i], rule.nodes[j]) *
                std::exp(complexd(0.0, -(k1 * rule.nodes[i] + k2 * rule.nodes[j])));
    rows[i] = rule.weights[i] * pairwise_sum(std::span<const complexd>(cols));
  }
  complexd at = pairwise_sum(std::span<const complexd>(rows)) / (2.0 * kPi);

  double e2 = desc.eps * desc.eps;
  double dk = kz - desc.momentum / e2;
  complexd longit = std::exp(complexd(
      -0.5 * e2 * dk * dk,
      -desc.z_shift * kz + desc.z_shift * desc.momentum / e2));
  return std::pow(desc.eps, 1.5) * desc.amplitude * at * longit;
}

MomentReport packet_moments(const PacketDescriptor& desc) {
  MomentReport rep;
  ProfileEval A(desc);
  rep.axis_long = desc.a_hat;
  rep.axis_t1 = A.t1;
  rep.axis_t2 = A.t2;

  // longitudinal position: |G|^2 = e^{-(z-Z)^2/eps^2}
  {
    Rule1D rule = gauss_legendre_on(120, desc.z_shift - 12.0 * desc.eps,
                                    desc.z_shift + 12.0 * desc.eps);
    double m0 = 0, m1 = 0, m2 = 0;
    for (size_t i = 0; i < rule.nodes.size(); ++i) {
      double z = rule.nodes[i];
      double g = std::exp(-(z - desc.z_shift) * (z - desc.z_shift) /
                          (desc.eps * desc.eps));
      m0 += rule.weights[i] * g;
      m1 += rule.weights[i] * g * z;
      m2 += rule.weights[i] * g * z * z;
    }
    double mean = m1 / m0;
    double var = m2 / m0 - mean * mean;
    rep.std_pos[2] = std::sqrt(var);
    rep.mean_pos = mean * desc.a_hat;  // transverse means added below
  }
  // longitudinal momentum: |P~|^2 ~ e^{-eps^2 (K - V/eps^2)^2}, p = eps^2 K
  {
    double e2 = desc.eps * desc.eps;
    double c = desc.momentum / e2;
    Rule1D rule = gauss_legendre_on(120, c - 12.0 / desc.eps, c + 12.0 / desc.eps);
    double m0 = 0, m1 = 0, m2 = 0;
    for (size_t i = 0; i < rule.nodes.size(); ++i) {
      double K = rule.nodes[i];
      double g = std::exp(-e2 * (K - c) * (K - c));
      double p = e2 * K;
      m0 += rule.weights[i] * g;
      m1 += rule.weights[i] * g * p;
      m2 += rule.weights[i] * g * p * p;
    }
    double mean = m1 / m0;
    rep.std_mom[2] = std::sqrt(m2 / m0 - mean * mean);
    rep.mean_mom = mean * desc.a_hat;
  }
  // transverse position: moments of |A(y)|^2, scaled by eps
  {
    int nodes = 200;
    double L = 20.0 * A.sigma_y() + 3.0 * desc.n.degree();
    Rule1D rule = gauss_legendre_on(nodes, -L, L);
    double m0 = 0, m1a = 0, m1b = 0, m2a = 0, m2b = 0;
    for (int i = 0; i < nodes; ++i)
      for (int j = 0; j < nodes; ++j) {
        double wgt = rule.weights[i] * rule.weights[j] *
                     std::norm(A(rule.nodes[i], rule.nodes[j]));
        m0 += wgt;
        m1a += wgt * rule.nodes[i];
        m1b += wgt * rule.nodes[j];
        m2a += wgt * rule.nodes[i] * rule.nodes[i];
        m2b += wgt * rule.nodes[j] * rule.nodes[j];
      }
    double mea = m1a / m0, meb = m1b / m0;
    rep.std_pos[0] = desc.eps * std::sqrt(m2a / m0 - mea * mea);
    rep.std_pos[1] = desc.eps * std::sqrt(m2b / m0 - meb * meb);
    rep.mean_pos = rep.mean_pos + desc.eps * mea * A.t1 + desc.eps * meb * A.t2;
  }
  // transverse momentum: moments of |At(k)|^2 on a DFT grid, p = eps k
  {
    int N = 256;
    double L = 20.0 * A.sigma_y() + 3.0 * desc.n.degree();
    double dy = 2.0 * L / N;
    std::vector<complexd> grid(static_cast<size_t>(N) * N);
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j)
        grid[static_cast<size_t>(i) * N + j] =
            A(-L + (i + 0.5) * dy, -L + (j + 0.5) * dy);
    // 2-D FFT, rows then columns
    std::vector<complexd> tmp(N);
    for (int i = 0; i < N; ++i) {
      std::copy_n(grid.begin() + static_cast<size_t>(i) * N, N, tmp.begin());
      fft_pow2(tmp, false);
      std::copy_n(tmp.begin(), N, grid.begin() + static_cast<size_t>(i) * N);
    }
    for (int j = 0; j < N; ++j) {
      for (int i = 0; i < N; ++i) tmp[i] = grid[static_cast<size_t>(i) * N + j];
      fft_pow2(tmp, false);
      for (int i = 0; i < N; ++i) grid[static_cast<size_t>(i) * N + j] = tmp[i];
    }
    auto freq = [&](int q) {
      int qs = q < N / 2 ? q : q - N;
      return 2.0 * kPi * qs / (N * dy);
    };
    double m0 = 0, m1a = 0, m1b = 0, m2a = 0, m2b = 0;
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        double wgt = std::norm(grid[static_cast<size_t>(i) * N + j]);
        double ka = freq(i), kb = freq(j);
        m0 += wgt;
        m1a += wgt * ka;
        m1b += wgt * kb;
        m2a += wgt * ka * ka;
        m2b += wgt * kb * kb;
      }
    double mea = m1a / m0, meb = m1b / m0;
    rep.std_mom[0] = desc.eps * std::sqrt(m2a / m0 - mea * mea);
    rep.std_mom[1] = desc.eps * std::sqrt(m2b / m0 - meb * meb);
    rep.mean_mom = rep.mean_mom + desc.eps * mea * A.t1 + desc.eps * meb * A.t2;
  }
  return rep;
}

EvolvedPacket::EvolvedPacket(const PacketDescriptor& desc, double t)
    : desc_(desc), t_(t) {
  ProfileEval A(desc);
  double sy = A.sigma_y(), sk = A.sigma_k();
  int deg = desc.n.degree();
  grid_l_ = (18.0 + 2.0 * deg) * sy + std::abs(t) * (8.0 + deg) * sk;
  grid_n_ = 512;
  const int N = grid_n_;
  double dy = 2.0 * grid_l_ / N;

  kspace_.assign(static_cast<size_t>(N) * N, complexd{});
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      kspace_[static_cast<size_t>(i) * N + j] =
          A(-grid_l_ + (i + 0.5) * dy, -grid_l_ + (j + 0.5) * dy);

  std::vector<complexd> tmp(N);
  for (int i = 0; i < N; ++i) {
    std::copy_n(kspace_.begin() + static_cast<size_t>(i) * N, N, tmp.begin());
    fft_pow2(tmp, false);
    std::copy_n(tmp.begin(), N, kspace_.begin() + static_cast<size_t>(i) * N);
  }
  for (int j = 0; j < N; ++j) {
    for (int i = 0; i < N; ++i) tmp[i] = kspace_[static_cast<size_t>(i) * N + j];
    fft_pow2(tmp, false);
    for (int i = 0; i < N; ++i) kspace_[static_cast<size_t>(i) * N + j] = tmp[i];
  }
  auto freq = [&](int q) {
    int qs = q < N / 2 ? q : q - N;
    return 2.0 * kPi * qs / (N * dy);
  };
  // free transverse symbol e^{-i t k^2 / 2} in the eps-scaled variables
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      double k2 = freq(i) * freq(i) + freq(j) * freq(j);
      kspace_[static_cast<size_t>(i) * N + j] *=
          std::exp(complexd(0.0, -0.5 * t * k2));
    }

  // Plancherel mass and boundary-ring escape check on the evolved samples
  std::vector<complexd> row(N);
  double total = 0.0, ring = 0.0;
  std::vector<complexd> spatial(static_cast<size_t>(N) * N);
  {
    std::vector<complexd> col(N);
    std::vector<complexd> work = kspace_;
    for (int i = 0; i < N; ++i) {
      std::copy_n(work.begin() + static_cast<size_t>(i) * N, N, row.begin());
      fft_pow2(row, true);
      std::copy_n(row.begin(), N, work.begin() + static_cast<size_t>(i) * N);
    }
    for (int j = 0; j < N; ++j) {
      for (int i = 0; i < N; ++i) col[i] = work[static_cast<size_t>(i) * N + j];
      fft_pow2(col, true);
      for (int i = 0; i < N; ++i) work[static_cast<size_t>(i) * N + j] = col[i];
    }
    spatial = std::move(work);
  }
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      double m = std::norm(spatial[static_cast<size_t>(i) * N + j]) * dy * dy;
      total += m;
      if (i < 2 || i >= N - 2 || j < 2 || j >= N - 2) ring += m;
    }
  transverse_norm2_ = total;
  if (total > 0.0 && ring / total > 1e-10)
    throw std::runtime_error("packet_evolve: support escape");
}

complexd EvolvedPacket::eval(const Vec3& R) const {
  const PacketDescriptor& d = desc_;
  double z = dot(d.a_hat, R);
  Vec3 yperp = R - z * d.a_hat;
  Vec3 t1{d.rot.m[0][0], d.rot.m[0][1], d.rot.m[0][2]};
  Vec3 t2{d.rot.m[1][0], d.rot.m[1][1], d.rot.m[1][2]};
  double y1 = dot(yperp, t1) / d.eps, y2 = dot(yperp, t2) / d.eps;

  // transverse: trigonometric interpolation of the evolved spectral data
  const int N = grid_n_;
  double dy = 2.0 * grid_l_ / N;
  std::vector<complexd> e1(N), e2(N);
  auto freq = [&](int q) {
    int qs = q < N / 2 ? q : q - N;
    return 2.0 * kPi * qs / (N * dy);
  };
  // samples sit at y = -L + (m + 0.5) dy; the DFT phase anchors to index m,
  // so evaluate modes at the fractional index (y + L)/dy - 0.5
  double u1 = (y1 + grid_l_) / dy - 0.5, u2 = (y2 + grid_l_) / dy - 0.5;
  for (int q = 0; q < N; ++q) {
    double k = freq(q) * dy;  // phase per index step
    e1[q] = std::exp(complexd(0.0, k * u1));
    e2[q] = std::exp(complexd(0.0, k * u2));
  }
  complexd acc = 0.0;
  for (int i = 0; i < N; ++i) {
    complexd rowsum = 0.0;
    const complexd* rowp = &kspace_[static_cast<size_t>(i) * N];
    for (int j = 0; j < N; ++j) rowsum += rowp[j] * e2[j];
    acc += e1[i] * rowsum;
  }
  complexd a_t = acc / (static_cast<double>(N) * N);

  // longitudinal closed form
  double e2s = d.eps * d.eps;
  complexd wdt(1.0, t_);
  complexd gauss = std::exp(-(z - d.z_shift - d.momentum * t_) *
                            (z - d.z_shift - d.momentum * t_) /
                            (2.0 * e2s * wdt));
  complexd phase = std::exp(complexd(
      0.0, d.momentum * z / e2s - 0.5 * d.momentum * d.momentum * t_ / e2s));
  complexd longit = gauss * phase / std::sqrt(wdt);

  return d.amplitude / std::pow(d.eps, 1.5) * a_t * longit;
}

double EvolvedPacket::norm() const {
  // ||P_t||^2 = |C|^2 eps^{-3} * (eps^2 int|A_t|^2) * (eps sqrt(pi))
  return std::sqrt(std::norm(desc_.amplitude) * transverse_norm2_ *
                   std::sqrt(kPi));
}

double EvolvedPacket::mean_longitudinal() const {
  const PacketDescriptor& d = desc_;
  double c = d.z_shift + d.momentum * t_;
  double sig = d.eps * std::sqrt(1.0 + t_ * t_);
  Rule1D rule = gauss_legendre_on(160, c - 12.0 * sig, c + 12.0 * sig);
  double m0 = 0, m1 = 0;
  for (size_t i = 0; i < rule.nodes.size(); ++i) {
    double z = rule.nodes[i];
    double g = std::exp(-(z - c) * (z - c) / (sig * sig));
    m0 += rule.weights[i] * g;
    m1 += rule.weights[i] * g * z;
  }
  return m1 / m0;
}

complexd packet_evolve(const PacketDescriptor& desc, double t, const Vec3& R) {
  if (t < 0.0) throw std::invalid_argument("packet_evolve: t must be >= 0");
  if (t == 0.0) return packet_eval(desc, R);
  return EvolvedPacket(desc, t).eval(R);
}

double channel_weight(const PacketDescriptor& desc) {
  double n = packet_norm(desc);
  return std::pow(desc.eps, 4.0) * n * n;
}

std::vector<TrackRow> track_report(const ModelConfig& cfg, int threads) {
  Geometry geom = derive_geometry(cfg);
  std::vector<MultiIndex> channels = multi_indices_upto(cfg.n_max);
  const int N = cfg.num_oscillators();
  std::vector<TrackRow> rows(static_cast<size_t>(N) * channels.size());
  parallel_for(rows.size(), threads, [&](size_t i) {
    int j = static_cast<int>(i / channels.size());
    const MultiIndex& n = channels[i % channels.size()];
    PacketDescriptor d = make_packet(cfg, geom, j, n);
    TrackRow& r = rows[i];
    r.j = j;
    r.n = n;
    r.direction = d.a_hat;
    r.momentum = d.momentum;
    r.z_shift = d.z_shift;
    r.weight = channel_weight(d);
    r.elastic = (n.degree() == 0);
  });
  std::stable_sort(rows.begin(), rows.end(),
                   [](const TrackRow& a, const TrackRow& b) {
                     return a.weight > b.weight;
                   });
  return rows;
}

}  // namespace mott
