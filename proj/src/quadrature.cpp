#include "mott/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace mott {

namespace {

// Newton iteration on Legendre P_n starting from the Chebyshev-like initial
// guess. Standard double-precision construction, adequate for n up to ~2000.
Rule1D build_gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  Rule1D r;
  r.nodes.resize(n);
  r.weights.resize(n);
  int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      if (n == 1) {
        p1 = x;
      }
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      // derivative of P_n via the standard identity
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * pp * pp);
    r.weights[i] = w;
    r.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) r.nodes[n / 2] = 0.0;  // exact symmetry
  return r;
}

}  // namespace

const Rule1D& gauss_legendre(int n) {
  static std::mutex mu;
  static std::map<int, Rule1D> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_gauss_legendre(n)).first;
  return it->second;
}

Rule1D gauss_legendre_on(int n, double a, double b) {
  const Rule1D& base = gauss_legendre(n);
  Rule1D r;
  r.nodes.resize(n);
  r.weights.resize(n);
  double mid = 0.5 * (a + b), hw = 0.5 * (b - a);
  for (int i = 0; i < n; ++i) {
    r.nodes[i] = mid + hw * base.nodes[i];
    r.weights[i] = hw * base.weights[i];
  }
  return r;
}

bool is_pow2(size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void fft_pow2(std::vector<complexd>& a, bool inverse) {
  const size_t n = a.size();
  if (!is_pow2(n)) throw std::invalid_argument("fft_pow2: size must be a power of two");
  // bit reversal
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (size_t len = 2; len <= n; len <<= 1) {
    double ang = 2.0 * kPi / double(len) * (inverse ? 1.0 : -1.0);
    complexd wlen(std::cos(ang), std::sin(ang));
    for (size_t i = 0; i < n; i += len) {
      complexd w(1.0, 0.0);
      for (size_t k = 0; k < len / 2; ++k) {
        complexd u = a[i + k];
        complexd v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
  if (inverse) {
    double inv = 1.0 / double(n);
    for (auto& x : a) x *= inv;
  }
}

}  // namespace mott
