// SPDX-License-Identifier: Apache-2.0

#include "hjs/fourier.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cassert>
#include <cstring>
#include <mutex>
#include <numeric>

namespace hjs {

// ---------------------------------------------------------------------------
// small utilities

namespace {

std::mutex fftw_mutex;

int next_pow2(int n) {
  int p = 1;
  while (p < n) p <<= 1;
  return p;
}

struct GaussRule {
  std::vector<double> x, w;
};

const GaussRule& gauss_rule(int n) {
  static std::map<int, GaussRule> cache;
  static std::mutex m;
  std::lock_guard<std::mutex> lk(m);
  auto it = cache.find(n);
  if (it == cache.end()) {
    GaussRule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < n; ++i) {
      double t = std::cos(pi * (i + 0.75) / (n + 0.5));
      double p0 = 1.0, p1 = t, dp = 0.0;
      for (int it2 = 0; it2 < 100; ++it2) {
        p0 = 1.0;
        p1 = t;
        for (int j = 2; j <= n; ++j) {
          double p2 = ((2 * j - 1) * t * p1 - (j - 1) * p0) / j;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (t * p1 - p0) / (t * t - 1.0);
        double dt = p1 / dp;
        t -= dt;
        if (std::abs(dt) < 1e-16) break;
      }
      p0 = 1.0;
      p1 = t;
      for (int j = 2; j <= n; ++j) {
        double p2 = ((2 * j - 1) * t * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (t * p1 - p0) / (t * t - 1.0);
      r.x[i] = t;
      r.w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
    it = cache.emplace(n, std::move(r)).first;
  }
  return it->second;
}

}  // namespace

const std::vector<double>& gauss_nodes(int n) { return gauss_rule(n).x; }
const std::vector<double>& gauss_weights(int n) { return gauss_rule(n).w; }

double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
  assert(x.size() == y.size() && !x.empty());
  double mx = std::accumulate(x.begin(), x.end(), 0.0) / x.size();
  double my = std::accumulate(y.begin(), y.end(), 0.0) / y.size();
  double num = 0, den = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    num += (x[i] - mx) * (y[i] - my);
    den += (x[i] - mx) * (x[i] - mx);
  }
  return num / den;
}

// ---------------------------------------------------------------------------
// FourierTable

FourierTable::FourierTable(std::vector<int> cutoffs, std::vector<double> periods)
    : cutoff_(std::move(cutoffs)), period_(std::move(periods)) {
  if (cutoff_.size() != period_.size())
    throw domain_error("FourierTable: cutoffs/periods size mismatch");
  ext_.resize(cutoff_.size());
  stride_.resize(cutoff_.size());
  std::size_t total = 1;
  for (int d = dims() - 1; d >= 0; --d) {
    if (cutoff_[d] < 0) throw domain_error("FourierTable: negative cutoff");
    ext_[d] = 2 * cutoff_[d] + 1;
    stride_[d] = total;
    total *= ext_[d];
  }
  c_.assign(total, complex(0.0, 0.0));
}

FourierTable FourierTable::phi_table(std::vector<int> cutoffs) {
  std::vector<double> periods(cutoffs.size(), two_pi);
  return FourierTable(std::move(cutoffs), std::move(periods));
}

FourierTable FourierTable::x_phi_table(int kx, std::vector<int> kphi) {
  std::vector<int> cutoffs;
  cutoffs.push_back(kx);
  cutoffs.insert(cutoffs.end(), kphi.begin(), kphi.end());
  std::vector<double> periods(cutoffs.size(), two_pi);
  periods[0] = four_pi;
  return FourierTable(std::move(cutoffs), std::move(periods));
}

std::size_t FourierTable::index_of(const std::vector<int>& k) const {
  assert(int(k.size()) == dims());
  std::size_t idx = 0;
  for (int d = 0; d < dims(); ++d) {
    assert(std::abs(k[d]) <= cutoff_[d]);
    idx += stride_[d] * std::size_t(k[d] + cutoff_[d]);
  }
  return idx;
}

std::vector<int> FourierTable::multi_index(std::size_t idx) const {
  std::vector<int> k(dims());
  for (int d = 0; d < dims(); ++d) {
    k[d] = int(idx / stride_[d]) % ext_[d] - cutoff_[d];
  }
  return k;
}

complex FourierTable::coeff(const std::vector<int>& k) const {
  for (int d = 0; d < dims(); ++d)
    if (std::abs(k[d]) > cutoff_[d]) return complex(0.0, 0.0);
  return c_[index_of(k)];
}

void FourierTable::set_coeff(const std::vector<int>& k, complex v) {
  c_[index_of(k)] = v;
}

double FourierTable::eval(const std::vector<double>& ang) const {
  std::vector<complex> cang(ang.begin(), ang.end());
  return eval_c(cang).real();
}

complex FourierTable::eval_c(const std::vector<complex>& ang) const {
  assert(int(ang.size()) == dims());
  // per-dimension phase ladders e^{i f k theta}, k = -K..K
  std::vector<std::vector<complex>> ph(dims());
  for (int d = 0; d < dims(); ++d) {
    double f = two_pi / period_[d];
    ph[d].resize(ext_[d]);
    complex base = std::exp(complex(0, 1) * (f * ang[d]));
    complex lo = std::pow(base, double(-cutoff_[d]));
    complex v = lo;
    for (int j = 0; j < ext_[d]; ++j) {
      ph[d][j] = v;
      v *= base;
    }
  }
  complex sum(0, 0);
  for (std::size_t idx = 0; idx < c_.size(); ++idx) {
    if (c_[idx] == complex(0, 0)) continue;
    complex term = c_[idx];
    std::size_t rem = idx;
    for (int d = 0; d < dims(); ++d) {
      std::size_t q = rem / stride_[d];
      rem %= stride_[d];
      term *= ph[d][q];
    }
    sum += term;
  }
  return sum;
}

double FourierTable::max_abs() const {
  double m = 0;
  for (auto& v : c_) m = std::max(m, std::abs(v));
  return m;
}

void FourierTable::enforce_reality() {
  std::size_t n = c_.size();
  for (std::size_t idx = 0; idx < n; ++idx) {
    std::size_t ridx = n - 1 - idx;  // dense box: -k is the mirrored index
    if (ridx < idx) break;
    complex a = c_[idx], b = c_[ridx];
    complex m = 0.5 * (a + std::conj(b));
    c_[idx] = m;
    c_[ridx] = std::conj(m);
  }
}

bool FourierTable::check_reality(double tol) const {
  std::size_t n = c_.size();
  double scale = std::max(max_abs(), 1e-300);
  for (std::size_t idx = 0; idx < n; ++idx) {
    std::size_t ridx = n - 1 - idx;
    if (std::abs(c_[idx] - std::conj(c_[ridx])) > tol * scale) return false;
  }
  return true;
}

void FourierTable::prune(double tol) {
  double thresh = tol * max_abs();
  for (auto& v : c_)
    if (std::abs(v) < thresh) v = complex(0, 0);
}

bool FourierTable::same_shape(const FourierTable& o) const {
  return cutoff_ == o.cutoff_ && period_ == o.period_;
}

// ---------------------------------------------------------------------------
// algebra

namespace {

void require_same_dims(const FourierTable& a, const FourierTable& b) {
  if (a.dims() != b.dims()) throw domain_error("dimension mismatch");
  for (int d = 0; d < a.dims(); ++d)
    if (a.periods()[d] != b.periods()[d]) throw domain_error("period mismatch");
}

FourierTable embed(const FourierTable& a, const std::vector<int>& cutoffs) {
  FourierTable r(cutoffs, a.periods());
  for (std::size_t idx = 0; idx < a.size(); ++idx) {
    if (a.raw()[idx] == complex(0, 0)) continue;
    auto k = a.multi_index(idx);
    bool in = true;
    for (int d = 0; d < a.dims(); ++d)
      if (std::abs(k[d]) > cutoffs[d]) {
        in = false;
        break;
      }
    if (in) r.set_coeff(k, a.raw()[idx]);
  }
  return r;
}

std::vector<int> max_cutoffs(const FourierTable& a, const FourierTable& b) {
  std::vector<int> c(a.dims());
  for (int d = 0; d < a.dims(); ++d)
    c[d] = std::max(a.cutoffs()[d], b.cutoffs()[d]);
  return c;
}

}  // namespace

FourierTable add(const FourierTable& a, const FourierTable& b) {
  require_same_dims(a, b);
  auto cut = max_cutoffs(a, b);
  FourierTable r = embed(a, cut);
  for (std::size_t idx = 0; idx < b.size(); ++idx) {
    if (b.raw()[idx] == complex(0, 0)) continue;
    auto k = b.multi_index(idx);
    r.set_coeff(k, r.coeff(k) + b.raw()[idx]);
  }
  return r;
}

FourierTable sub(const FourierTable& a, const FourierTable& b) {
  return add(a, scale(b, -1.0));
}

FourierTable scale(const FourierTable& a, double s) {
  FourierTable r = a;
  for (auto& v : r.raw()) v *= s;
  return r;
}

void fft_nd(std::vector<complex>& data, const std::vector<int>& n, int sign) {
  std::size_t total = 1;
  for (int m : n) total *= std::size_t(m);
  assert(data.size() == total);
  std::lock_guard<std::mutex> lk(fftw_mutex);
  fftw_plan plan = fftw_plan_dft(int(n.size()), n.data(),
                                 reinterpret_cast<fftw_complex*>(data.data()),
                                 reinterpret_cast<fftw_complex*>(data.data()),
                                 sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                                 FFTW_ESTIMATE);
  fftw_execute(plan);
  fftw_destroy_plan(plan);
}

std::vector<complex> synthesize(const FourierTable& u, const std::vector<int>& n) {
  assert(int(n.size()) == u.dims());
  std::size_t total = 1;
  for (int m : n) total *= std::size_t(m);
  std::vector<complex> grid(total, complex(0, 0));
  std::vector<std::size_t> stride(n.size());
  std::size_t t = 1;
  for (int d = int(n.size()) - 1; d >= 0; --d) {
    stride[d] = t;
    t *= std::size_t(n[d]);
  }
  for (std::size_t idx = 0; idx < u.size(); ++idx) {
    if (u.raw()[idx] == complex(0, 0)) continue;
    auto k = u.multi_index(idx);
    std::size_t g = 0;
    for (int d = 0; d < u.dims(); ++d) {
      int kk = k[d];
      assert(2 * std::abs(kk) < n[d]);
      int pos = kk >= 0 ? kk : n[d] + kk;
      g += stride[d] * std::size_t(pos);
    }
    grid[g] = u.raw()[idx];
  }
  fft_nd(grid, n, +1);  // backward: sum_k c_k e^{+i k theta}
  return grid;
}

FourierTable analyze(const std::vector<complex>& vals, const std::vector<int>& n,
                     const std::vector<int>& cutoffs,
                     const std::vector<double>& periods) {
  std::vector<complex> grid = vals;
  fft_nd(grid, n, -1);
  std::size_t total = grid.size();
  for (auto& v : grid) v /= double(total);
  FourierTable r(cutoffs, periods);
  std::vector<std::size_t> stride(n.size());
  std::size_t t = 1;
  for (int d = int(n.size()) - 1; d >= 0; --d) {
    stride[d] = t;
    t *= std::size_t(n[d]);
  }
  for (std::size_t idx = 0; idx < r.size(); ++idx) {
    auto kk = r.multi_index(idx);
    std::size_t g = 0;
    bool ok = true;
    for (std::size_t d = 0; d < kk.size(); ++d) {
      if (2 * std::abs(kk[d]) >= n[d]) {
        ok = false;
        break;
      }
      int pos = kk[d] >= 0 ? kk[d] : n[d] + kk[d];
      g += stride[d] * std::size_t(pos);
    }
    if (ok) r.raw()[idx] = grid[g];
  }
  return r;
}

FourierTable mul_to(const FourierTable& a, const FourierTable& b,
                    const std::vector<int>& cutoffs) {
  require_same_dims(a, b);
  std::vector<int> n(a.dims());
  for (int d = 0; d < a.dims(); ++d) {
    int need = 2 * (a.cutoffs()[d] + b.cutoffs()[d]) + 1;
    n[d] = next_pow2(std::max(need, 4));
  }
  auto ga = synthesize(a, n);
  auto gb = synthesize(b, n);
  for (std::size_t i = 0; i < ga.size(); ++i) ga[i] *= gb[i];
  FourierTable r = analyze(ga, n, cutoffs, a.periods());
  r.enforce_reality();
  r.prune();
  return r;
}

FourierTable mul(const FourierTable& a, const FourierTable& b) {
  return mul_to(a, b, max_cutoffs(a, b));
}

FourierTable differentiate(const FourierTable& u, int dim) {
  FourierTable r = u;
  double f = two_pi / u.periods()[dim];
  for (std::size_t idx = 0; idx < r.size(); ++idx) {
    if (r.raw()[idx] == complex(0, 0)) continue;
    auto k = r.multi_index(idx);
    r.raw()[idx] *= complex(0, 1) * (f * k[dim]);
  }
  return r;
}

complex average(const FourierTable& u) {
  std::vector<int> k(u.dims(), 0);
  return u.coeff(k);
}

FourierTable shift_angles(const FourierTable& u, const std::vector<double>& c) {
  assert(int(c.size()) == u.dims());
  FourierTable r = u;
  for (std::size_t idx = 0; idx < r.size(); ++idx) {
    if (r.raw()[idx] == complex(0, 0)) continue;
    auto k = r.multi_index(idx);
    double phase = 0;
    for (int d = 0; d < u.dims(); ++d)
      phase += (two_pi / u.periods()[d]) * k[d] * c[d];
    r.raw()[idx] *= std::exp(complex(0, 1) * phase);
  }
  r.enforce_reality();
  return r;
}

double weighted_norm(const FourierTable& u, double rho, double sigma) {
  double s = 0;
  bool has_x = !u.periods().empty() && u.periods()[0] == four_pi;
  for (std::size_t idx = 0; idx < u.size(); ++idx) {
    if (u.raw()[idx] == complex(0, 0)) continue;
    auto k = u.multi_index(idx);
    double w = 0;
    for (int d = 0; d < u.dims(); ++d) {
      if (d == 0 && has_x)
        w += std::abs(k[d]) * 0.5 * rho;
      else
        w += std::abs(k[d]) * sigma;
    }
    s += std::abs(u.raw()[idx]) * std::exp(w);
  }
  return s;
}

void split_at_infinity(const FourierTable& u, FourierTable& u0, FourierTable& u1) {
  if (u.periods().empty() || u.periods()[0] != four_pi)
    throw domain_error("split_at_infinity: table is not in x-representation");
  std::vector<int> kphi(u.cutoffs().begin() + 1, u.cutoffs().end());
  u0 = FourierTable::phi_table(kphi);
  // u0(phi) = sum over k_x of coefficients (e^{i k x/2} = 1 at x = 0)
  for (std::size_t idx = 0; idx < u.size(); ++idx) {
    if (u.raw()[idx] == complex(0, 0)) continue;
    auto k = u.multi_index(idx);
    std::vector<int> kp(k.begin() + 1, k.end());
    u0.set_coeff(kp, u0.coeff(kp) + u.raw()[idx]);
  }
  u1 = u;
  for (std::size_t idx = 0; idx < u0.size(); ++idx) {
    auto kp = u0.multi_index(idx);
    std::vector<int> k;
    k.push_back(0);
    k.insert(k.end(), kp.begin(), kp.end());
    u1.set_coeff(k, u1.coeff(k) - u0.raw()[idx]);
  }
}

double average_at_infinity(const FourierTable& u) {
  FourierTable u0, u1;
  split_at_infinity(u, u0, u1);
  return average(u0).real();
}

FourierTable divide_sin_half(const FourierTable& u, int j, double tol) {
  // sin(x/2) = (z - 1/z)/(2i), z = e^{ix/2}.  Exact synthetic division in
  // the Laurent ring; requires u to vanish at both zeros x = 0, 2pi.
  if (u.periods().empty() || u.periods()[0] != four_pi)
    throw domain_error("divide_sin_half: not an x-representation table");
  FourierTable cur = u;
  for (int pass = 0; pass < j; ++pass) {
    int kx = cur.cutoffs()[0];
    std::vector<int> cut = cur.cutoffs();
    FourierTable next(cut, cur.periods());
    std::size_t nphi = 1;
    for (std::size_t d = 1; d < cut.size(); ++d) nphi *= std::size_t(2 * cut[d] + 1);
    std::size_t xstride = nphi;
    double resid = 0;
    for (std::size_t p = 0; p < nphi; ++p) {
      std::vector<complex> pm(2 * kx + 1);
      for (int m = -kx; m <= kx; ++m)
        pm[m + kx] = cur.raw()[std::size_t(m + kx) * xstride + p];
      // (z - 1/z) q = 2i p  =>  q_{m-1} - q_{m+1} = 2i p_m ;
      // downward recurrence with q_{K} = q_{K+1} = 0.
      std::vector<complex> qm(2 * kx + 3, complex(0, 0));  // index m + kx + 1
      for (int m = kx; m >= -kx; --m)
        qm[m - 1 + kx + 1] = complex(0, 2) * pm[m + kx] + qm[m + 1 + kx + 1];
      // exact division leaves q supported in [-K+1, K-1]
      resid = std::max(resid, std::abs(qm[0]));
      resid = std::max(resid, std::abs(qm[1]));
      for (int m = -kx; m <= kx; ++m)
        next.raw()[std::size_t(m + kx) * xstride + p] = qm[m + kx + 1];
    }
    double scl = std::max(cur.max_abs(), 1e-300);
    if (resid > tol * scl)
      throw domain_error("order deficit: table is not divisible by sin(x/2)");
    cur = next;
  }
  cur.enforce_reality();
  return cur;
}

}  // namespace hjs
