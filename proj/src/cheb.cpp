// SPDX-License-Identifier: Apache-2.0

#include "hjs/cheb.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <mutex>

namespace hjs {

namespace {

// cached cosine matrices for first-kind point transforms
struct ChebMats {
  std::vector<double> synth;  // [m*n + j] = cos(j pi (m+1/2)/n)
  std::vector<double> anal;   // [j*n + m] = (2-d_j0)/n cos(j pi (m+1/2)/n)
};

const ChebMats& cheb_mats(int n) {
  static std::map<int, ChebMats> cache;
  static std::mutex mx;
  std::lock_guard<std::mutex> lk(mx);
  auto it = cache.find(n);
  if (it == cache.end()) {
    ChebMats m;
    m.synth.resize(std::size_t(n) * n);
    m.anal.resize(std::size_t(n) * n);
    for (int mm = 0; mm < n; ++mm)
      for (int j = 0; j < n; ++j) {
        double c = std::cos(j * pi * (mm + 0.5) / n);
        m.synth[std::size_t(mm) * n + j] = c;
        m.anal[std::size_t(j) * n + mm] = (j == 0 ? 1.0 : 2.0) / n * c;
      }
    it = cache.emplace(n, std::move(m)).first;
  }
  return it->second;
}

int next_pow2(int n) {
  int p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace

std::vector<double> cheb_points(double lo, double hi, int n) {
  std::vector<double> x(n);
  double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  for (int m = 0; m < n; ++m) x[m] = mid + half * std::cos(pi * (m + 0.5) / n);
  return x;
}

// ---------------------------------------------------------------------------
// ChebSeries

ChebSeries ChebSeries::fit(double lo, double hi, int n,
                           const std::function<double(double)>& f) {
  auto pts = cheb_points(lo, hi, n);
  std::vector<double> v(n);
  for (int m = 0; m < n; ++m) v[m] = f(pts[m]);
  const auto& M = cheb_mats(n);
  std::vector<double> c(n, 0.0);
  for (int j = 0; j < n; ++j) {
    double s = 0;
    for (int m = 0; m < n; ++m) s += M.anal[std::size_t(j) * n + m] * v[m];
    c[j] = s;
  }
  return ChebSeries(lo, hi, std::move(c));
}

double ChebSeries::eval(double x) const {
  double t = (2.0 * x - lo_ - hi_) / (hi_ - lo_);
  double b1 = 0, b2 = 0;
  for (int j = int(c_.size()) - 1; j >= 1; --j) {
    double b0 = 2 * t * b1 - b2 + c_[j];
    b2 = b1;
    b1 = b0;
  }
  return t * b1 - b2 + (c_.empty() ? 0.0 : c_[0]);
}

complex ChebSeries::eval_c(complex x) const {
  complex t = (2.0 * x - lo_ - hi_) / (hi_ - lo_);
  complex b1 = 0, b2 = 0;
  for (int j = int(c_.size()) - 1; j >= 1; --j) {
    complex b0 = 2.0 * t * b1 - b2 + c_[j];
    b2 = b1;
    b1 = b0;
  }
  return t * b1 - b2 + (c_.empty() ? complex(0) : complex(c_[0]));
}

ChebSeries ChebSeries::derivative() const {
  int n = size();
  std::vector<double> d(std::max(n - 1, 1), 0.0);
  if (n >= 2) {
    // standard recurrence d_{j-1} = d_{j+1} + 2 j c_j (then scale)
    std::vector<double> w(n + 2, 0.0);
    for (int j = n - 1; j >= 1; --j) w[j - 1] = w[j + 1] + 2.0 * j * c_[j];
    w[0] *= 0.5;
    double scale = 2.0 / (hi_ - lo_);
    for (int j = 0; j < n - 1; ++j) d[j] = w[j] * scale;
  }
  return ChebSeries(lo_, hi_, std::move(d));
}

double ChebSeries::deriv(double x) const { return derivative().eval(x); }

ChebSeries ChebSeries::antiderivative(double x0) const {
  int n = size();
  std::vector<double> a(n + 1, 0.0);
  double h = 0.5 * (hi_ - lo_);
  auto cc = [&](int j) { return j < n ? c_[j] : 0.0; };
  if (n >= 1) a[1] = h * (cc(0) - 0.5 * cc(2));
  for (int j = 2; j <= n; ++j) a[j] = h * (cc(j - 1) - cc(j + 1)) / (2.0 * j);
  ChebSeries r(lo_, hi_, std::move(a));
  double v0 = r.eval(x0);
  r.c_[0] -= v0;
  return r;
}

double ChebSeries::max_coeff_tail(int count) const {
  double m = 0;
  for (int j = std::max(0, size() - count); j < size(); ++j)
    m = std::max(m, std::abs(c_[j]));
  return m;
}

// ---------------------------------------------------------------------------
// ChebFourier

ChebFourier::ChebFourier(double lo, double hi, int nx, std::vector<int> kphi)
    : lo_(lo), hi_(hi), nx_(nx), kphi_(std::move(kphi)) {
  phi_ext_.resize(kphi_.size());
  phi_stride_.resize(kphi_.size());
  nphi_ = 1;
  for (int d = int(kphi_.size()) - 1; d >= 0; --d) {
    phi_ext_[d] = 2 * kphi_[d] + 1;
    phi_stride_[d] = nphi_;
    nphi_ *= std::size_t(phi_ext_[d]);
  }
  c_.assign(std::size_t(nx_) * nphi_, complex(0, 0));
}

std::vector<int> ChebFourier::phi_multi_index(std::size_t p) const {
  std::vector<int> k(kphi_.size());
  for (std::size_t d = 0; d < kphi_.size(); ++d)
    k[d] = int(p / phi_stride_[d]) % phi_ext_[d] - kphi_[d];
  return k;
}

std::size_t ChebFourier::phi_index(const std::vector<int>& k) const {
  std::size_t p = 0;
  for (std::size_t d = 0; d < kphi_.size(); ++d) {
    assert(std::abs(k[d]) <= kphi_[d]);
    p += phi_stride_[d] * std::size_t(k[d] + kphi_[d]);
  }
  return p;
}

namespace {

// phi grid sizes for sampling cutoffs K
std::vector<int> phi_grid_sizes(const std::vector<int>& kphi, double factor = 1.0) {
  std::vector<int> n(kphi.size());
  for (std::size_t d = 0; d < kphi.size(); ++d)
    n[d] = next_pow2(std::max(int(std::ceil(factor * (2 * kphi[d] + 1))), 4));
  return n;
}

std::size_t flat_size(const std::vector<int>& n) {
  std::size_t t = 1;
  for (int m : n) t *= std::size_t(m);
  return t;
}

// values (x-major) -> coefficients, on grid sizes ngrid, into cutoffs kphi
void grid_to_coeffs(const std::vector<double>& vals, int nx,
                    const std::vector<int>& ngrid, ChebFourier& out) {
  std::size_t ng = flat_size(ngrid);
  // phi FFT per x-node
  std::vector<std::vector<complex>> rows(nx);
  for (int m = 0; m < nx; ++m) {
    std::vector<complex> row(ng);
    for (std::size_t g = 0; g < ng; ++g) row[g] = vals[std::size_t(m) * ng + g];
    if (!ngrid.empty()) {
      fft_nd(row, ngrid, -1);
      for (auto& v : row) v /= double(ng);
    }
    rows[m] = std::move(row);
  }
  // gather into cutoff box, then Chebyshev transform across x
  const auto& M = cheb_mats(nx);
  std::vector<std::size_t> stride(ngrid.size());
  std::size_t t = 1;
  for (int d = int(ngrid.size()) - 1; d >= 0; --d) {
    stride[d] = t;
    t *= std::size_t(ngrid[d]);
  }
  for (std::size_t p = 0; p < out.nphi(); ++p) {
    auto k = out.phi_multi_index(p);
    std::size_t g = 0;
    bool ok = true;
    for (std::size_t d = 0; d < k.size(); ++d) {
      if (2 * std::abs(k[d]) >= ngrid[d]) {
        ok = false;
        break;
      }
      int pos = k[d] >= 0 ? k[d] : ngrid[d] + k[d];
      g += stride[d] * std::size_t(pos);
    }
    if (!ok) continue;
    for (int j = 0; j < nx; ++j) {
      complex s(0, 0);
      for (int m = 0; m < nx; ++m)
        s += M.anal[std::size_t(j) * nx + m] * rows[m][g];
      out.raw()[std::size_t(j) * out.nphi() + p] = s;
    }
  }
}

}  // namespace

ChebFourier ChebFourier::from_func(
    double lo, double hi, int nx, const std::vector<int>& kphi,
    const std::function<double(double, const std::vector<double>&)>& f) {
  ChebFourier out(lo, hi, nx, kphi);
  auto ngrid = phi_grid_sizes(kphi);
  std::size_t ng = flat_size(ngrid);
  auto xs = cheb_points(lo, hi, nx);
  // phi grid angles
  std::vector<std::vector<double>> ang(ng);
  for (std::size_t g = 0; g < ng; ++g) {
    std::vector<double> a(kphi.size());
    std::size_t rem = g;
    for (std::size_t d = 0; d < kphi.size(); ++d) {
      std::size_t st = 1;
      for (std::size_t e = d + 1; e < kphi.size(); ++e) st *= std::size_t(ngrid[e]);
      std::size_t q = rem / st;
      rem %= st;
      a[d] = two_pi * double(q) / ngrid[d];
    }
    ang[g] = std::move(a);
  }
  std::vector<double> vals(std::size_t(nx) * ng);
  for (int m = 0; m < nx; ++m)
    for (std::size_t g = 0; g < ng; ++g)
      vals[std::size_t(m) * ng + g] = f(xs[m], ang[g]);
  grid_to_coeffs(vals, nx, ngrid, out);
  out.enforce_reality();
  return out;
}

ChebFourier ChebFourier::from_table(double lo, double hi, int nx,
                                    const std::vector<int>& kphi,
                                    const FourierTable& t) {
  return from_func(lo, hi, nx, kphi,
                   [&](double x, const std::vector<double>& phi) {
                     std::vector<double> ang;
                     ang.reserve(phi.size() + 1);
                     ang.push_back(x);
                     ang.insert(ang.end(), phi.begin(), phi.end());
                     return t.eval(ang);
                   });
}

ChebFourier ChebFourier::constant(double lo, double hi, int nx,
                                  const std::vector<int>& kphi, double v) {
  ChebFourier out(lo, hi, nx, kphi);
  std::vector<int> k0(kphi.size(), 0);
  out.raw()[out.phi_index(k0)] = v;  // j = 0 row
  return out;
}

ChebFourier ChebFourier::from_x_func(double lo, double hi, int nx,
                                     const std::vector<int>& kphi,
                                     const std::function<double(double)>& f) {
  ChebFourier out(lo, hi, nx, kphi);
  ChebSeries s = ChebSeries::fit(lo, hi, nx, f);
  std::vector<int> k0(kphi.size(), 0);
  std::size_t p0 = out.phi_index(k0);
  for (int j = 0; j < nx; ++j)
    out.raw()[std::size_t(j) * out.nphi() + p0] = s.coeff()[j];
  return out;
}

ChebFourier ChebFourier::from_phi_table(double lo, double hi, int nx,
                                        const FourierTable& phi_tab,
                                        const std::vector<int>& kphi) {
  ChebFourier out(lo, hi, nx, kphi);
  for (std::size_t idx = 0; idx < phi_tab.size(); ++idx) {
    if (phi_tab.raw()[idx] == complex(0, 0)) continue;
    auto k = phi_tab.multi_index(idx);
    bool in = true;
    for (std::size_t d = 0; d < k.size(); ++d)
      if (std::abs(k[d]) > kphi[d]) {
        in = false;
        break;
      }
    if (in) out.raw()[out.phi_index(k)] = phi_tab.raw()[idx];
  }
  return out;
}

std::vector<complex> ChebFourier::mode(const std::vector<int>& k) const {
  std::vector<complex> r(nx_);
  std::size_t p = phi_index(k);
  for (int j = 0; j < nx_; ++j) r[j] = c_[std::size_t(j) * nphi_ + p];
  return r;
}

void ChebFourier::set_mode(const std::vector<int>& k,
                           const std::vector<complex>& cheb) {
  std::size_t p = phi_index(k);
  for (int j = 0; j < nx_; ++j)
    c_[std::size_t(j) * nphi_ + p] = j < int(cheb.size()) ? cheb[j] : complex(0, 0);
}

std::vector<complex> ChebFourier::modes_at_x(double x) const {
  double t = (2.0 * x - lo_ - hi_) / (hi_ - lo_);
  std::vector<complex> b1(nphi_, complex(0, 0)), b2(nphi_, complex(0, 0));
  for (int j = nx_ - 1; j >= 1; --j) {
    const complex* row = &c_[std::size_t(j) * nphi_];
    for (std::size_t p = 0; p < nphi_; ++p) {
      complex b0 = 2.0 * t * b1[p] - b2[p] + row[p];
      b2[p] = b1[p];
      b1[p] = b0;
    }
  }
  std::vector<complex> r(nphi_);
  for (std::size_t p = 0; p < nphi_; ++p)
    r[p] = t * b1[p] - b2[p] + c_[p];
  return r;
}

double ChebFourier::eval(double x, const std::vector<double>& phi) const {
  auto m = modes_at_x(x);
  complex s(0, 0);
  for (std::size_t p = 0; p < nphi_; ++p) {
    if (m[p] == complex(0, 0)) continue;
    auto k = phi_multi_index(p);
    double ph = 0;
    for (std::size_t d = 0; d < k.size(); ++d) ph += k[d] * phi[d];
    s += m[p] * std::exp(complex(0, 1) * ph);
  }
  return s.real();
}

FourierTable ChebFourier::trace(double x) const {
  FourierTable t = FourierTable::phi_table(kphi_);
  auto m = modes_at_x(x);
  for (std::size_t p = 0; p < nphi_; ++p) t.set_coeff(phi_multi_index(p), m[p]);
  t.enforce_reality();
  return t;
}

ChebFourier ChebFourier::derivative_x() const {
  ChebFourier r(lo_, hi_, nx_, kphi_);
  double scale = 2.0 / (hi_ - lo_);
  for (std::size_t p = 0; p < nphi_; ++p) {
    std::vector<complex> w(nx_ + 2, complex(0, 0));
    for (int j = nx_ - 1; j >= 1; --j)
      w[j - 1] = w[j + 1] + 2.0 * double(j) * c_[std::size_t(j) * nphi_ + p];
    w[0] *= 0.5;
    for (int j = 0; j < nx_ - 1; ++j)
      r.c_[std::size_t(j) * nphi_ + p] = w[j] * scale;
  }
  return r;
}

ChebFourier ChebFourier::derivative_phi(int d) const {
  ChebFourier r = *this;
  for (std::size_t p = 0; p < nphi_; ++p) {
    auto k = phi_multi_index(p);
    complex f = complex(0, 1) * double(k[d]);
    for (int j = 0; j < nx_; ++j) r.c_[std::size_t(j) * nphi_ + p] *= f;
  }
  return r;
}

double ChebFourier::max_abs_coeff() const {
  double m = 0;
  for (auto& v : c_) m = std::max(m, std::abs(v));
  return m;
}

double ChebFourier::sup_nodal() const {
  auto xs = cheb_points(lo_, hi_, nx_);
  auto ngrid = phi_grid_sizes(kphi_);
  std::size_t ng = flat_size(ngrid);
  double mx = 0;
  for (double x : xs) {
    auto modes = modes_at_x(x);
    // synthesize on phi grid
    std::vector<complex> grid(ng, complex(0, 0));
    std::vector<std::size_t> stride(ngrid.size());
    std::size_t t = 1;
    for (int d = int(ngrid.size()) - 1; d >= 0; --d) {
      stride[d] = t;
      t *= std::size_t(ngrid[d]);
    }
    for (std::size_t p = 0; p < nphi_; ++p) {
      auto k = phi_multi_index(p);
      std::size_t g = 0;
      for (std::size_t d = 0; d < k.size(); ++d) {
        int pos = k[d] >= 0 ? k[d] : ngrid[d] + k[d];
        g += stride[d] * std::size_t(pos);
      }
      grid[g] = modes[p];
    }
    if (!ngrid.empty()) fft_nd(grid, ngrid, +1);
    for (auto& v : grid) mx = std::max(mx, std::abs(v.real()));
    if (ngrid.empty()) mx = std::max(mx, std::abs(grid[0].real()));
  }
  return mx;
}

double ChebFourier::weighted(double sigma) const {
  double s = 0;
  for (std::size_t p = 0; p < nphi_; ++p) {
    auto k = phi_multi_index(p);
    double a = 0;
    for (std::size_t d = 0; d < k.size(); ++d) a += std::abs(k[d]);
    double w = std::exp(a * sigma);
    for (int j = 0; j < nx_; ++j)
      s += std::abs(c_[std::size_t(j) * nphi_ + p]) * w;
  }
  return s;
}

double ChebFourier::cheb_tail(int count) const {
  double m = 0;
  for (int j = std::max(0, nx_ - count); j < nx_; ++j)
    for (std::size_t p = 0; p < nphi_; ++p)
      m = std::max(m, std::abs(c_[std::size_t(j) * nphi_ + p]));
  return m;
}

void ChebFourier::enforce_reality() {
  for (int j = 0; j < nx_; ++j) {
    complex* row = &c_[std::size_t(j) * nphi_];
    for (std::size_t p = 0; p < nphi_; ++p) {
      std::size_t q = nphi_ - 1 - p;
      if (q < p) break;
      complex m = 0.5 * (row[p] + std::conj(row[q]));
      row[p] = m;
      row[q] = std::conj(m);
    }
  }
}

void ChebFourier::prune(double tol) {
  double th = tol * max_abs_coeff();
  for (auto& v : c_)
    if (std::abs(v) < th) v = complex(0, 0);
}

ChebFourier ChebFourier::restrict_to(double lo, double hi, int nx) const {
  ChebFourier out(lo, hi, nx, kphi_);
  auto xs = cheb_points(lo, hi, nx);
  const auto& M = cheb_mats(nx);
  std::vector<std::vector<complex>> rows(nx);
  for (int m = 0; m < nx; ++m) rows[m] = modes_at_x(xs[m]);
  for (std::size_t p = 0; p < nphi_; ++p)
    for (int j = 0; j < nx; ++j) {
      complex s(0, 0);
      for (int m = 0; m < nx; ++m)
        s += M.anal[std::size_t(j) * nx + m] * rows[m][p];
      out.c_[std::size_t(j) * nphi_ + p] = s;
    }
  return out;
}

// ---------------------------------------------------------------------------
// algebra

ChebFourier cf_add(const ChebFourier& a, const ChebFourier& b) {
  assert(a.lo() == b.lo() && a.hi() == b.hi() && a.nx() == b.nx() &&
         a.kphi() == b.kphi());
  ChebFourier r = a;
  for (std::size_t i = 0; i < r.raw().size(); ++i) r.raw()[i] += b.raw()[i];
  return r;
}

ChebFourier cf_sub(const ChebFourier& a, const ChebFourier& b) {
  return cf_add(a, cf_scale(b, -1.0));
}

ChebFourier cf_scale(const ChebFourier& a, double s) {
  ChebFourier r = a;
  for (auto& v : r.raw()) v *= s;
  return r;
}

ChebFourier cf_apply(const ChebFourier& shape,
                     const std::vector<const ChebFourier*>& args,
                     const std::function<double(const std::vector<double>&)>& f) {
  return ChebFourier::from_func(
      shape.lo(), shape.hi(), shape.nx(), shape.kphi(),
      [&](double x, const std::vector<double>& phi) {
        std::vector<double> v(args.size());
        for (std::size_t i = 0; i < args.size(); ++i) v[i] = args[i]->eval(x, phi);
        return f(v);
      });
}

ChebFourier cf_mul(const ChebFourier& a, const ChebFourier& b) {
  assert(a.lo() == b.lo() && a.hi() == b.hi());
  // oversampled nodal product
  int nx = std::max(a.nx(), b.nx());
  std::vector<int> kphi(a.kphi().size());
  for (std::size_t d = 0; d < kphi.size(); ++d)
    kphi[d] = std::max(a.kphi()[d], b.kphi()[d]);
  int nx2 = nx + nx / 2 + 4;
  std::vector<int> kphi2(kphi.size());
  for (std::size_t d = 0; d < kphi.size(); ++d) kphi2[d] = 2 * kphi[d];
  ChebFourier fine = ChebFourier::from_func(
      a.lo(), a.hi(), nx2, kphi2, [&](double x, const std::vector<double>& phi) {
        return a.eval(x, phi) * b.eval(x, phi);
      });
  ChebFourier out(a.lo(), a.hi(), nx, kphi);
  // truncate: copy coefficients within the smaller box
  for (std::size_t p = 0; p < out.nphi(); ++p) {
    auto k = out.phi_multi_index(p);
    auto src = fine.mode(k);
    std::vector<complex> dst(src.begin(), src.begin() + std::min<std::size_t>(nx, src.size()));
    out.set_mode(k, dst);
  }
  out.enforce_reality();
  return out;
}

ChebFourier cf_divide_by_x(const ChebFourier& u) {
  // q = (u - u(0,.))/x, evaluated nodally; nodes exclude 0 for even nx
  ChebFourier out(u.lo(), u.hi(), u.nx(), u.kphi());
  auto xs = cheb_points(u.lo(), u.hi(), u.nx());
  auto t0 = u.modes_at_x(0.0);
  const auto& M = cheb_mats(u.nx());
  std::vector<std::vector<complex>> rows(u.nx());
  for (int m = 0; m < u.nx(); ++m) {
    auto r = u.modes_at_x(xs[m]);
    for (std::size_t p = 0; p < u.nphi(); ++p) r[p] = (r[p] - t0[p]) / xs[m];
    rows[m] = std::move(r);
  }
  for (std::size_t p = 0; p < u.nphi(); ++p)
    for (int j = 0; j < u.nx(); ++j) {
      complex s(0, 0);
      for (int m = 0; m < u.nx(); ++m)
        s += M.anal[std::size_t(j) * u.nx() + m] * rows[m][p];
      out.raw()[std::size_t(j) * u.nphi() + p] = s;
    }
  return out;
}

}  // namespace hjs
