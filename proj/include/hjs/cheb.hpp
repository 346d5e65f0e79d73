// SPDX-License-Identifier: Apache-2.0

#ifndef HJS_CHEB_HPP
#define HJS_CHEB_HPP

#include <functional>
#include <vector>

#include "hjs/fourier.hpp"
#include "hjs/util.hpp"

namespace hjs {

/// Plain 1-D Chebyshev series on [lo, hi] (real coefficients).
class ChebSeries {
public:
  ChebSeries() = default;
  ChebSeries(double lo, double hi, std::vector<double> coeff)
      : lo_(lo), hi_(hi), c_(std::move(coeff)) {}

  /// Interpolate f at n first-kind Chebyshev points.
  static ChebSeries fit(double lo, double hi, int n,
                        const std::function<double(double)>& f);

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  int size() const { return int(c_.size()); }
  const std::vector<double>& coeff() const { return c_; }

  double eval(double x) const;
  complex eval_c(complex x) const;  // polynomial continuation
  double deriv(double x) const;
  ChebSeries derivative() const;
  /// Antiderivative vanishing at `x0`.
  ChebSeries antiderivative(double x0) const;
  double max_coeff_tail(int count) const;

private:
  double lo_ = -1, hi_ = 1;
  std::vector<double> c_;
};

/// First-kind Chebyshev points (no endpoints), descending order.
std::vector<double> cheb_points(double lo, double hi, int n);

/**
 * Real-analytic function u(x, phi) on [lo,hi] x T^n: Chebyshev in x tensor
 * Fourier in phi.  This is the working representation for elements of the
 * function classes on bi-cylinders: analytic in the hyperbolic variable on
 * an interval, periodic in the rotator angles.
 *
 * Coefficients c[j][k] are complex with conjugate symmetry in k (real
 * values).  Layout: j-major, phi flat index like FourierTable.
 */
class ChebFourier {
public:
  ChebFourier() = default;
  ChebFourier(double lo, double hi, int nx, std::vector<int> kphi);

  static ChebFourier from_func(
      double lo, double hi, int nx, const std::vector<int>& kphi,
      const std::function<double(double, const std::vector<double>&)>& f);

  /// Sample an (x,phi) FourierTable on this basis.
  static ChebFourier from_table(double lo, double hi, int nx,
                                const std::vector<int>& kphi,
                                const FourierTable& t);

  /// Constant function.
  static ChebFourier constant(double lo, double hi, int nx,
                              const std::vector<int>& kphi, double v);

  /// phi-independent function of x.
  static ChebFourier from_x_func(double lo, double hi, int nx,
                                 const std::vector<int>& kphi,
                                 const std::function<double(double)>& f);

  /// phi-only function (x-independent).
  static ChebFourier from_phi_table(double lo, double hi, int nx,
                                    const FourierTable& phi_tab,
                                    const std::vector<int>& kphi);

  bool empty() const { return c_.empty(); }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  int nx() const { return nx_; }
  int nphi_dims() const { return int(kphi_.size()); }
  const std::vector<int>& kphi() const { return kphi_; }
  std::size_t nphi() const { return nphi_; }
  const std::vector<complex>& raw() const { return c_; }
  std::vector<complex>& raw() { return c_; }

  std::vector<int> phi_multi_index(std::size_t p) const;
  std::size_t phi_index(const std::vector<int>& k) const;

  /// Chebyshev coefficients of one phi-mode.
  std::vector<complex> mode(const std::vector<int>& k) const;
  void set_mode(const std::vector<int>& k, const std::vector<complex>& cheb);

  /// Per-mode values at x (Clenshaw).
  std::vector<complex> modes_at_x(double x) const;
  double eval(double x, const std::vector<double>& phi) const;

  /// Trace at fixed x as a phi-table.
  FourierTable trace(double x) const;

  ChebFourier derivative_x() const;
  ChebFourier derivative_phi(int d) const;

  double max_abs_coeff() const;
  /// sup over the collocation grid (lower bound for the true sup).
  double sup_nodal() const;
  /// sum_{j,k} |c_{j,k}| e^{|k| sigma}: crude strip majorant.
  double weighted(double sigma) const;
  /// max |c_{j,.}| over the last `count` Chebyshev rows (resolution check).
  double cheb_tail(int count) const;

  void enforce_reality();
  void prune(double tol = 1e-17);

  /// Restrict to a subinterval (resample).
  ChebFourier restrict_to(double lo, double hi, int nx) const;

private:
  double lo_ = -1, hi_ = 1;
  int nx_ = 0;
  std::vector<int> kphi_;
  std::vector<int> phi_ext_;
  std::vector<std::size_t> phi_stride_;
  std::size_t nphi_ = 0;
  std::vector<complex> c_;

  friend ChebFourier cf_add(const ChebFourier&, const ChebFourier&);
  friend ChebFourier cf_scale(const ChebFourier&, double);
};

ChebFourier cf_add(const ChebFourier& a, const ChebFourier& b);
ChebFourier cf_sub(const ChebFourier& a, const ChebFourier& b);
ChebFourier cf_scale(const ChebFourier& a, double s);
/// Nodal product with 1.5x oversampled grids, truncated back.
ChebFourier cf_mul(const ChebFourier& a, const ChebFourier& b);

/// Nodal map: r(x,phi) = f(a(x,phi), b(x,phi), ...) applied on the grid
/// of `shape` (all inputs evaluated there).
ChebFourier cf_apply(const ChebFourier& shape,
                     const std::vector<const ChebFourier*>& args,
                     const std::function<double(const std::vector<double>&)>& f);

/// (u - u(0,.))/x with the x=0 trace subtracted nodally; exact for the
/// removable singularity.
ChebFourier cf_divide_by_x(const ChebFourier& u);

}  // namespace hjs

#endif
