// SPDX-License-Identifier: Apache-2.0

#ifndef HJS_FOURIER_HPP
#define HJS_FOURIER_HPP

#include <map>
#include <vector>

#include "hjs/util.hpp"

namespace hjs {

/**
 * Truncated multivariate Fourier series with the reality constraint
 * c(-k) = conj(c(k)).
 *
 * Each angle has its own period: by convention the hyperbolic angle x is
 * 4*pi-periodic (dimension 0 of mixed tables) while rotator angles are
 * 2*pi-periodic.  Coefficients are stored densely over the cutoff box
 * |k_j| <= K_j; everything outside is zero.
 */
class FourierTable {
public:
  FourierTable() = default;
  FourierTable(std::vector<int> cutoffs, std::vector<double> periods);

  /// All-2pi-periodic table (rotator angles only).
  static FourierTable phi_table(std::vector<int> cutoffs);
  /// Table over (x, phi_1..phi_n): dimension 0 is 4pi-periodic.
  static FourierTable x_phi_table(int kx, std::vector<int> kphi);

  int dims() const { return int(cutoff_.size()); }
  const std::vector<int>& cutoffs() const { return cutoff_; }
  const std::vector<double>& periods() const { return period_; }
  std::size_t size() const { return c_.size(); }

  /// Coefficient access; k_j in [-K_j, K_j].
  complex coeff(const std::vector<int>& k) const;
  void set_coeff(const std::vector<int>& k, complex v);
  const std::vector<complex>& raw() const { return c_; }
  std::vector<complex>& raw() { return c_; }

  /// Flat index <-> multi-index.
  std::size_t index_of(const std::vector<int>& k) const;
  std::vector<int> multi_index(std::size_t idx) const;

  /// Evaluate at real angles.
  double eval(const std::vector<double>& ang) const;
  /// Evaluate at complex angles (analytic continuation).
  complex eval_c(const std::vector<complex>& ang) const;

  /// Max |coefficient|.
  double max_abs() const;
  /// c(-k) <- (c(-k) + conj(c(k)))/2 : enforce the reality constraint.
  void enforce_reality();
  bool check_reality(double tol) const;
  /// Drop coefficients below tol * max_abs().
  void prune(double tol = 1e-16);

  bool same_shape(const FourierTable& o) const;

private:
  std::vector<int> cutoff_;      // K_j >= 0
  std::vector<double> period_;   // angle periods
  std::vector<int> ext_;         // 2K_j + 1
  std::vector<std::size_t> stride_;
  std::vector<complex> c_;
};

// -- series algebra ---------------------------------------------------------

/// Coefficientwise sum; cutoffs merged to the elementwise maximum.
FourierTable add(const FourierTable& a, const FourierTable& b);
FourierTable sub(const FourierTable& a, const FourierTable& b);
FourierTable scale(const FourierTable& a, double s);

/// Product, computed on a doubled grid and truncated back to the
/// elementwise-max cutoffs of the operands.
FourierTable mul(const FourierTable& a, const FourierTable& b);
/// Product truncated to given cutoffs.
FourierTable mul_to(const FourierTable& a, const FourierTable& b,
                    const std::vector<int>& cutoffs);

/// Spectral derivative along dimension `dim` (multiplication by i*k*2pi/P).
FourierTable differentiate(const FourierTable& u, int dim);

/// Zero mode.
complex average(const FourierTable& u);

/// phi -> phi + c (phase factors exp(i<k,c>) in frequency units).
FourierTable shift_angles(const FourierTable& u, const std::vector<double>& c);

/// Weighted l1 majorant of the strip supremum norm:
///   sum_k |u_k| exp(|k_x| rho/2 + sum_j |k_phi,j| sigma).
/// For x-free tables only the sigma part applies.
double weighted_norm(const FourierTable& u, double rho, double sigma);

/// u(x,phi) = u0(phi) + u1(x,phi) with u1(0,phi) = 0; u0 is the trace at
/// x = 0 (s = -infinity).  Requires dimension 0 to be the x angle.
void split_at_infinity(const FourierTable& u, FourierTable& u0,
                       FourierTable& u1);

/// Average at infinity: phi-mean of the x=0 trace.
double average_at_infinity(const FourierTable& u);

/// Exact synthetic division by sin(x/2)^j in coefficient space (dimension 0,
/// 4pi-periodic).  Fails with "order deficit" if the remainder is above
/// tol * |u|.
FourierTable divide_sin_half(const FourierTable& u, int j, double tol = 1e-8);

/// Synthesize u on the uniform tensor grid sizes n[dim] (row-major values).
std::vector<complex> synthesize(const FourierTable& u,
                                const std::vector<int>& n);
/// Analyze grid values back into a table with the given cutoffs.
FourierTable analyze(const std::vector<complex>& vals,
                     const std::vector<int>& n,
                     const std::vector<int>& cutoffs,
                     const std::vector<double>& periods);

/// In-place nd complex FFT (sign -1: forward).  Deterministic; serialized
/// around FFTW's planner.
void fft_nd(std::vector<complex>& data, const std::vector<int>& n, int sign);

}  // namespace hjs

#endif
