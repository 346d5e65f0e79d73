// SPDX-License-Identifier: Apache-2.0

#ifndef HJS_SEPARATRIX_HPP
#define HJS_SEPARATRIX_HPP

#include <optional>
#include <utility>

#include "hjs/cheb.hpp"
#include "hjs/fourier.hpp"

namespace hjs {

/// Potential with a unique non-degenerate maximum, normalized to x = 0,
/// U(0) = 0, U''(0) = -lambda^2.
struct PotentialProfile {
  FourierTable U;      // 2pi-periodic, normalized
  double lambda = 0;   // characteristic exponent
  double maximizer = 0;  // original location of the maximum (pre-shift)
};

/// Locate and normalize the absolute maximum; errors: "degenerate maximum",
/// "non-hyperbolic".
PotentialProfile analyze_potential(const FourierTable& U);

/// A point of the doubled circle with stable distances to the two
/// hyperbolic ends (x = 0 and x = +-2pi).
struct XPoint {
  double x = 0;    // signed coordinate in (-2pi, 2pi)
  double d0 = 0;   // |x|
  double d2 = 0;   // 2pi - |x|
};

/**
 * The separatrix function psi = 2 sin(x/2) psi1(x) together with the
 * energy-time map s(x) = log(x/(2pi-x)) + w(x) and its stable inverse.
 *
 * The sign of x encodes the line of the bi-cylinder: x in (0,2pi) is the
 * real line Im s = 0, x in (-2pi,0) is the line Im s = pi.  On both,
 * sigma(x) denotes the real part of s; sigma -> -infinity at x -> 0.
 */
class SeparatrixMap {
public:
  SeparatrixMap() = default;

  /// Build from a normalized profile (time map, endpoint constants,
  /// default strip parameters).
  static SeparatrixMap build(const PotentialProfile& prof);

  const FourierTable& psi_table() const { return psi_; }
  const FourierTable& psi1_table() const { return psi1_; }
  double lambda() const { return lambda_; }
  double r_psi() const { return r_psi_; }
  double T_psi() const { return T_psi_; }
  double T_default() const { return 1.5 * T_psi_; }
  double rho() const { return rho_; }
  double sigma2() const { return sigma2_; }
  void set_strip(double rho, double sigma2) { rho_ = rho; sigma2_ = sigma2; }
  double pv_offset() const { return c_a_; }  // sigma_tilde = s_raw - c_a

  /// time map with the spec normalization s(pi) = 0, x in (0, 2pi).
  double time_map(double x) const;
  /// inverse of time_map.
  double inverse_time_map(double s) const;
  /// chi(s) = psi(x(s)).
  double chi(double s) const;

  /// Internal (PV-normalized) coordinate: sigma on either line;
  /// sign > 0 is the Im s = 0 line.
  double sigma_of_x(double x) const;
  XPoint x_of_sigma(double sigma, int sign) const;
  XPoint xpoint(double x) const;

  /// psi evaluated with endpoint-stable factoring.
  double psi_at(const XPoint& p) const;
  double psi_at(double x) const { return psi_at(xpoint(x)); }
  double dpsi_at(double x) const;
  double psi1_at(double x) const;
  double psi_second_at_zero() const { return psi_xx0_; }

  /// eta1 = (psi' - 1)/psi, the curvature factor of the end at x=0.
  double eta1_at(double x) const;

  /// Involution sigma -> -sigma within a line: j(x) with stable endpoint
  /// data (j maps a neighborhood of one end onto the other).
  XPoint involution(const XPoint& p) const;

  /// s(x) continued to complex x in the (0,2pi) chart (for strip marching).
  complex sigma_complex(complex x) const;
  complex psi_complex(complex x) const;

  /// Level-curve strip estimate; domain half-width is measured in the
  /// original (2pi-periodic) angle of U, i.e. the x/2 chart.
  /// Returns (rho, sigma2) and the per-segment four-vectors.
  struct StripEstimate {
    double rho = 0;
    double sigma2 = 0;
    std::array<double, 4> rho_segments{};
    std::array<double, 4> sigma_segments{};
  };
  StripEstimate estimate_strip(double domain_halfwidth, double T) const;

  /// Monotone tabulation of s(x) on (0, 2pi), s(pi) = 0.
  const std::vector<std::pair<double, double>>& time_table() const {
    return time_table_;
  }

private:
  FourierTable psi_;    // 4pi lattice, odd modes
  FourierTable psi1_;   // 2pi-periodic factor
  FourierTable dpsi_;   // derivative of psi
  double lambda_ = 1;
  double psi_xx0_ = 0;
  ChebSeries w_;        // s(x) - log(x/(2pi-x)) on [0, 2pi]
  ChebSeries dw_;       // its derivative
  double c_a_ = 0;      // (w(0)+w(2pi))/2 : PV normalization constant
  double r_psi_ = 0.49;
  double T_psi_ = 1;
  double rho_ = 0, sigma2_ = 0;
  std::vector<std::pair<double, double>> time_table_;

  double sigma_raw_pos(double x) const;      // x in (0, 2pi)
  XPoint x_raw_of_sigma(double sraw) const;  // inverse on (0, 2pi)
};

}  // namespace hjs

#endif
