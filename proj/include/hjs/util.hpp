// SPDX-License-Identifier: Apache-2.0

#ifndef HJS_UTIL_HPP
#define HJS_UTIL_HPP

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace hjs {

using complex = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;
inline constexpr double four_pi = 4.0 * pi;

/// Thrown when an operation's mathematical precondition fails
/// (dimension mismatch, mean obstruction, small divisor underflow, ...).
class domain_error : public std::runtime_error {
public:
  explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

inline double sqr(double x) { return x * x; }

/// Gauss-Legendre nodes/weights on [-1,1], cached per order.
const std::vector<double>& gauss_nodes(int n);
const std::vector<double>& gauss_weights(int n);

/// Least-squares slope of y against x.
double ls_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace hjs

#endif
