#pragma once

#include <string>

namespace rbfsbp {

enum class KernelFamily { Gaussian, Multiquadric, PhsOdd, PhsEven };

/// Radial kernel phi(r).
///
///   Gaussian       exp(-(eps r)^2)      order 0
///   Multiquadric   sqrt(1 + (eps r)^2)  order 1
///   PhsOdd(k)      r^(2k-1)             order k
///   PhsEven(k)     r^(2k) log r         order k+1
///
/// "order" is the order of conditional positive definiteness; an RBF space
/// built on the kernel needs polynomials up to degree order-1 for guaranteed
/// unique solvability.
class Kernel {
 public:
  static Kernel gaussian(double epsilon);
  static Kernel multiquadric(double epsilon);
  /// r^(2k-1); k = 2 is the cubic spline r^3.
  static Kernel phs_odd(int k);
  /// r^(2k) log r; k = 1 is the thin-plate spline.
  static Kernel phs_even(int k);

  KernelFamily family() const { return family_; }
  /// Shape parameter; only meaningful for Gaussian and Multiquadric.
  double epsilon() const { return epsilon_; }
  /// PHS exponent parameter; only meaningful for the PHS families.
  int k() const { return k_; }

  bool has_shape() const {
    return family_ == KernelFamily::Gaussian || family_ == KernelFamily::Multiquadric;
  }

  std::string name() const;

  friend bool operator==(const Kernel&, const Kernel&) = default;

 private:
  Kernel(KernelFamily family, double epsilon, int k)
      : family_(family), epsilon_(epsilon), k_(k) {}

  KernelFamily family_;
  double epsilon_;
  int k_;
};

/// phi(r) for r >= 0. PhsEven returns the limit 0 at r = 0.
double eval(const Kernel& kernel, double r);

/// d/dx phi(|x - center|), with the two-sided limit 0 at x == center.
double eval_dx(const Kernel& kernel, double x, double center);

/// Extended-precision variants, used where kernel sums cancel heavily
/// (cardinal functions of ill-conditioned spaces).
long double eval_extended(const Kernel& kernel, long double r);
long double eval_dx_extended(const Kernel& kernel, long double x, long double center);

/// Conditional positive definiteness order.
int cpd_order(const Kernel& kernel);

}  // namespace rbfsbp
