#include "rbfsbp/kernels.hpp"

#include <cmath>

#include "rbfsbp/errors.hpp"

namespace rbfsbp {

Kernel Kernel::gaussian(double epsilon) {
  if (!(epsilon > 0.0)) throw ContractError("gaussian kernel: epsilon must be > 0");
  return Kernel(KernelFamily::Gaussian, epsilon, 0);
}

Kernel Kernel::multiquadric(double epsilon) {
  if (!(epsilon > 0.0)) throw ContractError("multiquadric kernel: epsilon must be > 0");
  return Kernel(KernelFamily::Multiquadric, epsilon, 0);
}

Kernel Kernel::phs_odd(int k) {
  if (k < 1) throw ContractError("phs_odd kernel: k must be >= 1");
  return Kernel(KernelFamily::PhsOdd, 0.0, k);
}

Kernel Kernel::phs_even(int k) {
  if (k < 1) throw ContractError("phs_even kernel: k must be >= 1");
  return Kernel(KernelFamily::PhsEven, 0.0, k);
}

std::string Kernel::name() const {
  switch (family_) {
    case KernelFamily::Gaussian:
      return "gaussian(eps=" + std::to_string(epsilon_) + ")";
    case KernelFamily::Multiquadric:
      return "multiquadric(eps=" + std::to_string(epsilon_) + ")";
    case KernelFamily::PhsOdd:
      return "phs_odd(r^" + std::to_string(2 * k_ - 1) + ")";
    case KernelFamily::PhsEven:
      return "phs_even(r^" + std::to_string(2 * k_) + " log r)";
  }
  return "unknown";
}

namespace {

template <class T>
T value(const Kernel& kernel, T r) {
  if (r < T(0) || std::isnan(r)) throw ContractError("kernel eval: r must be >= 0");
  switch (kernel.family()) {
    case KernelFamily::Gaussian: {
      const T er = T(kernel.epsilon()) * r;
      return std::exp(-er * er);
    }
    case KernelFamily::Multiquadric: {
      const T er = T(kernel.epsilon()) * r;
      return std::sqrt(T(1) + er * er);
    }
    case KernelFamily::PhsOdd:
      return std::pow(r, 2 * kernel.k() - 1);
    case KernelFamily::PhsEven:
      if (r == T(0)) return T(0);
      return std::pow(r, 2 * kernel.k()) * std::log(r);
  }
  return T(0);
}

template <class T>
T derivative(const Kernel& kernel, T x, T center) {
  const T d = x - center;
  if (d == T(0)) return T(0);
  const T r = std::abs(d);
  switch (kernel.family()) {
    case KernelFamily::Gaussian: {
      const T e2 = T(kernel.epsilon()) * T(kernel.epsilon());
      return T(-2) * e2 * d * std::exp(-e2 * r * r);
    }
    case KernelFamily::Multiquadric: {
      const T e2 = T(kernel.epsilon()) * T(kernel.epsilon());
      return e2 * d / std::sqrt(T(1) + e2 * r * r);
    }
    case KernelFamily::PhsOdd: {
      // (2k-1) r^(2k-2) sign(d) = (2k-1) d r^(2k-3)
      const int p = 2 * kernel.k() - 1;
      if (p == 1) return d > T(0) ? T(1) : T(-1);
      return T(p) * d * std::pow(r, p - 2);
    }
    case KernelFamily::PhsEven: {
      // phi'(r) = r^(2k-1) (2k log r + 1), times sign(d)
      const int k = kernel.k();
      return d * std::pow(r, 2 * k - 2) * (T(2 * k) * std::log(r) + T(1));
    }
  }
  return T(0);
}

}  // namespace

double eval(const Kernel& kernel, double r) { return value(kernel, r); }

double eval_dx(const Kernel& kernel, double x, double center) {
  return derivative(kernel, x, center);
}

long double eval_extended(const Kernel& kernel, long double r) { return value(kernel, r); }

long double eval_dx_extended(const Kernel& kernel, long double x, long double center) {
  return derivative(kernel, x, center);
}

int cpd_order(const Kernel& kernel) {
  switch (kernel.family()) {
    case KernelFamily::Gaussian:
      return 0;
    case KernelFamily::Multiquadric:
      return 1;
    case KernelFamily::PhsOdd:
      return kernel.k();
    case KernelFamily::PhsEven:
      return kernel.k() + 1;
  }
  return 0;
}

}  // namespace rbfsbp
