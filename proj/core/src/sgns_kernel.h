// Shared SGNS update kernel. `Access` abstracts plain vs. relaxed-atomic
// element access so the lock-free parallel trainer and the deterministic
// trainer run the same arithmetic.

#ifndef ASC_SRC_SGNS_KERNEL_H_
#define ASC_SRC_SGNS_KERNEL_H_

#include <atomic>
#include <cstddef>

#include "asc/sgns_objective.h"

namespace asc::internal {

struct PlainAccess {
  static double Load(const double& x) { return x; }
  static void Store(double& x, double v) { x = v; }
};

struct RelaxedAccess {
  static double Load(const double& x) {
    return std::atomic_ref<const double>(x).load(std::memory_order_relaxed);
  }
  static void Store(double& x, double v) {
    std::atomic_ref<double>(x).store(v, std::memory_order_relaxed);
  }
};

template <typename Access>
double Dot(const double* a, const double* b, int dim) {
  double s = 0.0;
  for (int i = 0; i < dim; ++i) s += Access::Load(a[i]) * Access::Load(b[i]);
  return s;
}

// Ascent on log s(u_out . v) when `label` is 1, log s(-u_out . v) when 0.
// Accumulates the center gradient (scaled by lr) into `center_grad` and
// updates `out` in place. Returns the term's objective value.
template <typename Access>
double SgnsTerm(const double* center, double* out, int label, double lr, double* center_grad,
                int dim) {
  const double f = Dot<Access>(center, out, dim);
  const double coeff = (label - Sigmoid(f)) * lr;
  for (int i = 0; i < dim; ++i) center_grad[i] += coeff * Access::Load(out[i]);
  for (int i = 0; i < dim; ++i) {
    Access::Store(out[i], Access::Load(out[i]) + coeff * Access::Load(center[i]));
  }
  return label == 1 ? LogSigmoid(f) : LogSigmoid(-f);
}

template <typename Access>
void AddInto(double* center, const double* grad, int dim) {
  for (int i = 0; i < dim; ++i) Access::Store(center[i], Access::Load(center[i]) + grad[i]);
}

}  // namespace asc::internal

#endif  // ASC_SRC_SGNS_KERNEL_H_
