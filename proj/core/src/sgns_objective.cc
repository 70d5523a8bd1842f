#include "asc/sgns_objective.h"

#include <cmath>
#include <stdexcept>

#include "sgns_kernel.h"

namespace asc {

double Sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double LogSigmoid(double x) {
  if (x >= 0) return -std::log1p(std::exp(-x));
  return x - std::log1p(std::exp(x));
}

namespace {

double DotSpan(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("SGNS vectors differ in dimension");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

double SgnsPairObjective(std::span<const double> center, std::span<const double> context,
                         const std::vector<std::span<const double>>& negatives) {
  double obj = LogSigmoid(DotSpan(context, center));
  for (const auto& n : negatives) obj += LogSigmoid(-DotSpan(n, center));
  return obj;
}

SgnsGradient SgnsPairGradient(std::span<const double> center, std::span<const double> context,
                              const std::vector<std::span<const double>>& negatives) {
  const std::size_t dim = center.size();
  SgnsGradient g;
  g.center.assign(dim, 0.0);
  // d/dx log s(x) = 1 - s(x); d/dx log s(-x) = -s(x).
  const double cp = 1.0 - Sigmoid(DotSpan(context, center));
  g.context.resize(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    g.context[i] = cp * center[i];
    g.center[i] += cp * context[i];
  }
  for (const auto& n : negatives) {
    const double cn = -Sigmoid(DotSpan(n, center));
    std::vector<double> gn(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      gn[i] = cn * center[i];
      g.center[i] += cn * n[i];
    }
    g.negatives.push_back(std::move(gn));
  }
  return g;
}

double ApplySgnsStep(std::span<double> center, std::span<double> context,
                     const std::vector<std::span<double>>& negatives, double lr) {
  const int dim = static_cast<int>(center.size());
  if (context.size() != center.size()) throw std::invalid_argument("SGNS dimension mismatch");
  std::vector<double> grad(center.size(), 0.0);
  using internal::PlainAccess;
  double obj = internal::SgnsTerm<PlainAccess>(center.data(), context.data(), 1, lr, grad.data(), dim);
  for (const auto& n : negatives) {
    if (n.size() != center.size()) throw std::invalid_argument("SGNS dimension mismatch");
    obj += internal::SgnsTerm<PlainAccess>(center.data(), n.data(), 0, lr, grad.data(), dim);
  }
  internal::AddInto<PlainAccess>(center.data(), grad.data(), dim);
  return obj;
}

}  // namespace asc
