// Skip-gram negative-sampling objective for a single (center, context) pair
// and its gradient. The trainer's update step is built from the same
// coefficients, so checking these against finite differences checks the
// trainer.

#ifndef ASC_SGNS_OBJECTIVE_H_
#define ASC_SGNS_OBJECTIVE_H_

#include <span>
#include <vector>

namespace asc {

double LogSigmoid(double x);
double Sigmoid(double x);

// log s(u_ctx . v) + sum_n log s(-u_n . v), where v is the center's input
// vector and u are output vectors.
double SgnsPairObjective(std::span<const double> center, std::span<const double> context,
                         const std::vector<std::span<const double>>& negatives);

// Gradient of SgnsPairObjective (ascent direction) with respect to each
// argument.
struct SgnsGradient {
  std::vector<double> center;
  std::vector<double> context;
  std::vector<std::vector<double>> negatives;
};

SgnsGradient SgnsPairGradient(std::span<const double> center, std::span<const double> context,
                              const std::vector<std::span<const double>>& negatives);

// One stochastic gradient-ascent step with learning rate `lr`, in place.
// Output vectors are updated before the center vector, as in word2vec.
// Returns the pair objective evaluated before the update.
double ApplySgnsStep(std::span<double> center, std::span<double> context,
                     const std::vector<std::span<double>>& negatives, double lr);

}  // namespace asc

#endif  // ASC_SGNS_OBJECTIVE_H_
