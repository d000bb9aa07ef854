#pragma once

#include "robotkit/model.hpp"
#include "robotkit/suite.hpp"

namespace robot {

// Raw loss of the test case w.r.t. the seed's ground-truth label.
double zol(const MlpModel& model, const Tensor& x_t, int y);

// L2 first-order loss: epsilon * ||grad_x J(x_t, y)||_2. The maximum of
// <x - x_t, g> over the L2 epsilon-ball, by Cauchy-Schwarz; the seed does
// not enter.
double fol_l2(const MlpModel& model, const Tensor& x_t, int y, double epsilon);

// Linf first-order loss: epsilon * ||g||_1 - <x_t - x_0, g>, the maximum of
// <x - x_t, g> over the Linf epsilon-ball around the seed x_0. Requires
// ||x_t - x_0||_inf <= epsilon + 1e-6.
double fol_linf(const MlpModel& model, const Tensor& x_t, const Tensor& x_0, int y,
                double epsilon);

// Impurity 1 - sum(p^2) of a probability vector.
double gini(const Tensor& probs);

// Attaches {zol, fol, gini} to every case, computing FOL under the given
// norm. Idempotent; a second scoring pass reproduces identical records.
TestSuite score_suite(const MlpModel& model, TestSuite suite, Norm norm, double epsilon,
                      int threads = 1);

}  // namespace robot
