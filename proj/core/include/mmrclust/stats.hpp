#pragma once

namespace mmrclust::stats {

/// Regularized incomplete beta I_x(a, b) for a, b > 0 and x in [0, 1],
/// evaluated by Lentz's continued fraction (absolute error below 1e-12 in
/// the ranges used here).
double regularized_incomplete_beta(double a, double b, double x);

/// P(|T| >= |t|) for Student's t with `dof` degrees of freedom.
double student_t_two_sided_p(double t, double dof);

}  // namespace mmrclust::stats
