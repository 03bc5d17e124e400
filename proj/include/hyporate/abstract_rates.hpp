#pragma once

#include "hyporate/errors.hpp"

namespace hyporate {

// Certified constants of the abstract hypocoercivity setup: microscopic
// coercivity, macroscopic coercivity and the auxiliary-operator bound.
struct AbstractConstants {
    double lambda_m = 0.0;
    double lambda_M = 0.0;
    double C_M = 0.0;

    // lambda_M / (1 + lambda_M) < 1
    double k_macro() const { return lambda_M / (1.0 + lambda_M); }
    // Upper end of the twist range on which the discriminant admits roots:
    // 4 k lambda_m / (4 k + C_M^2), always below lambda_m.
    double twist_limit() const {
        const double k = k_macro();
        return 4.0 * k * lambda_m / (4.0 * k + C_M * C_M);
    }
    void validate() const;
};

// A twist parameter delta with its certified rate and norm-equivalence
// constants; C_factor == c_plus / c_minus is the multiplicative constant of
// the squared-norm decay estimate.
struct TwistChoice {
    double delta = 0.0;
    double lambda = 0.0;
    double c_minus = 0.0;
    double c_plus = 0.0;
    double C_factor = 1.0;
};

// Baseline rate/twist pair from the coarse minimum formula. Reports the
// original equivalence constants (1 +- delta)/2.
TwistChoice rate_bdms(const AbstractConstants& k);

// Discriminant of the entropy production quadratic form:
// delta^2 (C_M + lambda/2)^2 - 4 (lambda_m - delta - lambda/2) (delta k - lambda/2).
double h_star(double delta, double lambda, const AbstractConstants& k);

// Largest certified rate for a fixed twist delta in (0, twist_limit()):
// the smallest positive root of h_star(delta, .). Throws EmptyFeasibleSet
// outside that range.
double lambda_star(double delta, const AbstractConstants& k);

// Maximizes lambda_star over delta; returns the optimum with the sharpened
// equivalence constants (2 +- delta)/4.
TwistChoice optimize_rate(const AbstractConstants& k);

}  // namespace hyporate
