#include "hyporate/abstract_rates.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hyporate/numerics.hpp"

namespace hyporate {

void AbstractConstants::validate() const {
    if (!(lambda_m > 0.0) || !std::isfinite(lambda_m) || !(lambda_M > 0.0) ||
        !std::isfinite(lambda_M) || !(C_M > 0.0) || !std::isfinite(C_M))
        throw RangeError("AbstractConstants: all constants must be positive and finite");
}

TwistChoice rate_bdms(const AbstractConstants& k) {
    k.validate();
    const double third =
        k.lambda_m * k.lambda_M / ((1.0 + k.lambda_M) * k.C_M * k.C_M);
    const double m = std::min({1.0, k.lambda_m, third});
    TwistChoice choice;
    choice.lambda = k.k_macro() / 3.0 * m;
    choice.delta = 0.5 * m;
    choice.c_minus = 0.5 * (1.0 - choice.delta);
    choice.c_plus = 0.5 * (1.0 + choice.delta);
    choice.C_factor = choice.c_plus / choice.c_minus;
    return choice;
}

double h_star(double delta, double lambda, const AbstractConstants& k) {
    const double a = k.C_M + 0.5 * lambda;
    return delta * delta * a * a -
           4.0 * (k.lambda_m - delta - 0.5 * lambda) * (delta * k.k_macro() - 0.5 * lambda);
}

double lambda_star(double delta, const AbstractConstants& k) {
    k.validate();
    const double dsup = k.twist_limit();
    if (!(delta > 0.0) || delta >= dsup)
        throw EmptyFeasibleSet("lambda_star: delta " + std::to_string(delta) +
                               " outside (0, " + std::to_string(dsup) + ")");
    // h_star(delta, .) is a downward parabola in lambda with h(0) < 0 on the
    // twist range, so {h <= 0} meets the admissible wedge in (0, r_small].
    const double km = k.k_macro();
    const double a = 0.25 * delta * delta - 1.0;
    const double b = delta * delta * k.C_M + 2.0 * (k.lambda_m - delta) + 2.0 * delta * km;
    const double c = delta * delta * k.C_M * k.C_M - 4.0 * delta * km * (k.lambda_m - delta);
    const double disc = b * b - 4.0 * a * c;
    const double cap = 2.0 * (k.lambda_m - delta);
    double root = 0.0;
    if (disc >= 0.0 && b > 0.0) {
        const double q = -0.5 * (b + std::sqrt(disc));
        const double r1 = q / a;
        const double r2 = c / q;
        root = std::min(r1, r2);
        if (root <= 0.0) root = std::max(r1, r2);
    }
    if (!(root > 0.0) || root >= cap || std::abs(h_star(delta, root, k)) >
                                            1e-9 * std::max(1.0, std::abs(c))) {
        // Floating-point fallback: the sign change sits between 0 and the cap.
        root = num::bisect_root([&](double l) { return h_star(delta, l, k); }, 1e-300, cap, 200);
    }
    return root;
}

TwistChoice optimize_rate(const AbstractConstants& k) {
    k.validate();
    const double hi = std::min(2.0, k.twist_limit());
    auto objective = [&](double delta) {
        if (!(delta > 0.0) || delta >= k.twist_limit()) return 0.0;
        return lambda_star(delta, k);
    };
    // 16-point multistart guards the empirical unimodality of the envelope.
    const auto best = num::scan_then_golden_max(objective, 1e-12 * hi, hi * (1.0 - 1e-12), 16, 80);
    TwistChoice choice;
    choice.delta = best.x;
    choice.lambda = best.value;
    choice.c_minus = 0.25 * (2.0 - choice.delta);
    choice.c_plus = 0.25 * (2.0 + choice.delta);
    choice.C_factor = (2.0 + choice.delta) / (2.0 - choice.delta);
    return choice;
}

}  // namespace hyporate
