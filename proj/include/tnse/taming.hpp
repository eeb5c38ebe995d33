#pragma once

#include <stdexcept>

#include "tnse/field.hpp"

namespace tnse {

/// Piecewise taming rule: zero below the threshold N, slope-1 linear
/// above N+1, and the C^1 cubic bridge g(N+t) = 2t^2 - t^3 on [N,N+1].
/// The bridge derivative t(4-3t) stays in [0, 4/3], so g' in [0,2].
struct TamingFunction {
    double N = 10.0;

    explicit TamingFunction(double threshold = 10.0) : N(threshold) {
        if (N <= 0.0) throw std::invalid_argument("taming.N must be positive");
    }

    double g(double r) const {
        if (r < 0.0) throw std::domain_error("g: negative argument");
        if (r <= N) return 0.0;
        if (r >= N + 1.0) return r - N;
        const double t = r - N;
        return t * t * (2.0 - t);
    }

    double g_prime(double r) const {
        if (r < 0.0) throw std::domain_error("g_prime: negative argument");
        if (r <= N) return 0.0;
        if (r >= N + 1.0) return 1.0;
        const double t = r - N;
        return t * (4.0 - 3.0 * t);
    }

    /// phi(r) = r - g(r); equals r below N and N above N+1.
    double phi(double r) const { return r - g(r); }

    /// 2 * sup_r |phi'(r) r| for the decided bridge (attained as r -> N).
    double gradient_form_constant() const { return 2.0 * N; }

    /// sup_r phi(r) = N + rho where rho maximises t - 2t^2 + t^3 on [0,1].
    /// For this bridge phi <= N + 1, and the energy-form constant is N+1.
    double energy_constant() const { return N + 1.0; }
};

/// Pointwise tamed term g(|u(x)|^2) u(x).
PhysicalField tamed_term(const PhysicalField& u, const TamingFunction& tf);

} // namespace tnse
