#pragma once

#include "tnse/noise.hpp"
#include "tnse/taming.hpp"

namespace tnse {

enum class ForcingKind { State, Fixed };

/// Coefficients of the truncated drift: viscosity, damping, taming
/// threshold and the forcing family f(x,u) = f0(x) + kappa*u (state
/// mode) or the fixed field f0 (fixed mode).
struct DriftParams {
    double nu = 1.0;
    double alpha = 0.0;
    TamingFunction tf{10.0};
    bool taming_enabled = true;
    ForcingKind forcing = ForcingKind::State;
    double kappa = 0.1;
    SpectralField f0; // empty grid => zero forcing field

    double C_f() const { return forcing == ForcingKind::State ? kappa : 0.0; }

    /// |b_f|_{L1}: 2|f0|^2_H in state mode (pointwise bound
    /// |f0 + kappa u|^2 <= kappa|u|^2 + 2|f0|^2 for kappa <= 1/2),
    /// |f0|^2_H in fixed mode.
    double b_f_l1() const;
};

/// Pseudo-spectral convective term P_n Pi[(u.grad)u], computed in
/// divergence form d_j(u_j u_i) with spherical 2/3-rule dealiasing
/// after the pointwise product.
SpectralField nonlinear_B(const SpectralField& u, SpectralTransform& xf);

/// Tamed term P_n Pi[g(|u|^2) u].
SpectralField tamed_gn(const SpectralField& u, const TamingFunction& tf, SpectralTransform& xf);

/// Forcing term P_n Pi[f(x,u)].
SpectralField forcing_fn(const SpectralField& u, const DriftParams& p);

/// All G_j(u); see NoiseModel::apply.
std::vector<SpectralField> noise_apply(const SpectralField& u, const NoiseModel& nm,
                                       SpectralTransform& xf);

/// Drift split into parts so diagnostics can reuse them.
struct DriftParts {
    SpectralField B;  // convective term
    SpectralField g;  // tamed term (zero field when taming disabled)
    SpectralField f;  // forcing term
};

DriftParts drift_parts(const SpectralField& u, const DriftParams& p, SpectralTransform& xf);

/// Assembled drift -(alpha + nu|k|^2) uhat - B - g + f.
SpectralField drift(const SpectralField& u, const DriftParams& p, const NoiseModel& nm,
                    SpectralTransform& xf);
SpectralField assemble_drift(const SpectralField& u, const DriftParts& parts,
                             const DriftParams& p);

/// Growth functional ||G_n(u)||^2_{HS} + 2<u, -A_n u - B - g + f>_H.
double growth_functional_F(const SpectralField& u, const DriftParams& p, const NoiseModel& nm,
                           SpectralTransform& xf);
double growth_functional_F(const SpectralField& u, const DriftParts& parts, const DriftParams& p,
                           double noise_hs2_H);

/// Bound constant K1 = 3/4 + 2 C_f + 2 |b_f|_{L1} in
/// F(u) <= K1 (1 + |u|^2_H).
double growth_bound_K1(const DriftParams& p);

} // namespace tnse
