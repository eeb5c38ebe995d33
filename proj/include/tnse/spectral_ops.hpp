#pragma once

#include "tnse/field.hpp"
#include "tnse/transform.hpp"

namespace tnse {

/// Fourier-ball projection: zero all coefficients with |k| > n.
/// Orthogonal, idempotent, self-adjoint in the L2 inner product.
SpectralField project_ball(const SpectralField& u, double n);
void project_ball_inplace(SpectralField& u, double n);

/// Leray projection: per mode uhat -> (I - k k^T/|k|^2) uhat; the
/// k = 0 mode passes through unchanged.
SpectralField leray_project(const SpectralField& u);
void leray_project_inplace(SpectralField& u);

/// (alpha - nu*Laplacian) applied spectrally: multiply each mode by
/// alpha + nu*|k|^2.
SpectralField stokes_apply(const SpectralField& u, double nu, double alpha);

/// Component derivative d/dx_axis (multiplication by i*k_axis).
SpectralField derivative(const SpectralField& u, std::size_t axis);

/// Spectral divergence, i * k . uhat(k), as a scalar coefficient array.
std::vector<Complex> divergence(const SpectralField& u);

// Parseval norms (squared), computed from the coefficients.
double norm2_H(const SpectralField& u);          // sum |uhat|^2 * L^3
double norm2_grad(const SpectralField& u);       // weight |k|^2
double norm2_V(const SpectralField& u);          // weight 1 + |k|^2
double norm2_DA(const SpectralField& u);         // weight 1 + |k|^4  (graph norm)
double norm2_Vgamma(const SpectralField& u, double gamma); // weight (1+|k|^2)^gamma
double norm2_A(const SpectralField& u);          // weight |k|^4, |A u|^2

/// L^4 norm to the fourth power by collocation quadrature.
double norm4_L4(const SpectralField& u, SpectralTransform& xf);
double norm4_L4(const PhysicalField& u);

/// L2 inner products.
double inner_H(const SpectralField& u, const SpectralField& v);
/// Gradient form ((u,v)) = <grad u, grad v>_{L2}: weight |k|^2.
double inner_grad(const SpectralField& u, const SpectralField& v);

/// Collocation quadrature of |u(x)|^2 (Parseval cross-check).
double quadrature_norm2(const PhysicalField& u);

/// Pointwise |u(x)|^2 |grad u(x)|^2 integrated over the box.
double norm2_u_grad_u(const SpectralField& u, SpectralTransform& xf);

/// Maximum finite check.
bool all_finite(const SpectralField& u);

} // namespace tnse
