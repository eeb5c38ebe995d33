#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "tnse/spectral_ops.hpp"

namespace tnse {

enum class NoiseKind { Constant, Banded };

/// Finite family {sigma_j} of C^1 transport-noise vector fields with
/// sup_x sum_j |sigma_j(x)|^2 <= 1/4.
class NoiseModel {
public:
    /// J constant fields c_j * e_{dir(j)} with sum c_j^2 = 1/4 exactly.
    static NoiseModel constant(std::size_t J);

    /// J band-limited divergence-free fields (support |k| <= k_sigma),
    /// rescaled so the pointwise ell^2 bound 1/4 holds with margin.
    static NoiseModel banded(GridPtr grid, std::size_t J, double k_sigma, std::uint64_t seed);

    NoiseKind kind() const { return kind_; }
    std::size_t J() const { return J_; }

    /// Cached sup_x sum_j |sigma_j(x)|^2.
    double sup_bound() const { return sup_bound_; }

    /// Constant C_sigma in the V-norm diffusion bound
    /// ||G(u)||^2_V <= 1/2 |A u|^2 + C_sigma |grad u|^2.
    double c_sigma() const { return c_sigma_; }

    const std::array<double, 3>& sigma_const(std::size_t j) const { return const_dirs_[j]; }

    /// G_j(u) = P_n Pi[(sigma_j . grad) u] for every j.
    std::vector<SpectralField> apply(const SpectralField& u, SpectralTransform& xf) const;

    /// sum_j |G_j(u)|_H^2.
    double hs_norm2_H(const SpectralField& u, SpectralTransform& xf) const;
    /// sum_j ||G_j(u)||_V^2.
    double hs_norm2_V(const SpectralField& u, SpectralTransform& xf) const;

private:
    NoiseModel() = default;

    NoiseKind kind_ = NoiseKind::Constant;
    std::size_t J_ = 0;
    double sup_bound_ = 0.0;
    double c_sigma_ = 0.25;
    std::vector<std::array<double, 3>> const_dirs_;
    // banded variant: physical samples of each sigma_j, component-major
    GridPtr grid_;
    std::vector<PhysicalField> sigma_fields_;
};

} // namespace tnse
