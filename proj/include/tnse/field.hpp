#pragma once

#include <complex>
#include <vector>

#include "tnse/grid.hpp"

namespace tnse {

using Complex = std::complex<double>;

/// Fourier coefficients of a real 3-component vector field whose
/// spectrum is supported on the wavenumber ball |k| <= ball_radius.
/// Storage is dense over the full FFT box, component-major.
struct SpectralField {
    GridPtr grid;
    double ball_radius = 0.0;
    std::vector<Complex> coeffs; // size 3*M^3

    SpectralField() = default;
    SpectralField(GridPtr g, double n)
        : grid(std::move(g)), ball_radius(n), coeffs(3 * grid->points(), Complex{0.0, 0.0}) {}

    Complex& at(std::size_t comp, std::size_t lin) { return coeffs[comp * grid->points() + lin]; }
    const Complex& at(std::size_t comp, std::size_t lin) const {
        return coeffs[comp * grid->points() + lin];
    }
};

/// Real-space samples of a 3-component vector field, component-major.
struct PhysicalField {
    GridPtr grid;
    std::vector<double> values; // size 3*M^3

    PhysicalField() = default;
    explicit PhysicalField(GridPtr g) : grid(std::move(g)), values(3 * grid->points(), 0.0) {}

    double& at(std::size_t comp, std::size_t lin) { return values[comp * grid->points() + lin]; }
    const double& at(std::size_t comp, std::size_t lin) const {
        return values[comp * grid->points() + lin];
    }
};

} // namespace tnse
