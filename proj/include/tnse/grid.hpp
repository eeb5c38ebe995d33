#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <vector>

namespace tnse {

/// Periodic collocation grid on [0,L]^3 with M points per axis.
/// Wavenumbers follow FFT ordering: index i maps to the integer
/// frequency z = i for i < M/2 and z = i - M otherwise, and the
/// physical wavenumber is k = (2*pi/L) * z.
class Grid {
public:
    Grid(std::size_t M, double L);

    std::size_t M() const { return M_; }
    double L() const { return L_; }
    std::size_t points() const { return M_ * M_ * M_; }

    /// Physical wavenumber along one axis for FFT index i.
    double k_axis(std::size_t i) const { return k_axis_[i]; }

    /// Wavevector for the FFT index triple.
    std::array<double, 3> wavevector(std::size_t ix, std::size_t iy, std::size_t iz) const {
        return {k_axis_[ix], k_axis_[iy], k_axis_[iz]};
    }

    double k_squared(std::size_t ix, std::size_t iy, std::size_t iz) const {
        return k_axis_[ix] * k_axis_[ix] + k_axis_[iy] * k_axis_[iy] + k_axis_[iz] * k_axis_[iz];
    }

    std::size_t index(std::size_t ix, std::size_t iy, std::size_t iz) const {
        return (ix * M_ + iy) * M_ + iz;
    }

    /// Largest representable wavenumber magnitude per axis (Nyquist).
    double k_nyquist() const { return k_nyquist_; }

    /// Spherical 2/3-rule dealiasing cutoff.
    double dealias_cutoff() const { return (2.0 / 3.0) * k_nyquist_; }

    /// Cell volume for collocation quadrature.
    double cell_volume() const { return (L_ / M_) * (L_ / M_) * (L_ / M_); }
    double volume() const { return L_ * L_ * L_; }

private:
    std::size_t M_;
    double L_;
    double k_nyquist_;
    std::vector<double> k_axis_;
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr make_grid(std::size_t M, double L);

} // namespace tnse
