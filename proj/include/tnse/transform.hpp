#pragma once

#include "tnse/field.hpp"

namespace tnse {

/// FFT workspace bound to one grid. Owns FFTW plans and a scratch
/// buffer; not shareable between threads (create one per worker).
/// Plans use FFTW_ESTIMATE so plan choice, and hence rounding, is
/// deterministic run to run.
class SpectralTransform {
public:
    explicit SpectralTransform(GridPtr grid);
    ~SpectralTransform();

    SpectralTransform(const SpectralTransform&) = delete;
    SpectralTransform& operator=(const SpectralTransform&) = delete;

    const GridPtr& grid() const { return grid_; }

    /// u(x) = sum_k uhat(k) exp(i k.x), real part taken.
    void to_physical(const SpectralField& in, PhysicalField& out);

    /// uhat = DFT(u)/M^3.
    void to_spectral(const PhysicalField& in, SpectralField& out);

    /// Scalar transforms on raw component slices of length M^3.
    void scalar_to_physical(const Complex* coeffs, double* values);
    void scalar_to_spectral(const double* values, Complex* coeffs);

private:
    GridPtr grid_;
    void* plan_fwd_;
    void* plan_bwd_;
    Complex* buf_in_;
    Complex* buf_out_;
};

} // namespace tnse
