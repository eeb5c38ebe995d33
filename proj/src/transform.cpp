#include "tnse/transform.hpp"

#include <fftw3.h>

#include <cstring>
#include <mutex>

namespace tnse {

namespace {
// FFTW plan creation is not thread-safe.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
} // namespace

SpectralTransform::SpectralTransform(GridPtr grid) : grid_(std::move(grid)) {
    const int M = static_cast<int>(grid_->M());
    const std::size_t n = grid_->points();
    buf_in_ = reinterpret_cast<Complex*>(fftw_alloc_complex(n));
    buf_out_ = reinterpret_cast<Complex*>(fftw_alloc_complex(n));
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan_fwd_ = fftw_plan_dft_3d(M, M, M, reinterpret_cast<fftw_complex*>(buf_in_),
                                 reinterpret_cast<fftw_complex*>(buf_out_), FFTW_FORWARD,
                                 FFTW_ESTIMATE);
    plan_bwd_ = fftw_plan_dft_3d(M, M, M, reinterpret_cast<fftw_complex*>(buf_in_),
                                 reinterpret_cast<fftw_complex*>(buf_out_), FFTW_BACKWARD,
                                 FFTW_ESTIMATE);
}

SpectralTransform::~SpectralTransform() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
    fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
    fftw_free(buf_in_);
    fftw_free(buf_out_);
}

void SpectralTransform::scalar_to_physical(const Complex* coeffs, double* values) {
    const std::size_t n = grid_->points();
    std::memcpy(buf_in_, coeffs, n * sizeof(Complex));
    fftw_execute(static_cast<fftw_plan>(plan_bwd_));
    for (std::size_t i = 0; i < n; ++i) values[i] = buf_out_[i].real();
}

void SpectralTransform::scalar_to_spectral(const double* values, Complex* coeffs) {
    const std::size_t n = grid_->points();
    for (std::size_t i = 0; i < n; ++i) buf_in_[i] = Complex{values[i], 0.0};
    fftw_execute(static_cast<fftw_plan>(plan_fwd_));
    const double scale = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) coeffs[i] = buf_out_[i] * scale;
}

void SpectralTransform::to_physical(const SpectralField& in, PhysicalField& out) {
    if (out.grid != grid_) out = PhysicalField(grid_);
    const std::size_t n = grid_->points();
    for (std::size_t c = 0; c < 3; ++c)
        scalar_to_physical(in.coeffs.data() + c * n, out.values.data() + c * n);
}

void SpectralTransform::to_spectral(const PhysicalField& in, SpectralField& out) {
    if (out.grid != grid_) out = SpectralField(grid_, grid_->k_nyquist());
    const std::size_t n = grid_->points();
    for (std::size_t c = 0; c < 3; ++c)
        scalar_to_spectral(in.values.data() + c * n, out.coeffs.data() + c * n);
}

} // namespace tnse
