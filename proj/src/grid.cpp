#include "tnse/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace tnse {

Grid::Grid(std::size_t M, double L) : M_(M), L_(L) {
    if (M < 8 || M % 2 != 0) throw std::invalid_argument("grid.M must be even and >= 8");
    if (L <= 0.0) throw std::invalid_argument("grid.L must be positive");
    const double dk = 2.0 * M_PI / L;
    k_axis_.resize(M);
    for (std::size_t i = 0; i < M; ++i) {
        const long z = (i < M / 2) ? static_cast<long>(i) : static_cast<long>(i) - static_cast<long>(M);
        k_axis_[i] = dk * static_cast<double>(z);
    }
    k_nyquist_ = dk * static_cast<double>(M / 2);
}

GridPtr make_grid(std::size_t M, double L) { return std::make_shared<const Grid>(M, L); }

} // namespace tnse
