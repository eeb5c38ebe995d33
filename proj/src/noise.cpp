#include "tnse/noise.hpp"

#include <cmath>

#include "tnse/rng.hpp"

namespace tnse {

NoiseModel NoiseModel::constant(std::size_t J) {
    NoiseModel nm;
    nm.kind_ = NoiseKind::Constant;
    nm.J_ = J;
    const double c = std::sqrt(0.25 / static_cast<double>(J));
    nm.const_dirs_.resize(J);
    for (std::size_t j = 0; j < J; ++j) {
        nm.const_dirs_[j] = {0.0, 0.0, 0.0};
        nm.const_dirs_[j][j % 3] = c;
    }
    nm.sup_bound_ = 0.25;
    nm.c_sigma_ = 0.25; // no x-dependence: derivative term vanishes
    return nm;
}

NoiseModel NoiseModel::banded(GridPtr grid, std::size_t J, double k_sigma, std::uint64_t seed) {
    NoiseModel nm;
    nm.kind_ = NoiseKind::Banded;
    nm.J_ = J;
    nm.grid_ = grid;
    const std::size_t np = grid->points();
    NormalStream rng(seed ^ 0x5161736cULL);
    SpectralTransform xf(grid);

    std::vector<SpectralField> spectral(J);
    for (std::size_t j = 0; j < J; ++j) {
        SpectralField s(grid, k_sigma);
        // random low-mode field, Hermitian by construction via physical sampling
        PhysicalField p(grid);
        for (double& v : p.values) v = rng.normal();
        xf.to_spectral(p, s);
        project_ball_inplace(s, k_sigma);
        leray_project_inplace(s);
        // zero mean
        for (std::size_t c = 0; c < 3; ++c) s.coeffs[c * np] = Complex{0.0, 0.0};
        spectral[j] = std::move(s);
    }

    // rescale so sup_x sum_j |sigma_j(x)|^2 = 1/4 * margin
    nm.sigma_fields_.resize(J);
    std::vector<double> sum2(np, 0.0);
    for (std::size_t j = 0; j < J; ++j) {
        PhysicalField p(grid);
        xf.to_physical(spectral[j], p);
        nm.sigma_fields_[j] = std::move(p);
    }
    for (std::size_t i = 0; i < np; ++i)
        for (std::size_t j = 0; j < J; ++j) {
            const PhysicalField& p = nm.sigma_fields_[j];
            sum2[i] += p.values[i] * p.values[i] + p.values[np + i] * p.values[np + i] +
                       p.values[2 * np + i] * p.values[2 * np + i];
        }
    double sup = 0.0;
    for (double v : sum2) sup = std::max(sup, v);
    const double margin = 0.95; // collocation sup underestimates the true sup
    const double scale = std::sqrt(0.25 * margin / sup);
    for (std::size_t j = 0; j < J; ++j) {
        for (double& v : nm.sigma_fields_[j].values) v *= scale;
        for (Complex& c : spectral[j].coeffs) c *= scale;
    }
    nm.sup_bound_ = 0.25 * margin;

    // derivative bound D^2 = sup_x sum_j sum_i |d_i sigma_j(x)|^2
    double d2 = 0.0;
    std::vector<double> dsum(np, 0.0);
    std::vector<double> dcomp(np);
    for (std::size_t j = 0; j < J; ++j)
        for (std::size_t axis = 0; axis < 3; ++axis) {
            SpectralField ds = derivative(spectral[j], axis);
            for (std::size_t c = 0; c < 3; ++c) {
                xf.scalar_to_physical(ds.coeffs.data() + c * np, dcomp.data());
                for (std::size_t i = 0; i < np; ++i) dsum[i] += dcomp[i] * dcomp[i];
            }
        }
    for (double v : dsum) d2 = std::max(d2, v);
    nm.c_sigma_ = 0.25 + 2.0 * d2;
    return nm;
}

std::vector<SpectralField> NoiseModel::apply(const SpectralField& u, SpectralTransform& xf) const {
    const GridPtr grid = u.grid;
    const Grid& g = *grid;
    const std::size_t np = g.points();
    const double ball = u.ball_radius;
    std::vector<SpectralField> out;
    out.reserve(J_);

    if (kind_ == NoiseKind::Constant) {
        for (std::size_t j = 0; j < J_; ++j) {
            SpectralField G(grid, ball);
            const auto& s = const_dirs_[j];
            const std::size_t M = g.M();
            for (std::size_t ix = 0; ix < M; ++ix)
                for (std::size_t iy = 0; iy < M; ++iy)
                    for (std::size_t iz = 0; iz < M; ++iz) {
                        const std::size_t lin = g.index(ix, iy, iz);
                        const auto k = g.wavevector(ix, iy, iz);
                        const Complex isk{0.0, s[0] * k[0] + s[1] * k[1] + s[2] * k[2]};
                        for (std::size_t c = 0; c < 3; ++c)
                            G.coeffs[c * np + lin] = isk * u.coeffs[c * np + lin];
                    }
            // already divergence-free and ball-supported for constant sigma
            out.push_back(std::move(G));
        }
        return out;
    }

    // banded sigma: pointwise (sigma_j . grad) u, then Leray and ball projection
    PhysicalField grad_u[3];        // grad_u[axis], 3 components each
    for (std::size_t axis = 0; axis < 3; ++axis) {
        SpectralField d = derivative(u, axis);
        grad_u[axis] = PhysicalField(grid);
        xf.to_physical(d, grad_u[axis]);
    }
    for (std::size_t j = 0; j < J_; ++j) {
        const PhysicalField& s = sigma_fields_[j];
        PhysicalField w(grid);
        for (std::size_t c = 0; c < 3; ++c)
            for (std::size_t i = 0; i < np; ++i)
                w.values[c * np + i] = s.values[i] * grad_u[0].values[c * np + i] +
                                       s.values[np + i] * grad_u[1].values[c * np + i] +
                                       s.values[2 * np + i] * grad_u[2].values[c * np + i];
        SpectralField G(grid, ball);
        xf.to_spectral(w, G);
        leray_project_inplace(G);
        project_ball_inplace(G, ball);
        out.push_back(std::move(G));
    }
    return out;
}

double NoiseModel::hs_norm2_H(const SpectralField& u, SpectralTransform& xf) const {
    if (kind_ == NoiseKind::Constant) {
        const Grid& g = *u.grid;
        const std::size_t np = g.points();
        const std::size_t M = g.M();
        double acc = 0.0;
        for (std::size_t ix = 0; ix < M; ++ix)
            for (std::size_t iy = 0; iy < M; ++iy)
                for (std::size_t iz = 0; iz < M; ++iz) {
                    const std::size_t lin = g.index(ix, iy, iz);
                    const auto k = g.wavevector(ix, iy, iz);
                    double sk2 = 0.0;
                    for (std::size_t j = 0; j < J_; ++j) {
                        const auto& s = const_dirs_[j];
                        const double sk = s[0] * k[0] + s[1] * k[1] + s[2] * k[2];
                        sk2 += sk * sk;
                    }
                    double m2 = 0.0;
                    for (std::size_t c = 0; c < 3; ++c) m2 += std::norm(u.coeffs[c * np + lin]);
                    acc += sk2 * m2;
                }
        return acc * g.volume();
    }
    double acc = 0.0;
    for (const SpectralField& G : apply(u, xf)) acc += norm2_H(G);
    return acc;
}

double NoiseModel::hs_norm2_V(const SpectralField& u, SpectralTransform& xf) const {
    double acc = 0.0;
    for (const SpectralField& G : apply(u, xf)) acc += norm2_V(G);
    return acc;
}

} // namespace tnse
