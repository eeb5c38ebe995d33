#include "tnse/spectral_ops.hpp"

#include <cmath>

namespace tnse {

namespace {

template <typename Fn>
void for_modes(const Grid& g, Fn&& fn) {
    const std::size_t M = g.M();
    for (std::size_t ix = 0; ix < M; ++ix)
        for (std::size_t iy = 0; iy < M; ++iy)
            for (std::size_t iz = 0; iz < M; ++iz) fn(ix, iy, iz, g.index(ix, iy, iz));
}

double weighted_sum(const SpectralField& u, double (*w)(double)) {
    const Grid& g = *u.grid;
    const std::size_t n = g.points();
    double acc = 0.0;
    for_modes(g, [&](std::size_t ix, std::size_t iy, std::size_t iz, std::size_t lin) {
        const double k2 = g.k_squared(ix, iy, iz);
        double m2 = 0.0;
        for (std::size_t c = 0; c < 3; ++c) m2 += std::norm(u.coeffs[c * n + lin]);
        acc += w(k2) * m2;
    });
    return acc * g.volume();
}

} // namespace

void project_ball_inplace(SpectralField& u, double n) {
    const Grid& g = *u.grid;
    const std::size_t np = g.points();
    const double n2 = n * n;
    for_modes(g, [&](std::size_t ix, std::size_t iy, std::size_t iz, std::size_t lin) {
        if (g.k_squared(ix, iy, iz) > n2)
            for (std::size_t c = 0; c < 3; ++c) u.coeffs[c * np + lin] = Complex{0.0, 0.0};
    });
    u.ball_radius = n;
}

SpectralField project_ball(const SpectralField& u, double n) {
    SpectralField out = u;
    project_ball_inplace(out, n);
    return out;
}

void leray_project_inplace(SpectralField& u) {
    const Grid& g = *u.grid;
    const std::size_t np = g.points();
    for_modes(g, [&](std::size_t ix, std::size_t iy, std::size_t iz, std::size_t lin) {
        const double k2 = g.k_squared(ix, iy, iz);
        if (k2 == 0.0) return; // mean mode passes through
        const auto k = g.wavevector(ix, iy, iz);
        Complex kdotu{0.0, 0.0};
        for (std::size_t c = 0; c < 3; ++c) kdotu += k[c] * u.coeffs[c * np + lin];
        kdotu /= k2;
        for (std::size_t c = 0; c < 3; ++c) u.coeffs[c * np + lin] -= k[c] * kdotu;
    });
}

SpectralField leray_project(const SpectralField& u) {
    SpectralField out = u;
    leray_project_inplace(out);
    return out;
}

SpectralField stokes_apply(const SpectralField& u, double nu, double alpha) {
    SpectralField out = u;
    const Grid& g = *u.grid;
    const std::size_t np = g.points();
    for_modes(g, [&](std::size_t ix, std::size_t iy, std::size_t iz, std::size_t lin) {
        const double s = alpha + nu * g.k_squared(ix, iy, iz);
        for (std::size_t c = 0; c < 3; ++c) out.coeffs[c * np + lin] *= s;
    });
    return out;
}

SpectralField derivative(const SpectralField& u, std::size_t axis) {
    SpectralField out = u;
    const Grid& g = *u.grid;
    const std::size_t np = g.points();
    for_modes(g, [&](std::size_t ix, std::size_t iy, std::size_t iz, std::size_t lin) {
        const auto k = g.wavevector(ix, iy, iz);
        const Complex ik{0.0, k[axis]};
        for (std::size_t c = 0; c < 3; ++c) out.coeffs[c * np + lin] *= ik;
    });
    return out;
}

std::vector<Complex> divergence(const SpectralField& u) {
    const Grid& g = *u.grid;
    const std::size_t np = g.points();
    std::vector<Complex> div(np, Complex{0.0, 0.0});
    for_modes(g, [&](std::size_t ix, std::size_t iy, std::size_t iz, std::size_t lin) {
        const auto k = g.wavevector(ix, iy, iz);
        Complex acc{0.0, 0.0};
        for (std::size_t c = 0; c < 3; ++c) acc += Complex{0.0, k[c]} * u.coeffs[c * np + lin];
        div[lin] = acc;
    });
    return div;
}

double norm2_H(const SpectralField& u) {
    return weighted_sum(u, [](double) { return 1.0; });
}
double norm2_grad(const SpectralField& u) {
    return weighted_sum(u, [](double k2) { return k2; });
}
double norm2_V(const SpectralField& u) {
    return weighted_sum(u, [](double k2) { return 1.0 + k2; });
}
double norm2_DA(const SpectralField& u) {
    return weighted_sum(u, [](double k2) { return 1.0 + k2 * k2; });
}
double norm2_A(const SpectralField& u) {
    return weighted_sum(u, [](double k2) { return k2 * k2; });
}

double norm2_Vgamma(const SpectralField& u, double gamma) {
    const Grid& g = *u.grid;
    const std::size_t n = g.points();
    double acc = 0.0;
    for_modes(g, [&](std::size_t ix, std::size_t iy, std::size_t iz, std::size_t lin) {
        const double w = std::pow(1.0 + g.k_squared(ix, iy, iz), gamma);
        double m2 = 0.0;
        for (std::size_t c = 0; c < 3; ++c) m2 += std::norm(u.coeffs[c * n + lin]);
        acc += w * m2;
    });
    return acc * g.volume();
}

double norm4_L4(const PhysicalField& u) {
    const std::size_t n = u.grid->points();
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double m2 = u.values[i] * u.values[i] + u.values[n + i] * u.values[n + i] +
                          u.values[2 * n + i] * u.values[2 * n + i];
        acc += m2 * m2;
    }
    return acc * u.grid->cell_volume();
}

double norm4_L4(const SpectralField& u, SpectralTransform& xf) {
    PhysicalField p(u.grid);
    xf.to_physical(u, p);
    return norm4_L4(p);
}

double inner_H(const SpectralField& u, const SpectralField& v) {
    const std::size_t n = u.coeffs.size();
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        acc += u.coeffs[i].real() * v.coeffs[i].real() + u.coeffs[i].imag() * v.coeffs[i].imag();
    return acc * u.grid->volume();
}

double inner_grad(const SpectralField& u, const SpectralField& v) {
    const Grid& g = *u.grid;
    const std::size_t np = g.points();
    double acc = 0.0;
    for_modes(g, [&](std::size_t ix, std::size_t iy, std::size_t iz, std::size_t lin) {
        const double k2 = g.k_squared(ix, iy, iz);
        double dot = 0.0;
        for (std::size_t c = 0; c < 3; ++c) {
            const Complex& a = u.coeffs[c * np + lin];
            const Complex& b = v.coeffs[c * np + lin];
            dot += a.real() * b.real() + a.imag() * b.imag();
        }
        acc += k2 * dot;
    });
    return acc * g.volume();
}

double quadrature_norm2(const PhysicalField& u) {
    double acc = 0.0;
    for (double v : u.values) acc += v * v;
    return acc * u.grid->cell_volume();
}

double norm2_u_grad_u(const SpectralField& u, SpectralTransform& xf) {
    const GridPtr grid = u.grid;
    const std::size_t n = grid->points();
    PhysicalField up(grid);
    xf.to_physical(u, up);
    std::vector<double> grad2(n, 0.0);
    std::vector<double> dcomp(n);
    for (std::size_t axis = 0; axis < 3; ++axis) {
        SpectralField du = derivative(u, axis);
        for (std::size_t c = 0; c < 3; ++c) {
            xf.scalar_to_physical(du.coeffs.data() + c * n, dcomp.data());
            for (std::size_t i = 0; i < n; ++i) grad2[i] += dcomp[i] * dcomp[i];
        }
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double m2 = up.values[i] * up.values[i] + up.values[n + i] * up.values[n + i] +
                          up.values[2 * n + i] * up.values[2 * n + i];
        acc += m2 * grad2[i];
    }
    return acc * grid->cell_volume();
}

bool all_finite(const SpectralField& u) {
    for (const Complex& c : u.coeffs)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    return true;
}

} // namespace tnse
