#include "tnse/operators.hpp"

#include <algorithm>
#include <cmath>

namespace tnse {

double DriftParams::b_f_l1() const {
    if (f0.grid == nullptr) return 0.0;
    const double f02 = norm2_H(f0);
    return forcing == ForcingKind::State ? 2.0 * f02 : f02;
}

SpectralField nonlinear_B(const SpectralField& u, SpectralTransform& xf) {
    const GridPtr grid = u.grid;
    const std::size_t np = grid->points();

    PhysicalField up(grid);
    xf.to_physical(u, up);
    const double* ux = up.values.data();
    const double* uy = up.values.data() + np;
    const double* uz = up.values.data() + 2 * np;

    // divergence form: B_i = d_j (u_j u_i); six distinct products
    static constexpr std::size_t pi[6] = {0, 0, 0, 1, 1, 2};
    static constexpr std::size_t pj[6] = {0, 1, 2, 1, 2, 2};
    std::vector<double> prod(np);
    SpectralField phat[6];
    const double* comp[3] = {ux, uy, uz};
    for (std::size_t m = 0; m < 6; ++m) {
        for (std::size_t i = 0; i < np; ++i) prod[i] = comp[pi[m]][i] * comp[pj[m]][i];
        phat[m] = SpectralField(grid, grid->k_nyquist());
        xf.scalar_to_spectral(prod.data(), phat[m].coeffs.data());
    }
    auto prod_at = [&](std::size_t a, std::size_t b, std::size_t lin) -> const Complex& {
        // symmetric lookup into the six stored products
        static constexpr int idx[3][3] = {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}};
        return phat[idx[a][b]].coeffs[lin];
    };

    SpectralField out(grid, u.ball_radius);
    const Grid& g = *grid;
    const std::size_t M = g.M();
    const double cutoff = std::min(u.ball_radius, g.dealias_cutoff());
    const double cutoff2 = cutoff * cutoff;
    for (std::size_t ix = 0; ix < M; ++ix)
        for (std::size_t iy = 0; iy < M; ++iy)
            for (std::size_t iz = 0; iz < M; ++iz) {
                const std::size_t lin = g.index(ix, iy, iz);
                if (g.k_squared(ix, iy, iz) > cutoff2) continue;
                const auto k = g.wavevector(ix, iy, iz);
                for (std::size_t c = 0; c < 3; ++c) {
                    Complex acc{0.0, 0.0};
                    for (std::size_t j = 0; j < 3; ++j)
                        acc += Complex{0.0, k[j]} * prod_at(j, c, lin);
                    out.coeffs[c * np + lin] = acc;
                }
            }
    leray_project_inplace(out);
    return out;
}

SpectralField tamed_gn(const SpectralField& u, const TamingFunction& tf, SpectralTransform& xf) {
    PhysicalField up(u.grid);
    xf.to_physical(u, up);
    PhysicalField w = tamed_term(up, tf);
    SpectralField out(u.grid, u.ball_radius);
    xf.to_spectral(w, out);
    leray_project_inplace(out);
    project_ball_inplace(out, u.ball_radius);
    return out;
}

SpectralField forcing_fn(const SpectralField& u, const DriftParams& p) {
    SpectralField out(u.grid, u.ball_radius);
    if (p.f0.grid != nullptr) {
        out = p.f0;
        leray_project_inplace(out);
        project_ball_inplace(out, u.ball_radius);
    }
    if (p.forcing == ForcingKind::State && p.kappa != 0.0) {
        // kappa * u is already in H_n and divergence-free
        const std::size_t n = u.coeffs.size();
        for (std::size_t i = 0; i < n; ++i) out.coeffs[i] += p.kappa * u.coeffs[i];
    }
    return out;
}

std::vector<SpectralField> noise_apply(const SpectralField& u, const NoiseModel& nm,
                                       SpectralTransform& xf) {
    return nm.apply(u, xf);
}

DriftParts drift_parts(const SpectralField& u, const DriftParams& p, SpectralTransform& xf) {
    DriftParts parts;
    parts.B = nonlinear_B(u, xf);
    if (p.taming_enabled)
        parts.g = tamed_gn(u, p.tf, xf);
    else
        parts.g = SpectralField(u.grid, u.ball_radius);
    parts.f = forcing_fn(u, p);
    return parts;
}

SpectralField assemble_drift(const SpectralField& u, const DriftParts& parts,
                             const DriftParams& p) {
    SpectralField out = stokes_apply(u, -p.nu, -p.alpha); // -(alpha + nu|k|^2) uhat
    const std::size_t n = u.coeffs.size();
    for (std::size_t i = 0; i < n; ++i)
        out.coeffs[i] += -parts.B.coeffs[i] - parts.g.coeffs[i] + parts.f.coeffs[i];
    return out;
}

SpectralField drift(const SpectralField& u, const DriftParams& p, const NoiseModel& /*nm*/,
                    SpectralTransform& xf) {
    return assemble_drift(u, drift_parts(u, p, xf), p);
}

double growth_functional_F(const SpectralField& u, const DriftParts& parts, const DriftParams& p,
                           double noise_hs2_H) {
    const double lin = -p.alpha * norm2_H(u) - p.nu * norm2_grad(u);
    const double rest = -inner_H(parts.B, u) - inner_H(parts.g, u) + inner_H(parts.f, u);
    return noise_hs2_H + 2.0 * (lin + rest);
}

double growth_functional_F(const SpectralField& u, const DriftParams& p, const NoiseModel& nm,
                           SpectralTransform& xf) {
    return growth_functional_F(u, drift_parts(u, p, xf), p, nm.hs_norm2_H(u, xf));
}

double growth_bound_K1(const DriftParams& p) { return 0.75 + 2.0 * p.C_f() + 2.0 * p.b_f_l1(); }

} // namespace tnse
