#include "tnse/taming.hpp"

namespace tnse {

PhysicalField tamed_term(const PhysicalField& u, const TamingFunction& tf) {
    PhysicalField out(u.grid);
    const std::size_t n = u.grid->points();
    for (std::size_t i = 0; i < n; ++i) {
        const double u0 = u.values[i];
        const double u1 = u.values[n + i];
        const double u2 = u.values[2 * n + i];
        const double gv = tf.g(u0 * u0 + u1 * u1 + u2 * u2);
        out.values[i] = gv * u0;
        out.values[n + i] = gv * u1;
        out.values[2 * n + i] = gv * u2;
    }
    return out;
}

} // namespace tnse
