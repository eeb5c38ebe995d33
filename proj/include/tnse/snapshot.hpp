#pragma once

#include <string>

#include "tnse/field.hpp"

namespace tnse {

/// Field snapshot file, little-endian:
///   magic "TNSE" | version u32 | M u32 | n f64 | L f64 |
///   3*M^3 complex values as (re,im) float32 pairs, FFT ordering,
///   component-major.
void write_snapshot(const std::string& path, const SpectralField& u);
SpectralField read_snapshot(const std::string& path);

} // namespace tnse
