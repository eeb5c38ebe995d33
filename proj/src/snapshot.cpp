#include "tnse/snapshot.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace tnse {

namespace {
constexpr char kMagic[4] = {'T', 'N', 'S', 'E'};
constexpr std::uint32_t kVersion = 1;
} // namespace

void write_snapshot(const std::string& path, const SpectralField& u) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open snapshot for writing: " + path);
    out.write(kMagic, 4);
    const std::uint32_t version = kVersion;
    const std::uint32_t M = static_cast<std::uint32_t>(u.grid->M());
    out.write(reinterpret_cast<const char*>(&version), sizeof version);
    out.write(reinterpret_cast<const char*>(&M), sizeof M);
    out.write(reinterpret_cast<const char*>(&u.ball_radius), sizeof(double));
    const double L = u.grid->L();
    out.write(reinterpret_cast<const char*>(&L), sizeof(double));
    std::vector<float> buf(2 * u.coeffs.size());
    for (std::size_t i = 0; i < u.coeffs.size(); ++i) {
        buf[2 * i] = static_cast<float>(u.coeffs[i].real());
        buf[2 * i + 1] = static_cast<float>(u.coeffs[i].imag());
    }
    out.write(reinterpret_cast<const char*>(buf.data()),
              static_cast<std::streamsize>(buf.size() * sizeof(float)));
    if (!out) throw std::runtime_error("short write to snapshot: " + path);
}

SpectralField read_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open snapshot: " + path);
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0)
        throw std::runtime_error("not a snapshot file: " + path);
    std::uint32_t version = 0, M = 0;
    double n = 0.0, L = 0.0;
    in.read(reinterpret_cast<char*>(&version), sizeof version);
    in.read(reinterpret_cast<char*>(&M), sizeof M);
    in.read(reinterpret_cast<char*>(&n), sizeof n);
    in.read(reinterpret_cast<char*>(&L), sizeof L);
    if (!in || version != kVersion)
        throw std::runtime_error("unsupported snapshot version in " + path);
    SpectralField u(make_grid(M, L), n);
    std::vector<float> buf(2 * u.coeffs.size());
    in.read(reinterpret_cast<char*>(buf.data()),
            static_cast<std::streamsize>(buf.size() * sizeof(float)));
    if (!in) throw std::runtime_error("truncated snapshot: " + path);
    for (std::size_t i = 0; i < u.coeffs.size(); ++i)
        u.coeffs[i] = Complex{static_cast<double>(buf[2 * i]), static_cast<double>(buf[2 * i + 1])};
    return u;
}

} // namespace tnse
