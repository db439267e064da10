#include "ota/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ota {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed),
      stream_(stream),
      gen_(splitmix64(splitmix64(seed) ^ splitmix64(stream * 0xD6E8FEB86659FD93ull + 1))) {}

double RngStream::uniform01() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double RngStream::normal() {
    double u1 = uniform01();
    while (u1 == 0.0) u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double RngStream::exponential(double mean) {
    if (mean < 0.0) throw std::invalid_argument("exponential: negative mean");
    if (mean == 0.0) return 0.0;
    double u = uniform01();
    while (u == 0.0) u = uniform01();
    return -mean * std::log(u);
}

cdouble RngStream::cscg(double variance) {
    if (variance < 0.0) throw std::invalid_argument("cscg: negative variance");
    if (variance == 0.0) return {};
    double u1 = uniform01();
    while (u1 == 0.0) u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-variance * std::log(u1));
    return {r * std::cos(2.0 * std::numbers::pi * u2), r * std::sin(2.0 * std::numbers::pi * u2)};
}

ComplexMatrix sample_cscg_matrix(RngStream& rng, std::size_t rows, std::size_t cols,
                                 double variance) {
    if (variance < 0.0) throw std::invalid_argument("sample_cscg_matrix: negative variance");
    ComplexMatrix m(rows, cols);
    for (auto& v : m.entries()) v = rng.cscg(variance);
    return m;
}

}  // namespace ota
