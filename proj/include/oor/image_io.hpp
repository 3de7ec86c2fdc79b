#pragma once

#include <filesystem>

#include "oor/render.hpp"

namespace oor {

// sRGB transfer function; 8-bit image files are gamma-encoded while the
// attenuation math runs on linear radiance.
double srgb_decode(double encoded);
double srgb_encode(double linear);

// Binary PPM (P6, maxval 255); P3 accepted on read. Values pass through
// the sRGB transfer function.
Image read_ppm(const std::filesystem::path& path);
void write_ppm(const std::filesystem::path& path, const Image& image);

// Distance maps: a CSV of comma-separated meters (one row per image row),
// or a PGM (P5/P2) whose gray values map to meters via `scale`.
DistanceMap read_distance_csv(const std::filesystem::path& path);
void write_distance_csv(const std::filesystem::path& path, const DistanceMap& map);
DistanceMap read_distance_pgm(const std::filesystem::path& path, double scale = 1.0);

DistanceMap read_distance_file(const std::filesystem::path& path, double scale = 1.0);

} // namespace oor
