#pragma once

#include <filesystem>

#include "nlsist/core.hpp"

namespace nlsist {

/// Saves a field as the little-endian binary container ("NLSIST1\0" magic,
/// grid header, interleaved re/im doubles), or as CSV (x,re,im columns,
/// 17 significant digits) when the path ends in ".csv".
void save_field(const std::filesystem::path& path, const ComplexField1D& f);

/// Loads either encoding, detected by the magic bytes. Malformed input
/// raises ParseError carrying the byte offset.
ComplexField1D load_field(const std::filesystem::path& path);

/// Spectral data as JSON: grid, r as re/im arrays, discrete pairs as
/// {z_re, z_im, c_re, c_im}.
void save_spectral(const std::filesystem::path& path, const SpectralData& data);
SpectralData load_spectral(const std::filesystem::path& path);

}  // namespace nlsist
