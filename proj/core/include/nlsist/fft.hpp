#pragma once

#include <vector>

#include "nlsist/core.hpp"

namespace nlsist {

/// Discrete Fourier transform, sign = -1 forward / +1 backward (unnormalized,
/// FFTW conventions). Thread-safe; each call uses its own buffers.
std::vector<Complex> dft(const std::vector<Complex>& in, int sign);

/// Boundary values of the Cauchy integral on a uniform grid, realized as
/// frequency-space projections: C+ keeps the modes that decay in the upper
/// half-plane, C- negates the modes that decay in the lower half-plane, and
/// the zero (and Nyquist) mode is split evenly so that C+ - C- = identity
/// holds exactly in the discretization.
std::vector<Complex> cauchy_plus(const std::vector<Complex>& h);
std::vector<Complex> cauchy_minus(const std::vector<Complex>& h);

/// Row i of the discrete principal-value Cauchy kernel on the grid window:
/// (P h)(z_i) = sum_j row[j] h_j approximates (1/2*pi*i) PV int h(s)/(s - z_i) ds.
/// The singular node is regularized by subtracting h(z_i) (the remainder has
/// the derivative limit there) and restoring it through the exact log term of
/// the window; at the two edge nodes the log distance is clamped to half a
/// spacing, which only matters when h has not decayed there.
std::vector<Complex> cauchy_pv_row(const RealGrid& g, std::size_t i);

/// Boundary values of the Cauchy integral with the true line kernel over the
/// grid window, C+/- h = +/- h/2 + P h. Unlike the circulant variants these do
/// not periodize the kernel, so the O(1/L^2) window bias is absent; C+ - C- =
/// identity still holds exactly.
std::vector<Complex> cauchy_plus_line(const std::vector<Complex>& h, const RealGrid& g);
std::vector<Complex> cauchy_minus_line(const std::vector<Complex>& h, const RealGrid& g);

/// Sup of |h| at the first/last node, used for edge-decay diagnostics.
double edge_magnitude(const std::vector<Complex>& h);

}  // namespace nlsist
