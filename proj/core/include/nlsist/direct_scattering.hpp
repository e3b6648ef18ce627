#pragma once

#include <array>
#include <string>
#include <vector>

#include "nlsist/core.hpp"

namespace nlsist {

using Vec2 = std::array<Complex, 2>;

enum class JostKind { m1_minus, m2_plus, m1_plus, m2_minus };

/// Solves the Volterra Jost equation for the requested function, marching from
/// the appropriate infinity; the returned array holds the 2-vector at each
/// x-node. At the starting edge the value is exactly e1 (m1) or e2 (m2).
/// m1_minus/m2_plus require Im z >= 0, m1_plus/m2_minus require Im z <= 0.
std::vector<Vec2> solve_jost(const ComplexField1D& u, Complex z, JostKind which);

struct ScatteringCoefficients {
    RealGrid z_grid;
    std::vector<Complex> a_values;
    std::vector<Complex> b_values;
    /// Non-empty when the potential has not decayed at the x-grid edges;
    /// carries the estimated truncation error.
    std::string diagnostic;
};

/// a and b on a real z-grid via the x-independent Wronskians evaluated at x=0.
ScatteringCoefficients scattering_ab(const ComplexField1D& u, const RealGrid& z_grid);

/// Analytic continuation of a(z) = det[m1^-(0,z), m2^+(0,z)] to Im z >= 0.
Complex scattering_a_at(const ComplexField1D& u, Complex z);

/// a'(z) by complex central differences with step 1e-5 * (1 + |z|).
Complex scattering_a_prime_at(const ComplexField1D& u, Complex z);

/// r = b/a pointwise. Throws NonGenericDatumError naming the node when
/// |a| falls below min_abs_a; the default sits above the accuracy floor of
/// the march at desk-scale grids, where an |a| this small cannot be
/// distinguished from a true zero (and the resulting r could not be resolved
/// on the z-grid anyway).
std::vector<Complex> reflection_coefficient(const ScatteringCoefficients& coeffs,
                                            double min_abs_a = 1e-5);

struct SearchBox {
    double re_min, re_max;
    double im_min, im_max;  // must satisfy 0 < im_min < im_max
};

/// All zeros of a(z) inside the box, found by argument-principle rectangle
/// subdivision and refined by Newton to |a| < 1e-10. Throws RootCountError if
/// the contour count cannot be reconciled with the refined roots.
std::vector<Complex> find_eigenvalues(const ComplexField1D& u, const SearchBox& box);

/// c_k = gamma_k / a'(z_k) with gamma_k the least-squares proportionality
/// ratio between m1^-(0,z_k) and m2^+(0,z_k).
std::vector<Complex> norming_constants(const ComplexField1D& u,
                                       const std::vector<Complex>& eigenvalues);

/// Full direct-scattering pipeline: r on the grid plus the discrete spectrum
/// found inside the box.
SpectralData scatter_potential(const ComplexField1D& u, const RealGrid& z_grid,
                               const SearchBox& box);

}  // namespace nlsist
