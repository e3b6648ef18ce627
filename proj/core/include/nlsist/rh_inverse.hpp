#pragma once

#include <vector>

#include "nlsist/core.hpp"

namespace nlsist {

/// Jump data for the inverse problem at one x: the jump matrix on the real
/// grid plus the nilpotent pole matrices at eigenvalues and their conjugates.
struct JumpData {
    double x = 0.0;
    std::vector<Mat2> V_values;
    struct Pole {
        Complex z;
        Mat2 V;
    };
    std::vector<Pole> poles;  // z_1..z_n followed by conj(z_1)..conj(z_n)
};

JumpData build_jump(const SpectralData& data, double x);

/// The solved singular-integral system at one x: boundary values M on the
/// real grid and M at the pole points.
struct RHSolutionSlice {
    RealGrid z_grid;
    std::vector<Mat2> M_values;
    std::vector<Complex> pole_points;
    std::vector<Mat2> M_at_poles;
    double x = 0.0;
};

struct RHOptions {
    /// Unknowns per matrix row above which the dense factorization is
    /// replaced by restarted GMRES with FFT-applied Cauchy projections.
    std::size_t dense_limit = 4096;
    double residual_tol = 1e-8;
    std::size_t gmres_restart = 60;
    std::size_t gmres_max_iter = 4000;
};

/// Solves the coupled integral/algebraic system for M at one x.
RHSolutionSlice solve_rh(const SpectralData& data, double x, const RHOptions& opts = {});

/// Triangular-factorization variant, well conditioned for large |x|: solves
/// the mu-system with the factor pairing adapted to the sign of x (scalar
/// delta-conjugation for x <= 0). Radiation-only data; discrete spectrum is
/// not supported on this route.
RHSolutionSlice solve_rh_stabilized(const SpectralData& data, double x,
                                    const RHOptions& opts = {});

/// u(x) = 2i [ sum over poles of (M V)_12 - (1/2 pi i) int (M(V-1))_12 ].
Complex reconstruct_potential(const RHSolutionSlice& slice, const SpectralData& data, double x);

/// m(x,z) off the real line from the solved slice.
Mat2 rh_matrix_at(const SpectralData& data, double x, Complex z, const RHOptions& opts = {});
Mat2 rh_matrix_from_slice(const RHSolutionSlice& slice, const SpectralData& data, Complex z);

/// Default |x| beyond which the reconstruction sweep prefers the stabilized
/// solver (radiation-only data).
double stabilized_crossover(const SpectralData& data);

/// Parallel x-sweep: reconstructs u on x_grid, choosing the solver per point.
ComplexField1D reconstruct_on_grid(const SpectralData& data, const RealGrid& x_grid,
                                   const RHOptions& opts = {});

}  // namespace nlsist
