#pragma once

#include <vector>

#include "nlsist/core.hpp"

namespace nlsist {

enum class SplitScheme { strang_split, fourth_order_split };

struct IntegratorConfig {
    double dt = 1e-3;
    double t_end = 1.0;
    SplitScheme scheme = SplitScheme::strang_split;
    bool dealias = false;
    /// Edge wrap-around threshold; a solution exceeding it raises an error.
    double edge_tolerance = 1e-6;
};

/// One Strang step: half nonlinear rotation, full free propagator (exact in
/// frequency space), half nonlinear rotation. Periodic spectral spatial
/// discretization with the last node as the wrap point.
ComplexField1D step(const ComplexField1D& u, double dt,
                    SplitScheme scheme = SplitScheme::strang_split, bool dealias = false);

/// Integrates u0 and returns snapshots at the requested times (sorted,
/// within [0, t_end]). Times are matched to step boundaries; dt is locally
/// adjusted so each sample time is hit exactly.
std::vector<ComplexField1D> evolve_reference(const ComplexField1D& u0,
                                             const IntegratorConfig& cfg,
                                             const std::vector<double>& sample_times);

/// (mass, energy) = (int |u|^2, int |u_x|^2 - |u|^4) by trapezoid/spectral
/// differentiation.
std::pair<double, double> conserved_quantities(const ComplexField1D& u);

}  // namespace nlsist
