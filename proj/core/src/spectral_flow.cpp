#include "nlsist/spectral_flow.hpp"

#include <cmath>

namespace nlsist {

SpectralData evolve_spectral(const SpectralData& data, double t, FlowConvention convention) {
    if (!std::isfinite(t)) throw InputError("evolve_spectral: non-finite time");
    SpectralData out = data;
    for (std::size_t i = 0; i < out.r_values.size(); ++i) {
        const double z = out.z_grid.node(i);
        // real z: 4iz^2 t is purely imaginary, |r| invariant
        out.r_values[i] *= std::exp(4.0 * kImagUnit * z * z * t);
    }
    const double sigma_c = (convention == FlowConvention::paper_r) ? 1.0 : -1.0;
    for (auto& pair : out.discrete)
        pair.c *= std::exp(sigma_c * 4.0 * kImagUnit * pair.z * pair.z * t);
    return out;
}

}  // namespace nlsist
