#pragma once

#include "nlsist/core.hpp"

namespace nlsist {

/// Sign convention for the spectral-data time evolution. The two sources for
/// the flow carry opposite exponent signs for c_k; paper_r (the validated
/// default) uses e^{+4iz^2 t} for both r and c_k, paper_soliton flips the
/// c_k exponent.
enum class FlowConvention { paper_r, paper_soliton };

/// r(z) -> e^{sigma_r 4iz^2 t} r(z), c_k -> e^{sigma_c 4i z_k^2 t} c_k;
/// eigenvalues are invariant.
SpectralData evolve_spectral(const SpectralData& data, double t,
                             FlowConvention convention = FlowConvention::paper_r);

}  // namespace nlsist
