#pragma once

#include <utility>

#include "nlsist/core.hpp"

namespace nlsist {

/// Stationary-phase quantities at z0 = -x/(4t), all derived from the
/// reflection coefficient alone.
struct PhaseData {
    double z0 = 0.0;      // stationary point -x/(4t)
    double nu0 = 0.0;     // -(1/2pi) log(1+|r(z0)|^2), always <= 0
    Complex r_at_z0;      // reflection coefficient at the stationary point
    Complex beta00;       // remainder integral evaluated at (z0, z0)
    Complex r0_hat;       // r(z0) with the beta/nu phase corrections removed
    Complex r0;           // r0_hat rotated by the t-dependent phase
    double t = 0.0;
};

/// delta(z) = exp((1/2pi i) int_{-inf}^{z0} log(1+|r|^2)/(s-z) ds), trapezoid
/// quadrature on the sampled grid (tails beyond the grid dropped).
/// Throws RangeError when z is within one grid spacing of the cut (-inf, z0].
Complex delta_function(const SpectralData& data, double z0, Complex z);

/// The smooth remainder beta(z, z0): the cut integral with the logarithmic
/// growth at the endpoint subtracted by a hat cutoff on [z0-1, z0]. The
/// removable singularity at z = z0 is evaluated by its limit value.
Complex beta_remainder(const SpectralData& data, double z0, Complex z);

/// Assembles PhaseData at z0 = -x/(4t); requires t > 0.
PhaseData make_phase_data(const SpectralData& data, double t, double x);

/// (k1, k2) with k1 = -i sqrt(2pi) e^{i pi/4} e^{-pi nu0/2} / (r0 Gamma(-i nu0))
/// and k2 = nu0/k1. Throws NonGenericDatumError when r0 = 0 (vanishing
/// reflection at the stationary point; the leading radiation term is absent).
std::pair<Complex, Complex> k_constants(const PhaseData& phase);

/// The sector-wise model matrix P(zeta): parabolic-cylinder entries times the
/// sector factor times zeta^{-i nu0 sigma3} e^{i zeta^2 sigma3 / 4}.
/// det P = 1 and P ~ 1 + P1/zeta at infinity with P1 = [[0,k1],[k2,0]].
/// Throws RangeError when zeta lies on a sector-boundary ray (caller
/// perturbs) and NonGenericDatumError when r0 = 0.
Mat2 model_P(Complex zeta, double nu0, Complex r0);

/// Leading radiation profile 2i k1 / sqrt(8t); returns 0 when r(z0) = 0.
/// Requires radiation-only data (no discrete pairs). When t < t_min the
/// result is outside the validated asymptotic regime; if regime_warning is
/// non-null it is set accordingly instead of raising.
Complex radiation_profile(const SpectralData& data, double t, double x, double t_min = 10.0,
                          bool* regime_warning = nullptr);

/// Phase/position shift factors of the asymptotic soliton: the half-line
/// integrals of log(1+|r|^2)/(s - z1) up to (forward) or from (backward)
/// alpha1 = Re z1. Both reduce to 1 when r = 0.
Complex delta_shift(const SpectralData& data, Complex z1);
Complex lambda_shift(const SpectralData& data, Complex z1);

enum class TimeSign { plus, minus };

/// The soliton the solution converges to as t -> +-infinity: the closed-form
/// one-soliton with phase shifted by 2 arg(D) and sech argument shifted by
/// log|D|, D = delta_shift (plus) or lambda_shift (minus). Requires exactly
/// one discrete pair.
Complex asymptotic_soliton(const SpectralData& data, TimeSign t_sign, double t, double x);

/// Leading-order RH solution at the eigenvalue:
/// [[delta(z1), delta^{-1} k1 / (sqrt(8t)(z1-z0))],
///  [delta k2 / (sqrt(8t)(z1-z0)), delta^{-1}(z1)]].
/// Throws RangeError when |z1 - z0| < margin.
Mat2 approx_m_at_eigenvalue(const SpectralData& data, double t, double x, Complex z1,
                            double margin = 0.05);

}  // namespace nlsist
