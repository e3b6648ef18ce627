#include "nlsist/asymptotics.hpp"

#include <algorithm>
#include <cmath>

#include "nlsist/backlund.hpp"
#include "nlsist/special_functions.hpp"

namespace nlsist {

namespace {

// r linearly interpolated on its grid, 0 outside.
Complex r_interp(const SpectralData& d, double s) {
    const RealGrid& g = d.z_grid;
    if (s <= g.x_min || s >= g.x_max) {
        if (s == g.x_min) return d.r_values.front();
        if (s == g.x_max) return d.r_values.back();
        return 0.0;
    }
    const double u = (s - g.x_min) / g.spacing();
    const std::size_t j = std::min(std::size_t(u), g.n_points - 2);
    const double w = u - double(j);
    return (1.0 - w) * d.r_values[j] + w * d.r_values[j + 1];
}

double log_weight(const SpectralData& d, std::size_t j) {
    return std::log1p(std::norm(d.r_values[j]));
}

// (1/2pi i) int_{x_min}^{upper} log(1+|r|^2)/(s - z) ds, trapezoid with a
// partial last interval; the integrand vanishes outside the grid.
Complex cut_integral(const SpectralData& d, double upper, Complex z) {
    const RealGrid& g = d.z_grid;
    if (upper <= g.x_min) return 0.0;
    const double hi = std::min(upper, g.x_max);
    const double h = g.spacing();
    Complex acc = 0.0;
    for (std::size_t j = 0; j + 1 < g.n_points; ++j) {
        const double a = g.node(j), b = g.node(j + 1);
        if (a >= hi) break;
        const Complex fa = log_weight(d, j) / (a - z);
        if (b <= hi) {
            acc += 0.5 * (fa + log_weight(d, j + 1) / (b - z)) * h;
        } else {
            const Complex ft = std::log1p(std::norm(r_interp(d, hi))) / (hi - z);
            acc += 0.5 * (fa + ft) * (hi - a);
            break;
        }
    }
    return acc / (2.0 * M_PI * kImagUnit);
}

// Mirror of cut_integral over [lower, x_max].
Complex tail_integral(const SpectralData& d, double lower, Complex z) {
    const RealGrid& g = d.z_grid;
    if (lower >= g.x_max) return 0.0;
    const double lo = std::max(lower, g.x_min);
    const double h = g.spacing();
    Complex acc = 0.0;
    for (std::size_t j = 0; j + 1 < g.n_points; ++j) {
        const double a = g.node(j), b = g.node(j + 1);
        if (b <= lo) continue;
        const Complex fb = log_weight(d, j + 1) / (b - z);
        if (a >= lo) {
            acc += 0.5 * (log_weight(d, j) / (a - z) + fb) * h;
        } else {
            const Complex ft = std::log1p(std::norm(r_interp(d, lo))) / (lo - z);
            acc += 0.5 * (ft + fb) * (b - lo);
        }
    }
    return acc / (2.0 * M_PI * kImagUnit);
}

void require_off_cut(const SpectralData& d, double z0, Complex z, const char* who) {
    const double h = d.z_grid.spacing();
    if (std::abs(z.imag()) < h && z.real() <= z0 + h)
        throw RangeError(std::string(who) + ": z within one grid spacing of the cut");
}

bool reflection_trivial(const SpectralData& d) {
    for (const Complex& v : d.r_values)
        if (v != 0.0) return false;
    return true;
}

}  // namespace

Complex delta_function(const SpectralData& data, double z0, Complex z) {
    data.validate();
    require_off_cut(data, z0, z, "delta_function");
    const Complex delta = std::exp(cut_integral(data, z0, z));
    // sanity bounds: |delta| <= 1 below the axis, >= 1 above, and within
    // [1/(1+rho^2), 1+rho^2] either way
    const double rho = data.r_sup_norm();
    const double cap = 1.0 + rho * rho, mag = std::abs(delta), tol = 1e-9;
    if (mag > cap * (1.0 + tol) || mag < 1.0 / cap * (1.0 - tol))
        throw IllConditionedRHError("delta_function: magnitude bound violated");
    if (z.imag() > 0 && mag < 1.0 - tol)
        throw IllConditionedRHError("delta_function: |delta| < 1 in the upper half-plane");
    if (z.imag() < 0 && mag > 1.0 + tol)
        throw IllConditionedRHError("delta_function: |delta| > 1 in the lower half-plane");
    return delta;
}

Complex beta_remainder(const SpectralData& data, double z0, Complex z) {
    data.validate();
    const bool at_endpoint = std::abs(z - Complex(z0, 0.0)) < 1e-12;
    if (!at_endpoint) require_off_cut(data, z0, z, "beta_remainder");

    const RealGrid& g = data.z_grid;
    if (z0 <= g.x_min) return 0.0;
    const double hi = std::min(z0, g.x_max);
    const double h = g.spacing();
    const double l0 = std::log1p(std::norm(r_interp(data, z0)));

    auto numer = [&](double s, double lw) {
        const double chi = (s >= z0 - 1.0 && s <= z0) ? (s - z0 + 1.0) : 0.0;
        return lw - l0 * chi;
    };
    auto eval = [&](double s, double lw) -> Complex {
        const Complex den = s - z;
        if (std::abs(den) > 1e-12) return numer(s, lw) / den;
        // removable singularity at s = z = z0: limit is d/ds numer(s)|_{z0}
        const double lp = std::log1p(std::norm(r_interp(data, std::min(z0 + h, g.x_max))));
        const double lm = std::log1p(std::norm(r_interp(data, std::max(z0 - h, g.x_min))));
        return Complex(0.5 * (lp - lm) / h - l0, 0.0);
    };

    Complex acc = 0.0;
    for (std::size_t j = 0; j + 1 < g.n_points; ++j) {
        const double a = g.node(j), b = g.node(j + 1);
        if (a >= hi) break;
        const Complex fa = eval(a, log_weight(data, j));
        if (b <= hi) {
            acc += 0.5 * (fa + eval(b, log_weight(data, j + 1))) * h;
        } else {
            acc += 0.5 * (fa + eval(hi, std::log1p(std::norm(r_interp(data, hi))))) * (hi - a);
            break;
        }
    }
    return acc / (2.0 * M_PI * kImagUnit);
}

PhaseData make_phase_data(const SpectralData& data, double t, double x) {
    if (!(t > 0)) throw InputError("make_phase_data: t must be positive");
    PhaseData p;
    p.t = t;
    p.z0 = -x / (4.0 * t);
    p.r_at_z0 = r_interp(data, p.z0);
    p.nu0 = -std::log1p(std::norm(p.r_at_z0)) / (2.0 * M_PI);
    p.beta00 = beta_remainder(data, p.z0, Complex(p.z0, 0.0));
    p.r0_hat = p.r_at_z0 * std::exp(-2.0 * kImagUnit * p.nu0 - 2.0 * p.beta00);
    p.r0 = p.r0_hat *
           std::exp(kImagUnit * (p.nu0 * std::log(8.0 * t) - 4.0 * t * p.z0 * p.z0));
    return p;
}

std::pair<Complex, Complex> k_constants(const PhaseData& phase) {
    if (phase.r0 == 0.0)
        throw NonGenericDatumError(
            "k_constants: reflection vanishes at the stationary point");
    const double nu0 = phase.nu0;
    const Complex k1 = -kImagUnit * std::sqrt(2.0 * M_PI) *
                       std::exp(kImagUnit * M_PI / 4.0) * std::exp(-M_PI * nu0 / 2.0) /
                       (phase.r0 * gamma_fn(-kImagUnit * nu0));
    return {k1, nu0 / k1};
}

namespace {

struct PsiEval {
    Complex p11, p12, p21, p22;
};

// Upper half-plane parabolic-cylinder block.
PsiEval psi_plus(Complex zeta, double nu0, Complex k1, Complex k2) {
    const Complex a = kImagUnit * nu0;
    const Complex rot1 = std::exp(-3.0 * kImagUnit * M_PI / 4.0);
    const Complex rot2 = std::exp(-kImagUnit * M_PI / 4.0);
    const Complex w1 = rot1 * zeta, w2 = rot2 * zeta;
    const double e1 = std::exp(-3.0 * M_PI * nu0 / 4.0);
    const double e2 = std::exp(M_PI * nu0 / 4.0);
    const Complex d1 = parabolic_cylinder(a, w1), d1p = parabolic_cylinder_deriv(a, w1);
    const Complex d2 = parabolic_cylinder(-a, w2), d2p = parabolic_cylinder_deriv(-a, w2);
    PsiEval p;
    p.p11 = e1 * d1;
    p.p22 = e2 * d2;
    p.p12 = e2 / (-kImagUnit * k2) * (rot2 * d2p - kImagUnit * zeta / 2.0 * d2);
    p.p21 = e1 / (kImagUnit * k1) * (rot1 * d1p + kImagUnit * zeta / 2.0 * d1);
    return p;
}

// Lower half-plane block (mirror rotations).
PsiEval psi_minus(Complex zeta, double nu0, Complex k1, Complex k2) {
    const Complex a = kImagUnit * nu0;
    const Complex rot1 = std::exp(kImagUnit * M_PI / 4.0);
    const Complex rot2 = std::exp(3.0 * kImagUnit * M_PI / 4.0);
    const Complex w1 = rot1 * zeta, w2 = rot2 * zeta;
    const double e1 = std::exp(M_PI * nu0 / 4.0);
    const double e2 = std::exp(-3.0 * M_PI * nu0 / 4.0);
    const Complex d1 = parabolic_cylinder(a, w1), d1p = parabolic_cylinder_deriv(a, w1);
    const Complex d2 = parabolic_cylinder(-a, w2), d2p = parabolic_cylinder_deriv(-a, w2);
    PsiEval p;
    p.p11 = e1 * d1;
    p.p22 = e2 * d2;
    p.p12 = e2 / (-kImagUnit * k2) * (rot2 * d2p - kImagUnit * zeta / 2.0 * d2);
    p.p21 = e1 / (kImagUnit * k1) * (rot1 * d1p + kImagUnit * zeta / 2.0 * d1);
    return p;
}

}  // namespace

Mat2 model_P(Complex zeta, double nu0, Complex r0) {
    if (r0 == 0.0) throw NonGenericDatumError("model_P: r0 = 0");
    if (!(nu0 < 0)) throw InputError("model_P: nu0 must be negative");
    if (zeta == 0.0) throw RangeError("model_P: zeta = 0 lies on every ray");

    double ang = std::arg(zeta);
    if (ang < 0) ang += 2.0 * M_PI;
    static const double rays[] = {0.0,        M_PI / 4.0, 3.0 * M_PI / 4.0, M_PI,
                                  5.0 * M_PI / 4.0, 7.0 * M_PI / 4.0, 2.0 * M_PI};
    for (double ray : rays)
        if (std::abs(ang - ray) < 1e-8)
            throw RangeError("model_P: zeta lies on a sector-boundary ray");

    const auto [k1, k2] = k_constants(PhaseData{0.0, nu0, 0.0, 0.0, r0, r0, 1.0});
    const PsiEval psi =
        (ang < M_PI) ? psi_plus(zeta, nu0, k1, k2) : psi_minus(zeta, nu0, k1, k2);
    const Mat2 big_psi(psi.p11, psi.p12, psi.p21, psi.p22);

    const double denom = 1.0 + std::norm(r0);
    Mat2 sector = Mat2::identity();
    if (ang < M_PI / 4.0)
        sector = Mat2(1.0, 0.0, -r0, 1.0);
    else if (ang < 3.0 * M_PI / 4.0)
        ;  // identity
    else if (ang < M_PI)
        sector = Mat2(1.0, -std::conj(r0) / denom, 0.0, 1.0);
    else if (ang < 5.0 * M_PI / 4.0)
        sector = Mat2(1.0, 0.0, r0 / denom, 1.0);
    else if (ang < 7.0 * M_PI / 4.0)
        ;  // identity
    else
        sector = Mat2(1.0, std::conj(r0), 0.0, 1.0);

    // zeta^{-i nu0 sigma3} e^{i zeta^2 sigma3/4}, principal branch
    const Complex pw = std::exp(-kImagUnit * nu0 * std::log(zeta) +
                                kImagUnit * zeta * zeta / 4.0);
    const Mat2 diag(pw, 0.0, 0.0, 1.0 / pw);
    return big_psi * sector * diag;
}

Complex radiation_profile(const SpectralData& data, double t, double x, double t_min,
                          bool* regime_warning) {
    if (!data.discrete.empty())
        throw InputError("radiation_profile: data must be radiation-only");
    if (regime_warning) *regime_warning = (t < t_min);
    const PhaseData phase = make_phase_data(data, t, x);
    if (std::abs(phase.r_at_z0) < 1e-14) return 0.0;
    const auto [k1, k2] = k_constants(phase);
    (void)k2;
    return 2.0 * kImagUnit * k1 / std::sqrt(8.0 * t);
}

Complex delta_shift(const SpectralData& data, Complex z1) {
    if (!(z1.imag() > 0)) throw DomainError("delta_shift: Im z1 must be positive");
    return std::exp(cut_integral(data, z1.real(), z1));
}

Complex lambda_shift(const SpectralData& data, Complex z1) {
    if (!(z1.imag() > 0)) throw DomainError("lambda_shift: Im z1 must be positive");
    return std::exp(tail_integral(data, z1.real(), z1));
}

Complex asymptotic_soliton(const SpectralData& data, TimeSign t_sign, double t, double x) {
    data.validate();
    if (data.discrete.size() != 1)
        throw InputError("asymptotic_soliton: exactly one discrete pair required");
    const Complex z1 = data.discrete[0].z, c1 = data.discrete[0].c;
    if (data.r_values.empty() || reflection_trivial(data))
        return soliton_closed_form(z1, c1, t, x);
    const Complex shift =
        (t_sign == TimeSign::plus) ? delta_shift(data, z1) : lambda_shift(data, z1);
    // phase shifted by 2 arg(shift), sech argument shifted by log|shift|:
    // equivalent to replacing c1 by c1 |shift| / shift^2
    const Complex c_eff = c1 * std::abs(shift) / (shift * shift);
    return soliton_closed_form(z1, c_eff, t, x);
}

Mat2 approx_m_at_eigenvalue(const SpectralData& data, double t, double x, Complex z1,
                            double margin) {
    if (!(t > 0)) throw InputError("approx_m_at_eigenvalue: t must be positive");
    const double z0 = -x / (4.0 * t);
    if (std::abs(z1 - Complex(z0, 0.0)) < margin)
        throw RangeError("approx_m_at_eigenvalue: z1 too close to the stationary point");
    const Complex delta = delta_function(data, z0, z1);
    if (std::abs(r_interp(data, z0)) < 1e-14) return Mat2(delta, 0.0, 0.0, 1.0 / delta);
    const auto [k1, k2] = k_constants(make_phase_data(data, t, x));
    const Complex denom = std::sqrt(8.0 * t) * (z1 - z0);
    return Mat2(delta, k1 / (delta * denom), delta * k2 / denom, 1.0 / delta);
}

}  // namespace nlsist
