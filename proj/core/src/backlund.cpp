#include "nlsist/backlund.hpp"

#include <cmath>

namespace nlsist {

std::vector<Complex> strip_reflection(const std::vector<Complex>& r, const RealGrid& z_grid,
                                      Complex z1) {
    if (!(z1.imag() > 0)) throw DomainError("strip_reflection: Im z1 must be positive");
    if (r.size() != z_grid.n_points)
        throw InputError("strip_reflection: r length does not match grid");
    std::vector<Complex> out(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        const Complex z(z_grid.node(i), 0.0);
        out[i] = r[i] * (z - z1) / (z - std::conj(z1));
    }
    return out;
}

Complex backlund_combine(const BacklundInputs& in, Complex u_tilde_at_x) {
    if (!(in.z1.imag() > 0)) throw DomainError("backlund_combine: Im z1 must be positive");
    if (in.c1 == Complex(0.0)) throw DomainError("backlund_combine: c1 must be nonzero");
    const double beta = in.z1.imag();
    const Complex e_minus = std::exp(-kImagUnit * in.x * in.z1);
    const Complex e_plus =
        std::exp(kImagUnit * in.x * in.z1 + 4.0 * kImagUnit * in.t * in.z1 * in.z1);
    const Complex denom_c = 2.0 * kImagUnit * beta;
    const Mat2& m = in.m_at_z1;
    const Complex b1 = e_minus * m(0, 0) - in.c1 * m(0, 1) * e_plus / denom_c;
    const Complex b2 = e_minus * m(1, 0) - in.c1 * m(1, 1) * e_plus / denom_c;
    const double nn = std::norm(b1) + std::norm(b2);
    if (!(nn > 0))
        throw DegenerateBacklundError("backlund_combine: vanishing (b1, b2)");
    const Complex B = 4.0 * beta * b1 * std::conj(b2) / nn;
    // AM-GM bound on the Darboux addition
    if (!(std::abs(B) <= 2.0 * beta * (1.0 + 1e-12)))
        throw DegenerateBacklundError("backlund_combine: |B| bound violated");
    return u_tilde_at_x + B;
}

Complex soliton_closed_form(Complex z1, Complex c1, double t, double x) {
    if (!(z1.imag() > 0)) throw DomainError("soliton_closed_form: Im z1 must be positive");
    if (c1 == Complex(0.0)) throw DomainError("soliton_closed_form: c1 must be nonzero");
    const double alpha = z1.real(), beta = z1.imag();
    const double delta0 = std::log(std::abs(c1) / (2.0 * beta));
    const double psi0 = std::arg(c1);
    const double phase = -2.0 * alpha * x - 4.0 * t * (alpha * alpha - beta * beta) - psi0;
    const double arg = 2.0 * beta * x + 8.0 * t * alpha * beta - delta0;
    return -2.0 * kImagUnit * beta * std::exp(kImagUnit * phase) / std::cosh(arg);
}

std::pair<Complex, Complex> params_to_spectrum(const SolitonParams& p) {
    const Complex z1(-p.v / 2.0, p.omega / 2.0);
    const double mod = p.omega * std::exp(p.omega * p.x0);
    const double psi0 = kGammaPsiOffset - p.gamma;
    return {z1, mod * std::exp(kImagUnit * psi0)};
}

SolitonParams spectrum_to_params(Complex z1, Complex c1) {
    if (!(z1.imag() > 0)) throw DomainError("spectrum_to_params: Im z1 must be positive");
    if (c1 == Complex(0.0)) throw DomainError("spectrum_to_params: c1 must be nonzero");
    const double omega = 2.0 * z1.imag();
    const double v = -2.0 * z1.real();
    const double x0 = std::log(std::abs(c1) / omega) / omega;
    double gamma = kGammaPsiOffset - std::arg(c1);
    gamma = std::remainder(gamma, 2.0 * M_PI);
    return SolitonParams(omega, gamma, v, x0);
}

}  // namespace nlsist
