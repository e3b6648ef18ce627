#include "nlsist/core.hpp"

#include <cmath>

namespace nlsist {

RealGrid::RealGrid(double lo, double hi, std::size_t n) : x_min(lo), x_max(hi), n_points(n) {
    if (n < 2) throw InputError("RealGrid: need at least 2 points");
    if (!(lo < hi)) throw InputError("RealGrid: x_min must be < x_max");
    if (!std::isfinite(lo) || !std::isfinite(hi)) throw InputError("RealGrid: non-finite bounds");
}

std::vector<double> RealGrid::nodes() const {
    std::vector<double> out(n_points);
    for (std::size_t i = 0; i < n_points; ++i) out[i] = node(i);
    return out;
}

ComplexField1D::ComplexField1D(RealGrid g, std::vector<Complex> v)
    : grid(g), values(std::move(v)) {
    if (values.size() != grid.n_points)
        throw InputError("ComplexField1D: values length does not match grid");
    for (const Complex& c : values)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw InputError("ComplexField1D: non-finite entry");
}

double ComplexField1D::sup_norm() const {
    double m = 0.0;
    for (const Complex& c : values) m = std::max(m, std::abs(c));
    return m;
}

double ComplexField1D::l2_norm() const {
    const double h = grid.spacing();
    double s = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        double w = (i == 0 || i + 1 == values.size()) ? 0.5 : 1.0;
        s += w * std::norm(values[i]);
    }
    return std::sqrt(h * s);
}

Complex linear_interpolate(const ComplexField1D& f, double x) {
    const RealGrid& g = f.grid;
    const double h = g.spacing();
    // tolerate rounding right at the endpoints
    if (x < g.x_min - 1e-12 * (1 + std::abs(g.x_min)) ||
        x > g.x_max + 1e-12 * (1 + std::abs(g.x_max)))
        throw RangeError("linear_interpolate: x outside grid domain");
    double s = (x - g.x_min) / h;
    auto i = std::size_t(std::floor(s));
    if (i >= g.n_points - 1) i = g.n_points - 2;
    double w = s - double(i);
    if (w < 0) w = 0;
    if (w > 1) w = 1;
    return (1.0 - w) * f.values[i] + w * f.values[i + 1];
}

Mat2 Mat2::operator+(const Mat2& o) const {
    return Mat2(m[0] + o.m[0], m[1] + o.m[1], m[2] + o.m[2], m[3] + o.m[3]);
}

Mat2 Mat2::operator-(const Mat2& o) const {
    return Mat2(m[0] - o.m[0], m[1] - o.m[1], m[2] - o.m[2], m[3] - o.m[3]);
}

Mat2 Mat2::operator*(const Mat2& o) const {
    return Mat2(m[0] * o.m[0] + m[1] * o.m[2], m[0] * o.m[1] + m[1] * o.m[3],
                m[2] * o.m[0] + m[3] * o.m[2], m[2] * o.m[1] + m[3] * o.m[3]);
}

Mat2 Mat2::operator*(Complex s) const { return Mat2(m[0] * s, m[1] * s, m[2] * s, m[3] * s); }

Mat2 Mat2::inverse() const {
    Complex d = det();
    if (std::abs(d) == 0.0) throw DomainError("Mat2::inverse: singular matrix");
    return Mat2(m[3] / d, -m[1] / d, -m[2] / d, m[0] / d);
}

double Mat2::norm() const {
    double r = 0.0;
    for (const Complex& c : m) r = std::max(r, std::abs(c));
    return r;
}

Mat2 sigma3_conjugate(const Mat2& a, Complex s) {
    if (s == Complex(0.0)) throw DomainError("sigma3_conjugate: s must be nonzero");
    Complex s2 = s * s;
    return Mat2(a(0, 0), a(0, 1) * s2, a(1, 0) / s2, a(1, 1));
}

SpectralData::SpectralData(RealGrid zg, std::vector<Complex> r, std::vector<DiscretePair> d)
    : z_grid(zg), r_values(std::move(r)), discrete(std::move(d)) {
    validate();
}

void SpectralData::validate() const {
    if (r_values.size() != z_grid.n_points)
        throw InputError("SpectralData: r_values length does not match z_grid");
    for (const Complex& c : r_values)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw InputError("SpectralData: non-finite reflection sample");
    for (std::size_t k = 0; k < discrete.size(); ++k) {
        if (!(discrete[k].z.imag() > 0))
            throw InputError("SpectralData: eigenvalue must lie in the upper half-plane");
        if (discrete[k].c == Complex(0.0))
            throw InputError("SpectralData: norming constant must be nonzero");
        for (std::size_t j = 0; j < k; ++j)
            if (discrete[j].z == discrete[k].z)
                throw InputError("SpectralData: eigenvalues must be distinct");
    }
}

double SpectralData::r_sup_norm() const {
    double m = 0.0;
    for (const Complex& c : r_values) m = std::max(m, std::abs(c));
    return m;
}

SolitonParams::SolitonParams(double w, double g, double vel, double pos)
    : omega(w), gamma(g), v(vel), x0(pos) {
    if (!(w > 0)) throw InputError("SolitonParams: omega must be positive");
}

Complex SolitonParams::evaluate(double t, double x) const {
    double phase = x * v + (omega * omega - v * v) * t + gamma;
    double arg = omega * (x - 2 * v * t - x0);
    return omega * std::exp(kImagUnit * phase) / std::cosh(arg);
}

ComplexField1D SolitonParams::sample(const RealGrid& g, double t) const {
    return ComplexField1D::sample(g, [&](double x) { return evaluate(t, x); });
}

}  // namespace nlsist
