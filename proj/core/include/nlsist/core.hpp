#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "nlsist/errors.hpp"

namespace nlsist {

using Complex = std::complex<double>;

inline constexpr Complex kImagUnit{0.0, 1.0};

/// Uniform grid on [x_min, x_max] with n_points nodes (both ends included).
/// Used for both the spatial variable x and the spectral variable z.
struct RealGrid {
    double x_min = 0.0;
    double x_max = 0.0;
    std::size_t n_points = 0;

    RealGrid() = default;
    RealGrid(double lo, double hi, std::size_t n);

    double spacing() const { return (x_max - x_min) / double(n_points - 1); }
    double node(std::size_t i) const { return x_min + double(i) * spacing(); }
    std::vector<double> nodes() const;

    bool operator==(const RealGrid&) const = default;
};

/// A sampled complex function of one real variable.
struct ComplexField1D {
    RealGrid grid;
    std::vector<Complex> values;

    ComplexField1D() = default;
    ComplexField1D(RealGrid g, std::vector<Complex> v);

    /// Builds the field by sampling f on the grid nodes.
    template <class F>
    static ComplexField1D sample(const RealGrid& g, F&& f) {
        std::vector<Complex> v(g.n_points);
        for (std::size_t i = 0; i < g.n_points; ++i) v[i] = f(g.node(i));
        return ComplexField1D(g, std::move(v));
    }

    std::size_t size() const { return values.size(); }

    double sup_norm() const;
    /// Trapezoid-rule L2 norm of |f|.
    double l2_norm() const;
};

/// Piecewise-linear interpolation, exact on grid nodes.
/// Throws RangeError for x outside [x_min, x_max].
Complex linear_interpolate(const ComplexField1D& f, double x);

/// 2x2 complex matrix with value semantics.
struct Mat2 {
    // Row-major: a(i,j) = m[2*i+j].
    Complex m[4] = {};

    Mat2() = default;
    Mat2(Complex a11, Complex a12, Complex a21, Complex a22) : m{a11, a12, a21, a22} {}

    static Mat2 identity() { return Mat2(1.0, 0.0, 0.0, 1.0); }
    static Mat2 sigma3() { return Mat2(1.0, 0.0, 0.0, -1.0); }

    Complex& operator()(int i, int j) { return m[2 * i + j]; }
    const Complex& operator()(int i, int j) const { return m[2 * i + j]; }

    Mat2 operator+(const Mat2& o) const;
    Mat2 operator-(const Mat2& o) const;
    Mat2 operator*(const Mat2& o) const;
    Mat2 operator*(Complex s) const;

    Complex det() const { return m[0] * m[3] - m[1] * m[2]; }
    Complex trace() const { return m[0] + m[3]; }
    Mat2 inverse() const;
    /// Max-abs entry norm.
    double norm() const;
};

inline Mat2 operator*(Complex s, const Mat2& a) { return a * s; }

/// diag(s, 1/s) * A * diag(1/s, s), i.e. s^{sigma3} A s^{-sigma3}.
/// Throws DomainError for s = 0.
Mat2 sigma3_conjugate(const Mat2& a, Complex s);

/// Discrete eigenvalue with its norming constant.
struct DiscretePair {
    Complex z;  // Im z > 0
    Complex c;  // nonzero
};

/// Scattering data: reflection-coefficient samples on a real z-grid plus
/// the discrete spectrum.
struct SpectralData {
    RealGrid z_grid;
    std::vector<Complex> r_values;
    std::vector<DiscretePair> discrete;

    SpectralData() = default;
    SpectralData(RealGrid zg, std::vector<Complex> r, std::vector<DiscretePair> d = {});

    /// Validates the structural invariants; throws InputError on violation.
    void validate() const;

    double r_sup_norm() const;
};

/// Physical soliton parameters: amplitude/width omega, phase gamma,
/// velocity v, initial position x0.
struct SolitonParams {
    double omega = 1.0;
    double gamma = 0.0;
    double v = 0.0;
    double x0 = 0.0;

    SolitonParams() = default;
    SolitonParams(double w, double g, double vel, double pos);

    /// The exact solution omega e^{i x v + i (omega^2 - v^2) t + i gamma}
    /// sech(omega (x - 2 v t - x0)) evaluated at (t, x).
    Complex evaluate(double t, double x) const;

    /// Samples the soliton at time t on the given grid.
    ComplexField1D sample(const RealGrid& g, double t) const;
};

}  // namespace nlsist
