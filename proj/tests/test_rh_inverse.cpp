#include "doctest.h"

#include <cmath>

#include "nlsist/backlund.hpp"
#include "nlsist/direct_scattering.hpp"
#include "nlsist/fft.hpp"
#include "nlsist/rh_inverse.hpp"

using namespace nlsist;

namespace {
std::vector<Complex> sample_on(const RealGrid& g, Complex (*f)(double)) {
    std::vector<Complex> v(g.n_points);
    for (std::size_t i = 0; i < g.n_points; ++i) v[i] = f(g.node(i));
    return v;
}
}  // namespace

TEST_CASE("Cauchy projections split analytic halves") {
    // h = 1/((s+i)(s+2i)) has its poles below the axis, so it extends
    // analytically to the upper half-plane and decays there: C+ h = h,
    // C- h = 0. The conjugate is the mirror case.
    RealGrid g(-80.0, 80.0, 4096);
    auto upper = sample_on(g, [](double s) {
        return 1.0 / ((Complex(s, 0) + Complex(0, 1)) * (Complex(s, 0) + Complex(0, 2)));
    });
    auto cp = cauchy_plus(upper);
    auto cm = cauchy_minus(upper);
    std::size_t i0 = 2048 - 128, i1 = 2048 + 128;  // stay away from the wrap point
    for (std::size_t i = i0; i < i1; i += 16) {
        CHECK(std::abs(cp[i] - upper[i]) < 2e-3);
        CHECK(std::abs(cm[i]) < 2e-3);
    }
    auto lower = sample_on(g, [](double s) {
        return 1.0 / ((Complex(s, 0) - Complex(0, 1)) * (Complex(s, 0) - Complex(0, 2)));
    });
    auto cp2 = cauchy_plus(lower);
    auto cm2 = cauchy_minus(lower);
    for (std::size_t i = i0; i < i1; i += 16) {
        CHECK(std::abs(cp2[i]) < 2e-3);
        CHECK(std::abs(cm2[i] + lower[i]) < 2e-3);
    }
    // C+ - C- = identity holds exactly in the discretization
    for (std::size_t i = 0; i < g.n_points; i += 256)
        CHECK(std::abs((cp[i] - cm[i]) - upper[i]) < 1e-12);
    // the line-kernel variants satisfy the same splitting, without the
    // periodization bias of the circulant route
    RealGrid gl(-40.0, 40.0, 1025);
    auto up2 = sample_on(gl, [](double s) {
        return 1.0 / ((Complex(s, 0) + Complex(0, 1)) * (Complex(s, 0) + Complex(0, 2)));
    });
    auto lp = cauchy_plus_line(up2, gl);
    auto lm = cauchy_minus_line(up2, gl);
    for (std::size_t i = 512 - 64; i < 512 + 64; i += 8) {
        CHECK(std::abs(lp[i] - up2[i]) < 2e-4);
        CHECK(std::abs(lm[i]) < 2e-4);
        CHECK(std::abs((lp[i] - lm[i]) - up2[i]) < 1e-12);
    }
}

TEST_CASE("trivial data reconstructs the zero potential") {
    RealGrid zg(-4.0, 4.0, 129);
    SpectralData d(zg, std::vector<Complex>(129, Complex(0.0)));
    for (double x : {-3.0, 0.0, 2.0}) {
        RHSolutionSlice s = solve_rh(d, x);
        CHECK(std::abs(reconstruct_potential(s, d, x)) < 1e-12);
        for (const Mat2& m : s.M_values) CHECK((m - Mat2::identity()).norm() < 1e-12);
    }
}

TEST_CASE("pure discrete data reconstructs the closed-form soliton") {
    RealGrid zg(-4.0, 4.0, 129);
    const Complex z1(0.15, 0.45), c1(0.8, 0.6);
    SpectralData d(zg, std::vector<Complex>(129, Complex(0.0)), {DiscretePair{z1, c1}});
    for (double x : {-2.0, -0.5, 0.0, 1.0, 3.0}) {
        RHSolutionSlice s = solve_rh(d, x);
        const Complex u = reconstruct_potential(s, d, x);
        CHECK(std::abs(u - soliton_closed_form(z1, c1, 0.0, x)) < 1e-10);
    }
}

TEST_CASE("scattered sech round-trips through the RH solve") {
    RealGrid xg(-40.0, 40.0, 1025);
    ComplexField1D u0 =
        ComplexField1D::sample(xg, [](double x) { return 0.3 / std::cosh(x); });
    SpectralData d = scatter_potential(u0, RealGrid(-4.0, 4.0, 385),
                                       SearchBox{-1.0, 1.0, 0.05, 1.0});
    for (double x : {-5.0, 0.0, 2.5}) {
        RHSolutionSlice s = solve_rh(d, x);
        const Complex u = reconstruct_potential(s, d, x);
        CHECK(std::abs(u - 0.3 / std::cosh(x)) < 1e-4);
    }
}

TEST_CASE("stabilized route agrees with the plain solve") {
    RealGrid xg(-40.0, 40.0, 1025);
    ComplexField1D u0 =
        ComplexField1D::sample(xg, [](double x) { return 0.3 / std::cosh(x); });
    SpectralData d = scatter_potential(u0, RealGrid(-4.0, 4.0, 769),
                                       SearchBox{-1.0, 1.0, 0.05, 1.0});
    for (double x : {-8.0, -2.0, 1.0, 6.0}) {
        const Complex a = reconstruct_potential(solve_rh(d, x), d, x);
        const Complex b = reconstruct_potential(solve_rh_stabilized(d, x), d, x);
        CHECK(std::abs(a - b) < 5e-6);
    }
    // far out on both sides the two routes agree tightly
    for (double x : {-15.0, 15.0}) {
        const Complex a = reconstruct_potential(solve_rh(d, x), d, x);
        const Complex b = reconstruct_potential(solve_rh_stabilized(d, x), d, x);
        CHECK(std::abs(a - b) < 1e-6);
    }
    CHECK(stabilized_crossover(d) > 0.0);
}

TEST_CASE("rh_matrix detQ and symmetry") {
    RealGrid zg(-4.0, 4.0, 129);
    const Complex z1(0.0, 0.5), c1(0.0, -1.0);
    SpectralData d(zg, std::vector<Complex>(129, Complex(0.0)), {DiscretePair{z1, c1}});
    RHSolutionSlice s = solve_rh(d, 0.7);
    const Mat2 m = rh_matrix_from_slice(s, d, Complex(1.0, 1.2));
    CHECK(std::abs(m.det() - Complex(1.0, 0.0)) < 1e-10);
    // m(z) -> I as |z| -> infinity
    const Mat2 far = rh_matrix_from_slice(s, d, Complex(0.0, 60.0));
    CHECK((far - Mat2::identity()).norm() < 0.05);
    CHECK_THROWS_AS(rh_matrix_from_slice(s, d, Complex(0.5, 1e-3)), RangeError);
}

TEST_CASE("reconstruct_on_grid sweeps both solvers") {
    RealGrid xg(-30.0, 30.0, 513);
    ComplexField1D u0 =
        ComplexField1D::sample(xg, [](double x) { return 0.25 / std::cosh(x); });
    SpectralData d = scatter_potential(u0, RealGrid(-4.0, 4.0, 257),
                                       SearchBox{-1.0, 1.0, 0.05, 1.0});
    RealGrid wg(-12.0, 12.0, 49);
    ComplexField1D rec = reconstruct_on_grid(d, wg);
    double worst = 0.0;
    for (std::size_t i = 0; i < wg.n_points; ++i)
        worst = std::max(worst,
                         std::abs(rec.values[i] - 0.25 / std::cosh(wg.node(i))));
    CHECK(worst < 2e-4);
}
