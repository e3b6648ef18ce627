#include "doctest.h"

#include <cmath>

#include "nlsist/backlund.hpp"

using namespace nlsist;

TEST_CASE("closed-form soliton equals the parameterized family") {
    for (const SolitonParams& p :
         {SolitonParams(1.0, 0.0, 0.0, 0.0), SolitonParams(2.0, 0.7, 1.0, -0.5),
          SolitonParams(0.6, -2.0, -0.3, 2.0)}) {
        auto [z1, c1] = params_to_spectrum(p);
        for (double t : {-1.0, 0.0, 2.0})
            for (double x : {-3.0, 0.0, 1.5})
                CHECK(std::abs(soliton_closed_form(z1, c1, t, x) - p.evaluate(t, x)) <
                      1e-12);
    }
}

TEST_CASE("parameter map round trip") {
    for (const SolitonParams& p :
         {SolitonParams(1.0, 0.3, 0.0, 0.0), SolitonParams(1.7, -1.2, 0.4, 1.1)}) {
        auto [z1, c1] = params_to_spectrum(p);
        SolitonParams q = spectrum_to_params(z1, c1);
        CHECK(q.omega == doctest::Approx(p.omega).epsilon(1e-12));
        CHECK(q.v == doctest::Approx(p.v).epsilon(1e-12));
        CHECK(q.x0 == doctest::Approx(p.x0).epsilon(1e-12));
        CHECK(std::remainder(q.gamma - p.gamma, 2 * M_PI) == doctest::Approx(0.0));
    }
    CHECK_THROWS_AS(spectrum_to_params(Complex(0.0, -0.5), Complex(1.0)), DomainError);
    CHECK_THROWS_AS(spectrum_to_params(Complex(0.0, 0.5), Complex(0.0)), DomainError);
}

TEST_CASE("trivial-background Backlund equals the closed form") {
    const Complex z1(-0.2, 0.45), c1(0.7, -0.3);
    for (double t : {-2.0, 0.0, 1.3}) {
        for (double x : {-6.0, -1.0, 0.0, 2.0, 7.0}) {
            BacklundInputs in;
            in.z1 = z1;
            in.c1 = c1;
            in.t = t;
            in.x = x;
            CHECK(std::abs(backlund_combine(in, 0.0) - soliton_closed_form(z1, c1, t, x)) <
                  1e-13);
        }
    }
}

TEST_CASE("|B| never exceeds 2 Im z1") {
    const Complex z1(0.3, 0.8);
    for (double t : {0.0, 0.9}) {
        for (double x = -5.0; x <= 5.0; x += 0.37) {
            BacklundInputs in;
            in.z1 = z1;
            in.c1 = Complex(1.1, 0.4);
            in.t = t;
            in.x = x;
            // the addition on a nontrivial background matrix
            in.m_at_z1 = Mat2(Complex(1.0, 0.1), Complex(0.05, -0.2), Complex(-0.1, 0.02),
                              Complex(0.95, -0.06));
            const Complex u = backlund_combine(in, Complex(0.01, -0.02));
            CHECK(std::abs(u - Complex(0.01, -0.02)) <= 2.0 * 0.8 + 1e-12);
        }
    }
}

TEST_CASE("strip_reflection removes the Blaschke factor") {
    RealGrid zg(-3.0, 3.0, 25);
    std::vector<Complex> r(25);
    for (std::size_t i = 0; i < 25; ++i) r[i] = Complex(0.2, 0.1 * zg.node(i));
    const Complex z1(0.4, 0.6);
    auto rt = strip_reflection(r, zg, z1);
    for (std::size_t i = 0; i < 25; ++i) {
        CHECK(std::abs(std::abs(rt[i]) - std::abs(r[i])) < 1e-14);
        const Complex z(zg.node(i), 0.0);
        CHECK(std::abs(rt[i] - r[i] * (z - z1) / (z - std::conj(z1))) < 1e-14);
    }
    CHECK_THROWS_AS(strip_reflection(r, zg, Complex(0.4, -0.6)), DomainError);
}

TEST_CASE("degenerate inputs are rejected") {
    BacklundInputs in;
    in.z1 = Complex(0.0, -0.5);
    in.c1 = Complex(1.0);
    CHECK_THROWS_AS(backlund_combine(in, 0.0), DomainError);
    in.z1 = Complex(0.0, 0.5);
    in.c1 = Complex(0.0);
    CHECK_THROWS_AS(backlund_combine(in, 0.0), DomainError);
}
