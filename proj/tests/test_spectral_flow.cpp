#include "doctest.h"

#include <cmath>

#include "nlsist/spectral_flow.hpp"

using namespace nlsist;

namespace {
SpectralData sample_data() {
    RealGrid zg(-2.0, 2.0, 9);
    std::vector<Complex> r(9);
    for (std::size_t i = 0; i < 9; ++i) r[i] = Complex(0.1 * double(i), -0.05);
    return SpectralData(zg, r, {DiscretePair{Complex(0.2, 0.6), Complex(1.0, -2.0)}});
}
}  // namespace

TEST_CASE("t = 0 is the identity") {
    SpectralData d = sample_data();
    SpectralData e = evolve_spectral(d, 0.0);
    for (std::size_t i = 0; i < d.r_values.size(); ++i)
        CHECK(std::abs(e.r_values[i] - d.r_values[i]) < 1e-15);
    CHECK(std::abs(e.discrete[0].c - d.discrete[0].c) < 1e-15);
}

TEST_CASE("flow phases") {
    SpectralData d = sample_data();
    const double t = 0.37;
    SpectralData e = evolve_spectral(d, t);
    for (std::size_t i = 0; i < d.r_values.size(); ++i) {
        const double z = d.z_grid.node(i);
        CHECK(std::abs(e.r_values[i] -
                       d.r_values[i] * std::exp(4.0 * kImagUnit * z * z * t)) < 1e-14);
        // |r| is invariant on the real line
        CHECK(std::abs(std::abs(e.r_values[i]) - std::abs(d.r_values[i])) < 1e-14);
    }
    const Complex z1 = d.discrete[0].z;
    CHECK(std::abs(e.discrete[0].z - z1) < 1e-15);
    CHECK(std::abs(e.discrete[0].c -
                   d.discrete[0].c * std::exp(4.0 * kImagUnit * z1 * z1 * t)) < 1e-13);
}

TEST_CASE("group property and inverse") {
    SpectralData d = sample_data();
    SpectralData e = evolve_spectral(evolve_spectral(d, 0.4), 0.6);
    SpectralData f = evolve_spectral(d, 1.0);
    CHECK(std::abs(e.discrete[0].c - f.discrete[0].c) < 1e-13);
    SpectralData back = evolve_spectral(f, -1.0);
    CHECK(std::abs(back.discrete[0].c - d.discrete[0].c) < 1e-13);
    for (std::size_t i = 0; i < d.r_values.size(); ++i)
        CHECK(std::abs(back.r_values[i] - d.r_values[i]) < 1e-13);
}

TEST_CASE("convention flag flips only the discrete exponent") {
    SpectralData d = sample_data();
    const double t = 0.81;
    SpectralData a = evolve_spectral(d, t, FlowConvention::paper_r);
    SpectralData b = evolve_spectral(d, t, FlowConvention::paper_soliton);
    for (std::size_t i = 0; i < d.r_values.size(); ++i)
        CHECK(std::abs(a.r_values[i] - b.r_values[i]) < 1e-15);
    const Complex z1 = d.discrete[0].z;
    CHECK(std::abs(b.discrete[0].c -
                   d.discrete[0].c * std::exp(-4.0 * kImagUnit * z1 * z1 * t)) < 1e-13);
}

TEST_CASE("non-finite time is rejected") {
    CHECK_THROWS_AS(evolve_spectral(sample_data(), std::nan("")), InputError);
}
