#include "doctest.h"

#include <cmath>

#include "nlsist/integrator.hpp"

using namespace nlsist;

namespace {
ComplexField1D soliton_field(const RealGrid& g, double t) {
    return SolitonParams(1.0, 0.0, 0.0, 0.0).sample(g, t);
}
}  // namespace

TEST_CASE("soliton propagates to machine-level phase accuracy") {
    RealGrid xg(-40.0, 40.0, 1025);  // periodic cell uses the first 1024 nodes
    IntegratorConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 1.0;
    auto snaps = evolve_reference(soliton_field(xg, 0.0), cfg, {0.5, 1.0});
    for (std::size_t k = 0; k < 2; ++k) {
        const double t = (k == 0) ? 0.5 : 1.0;
        ComplexField1D ref = soliton_field(xg, t);
        double worst = 0.0;
        for (std::size_t i = 0; i < xg.n_points; ++i)
            worst = std::max(worst, std::abs(snaps[k].values[i] - ref.values[i]));
        CHECK(worst < 5e-6);
    }
}

TEST_CASE("Strang splitting is second order in dt") {
    RealGrid xg(-40.0, 40.0, 513);
    ComplexField1D u0 = soliton_field(xg, 0.0);
    auto err = [&](double dt) {
        IntegratorConfig cfg;
        cfg.dt = dt;
        cfg.t_end = 0.5;
        auto s = evolve_reference(u0, cfg, {0.5});
        ComplexField1D ref = soliton_field(xg, 0.5);
        double worst = 0.0;
        for (std::size_t i = 0; i < xg.n_points; ++i)
            worst = std::max(worst, std::abs(s[0].values[i] - ref.values[i]));
        return worst;
    };
    const double e1 = err(4e-3), e2 = err(2e-3);
    CHECK(e1 / e2 > 3.0);
    CHECK(e1 / e2 < 5.0);
}

TEST_CASE("fourth-order composition beats Strang") {
    RealGrid xg(-40.0, 40.0, 513);
    ComplexField1D u0 = soliton_field(xg, 0.0);
    IntegratorConfig cfg;
    cfg.dt = 4e-3;
    cfg.t_end = 0.5;
    auto strang = evolve_reference(u0, cfg, {0.5});
    cfg.scheme = SplitScheme::fourth_order_split;
    auto fourth = evolve_reference(u0, cfg, {0.5});
    ComplexField1D ref = soliton_field(xg, 0.5);
    double es = 0.0, ef = 0.0;
    for (std::size_t i = 0; i < xg.n_points; ++i) {
        es = std::max(es, std::abs(strang[0].values[i] - ref.values[i]));
        ef = std::max(ef, std::abs(fourth[0].values[i] - ref.values[i]));
    }
    CHECK(ef < es / 20.0);
}

TEST_CASE("mass and energy are conserved") {
    RealGrid xg(-40.0, 40.0, 1025);
    auto u0 = ComplexField1D::sample(
        xg, [](double x) { return 0.8 / std::cosh(x) * std::exp(kImagUnit * 0.5 * x); });
    auto [m0, e0] = conserved_quantities(u0);
    IntegratorConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 2.0;
    auto s = evolve_reference(u0, cfg, {2.0});
    auto [m1, e1] = conserved_quantities(s[0]);
    CHECK(std::abs(m1 - m0) / m0 < 1e-10);
    CHECK(std::abs(e1 - e0) / std::abs(e0) < 1e-5);
    // int A^2 sech^2(x) dx = 2 A^2
    CHECK(m0 == doctest::Approx(2.0 * 0.64).epsilon(1e-6));
}

TEST_CASE("single step matches evolve_reference composition") {
    RealGrid xg(-20.0, 20.0, 257);
    ComplexField1D u = soliton_field(xg, 0.0);
    ComplexField1D a = step(step(u, 1e-2), 1e-2);
    IntegratorConfig cfg;
    cfg.dt = 1e-2;
    cfg.t_end = 2e-2;
    ComplexField1D b = evolve_reference(u, cfg, {2e-2})[0];
    for (std::size_t i = 0; i < xg.n_points; ++i)
        CHECK(std::abs(a.values[i] - b.values[i]) < 1e-13);
}

TEST_CASE("bad configurations are rejected") {
    RealGrid xg(-20.0, 20.0, 257);
    ComplexField1D u = soliton_field(xg, 0.0);
    IntegratorConfig cfg;
    cfg.dt = -1.0;
    CHECK_THROWS_AS(evolve_reference(u, cfg, {0.1}), InputError);
    cfg.dt = 1e-3;
    cfg.t_end = 1.0;
    CHECK_THROWS_AS(evolve_reference(u, cfg, {0.5, 0.2}), InputError);
    CHECK_THROWS_AS(evolve_reference(u, cfg, {2.0}), InputError);
}

TEST_CASE("edge wrap-around is detected") {
    RealGrid xg(-6.0, 6.0, 257);  // too small a box: dispersive tails reach the edge
    auto u0 = ComplexField1D::sample(
        xg, [](double x) { return 0.8 * std::exp(-x * x) * std::exp(2.0 * kImagUnit * x); });
    IntegratorConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 5.0;
    cfg.edge_tolerance = 1e-8;
    CHECK_THROWS_AS(evolve_reference(u0, cfg, {5.0}), DomainError);
}
