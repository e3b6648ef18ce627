#include "nlsist/integrator.hpp"

#include <algorithm>
#include <cmath>

#include "nlsist/fft.hpp"

namespace nlsist {

namespace {

// Signed frequency of FFT bin k over an M-point transform of period P.
double bin_frequency(std::size_t k, std::size_t m, double period) {
    long kk = long(k);
    if (2 * k > m) kk -= long(m);
    return 2.0 * M_PI * double(kk) / period;
}

void nonlinear_half(std::vector<Complex>& v, double dt) {
    for (Complex& c : v) c *= std::exp(2.0 * kImagUnit * std::norm(c) * dt);
}

void free_propagator(std::vector<Complex>& v, double dt, double period, bool dealias) {
    const std::size_t m = v.size();
    std::vector<Complex> spec = dft(v, -1);
    for (std::size_t k = 0; k < m; ++k) {
        const double xi = bin_frequency(k, m, period);
        spec[k] *= std::exp(-kImagUnit * xi * xi * dt) / double(m);
        if (dealias) {
            long kk = long(k);
            if (2 * k > m) kk -= long(m);
            if (3 * std::abs(kk) > long(m)) spec[k] = 0.0;
        }
    }
    v = dft(spec, +1);
}

void strang(std::vector<Complex>& v, double dt, double period, bool dealias) {
    nonlinear_half(v, 0.5 * dt);
    free_propagator(v, dt, period, dealias);
    nonlinear_half(v, 0.5 * dt);
}

}  // namespace

ComplexField1D step(const ComplexField1D& u, double dt, SplitScheme scheme, bool dealias) {
    const std::size_t n = u.grid.n_points;
    const double period = u.grid.x_max - u.grid.x_min;
    // the last node is the periodic wrap point
    std::vector<Complex> v(u.values.begin(), u.values.end() - 1);

    if (scheme == SplitScheme::strang_split) {
        strang(v, dt, period, dealias);
    } else {
        // triple-jump composition of Strang steps
        const double w1 = 1.0 / (2.0 - std::cbrt(2.0));
        const double w2 = 1.0 - 2.0 * w1;
        strang(v, w1 * dt, period, dealias);
        strang(v, w2 * dt, period, dealias);
        strang(v, w1 * dt, period, dealias);
    }
    std::vector<Complex> out(n);
    std::copy(v.begin(), v.end(), out.begin());
    out[n - 1] = v[0];
    return ComplexField1D(u.grid, std::move(out));
}

std::vector<ComplexField1D> evolve_reference(const ComplexField1D& u0,
                                             const IntegratorConfig& cfg,
                                             const std::vector<double>& sample_times) {
    if (!(cfg.dt > 0)) throw InputError("evolve_reference: dt must be positive");
    if (!std::is_sorted(sample_times.begin(), sample_times.end()))
        throw InputError("evolve_reference: sample times must be sorted");
    for (double t : sample_times)
        if (t < 0 || t > cfg.t_end + 1e-12)
            throw InputError("evolve_reference: sample time outside [0, t_end]");

    std::vector<ComplexField1D> snapshots;
    ComplexField1D u = u0;
    double t = 0.0;
    for (double target : sample_times) {
        if (target > t) {
            const std::size_t n_steps = std::size_t(std::ceil((target - t) / cfg.dt - 1e-12));
            const double dt = (target - t) / double(n_steps);
            for (std::size_t s = 0; s < n_steps; ++s) {
                const double wrap =
                    std::max(std::abs(u.values.front()), std::abs(u.values.back()));
                if (wrap > cfg.edge_tolerance)
                    throw DomainError(
                        "evolve_reference: solution reached the periodic wrap point; "
                        "domain too small");
                u = step(u, dt, cfg.scheme, cfg.dealias);
            }
            t = target;
        }
        snapshots.push_back(u);
    }
    return snapshots;
}

std::pair<double, double> conserved_quantities(const ComplexField1D& u) {
    const double h = u.grid.spacing();
    const std::size_t n = u.grid.n_points;
    double mass = 0.0, quartic = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
        mass += w * std::norm(u.values[i]) * h;
        quartic += w * std::norm(u.values[i]) * std::norm(u.values[i]) * h;
    }
    // |u_x|^2 by spectral differentiation over the periodic cell
    const double period = u.grid.x_max - u.grid.x_min;
    std::vector<Complex> v(u.values.begin(), u.values.end() - 1);
    const std::size_t m = v.size();
    std::vector<Complex> spec = dft(v, -1);
    double grad = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        const double xi = bin_frequency(k, m, period);
        grad += xi * xi * std::norm(spec[k]) / double(m * m);
    }
    grad *= period;  // Parseval over the cell
    return {mass, grad - quartic};
}

}  // namespace nlsist
