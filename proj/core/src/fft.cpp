#include "nlsist/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <mutex>

namespace nlsist {

namespace {
// FFTW plan creation/destruction is not thread-safe; execution of distinct
// plans on distinct buffers is.
std::mutex g_plan_mutex;
}  // namespace

std::vector<Complex> dft(const std::vector<Complex>& in, int sign) {
    const int n = int(in.size());
    if (n == 0) return {};
    std::vector<Complex> out(in.size());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(g_plan_mutex);
        plan = fftw_plan_dft_1d(
            n, reinterpret_cast<fftw_complex*>(const_cast<Complex*>(in.data())),
            reinterpret_cast<fftw_complex*>(out.data()),
            sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_PRESERVE_INPUT);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(g_plan_mutex);
        fftw_destroy_plan(plan);
    }
    return out;
}

namespace {

// weight_pos applies to strictly positive frequencies, weight_neg to strictly
// negative ones; zero and Nyquist modes get the average.
std::vector<Complex> half_spectrum_multiplier(const std::vector<Complex>& h, double weight_pos,
                                              double weight_neg) {
    const std::size_t n = h.size();
    std::vector<Complex> spec = dft(h, -1);
    const double half = 0.5 * (weight_pos + weight_neg);
    spec[0] *= half;
    for (std::size_t k = 1; k < n; ++k) {
        // backward synthesis uses e^{+2 pi i j k / n}: k < n/2 -> positive
        // frequency, k > n/2 -> negative.
        if (2 * k < n)
            spec[k] *= weight_pos;
        else if (2 * k == n)
            spec[k] *= half;
        else
            spec[k] *= weight_neg;
    }
    std::vector<Complex> out = dft(spec, +1);
    const double scale = 1.0 / double(n);
    for (Complex& c : out) c *= scale;
    return out;
}

}  // namespace

std::vector<Complex> cauchy_plus(const std::vector<Complex>& h) {
    return half_spectrum_multiplier(h, 1.0, 0.0);
}

std::vector<Complex> cauchy_minus(const std::vector<Complex>& h) {
    return half_spectrum_multiplier(h, 0.0, -1.0);
}

std::vector<Complex> cauchy_pv_row(const RealGrid& g, std::size_t i) {
    const std::size_t n = g.n_points;
    const double h = g.spacing();
    const double zi = g.node(i);
    const Complex inv_two_pi_i = 1.0 / Complex(0.0, 2.0 * M_PI);
    std::vector<Complex> row(n, Complex(0.0));
    auto weight = [&](std::size_t j) { return (j == 0 || j + 1 == n) ? 0.5 * h : h; };
    double diag = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        const double k = weight(j) / (g.node(j) - zi);
        row[j] += k;
        diag -= k;
    }
    // the removed node carries the derivative limit of the regularized
    // integrand; central difference inside, one-sided at the ends
    const double wi = weight(i);
    if (i == 0) {
        row[1] += wi / h;
        diag -= wi / h;
    } else if (i + 1 == n) {
        diag += wi / h;
        row[i - 1] -= wi / h;
    } else {
        row[i + 1] += wi / (2.0 * h);
        row[i - 1] -= wi / (2.0 * h);
    }
    diag += std::log(std::max(g.x_max - zi, 0.5 * h) / std::max(zi - g.x_min, 0.5 * h));
    row[i] += diag;
    for (Complex& c : row) c *= inv_two_pi_i;
    return row;
}

namespace {

std::vector<Complex> cauchy_line(const std::vector<Complex>& h, const RealGrid& g,
                                 double half_sign) {
    const std::size_t n = g.n_points;
    std::vector<Complex> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::vector<Complex> row = cauchy_pv_row(g, i);
        Complex acc = half_sign * 0.5 * h[i];
        for (std::size_t j = 0; j < n; ++j) acc += row[j] * h[j];
        out[i] = acc;
    }
    return out;
}

}  // namespace

std::vector<Complex> cauchy_plus_line(const std::vector<Complex>& h, const RealGrid& g) {
    return cauchy_line(h, g, +1.0);
}

std::vector<Complex> cauchy_minus_line(const std::vector<Complex>& h, const RealGrid& g) {
    return cauchy_line(h, g, -1.0);
}

double edge_magnitude(const std::vector<Complex>& h) {
    if (h.empty()) return 0.0;
    return std::max(std::abs(h.front()), std::abs(h.back()));
}

}  // namespace nlsist
