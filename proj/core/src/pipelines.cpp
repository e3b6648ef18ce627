#include "nlsist/pipelines.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "nlsist/asymptotics.hpp"
#include "nlsist/backlund.hpp"
#include "nlsist/direct_scattering.hpp"
#include "nlsist/io.hpp"
#include "nlsist/rh_inverse.hpp"
#include "nlsist/special_functions.hpp"
#include "nlsist/threads.hpp"

namespace nlsist {

namespace {

const std::map<std::string, double>& tolerance_registry() {
    static const std::map<std::string, double> reg = {
        {"eigenvalue_abs", 1e-6},   {"r_sup", 1e-5},
        {"norming_abs", 1e-4},      {"roundtrip_linf", 1e-4},
        {"slope_target", -0.5},     {"slope_margin", 0.1},
        {"prefactor_factor", 1.5},  {"amplitude_variation", 0.2},
        {"decay_exponent", -0.6},   {"backlund_gap", 5e-3},
        {"backlund_exact", 1e-12},  {"mass_drift", 1e-10},
        {"unitarity", 1e-7},        {"shift_gap", 1e-5},
        {"pc_recurrence", 1e-9},    {"pc_ode", 1e-7},
        {"k_identity", 1e-10},      {"det_p", 1e-8},
        {"p_jump", 1e-7},           {"box_re", 1.5},
        {"box_im_min", 0.05},       {"box_im_max", 2.5},
    };
    return reg;
}

struct LineFit {
    double slope = 0.0, intercept = 0.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = double(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    LineFit f;
    f.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    f.intercept = (sy - f.slope * sx) / n;
    return f;
}

std::vector<std::size_t> window_indices(const RealGrid& g, double lo, double hi,
                                        std::size_t stride = 1) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < g.n_points; i += stride) {
        const double x = g.node(i);
        if (x >= lo && x <= hi) idx.push_back(i);
    }
    return idx;
}

// Seeded smooth localized perturbation profile, sup-normalized on the grid.
std::vector<Complex> perturbation_profile(const RealGrid& g, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    double a[3], b[3];
    for (int k = 0; k < 3; ++k) {
        a[k] = uni(rng);
        b[k] = uni(rng);
    }
    std::vector<Complex> eta(g.n_points);
    double sup = 0.0;
    for (std::size_t i = 0; i < g.n_points; ++i) {
        const double x = g.node(i);
        Complex s = 0.0;
        for (int k = 0; k < 3; ++k)
            s += Complex(a[k] * std::cos(0.5 * (k + 1) * x),
                         b[k] * std::sin(0.5 * (k + 1) * x));
        eta[i] = std::exp(-x * x / 8.0) * s;
        sup = std::max(sup, std::abs(eta[i]));
    }
    for (Complex& v : eta) v /= sup;
    return eta;
}

ComplexField1D perturbed_soliton(const SolitonParams& p, double eps, std::uint64_t seed,
                                 const RealGrid& g) {
    ComplexField1D f = p.sample(g, 0.0);
    if (eps != 0.0) {
        auto eta = perturbation_profile(g, seed);
        for (std::size_t i = 0; i < f.values.size(); ++i) f.values[i] += eps * eta[i];
    }
    return f;
}

// Soliton plus a one-sided (in frequency) Gaussian wave packet; used to make
// the stripped reflection coefficient live mostly on one side of Re z1.
ComplexField1D carrier_perturbed_soliton(const SolitonParams& p, double eps,
                                         double carrier, const RealGrid& g) {
    ComplexField1D f = p.sample(g, 0.0);
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        const double x = g.node(i);
        f.values[i] += eps * std::exp(-x * x / 4.0) *
                       std::exp(kImagUnit * carrier * x);
    }
    return f;
}

void ensure_dir(const std::filesystem::path& dir) {
    if (!dir.empty()) std::filesystem::create_directories(dir);
}

void save_table(const std::filesystem::path& dir, const std::string& name,
                const std::string& header,
                const std::vector<std::vector<double>>& rows,
                ExperimentReport& rep) {
    if (dir.empty()) return;
    ensure_dir(dir);
    const std::filesystem::path p = dir / name;
    std::ofstream out(p);
    out << header << "\n";
    char buf[64];
    for (const auto& row : rows) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", row[j]);
            out << (j ? "," : "") << buf;
        }
        out << "\n";
    }
    rep.artifacts[name] = p.string();
}

SearchBox default_box(const ExperimentManifest* m = nullptr) {
    auto tol = [&](const char* k) {
        if (m) return m->tolerance(k, tolerance_registry().at(k));
        return tolerance_registry().at(k);
    };
    const double re = tol("box_re");
    return SearchBox{-re, re, tol("box_im_min"), tol("box_im_max")};
}

// Smallest sup-gap between the field at time t and the soliton family around
// the predicted parameters, scanned over (phase, position) with shrinking
// ranges.
double min_soliton_gap(const std::vector<Complex>& vals, const RealGrid& g, double t,
                       const SolitonParams& base, const std::vector<std::size_t>& win) {
    double rg = 0.3, rx = 0.6, cg = 0.0, cx = 0.0;
    double best = 1e300;
    for (int level = 0; level < 5; ++level) {
        double bg = cg, bx = cx;
        for (int i = -4; i <= 4; ++i) {
            for (int j = -4; j <= 4; ++j) {
                const double dg = cg + rg * i / 4.0, dx = cx + rx * j / 4.0;
                SolitonParams p(base.omega, base.gamma + dg, base.v, base.x0 + dx);
                double s = 0.0;
                for (std::size_t idx : win)
                    s = std::max(s, std::abs(vals[idx] - p.evaluate(t, g.node(idx))));
                if (s < best) {
                    best = s;
                    bg = dg;
                    bx = dx;
                }
            }
        }
        cg = bg;
        cx = bx;
        rg /= 4.0;
        rx /= 4.0;
    }
    return best;
}

double side_mass_ratio(const SpectralData& d, double alpha) {
    double left = 0.0, right = 0.0;
    for (std::size_t i = 0; i < d.z_grid.n_points; ++i) {
        const double m = std::norm(d.r_values[i]);
        (d.z_grid.node(i) < alpha ? left : right) += m;
    }
    const double lo = std::min(left, right), hi = std::max(left, right);
    return lo > 0 ? hi / lo : 1e300;
}

struct StabilityOutcome {
    std::vector<double> times, gaps;
    LineFit fit;
    Complex big_delta{1.0, 0.0}, big_lambda{1.0, 0.0};
    double side_ratio = 1.0;
};

// Shared engine for the asymptotic-soliton comparisons: perturb, scatter,
// strip, evolve by split-step (conjugated for backward time), and measure the
// best-fit sup gap against the shift-corrected soliton at each sample time.
StabilityOutcome stability_run(const ComplexField1D& u0, TimeSign sign,
                               const std::vector<double>& times, const std::string& tag,
                               const std::filesystem::path& out_dir,
                               ExperimentReport& rep) {
    const RealGrid zg(-3.0, 3.0, 321);
    // the datum is supported well inside |x| <= 60; scatter on that crop so
    // the march does not pay for the evolution-sized domain
    std::size_t lo = 0, hi = u0.grid.n_points - 1;
    while (u0.grid.node(lo) < -60.0 && lo + 1 < hi) ++lo;
    while (u0.grid.node(hi) > 60.0 && hi > lo + 1) --hi;
    const RealGrid cropg(u0.grid.node(lo), u0.grid.node(hi), hi - lo + 1);
    ComplexField1D u_crop(cropg,
                          std::vector<Complex>(u0.values.begin() + std::ptrdiff_t(lo),
                                               u0.values.begin() + std::ptrdiff_t(hi + 1)));
    SpectralData data = scatter_potential(u_crop, zg, default_box());
    if (data.discrete.size() != 1)
        throw InputError("stability run: expected exactly one eigenvalue, found " +
                         std::to_string(data.discrete.size()));
    const Complex z1 = data.discrete[0].z, c1 = data.discrete[0].c;
    SpectralData strip(zg, strip_reflection(data.r_values, zg, z1),
                       {DiscretePair{z1, c1}});

    StabilityOutcome out;
    out.big_delta = delta_shift(strip, z1);
    out.big_lambda = lambda_shift(strip, z1);
    out.side_ratio = side_mass_ratio(strip, z1.real());
    const Complex shift = (sign == TimeSign::plus) ? out.big_delta : out.big_lambda;
    const Complex c_eff = c1 * std::abs(shift) / (shift * shift);
    const SolitonParams base = spectrum_to_params(z1, c_eff);

    ComplexField1D v0 = u0;
    if (sign == TimeSign::minus)
        for (Complex& v : v0.values) v = std::conj(v);
    IntegratorConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = times.back();
    cfg.edge_tolerance = 5e-4;
    auto snaps = evolve_reference(v0, cfg, times);

    const auto win = window_indices(u0.grid, -25.0, 25.0);
    std::vector<std::vector<double>> table;
    for (std::size_t k = 0; k < times.size(); ++k) {
        std::vector<Complex> vals = snaps[k].values;
        double t_eval = times[k];
        if (sign == TimeSign::minus) {
            for (Complex& v : vals) v = std::conj(v);
            t_eval = -t_eval;
        }
        const double gap = min_soliton_gap(vals, u0.grid, t_eval, base, win);
        out.times.push_back(times[k]);
        out.gaps.push_back(gap);
        table.push_back({times[k], gap});
    }
    std::vector<double> lt, lg;
    for (std::size_t k = 0; k < out.times.size(); ++k) {
        lt.push_back(std::log(out.times[k]));
        lg.push_back(std::log(std::max(out.gaps[k], 1e-300)));
    }
    out.fit = fit_line(lt, lg);
    save_table(out_dir, tag + "_gaps.csv", "t,sup_gap", table, rep);
    return out;
}

std::string cstr(Complex z) {
    std::ostringstream s;
    s << "(" << z.real() << ", " << z.imag() << ")";
    return s.str();
}

// ---- criteria ----------------------------------------------------------

ReportRow a1_row() {
    ReportRow row{"A1", "soliton spectral identity", false, 0.0, 1e-6, ""};
    const RealGrid zg(-4.0, 4.0, 385);
    const double trio[3][3] = {{1, 0, 0}, {2, 1, 0}, {1, 0, 3}};
    double worst_z = 0, worst_r = 0, worst_d = 0;
    std::ostringstream detail;
    for (const auto& p : trio) {
        // resolution follows the soliton width 1/omega
        const RealGrid xg(-40.0, 40.0, p[0] > 1.0 ? 8193 : 4097);
        const SolitonParams sp(p[0], 0.0, p[1], p[2]);
        SpectralData data = scatter_potential(sp.sample(xg, 0.0), zg, default_box());
        if (data.discrete.size() != 1) {
            row.detail = "expected one eigenvalue, found " +
                         std::to_string(data.discrete.size());
            return row;
        }
        const auto [z_pred, c_pred] = params_to_spectrum(sp);
        (void)c_pred;
        const Complex z1 = data.discrete[0].z, c1 = data.discrete[0].c;
        worst_z = std::max(worst_z, std::abs(z1 - z_pred));
        worst_r = std::max(worst_r, data.r_sup_norm());
        // position encoding: log(|c1| / omega) = omega * x0
        worst_d = std::max(worst_d,
                           std::abs(std::log(std::abs(c1) / p[0]) - p[0] * p[2]));
        detail << "(" << p[0] << "," << p[1] << "," << p[2] << "): z1=" << cstr(z1)
               << " |dz|=" << std::abs(z1 - z_pred) << " r_sup=" << data.r_sup_norm()
               << "; ";
    }
    row.value = worst_z;
    row.passed = worst_z < 1e-6 && worst_r < 1e-5 && worst_d < 1e-4;
    row.detail = detail.str() + "worst |dz|=" + std::to_string(worst_z) +
                 " r_sup=" + std::to_string(worst_r) +
                 " |d_delta0|=" + std::to_string(worst_d);
    return row;
}

ReportRow a2_row(const std::filesystem::path& out_dir, ExperimentReport& rep) {
    ReportRow row{"A2", "inverse round trip", false, 0.0, 1e-4, ""};
    const RealGrid xg(-40.0, 40.0, 1025), zg(-4.0, 4.0, 385), wg(-10.0, 10.0, 161);
    std::ostringstream detail;
    bool all_ok = true;
    double worst = 0.0;
    const double cases[2][2] = {{0.3, 0.0}, {0.5, 1.0}};
    for (const auto& c : cases) {
        const double amp = c[0], slope = c[1];
        ComplexField1D u0 = ComplexField1D::sample(xg, [&](double x) {
            return amp / std::cosh(x) * std::exp(kImagUnit * slope * x);
        });
        try {
            SpectralData data = scatter_potential(u0, zg, default_box());
            ComplexField1D rec = reconstruct_on_grid(data, wg);
            double gap = 0.0;
            for (std::size_t i = 0; i < wg.n_points; ++i) {
                const double x = wg.node(i);
                const Complex ref = amp / std::cosh(x) * std::exp(kImagUnit * slope * x);
                gap = std::max(gap, std::abs(rec.values[i] - ref));
            }
            worst = std::max(worst, gap);
            detail << amp << "*sech*e^{i" << slope << "x}: linf=" << gap << "; ";
            if (gap >= 1e-4) all_ok = false;
            if (!out_dir.empty()) {
                ensure_dir(out_dir);
                std::ostringstream name;
                name << "a2_rec_" << amp << ".csv";
                save_field(out_dir / name.str(), rec);
                rep.artifacts[name.str()] = (out_dir / name.str()).string();
            }
        } catch (const Error& e) {
            all_ok = false;
            detail << amp << "*sech*e^{i" << slope << "x}: " << e.what() << "; ";
            rep.errors.push_back(std::string("A2: ") + e.what());
        }
    }
    row.value = worst;
    row.passed = all_ok;
    row.detail = detail.str();
    return row;
}

ReportRow a3_row(std::uint64_t seed, const std::filesystem::path& out_dir,
                 ExperimentReport& rep) {
    ReportRow row{"A3", "perturbed-soliton decay exponent and epsilon scaling", false,
                  0.0, 0.1, ""};
    // fast dispersive components travel at speed ~2*xi; by t = 80 the domain
    // must hold them without reaching the periodic wrap point
    const RealGrid big(-800.0, 800.0, 16385);
    const SolitonParams sp(1.0, 0.0, 0.0, 0.0);
    const std::vector<double> times = {10.0, 20.0, 40.0, 80.0};
    StabilityOutcome lo = stability_run(perturbed_soliton(sp, 0.02, seed, big),
                                        TimeSign::plus, times, "a3_eps002", out_dir, rep);
    StabilityOutcome hi = stability_run(perturbed_soliton(sp, 0.04, seed, big),
                                        TimeSign::plus, times, "a3_eps004", out_dir, rep);
    const double target = -0.5, margin = 0.1;
    const double ratio = std::exp(hi.fit.intercept - lo.fit.intercept);
    const bool slopes_ok = std::abs(lo.fit.slope - target) <= margin &&
                           std::abs(hi.fit.slope - target) <= margin;
    const bool ratio_ok = ratio >= 2.0 / 1.5 && ratio <= 2.0 * 1.5;
    row.value = hi.fit.slope;
    row.passed = slopes_ok && ratio_ok;
    std::ostringstream d;
    d << "slope(0.02)=" << lo.fit.slope << " slope(0.04)=" << hi.fit.slope
      << " prefactor ratio=" << ratio << " (want ~2)";
    row.detail = d.str();
    return row;
}

ReportRow a4_row(const std::filesystem::path& out_dir, ExperimentReport& rep) {
    ReportRow row{"A4", "pure radiation t^{-1/2} decay and profile match", false, 0.0,
                  -0.6, ""};
    const RealGrid sg(-40.0, 40.0, 1025), zg(-3.0, 3.0, 321);
    ComplexField1D us =
        ComplexField1D::sample(sg, [](double x) { return 0.3 / std::cosh(x); });
    SpectralData data = scatter_potential(us, zg, default_box());
    if (!data.discrete.empty())
        throw InputError("A4: 0.3 sech unexpectedly has discrete spectrum");

    // radiation at stationary point z travels at speed 4z; with r supported
    // out to |z| ~ 3 the front moves at ~12, so t = 200 needs this much room
    const RealGrid big(-2000.0, 2000.0, 16385);
    ComplexField1D u0 =
        ComplexField1D::sample(big, [](double x) { return 0.3 / std::cosh(x); });
    IntegratorConfig cfg;
    cfg.dt = 2e-3;
    cfg.t_end = 200.0;
    cfg.edge_tolerance = 1e-3;
    const std::vector<double> times = {25.0, 50.0, 100.0, 200.0};
    auto snaps = evolve_reference(u0, cfg, times);

    const std::size_t i_center = (big.n_points - 1) / 2;  // x = 0, z0 = 0
    std::vector<double> scaled, lt, lg;
    std::vector<std::vector<double>> table;
    for (std::size_t k = 0; k < times.size(); ++k) {
        double sup = 0.0;
        for (const Complex& v : snaps[k].values) sup = std::max(sup, std::abs(v));
        scaled.push_back(sup * std::sqrt(times[k]));
        const Complex pred = radiation_profile(data, times[k], 0.0);
        const double gap = std::abs(snaps[k].values[i_center] - pred);
        lt.push_back(std::log(times[k]));
        lg.push_back(std::log(std::max(gap, 1e-300)));
        table.push_back({times[k], sup, scaled.back(), gap});
    }
    save_table(out_dir, "a4_decay.csv", "t,sup_u,sup_u_sqrt_t,center_gap", table, rep);
    const double mx = *std::max_element(scaled.begin(), scaled.end());
    const double mn = *std::min_element(scaled.begin(), scaled.end());
    const double variation = (mx - mn) / (0.5 * (mx + mn));
    const LineFit fit = fit_line(lt, lg);
    row.value = fit.slope;
    row.passed = variation < 0.2 && fit.slope <= -0.6;
    std::ostringstream d;
    d << "sup|u|sqrt(t) variation=" << variation << " center-gap slope=" << fit.slope;
    row.detail = d.str();
    return row;
}

ReportRow a5_row() {
    ReportRow row{"A5", "Backlund exactness on the trivial background", false, 0.0,
                  1e-12, ""};
    const Complex pairs[2][2] = {{Complex(0.0, 0.5), Complex(1.0, 0.0)},
                                 {Complex(-0.2, 0.45), Complex(0.7, -0.3)}};
    double worst = 0.0;
    for (const auto& pr : pairs) {
        for (int it = 0; it < 100; ++it) {
            for (int ix = 0; ix < 100; ++ix) {
                const double t = -2.0 + 4.0 * it / 99.0;
                const double x = -8.0 + 16.0 * ix / 99.0;
                BacklundInputs in;
                in.z1 = pr[0];
                in.c1 = pr[1];
                in.t = t;
                in.x = x;
                in.m_at_z1 = Mat2::identity();
                const Complex ub = backlund_combine(in, 0.0);
                const Complex ref = soliton_closed_form(pr[0], pr[1], t, x);
                worst = std::max(worst, std::abs(ub - ref));
            }
        }
    }
    row.value = worst;
    row.passed = worst < 1e-12;
    row.detail = "max lattice gap = " + std::to_string(worst);
    return row;
}

ReportRow a6_row(std::uint64_t seed, const std::filesystem::path& out_dir,
                 ExperimentReport& rep) {
    ReportRow row{"A6", "Backlund pipeline vs split-step", false, 0.0, 5e-3, ""};
    const RealGrid xg(-60.0, 60.0, 1537), zg(-4.0, 4.0, 385);
    const SolitonParams sp(1.0, 0.0, 0.0, 0.0);
    ComplexField1D u0 = perturbed_soliton(sp, 0.03, seed, xg);

    SpectralData data = scatter_potential(u0, zg, default_box());
    if (data.discrete.size() != 1)
        throw InputError("A6: expected exactly one eigenvalue");
    const Complex z1 = data.discrete[0].z, c1 = data.discrete[0].c;
    SpectralData strip(zg, strip_reflection(data.r_values, zg, z1),
                       {DiscretePair{z1, c1}});

    IntegratorConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 5.0;
    cfg.edge_tolerance = 1e-4;
    const std::vector<double> times = {1.0, 5.0};
    auto snaps = evolve_reference(u0, cfg, times);

    const auto win = window_indices(xg, -15.0, 15.0, 3);
    double worst = 0.0;
    std::ostringstream detail;
    std::vector<std::vector<double>> table;
    for (std::size_t k = 0; k < times.size(); ++k) {
        const double t = times[k];
        // the radiation background is evolved spectrally; the soliton flow
        // e^{4 i z1^2 t} is applied by backlund_combine itself from (c1, t)
        SpectralData rad_t(zg, evolve_spectral(strip, t).r_values);
        std::vector<double> gaps(win.size());
        parallel_for(win.size(), [&](std::size_t wi) {
            const double x = xg.node(win[wi]);
            RHSolutionSlice slice = solve_rh(rad_t, x);
            const Complex ut = reconstruct_potential(slice, rad_t, x);
            const Mat2 m = rh_matrix_from_slice(slice, rad_t, z1);
            BacklundInputs in;
            in.z1 = z1;
            in.c1 = c1;
            in.t = t;
            in.x = x;
            in.m_at_z1 = m;
            const Complex ub = backlund_combine(in, ut);
            gaps[wi] = std::abs(ub - snaps[k].values[win[wi]]);
        });
        double gap = 0.0;
        for (std::size_t wi = 0; wi < win.size(); ++wi) {
            gap = std::max(gap, gaps[wi]);
            table.push_back({t, xg.node(win[wi]), gaps[wi]});
        }
        worst = std::max(worst, gap);
        detail << "t=" << t << ": linf=" << gap << "; ";
    }
    save_table(out_dir, "a6_gaps.csv", "t,x,gap", table, rep);
    row.value = worst;
    row.passed = worst < 5e-3;
    row.detail = detail.str();
    return row;
}

ReportRow a7_row() {
    ReportRow row{"A7", "special-function layer", false, 0.0, 1e-7, ""};
    const double nus[3] = {-0.05, -0.2, -0.5};
    std::ostringstream detail;

    // recurrence D_a' + (zeta/2) D_a = a D_{a-1}, derivative by a five-point
    // stencil
    double rec_worst = 0.0;
    // Outer radii stay in the right half-plane, where D_a is recessive and
    // O(1); in the left half-plane the connection term grows like
    // e^{Re zeta^2/4} and an absolute residual bound would be meaningless.
    const std::vector<std::pair<double, std::vector<double>>> lattice = {
        {0.5, {0.3, 1.0, 2.0, -0.7, -2.0, 2.8, -2.8}},
        {2.0, {0.3, 1.0, 2.0, -0.7, -2.0, 2.8, -2.8}},
        {5.0, {0.3, 0.7, -0.7}},
        {8.0, {0.3, 0.7, -0.7}},
        {12.0, {0.3, 0.7, -0.7}},
    };
    for (double nu : nus) {
        const Complex a = kImagUnit * nu;
        for (const auto& [rr, th_list] : lattice) {
            for (double th : th_list) {
                const Complex zeta = std::polar(rr, th);
                const double h = 1e-3;
                const Complex dnum =
                    (-parabolic_cylinder(a, zeta + 2 * h) +
                     8.0 * parabolic_cylinder(a, zeta + h) -
                     8.0 * parabolic_cylinder(a, zeta - h) +
                     parabolic_cylinder(a, zeta - 2 * h)) /
                    (12.0 * h);
                const Complex res = dnum + 0.5 * zeta * parabolic_cylinder(a, zeta) -
                                    a * parabolic_cylinder(a - 1.0, zeta);
                rec_worst = std::max(rec_worst, std::abs(res));
            }
        }
    }

    // ODE residual by Richardson-extrapolated second differences
    double ode_worst = 0.0;
    for (double nu : nus) {
        const Complex a = kImagUnit * nu;
        for (const auto& [rr, th_list] : lattice) {
            if (rr > 5.0) continue;
            for (double th : th_list) {
                const Complex zeta = std::polar(rr, th);
                // balances evaluation noise (1/h^2) against truncation
                const double h = 5e-3;
                const Complex d0 = parabolic_cylinder(a, zeta);
                auto d2 = [&](double step) {
                    return (parabolic_cylinder(a, zeta + step) - 2.0 * d0 +
                            parabolic_cylinder(a, zeta - step)) /
                           (step * step);
                };
                const Complex dd = (4.0 * d2(h) - d2(2 * h)) / 3.0;
                const Complex res = dd + (0.5 - zeta * zeta / 4.0 + a) * d0;
                ode_worst = std::max(ode_worst, std::abs(res));
            }
        }
    }

    // |k1|^2 = -nu0
    double k_worst = 0.0;
    for (double nu : nus) {
        PhaseData ph;
        ph.nu0 = nu;
        ph.r0 = std::sqrt(std::exp(-2.0 * M_PI * nu) - 1.0) *
                std::exp(kImagUnit * 0.37);
        const auto [k1, k2] = k_constants(ph);
        k_worst = std::max(k_worst, std::abs(std::norm(k1) + nu));
        k_worst = std::max(k_worst, std::abs(k1 * k2 - Complex(nu, 0.0)));
    }

    // det P = 1 across all six sectors
    const double nu0 = -0.2;
    const Complex r0 = std::sqrt(std::exp(-2.0 * M_PI * nu0) - 1.0) *
                       std::exp(kImagUnit * 0.3);
    double det_worst = 0.0;
    const double sector_mid[6] = {M_PI / 8, M_PI / 2, 7 * M_PI / 8,
                                  9 * M_PI / 8, 3 * M_PI / 2, 15 * M_PI / 8};
    for (double th : sector_mid)
        for (double rr : {1.2, 2.5}) {
            const Mat2 p = model_P(std::polar(rr, th), nu0, r0);
            det_worst = std::max(det_worst, std::abs(p.det() - Complex(1.0, 0.0)));
        }

    // jump relations on the four rays: boundary values by linear
    // extrapolation from each side; the jump matrix is conjugate to the
    // counterclockwise ratio of the neighboring sector factors
    double jump_worst = 0.0;
    const double denom = 1.0 + std::norm(r0);
    struct Ray {
        double ang;
        bool lower_triangular;
        Complex coeff;
    };
    const Ray rays[4] = {
        {M_PI / 4, true, r0},
        {3 * M_PI / 4, false, -std::conj(r0) / denom},
        {5 * M_PI / 4, true, -r0 / denom},
        {7 * M_PI / 4, false, std::conj(r0)},
    };
    auto p_side = [&](double rr, double ang, double sgn) {
        const double e = 1e-5;
        const Mat2 p1 = model_P(std::polar(rr, ang + sgn * e), nu0, r0);
        const Mat2 p2 = model_P(std::polar(rr, ang + sgn * 2 * e), nu0, r0);
        return 2.0 * p1 - p2;
    };
    for (const Ray& ray : rays) {
        for (double rr : {1.5, 2.5}) {
            const Complex zeta = std::polar(rr, ray.ang);
            const Complex osc =
                std::exp(-2.0 * kImagUnit * nu0 * std::log(zeta) +
                         kImagUnit * zeta * zeta / 2.0);
            Mat2 v = Mat2::identity();
            if (ray.lower_triangular)
                v(1, 0) = ray.coeff * osc;
            else
                v(0, 1) = ray.coeff / osc;
            const Mat2 p_ccw = p_side(rr, ray.ang, +1.0);
            const Mat2 p_cw = p_side(rr, ray.ang, -1.0);
            jump_worst = std::max(jump_worst, (p_ccw - p_cw * v).norm());
        }
    }

    // P1 expansion in the middle of Omega_2
    double p1_err[3];
    const double big_r[3] = {6.0, 10.0, 14.0};
    {
        const auto [k1, k2] = k_constants(PhaseData{0.0, nu0, 0.0, 0.0, r0, r0, 1.0});
        const Mat2 p1_mat(0.0, k1, k2, 0.0);
        for (int i = 0; i < 3; ++i) {
            const Complex zeta = std::polar(big_r[i], M_PI / 2 + 1e-3);
            const Mat2 p = model_P(zeta, nu0, r0);
            p1_err[i] = ((p - Mat2::identity()) * zeta - p1_mat).norm();
        }
    }
    const bool p1_ok = p1_err[2] < p1_err[0] &&
                       p1_err[2] <= 1.5 * p1_err[0] * big_r[0] / big_r[2];

    row.passed = rec_worst < 1e-9 && ode_worst < 1e-7 && k_worst < 1e-10 &&
                 det_worst < 1e-8 && jump_worst < 1e-7 && p1_ok;
    row.value = jump_worst;
    detail << "recurrence=" << rec_worst << " ode=" << ode_worst << " k=" << k_worst
           << " detP=" << det_worst << " jump=" << jump_worst << " p1_err=["
           << p1_err[0] << "," << p1_err[1] << "," << p1_err[2] << "]";
    row.detail = detail.str();
    return row;
}

ReportRow a8_row(std::uint64_t seed) {
    ReportRow row{"A8", "unitarity and mass conservation", false, 0.0, 1e-7, ""};
    const RealGrid zg(-4.0, 4.0, 385);
    double unit_worst = 0.0;
    {
        const RealGrid xg(-40.0, 40.0, 2049);
        ComplexField1D us =
            ComplexField1D::sample(xg, [](double x) { return 0.3 / std::cosh(x); });
        auto c = scattering_ab(us, zg);
        for (std::size_t i = 0; i < zg.n_points; ++i)
            unit_worst = std::max(unit_worst, std::abs(std::norm(c.a_values[i]) +
                                                       std::norm(c.b_values[i]) - 1.0));
    }
    {
        const RealGrid xg(-40.0, 40.0, 8193);
        ComplexField1D us = SolitonParams(1.0, 0.0, 0.0, 0.0).sample(xg, 0.0);
        auto c = scattering_ab(us, zg);
        for (std::size_t i = 0; i < zg.n_points; ++i)
            unit_worst = std::max(unit_worst, std::abs(std::norm(c.a_values[i]) +
                                                       std::norm(c.b_values[i]) - 1.0));
    }

    const RealGrid xg(-150.0, 150.0, 3841);
    ComplexField1D u0 = perturbed_soliton(SolitonParams(1.0, 0.0, 0.0, 0.0), 0.05,
                                          seed, xg);
    IntegratorConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 10.0;
    cfg.edge_tolerance = 1e-4;
    const double mass0 = conserved_quantities(u0).first;
    auto snaps = evolve_reference(u0, cfg, {10.0});
    const double mass1 = conserved_quantities(snaps[0]).first;
    const double drift = std::abs(mass1 - mass0) / mass0;

    row.value = unit_worst;
    row.passed = unit_worst < 1e-7 && drift < 1e-10;
    std::ostringstream d;
    d << "max ||a|^2+|b|^2-1| = " << unit_worst << ", relative mass drift over 1e4 steps = "
      << drift;
    row.detail = d.str();
    return row;
}

ReportRow a9_row(const std::filesystem::path& out_dir, ExperimentReport& rep) {
    ReportRow row{"A9", "forward/backward ground states differ; backward match", false,
                  0.0, 0.1, ""};
    // the carrier biases the stripped radiation to one side of Re z1 = 0
    // while keeping enough low-frequency content that the t^{-1/2} plateau
    // stays visible in the comparison window; size the box so nothing
    // reaches the wrap point by t = 40
    const RealGrid big(-800.0, 800.0, 16385);
    ComplexField1D u0 = carrier_perturbed_soliton(SolitonParams(1.0, 0.0, 0.0, 0.0),
                                                  0.04, 1.0, big);
    StabilityOutcome out = stability_run(u0, TimeSign::minus, {10.0, 20.0, 40.0},
                                         "a9_backward", out_dir, rep);
    const double shift_diff = std::abs(out.big_delta / out.big_lambda - 1.0);
    const bool sided = out.side_ratio >= 3.0;
    const bool distinct = shift_diff > 1e-5;
    const bool slope_ok = std::abs(out.fit.slope + 0.5) <= 0.1;
    row.value = out.fit.slope;
    row.passed = sided && distinct && slope_ok;
    std::ostringstream d;
    d << "side mass ratio=" << out.side_ratio << " |Delta/Lambda-1|=" << shift_diff
      << " Delta=" << cstr(out.big_delta) << " Lambda=" << cstr(out.big_lambda)
      << " backward slope=" << out.fit.slope;
    row.detail = d.str();
    return row;
}

void add_row(ExperimentReport& rep, const std::string& id,
             const std::function<ReportRow()>& f) {
    try {
        rep.rows.push_back(f());
    } catch (const std::exception& e) {
        ReportRow row{id, "criterion aborted", false, 0.0, 0.0, e.what()};
        rep.rows.push_back(row);
        rep.errors.push_back(id + ": " + e.what());
    }
}

}  // namespace

// ---- manifest ----------------------------------------------------------

void ExperimentManifest::validate() const {
    for (const auto& [name, v] : tolerances) {
        (void)v;
        if (!tolerance_registry().count(name))
            throw InputError("manifest: unknown tolerance name '" + name + "'");
    }
    if (datum.type == InitialDatum::Type::file &&
        !std::filesystem::exists(datum.file))
        throw InputError("manifest: referenced field file does not exist: " + datum.file);
    if (!(integrator.dt > 0)) throw InputError("manifest: dt must be positive");
}

double ExperimentManifest::tolerance(const std::string& name, double fallback) const {
    auto it = tolerances.find(name);
    return it == tolerances.end() ? fallback : it->second;
}

namespace {

const std::map<std::string, ExperimentKind>& kind_names() {
    static const std::map<std::string, ExperimentKind> m = {
        {"scatter", ExperimentKind::scatter},
        {"reconstruct", ExperimentKind::reconstruct},
        {"roundtrip", ExperimentKind::roundtrip},
        {"backlund_pipeline", ExperimentKind::backlund_pipeline},
        {"asymptotic_stability", ExperimentKind::asymptotic_stability},
        {"radiation_decay", ExperimentKind::radiation_decay},
        {"validate_all", ExperimentKind::validate_all},
    };
    return m;
}

std::string kind_to_string(ExperimentKind k) {
    for (const auto& [name, kk] : kind_names())
        if (kk == k) return name;
    return "unknown";
}

RealGrid grid_from_json(const nlohmann::json& j) {
    return RealGrid(j.at("min").get<double>(), j.at("max").get<double>(),
                    j.at("n").get<std::size_t>());
}

}  // namespace

ExperimentManifest load_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("load_manifest: cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path + ": " + e.what() + " at byte offset " +
                         std::to_string(e.byte));
    }
    ExperimentManifest m;
    try {
        const std::string kind = j.at("kind").get<std::string>();
        if (!kind_names().count(kind))
            throw InputError("manifest: unknown kind '" + kind + "'");
        m.kind = kind_names().at(kind);
        if (j.contains("x_grid")) m.x_grid = grid_from_json(j.at("x_grid"));
        if (j.contains("z_grid")) m.z_grid = grid_from_json(j.at("z_grid"));
        if (j.contains("initial_datum")) {
            const auto& d = j.at("initial_datum");
            const std::string type = d.value("type", "soliton");
            if (type == "soliton")
                m.datum.type = InitialDatum::Type::soliton;
            else if (type == "sech")
                m.datum.type = InitialDatum::Type::sech;
            else if (type == "file")
                m.datum.type = InitialDatum::Type::file;
            else
                throw InputError("manifest: unknown initial datum type '" + type + "'");
            m.datum.soliton = SolitonParams(
                d.value("omega", 1.0), d.value("gamma", 0.0), d.value("v", 0.0),
                d.value("x0", 0.0));
            m.datum.epsilon = d.value("epsilon", 0.0);
            m.datum.amplitude = d.value("amplitude", 0.3);
            m.datum.phase_slope = d.value("phase_slope", 0.0);
            m.datum.file = d.value("file", std::string());
        }
        if (j.contains("times")) m.times = j.at("times").get<std::vector<double>>();
        if (j.contains("tolerances"))
            m.tolerances = j.at("tolerances").get<std::map<std::string, double>>();
        if (j.contains("integrator")) {
            const auto& g = j.at("integrator");
            m.integrator.dt = g.value("dt", 1e-3);
            m.integrator.t_end = g.value("t_end", 1.0);
            m.integrator.dealias = g.value("dealias", false);
            m.integrator.edge_tolerance = g.value("edge_tolerance", 1e-6);
            const std::string sch = g.value("scheme", "strang");
            m.integrator.scheme = (sch == "fourth_order") ? SplitScheme::fourth_order_split
                                                          : SplitScheme::strang_split;
        }
        m.output_dir = j.value("output_dir", std::string());
        m.seed = j.value("seed", std::uint64_t(1));
        const std::string conv = j.value("convention", "paper_r");
        m.convention = (conv == "paper_soliton") ? FlowConvention::paper_soliton
                                                 : FlowConvention::paper_r;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    m.validate();
    return m;
}

void save_manifest(const std::string& path, const ExperimentManifest& m) {
    nlohmann::json j;
    j["kind"] = kind_to_string(m.kind);
    j["x_grid"] = {{"min", m.x_grid.x_min}, {"max", m.x_grid.x_max},
                   {"n", m.x_grid.n_points}};
    j["z_grid"] = {{"min", m.z_grid.x_min}, {"max", m.z_grid.x_max},
                   {"n", m.z_grid.n_points}};
    const char* type = m.datum.type == InitialDatum::Type::soliton ? "soliton"
                       : m.datum.type == InitialDatum::Type::sech  ? "sech"
                                                                   : "file";
    j["initial_datum"] = {{"type", type},
                          {"omega", m.datum.soliton.omega},
                          {"gamma", m.datum.soliton.gamma},
                          {"v", m.datum.soliton.v},
                          {"x0", m.datum.soliton.x0},
                          {"epsilon", m.datum.epsilon},
                          {"amplitude", m.datum.amplitude},
                          {"phase_slope", m.datum.phase_slope},
                          {"file", m.datum.file}};
    j["times"] = m.times;
    j["tolerances"] = m.tolerances;
    j["integrator"] = {
        {"dt", m.integrator.dt},
        {"t_end", m.integrator.t_end},
        {"scheme",
         m.integrator.scheme == SplitScheme::strang_split ? "strang" : "fourth_order"},
        {"dealias", m.integrator.dealias},
        {"edge_tolerance", m.integrator.edge_tolerance}};
    j["output_dir"] = m.output_dir;
    j["seed"] = m.seed;
    j["convention"] =
        m.convention == FlowConvention::paper_r ? "paper_r" : "paper_soliton";
    std::ofstream out(path);
    if (!out) throw InputError("save_manifest: cannot open " + path);
    out << j.dump(2) << "\n";
}

void save_report(const std::string& path, const ExperimentReport& rep) {
    nlohmann::json j;
    j["kind"] = rep.kind;
    j["all_passed"] = rep.all_passed;
    j["rows"] = nlohmann::json::array();
    for (const ReportRow& r : rep.rows)
        j["rows"].push_back({{"id", r.id},
                             {"what", r.what},
                             {"passed", r.passed},
                             {"value", r.value},
                             {"threshold", r.threshold},
                             {"detail", r.detail}});
    j["artifacts"] = rep.artifacts;
    j["errors"] = rep.errors;
    std::ofstream out(path);
    if (!out) throw InputError("save_report: cannot open " + path);
    out << j.dump(2) << "\n";
}

ComplexField1D make_initial_field(const ExperimentManifest& m) {
    switch (m.datum.type) {
        case InitialDatum::Type::soliton:
            return perturbed_soliton(m.datum.soliton, m.datum.epsilon, m.seed, m.x_grid);
        case InitialDatum::Type::sech: {
            const double amp = m.datum.amplitude, slope = m.datum.phase_slope;
            return ComplexField1D::sample(m.x_grid, [&](double x) {
                return amp / std::cosh(x) * std::exp(kImagUnit * slope * x);
            });
        }
        case InitialDatum::Type::file:
            return load_field(m.datum.file);
    }
    throw InputError("make_initial_field: unhandled datum type");
}

ExperimentReport run(const ExperimentManifest& m) {
    m.validate();
    ExperimentReport rep;
    rep.kind = kind_to_string(m.kind);
    const std::filesystem::path out_dir = m.output_dir;
    if (!out_dir.empty()) ensure_dir(out_dir);

    switch (m.kind) {
        case ExperimentKind::scatter: {
            add_row(rep, "A1", [&]() -> ReportRow {
                ComplexField1D u0 = make_initial_field(m);
                SpectralData data = scatter_potential(u0, m.z_grid, default_box(&m));
                if (!out_dir.empty()) {
                    save_spectral(out_dir / "spectral.json", data);
                    rep.artifacts["spectral.json"] = (out_dir / "spectral.json").string();
                }
                ReportRow row{"A1", "scatter", false, data.r_sup_norm(),
                              m.tolerance("r_sup", 1e-5), ""};
                std::ostringstream d;
                d << data.discrete.size() << " eigenvalue(s):";
                for (const auto& p : data.discrete)
                    d << " z=" << cstr(p.z) << " c=" << cstr(p.c);
                d << "; r_sup=" << data.r_sup_norm();
                if (m.datum.type == InitialDatum::Type::soliton &&
                    m.datum.epsilon == 0.0) {
                    const auto [zp, cp] = params_to_spectrum(m.datum.soliton);
                    (void)cp;
                    row.passed = data.discrete.size() == 1 &&
                                 std::abs(data.discrete[0].z - zp) <
                                     m.tolerance("eigenvalue_abs", 1e-6) &&
                                 data.r_sup_norm() < m.tolerance("r_sup", 1e-5);
                    d << "; predicted z=" << cstr(zp);
                } else {
                    row.passed = true;  // informational
                }
                row.detail = d.str();
                return row;
            });
            break;
        }
        case ExperimentKind::reconstruct:
        case ExperimentKind::roundtrip: {
            add_row(rep, "A2", [&]() -> ReportRow {
                ComplexField1D u0 = make_initial_field(m);
                SpectralData data = scatter_potential(u0, m.z_grid, default_box(&m));
                // reconstruct on a uniform subset of the x-grid nodes so the
                // reference values are exact samples of the input
                std::size_t i0 = 0;
                while (i0 < m.x_grid.n_points && m.x_grid.node(i0) < -10.0) ++i0;
                std::size_t i1 = m.x_grid.n_points;
                while (i1 > 0 && m.x_grid.node(i1 - 1) > 10.0) --i1;
                const std::size_t span = i1 - i0;
                const std::size_t stride = std::max<std::size_t>(1, span / 160);
                const std::size_t count = (span - 1) / stride + 1;
                const RealGrid wg(m.x_grid.node(i0),
                                  m.x_grid.node(i0 + (count - 1) * stride), count);
                ComplexField1D rec = reconstruct_on_grid(data, wg);
                double gap = 0.0;
                for (std::size_t i = 0; i < wg.n_points; ++i)
                    gap = std::max(gap,
                                   std::abs(rec.values[i] - u0.values[i0 + i * stride]));
                if (!out_dir.empty()) {
                    save_field(out_dir / "reconstructed.csv", rec);
                    rep.artifacts["reconstructed.csv"] =
                        (out_dir / "reconstructed.csv").string();
                }
                const double tol = m.tolerance("roundtrip_linf", 1e-4);
                return ReportRow{"A2", "round trip", gap < tol, gap, tol,
                                 "linf gap = " + std::to_string(gap)};
            });
            break;
        }
        case ExperimentKind::backlund_pipeline:
            add_row(rep, "A6", [&]() { return a6_row(m.seed, out_dir, rep); });
            break;
        case ExperimentKind::asymptotic_stability:
            add_row(rep, "A3", [&]() { return a3_row(m.seed, out_dir, rep); });
            break;
        case ExperimentKind::radiation_decay:
            add_row(rep, "A4", [&]() { return a4_row(out_dir, rep); });
            break;
        case ExperimentKind::validate_all:
            return run_acceptance(m.output_dir);
    }
    rep.all_passed = !rep.rows.empty();
    for (const ReportRow& r : rep.rows) rep.all_passed = rep.all_passed && r.passed;
    if (!out_dir.empty()) save_report((out_dir / "report.json").string(), rep);
    return rep;
}

ExperimentReport run_acceptance(const std::string& output_dir) {
    ExperimentReport rep;
    rep.kind = "validate_all";
    const std::filesystem::path out_dir = output_dir;
    const std::uint64_t seed = 1;

    add_row(rep, "A1", [&]() { return a1_row(); });
    add_row(rep, "A2", [&]() { return a2_row(out_dir, rep); });
    add_row(rep, "A3", [&]() { return a3_row(seed, out_dir, rep); });
    add_row(rep, "A4", [&]() { return a4_row(out_dir, rep); });
    add_row(rep, "A5", [&]() { return a5_row(); });
    add_row(rep, "A6", [&]() { return a6_row(7, out_dir, rep); });
    add_row(rep, "A7", [&]() { return a7_row(); });
    add_row(rep, "A8", [&]() { return a8_row(3); });
    add_row(rep, "A9", [&]() { return a9_row(out_dir, rep); });

    rep.all_passed = true;
    for (const ReportRow& r : rep.rows) rep.all_passed = rep.all_passed && r.passed;
    if (!out_dir.empty()) {
        ensure_dir(out_dir);
        save_report((out_dir / "acceptance.json").string(), rep);
    }
    return rep;
}

}  // namespace nlsist
