#include "nlsist/rh_inverse.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <sstream>

#include "nlsist/fft.hpp"
#include "nlsist/threads.hpp"

namespace nlsist {

namespace {

constexpr Complex kTwoPiI{0.0, 2.0 * M_PI};

std::vector<double> trapezoid_weights(const RealGrid& g) {
    std::vector<double> w(g.n_points, g.spacing());
    w.front() *= 0.5;
    w.back() *= 0.5;
    return w;
}

using ApplyFn = std::function<std::vector<Complex>(const std::vector<Complex>&)>;

double vec_norm(const std::vector<Complex>& v) {
    double s = 0;
    for (const Complex& c : v) s += std::norm(c);
    return std::sqrt(s);
}

// Restarted GMRES for the matrix-free path.
std::vector<Complex> gmres(const ApplyFn& apply, const std::vector<Complex>& b,
                           const RHOptions& opts) {
    const std::size_t n = b.size();
    const std::size_t m = opts.gmres_restart;
    std::vector<Complex> x(n, Complex(0.0));
    const double bnorm = std::max(vec_norm(b), 1e-300);
    std::size_t total_iters = 0;

    while (total_iters < opts.gmres_max_iter) {
        std::vector<Complex> r = apply(x);
        for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
        double beta = vec_norm(r);
        if (beta / bnorm < opts.residual_tol * 1e-2) return x;

        std::vector<std::vector<Complex>> V;
        V.reserve(m + 1);
        {
            std::vector<Complex> v0 = r;
            for (Complex& c : v0) c /= beta;
            V.push_back(std::move(v0));
        }
        Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(m + 1, m);
        Eigen::VectorXcd g = Eigen::VectorXcd::Zero(m + 1);
        g(0) = beta;
        std::vector<Complex> cs(m), sn(m);
        std::size_t k = 0;
        for (; k < m && total_iters < opts.gmres_max_iter; ++k, ++total_iters) {
            std::vector<Complex> w = apply(V[k]);
            for (std::size_t j = 0; j <= k; ++j) {
                Complex hjk = 0;
                for (std::size_t i = 0; i < n; ++i) hjk += std::conj(V[j][i]) * w[i];
                H(j, k) = hjk;
                for (std::size_t i = 0; i < n; ++i) w[i] -= hjk * V[j][i];
            }
            double hnorm = vec_norm(w);
            H(k + 1, k) = hnorm;
            // apply stored Givens rotations
            for (std::size_t j = 0; j < k; ++j) {
                Complex t = cs[j] * H(j, k) + sn[j] * H(j + 1, k);
                H(j + 1, k) = -std::conj(sn[j]) * H(j, k) + std::conj(cs[j]) * H(j + 1, k);
                H(j, k) = t;
            }
            double denom = std::sqrt(std::norm(H(k, k)) + std::norm(H(k + 1, k)));
            if (denom > 0) {
                cs[k] = std::conj(H(k, k)) / denom;
                sn[k] = std::conj(H(k + 1, k)) / denom;
                H(k, k) = cs[k] * H(k, k) + sn[k] * H(k + 1, k);
                H(k + 1, k) = 0;
                Complex t = cs[k] * g(k);
                g(k + 1) = -std::conj(sn[k]) * g(k);
                g(k) = t;
            }
            if (hnorm > 0 && std::abs(g(k + 1)) / bnorm > opts.residual_tol * 1e-2) {
                std::vector<Complex> vk = std::move(w);
                for (Complex& c : vk) c /= hnorm;
                V.push_back(std::move(vk));
                continue;
            }
            ++k;
            ++total_iters;
            break;
        }
        // back substitution
        Eigen::VectorXcd y(k);
        for (std::size_t i = k; i-- > 0;) {
            Complex s = g(i);
            for (std::size_t j = i + 1; j < k; ++j) s -= H(i, j) * y(j);
            y(i) = s / H(i, i);
        }
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t i = 0; i < n; ++i) x[i] += y(j) * V[j][i];
    }
    return x;
}

}  // namespace

JumpData build_jump(const SpectralData& data, double x) {
    JumpData out;
    out.x = x;
    out.V_values.resize(data.z_grid.n_points);
    for (std::size_t i = 0; i < data.z_grid.n_points; ++i) {
        const double z = data.z_grid.node(i);
        const Complex r = data.r_values[i];
        const Complex osc = std::exp(2.0 * kImagUnit * z * x);
        out.V_values[i] = Mat2(1.0 + std::norm(r), std::conj(r) / osc, r * osc, 1.0);
    }
    for (const auto& p : data.discrete) {
        const Complex w = std::exp(2.0 * kImagUnit * p.z * x) * p.c;
        out.poles.push_back({p.z, Mat2(0.0, 0.0, w, 0.0)});
    }
    for (const auto& p : data.discrete) {
        const Complex zb = std::conj(p.z);
        const Complex w = -std::exp(-2.0 * kImagUnit * zb * x) * std::conj(p.c);
        out.poles.push_back({zb, Mat2(0.0, w, 0.0, 0.0)});
    }
    return out;
}

namespace {

// Layout of one matrix-row unknown for the coupled system: h-column-1 on the
// grid, h-column-2 on the grid, then (m1, m2) per pole point.
struct SystemShape {
    std::size_t n_grid;
    std::size_t n_poles;
    std::size_t size() const { return 2 * n_grid + 2 * n_poles; }
    std::size_t grid(int c, std::size_t i) const { return std::size_t(c) * n_grid + i; }
    std::size_t pole(std::size_t q, int d) const { return 2 * n_grid + 2 * q + std::size_t(d); }
};

std::vector<Complex> apply_full_system(const SystemShape& sh, const JumpData& jump,
                                       const RealGrid& zg, const std::vector<double>& z_nodes,
                                       const std::vector<double>& tw,
                                       const std::vector<Complex>& y) {
    const std::size_t n = sh.n_grid;
    std::vector<Complex> out(sh.size(), Complex(0.0));
    // g_c = (h (V-1))_c on the grid
    std::vector<Complex> g[2];
    for (int c = 0; c < 2; ++c) g[c].resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        const Mat2& V = jump.V_values[j];
        const Complex h0 = y[sh.grid(0, j)], h1 = y[sh.grid(1, j)];
        g[0][j] = h0 * (V(0, 0) - 1.0) + h1 * V(1, 0);
        g[1][j] = h0 * V(0, 1) + h1 * (V(1, 1) - 1.0);
    }
    std::vector<Complex> cg[2] = {cauchy_minus_line(g[0], zg), cauchy_minus_line(g[1], zg)};
    for (int c = 0; c < 2; ++c)
        for (std::size_t i = 0; i < n; ++i) out[sh.grid(c, i)] = y[sh.grid(c, i)] - cg[c][i];
    // pole coupling into grid equations
    for (std::size_t q = 0; q < sh.n_poles; ++q) {
        const auto& P = jump.poles[q];
        const Complex m0 = y[sh.pole(q, 0)], m1 = y[sh.pole(q, 1)];
        const Complex mv0 = m0 * P.V(0, 0) + m1 * P.V(1, 0);
        const Complex mv1 = m0 * P.V(0, 1) + m1 * P.V(1, 1);
        for (std::size_t i = 0; i < n; ++i) {
            const Complex denom = P.z - z_nodes[i];
            out[sh.grid(0, i)] += mv0 / denom;
            out[sh.grid(1, i)] += mv1 / denom;
        }
    }
    // pole equations
    for (std::size_t p = 0; p < sh.n_poles; ++p) {
        const Complex zp = jump.poles[p].z;
        Complex acc0 = y[sh.pole(p, 0)], acc1 = y[sh.pole(p, 1)];
        for (std::size_t q = 0; q < sh.n_poles; ++q) {
            if (q == p) continue;
            const auto& P = jump.poles[q];
            const Complex m0 = y[sh.pole(q, 0)], m1 = y[sh.pole(q, 1)];
            const Complex denom = P.z - zp;
            acc0 += (m0 * P.V(0, 0) + m1 * P.V(1, 0)) / denom;
            acc1 += (m0 * P.V(0, 1) + m1 * P.V(1, 1)) / denom;
        }
        for (std::size_t j = 0; j < n; ++j) {
            const Complex w = tw[j] / (kTwoPiI * (z_nodes[j] - zp));
            acc0 -= w * g[0][j];
            acc1 -= w * g[1][j];
        }
        out[sh.pole(p, 0)] = acc0;
        out[sh.pole(p, 1)] = acc1;
    }
    return out;
}

std::vector<Complex> rhs_full_system(const SystemShape& sh, const JumpData& jump,
                                     const RealGrid& zg, const std::vector<double>& z_nodes,
                                     const std::vector<double>& tw, int e) {
    const std::size_t n = sh.n_grid;
    std::vector<Complex> rhs(sh.size(), Complex(0.0));
    std::vector<Complex> row_c(n);
    for (int c = 0; c < 2; ++c) {
        for (std::size_t j = 0; j < n; ++j) {
            const Mat2& V = jump.V_values[j];
            row_c[j] = V(e, c) - (e == c ? 1.0 : 0.0);
        }
        std::vector<Complex> cm = cauchy_minus_line(row_c, zg);
        for (std::size_t i = 0; i < n; ++i) rhs[sh.grid(c, i)] = cm[i];
        for (std::size_t p = 0; p < sh.n_poles; ++p) {
            Complex acc = (e == c) ? Complex(1.0) : Complex(0.0);
            const Complex zp = jump.poles[p].z;
            for (std::size_t j = 0; j < n; ++j)
                acc += tw[j] / (kTwoPiI * (z_nodes[j] - zp)) * row_c[j];
            rhs[sh.pole(p, c)] = acc;
        }
    }
    return rhs;
}

void check_residual(const ApplyFn& apply, const std::vector<Complex>& sol,
                    const std::vector<Complex>& rhs, double tol, const char* who) {
    std::vector<Complex> res = apply(sol);
    double num = 0, den = 0;
    for (std::size_t i = 0; i < rhs.size(); ++i) {
        num += std::norm(res[i] - rhs[i]);
        den += std::norm(rhs[i]);
    }
    double rel = std::sqrt(num) / std::max(std::sqrt(den), 1e-300);
    if (!(rel < tol)) {
        std::ostringstream msg;
        msg << who << ": relative residual " << rel << " exceeds tolerance " << tol;
        throw IllConditionedRHError(msg.str());
    }
}

// Solves the two row systems (one per identity row) either densely or by
// GMRES, depending on the unknown count.
std::array<std::vector<Complex>, 2> solve_rows(
    const SystemShape& sh, const ApplyFn& apply,
    const std::function<void(Eigen::MatrixXcd&)>& fill_dense,
    const std::array<std::vector<Complex>, 2>& rhs, const RHOptions& opts, const char* who) {
    const std::size_t sz = sh.size();
    std::array<std::vector<Complex>, 2> sol;
    if (sz <= opts.dense_limit) {
        Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(sz, sz);
        fill_dense(A);
        Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
        for (int e = 0; e < 2; ++e) {
            Eigen::VectorXcd b(sz);
            for (std::size_t i = 0; i < sz; ++i) b(i) = rhs[e][i];
            Eigen::VectorXcd xsol = lu.solve(b);
            sol[e].resize(sz);
            for (std::size_t i = 0; i < sz; ++i) sol[e][i] = xsol(i);
        }
    } else {
        for (int e = 0; e < 2; ++e) sol[e] = gmres(apply, rhs[e], opts);
    }
    for (int e = 0; e < 2; ++e) check_residual(apply, sol[e], rhs[e], opts.residual_tol, who);
    return sol;
}

}  // namespace

RHSolutionSlice solve_rh(const SpectralData& data, double x, const RHOptions& opts) {
    data.validate();
    const JumpData jump = build_jump(data, x);
    const std::size_t n = data.z_grid.n_points;
    const SystemShape sh{n, jump.poles.size()};
    const std::vector<double> z_nodes = data.z_grid.nodes();
    const std::vector<double> tw = trapezoid_weights(data.z_grid);

    ApplyFn apply = [&](const std::vector<Complex>& y) {
        return apply_full_system(sh, jump, data.z_grid, z_nodes, tw, y);
    };
    std::array<std::vector<Complex>, 2> rhs = {
        rhs_full_system(sh, jump, data.z_grid, z_nodes, tw, 0),
        rhs_full_system(sh, jump, data.z_grid, z_nodes, tw, 1)};

    auto fill_dense = [&](Eigen::MatrixXcd& A) {
        for (int c = 0; c < 2; ++c) {
            for (std::size_t i = 0; i < n; ++i) {
                const std::size_t row = sh.grid(c, i);
                const std::vector<Complex> pv = cauchy_pv_row(data.z_grid, i);
                A(row, row) += 1.0;
                for (std::size_t j = 0; j < n; ++j) {
                    const Complex k = pv[j] - (i == j ? Complex(0.5) : Complex(0.0));
                    const Mat2& V = jump.V_values[j];
                    A(row, sh.grid(0, j)) -= k * (V(0, c) - (c == 0 ? 1.0 : 0.0));
                    A(row, sh.grid(1, j)) -= k * (V(1, c) - (c == 1 ? 1.0 : 0.0));
                }
                for (std::size_t q = 0; q < sh.n_poles; ++q) {
                    const auto& P = jump.poles[q];
                    const Complex denom = P.z - z_nodes[i];
                    A(row, sh.pole(q, 0)) += P.V(0, c) / denom;
                    A(row, sh.pole(q, 1)) += P.V(1, c) / denom;
                }
            }
            for (std::size_t p = 0; p < sh.n_poles; ++p) {
                const std::size_t row = sh.pole(p, c);
                const Complex zp = jump.poles[p].z;
                A(row, sh.pole(p, c)) += 1.0;
                for (std::size_t q = 0; q < sh.n_poles; ++q) {
                    if (q == p) continue;
                    const auto& P = jump.poles[q];
                    const Complex denom = P.z - zp;
                    A(row, sh.pole(q, 0)) += P.V(0, c) / denom;
                    A(row, sh.pole(q, 1)) += P.V(1, c) / denom;
                }
                for (std::size_t j = 0; j < n; ++j) {
                    const Complex w = tw[j] / (kTwoPiI * (z_nodes[j] - zp));
                    const Mat2& V = jump.V_values[j];
                    A(row, sh.grid(0, j)) -= w * (V(0, c) - (c == 0 ? 1.0 : 0.0));
                    A(row, sh.grid(1, j)) -= w * (V(1, c) - (c == 1 ? 1.0 : 0.0));
                }
            }
        }
    };

    auto sol = solve_rows(sh, apply, fill_dense, rhs, opts, "solve_rh");

    RHSolutionSlice slice;
    slice.z_grid = data.z_grid;
    slice.x = x;
    slice.M_values.resize(n);
    for (std::size_t j = 0; j < n; ++j)
        slice.M_values[j] =
            Mat2(1.0 + sol[0][sh.grid(0, j)], sol[0][sh.grid(1, j)], sol[1][sh.grid(0, j)],
                 1.0 + sol[1][sh.grid(1, j)]);
    for (std::size_t q = 0; q < sh.n_poles; ++q) {
        slice.pole_points.push_back(jump.poles[q].z);
        slice.M_at_poles.push_back(Mat2(sol[0][sh.pole(q, 0)], sol[0][sh.pole(q, 1)],
                                        sol[1][sh.pole(q, 0)], sol[1][sh.pole(q, 1)]));
    }
    return slice;
}

namespace {

// Shared machinery of the factorized (mu) route: solves
// (1 - C+( . w_minus) - C-( . w_plus)) mu = 1 on the grid.
std::array<std::vector<Complex>, 2> solve_mu_system(const std::vector<Mat2>& w_minus,
                                                    const std::vector<Mat2>& w_plus,
                                                    const RealGrid& zg, const RHOptions& opts) {
    const std::size_t n = w_minus.size();
    const SystemShape sh{n, 0};

    auto mul_rows = [&](const std::vector<Complex>& y, const std::vector<Mat2>& w, int c,
                        std::vector<Complex>& out) {
        for (std::size_t j = 0; j < n; ++j)
            out[j] = y[sh.grid(0, j)] * w[j](0, c) + y[sh.grid(1, j)] * w[j](1, c);
    };

    ApplyFn apply = [&](const std::vector<Complex>& y) {
        std::vector<Complex> out(sh.size());
        std::vector<Complex> gm(n), gp(n);
        for (int c = 0; c < 2; ++c) {
            mul_rows(y, w_minus, c, gm);
            mul_rows(y, w_plus, c, gp);
            std::vector<Complex> cp = cauchy_plus_line(gm, zg), cm = cauchy_minus_line(gp, zg);
            for (std::size_t i = 0; i < n; ++i)
                out[sh.grid(c, i)] = y[sh.grid(c, i)] - cp[i] - cm[i];
        }
        return out;
    };

    std::array<std::vector<Complex>, 2> rhs;
    for (int e = 0; e < 2; ++e) {
        rhs[e].resize(sh.size());
        std::vector<Complex> gm(n), gp(n);
        for (int c = 0; c < 2; ++c) {
            for (std::size_t j = 0; j < n; ++j) {
                gm[j] = w_minus[j](e, c);
                gp[j] = w_plus[j](e, c);
            }
            std::vector<Complex> cp = cauchy_plus_line(gm, zg), cm = cauchy_minus_line(gp, zg);
            for (std::size_t i = 0; i < n; ++i) rhs[e][sh.grid(c, i)] = cp[i] + cm[i];
        }
    }

    auto fill_dense = [&](Eigen::MatrixXcd& A) {
        for (int c = 0; c < 2; ++c)
            for (std::size_t i = 0; i < n; ++i) {
                const std::size_t row = sh.grid(c, i);
                const std::vector<Complex> pv = cauchy_pv_row(zg, i);
                A(row, row) += 1.0;
                for (std::size_t j = 0; j < n; ++j) {
                    const Complex cp = pv[j] + (i == j ? Complex(0.5) : Complex(0.0));
                    const Complex cm = pv[j] - (i == j ? Complex(0.5) : Complex(0.0));
                    for (int d = 0; d < 2; ++d)
                        A(row, sh.grid(d, j)) -= cp * w_minus[j](d, c) + cm * w_plus[j](d, c);
                }
            }
    };

    return solve_rows(sh, apply, fill_dense, rhs, opts, "solve_rh_stabilized");
}

}  // namespace

RHSolutionSlice solve_rh_stabilized(const SpectralData& data, double x, const RHOptions& opts) {
    data.validate();
    if (!data.discrete.empty())
        throw UnsupportedRangeError(
            "solve_rh_stabilized: discrete spectrum not supported on the factorized route; "
            "strip the solitons first or use solve_rh");
    const std::size_t n = data.z_grid.n_points;
    const std::vector<double> z_nodes = data.z_grid.nodes();

    std::vector<Mat2> w_minus(n), w_plus(n), V_minus(n);
    std::vector<Complex> col_scale(n, Complex(1.0));  // right delta^{sigma3} factor

    if (x >= 0) {
        for (std::size_t j = 0; j < n; ++j) {
            const Complex r = data.r_values[j];
            const Complex osc = std::exp(2.0 * kImagUnit * z_nodes[j] * x);
            w_plus[j] = Mat2(0.0, 0.0, r * osc, 0.0);
            w_minus[j] = Mat2(0.0, std::conj(r) / osc, 0.0, 0.0);
            V_minus[j] = Mat2(1.0, -std::conj(r) / osc, 0.0, 1.0);
        }
    } else {
        // scalar conjugation with the full-line delta; the lower factor
        // becomes the minus one and r is replaced by r/(delta+ delta-)
        std::vector<Complex> phi(n);
        for (std::size_t j = 0; j < n; ++j) phi[j] = std::log1p(std::norm(data.r_values[j]));
        std::vector<Complex> cp = cauchy_plus_line(phi, data.z_grid),
                             cm = cauchy_minus_line(phi, data.z_grid);
        for (std::size_t j = 0; j < n; ++j) {
            const Complex dp = std::exp(cp[j]), dm = std::exp(cm[j]);
            const Complex rt = data.r_values[j] / (dp * dm);
            const Complex osc = std::exp(2.0 * kImagUnit * z_nodes[j] * x);
            w_minus[j] = Mat2(0.0, 0.0, rt * osc, 0.0);
            w_plus[j] = Mat2(0.0, std::conj(rt) / osc, 0.0, 0.0);
            V_minus[j] = Mat2(1.0, 0.0, -rt * osc, 1.0);
            col_scale[j] = dm;
        }
    }

    auto sol = solve_mu_system(w_minus, w_plus, data.z_grid, opts);

    RHSolutionSlice slice;
    slice.z_grid = data.z_grid;
    slice.x = x;
    slice.M_values.resize(n);
    const SystemShape sh{n, 0};
    for (std::size_t j = 0; j < n; ++j) {
        Mat2 mu(1.0 + sol[0][sh.grid(0, j)], sol[0][sh.grid(1, j)], sol[1][sh.grid(0, j)],
                1.0 + sol[1][sh.grid(1, j)]);
        Mat2 M = mu * V_minus[j];
        // columns scaled by (delta-, 1/delta-); identity for x >= 0
        M(0, 0) *= col_scale[j];
        M(1, 0) *= col_scale[j];
        M(0, 1) /= col_scale[j];
        M(1, 1) /= col_scale[j];
        slice.M_values[j] = M;
    }
    return slice;
}

Complex reconstruct_potential(const RHSolutionSlice& slice, const SpectralData& data, double x) {
    const JumpData jump = build_jump(data, x);
    const std::vector<double> tw = trapezoid_weights(slice.z_grid);
    Complex pole_sum = 0.0;
    for (std::size_t q = 0; q < slice.M_at_poles.size(); ++q) {
        const Mat2& M = slice.M_at_poles[q];
        const Mat2& V = jump.poles[q].V;
        pole_sum += M(0, 0) * V(0, 1) + M(0, 1) * V(1, 1);
    }
    Complex integral = 0.0;
    for (std::size_t j = 0; j < slice.M_values.size(); ++j) {
        const Mat2& M = slice.M_values[j];
        const Mat2& V = jump.V_values[j];
        integral += tw[j] * (M(0, 0) * V(0, 1) + M(0, 1) * (V(1, 1) - 1.0));
    }
    return 2.0 * kImagUnit * (pole_sum - integral / kTwoPiI);
}

Mat2 rh_matrix_from_slice(const RHSolutionSlice& slice, const SpectralData& data, Complex z) {
    const double h = slice.z_grid.spacing();
    if (std::abs(z.imag()) < h)
        throw RangeError("rh_matrix_from_slice: z within one grid spacing of the real line");
    for (Complex zp : slice.pole_points)
        if (std::abs(z - zp) < 1e-9)
            throw DomainError("rh_matrix_from_slice: z coincides with a pole");
    const JumpData jump = build_jump(data, slice.x);
    const std::vector<double> tw = trapezoid_weights(slice.z_grid);
    Mat2 m = Mat2::identity();
    for (std::size_t q = 0; q < slice.M_at_poles.size(); ++q) {
        const Mat2 mv = slice.M_at_poles[q] * jump.poles[q].V;
        const Complex denom = jump.poles[q].z - z;
        m = m - mv * (1.0 / denom);
    }
    for (std::size_t j = 0; j < slice.M_values.size(); ++j) {
        const Mat2& V = jump.V_values[j];
        const Mat2 vm1(V(0, 0) - 1.0, V(0, 1), V(1, 0), V(1, 1) - 1.0);
        const Complex w = tw[j] / (kTwoPiI * (Complex(slice.z_grid.node(j)) - z));
        m = m + (slice.M_values[j] * vm1) * w;
    }
    return m;
}

Mat2 rh_matrix_at(const SpectralData& data, double x, Complex z, const RHOptions& opts) {
    return rh_matrix_from_slice(solve_rh(data, x, opts), data, z);
}

double stabilized_crossover(const SpectralData& data) {
    double max_omega = 0.0;
    for (const auto& p : data.discrete) max_omega = std::max(max_omega, 2.0 * p.z.imag());
    return 8.0 / (max_omega + 1.0);
}

ComplexField1D reconstruct_on_grid(const SpectralData& data, const RealGrid& x_grid,
                                   const RHOptions& opts) {
    const double crossover = stabilized_crossover(data);
    std::vector<Complex> u(x_grid.n_points);
    parallel_for(x_grid.n_points, [&](std::size_t i) {
        const double x = x_grid.node(i);
        const bool stab = data.discrete.empty() && std::abs(x) > crossover;
        RHSolutionSlice slice =
            stab ? solve_rh_stabilized(data, x, opts) : solve_rh(data, x, opts);
        u[i] = reconstruct_potential(slice, data, x);
    });
    return ComplexField1D(x_grid, std::move(u));
}

}  // namespace nlsist
