#include <cstdio>
#include <filesystem>
#include <string>

#include "CLI11.hpp"

#include "nlsist/asymptotics.hpp"
#include "nlsist/backlund.hpp"
#include "nlsist/direct_scattering.hpp"
#include "nlsist/io.hpp"
#include "nlsist/pipelines.hpp"
#include "nlsist/rh_inverse.hpp"

using namespace nlsist;

namespace {

void print_report(const ExperimentReport& rep) {
    for (const ReportRow& r : rep.rows)
        std::printf("%-3s %s  %s (value=%.6g threshold=%.6g) %s\n", r.id.c_str(),
                    r.passed ? "PASS" : "FAIL", r.what.c_str(), r.value, r.threshold,
                    r.detail.c_str());
    for (const std::string& e : rep.errors) std::printf("error: %s\n", e.c_str());
    std::printf("%s: %s\n", rep.kind.c_str(), rep.all_passed ? "ALL PASS" : "FAILED");
}

int run_report_kind(ExperimentManifest m, ExperimentKind kind, const std::string& out) {
    m.kind = kind;
    if (!out.empty()) m.output_dir = out;
    ExperimentReport rep = run(m);
    print_report(rep);
    return rep.all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Inverse-scattering toolkit for the focusing cubic NLS equation"};
    app.require_subcommand(1);

    std::string manifest_path, in_path, out_path, convention = "paper_r";
    double t_override = 0.0;
    bool t_given = false;
    app.add_option("--manifest", manifest_path, "Experiment manifest (JSON)");
    app.add_option("--in", in_path, "Input file (field or spectral data)");
    app.add_option("--out", out_path, "Output file or directory");
    app.add_option("--convention", convention, "Spectral-flow sign convention")
        ->check(CLI::IsMember({"paper_r", "paper_soliton"}));
    auto* topt = app.add_option("--t", t_override, "Time override");

    auto* sc_scatter = app.add_subcommand("scatter", "Direct scattering of the manifest datum");
    auto* sc_recon = app.add_subcommand("reconstruct", "RH reconstruction from spectral data");
    auto* sc_flow = app.add_subcommand("evolve-spectral", "Apply the spectral time flow");
    auto* sc_back = app.add_subcommand("backlund", "Strip/evolve/recombine pipeline vs split-step");
    auto* sc_sim = app.add_subcommand("simulate", "Split-step evolution of the manifest datum");
    auto* sc_asym = app.add_subcommand("asymptote", "Long-time asymptotic prediction from spectral data");
    auto* sc_val = app.add_subcommand("validate", "Run the full acceptance suite");
    for (CLI::App* s : {sc_scatter, sc_recon, sc_flow, sc_back, sc_sim, sc_asym, sc_val})
        s->fallthrough();

    CLI11_PARSE(app, argc, argv);
    t_given = topt->count() > 0;

    try {
        ExperimentManifest m;
        if (!manifest_path.empty()) m = load_manifest(manifest_path);
        m.convention = (convention == "paper_soliton") ? FlowConvention::paper_soliton
                                                       : FlowConvention::paper_r;

        if (app.got_subcommand(sc_scatter)) {
            ComplexField1D u0 = in_path.empty() ? make_initial_field(m) : load_field(in_path);
            SpectralData data = scatter_potential(
                u0, m.z_grid,
                SearchBox{-m.tolerance("box_re", 1.5), m.tolerance("box_re", 1.5),
                          m.tolerance("box_im_min", 0.05), m.tolerance("box_im_max", 2.5)});
            const std::string out = out_path.empty() ? "spectral.json" : out_path;
            save_spectral(out, data);
            std::printf("%zu eigenvalue(s), r_sup = %.6g -> %s\n", data.discrete.size(),
                        data.r_sup_norm(), out.c_str());
            for (const DiscretePair& p : data.discrete)
                std::printf("  z = %.12g%+.12gi  c = %.12g%+.12gi\n", p.z.real(),
                            p.z.imag(), p.c.real(), p.c.imag());
            return 0;
        }
        if (app.got_subcommand(sc_recon)) {
            if (in_path.empty()) throw InputError("reconstruct: --in spectral file required");
            SpectralData data = load_spectral(in_path);
            ComplexField1D u = reconstruct_on_grid(data, m.x_grid);
            const std::string out = out_path.empty() ? "reconstructed.csv" : out_path;
            save_field(out, u);
            std::printf("reconstructed %zu samples -> %s\n", u.size(), out.c_str());
            return 0;
        }
        if (app.got_subcommand(sc_flow)) {
            if (in_path.empty()) throw InputError("evolve-spectral: --in spectral file required");
            if (!t_given) throw InputError("evolve-spectral: --t required");
            SpectralData data = evolve_spectral(load_spectral(in_path), t_override, m.convention);
            const std::string out = out_path.empty() ? "evolved.json" : out_path;
            save_spectral(out, data);
            std::printf("evolved to t = %g -> %s\n", t_override, out.c_str());
            return 0;
        }
        if (app.got_subcommand(sc_back))
            return run_report_kind(m, ExperimentKind::backlund_pipeline, out_path);
        if (app.got_subcommand(sc_sim)) {
            ComplexField1D u0 = in_path.empty() ? make_initial_field(m) : load_field(in_path);
            std::vector<double> times = m.times;
            if (t_given) times = {t_override};
            if (times.empty()) times = {m.integrator.t_end};
            IntegratorConfig cfg = m.integrator;
            cfg.t_end = times.back();
            auto snaps = evolve_reference(u0, cfg, times);
            const std::filesystem::path dir = out_path.empty() ? "." : out_path;
            std::filesystem::create_directories(dir);
            for (std::size_t k = 0; k < times.size(); ++k) {
                char name[64];
                std::snprintf(name, sizeof name, "field_t%g.csv", times[k]);
                save_field(dir / name, snaps[k]);
                std::printf("t = %g -> %s\n", times[k], (dir / name).string().c_str());
            }
            return 0;
        }
        if (app.got_subcommand(sc_asym)) {
            if (in_path.empty()) throw InputError("asymptote: --in spectral file required");
            if (!t_given) throw InputError("asymptote: --t required");
            SpectralData data = load_spectral(in_path);
            ComplexField1D pred = ComplexField1D::sample(m.x_grid, [&](double x) {
                if (data.discrete.empty())
                    return radiation_profile(data, std::abs(t_override), x);
                return asymptotic_soliton(
                    data, t_override >= 0 ? TimeSign::plus : TimeSign::minus, t_override, x);
            });
            const std::string out = out_path.empty() ? "asymptote.csv" : out_path;
            save_field(out, pred);
            std::printf("asymptotic prediction at t = %g -> %s\n", t_override, out.c_str());
            return 0;
        }
        if (app.got_subcommand(sc_val)) {
            const std::string out = !out_path.empty() ? out_path : m.output_dir;
            ExperimentReport rep = run_acceptance(out);
            print_report(rep);
            return rep.all_passed ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
