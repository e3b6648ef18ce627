#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "nlsist/core.hpp"
#include "nlsist/integrator.hpp"
#include "nlsist/spectral_flow.hpp"

namespace nlsist {

enum class ExperimentKind {
    scatter,
    reconstruct,
    roundtrip,
    backlund_pipeline,
    asymptotic_stability,
    radiation_decay,
    validate_all,
};

struct InitialDatum {
    enum class Type { soliton, sech, file };
    Type type = Type::soliton;
    SolitonParams soliton;
    /// Amplitude of the seeded smooth localized perturbation added to the
    /// soliton (0 = exact soliton).
    double epsilon = 0.0;
    /// sech family: amplitude * sech(x) * e^{i slope x}.
    double amplitude = 0.3;
    double phase_slope = 0.0;
    /// Sampled-array reference (field file) for Type::file.
    std::string file;
};

struct ExperimentManifest {
    ExperimentKind kind = ExperimentKind::scatter;
    RealGrid x_grid{-40.0, 40.0, 1025};
    RealGrid z_grid{-4.0, 4.0, 385};
    InitialDatum datum;
    std::vector<double> times;
    /// Named tolerance overrides; names must come from the fixed registry.
    std::map<std::string, double> tolerances;
    IntegratorConfig integrator;
    std::string output_dir;
    std::uint64_t seed = 1;
    FlowConvention convention = FlowConvention::paper_r;

    /// Structural validation (grids, tolerance names, file references).
    void validate() const;
    double tolerance(const std::string& name, double fallback) const;
};

ExperimentManifest load_manifest(const std::string& path);
void save_manifest(const std::string& path, const ExperimentManifest& manifest);

/// One checked claim; id names the acceptance criterion the row supports.
struct ReportRow {
    std::string id;
    std::string what;
    bool passed = false;
    double value = 0.0;
    double threshold = 0.0;
    std::string detail;
};

struct ExperimentReport {
    std::string kind;
    bool all_passed = false;
    std::vector<ReportRow> rows;
    std::map<std::string, std::string> artifacts;
    /// Per-stage failures with context; partial outputs are kept.
    std::vector<std::string> errors;
};

void save_report(const std::string& path, const ExperimentReport& report);

/// The deterministic (seeded) initial field described by the manifest.
ComplexField1D make_initial_field(const ExperimentManifest& manifest);

/// Runs one experiment; never throws for in-run stage failures (they are
/// recorded in the report instead).
ExperimentReport run(const ExperimentManifest& manifest);

/// The full acceptance suite: one row per criterion A1..A9. Artifacts are
/// written under output_dir when non-empty.
ExperimentReport run_acceptance(const std::string& output_dir = "");

}  // namespace nlsist
