#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "nlsist/io.hpp"
#include "nlsist/pipelines.hpp"

using namespace nlsist;

namespace {

namespace fs = std::filesystem;

struct TempDir {
    fs::path p;
    TempDir() : p(fs::temp_directory_path() / "nlsist_test_io") {
        fs::create_directories(p);
    }
    ~TempDir() { fs::remove_all(p); }
};

ComplexField1D sample_field() {
    RealGrid g(-3.0, 5.0, 17);
    return ComplexField1D::sample(g, [](double x) {
        return Complex(std::sin(x), std::exp(-x * x / 10.0));
    });
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("binary field round trip is bit-identical") {
    TempDir tmp;
    ComplexField1D f = sample_field();
    save_field(tmp.p / "f.nls", f);
    ComplexField1D g = load_field(tmp.p / "f.nls");
    CHECK(g.grid == f.grid);
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(g.values[i] == f.values[i]);
}

TEST_CASE("CSV and binary encodings agree after load") {
    TempDir tmp;
    ComplexField1D f = sample_field();
    save_field(tmp.p / "f.nls", f);
    save_field(tmp.p / "f.csv", f);
    ComplexField1D a = load_field(tmp.p / "f.nls");
    ComplexField1D b = load_field(tmp.p / "f.csv");
    for (std::size_t i = 0; i < f.size(); ++i)
        CHECK(std::abs(a.values[i] - b.values[i]) < 1e-16);
}

TEST_CASE("malformed files raise parse errors with an offset") {
    TempDir tmp;
    ComplexField1D f = sample_field();
    save_field(tmp.p / "f.nls", f);
    std::string bytes = slurp(tmp.p / "f.nls");
    // truncate the payload: the length no longer matches the header
    std::ofstream(tmp.p / "bad.nls", std::ios::binary)
        << bytes.substr(0, bytes.size() - 8);
    try {
        load_field(tmp.p / "bad.nls");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("byte offset") != std::string::npos);
    }
    std::ofstream(tmp.p / "bad.csv") << "x,re,im\n1.0,2.0\n";
    CHECK_THROWS_AS(load_field(tmp.p / "bad.csv"), ParseError);
}

TEST_CASE("spectral data JSON round trip") {
    TempDir tmp;
    RealGrid zg(-2.0, 2.0, 9);
    std::vector<Complex> r(9);
    for (std::size_t i = 0; i < 9; ++i) r[i] = Complex(0.01 * double(i), -0.3);
    SpectralData d(zg, r, {DiscretePair{Complex(0.1, 0.6), Complex(-1.0, 2.0)}});
    save_spectral(tmp.p / "d.json", d);
    SpectralData e = load_spectral(tmp.p / "d.json");
    CHECK(e.z_grid == d.z_grid);
    for (std::size_t i = 0; i < 9; ++i) CHECK(e.r_values[i] == d.r_values[i]);
    REQUIRE(e.discrete.size() == 1);
    CHECK(e.discrete[0].z == d.discrete[0].z);
    CHECK(e.discrete[0].c == d.discrete[0].c);
    std::ofstream(tmp.p / "bad.json") << "{ not json";
    CHECK_THROWS_AS(load_spectral(tmp.p / "bad.json"), ParseError);
}

TEST_CASE("manifest round trip and validation") {
    TempDir tmp;
    ExperimentManifest m;
    m.kind = ExperimentKind::asymptotic_stability;
    m.x_grid = RealGrid(-100.0, 100.0, 2049);
    m.datum.type = InitialDatum::Type::soliton;
    m.datum.epsilon = 0.02;
    m.times = {10.0, 20.0};
    m.tolerances["slope_margin"] = 0.15;
    m.seed = 42;
    save_manifest((tmp.p / "m.json").string(), m);
    ExperimentManifest n = load_manifest((tmp.p / "m.json").string());
    CHECK(n.kind == m.kind);
    CHECK(n.x_grid == m.x_grid);
    CHECK(n.datum.epsilon == m.datum.epsilon);
    CHECK(n.times == m.times);
    CHECK(n.seed == 42);
    CHECK(n.tolerance("slope_margin", 0.1) == 0.15);
    CHECK(n.tolerance("unknown-but-unused", 0.5) == 0.5);

    m.tolerances["no_such_tolerance"] = 1.0;
    CHECK_THROWS_AS(m.validate(), InputError);
    m.tolerances.erase("no_such_tolerance");
    m.datum.type = InitialDatum::Type::file;
    m.datum.file = (tmp.p / "missing.nls").string();
    CHECK_THROWS_AS(m.validate(), InputError);
}

TEST_CASE("initial field construction is seeded and deterministic") {
    ExperimentManifest m;
    m.datum.type = InitialDatum::Type::soliton;
    m.datum.epsilon = 0.05;
    m.seed = 7;
    ComplexField1D a = make_initial_field(m);
    ComplexField1D b = make_initial_field(m);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a.values[i] == b.values[i]);
    m.seed = 8;
    ComplexField1D c = make_initial_field(m);
    double diff = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        diff = std::max(diff, std::abs(a.values[i] - c.values[i]));
    CHECK(diff > 1e-3);
    // perturbation magnitude is epsilon (sup-normalized profile)
    ComplexField1D base = m.datum.soliton.sample(m.x_grid, 0.0);
    double sup = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        sup = std::max(sup, std::abs(a.values[i] - base.values[i]));
    CHECK(sup == doctest::Approx(0.05).epsilon(1e-6));
}

TEST_CASE("scatter experiment report is deterministic") {
    TempDir tmp;
    ExperimentManifest m;
    m.kind = ExperimentKind::scatter;
    m.x_grid = RealGrid(-40.0, 40.0, 1025);
    m.z_grid = RealGrid(-3.0, 3.0, 97);
    m.datum.type = InitialDatum::Type::soliton;
    m.datum.epsilon = 0.05;
    m.seed = 3;
    m.output_dir = (tmp.p / "run1").string();
    ExperimentReport r1 = run(m);
    m.output_dir = (tmp.p / "run2").string();
    ExperimentReport r2 = run(m);
    REQUIRE(r1.rows.size() == 1);
    CHECK(r1.rows[0].id == "A1");
    std::string j1 = slurp(tmp.p / "run1" / "spectral.json");
    std::string j2 = slurp(tmp.p / "run2" / "spectral.json");
    CHECK(j1 == j2);
    CHECK(!j1.empty());
    CHECK(r1.rows[0].detail == r2.rows[0].detail);
}

TEST_CASE("roundtrip experiment meets its tolerance") {
    ExperimentManifest m;
    m.kind = ExperimentKind::roundtrip;
    m.x_grid = RealGrid(-40.0, 40.0, 1025);
    m.z_grid = RealGrid(-4.0, 4.0, 385);
    m.datum.type = InitialDatum::Type::sech;
    m.datum.amplitude = 0.3;
    ExperimentReport rep = run(m);
    REQUIRE(rep.rows.size() == 1);
    CHECK(rep.rows[0].id == "A2");
    CHECK(rep.rows[0].passed);
    CHECK(rep.rows[0].value < 1e-4);
}
