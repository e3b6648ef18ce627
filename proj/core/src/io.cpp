#include "nlsist/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace nlsist {

namespace {

constexpr char kMagic[8] = {'N', 'L', 'S', 'I', 'S', 'T', '1', '\0'};

[[noreturn]] void parse_fail(const std::filesystem::path& path, std::uint64_t offset,
                             const std::string& what) {
    throw ParseError(path.string() + ": " + what + " at byte offset " +
                     std::to_string(offset));
}

void save_field_csv(const std::filesystem::path& path, const ComplexField1D& f) {
    std::ofstream out(path);
    if (!out) throw InputError("save_field: cannot open " + path.string());
    out << "x,re,im\n";
    char line[128];
    for (std::size_t i = 0; i < f.grid.n_points; ++i) {
        std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", f.grid.node(i),
                      f.values[i].real(), f.values[i].imag());
        out << line;
    }
}

ComplexField1D load_field_csv(const std::filesystem::path& path,
                              const std::string& content) {
    std::istringstream in(content);
    std::string line;
    std::vector<double> xs;
    std::vector<Complex> vs;
    std::uint64_t offset = 0;
    while (std::getline(in, line)) {
        const std::uint64_t line_start = offset;
        offset += line.size() + 1;
        if (line.empty() || line == "x,re,im") continue;
        double x, re, im;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &x, &re, &im) != 3)
            parse_fail(path, line_start, "malformed CSV row");
        xs.push_back(x);
        vs.push_back(Complex(re, im));
    }
    if (xs.size() < 2) parse_fail(path, 0, "fewer than two samples");
    return ComplexField1D(RealGrid(xs.front(), xs.back(), xs.size()), std::move(vs));
}

}  // namespace

void save_field(const std::filesystem::path& path, const ComplexField1D& f) {
    if (f.values.size() != f.grid.n_points)
        throw InputError("save_field: value count does not match the grid");
    if (path.extension() == ".csv") {
        save_field_csv(path, f);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("save_field: cannot open " + path.string());
    out.write(kMagic, 8);
    const double lo = f.grid.x_min, hi = f.grid.x_max;
    const std::uint64_t n = f.grid.n_points;
    out.write(reinterpret_cast<const char*>(&lo), 8);
    out.write(reinterpret_cast<const char*>(&hi), 8);
    out.write(reinterpret_cast<const char*>(&n), 8);
    for (const Complex& v : f.values) {
        const double re = v.real(), im = v.imag();
        out.write(reinterpret_cast<const char*>(&re), 8);
        out.write(reinterpret_cast<const char*>(&im), 8);
    }
    if (!out) throw InputError("save_field: write failed for " + path.string());
}

ComplexField1D load_field(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("load_field: cannot open " + path.string());
    std::string content((std::istreambuf_iterator<char>(in)),
                        std::istreambuf_iterator<char>());
    if (content.size() < 8 || std::memcmp(content.data(), kMagic, 8) != 0)
        return load_field_csv(path, content);

    if (content.size() < 32) parse_fail(path, content.size(), "truncated header");
    double lo, hi;
    std::uint64_t n;
    std::memcpy(&lo, content.data() + 8, 8);
    std::memcpy(&hi, content.data() + 16, 8);
    std::memcpy(&n, content.data() + 24, 8);
    if (n < 2 || n > (1ull << 32)) parse_fail(path, 24, "implausible sample count");
    const std::uint64_t need = 32 + 16 * n;
    if (content.size() != need)
        parse_fail(path, std::min<std::uint64_t>(content.size(), need),
                   "payload length disagrees with the header");
    std::vector<Complex> vs(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        double re, im;
        std::memcpy(&re, content.data() + 32 + 16 * i, 8);
        std::memcpy(&im, content.data() + 40 + 16 * i, 8);
        vs[i] = Complex(re, im);
    }
    return ComplexField1D(RealGrid(lo, hi, n), std::move(vs));
}

void save_spectral(const std::filesystem::path& path, const SpectralData& data) {
    nlohmann::json j;
    j["z_grid"] = {{"min", data.z_grid.x_min},
                   {"max", data.z_grid.x_max},
                   {"n", data.z_grid.n_points}};
    std::vector<double> re, im;
    re.reserve(data.r_values.size());
    im.reserve(data.r_values.size());
    for (const Complex& v : data.r_values) {
        re.push_back(v.real());
        im.push_back(v.imag());
    }
    j["r_re"] = re;
    j["r_im"] = im;
    j["discrete"] = nlohmann::json::array();
    for (const DiscretePair& p : data.discrete)
        j["discrete"].push_back({{"z_re", p.z.real()},
                                 {"z_im", p.z.imag()},
                                 {"c_re", p.c.real()},
                                 {"c_im", p.c.imag()}});
    std::ofstream out(path);
    if (!out) throw InputError("save_spectral: cannot open " + path.string());
    out << j.dump(2) << "\n";
}

SpectralData load_spectral(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("load_spectral: cannot open " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what() + " at byte offset " +
                         std::to_string(e.byte));
    }
    try {
        RealGrid g(j.at("z_grid").at("min").get<double>(),
                   j.at("z_grid").at("max").get<double>(),
                   j.at("z_grid").at("n").get<std::size_t>());
        const auto re = j.at("r_re").get<std::vector<double>>();
        const auto im = j.at("r_im").get<std::vector<double>>();
        if (re.size() != im.size() || re.size() != g.n_points)
            throw ParseError(path.string() + ": r array length disagrees with the grid");
        std::vector<Complex> r(re.size());
        for (std::size_t i = 0; i < re.size(); ++i) r[i] = Complex(re[i], im[i]);
        std::vector<DiscretePair> disc;
        for (const auto& p : j.at("discrete"))
            disc.push_back({Complex(p.at("z_re").get<double>(), p.at("z_im").get<double>()),
                            Complex(p.at("c_re").get<double>(), p.at("c_im").get<double>())});
        return SpectralData(g, std::move(r), std::move(disc));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

}  // namespace nlsist
