#include "diraclab/io.hpp"

#include "diraclab/errors.hpp"

#include <cstdio>
#include <fstream>

namespace diraclab {

const char* library_version() { return "0.3.0"; }

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

void write_results_csv(std::ostream& os, const std::vector<ConvergenceRecord>& records, bool include_timing) {
    os << kResultsHeader << '\n';
    for (const ConvergenceRecord& r : records) {
        os << to_string(r.scheme) << ',' << format_double(r.eps) << ',' << format_double(r.h) << ','
           << format_double(r.tau) << ',';
        if (r.error) os << format_double(*r.error);
        os << ',';
        if (r.order) os << format_double(*r.order);
        os << ',' << to_string(r.status) << ',' << format_double(include_timing ? r.wall_time : 0.0) << '\n';
    }
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
    std::ofstream f(path);
    if (!f) throw ConfigError("cannot write " + path.string());
    f << j.dump(2) << '\n';
}

void write_snapshot(const std::filesystem::path& dir, const std::string& stem, const std::vector<double>& data,
                    const nlohmann::json& meta) {
    std::filesystem::create_directories(dir);
    const auto bin = dir / (stem + ".bin");
    std::ofstream f(bin, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + bin.string());
    f.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size() * sizeof(double)));
    nlohmann::json m = meta;
    m["file"] = stem + ".bin";
    m["dtype"] = "float64";
    m["count"] = data.size();
    write_json(dir / (stem + ".json"), m);
}

void write_field_snapshot(const std::filesystem::path& dir, const std::string& stem, const SpinorField& field,
                          double t) {
    std::vector<double> flat;
    flat.reserve(field.data().size() * 2);
    for (const cplx& z : field.data()) {
        flat.push_back(z.real());
        flat.push_back(z.imag());
    }
    nlohmann::json meta;
    meta["t"] = t;
    meta["components"] = field.components();
    meta["layout"] = "component-planar, interleaved re/im";
    nlohmann::json dims = nlohmann::json::array();
    for (int k = 0; k < field.mesh().dims(); ++k) {
        const Grid1D& g = field.mesh().axis(k);
        dims.push_back({{"a", g.a()}, {"b", g.b()}, {"M", g.M()}});
    }
    meta["grid"] = dims;
    write_snapshot(dir, stem, flat, meta);
}

} // namespace diraclab
