// grid.hpp
// Dense evaluation grids over phase-space coordinates, with CSV / JSON
// serialization. Values are row-major with the last axis fastest; complex
// data is stored as interleaved re/im pairs.

#pragma once

#include <nlohmann/json.hpp>

#include <cstdio>
#include <string>
#include <vector>

#include "catlab/common.hpp"

namespace catlab {

struct GridAxis {
    std::string name;
    double min = 0.0;
    double max = 0.0;
    int count = 1;

    double value_at(int i) const {
        if (count < 1) throw ConfigError("GridAxis: count must be >= 1");
        if (count == 1) return min;
        return min + (max - min) * static_cast<double>(i) / static_cast<double>(count - 1);
    }

    double step() const {
        if (count < 2) return 0.0;
        return (max - min) / static_cast<double>(count - 1);
    }
};

struct PhaseSpaceGrid {
    std::vector<GridAxis> axes;
    std::vector<std::string> value_names;  // one per value column
    std::vector<double> values;            // num_points * value_names.size()

    long num_points() const {
        long n = 1;
        for (const auto& a : axes) n *= a.count;
        return n;
    }

    std::vector<double> coords(long flat) const {
        std::vector<double> c(axes.size());
        for (int k = static_cast<int>(axes.size()) - 1; k >= 0; --k) {
            const int idx = static_cast<int>(flat % axes[static_cast<std::size_t>(k)].count);
            flat /= axes[static_cast<std::size_t>(k)].count;
            c[static_cast<std::size_t>(k)] = axes[static_cast<std::size_t>(k)].value_at(idx);
        }
        return c;
    }

    // Riemann weight: product of steps over swept axes (fixed axes contribute 1).
    double cell_weight() const {
        double w = 1.0;
        for (const auto& a : axes)
            if (a.count > 1) w *= a.step();
        return w;
    }

    void check_finite() const {
        for (double v : values)
            if (!std::isfinite(v)) throw NumericError("PhaseSpaceGrid: non-finite value");
    }
};

// Shortest-exact decimal formatting keeps outputs byte-stable across runs.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string grid_to_csv(const PhaseSpaceGrid& g, const std::string& manifest_line = "") {
    std::string out;
    if (!manifest_line.empty()) out += "# " + manifest_line + "\n";
    for (std::size_t k = 0; k < g.axes.size(); ++k)out += g.axes[k].name + ",";
    for (std::size_t k = 0; k < g.value_names.size(); ++k)
        out += g.value_names[k] + (k + 1 < g.value_names.size() ? "," : "");
    out += "\n";
    const std::size_t vpp = g.value_names.size();
    for (long p = 0; p < g.num_points(); ++p) {
        const auto c = g.coords(p);
        for (double x : c) out += format_double(x) + ",";
        for (std::size_t k = 0; k < vpp; ++k)
            out += format_double(g.values[static_cast<std::size_t>(p) * vpp + k]) + (k + 1 < vpp ? "," : "");
        out += "\n";
    }
    return out;
}

inline nlohmann::ordered_json grid_to_json(const PhaseSpaceGrid& g) {
    nlohmann::ordered_json j;
    j["axes"] = nlohmann::ordered_json::array();
    for (const auto& a : g.axes)
        j["axes"].push_back({{"name", a.name}, {"min", a.min}, {"max", a.max}, {"count", a.count}});
    j["value_names"] = g.value_names;
    j["values"] = g.values;
    return j;
}

}  // namespace catlab
