// damping.hpp — nonnegative damping profiles on the torus: trigonometric,
// grid-sampled, or a flat strip complement; binary grid file I/O
#pragma once

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "catgap/common.hpp"
#include "catgap/classical/torus_map.hpp"

namespace catgap::dyn {

// Flat little-endian float64 array with a 16-byte header (8-byte magic, i64 N).
inline constexpr char kGridMagic[8] = {'C', 'G', 'G', 'R', 'I', 'D', '0', '1'};

inline void write_grid_file(const std::string& path, const std::vector<double>& samples) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ConfigError("grid file: cannot open '" + path + "' for writing");
    os.write(kGridMagic, 8);
    const std::int64_t n = std::int64_t(samples.size());
    os.write(reinterpret_cast<const char*>(&n), 8);
    os.write(reinterpret_cast<const char*>(samples.data()), std::streamsize(8 * samples.size()));
}

inline std::vector<double> read_grid_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ConfigError("grid file: cannot open '" + path + "'");
    char magic[8];
    is.read(magic, 8);
    if (!is || std::memcmp(magic, kGridMagic, 8) != 0)
        throw ConfigError("grid file: bad magic in '" + path + "'");
    std::int64_t n = 0;
    is.read(reinterpret_cast<char*>(&n), 8);
    if (!is || n < 1) throw ConfigError("grid file: bad length in '" + path + "'");
    std::vector<double> samples(static_cast<std::size_t>(n));
    is.read(reinterpret_cast<char*>(samples.data()), std::streamsize(8 * samples.size()));
    if (!is) throw ConfigError("grid file: truncated data in '" + path + "'");
    return samples;
}

// V >= 0 as a function of position. Three closed forms:
//   trig  — nonnegative trigonometric polynomial
//   grid  — samples on a uniform grid, nearest-left lookup
//   strip — v0 outside one partition cell, 0 on it (the flat-bottomed well
//           used for the undamped-cell scans; an indicator has no trig form)
struct DampingProfile {
    enum class Kind { Trig, Grid, Strip };

    Kind kind = Kind::Trig;
    TrigPoly trig;                 // Kind::Trig
    std::vector<double> samples;   // Kind::Grid
    int stripCells = 1;            // Kind::Strip: partition cell count
    int undampedCell = 0;          //   index of the cell where V = 0
    double stripLevel = 0.0;       //   level v0 elsewhere

    static DampingProfile zero() {
        DampingProfile v;
        v.kind = Kind::Trig;
        return v;
    }

    static DampingProfile constant(double v0) {
        DampingProfile v;
        v.kind = Kind::Trig;
        v.trig.constant = v0;
        v.validate();
        return v;
    }

    static DampingProfile from_trig(TrigPoly t) {
        DampingProfile v;
        v.kind = Kind::Trig;
        v.trig = std::move(t);
        v.validate();
        return v;
    }

    static DampingProfile from_grid(std::vector<double> s) {
        DampingProfile v;
        v.kind = Kind::Grid;
        v.samples = std::move(s);
        v.validate();
        return v;
    }

    static DampingProfile strip(int cells, int undamped, double level) {
        DampingProfile v;
        v.kind = Kind::Strip;
        v.stripCells = cells;
        v.undampedCell = undamped;
        v.stripLevel = level;
        v.validate();
        return v;
    }

    double operator()(double x) const {
        x = wrap01(x);
        switch (kind) {
            case Kind::Trig:
                return trig(x);
            case Kind::Grid: {
                const std::size_t n = samples.size();
                std::size_t i = std::size_t(x * double(n));
                if (i >= n) i = n - 1;
                return samples[i];
            }
            case Kind::Strip: {
                int i = int(std::floor(x * stripCells));
                if (i >= stripCells) i = stripCells - 1;
                return i == undampedCell ? 0.0 : stripLevel;
            }
        }
        return 0.0;
    }

    void validate() const {
        switch (kind) {
            case Kind::Trig: {
                // dense scan; a trig polynomial that dips below zero anywhere
                // on a 1/(8m) grid dips visibly
                const int m = int(std::max(trig.cosCoef.size(), trig.sinCoef.size()));
                const int G = std::max(64, 64 * (m + 1));
                for (int i = 0; i < G; ++i)
                    if (trig(double(i) / G) < -1e-12)
                        throw ConfigError("DampingProfile: trig profile is negative");
                break;
            }
            case Kind::Grid:
                if (samples.empty()) throw ConfigError("DampingProfile: empty grid");
                for (const double v : samples)
                    if (v < 0.0) throw ConfigError("DampingProfile: negative grid sample");
                break;
            case Kind::Strip:
                if (stripCells < 1 || undampedCell < 0 || undampedCell >= stripCells)
                    throw ConfigError("DampingProfile: bad strip layout");
                if (stripLevel < 0.0) throw ConfigError("DampingProfile: negative strip level");
                break;
        }
    }
};

}  // namespace catgap::dyn
