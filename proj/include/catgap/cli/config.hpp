// config.hpp — flat sectioned text configuration: parse, canonical form,
// bit-exact round-trip, content hash
#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "catgap/common.hpp"
#include "catgap/classical/damping.hpp"
#include "catgap/classical/torus_map.hpp"
#include "catgap/io/csv.hpp"
#include "catgap/symbolic/alphabet.hpp"

namespace catgap::cli {

struct RunConfig {
    // [map]
    std::array<long long, 4> matrix{2, 1, 1, 1};
    double mapKappa = 0.0;
    std::vector<double> shearCos, shearSin;
    // [partition]
    int K = 4;
    // [damping]
    std::string dampingType = "strip";  // strip | trig | grid | zero
    double stripLevel = 1.0;
    int stripCell = 0;
    std::vector<double> dampCos, dampSin;
    double dampConst = 0.0;
    std::string gridFile;
    // [quantum]
    std::vector<int> NList{64, 128, 256};
    double cWindow = 3.0;
    double ehrenfestKappa = 2.0;
    int quantumK = 2;  // the block count relating the two logarithmic time scales
    // [symbolic]
    int n0 = 6;
    double tau = 0.75;
    double P0 = 0.75;
    double floorLog = -50.0;
    std::uint64_t enumerationCap = sym::kDefaultEnumerationCap;
    int bruteDepth = 12;
    int classicalDepth = 12;
    double cEps = 0.5;
    // [sft] — optional explicit subshift for the pressure/entropy commands;
    // when absent those commands use the map's exact symbolic Markov model
    bool hasSft = false;
    int sftK = 2;
    std::vector<std::pair<int, int>> sftForbid;
    double sftPhiConst = 0.0;
    // [separated]
    double sepEpsilon = 0.05;
    int sepT = 10;
    int sepTrials = 20000;
    // [run]
    std::uint64_t seed = 1;

    dyn::TorusMap map() const {
        dyn::TrigPoly s;
        s.cosCoef = shearCos;
        s.sinCoef = shearSin;
        return dyn::TorusMap(matrix[0], matrix[1], matrix[2], matrix[3], mapKappa, s);
    }

    dyn::DampingProfile damping() const {
        if (dampingType == "zero") return dyn::DampingProfile::zero();
        if (dampingType == "strip") return dyn::DampingProfile::strip(K, stripCell, stripLevel);
        if (dampingType == "trig") {
            dyn::TrigPoly t;
            t.cosCoef = dampCos;
            t.sinCoef = dampSin;
            t.constant = dampConst;
            return dyn::DampingProfile::from_trig(t);
        }
        if (dampingType == "grid") {
            if (!std::filesystem::exists(gridFile))
                throw ConfigError("config: damping grid file '" + gridFile + "' does not exist");
            return dyn::DampingProfile::from_grid(dyn::read_grid_file(gridFile));
        }
        throw ConfigError("config: unknown damping type '" + dampingType + "'");
    }

    sym::Alphabet sft_alphabet() const {
        sym::Alphabet a = sym::Alphabet::full_shift(sftK);
        for (const auto& [x, y] : sftForbid) {
            if (x < 0 || x >= sftK || y < 0 || y >= sftK)
                throw ConfigError("config: forbidden pair outside the alphabet");
            a.forbid(x, y);
        }
        a.validate();
        return a;
    }

    void validate() const {
        map();      // determinant, hyperbolicity, persistence
        damping();  // nonnegativity, file existence
        if (K < 1 || K > 64) throw ConfigError("config: partition K out of range [1,64]");
        if (NList.empty()) throw ConfigError("config: N list is empty");
        for (const int n : NList)
            if (n < 2 || n > 4096) throw ConfigError("config: N out of range [2,4096]");
        if (n0 < 1 || n0 > 32) throw ConfigError("config: n0 out of range [1,32]");
        if (tau < 0.5 || tau > 1.0) throw ConfigError("config: tau out of range [1/2,1]");
        if (P0 <= 0.0 || P0 > 16.0) throw ConfigError("config: P0 out of range (0,16]");
        if (cWindow <= 0.0) throw ConfigError("config: C_window must be positive");
        if (ehrenfestKappa <= 0.0) throw ConfigError("config: quantum kappa must be positive");
        if (quantumK < 1) throw ConfigError("config: quantum k must be >= 1");
        if (bruteDepth < 2 || classicalDepth < 2)
            throw ConfigError("config: depths must be >= 2");
        if (cEps < 0.0) throw ConfigError("config: c_eps must be >= 0");
        if (sepEpsilon <= 0.0 || sepEpsilon >= 0.5)
            throw ConfigError("config: separation epsilon out of range (0,1/2)");
        if (sepT < 1 || sepTrials < 1) throw ConfigError("config: separated-set parameters");
        if (hasSft) sft_alphabet();
    }
};

namespace detail {

inline std::string join_doubles(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += " ";
        s += io::format_double(v[i]);
    }
    return s;
}

inline std::vector<double> parse_doubles(const std::string& s) {
    std::vector<double> out;
    std::istringstream is(s);
    double v;
    while (is >> v) out.push_back(v);
    return out;
}

inline std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

}  // namespace detail

// Canonical text form: fixed section and key order, 17-digit floats.
// parse(canonical(c)) reproduces c bit-exactly.
inline std::string canonical(const RunConfig& c) {
    using io::format_double;
    std::string s;
    s += "[map]\n";
    s += "matrix = " + std::to_string(c.matrix[0]) + " " + std::to_string(c.matrix[1]) + " " +
         std::to_string(c.matrix[2]) + " " + std::to_string(c.matrix[3]) + "\n";
    s += "kappa = " + format_double(c.mapKappa) + "\n";
    if (!c.shearCos.empty()) s += "shear_cos = " + detail::join_doubles(c.shearCos) + "\n";
    if (!c.shearSin.empty()) s += "shear_sin = " + detail::join_doubles(c.shearSin) + "\n";
    s += "[partition]\n";
    s += "K = " + std::to_string(c.K) + "\n";
    s += "[damping]\n";
    s += "type = " + c.dampingType + "\n";
    s += "v0 = " + format_double(c.stripLevel) + "\n";
    s += "cell = " + std::to_string(c.stripCell) + "\n";
    if (!c.dampCos.empty()) s += "cos = " + detail::join_doubles(c.dampCos) + "\n";
    if (!c.dampSin.empty()) s += "sin = " + detail::join_doubles(c.dampSin) + "\n";
    s += "const = " + format_double(c.dampConst) + "\n";
    if (!c.gridFile.empty()) s += "file = " + c.gridFile + "\n";
    s += "[quantum]\n";
    s += "N =";
    for (const int n : c.NList) s += " " + std::to_string(n);
    s += "\n";
    s += "C_window = " + format_double(c.cWindow) + "\n";
    s += "kappa = " + format_double(c.ehrenfestKappa) + "\n";
    s += "k = " + std::to_string(c.quantumK) + "\n";
    s += "[symbolic]\n";
    s += "n0 = " + std::to_string(c.n0) + "\n";
    s += "tau = " + format_double(c.tau) + "\n";
    s += "P0 = " + format_double(c.P0) + "\n";
    s += "floor_log = " + format_double(c.floorLog) + "\n";
    s += "cap = " + std::to_string(c.enumerationCap) + "\n";
    s += "brute_depth = " + std::to_string(c.bruteDepth) + "\n";
    s += "classical_depth = " + std::to_string(c.classicalDepth) + "\n";
    s += "c_eps = " + format_double(c.cEps) + "\n";
    if (c.hasSft) {
        s += "[sft]\n";
        s += "K = " + std::to_string(c.sftK) + "\n";
        if (!c.sftForbid.empty()) {
            s += "forbid =";
            for (const auto& [a, b] : c.sftForbid)
                s += " " + std::to_string(a) + "." + std::to_string(b);
            s += "\n";
        }
        s += "phi_const = " + format_double(c.sftPhiConst) + "\n";
    }
    s += "[separated]\n";
    s += "epsilon = " + format_double(c.sepEpsilon) + "\n";
    s += "T = " + std::to_string(c.sepT) + "\n";
    s += "trials = " + std::to_string(c.sepTrials) + "\n";
    s += "[run]\n";
    s += "seed = " + std::to_string(c.seed) + "\n";
    return s;
}

inline RunConfig parse_config_text(const std::string& text) {
    RunConfig c;
    c.NList.clear();
    std::istringstream is(text);
    std::string line, section;
    int lineNo = 0;
    bool sawN = false;
    while (std::getline(is, line)) {
        ++lineNo;
        const std::string t = detail::trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (t.front() == '[' && t.back() == ']') {
            section = t.substr(1, t.size() - 2);
            if (section == "sft") c.hasSft = true;
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineNo) + ": expected key = value");
        const std::string key = detail::trim(t.substr(0, eq));
        const std::string val = detail::trim(t.substr(eq + 1));
        try {
            if (section == "map") {
                if (key == "matrix") {
                    std::istringstream vs(val);
                    for (auto& m : c.matrix)
                        if (!(vs >> m)) throw ConfigError("matrix needs 4 integers");
                } else if (key == "kappa") c.mapKappa = std::stod(val);
                else if (key == "shear_cos") c.shearCos = detail::parse_doubles(val);
                else if (key == "shear_sin") c.shearSin = detail::parse_doubles(val);
                else throw ConfigError("unknown key");
            } else if (section == "partition") {
                if (key == "K") c.K = std::stoi(val);
                else throw ConfigError("unknown key");
            } else if (section == "damping") {
                if (key == "type") c.dampingType = val;
                else if (key == "v0") c.stripLevel = std::stod(val);
                else if (key == "cell") c.stripCell = std::stoi(val);
                else if (key == "cos") c.dampCos = detail::parse_doubles(val);
                else if (key == "sin") c.dampSin = detail::parse_doubles(val);
                else if (key == "const") c.dampConst = std::stod(val);
                else if (key == "file") c.gridFile = val;
                else throw ConfigError("unknown key");
            } else if (section == "quantum") {
                if (key == "N") {
                    std::istringstream vs(val);
                    int n;
                    while (vs >> n) c.NList.push_back(n);
                    sawN = true;
                } else if (key == "C_window") c.cWindow = std::stod(val);
                else if (key == "kappa") c.ehrenfestKappa = std::stod(val);
                else if (key == "k") c.quantumK = std::stoi(val);
                else throw ConfigError("unknown key");
            } else if (section == "symbolic") {
                if (key == "n0") c.n0 = std::stoi(val);
                else if (key == "tau") c.tau = std::stod(val);
                else if (key == "P0") c.P0 = std::stod(val);
                else if (key == "floor_log") c.floorLog = std::stod(val);
                else if (key == "cap") c.enumerationCap = std::stoull(val);
                else if (key == "brute_depth") c.bruteDepth = std::stoi(val);
                else if (key == "classical_depth") c.classicalDepth = std::stoi(val);
                else if (key == "c_eps") c.cEps = std::stod(val);
                else throw ConfigError("unknown key");
            } else if (section == "sft") {
                if (key == "K") c.sftK = std::stoi(val);
                else if (key == "forbid") {
                    std::istringstream vs(val);
                    std::string tok;
                    while (vs >> tok) {
                        const auto dot = tok.find('.');
                        if (dot == std::string::npos) throw ConfigError("forbid wants a.b pairs");
                        c.sftForbid.emplace_back(std::stoi(tok.substr(0, dot)),
                                                 std::stoi(tok.substr(dot + 1)));
                    }
                } else if (key == "phi_const") c.sftPhiConst = std::stod(val);
                else throw ConfigError("unknown key");
            } else if (section == "separated") {
                if (key == "epsilon") c.sepEpsilon = std::stod(val);
                else if (key == "T") c.sepT = std::stoi(val);
                else if (key == "trials") c.sepTrials = std::stoi(val);
                else throw ConfigError("unknown key");
            } else if (section == "run") {
                if (key == "seed") c.seed = std::stoull(val);
                else throw ConfigError("unknown key");
            } else {
                throw ConfigError("unknown section '" + section + "'");
            }
        } catch (const ConfigError& e) {
            throw ConfigError("config line " + std::to_string(lineNo) + ", [" + section + "] " +
                              key + ": " + e.what());
        } catch (const std::exception& e) {
            throw ConfigError("config line " + std::to_string(lineNo) + ", [" + section + "] " +
                              key + ": " + e.what());
        }
    }
    if (!sawN || c.NList.empty()) c.NList = {64, 128, 256};
    c.validate();
    return c;
}

inline RunConfig load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("config: cannot open '" + path + "'");
    std::stringstream ss;
    ss << is.rdbuf();
    return parse_config_text(ss.str());
}

// FNV-1a over the canonical text
inline std::string config_hash(const RunConfig& c) {
    const std::string s = canonical(c);
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (const unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace catgap::cli
