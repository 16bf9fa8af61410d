// weights.hpp — pairwise one-step expansion weights and cylinder weight sums
#pragma once

#include <cmath>
#include <vector>

#include <json.hpp>

#include "catgap/common.hpp"
#include "catgap/symbolic/alphabet.hpp"

namespace catgap::sym {

// Table of log J(a,b): the one-step backward expansion weight attached to the
// transition a -> b, clamped to [floorLog, capLog]. floorLog stands in for the
// weight of transitions whose cells never actually meet; a deep default keeps
// it out of the way of honest sums.
struct WeightTable {
    int K = 0;
    std::vector<double> logJ;  // row-major K*K
    double floorLog = -50.0;
    double capLog = 0.0;

    WeightTable() = default;

    WeightTable(int k, double constantLog, double floorLg = -50.0)
        : K(k), logJ(std::size_t(k) * k, constantLog), floorLog(floorLg), capLog(constantLog) {
        validate();
    }

    WeightTable(int k, std::vector<double> lg, double floorLg, double capLg)
        : K(k), logJ(std::move(lg)), floorLog(floorLg), capLog(capLg) {
        validate();
    }

    double log_at(int a, int b) const { return logJ[std::size_t(a) * K + b]; }
    double& log_at(int a, int b) { return logJ[std::size_t(a) * K + b]; }

    void validate() const {
        if (K < 1) throw ConfigError("WeightTable: K must be >= 1");
        if (logJ.size() != std::size_t(K) * K) throw ConfigError("WeightTable: logJ must be K*K");
        if (!std::isfinite(capLog)) throw ConfigError("WeightTable: capLog must be finite");
        for (const double v : logJ)
            if (v < floorLog - 1e-12 || v > capLog + 1e-12)
                throw ConfigError("WeightTable: entry outside [floorLog, capLog]");
    }

    nlohmann::json to_json() const {
        return nlohmann::json{{"K", K}, {"logJ", logJ}, {"floorLog", floorLog}, {"capLog", capLog}};
    }

    static WeightTable from_json(const nlohmann::json& j) {
        WeightTable t;
        t.K = j.at("K").get<int>();
        t.logJ = j.at("logJ").get<std::vector<double>>();
        t.floorLog = j.at("floorLog").get<double>();
        t.capLog = j.at("capLog").get<double>();
        t.validate();
        return t;
    }
};

// log of the n-step weight J_n(word) = prod over adjacent pairs of J(a,b).
// A length-1 word is the empty product.
inline double log_word_weight(const SymbolWord& w, const WeightTable& t) {
    if (w.size() < 1) throw ConfigError("word_weight: word length must be >= 1");
    double s = 0.0;
    for (int i = 0; i + 1 < w.size(); ++i) s += t.log_at(w[i], w[i + 1]);
    return s;
}

inline double word_weight(const SymbolWord& w, const WeightTable& t) {
    return std::exp(log_word_weight(w, t));
}

}  // namespace catgap::sym
