// ruelle.hpp — entropy vs integrated expansion check for Markov measures
#pragma once

#include <json.hpp>

#include "catgap/common.hpp"
#include "catgap/thermo/markov.hpp"

namespace catgap::thermo {

// h(mu) <= -integral of log J^u d mu, for log J^u <= 0 on admissible pairs.
struct RuelleReport {
    double lhs = 0.0;  // entropy
    double rhs = 0.0;  // -integral of logJu
    bool satisfied = false;

    double slack() const { return rhs - lhs; }

    nlohmann::json to_json() const {
        return {{"lhs", lhs}, {"rhs", rhs}, {"satisfied", satisfied}, {"slack", slack()}};
    }
};

inline RuelleReport ruelle_check(const MarkovMeasure& mu, const Potential& logJu,
                                 const Alphabet* alpha = nullptr) {
    for (int a = 0; a < logJu.K; ++a)
        for (int b = 0; b < logJu.K; ++b) {
            if (alpha && !alpha->admissible(a, b)) continue;
            if (logJu.at(a, b) > 0.0)
                throw ConfigError("ruelle_check: log J^u must be <= 0 on admissible pairs");
        }
    RuelleReport r;
    r.lhs = markov_entropy(mu);
    r.rhs = -markov_integral(mu, logJu);
    r.satisfied = r.lhs <= r.rhs + 1e-10;
    return r;
}

}  // namespace catgap::thermo
