// markov.hpp — potentials on transitions, shift-invariant Markov measures,
// entropy and integrals in closed form, and a sampling entropy estimator
#pragma once

#include <cmath>
#include <vector>

#include <json.hpp>

#include "catgap/common.hpp"
#include "catgap/symbolic/alphabet.hpp"
#include "catgap/symbolic/weights.hpp"

namespace catgap::thermo {

using sym::Alphabet;
using sym::SymbolWord;
using sym::WeightTable;

// A function on admissible transitions, phi(a,b).
struct Potential {
    int K = 0;
    std::vector<double> values;  // row-major K*K

    Potential() = default;
    Potential(int k, double c) : K(k), values(std::size_t(k) * k, c) {}
    Potential(int k, std::vector<double> v) : K(k), values(std::move(v)) {
        if (values.size() != std::size_t(K) * K) throw ConfigError("Potential: values must be K*K");
    }

    double at(int a, int b) const { return values[std::size_t(a) * K + b]; }
    double& at(int a, int b) { return values[std::size_t(a) * K + b]; }

    // phi = s * log J, the usual choice being s = 1/2
    static Potential from_weights(const WeightTable& t, double s) {
        Potential phi(t.K, 0.0);
        for (std::size_t i = 0; i < t.logJ.size(); ++i) phi.values[i] = s * t.logJ[i];
        return phi;
    }

    Potential shifted(double c) const {
        Potential out = *this;
        for (auto& v : out.values) v += c;
        return out;
    }

    nlohmann::json to_json() const { return {{"K", K}, {"values", values}}; }
    static Potential from_json(const nlohmann::json& j) {
        return Potential(j.at("K").get<int>(), j.at("values").get<std::vector<double>>());
    }
};

// Row-stochastic transition matrix plus its stationary vector.
struct MarkovMeasure {
    int K = 0;
    std::vector<double> transition;  // row-major K*K
    std::vector<double> stationary;  // length K

    double P(int a, int b) const { return transition[std::size_t(a) * K + b]; }
    double pi(int a) const { return stationary[std::size_t(a)]; }

    void validate(const Alphabet* alpha = nullptr) const {
        if (K < 1 || transition.size() != std::size_t(K) * K || stationary.size() != std::size_t(K))
            throw ContractViolation("MarkovMeasure: bad shapes");
        double piSum = 0.0;
        for (int a = 0; a < K; ++a) {
            if (pi(a) < -1e-15) throw ContractViolation("MarkovMeasure: negative stationary mass");
            piSum += pi(a);
            double rowSum = 0.0;
            for (int b = 0; b < K; ++b) {
                const double v = P(a, b);
                if (v < -1e-15) throw ContractViolation("MarkovMeasure: negative transition");
                if (alpha && !alpha->admissible(a, b) && v != 0.0)
                    throw ContractViolation("MarkovMeasure: mass on a forbidden transition");
                rowSum += v;
            }
            if (std::abs(rowSum - 1.0) > 1e-12)
                throw ContractViolation("MarkovMeasure: row " + std::to_string(a) +
                                        " does not sum to 1");
        }
        if (std::abs(piSum - 1.0) > 1e-12)
            throw ContractViolation("MarkovMeasure: stationary vector does not sum to 1");
        for (int b = 0; b < K; ++b) {
            double s = 0.0;
            for (int a = 0; a < K; ++a) s += pi(a) * P(a, b);
            if (std::abs(s - pi(b)) > 1e-10)
                throw ContractViolation("MarkovMeasure: stationary vector is not invariant");
        }
    }

    nlohmann::json to_json() const {
        return {{"K", K}, {"transition", transition}, {"stationary", stationary}};
    }
    static MarkovMeasure from_json(const nlohmann::json& j) {
        MarkovMeasure m;
        m.K = j.at("K").get<int>();
        m.transition = j.at("transition").get<std::vector<double>>();
        m.stationary = j.at("stationary").get<std::vector<double>>();
        m.validate();
        return m;
    }
};

// Stationary vector of a row-stochastic matrix by lazy power iteration;
// the (P+I)/2 averaging removes any periodicity.
inline std::vector<double> stationary_vector(const std::vector<double>& P, int K) {
    std::vector<double> pi(std::size_t(K), 1.0 / double(K));
    std::vector<double> nxt(static_cast<std::size_t>(K));
    for (int it = 0; it < 200000; ++it) {
        double diff = 0.0, sum = 0.0;
        for (int b = 0; b < K; ++b) {
            double s = 0.0;
            for (int a = 0; a < K; ++a) s += pi[std::size_t(a)] * P[std::size_t(a) * K + b];
            nxt[std::size_t(b)] = 0.5 * (s + pi[std::size_t(b)]);
            sum += nxt[std::size_t(b)];
        }
        for (int b = 0; b < K; ++b) {
            nxt[std::size_t(b)] /= sum;
            diff = std::max(diff, std::abs(nxt[std::size_t(b)] - pi[std::size_t(b)]));
        }
        pi.swap(nxt);
        if (diff < 1e-15) break;
    }
    return pi;
}

inline MarkovMeasure make_markov(int K, std::vector<double> transition,
                                 const Alphabet* alpha = nullptr) {
    MarkovMeasure m;
    m.K = K;
    m.transition = std::move(transition);
    m.stationary = stationary_vector(m.transition, K);
    m.validate(alpha);
    return m;
}

// Dirichlet(1,..,1) rows on admissible transitions; deterministic under the seed.
inline MarkovMeasure random_markov(const Alphabet& alpha, Rng& rng) {
    const int K = alpha.K;
    std::vector<double> P(std::size_t(K) * K, 0.0);
    for (int a = 0; a < K; ++a) {
        double rowSum = 0.0;
        for (int b = 0; b < K; ++b)
            if (alpha.admissible(a, b)) {
                const double e = rng.exp1();
                P[std::size_t(a) * K + b] = e;
                rowSum += e;
            }
        for (int b = 0; b < K; ++b) P[std::size_t(a) * K + b] /= rowSum;
    }
    return make_markov(K, std::move(P), &alpha);
}

// h = -sum_a pi_a sum_b P_ab log P_ab, with 0 log 0 = 0.
inline double markov_entropy(const MarkovMeasure& mu) {
    double h = 0.0;
    for (int a = 0; a < mu.K; ++a)
        for (int b = 0; b < mu.K; ++b) {
            const double p = mu.P(a, b);
            if (p > 0.0) h -= mu.pi(a) * p * std::log(p);
        }
    return h < 0.0 ? 0.0 : h;
}

// integral of a transition potential: sum_{a,b} pi_a P_ab phi(a,b)
inline double markov_integral(const MarkovMeasure& mu, const Potential& phi) {
    double s = 0.0;
    for (int a = 0; a < mu.K; ++a)
        for (int b = 0; b < mu.K; ++b)
            if (mu.P(a, b) > 0.0) s += mu.pi(a) * mu.P(a, b) * phi.at(a, b);
    return s;
}

// log of the cylinder mass mu([w]) = pi_{w0} prod P
inline double log_cylinder_mass(const MarkovMeasure& mu, const SymbolWord& w) {
    if (w.empty()) return 0.0;
    double lg = std::log(mu.pi(w[0]));
    for (int i = 0; i + 1 < w.size(); ++i) lg += std::log(mu.P(w[i], w[i + 1]));
    return lg;
}

// Empirical mean of -(1/n) log mu([w]) over words sampled from mu itself;
// converges to markov_entropy(mu) as n grows.
inline double smb_entropy_estimate(const MarkovMeasure& mu, int n, int samples,
                                   std::uint64_t seed) {
    if (n < 2) throw ConfigError("smb_entropy_estimate: n must be >= 2");
    if (samples < 1) throw ConfigError("smb_entropy_estimate: need at least one sample");
    double acc = 0.0;
    for (int t = 0; t < samples; ++t) {
        Rng rng(Rng::derive(seed, std::uint64_t(t)));
        double logMass = 0.0;
        // sample the initial letter from pi
        double u = rng.uniform01();
        int state = 0;
        for (int a = 0; a < mu.K; ++a) {
            if (mu.pi(a) <= 0.0) continue;
            state = a;
            if (u < mu.pi(a)) break;
            u -= mu.pi(a);
        }
        logMass += std::log(mu.pi(state));
        for (int i = 1; i < n; ++i) {
            double v = rng.uniform01();
            int next = state;
            for (int b = 0; b < mu.K; ++b) {
                if (mu.P(state, b) <= 0.0) continue;
                next = b;
                if (v < mu.P(state, b)) break;
                v -= mu.P(state, b);
            }
            logMass += std::log(mu.P(state, next));
            state = next;
        }
        acc += -logMass / double(n);
    }
    return acc / double(samples);
}

}  // namespace catgap::thermo
