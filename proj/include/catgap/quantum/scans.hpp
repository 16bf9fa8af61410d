// scans.hpp — spectral scans across Hilbert dimensions: minimal decay rates
// against log N, and cylinder-family masses of slowly damped eigenmodes
#pragma once

#include <cmath>
#include <vector>

#include "catgap/common.hpp"
#include "catgap/classical/coding.hpp"
#include "catgap/quantum/cylinder.hpp"
#include "catgap/quantum/spectrum.hpp"

namespace catgap::qm {

struct GapScanRow {
    int N = 0;
    double gammaMin = 0.0;
    double gammaMinLogN = 0.0;
    int windowModes = 0;  // modes with gamma <= C_window / log N
};

inline std::vector<GapScanRow> gap_scan(const dyn::TorusMap& map, const dyn::DampingProfile& V,
                                        const std::vector<int>& NList, double cWindow) {
    std::vector<GapScanRow> rows;
    rows.reserve(NList.size());
    for (const int N : NList) {
        const DampedPropagator P = build_propagator(map, V, N);
        const auto modes = spectrum(P, /*withVectors=*/false);
        GapScanRow row;
        row.N = N;
        row.gammaMin = modes.front().decayRate;
        row.gammaMinLogN = row.gammaMin * std::log(double(N));
        const double cutoff = cWindow / std::log(double(N));
        for (const auto& m : modes)
            if (m.decayRate <= cutoff) ++row.windowModes;
        rows.push_back(row);
    }
    return rows;
}

struct MassScanRow {
    int N = 0;
    int eigenmodeId = 0;  // index in the (decayRate, phase) ordering
    double gamma = 0.0;
    double massOnW = 0.0;      // Re sum over W of the cylinder functional
    double massOnSigma = 0.0;  // Re sum over Sigma_n(W, tau)
};

struct MassScanResult {
    std::vector<MassScanRow> rows;
    double pressureSumHalf = 0.0;       // sum over W of J^{1/2}
    double pressureThreshold = 0.0;     // e^{-n0 P0 / 2}
    bool pressureHypothesisOk = false;  // the family-level smallness hypothesis
};

// For every eigenmode in the slow-decay window gamma <= cWindow / log N,
// the functional's mass on the family W and on its high-hit-fraction
// refinement at length n. The family hypothesis sum_W J^{1/2} <= e^{-n0 P0/2}
// is evaluated and reported, not assumed.
inline MassScanResult mass_scan(const dyn::TorusMap& map, const dyn::DampingProfile& V,
                                const std::vector<int>& NList, const CylinderFamily& W,
                                double tau, int n, double cWindow, double P0,
                                const sym::WeightTable& weights,
                                double kappa = kDefaultEhrenfestKappa) {
    MassScanResult result;
    result.pressureSumHalf = sym::pressure_sum(W, weights, 0.5);
    result.pressureThreshold = std::exp(-0.5 * double(W.wordLength) * P0);
    result.pressureHypothesisOk = result.pressureSumHalf <= result.pressureThreshold;

    for (const int N : NList) {
        const DampedPropagator P = build_propagator(map, V, N);
        const PartitionOperators props(weights.K, N);
        const auto modes = spectrum(P, /*withVectors=*/true);
        const double cutoff = cWindow / std::log(double(N));
        for (int i = 0; i < int(modes.size()); ++i) {
            const auto& m = modes[std::size_t(i)];
            if (m.decayRate > cutoff) break;  // sorted ascending
            MassScanRow row;
            row.N = N;
            row.eigenmodeId = i;
            row.gamma = m.decayRate;
            row.massOnW = family_mass(m.vector, W, props, P, kappa).real();
            row.massOnSigma = sigma_tau_mass(m.vector, W, tau, n, props, P, kappa).real();
            result.rows.push_back(row);
        }
    }
    return result;
}

}  // namespace catgap::qm
