// torus_map.hpp — hyperbolic toral automorphisms with an optional shear
// perturbation, orbits, tangent cocycle, and the top Lyapunov exponent
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "catgap/common.hpp"

namespace catgap::dyn {

using Point = std::array<double, 2>;  // (x, p) in [0,1)^2

inline double wrap01(double x) {
    double y = x - std::floor(x);
    return y >= 1.0 ? 0.0 : y;  // guard against floor rounding at exact integers
}

// Trigonometric polynomial s(x) = sum_k (a_k cos 2 pi k x + b_k sin 2 pi k x).
struct TrigPoly {
    std::vector<double> cosCoef;  // a_1..a_m
    std::vector<double> sinCoef;  // b_1..b_m
    double constant = 0.0;

    double operator()(double x) const {
        double v = constant;
        for (std::size_t k = 0; k < cosCoef.size(); ++k)
            v += cosCoef[k] * std::cos(2.0 * M_PI * double(k + 1) * x);
        for (std::size_t k = 0; k < sinCoef.size(); ++k)
            v += sinCoef[k] * std::sin(2.0 * M_PI * double(k + 1) * x);
        return v;
    }

    double derivative(double x) const {
        double v = 0.0;
        for (std::size_t k = 0; k < cosCoef.size(); ++k)
            v -= cosCoef[k] * 2.0 * M_PI * double(k + 1) * std::sin(2.0 * M_PI * double(k + 1) * x);
        for (std::size_t k = 0; k < sinCoef.size(); ++k)
            v += sinCoef[k] * 2.0 * M_PI * double(k + 1) * std::cos(2.0 * M_PI * double(k + 1) * x);
        return v;
    }

    // crude sup bound |s'| <= sum 2 pi k (|a_k| + |b_k|)
    double derivative_bound() const {
        double v = 0.0;
        for (std::size_t k = 0; k < cosCoef.size(); ++k)
            v += 2.0 * M_PI * double(k + 1) * std::abs(cosCoef[k]);
        for (std::size_t k = 0; k < sinCoef.size(); ++k)
            v += 2.0 * M_PI * double(k + 1) * std::abs(sinCoef[k]);
        return v;
    }
};

// Area-preserving map (x,p) -> A (x,p) followed by the shear
// p += kappa * s(x') at the image position. The composition keeps an explicit
// inverse; hyperbolicity persists while kappa * |s'| stays small.
struct TorusMap {
    std::array<std::array<long long, 2>, 2> A{{{2, 1}, {1, 1}}};
    double kappa = 0.0;
    TrigPoly shear;

    static constexpr double kAnosovPersistence = 0.5;

    TorusMap() { validate(); }

    TorusMap(long long a, long long b, long long c, long long d, double kap = 0.0,
             TrigPoly s = {})
        : A{{{a, b}, {c, d}}}, kappa(kap), shear(std::move(s)) {
        validate();
    }

    void validate() const {
        const long long det = A[0][0] * A[1][1] - A[0][1] * A[1][0];
        if (det != 1) throw ConfigError("TorusMap: matrix must have determinant 1");
        const long long tr = A[0][0] + A[1][1];
        if (tr <= 2 && tr >= -2) throw ConfigError("TorusMap: |trace| must exceed 2");
        if (kappa < 0.0) throw ConfigError("TorusMap: perturbation amplitude must be >= 0");
        if (kappa * shear.derivative_bound() > kAnosovPersistence)
            throw ConfigError("TorusMap: perturbation exceeds the persistence threshold");
    }

    long long trace() const { return A[0][0] + A[1][1]; }

    // expanding eigenvalue of the linear part
    double lambda_max() const {
        const double t = std::abs(double(trace()));
        return (t + std::sqrt(t * t - 4.0)) / 2.0;
    }

    Point step(const Point& z) const {
        const double x = wrap01(double(A[0][0]) * z[0] + double(A[0][1]) * z[1]);
        double p = double(A[1][0]) * z[0] + double(A[1][1]) * z[1];
        if (kappa != 0.0) p += kappa * shear(x);
        return {x, wrap01(p)};
    }

    Point step_inverse(const Point& z) const {
        double p = z[1];
        if (kappa != 0.0) p -= kappa * shear(z[0]);
        const double d = double(A[1][1]), b = double(A[0][1]);
        const double c = double(A[1][0]), a = double(A[0][0]);
        return {wrap01(d * z[0] - b * p), wrap01(-c * z[0] + a * p)};
    }

    Point iterate(Point z, int t) const {
        for (int i = 0; i < std::abs(t); ++i) z = t >= 0 ? step(z) : step_inverse(z);
        return z;
    }

    // tangent map at z (evaluated before stepping)
    std::array<std::array<double, 2>, 2> jacobian(const Point& z) const {
        std::array<std::array<double, 2>, 2> J{{{double(A[0][0]), double(A[0][1])},
                                                {double(A[1][0]), double(A[1][1])}}};
        if (kappa != 0.0) {
            const double x1 = wrap01(double(A[0][0]) * z[0] + double(A[0][1]) * z[1]);
            const double ds = kappa * shear.derivative(x1);
            // d(shear at image) composed with A
            J[1][0] += ds * J[0][0];
            J[1][1] += ds * J[0][1];
        }
        return J;
    }
};

// Top Lyapunov exponent. The unperturbed branch is exact; the perturbed branch
// runs the tangent cocycle with periodic renormalization.
inline double lyapunov_exponent(const TorusMap& map, const Point& start, long long T) {
    if (T < 1) throw ConfigError("lyapunov_exponent: T must be >= 1");
    if (map.kappa == 0.0) return std::log(map.lambda_max());

    Point z = start;
    std::array<double, 2> v{1.0, 0.6180339887498949};  // generic direction
    double logSum = 0.0;
    for (long long t = 0; t < T; ++t) {
        const auto J = map.jacobian(z);
        const std::array<double, 2> w{J[0][0] * v[0] + J[0][1] * v[1],
                                      J[1][0] * v[0] + J[1][1] * v[1]};
        v = w;
        z = map.step(z);
        if ((t & 15) == 15 || t + 1 == T) {
            const double norm = std::hypot(v[0], v[1]);
            logSum += std::log(norm);
            v[0] /= norm;
            v[1] /= norm;
        }
    }
    const double norm = std::hypot(v[0], v[1]);
    return (logSum + std::log(norm)) / double(T);
}

// One-step backward expansion weight at z: 1 / |dg restricted to the unstable
// direction|. The unstable direction is recovered by pushing a generic vector
// through the cocycle from a backward orbit.
inline double one_step_unstable_jacobian(const TorusMap& map, const Point& z, int settle = 32) {
    if (map.kappa == 0.0) return 1.0 / map.lambda_max();
    Point back = z;
    for (int t = 0; t < settle; ++t) back = map.step_inverse(back);
    std::array<double, 2> v{1.0, 0.6180339887498949};
    Point w = back;
    for (int t = 0; t < settle; ++t) {
        const auto J = map.jacobian(w);
        const std::array<double, 2> u{J[0][0] * v[0] + J[0][1] * v[1],
                                      J[1][0] * v[0] + J[1][1] * v[1]};
        const double n = std::hypot(u[0], u[1]);
        v = {u[0] / n, u[1] / n};
        w = map.step(w);
    }
    // w is now back at z (up to rounding); v approximates the unstable direction
    const auto J = map.jacobian(z);
    const std::array<double, 2> u{J[0][0] * v[0] + J[0][1] * v[1],
                                  J[1][0] * v[0] + J[1][1] * v[1]};
    return 1.0 / std::hypot(u[0], u[1]);
}

}  // namespace catgap::dyn
