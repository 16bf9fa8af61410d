#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "catgap/classical/coding.hpp"
#include "catgap/thermo/markov.hpp"
#include "catgap/thermo/pressure.hpp"
#include "catgap/thermo/ruelle.hpp"
#include "catgap/thermo/transfer.hpp"

using namespace catgap;
using namespace catgap::thermo;
using catgap::sym::Alphabet;
using catgap::sym::SymbolWord;

namespace {

Alphabet golden_mean() {
    Alphabet a(2);
    a.forbid(1, 1);
    return a;
}

const double kGolden = (1.0 + std::sqrt(5.0)) / 2.0;
const double kCatLambda = (3.0 + std::sqrt(5.0)) / 2.0;

}  // namespace

TEST_CASE("transfer pressure: full shift, golden mean, constant shift covariance") {
    const Alphabet full2 = Alphabet::full_shift(2);
    CHECK(transfer_pressure(full2, Potential(2, 0.0)) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-13));

    CHECK(transfer_pressure(golden_mean(), Potential(2, 0.0)) ==
          doctest::Approx(std::log(kGolden)).epsilon(1e-13));
    CHECK(transfer_pressure(golden_mean(), Potential(2, 0.0)) ==
          doctest::Approx(0.48121182505960347).epsilon(1e-12));

    Rng rng(2);
    Potential phi(3, 0.0);
    for (auto& v : phi.values) v = rng.uniform(-1.0, 1.0);
    const Alphabet full3 = Alphabet::full_shift(3);
    const double base = transfer_pressure(full3, phi);
    for (const double c : {-2.0, 0.31, 5.0})
        CHECK(transfer_pressure(full3, phi.shifted(c)) ==
              doctest::Approx(base + c).epsilon(1e-12));
}

TEST_CASE("transfer pressure rejects reducible adjacency, naming symbols") {
    Alphabet a(3);
    // symbol 2 reaches nothing but itself and cannot be reached from 0 or 1
    a.forbid(0, 2);
    a.forbid(1, 2);
    a.forbid(2, 0);
    a.forbid(2, 1);
    try {
        transfer_pressure(a, Potential(3, 0.0));
        FAIL("expected a config error");
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("2") != std::string::npos);
    }
}

TEST_CASE("brute-force pressure: exactness on the full shift, convergence on golden mean") {
    const Alphabet full2 = Alphabet::full_shift(2);
    for (const int n : {2, 6, 11})
        CHECK(brute_force_pressure(full2, Potential(2, 0.0), n) ==
              doctest::Approx(std::log(2.0)).epsilon(1e-14));

    // single symbol with a loop weight
    const Alphabet one = Alphabet::full_shift(1);
    CHECK(brute_force_pressure(one, Potential(1, 0.37), 5) ==
          doctest::Approx(0.37 * 4.0 / 5.0).epsilon(1e-14));

    const double exact = std::log(kGolden);
    double prev = 1e9;
    for (const int n : {4, 8, 12, 14}) {
        const double est = brute_force_pressure(golden_mean(), Potential(2, 0.0), n);
        const double gap = std::abs(est - exact);
        CHECK(gap < prev);
        prev = gap;
        if (n == 14) CHECK(gap < 0.05);
    }
}

TEST_CASE("parry measure: symmetric full shift, golden mean weights, concentration") {
    const Alphabet full2 = Alphabet::full_shift(2);
    const auto uniform = parry_measure(full2, Potential(2, 0.0));
    for (int a = 0; a < 2; ++a) {
        CHECK(uniform.pi(a) == doctest::Approx(0.5).epsilon(1e-12));
        for (int b = 0; b < 2; ++b) CHECK(uniform.P(a, b) == doctest::Approx(0.5).epsilon(1e-12));
    }

    const auto gm = parry_measure(golden_mean(), Potential(2, 0.0));
    CHECK(gm.P(0, 0) == doctest::Approx(1.0 / kGolden).epsilon(1e-12));
    CHECK(gm.P(0, 1) == doctest::Approx(1.0 / (kGolden * kGolden)).epsilon(1e-12));
    CHECK(gm.P(1, 0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(markov_entropy(gm) == doctest::Approx(std::log(kGolden)).epsilon(1e-12));

    // a large weight on one admissible pair pulls transition mass onto it
    Potential biased(2, 0.0);
    biased.at(0, 1) = 2.5;
    const auto mu = parry_measure(full2, biased);
    CHECK(mu.P(0, 1) > uniform.P(0, 1) + 0.2);
}

TEST_CASE("markov entropy: permutation, uniform, hand-computed chain") {
    // deterministic transitions carry no entropy
    MarkovMeasure perm;
    perm.K = 2;
    perm.transition = {0.0, 1.0, 1.0, 0.0};
    perm.stationary = {0.5, 0.5};
    perm.validate();
    CHECK(markov_entropy(perm) == 0.0);

    const auto uniform = parry_measure(Alphabet::full_shift(2), Potential(2, 0.0));
    CHECK(markov_entropy(uniform) == doctest::Approx(std::log(2.0)).epsilon(1e-13));

    // pi = (5/6, 1/6) by hand; entropy from the closed form
    const auto mu = make_markov(2, {0.9, 0.1, 0.5, 0.5});
    CHECK(mu.pi(0) == doctest::Approx(5.0 / 6.0).epsilon(1e-12));
    const double expect = -(5.0 / 6.0) * (0.9 * std::log(0.9) + 0.1 * std::log(0.1)) -
                          (1.0 / 6.0) * std::log(0.5);
    CHECK(markov_entropy(mu) == doctest::Approx(expect).epsilon(1e-12));
    CHECK(markov_entropy(mu) >= 0.0);
    CHECK(markov_entropy(mu) <= std::log(2.0));
}

TEST_CASE("markov integral: constants, zero, four-term hand sum") {
    const auto uniform = parry_measure(Alphabet::full_shift(2), Potential(2, 0.0));
    CHECK(markov_integral(uniform, Potential(2, 3.25)) == doctest::Approx(3.25).epsilon(1e-13));
    CHECK(markov_integral(uniform, Potential(2, 0.0)) == doctest::Approx(0.0).epsilon(1e-15));

    Potential sum(2, 0.0);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) sum.at(a, b) = a + b;
    CHECK(markov_integral(uniform, sum) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("variational principle: entropy plus integral never beats the pressure") {
    Rng rng(7);
    for (const bool useGolden : {false, true}) {
        const Alphabet alpha = useGolden ? golden_mean() : Alphabet::full_shift(3);
        Potential phi(alpha.K, 0.0);
        for (int a = 0; a < alpha.K; ++a)
            for (int b = 0; b < alpha.K; ++b)
                if (alpha.admissible(a, b)) phi.at(a, b) = rng.uniform(-1.5, 0.5);
        const double P = transfer_pressure(alpha, phi);
        const auto best = parry_measure(alpha, phi);
        CHECK(markov_entropy(best) + markov_integral(best, phi) ==
              doctest::Approx(P).epsilon(1e-11));
        for (int trial = 0; trial < 120; ++trial) {
            Rng tr(Rng::derive(99, std::uint64_t(trial) + (useGolden ? 1000 : 0)));
            const auto nu = random_markov(alpha, tr);
            const double value = markov_entropy(nu) + markov_integral(nu, phi);
            CHECK(value <= P + 1e-10);
        }
    }
}

TEST_CASE("smb estimator: deterministic chains are exact, generic chain converges") {
    // permutation chain: every length-n cylinder has the mass of its starting
    // cell, so every sample reports exactly (1/n) log 2
    MarkovMeasure perm;
    perm.K = 2;
    perm.transition = {0.0, 1.0, 1.0, 0.0};
    perm.stationary = {0.5, 0.5};
    perm.validate();
    const int n = 200;
    CHECK(smb_entropy_estimate(perm, n, 50, 4) ==
          doctest::Approx(std::log(2.0) / n).epsilon(1e-12));

    const auto uniform = parry_measure(Alphabet::full_shift(2), Potential(2, 0.0));
    CHECK(smb_entropy_estimate(uniform, 64, 10, 4) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-13));

    const auto mu = make_markov(2, {0.9, 0.1, 0.5, 0.5});
    const double est = smb_entropy_estimate(mu, 200, 1000, 20260809);
    CHECK(std::abs(est - markov_entropy(mu)) < 0.02);
}

TEST_CASE("ruelle check: equality at the maximizing measure, periodic orbits, random measures") {
    dyn::TorusMap cat;  // [[2,1],[1,1]]
    const Alphabet coded = dyn::golden_square_alphabet();
    const auto weights = dyn::golden_square_weights(cat);
    const Potential logJu = Potential::from_weights(weights, 1.0);

    // the symbolic model's expansion matches the map: top entropy = log lambda
    CHECK(transfer_pressure(coded, Potential(3, 0.0)) ==
          doctest::Approx(std::log(kCatLambda)).epsilon(1e-12));

    const auto maxEnt = parry_measure(coded, Potential(3, 0.0));
    const auto eq = ruelle_check(maxEnt, logJu, &coded);
    CHECK(eq.satisfied);
    CHECK(eq.lhs == doctest::Approx(std::log(kCatLambda)).epsilon(1e-10));
    CHECK(std::abs(eq.lhs - eq.rhs) < 1e-8);

    // a periodic-orbit measure: 2-cycle 0 <-> 1 (both directions admissible)
    MarkovMeasure cycle;
    cycle.K = 3;
    cycle.transition = {0, 1, 0, 1, 0, 0, 1, 0, 0};
    cycle.stationary = {0.5, 0.5, 0.0};
    cycle.validate(&coded);
    const auto per = ruelle_check(cycle, logJu, &coded);
    CHECK(per.lhs == 0.0);
    CHECK(per.rhs > 0.0);
    CHECK(per.satisfied);

    for (int trial = 0; trial < 1200; ++trial) {
        Rng rng(Rng::derive(31, std::uint64_t(trial)));
        const auto nu = random_markov(coded, rng);
        const auto rep = ruelle_check(nu, logJu, &coded);
        CHECK(rep.slack() >= -1e-10);
        CHECK(rep.satisfied);
    }

    Potential bad(3, 0.0);
    bad.at(0, 0) = 0.3;
    CHECK_THROWS_AS(ruelle_check(maxEnt, bad, &coded), ConfigError);
}

TEST_CASE("separated-set pressure on torus orbits: fixed point, constants, cat-map entropy") {
    dyn::TorusMap cat;

    // a sampler stuck at the fixed point: one-element separated set
    auto fixedSampler = [&](std::uint64_t) {
        OrbitSample s;
        s.orbit.assign(11, {0.0, 0.0});
        return s;
    };
    auto zero = [](const std::array<double, 2>&) { return 0.0; };
    const auto repFixed = separated_set_pressure(fixedSampler, zero, 0.05, 10, 50, 1);
    CHECK(repFixed.value == doctest::Approx(0.0).epsilon(1e-14));

    auto orbitSampler = [&](std::uint64_t seed) {
        Rng rng(seed);
        OrbitSample s;
        dyn::Point z{rng.uniform01(), rng.uniform01()};
        for (int t = 0; t <= 10; ++t) {
            s.orbit.push_back({z[0], z[1]});
            z = cat.step(z);
        }
        return s;
    };

    // constant observable factors out of the sum
    auto constF = [](const std::array<double, 2>&) { return 0.23; };
    const auto repC = separated_set_pressure(orbitSampler, constF, 0.12, 10, 4000, 5);
    const auto rep0 = separated_set_pressure(orbitSampler, zero, 0.12, 10, 4000, 5);
    CHECK(repC.value == doctest::Approx(rep0.value + 0.23).epsilon(1e-12));

    // topological entropy of the linear part, calibrated tolerance
    const auto rep = separated_set_pressure(orbitSampler, zero, 0.05, 10, 60000, 9);
    CHECK(std::abs(rep.value - std::log(kCatLambda)) < 0.15);
}

TEST_CASE("entropy stays inside [0, log K] for random measures") {
    for (const int K : {2, 3, 4}) {
        const Alphabet alpha = Alphabet::full_shift(K);
        for (int trial = 0; trial < 300; ++trial) {
            Rng rng(Rng::derive(61, std::uint64_t(K * 1000 + trial)));
            const double h = markov_entropy(random_markov(alpha, rng));
            CHECK(h >= 0.0);
            CHECK(h <= std::log(double(K)) + 1e-12);
        }
    }
}

TEST_CASE("markov measure json round trip and validation") {
    const auto mu = make_markov(2, {0.9, 0.1, 0.5, 0.5});
    const auto j = mu.to_json();
    const auto nu = MarkovMeasure::from_json(nlohmann::json::parse(j.dump()));
    CHECK(nu.P(0, 0) == mu.P(0, 0));
    CHECK(nu.pi(1) == mu.pi(1));

    MarkovMeasure bad = mu;
    bad.transition[0] = 0.8;  // row no longer sums to 1
    CHECK_THROWS_AS(bad.validate(), ContractViolation);
}
