#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>

#include "catgap/classical/damping.hpp"
#include "catgap/quantum/checks.hpp"
#include "catgap/quantum/cylinder.hpp"
#include "catgap/quantum/propagator.hpp"
#include "catgap/quantum/quantize.hpp"
#include "catgap/quantum/spectrum.hpp"
#include "catgap/quantum/translations.hpp"

using namespace catgap;
using namespace catgap::qm;
using catgap::dyn::DampingProfile;
using catgap::dyn::TorusMap;
using catgap::sym::SymbolWord;

namespace {

Vec random_state(int N, std::uint64_t seed) {
    Rng rng(seed);
    Vec psi(N);
    for (int j = 0; j < N; ++j) psi(j) = Cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
    psi.normalize();
    return psi;
}

DampingProfile mild_trig() {
    dyn::TrigPoly t;
    t.cosCoef = {0.3};
    t.sinCoef = {0.2};
    t.constant = 0.6;  // stays nonnegative
    return DampingProfile::from_trig(t);
}

}  // namespace

TEST_CASE("quantize: unitarity and exact translation conjugation, odd and even N") {
    TorusMap cat;
    for (const int N : {5, 17, 64, 128}) {
        const Mat U = quantize(cat, N);
        CHECK(detail::unitarity_defect(U) <= 1e-12);
        double worst = 0.0;
        CHECK(detail::egorov_exact(U, cat.A, &worst));
        CHECK(worst <= 1e-12 * N);
    }
}

TEST_CASE("quantize at N=5 maps the basic translation onto its image, phase unimodular") {
    TorusMap cat;
    const int N = 5;
    const Mat U = quantize(cat, N);
    const Mat lhs = U.adjoint() * translation_operator(N, 1, 0) * U;
    const Mat rhs = translation_operator(N, 2, 1);  // image of (1,0) under the matrix
    // proportionality with a unimodular ratio
    int pi = 0, pj = 0;
    double best = 0.0;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            if (std::abs(rhs(i, j)) > best) {
                best = std::abs(rhs(i, j));
                pi = i;
                pj = j;
            }
    const Cplx c = lhs(pi, pj) / rhs(pi, pj);
    CHECK(std::abs(std::abs(c) - 1.0) < 1e-12);
    CHECK((lhs - c * rhs).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("quantize rejects non-hyperbolic and reports inadmissible dimensions") {
    CHECK_THROWS_AS(quantize(TorusMap(1, 1, 0, 1), 8), ConfigError);  // |trace| = 2

    // a symmetric matrix with b = 2 quantizes across parities
    const TorusMap wide(1, 2, 2, 5);
    for (const int N : {9, 12}) CHECK(detail::unitarity_defect(quantize(wide, N)) <= 1e-12);

    // non-symmetric matrices cannot satisfy the literal conjugation contract
    try {
        quantize(TorusMap(2, 1, 3, 2), 8);
        FAIL("expected rejection");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("admissible N") != std::string::npos);
    }
}

TEST_CASE("damped propagator: undamped limit, constant damping, determinant sum rule") {
    TorusMap cat;
    const int N = 64;
    const Mat U = quantize(cat, N);

    const auto undamped = damped_propagator(U, DampingProfile::zero(), N);
    const auto modes0 = spectrum(undamped, true);
    for (const auto& m : modes0) CHECK(std::abs(m.decayRate) <= 1e-10);

    const auto flat = damped_propagator(U, DampingProfile::constant(0.35), N);
    for (const auto& m : spectrum(flat, true))
        CHECK(m.decayRate == doctest::Approx(0.35).epsilon(1e-10));

    const auto generic = damped_propagator(U, mild_trig(), N);
    const auto modes = spectrum(generic, true);
    double sumGamma = 0.0;
    for (const auto& m : modes) sumGamma += m.decayRate;
    CHECK(std::abs(sumGamma - generic.V.sum()) < 1e-8);
    // decay rates sandwiched by the damping range
    for (const auto& m : modes) {
        CHECK(m.decayRate >= generic.minDamping() - 1e-8);
        CHECK(m.decayRate <= generic.maxDamping() + 1e-8);
    }

    dyn::TrigPoly neg;
    neg.constant = -0.1;
    DampingProfile bad;
    bad.kind = DampingProfile::Kind::Trig;
    bad.trig = neg;
    CHECK_THROWS_AS(damped_propagator(U, bad, N), ConfigError);
}

TEST_CASE("damping placement: D U and U D are similar, spectra match") {
    TorusMap cat;
    const int N = 48;
    const Mat U = quantize(cat, N);
    const auto P = damped_propagator(U, mild_trig(), N);
    const Mat alt = P.U * P.D.cast<Cplx>().asDiagonal();  // damp before the map
    Mat work = alt;
    Vec lambdaAlt(N);
    LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'N', N, work.data(), N, lambdaAlt.data(), nullptr, 1,
                  nullptr, 1);
    auto sorted = [](Vec v) {
        std::vector<Cplx> s(v.data(), v.data() + v.size());
        std::sort(s.begin(), s.end(), [](Cplx a, Cplx b) {
            if (std::abs(std::abs(a) - std::abs(b)) > 1e-12) return std::abs(a) < std::abs(b);
            return std::arg(a) < std::arg(b);
        });
        return s;
    };
    const auto a = sorted(lambdaAlt);
    Mat work2 = P.M;
    Vec lambda(N);
    LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'N', N, work2.data(), N, lambda.data(), nullptr, 1,
                  nullptr, 1);
    const auto b = sorted(lambda);
    for (int i = 0; i < N; ++i) CHECK(std::abs(a[std::size_t(i)] - b[std::size_t(i)]) < 1e-9);
}

TEST_CASE("unitary limit: weak damping moves the spectrum by at most the diagonal defect") {
    TorusMap cat;
    const int N = 96;
    const Mat U = quantize(cat, N);
    const auto undamped = damped_propagator(U, DampingProfile::zero(), N);
    const auto modes0 = spectrum(undamped, false);

    dyn::TrigPoly t;
    t.cosCoef = {4e-4};
    t.constant = 5e-4;
    const auto weak = damped_propagator(U, DampingProfile::from_trig(t), N);
    const auto modes1 = spectrum(weak, false);
    const double defect = (weak.D - Eigen::VectorXd::Ones(N)).cwiseAbs().maxCoeff();

    auto hausdorff = [&](const std::vector<EigenmodeRecord>& A,
                         const std::vector<EigenmodeRecord>& B) {
        double worst = 0.0;
        for (const auto& x : A) {
            double nearest = 1e18;
            for (const auto& y : B) nearest = std::min(nearest, std::abs(x.eigenvalue - y.eigenvalue));
            worst = std::max(worst, nearest);
        }
        return worst;
    };
    const double h = std::max(hausdorff(modes0, modes1), hausdorff(modes1, modes0));
    CHECK(h <= defect + 1e-12);
}

TEST_CASE("spectrum ordering is deterministic and the dense cap guards") {
    TorusMap cat;
    const int N = 40;
    const auto P = damped_propagator(quantize(cat, N), mild_trig(), N);
    const auto a = spectrum(P, true);
    const auto b = spectrum(P, true);
    for (int i = 0; i < N; ++i) {
        CHECK(a[std::size_t(i)].eigenvalue == b[std::size_t(i)].eigenvalue);
        CHECK(a[std::size_t(i)].decayRate >= (i ? a[std::size_t(i) - 1].decayRate : 0.0) - 1e-15);
    }
}

TEST_CASE("partition operators: resolution of identity, orthogonality, idempotence") {
    for (const int K : {3, 4})
        for (const int N : {30, 64}) {
            const PartitionOperators props(K, N);
            Mat sum = Mat::Zero(N, N);
            for (int i = 0; i < K; ++i) {
                const Mat Pi = props.matrix(i);
                sum += Pi;
                CHECK((Pi * Pi - Pi).cwiseAbs().maxCoeff() == 0.0);
                for (int j = 0; j < i; ++j)
                    CHECK((Pi * props.matrix(j)).cwiseAbs().maxCoeff() == 0.0);
            }
            CHECK((sum - Mat::Identity(N, N)).cwiseAbs().maxCoeff() == 0.0);
        }
}

TEST_CASE("cylinder operators: single letter, partition of identity, convention relation") {
    TorusMap cat;
    const int N = 48, K = 4;
    const auto P = damped_propagator(quantize(cat, N), mild_trig(), N);
    const PartitionOperators props(K, N);

    CHECK((cylinder_operator(SymbolWord{2}, props, P) - props.matrix(2)).cwiseAbs().maxCoeff() ==
          0.0);

    for (const int n : {2, 3}) {
        const Mat total = sum_all_cylinders(props, P, n);
        CHECK((total - Mat::Identity(N, N)).cwiseAbs().maxCoeff() < 1e-10);
    }

    // interleaved = M^{n-1} heisenberg
    const SymbolWord w{1, 3, 0};
    const Mat inter = cylinder_operator(w, props, P, CylinderConvention::Interleaved);
    const Mat heis = cylinder_operator(w, props, P, CylinderConvention::Heisenberg);
    Mat lifted = heis;
    for (int t = 0; t < 2; ++t) lifted = P.M * lifted;
    CHECK((inter - lifted).cwiseAbs().maxCoeff() < 1e-12);

    // Ehrenfest cap guards long words
    CHECK_THROWS_AS(cylinder_operator(SymbolWord::constant(0, 30), props, P,
                                      CylinderConvention::Heisenberg, 2.0),
                    CapExceeded);
}

TEST_CASE("undamped conjugation shifts the evolved projectors by one step") {
    TorusMap cat;
    const int N = 40, K = 4;
    const auto P = damped_propagator(quantize(cat, N), DampingProfile::zero(), N);
    const PartitionOperators props(K, N);
    const SymbolWord w{0, 2, 1};
    const Mat Pi = cylinder_operator(w, props, P);
    const Mat conj = P.U.adjoint() * Pi * P.U;
    // direct product with every projector evolved one extra step
    Mat expect = P.U.adjoint() * props.matrix(w[0]) * P.U;
    for (int t = 1; t < w.size(); ++t) {
        Mat evolved = props.matrix(w[t]);
        for (int s = 0; s < t + 1; ++s) evolved = P.U.adjoint() * evolved * P.U;
        expect = evolved * expect;
    }
    CHECK((conj - expect).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("quantum functional: normalization, refinement, unitary shift invariance") {
    TorusMap cat;
    const int N = 64, K = 4;
    const auto P = damped_propagator(quantize(cat, N), mild_trig(), N);
    const PartitionOperators props(K, N);
    const Vec psi = random_state(N, 77);

    // sums to one over all words of each length
    for (const int n : {1, 2, 3}) {
        Cplx total(0.0, 0.0);
        sym::enumerate_words(sym::Alphabet::full_shift(K), n, [&](const SymbolWord& w) {
            total += quantum_functional(psi, w, props, P);
        });
        CHECK(std::abs(total - Cplx(1.0, 0.0)) < 1e-10);
    }

    // refinement: summing the extension letter recovers the parent mass
    sym::enumerate_words(sym::Alphabet::full_shift(K), 2, [&](const SymbolWord& w) {
        Cplx refined(0.0, 0.0);
        for (int s = 0; s < K; ++s) {
            SymbolWord ext = w;
            ext.letters.push_back(sym::Symbol(s));
            refined += quantum_functional(psi, ext, props, P);
        }
        CHECK(std::abs(refined - quantum_functional(psi, w, props, P)) < 1e-12);
    });

    // undamped eigenvector: prepending every block of length p changes nothing
    const auto undamped = damped_propagator(P.U, DampingProfile::zero(), N);
    const auto modes = spectrum(undamped, true);
    const Vec& ev = modes.front().vector;
    const SymbolWord base{1, 2};
    for (const int p : {1, 2}) {
        Cplx shifted(0.0, 0.0);
        sym::enumerate_words(sym::Alphabet::full_shift(K), p, [&](const SymbolWord& beta) {
            shifted += quantum_functional(ev, SymbolWord::concat(beta, base), props, undamped);
        });
        CHECK(std::abs(shifted - quantum_functional(ev, base, props, undamped)) < 1e-10);
    }
}

TEST_CASE("family mass and refinement mass agree with word-by-word sums") {
    TorusMap cat;
    const int N = 48, K = 3;
    const auto P = damped_propagator(quantize(cat, N), mild_trig(), N);
    const PartitionOperators props(K, N);
    const Vec psi = random_state(N, 31);

    Rng rng(9);
    sym::CylinderFamily W(2);
    for (const auto& w : sym::all_words(sym::Alphabet::full_shift(K), 2))
        if (rng.uniform01() < 0.5) W.members.insert(w);
    if (W.empty()) W.insert(SymbolWord{0, 1});

    Cplx direct(0.0, 0.0);
    for (const auto& w : W.members) direct += quantum_functional(psi, w, props, P);
    CHECK(std::abs(family_mass(psi, W, props, P) - direct) < 1e-12);

    // refinement family mass via the dynamic program vs enumeration
    for (const double tau : {0.5, 0.75, 1.0})
        for (const int n : {3, 4, 5}) {
            const auto refined = sym::sigma_p_tau(W, tau, n, sym::Alphabet::full_shift(K));
            Cplx viaEnum(0.0, 0.0);
            for (const auto& w : refined.members)
                viaEnum += quantum_functional(psi, w, props, P);
            const Cplx viaDp = sigma_tau_mass(psi, W, tau, n, props, P);
            CHECK(std::abs(viaDp - viaEnum) < 1e-10);
        }
}

TEST_CASE("matrix-free norm of interleaved products matches the dense norm") {
    TorusMap cat;
    const int N = 40, K = 4;
    const auto P = damped_propagator(quantize(cat, N), DampingProfile::zero(), N);
    const PartitionOperators props(K, N);
    for (const SymbolWord w : {SymbolWord{0, 1}, SymbolWord{2, 0, 3}, SymbolWord{1, 1, 1, 1}}) {
        const Mat X = cylinder_operator(w, props, P, CylinderConvention::Interleaved);
        const double dense = X.jacobiSvd().singularValues()(0);
        const double fast = interleaved_norm(w, props, P);
        CHECK(fast == doctest::Approx(dense).epsilon(1e-9));
    }
}
