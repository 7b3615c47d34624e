#include "doctest.h"

#include <cmath>

#include "afmsync/model.hpp"
#include "afmsync/sweep.hpp"
#include "test_helpers.hpp"

using namespace afmsync;
using namespace afmsync::testing;

namespace {

SystemParams symmetric_params(double h = 0.0) {
    SystemParams p = default_base_params();
    p.h = h;
    return p;
}

} // namespace

TEST_CASE("symmetric sublattices put the collective modes at h_sp +- h") {
    const double h_sp = std::sqrt(0.0163 * (0.0163 + 2.0));
    for (double h : {0.0, 0.3 * h_sp, 1.1 * h_sp}) {
        const DerivedQuantities dq = derive(symmetric_params(h));
        CHECK(dq.h_sp == doctest::Approx(h_sp).epsilon(1e-14));
        CHECK(dq.omega_alpha == doctest::Approx(h_sp + h).epsilon(1e-12));
        CHECK(dq.omega_beta == doctest::Approx(h_sp - h).epsilon(1e-12));
    }
}

TEST_CASE("zero magnon-magnon coupling is the identity transform") {
    SystemParams p = symmetric_params(0.04);
    p.g_ab = 0.0;
    p.g_ac = 0.012;
    p.g_bc = 0.007;
    const DerivedQuantities dq = derive(p);
    CHECK(dq.theta == 0.0);
    CHECK(dq.omega_alpha == doctest::Approx(dq.omega_a).epsilon(1e-14));
    CHECK(dq.omega_beta == doctest::Approx(dq.omega_b).epsilon(1e-14));
    CHECK(dq.g_alpha_c == p.g_ac);
    CHECK(dq.g_beta_c == p.g_bc);
}

TEST_CASE("derived quantities satisfy their defining relations on random draws") {
    std::mt19937_64 rng(2001);
    for (int trial = 0; trial < 200; ++trial) {
        const SystemParams p = random_params(rng);
        const DerivedQuantities dq = derive(p);
        CHECK(std::tanh(2.0 * dq.theta) ==
              doctest::Approx(-2.0 * p.g_ab / (dq.omega_a + dq.omega_b)).epsilon(0).scale(1e-12));
        CHECK(dq.omega_alpha - dq.omega_beta ==
              doctest::Approx(dq.omega_a - dq.omega_b).epsilon(0).scale(1e-12));
        CHECK(dq.omega_plus - dq.omega_minus ==
              doctest::Approx(2.0 * p.delta_f).epsilon(0).scale(1e-14));
    }
}

TEST_CASE("the inverse hyperbolic rotation reproduces the magnon sector") {
    std::mt19937_64 rng(2002);
    for (int trial = 0; trial < 200; ++trial) {
        const SystemParams p = random_params(rng);
        const DerivedQuantities dq = derive(p);
        const double mean_collective = 0.5 * (dq.omega_alpha + dq.omega_beta);
        const double half_split = 0.5 * (dq.omega_alpha - dq.omega_beta);
        const double mean_back = mean_collective * std::cosh(2.0 * dq.theta);
        const double g_ab_back = -mean_collective * std::sinh(2.0 * dq.theta);
        CHECK(mean_back + half_split == doctest::Approx(dq.omega_a).epsilon(1e-10));
        CHECK(mean_back - half_split == doctest::Approx(dq.omega_b).epsilon(1e-10));
        CHECK(g_ab_back == doctest::Approx(p.g_ab).epsilon(0).scale(1e-10));
        // couplings invert with the opposite rotation
        const double ch = std::cosh(dq.theta), sh = std::sinh(dq.theta);
        CHECK(dq.g_alpha_c * ch - dq.g_beta_c * sh ==
              doctest::Approx(p.g_ac).epsilon(0).scale(1e-10));
        CHECK(-dq.g_alpha_c * sh + dq.g_beta_c * ch ==
              doctest::Approx(p.g_bc).epsilon(0).scale(1e-10));
    }
}

TEST_CASE("equal photon couplings collapse the effective couplings exactly") {
    std::mt19937_64 rng(2003);
    for (int trial = 0; trial < 50; ++trial) {
        SystemParams p = random_params(rng);
        p.g_bc = p.g_ac;
        const DerivedQuantities dq = derive(p);
        CHECK(dq.g_alpha_c == dq.g_beta_c); // bitwise by commutativity
        CHECK(dq.g_alpha_c == doctest::Approx(p.g_ac * std::exp(dq.theta)).epsilon(1e-13));
    }
}

TEST_CASE("effective coupling decreases strictly with the magnon-magnon coupling") {
    SystemParams p = symmetric_params(0.02);
    double prev = 1e300;
    for (double g_ab : linspace(0.8, 0.999, 50)) {
        p.g_ab = g_ab;
        const DerivedQuantities dq = derive(p);
        CHECK(dq.g_alpha_c < prev);
        prev = dq.g_alpha_c;
    }
}

TEST_CASE("oversized magnon-magnon coupling raises BogoliubovDivergence") {
    SystemParams p = symmetric_params();
    p.g_ab = 1.02; // above (omega_a + omega_b)/2 = 1.0163
    CHECK_THROWS_AS(derive(p), Error);
    p.g_ab = 1.0163;
    CHECK_THROWS_AS(derive(p), Error);
}

TEST_CASE("decoupled drift matrix is three damped rotation blocks") {
    SystemParams p = symmetric_params(0.03);
    p.g_ab = p.g_ac = p.g_bc = 0.0;
    const DriftMatrix a = build_drift_matrix(p);
    const DerivedQuantities dq = derive(p);
    const double freq[3] = {dq.omega_a, dq.omega_b, dq.cavity_frequency};
    const double damp[3] = {p.kappa_a, p.kappa_b, p.kappa_c};
    for (std::size_t b = 0; b < 3; ++b) {
        CHECK(a.a(2 * b, 2 * b) == -damp[b]);
        CHECK(a.a(2 * b, 2 * b + 1) == freq[b]);
        CHECK(a.a(2 * b + 1, 2 * b) == -freq[b]);
        CHECK(a.a(2 * b + 1, 2 * b + 1) == -damp[b]);
    }
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j)
            if (i / 2 != j / 2) CHECK(a.a(i, j) == 0.0);
}

TEST_CASE("bright cavity entry sits at 0.9 h_sp for the published set") {
    SystemParams p = symmetric_params();
    p.cavity_mode = CavityMode::Bright;
    const DriftMatrix a = build_drift_matrix(p);
    const double h_sp = derive(p).h_sp;
    CHECK(a.a(4, 5) == doctest::Approx(0.9 * h_sp).epsilon(1e-13));
    CHECK(a.a(5, 4) == doctest::Approx(-0.9 * h_sp).epsilon(1e-13));
}

TEST_CASE("drift matrix matches the hand-transcribed entry table") {
    std::mt19937_64 rng(2004);
    for (int trial = 0; trial < 100; ++trial) {
        const SystemParams p = random_params(rng);
        const DerivedQuantities dq = derive(p);
        const DriftMatrix built = build_drift_matrix(p);
        const double wa = dq.omega_a, wb = dq.omega_b, wc = dq.cavity_frequency;
        // transcribed independently of the implementation
        const double expected[6][6] = {
            {-p.kappa_a, wa, 0, -p.g_ab, 0, -p.g_ac},
            {-wa, -p.kappa_a, -p.g_ab, 0, -p.g_ac, 0},
            {0, -p.g_ab, -p.kappa_b, wb, 0, p.g_bc},
            {-p.g_ab, 0, -wb, -p.kappa_b, -p.g_bc, 0},
            {0, -p.g_ac, 0, p.g_bc, -p.kappa_c, wc},
            {-p.g_ac, 0, -p.g_bc, 0, -wc, -p.kappa_c},
        };
        for (std::size_t i = 0; i < 6; ++i)
            for (std::size_t j = 0; j < 6; ++j) CHECK(built.a(i, j) == expected[i][j]);
        CHECK(built.a.trace() ==
              doctest::Approx(-2.0 * (p.kappa_a + p.kappa_b + p.kappa_c)).epsilon(0).scale(1e-12));
    }
}

TEST_CASE("bright and dark drift matrices differ only in the cavity frequency entries") {
    std::mt19937_64 rng(2005);
    for (int trial = 0; trial < 50; ++trial) {
        SystemParams p = random_params(rng);
        p.cavity_mode = CavityMode::Bright;
        const Matrix bright = build_drift_matrix(p).a;
        p.cavity_mode = CavityMode::Dark;
        const Matrix dark = build_drift_matrix(p).a;
        for (std::size_t i = 0; i < 6; ++i)
            for (std::size_t j = 0; j < 6; ++j) {
                if ((i == 4 && j == 5) || (i == 5 && j == 4)) continue;
                CHECK(bright(i, j) == dark(i, j));
            }
        CHECK(bright(4, 5) - dark(4, 5) == doctest::Approx(2.0 * p.delta_f).epsilon(1e-14));
    }
}

TEST_CASE("noise matrix carries the damping rates twice each") {
    SystemParams p = symmetric_params();
    const NoiseMatrix d = build_noise_matrix(p);
    const double expected[6] = {0.001, 0.001, 0.001, 0.001, 0.003, 0.003};
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(d.d(i, i) == expected[i]);
        for (std::size_t j = 0; j < 6; ++j)
            if (i != j) CHECK(d.d(i, j) == 0.0);
    }

    p.kappa_a = p.kappa_b = p.kappa_c = 0.42;
    const NoiseMatrix uniform_d = build_noise_matrix(p);
    CHECK(frobenius_distance(uniform_d.d, 0.42 * Matrix::identity(6)) == 0.0);
}

TEST_CASE("noise matrix is diagonal positive definite for random draws") {
    std::mt19937_64 rng(2006);
    for (int trial = 0; trial < 100; ++trial) {
        const NoiseMatrix d = build_noise_matrix(random_params(rng));
        for (std::size_t i = 0; i < 6; ++i) {
            CHECK(d.d(i, i) > 0.0);
            for (std::size_t j = 0; j < 6; ++j)
                if (i != j) CHECK(d.d(i, j) == 0.0);
        }
    }
}

TEST_CASE("geometric coupling scales as the square root of spins over volume") {
    const double base = coupling_from_geometry(0.5, 1e20, 2e-9, 6.0e10);
    CHECK(coupling_from_geometry(0.5, 4e20, 2e-9, 6.0e10) ==
          doctest::Approx(2.0 * base).epsilon(1e-13));
    CHECK(coupling_from_geometry(0.5, 1e20, 8e-9, 6.0e10) ==
          doctest::Approx(0.5 * base).epsilon(1e-13));
}

TEST_CASE("geometric coupling matches a high-precision recomputation") {
    std::mt19937_64 rng(2007);
    for (int trial = 0; trial < 50; ++trial) {
        const double s = uniform(rng, 0.5, 7.0);
        const double n = uniform(rng, 1e12, 1e22);
        const double vol = uniform(rng, 1e-12, 1e-3);
        const double omega = uniform(rng, 1e6, 1e12);
        const long double mu0 = 4.0e-7L * 3.141592653589793238462643383279502884L;
        const long double exact =
            sqrtl(mu0 * (long double)omega * (long double)s * (long double)n /
                  (2.0L * (long double)vol));
        CHECK(coupling_from_geometry(s, n, vol, omega) ==
              doctest::Approx((double)exact).epsilon(1e-12));
    }
}

TEST_CASE("geometric coupling rejects non-positive inputs") {
    CHECK_THROWS_AS(coupling_from_geometry(0.0, 1.0, 1.0, 1.0), NonPositiveGeometry);
    CHECK_THROWS_AS(coupling_from_geometry(1.0, -1.0, 1.0, 1.0), NonPositiveGeometry);
    CHECK_THROWS_AS(coupling_from_geometry(1.0, 1.0, 0.0, 1.0), NonPositiveGeometry);
    CHECK_THROWS_AS(coupling_from_geometry(1.0, 1.0, 1.0, 0.0), NonPositiveGeometry);
}

TEST_CASE("parameter validation names the offending field") {
    SystemParams p = symmetric_params();
    p.kappa_a = 0.0;
    try {
        p.validate();
        FAIL("expected a validation error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("kappa_a") != std::string::npos);
    }
}
