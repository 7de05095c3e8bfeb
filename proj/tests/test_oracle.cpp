#include "elastoplasmon/errors.hpp"
#include "elastoplasmon/oracle.hpp"
#include "elastoplasmon/transmission.hpp"
#include "test_util.hpp"

using namespace epl;

namespace {
const LameParams kBg = LameParams::background(2, 1);
}

TEST_CASE("quadrature spec validation") {
    QuadratureSpec s;
    CHECK_NOTHROW(s.validate());
    s.offsets = {0.1, 0.2};
    CHECK_THROWS_AS(s.validate(), ArgumentError);
}

TEST_CASE("single-layer eigenvalue of family 1, n = 1") {
    const auto r = verify_eigenrelation({1, 1, 0}, 1.0, kBg, QuadratureSpec{});
    CHECK(r.expected_e.real() == doctest::Approx(-1.0 / 3));
    CHECK(r.relative_error <= 1e-4);
    CHECK(r.continuity_gap <= 1e-5);
    // zero interior traction, unit exterior traction
    CHECK(std::abs(r.traction_minus) <= 1e-3);
    CHECK(std::abs(r.traction_plus - 1.0) <= 1e-3);
}

TEST_CASE("single-layer eigenvalue of family 3, n = 2, m = 1") {
    const auto r = verify_eigenrelation({3, 2, 1}, 1.0, kBg, QuadratureSpec{});
    CHECK(r.expected_e.real() == doctest::Approx(-(2.0 + 4.0) / (1.0 * 4.0 * 15.0)));
    CHECK(r.relative_error <= 1e-4);
    CHECK(r.continuity_gap <= 1e-5);
    CHECK(r.traction_error <= 1e-3);
}

TEST_CASE("family 2, n = 1 has zero interior traction") {
    const auto r = verify_eigenrelation({2, 1, 0}, 1.0, kBg, QuadratureSpec{});
    CHECK(std::abs(r.traction_minus) <= 1e-3);
}

TEST_CASE("single layer on a larger sphere") {
    const auto r = verify_eigenrelation({1, 2, 1}, 2.0, kBg, QuadratureSpec{});
    CHECK(r.relative_error <= 1e-4);
}

TEST_CASE("quadrature far field decays like the profile") {
    ModalField d(2);
    d.set({1, 2, 0}, 1.0);
    const Vec3 dir = Vec3(0.6, 0, 0.8);
    const double a = single_layer_quadrature(d, 10.0 * dir, 1.0, kBg, QuadratureSpec{}).norm();
    const double b = single_layer_quadrature(d, 20.0 * dir, 1.0, kBg, QuadratureSpec{}).norm();
    CHECK(a / b == doctest::Approx(8.0).epsilon(1e-8));
    CHECK(single_layer_quadrature(ModalField(2), 0.5 * dir, 1.0, kBg, QuadratureSpec{}).norm() == 0.0);
    CHECK_THROWS_AS(single_layer_quadrature(d, 1.001 * dir, 1.0, kBg, QuadratureSpec{}), AccuracyError);
}

TEST_CASE("traction jump of a mixed density") {
    ModalField d(3);
    int i = 0;
    for (const auto& k : all_modes(3)) d.set(k, Complex(std::sin(1.0 + i), std::cos(2.0 * i))), ++i;
    const auto r = verify_jump(d, 1.0, kBg, QuadratureSpec{});
    CHECK(r.max_defect <= 1e-3);
}

TEST_CASE("volume energy matches the modal energy") {
    const auto cfg = PlasmonConfig::make(1.0, -2.5, 1e-2, kBg);
    ModalField a(3), b(3);
    a.set({1, 3, 0}, 1.0);
    b.set({1, 2, 1}, Complex(0.3, -0.4));
    const DensityPair pa{a, ModalField(3), {}}, pb{b, ModalField(3), {}};
    const double ea = volume_energy(a, cfg);
    CHECK(ea == doctest::Approx(dissipated_energy(pa, cfg)).epsilon(1e-4));
    CHECK(volume_energy(ModalField(3), cfg) == 0.0);
    ModalField ab = a;
    ab.set({1, 2, 1}, Complex(0.3, -0.4));
    CHECK(volume_energy(ab, cfg) == doctest::Approx(ea + volume_energy(b, cfg)).epsilon(1e-6));
}

TEST_CASE("gamma split") {
    const auto r = verify_gamma_split(default_gamma_samples(), kBg, 30);
    CHECK(r.max_residual <= 1e-10);
    std::vector<GammaSample> still;
    for (const auto& s : default_gamma_samples())
        if (s.omega == 0.0) still.push_back(s);
    REQUIRE_FALSE(still.empty());
    CHECK(verify_gamma_split(still, kBg, 30).max_residual == 0.0);
}
