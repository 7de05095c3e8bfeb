#include "elastoplasmon/elastic_kernels.hpp"
#include "elastoplasmon/errors.hpp"
#include "test_util.hpp"

using namespace epl;
using epl::test::max_abs;
using epl::test::rel_err;

TEST_CASE("convexity classification") {
    CHECK(convexity_status(2, 1) == Convexity::BothHold);
    CHECK(convexity_status(1, -4) == Convexity::BothBroken);
    CHECK(convexity_status(-1, 1) == Convexity::SecondBroken);
    CHECK(convexity_status(1, -1) == Convexity::FirstBroken);
    CHECK_THROWS_AS(LameParams::background(1, -4), ArgumentError);
    CHECK_THROWS_AS(LameParams::plasmon(1, 1, -1e-3, LameParams::background(2, 1)), ArgumentError);
}

TEST_CASE("kelvin matrix entries") {
    const auto bg = LameParams::background(1, 1);
    const Matrix3C g = kelvin_matrix(Vec3(1, 0, 0), bg);
    CHECK(g(0, 0).real() == doctest::Approx(-1.0 / (4 * kPi)).epsilon(1e-15));
    CHECK(g(1, 1).real() == doctest::Approx(-1.0 / (6 * kPi)).epsilon(1e-15));
    CHECK(std::abs(g(0, 1)) == 0.0);

    const Matrix3C h = kelvin_matrix(Vec3(0.3, -0.4, 0.5), LameParams::background(2, 1));
    CHECK(h(0, 0).real() == doctest::Approx(-0.077933631117349494146).epsilon(1e-14));
    CHECK(h(0, 1).real() == doctest::Approx(0.010128558556767443282).epsilon(1e-14));
    CHECK(h(2, 2).real() == doctest::Approx(-0.091438375859706085189).epsilon(1e-14));
    CHECK(max_abs(h - h.transpose()) == 0.0);
    CHECK_THROWS_AS(kelvin_matrix(Vec3::Zero(), bg), SingularityError);
}

TEST_CASE("kupradze matrix against high-precision closed form") {
    const auto bg = LameParams::background(2, 1);
    const Matrix3C k = kupradze_matrix(Vec3(0.7, 0, 0), 0.05, bg);
    CHECK(rel_err(k(0, 0), Complex(-1.13645113561540903e-01, -2.81802862544493953e-03)) < 1e-12);
    CHECK(rel_err(k(1, 1), Complex(-7.09980091330310314e-02, -2.81771386672900965e-03)) < 1e-12);
    CHECK(rel_err(k(2, 2), Complex(-7.09980091330310314e-02, -2.81771386672900965e-03)) < 1e-12);
    CHECK(std::abs(k(0, 1)) < 1e-15);

    const Matrix3C k2 = kupradze_matrix(Vec3(0.3, -0.4, 0.5), 0.1, bg);
    CHECK(rel_err(k2(0, 0), Complex(-7.77301804047583617e-02, -5.63185475405562821e-03)) < 1e-11);
    CHECK(rel_err(k2(0, 1), Complex(1.01443705847927175e-02, 6.16499848073818630e-07)) < 1e-11);
    CHECK(rel_err(k2(1, 2), Complex(1.69072843079878625e-02, 1.02749974678969775e-06)) < 1e-11);
    CHECK(rel_err(k2(2, 2), Complex(-9.12560078511486517e-02, -5.63267675385306036e-03)) < 1e-11);
    CHECK(max_abs(k2 - k2.transpose()) < 1e-16);
}

TEST_CASE("kupradze at zero frequency is the kelvin matrix") {
    const auto bg = LameParams::background(1, 1);
    const Vec3 x(1, 0, 0);
    CHECK(max_abs(kupradze_matrix(x, 0.0, bg) - kelvin_matrix(x, bg)) == 0.0);
}

TEST_CASE("quasi-static decomposition") {
    const auto bg = LameParams::background(2, 1);
    const Vec3 x(0.7, 0, 0);
    const double w = 0.05;
    const auto m = m_omega(x, w, bg);
    CHECK(max_abs(kupradze_matrix(x, w, bg) - kelvin_matrix(x, bg) - w * m.value) <= 1e-12);

    for (double r : {0.5, 1.0, 2.0}) {
        const Vec3 y = r * Vec3(1, 2, -2) / 3.0;
        const double res = max_abs(kupradze_matrix(y, 0.1, bg) - kelvin_matrix(y, bg) - 0.1 * m_omega(y, 0.1, bg).value);
        CHECK(res <= 1e-10);
    }
}

TEST_CASE("m_omega is finite as omega goes to zero") {
    const auto bg = LameParams::background(1, 1);
    const auto m = m_omega(Vec3(1, 0, 0), 0.0, bg);
    CHECK(std::isfinite(max_abs(m.value)));
    // leading term: -(i/3)[2/c_T^3 + 1/c_L^3] / (4 pi) on the diagonal
    const double cl3 = std::pow(3.0, 1.5);
    CHECK(rel_err(m.value(0, 0), Complex(0, -(2.0 + 1.0 / cl3) / (3 * 4 * kPi))) < 1e-14);
}

TEST_CASE("m_omega truncation residual decreases with the number of terms") {
    const auto bg = LameParams::background(2, 1);
    const Vec3 x(1.5, 0.5, 0.0);
    double prev = std::numeric_limits<double>::infinity();
    const Matrix3C exact = (kupradze_matrix(x, 0.1, bg) - kelvin_matrix(x, bg)) / 0.1;
    for (int nt = 1; nt <= 8; ++nt) {
        const double r = max_abs(m_omega(x, 0.1, bg, nt).value - exact);
        CHECK(r < prev);
        prev = r;
    }
}
