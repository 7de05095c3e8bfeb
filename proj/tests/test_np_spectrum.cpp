#include "elastoplasmon/errors.hpp"
#include "elastoplasmon/np_spectrum.hpp"
#include "test_util.hpp"

using namespace epl;
using epl::test::rel_err;

namespace {
const LameParams kBg = LameParams::background(2, 1);
const LameParams kUnit = LameParams::background(1, 1);
}  // namespace

TEST_CASE("neumann-poincare eigenvalues") {
    CHECK(np_eigenvalue(1, 2, kBg).real() == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(np_eigenvalue(1, 1, kBg).real() == doctest::Approx(0.5).epsilon(1e-15));
    for (double l : {0.0, 2.0, 7.5}) CHECK(np_eigenvalue(2, 1, LameParams::background(l, 1.3)).real() == doctest::Approx(0.5));
    CHECK_THROWS_AS(np_eigenvalue(2, 3, LameParams{Complex(-2), Complex(1)}), DegenerateMaterialError);
}

TEST_CASE("eigenvalue asymptotics in n") {
    const double lim = 1.0 / (2 * 4.0);
    for (int n : {10, 100, 1000}) {
        CHECK(std::abs(np_eigenvalue(2, n, kBg).real() + lim) * n < 1.0);
        CHECK(std::abs(np_eigenvalue(3, n, kBg).real() - lim) * n < 1.0);
    }
}

TEST_CASE("single-layer eigenvalues") {
    CHECK(sl_eigenvalue(1, 2, kBg).real() == doctest::Approx(-0.2).epsilon(1e-15));
    CHECK(sl_eigenvalue(3, 1, kBg).real() == doctest::Approx(-1.0 / 12).epsilon(1e-15));
    CHECK_THROWS_AS(sl_eigenvalue(1, 2, LameParams{Complex(1), Complex(0)}), DegenerateMaterialError);
}

TEST_CASE("family-1 traction identity e mu (n-1) = -1/2 + xi") {
    for (int n = 1; n <= 10; ++n)
        CHECK(std::abs(sl_eigenvalue(1, n, kBg) * kBg.mu * double(n - 1) - (-0.5 + np_eigenvalue(1, n, kBg))) < 1e-15);
}

TEST_CASE("resonance denominator values") {
    CHECK(std::abs(resonance_denominator(1, 2, 1.0, -4.0, 0.0, kBg)) < 1e-15);
    for (int n = 1; n <= 6; ++n) {
        const Complex eps(-1.7, 3e-3);
        const Complex simplified = -double(n - 1) / (2 * n + 1) - (double(n + 2) / (2 * n + 1)) / eps;
        CHECK(rel_err(resonance_denominator(1, n, 0.3, -1.7, 3e-3, kBg), simplified) < 1e-14);
    }
    CHECK(rel_err(resonance_denominator(1, 3, 1, -2, 1e-2, kBg), Complex(0.071419643080351582464, 0.0017856696439731864838)) < 1e-13);
    CHECK(rel_err(resonance_denominator(2, 5, 1.5, -0.7, 1e-3, kBg), Complex(0.0030336592395013702125, 0.00045129349359779738462)) < 1e-12);
    CHECK(rel_err(resonance_denominator(3, 4, -2, 0.6, 1e-3, kBg), Complex(-1.2267550262043391162, 0.0012255661169471644183)) < 1e-13);
    // n = 1, family 1: -1/2 + xi vanishes, only the second bracket remains
    for (double e2 : {-3.0, 0.5, 4.0}) CHECK(std::abs(resonance_denominator(1, 1, 1.0, e2, 0.0, kBg)) > 0.2);
}

TEST_CASE("critical values") {
    CHECK(critical_value({BranchKind::C1, 2}, 0.0, kBg) == doctest::Approx(-4.0));
    CHECK(critical_value({BranchKind::C21, 1}, 1.0, kUnit) == doctest::Approx(-0.4));
    CHECK(critical_value({BranchKind::C3, 1}, 1.0, kUnit) == doctest::Approx(-2.0));
    CHECK_THROWS_AS(critical_value({BranchKind::C1, 1}, 0.0, kBg), DegreeError);
    CHECK_THROWS_AS(critical_value({BranchKind::C22, 1}, 0.0, kBg), DegreeError);
    // (2n^2+1) eps2 + 2n^2 - 2 = 0 at n = 2, eps2 = -2/3
    CHECK_THROWS_AS(critical_value({BranchKind::C3, 2}, -2.0 / 3.0, kBg), PoleError);
    CHECK(matches_critical(-4.0 + 1e-9, -4.0));
    CHECK_FALSE(matches_critical(-4.0 + 1e-8, -4.0));
}

TEST_CASE("root identity on non-degenerate branches") {
    for (int n = 1; n <= 10; ++n) {
        if (n >= 2) {
            const double c1 = critical_value({BranchKind::C1, n}, 0, kBg);
            CHECK(std::abs(resonance_denominator(1, n, 1.0, c1, 0.0, kBg)) <= 1e-12);
            const double c22 = critical_value({BranchKind::C22, n}, 0, kBg);
            CHECK(std::abs(resonance_denominator(2, n, 1.0, c22, 0.0, kBg)) <= 1e-12);
        }
        const double c21 = critical_value({BranchKind::C21, n}, 1.0, kBg);
        CHECK(std::abs(resonance_denominator(2, n, 1.0, c21, 0.0, kBg)) <= 1e-12);
        for (double e2 : {-3.0, 2.0}) {
            const double c3 = critical_value({BranchKind::C3, n}, e2, kBg);
            CHECK(std::abs(resonance_denominator(3, n, c3, e2, 0.0, kBg)) <= 1e-12);
        }
    }
}

TEST_CASE("C3 at eps2 = 1 makes the plasmon lambda + 2 mu vanish") {
    for (int n = 1; n <= 4; ++n) {
        const double c3 = critical_value({BranchKind::C3, n}, 1.0, kBg);
        CHECK(c3 == doctest::Approx(-1.0));
        CHECK_THROWS_AS(resonance_denominator(3, n, c3, 1.0, 0.0, kBg), DegenerateMaterialError);
    }
}

TEST_CASE("denominator scales linearly in delta at criticality") {
    const double c = critical_value({BranchKind::C1, 3}, 0, kBg);
    const double a = std::abs(resonance_denominator(1, 3, 1.0, c, 1e-8, kBg));
    const double b = std::abs(resonance_denominator(1, 3, 1.0, c, 1e-3, kBg));
    CHECK(std::log(b / a) / std::log(1e5) == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("classify violation") {
    CHECK(classify_violation(1, critical_value({BranchKind::C1, 3}, 0, kBg), kBg) != Convexity::BothHold);
    CHECK(classify_violation(1, -0.4, kUnit) == Convexity::FirstBroken);
    CHECK(classify_violation(1, 1, kBg) == Convexity::BothHold);
}

TEST_CASE("dissipation weights") {
    const auto cfg = PlasmonConfig::make(1, 1, 1e-3, kBg);
    CHECK(dissipation_weight(1, 1, cfg) == 0.0);
    CHECK(dissipation_weight(2, 1, cfg) == 0.0);
    CHECK(dissipation_weight(3, 2, cfg) == doctest::Approx(0.00003999996000003999996).epsilon(1e-12));
    CHECK(rel_err(weight_closed_form(3, 2, cfg), dissipation_weight(3, 2, cfg)) <= 1e-12);
    const auto cfg2 = PlasmonConfig::make(0.5, -1.5, 1e-2, kBg);
    CHECK(dissipation_weight(2, 4, cfg2) == doctest::Approx(0.00042990483351127934425).epsilon(1e-12));
    for (int f = 1; f <= 3; ++f)
        for (int n = 1; n <= 12; ++n)
            CHECK(std::abs(weight_closed_form(f, n, cfg2) - dissipation_weight(f, n, cfg2)) <=
                  1e-12 * std::abs(dissipation_weight(f, n, cfg2)));
}

TEST_CASE("literal family-1 weight with eps1 disagrees when eps1 != eps2") {
    const auto cfg = PlasmonConfig::make(3.0, -1.5, 1e-2, kBg);
    CHECK(rel_err(weight_closed_form_literal(1, 3, cfg), dissipation_weight(1, 3, cfg)) > 1e-2);
}

TEST_CASE("d1 is positive away from its trivial zeros") {
    for (double e1 : {-10.0, -1.0, 0.0, 3.0})
        for (double e2 : {-7.0, 0.0, 2.0})
            for (int n : {1, 2, 17, 50}) {
                const double d1 = d_coefficients(n, PlasmonConfig::make(e1, e2, 1e-3, kBg)).d1;
                // quadratic form in (eps1, eps2); at n = 1 only the eps2^2 term survives
                if ((e1 == 0.0 && e2 == 0.0) || (n == 1 && e2 == 0.0))
                    CHECK(d1 == 0.0);
                else
                    CHECK(d1 > 0.0);
            }
}

TEST_CASE("scan resonant degrees") {
    auto r = scan_resonant_degrees(7, -4, kBg, 10);
    REQUIRE(r.size() == 1);
    CHECK(r[0].family == 1);
    CHECK(r[0].n == 2);
    CHECK(r[0].branch.kind == BranchKind::C1);
    CHECK(scan_resonant_degrees(2, 2, kBg, 10).empty());

    // c3 at eps2 = -3 is -3/7 for both n = 2 and n = 5
    const double c3 = critical_value({BranchKind::C3, 2}, -3.0, kBg);
    CHECK(c3 == doctest::Approx(-3.0 / 7.0).epsilon(1e-15));
    r = scan_resonant_degrees(c3, -3.0, kBg, 10);
    REQUIRE(r.size() == 2);
    CHECK(r[0].family == 3);
    CHECK(r[0].n == 2);
    CHECK(r[1].n == 5);
    CHECK(r[0].branch.kind == BranchKind::C3);

    // lambda + 2 mu of the plasmon vanishes on this root, so D is 0/0 and nothing is reported
    CHECK(scan_resonant_degrees(-2.0, 1.0, kUnit, 10).empty());
}
