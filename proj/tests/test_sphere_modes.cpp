#include "elastoplasmon/errors.hpp"
#include "elastoplasmon/np_spectrum.hpp"
#include "elastoplasmon/oracle.hpp"
#include "elastoplasmon/sphere_modes.hpp"
#include "test_util.hpp"

using namespace epl;

namespace {
const LameParams kBg = LameParams::background(2, 1);

double grid_norm(const ModeIndex& idx, double r0) {
    const auto g = SphereGrid::make(24, 48, r0);
    double s = 0;
    for (std::size_t k = 0; k < g.size(); ++k) s += g.weights()[k] * raw_eigenfunction(idx, g.directions()[k]).squaredNorm();
    return s;
}
}  // namespace

TEST_CASE("mode index validation") {
    CHECK_THROWS_AS(ModeIndex::make(4, 1, 0), ArgumentError);
    CHECK_THROWS_AS(ModeIndex::make(1, 0, 0), ArgumentError);
    CHECK_THROWS_AS(ModeIndex::make(1, 2, 3), ArgumentError);
    CHECK_FALSE(ModeIndex{3, 1, 1}.has_eigenfunction());
    const auto modes = all_modes(2);
    CHECK(modes.size() == 3 + 5 + 3 + 5 + 1 + 3);
    CHECK(std::is_sorted(modes.begin(), modes.end()));
}

TEST_CASE("spherical harmonics") {
    CHECK(std::abs(spherical_harmonic(0, 0, Vec3(0.6, 0, 0.8)) - 1.0 / std::sqrt(4 * kPi)) < 1e-15);
    CHECK(std::abs(spherical_harmonic(1, 0, Vec3(0, 0, 1)) - std::sqrt(3.0 / (4 * kPi))) < 1e-15);
    const auto g = SphereGrid::make(16, 32);
    double s = 0;
    Complex cross = 0;
    for (std::size_t k = 0; k < g.size(); ++k) {
        const Complex y = spherical_harmonic(3, 2, g.directions()[k]);
        s += g.weights()[k] * std::norm(y);
        cross += g.weights()[k] * y * std::conj(spherical_harmonic(3, -2, g.directions()[k]));
    }
    CHECK(std::abs(s - 1.0) <= 1e-10);
    CHECK(std::abs(cross) <= 1e-12);
}

TEST_CASE("gauss-legendre rule") {
    const auto r = gauss_legendre(10);
    double s = 0, s8 = 0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i], s8 += r.weights[i] * std::pow(r.nodes[i], 8);
    CHECK(s == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(s8 == doctest::Approx(2.0 / 9).epsilon(1e-14));
}

TEST_CASE("eigenfunctions at the pole") {
    const Vec3 pole(0, 0, 1);
    CHECK(raw_eigenfunction({1, 1, 0}, pole).norm() < 1e-15);
    const CVec3 k2 = raw_eigenfunction({2, 1, 0}, pole);
    CHECK(std::abs(k2(2) - std::sqrt(3.0 / (4 * kPi))) < 1e-14);
    CHECK(std::abs(k2(0)) + std::abs(k2(1)) < 1e-15);
}

TEST_CASE("family-1 eigenfunctions are tangential") {
    const auto g = SphereGrid::make(8, 16);
    for (const auto& d : g.directions())
        for (int m = -3; m <= 3; ++m) CHECK(std::abs(raw_eigenfunction({1, 3, m}, d).dot(d.cast<Complex>())) < 1e-14);
}

TEST_CASE("surface gradients match finite differences") {
    const Vec3 d = Vec3(0.3, -0.5, 0.8).normalized();
    const HarmonicTable t(4, d);
    const double h = 1e-6;
    for (int m = -4; m <= 4; ++m) {
        CVec3 fd;
        for (int a = 0; a < 3; ++a) {
            Vec3 e = Vec3::Zero();
            e(a) = h;
            // Y extended as a function of direction; project the gradient to the tangent plane
            fd(a) = (spherical_harmonic(4, m, (d + e).normalized()) - spherical_harmonic(4, m, (d - e).normalized())) / (2 * h);
        }
        const CVec3 tang = fd - d.cast<Complex>() * d.cast<Complex>().dot(fd);
        CHECK((t.surface_gradient(4, m) - tang).norm() < 1e-7);
    }
}

TEST_CASE("L2 norms of eigenfunctions") {
    CHECK(l2_norm_squared({1, 2, 0}, 1.0) == doctest::Approx(6.0).epsilon(1e-14));
    CHECK(l2_norm_squared({2, 1, 0}, 1.0) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(l2_norm_squared({3, 1, 0}, 2.0) == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(grid_norm({1, 2, 0}, 1.0) == doctest::Approx(6.0).epsilon(1e-12));
    CHECK(grid_norm({2, 1, 0}, 1.0) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(grid_norm({3, 1, 0}, 2.0) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(grid_norm({2, 3, -2}, 1.5) == doctest::Approx(l2_norm_squared({2, 3, -2}, 1.5)).epsilon(1e-12));
}

TEST_CASE("H* normalizer") {
    CHECK(hstar_normalizer({1, 1, 0}, 1.0, kBg) == doctest::Approx(std::sqrt(1.5)).epsilon(1e-15));
    // c^2 * (-e r0) * |kappa|^2 = 1 with |kappa|^2 ~ r0^2, so c ~ r0^{-3/2}
    const double ratio = hstar_normalizer({2, 3, 1}, 2.0, kBg) / hstar_normalizer({2, 3, 1}, 1.0, kBg);
    CHECK(ratio == doctest::Approx(std::pow(2.0, -1.5)).epsilon(1e-14));
}

TEST_CASE("H* normalization checked by single-layer quadrature") {
    // -<c kappa, S[c kappa]> on the sphere, with S[c kappa] sampled just inside and extrapolated
    const ModeIndex idx{1, 2, 0};
    ModalField f(2);
    f.set(idx, 1.0);
    const auto rep = verify_eigenrelation(idx, 1.0, kBg, QuadratureSpec{});
    const double c = hstar_normalizer(idx, 1.0, kBg);
    const double pairing = -c * c * rep.measured_e.real() * l2_norm_squared(idx, 1.0);
    CHECK(pairing == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("modal projection") {
    const auto g = SphereGrid::make(12, 24);
    std::vector<CVec3> s(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) s[k] = raw_eigenfunction({1, 3, 1}, g.directions()[k]);
    auto p = project_modal(g, s, 4, kBg);
    CHECK(std::abs(p.field.get({1, 3, 1}) - 1.0 / hstar_normalizer({1, 3, 1}, 1.0, kBg)) < 1e-12);
    double others = 0;
    for (const auto& [k, v] : p.field.entries())
        if (!(k == ModeIndex{1, 3, 1})) others = std::max(others, std::abs(v));
    CHECK(others < 1e-12);

    ModalField two(4);
    two.set({2, 2, -1}, Complex(0.5, 1.5));
    two.set({3, 4, 3}, -2.0);
    p = project_modal(g, synthesize(two, g, kBg), 4, kBg);
    CHECK(std::abs(p.field.get({2, 2, -1}) - Complex(0.5, 1.5)) < 1e-10);
    CHECK(std::abs(p.field.get({3, 4, 3}) + 2.0) < 1e-10);
    CHECK(p.residual < 1e-12);

    CHECK_THROWS_AS(project_modal(SphereGrid::make(6, 12), std::vector<CVec3>(72), 4, kBg), ResolutionError);
}

TEST_CASE("projection of an exterior point-force field decays geometrically") {
    const double rs = 2.5;
    const Vec3 src(0, 0, rs);
    const auto g = SphereGrid::make(40, 80);
    std::vector<CVec3> s(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) s[k] = kelvin_matrix(g.point(k) - src, kBg) * CVec3(1, 0, 0);
    const auto p = project_modal(g, s, 16, kBg);
    std::vector<double> amp;
    for (int n = 4; n <= 14; ++n) {
        double a = 0;
        for (int f = 1; f <= 3; ++f)
            for (int m = -n; m <= n; ++m) {
                const ModeIndex i{f, n, m};
                if (i.has_eigenfunction()) a += std::norm(p.field.get(i) * hstar_normalizer(i, 1.0, kBg));
            }
        amp.push_back(std::sqrt(a));
    }
    // per-degree amplitude ratio approaches 1 / rs
    const double rate = std::pow(amp.back() / amp.front(), 1.0 / (amp.size() - 1));
    CHECK(rate == doctest::Approx(1.0 / rs).epsilon(0.05));
}
