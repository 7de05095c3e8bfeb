#include "elastoplasmon/elastic_kernels.hpp"

#include <cmath>
#include <limits>

#include "elastoplasmon/errors.hpp"

namespace epl {

namespace {

void require_finite(double v, const char* name) {
    if (!std::isfinite(v)) throw ArgumentError(std::string(name) + " must be finite");
}

double norm_or_throw(const Vec3& x) {
    if (!x.allFinite()) throw ArgumentError("evaluation point must be finite");
    double r = x.norm();
    if (r == 0.0) throw SingularityError("fundamental solution evaluated at the source point");
    return r;
}

void require_nondegenerate(const LameParams& p) {
    if (p.mu == 0.0 || p.lambda + 2.0 * p.mu == 0.0)
        throw DegenerateMaterialError("mu = 0 or lambda + 2 mu = 0");
}

// Coefficients of delta_jk r^(n-1) and x_j x_k r^(n-3) in the n-th series term.
struct SeriesTerm {
    Complex diag;
    Complex dyad;
};

SeriesTerm series_term(int n, double omega, Complex cT, Complex cL) {
    const Complex in = std::pow(Complex(0.0, 1.0), n);
    double fact = 1.0;
    for (int k = 2; k <= n; ++k) fact *= k;
    const Complex pT = std::pow(cT, -(n + 2));
    const Complex pL = std::pow(cL, -(n + 2));
    const Complex w = in * std::pow(omega, n) / ((n + 2) * fact);
    return {-w * (double(n + 1) * pT + pL) / (4.0 * kPi), w * double(n - 1) * (pT - pL) / (4.0 * kPi)};
}

Matrix3C assemble(const Vec3& x, double r, int n, const SeriesTerm& t) {
    Matrix3C m = Matrix3C::Identity() * (t.diag * std::pow(r, n - 1));
    if (t.dyad != 0.0) m += (x * x.transpose()).cast<Complex>() * (t.dyad * std::pow(r, n - 3));
    return m;
}

}  // namespace

LameParams LameParams::background(double lambda0, double mu0) {
    require_finite(lambda0, "lambda0");
    require_finite(mu0, "mu0");
    if (convexity_status(lambda0, mu0) != Convexity::BothHold)
        throw ArgumentError("background Lame parameters violate strong convexity");
    return {Complex(lambda0, 0.0), Complex(mu0, 0.0)};
}

LameParams LameParams::plasmon(double eps1, double eps2, double delta, const LameParams& bg) {
    require_finite(eps1, "eps1");
    require_finite(eps2, "eps2");
    require_finite(delta, "delta");
    if (delta < 0.0) throw ArgumentError("loss parameter delta must be nonnegative");
    return {Complex(eps1, delta) * bg.lambda, Complex(eps2, delta) * bg.mu};
}

LameParams LameParams::core(double eps3, double eps4, const LameParams& bg) {
    require_finite(eps3, "eps3");
    require_finite(eps4, "eps4");
    return {eps3 * bg.lambda, eps4 * bg.mu};
}

Complex LameParams::shear_speed() const { return std::sqrt(mu); }
Complex LameParams::pressure_speed() const { return std::sqrt(lambda + 2.0 * mu); }

const char* to_string(Convexity c) {
    switch (c) {
        case Convexity::BothHold: return "BothHold";
        case Convexity::FirstBroken: return "FirstBroken";
        case Convexity::SecondBroken: return "SecondBroken";
        case Convexity::BothBroken: return "BothBroken";
    }
    return "?";
}

Convexity convexity_status(double lambda, double mu) {
    require_finite(lambda, "lambda");
    require_finite(mu, "mu");
    const bool first = mu <= 0.0;
    const bool second = 3.0 * lambda + 2.0 * mu <= 0.0;
    if (first && second) return Convexity::BothBroken;
    if (first) return Convexity::FirstBroken;
    if (second) return Convexity::SecondBroken;
    return Convexity::BothHold;
}

Matrix3C kelvin_matrix(const Vec3& x, const LameParams& p) {
    const double r = norm_or_throw(x);
    require_nondegenerate(p);
    const Complex a = 1.0 / p.mu;
    const Complex b = 1.0 / (p.lambda + 2.0 * p.mu);
    const Complex g1 = 0.5 * (a + b);
    const Complex g2 = 0.5 * (a - b);
    Matrix3C m = Matrix3C::Identity() * (-g1 / (4.0 * kPi * r));
    m -= (x * x.transpose()).cast<Complex>() * (g2 / (4.0 * kPi * r * r * r));
    return m;
}

Matrix3C kupradze_matrix(const Vec3& x, double omega, const LameParams& p, int n_terms) {
    const double r = norm_or_throw(x);
    if (!(omega >= 0.0) || !std::isfinite(omega)) throw ArgumentError("omega must be finite and nonnegative");
    if (n_terms < 1) throw ArgumentError("n_terms must be positive");
    require_nondegenerate(p);
    if (omega == 0.0) return kelvin_matrix(x, p);

    const Complex cT = p.shear_speed();
    const Complex cL = p.pressure_speed();
    if (omega * r / std::abs(cT) < 1e-2) {
        Matrix3C m = Matrix3C::Zero();
        for (int n = 0; n <= n_terms; ++n) m += assemble(x, r, n, series_term(n, omega, cT, cL));
        return m;
    }

    // f(r) = (e^{i kT r} - e^{i kL r}) / r, and d_j d_k f = f'/r (delta - xx/r^2) + f'' xx/r^2.
    const Complex I(0.0, 1.0);
    const Complex kT = omega / cT;
    const Complex kL = omega / cL;
    const Complex eT = std::exp(I * kT * r);
    const Complex eL = std::exp(I * kL * r);
    auto d1 = [&](Complex k, Complex e) { return e * (I * k / r - 1.0 / (r * r)); };
    auto d2 = [&](Complex k, Complex e) {
        return e * (-k * k / r - 2.0 * I * k / (r * r) + 2.0 / (r * r * r));
    };
    const Complex f1 = d1(kT, eT) - d1(kL, eL);
    const Complex f2 = d2(kT, eT) - d2(kL, eL);
    const Matrix3C xx = (x * x.transpose()).cast<Complex>() / (r * r);
    const Matrix3C hess = (Matrix3C::Identity() - xx) * (f1 / r) + xx * f2;
    return Matrix3C::Identity() * (-eT / (4.0 * kPi * p.mu * r)) - hess / (4.0 * kPi * omega * omega);
}

SeriesValue m_omega(const Vec3& x, double omega, const LameParams& p, int n_terms) {
    const double r = norm_or_throw(x);
    if (!(omega >= 0.0) || !std::isfinite(omega)) throw ArgumentError("omega must be finite and nonnegative");
    if (n_terms < 1) throw ArgumentError("n_terms must be positive");
    require_nondegenerate(p);
    const Complex cT = p.shear_speed();
    const Complex cL = p.pressure_speed();

    // Terms are divided by omega analytically: the n-th term carries omega^(n-1).
    Matrix3C m = Matrix3C::Zero();
    for (int n = 1; n <= n_terms; ++n) {
        SeriesTerm t = series_term(n, 1.0, cT, cL);
        const double w = std::pow(omega, n - 1);
        m += assemble(x, r, n, {t.diag * w, t.dyad * w});
    }

    const int nt = n_terms + 1;
    const SeriesTerm next = series_term(nt, 1.0, cT, cL);
    const double first = (std::abs(next.diag) + std::abs(next.dyad)) * std::pow(r, nt - 1) *
                         std::pow(omega, nt - 1);
    const double c_min = std::min(std::abs(cT), std::abs(cL));
    const double q = omega * r / (c_min * (nt + 1));
    const double tail = q < 1.0 ? first / (1.0 - q) : std::numeric_limits<double>::infinity();
    return {m, tail};
}

}  // namespace epl
