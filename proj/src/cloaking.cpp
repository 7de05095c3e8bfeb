#include "elastoplasmon/cloaking.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "elastoplasmon/errors.hpp"
#include "elastoplasmon/np_spectrum.hpp"
#include "elastoplasmon/parallel.hpp"
#include "elastoplasmon/sphere_modes.hpp"

namespace epl {

namespace {

void check_shell(const ShellConfig& c) {
    if (!(c.r_i > 0.0) || !(c.r_e > c.r_i) || !std::isfinite(c.r_e)) throw ArgumentError("need 0 < r_i < r_e");
    if (!c.background.is_real() ||
        convexity_status(c.background.lambda.real(), c.background.mu.real()) != Convexity::BothHold)
        throw ArgumentError("background must be real and strongly convex");
    for (double v : {c.eps1, c.eps2, c.eps3, c.eps4})
        if (!std::isfinite(v)) throw ArgumentError("material scalings must be finite");
    if (!std::isfinite(c.delta) || c.delta < 0.0) throw ArgumentError("delta must be finite and nonnegative");
}

Complex e1(int n, Complex mu) { return -1.0 / (mu * double(2 * n + 1)); }

}  // namespace

ShellConfig ShellConfig::make(double r_i, double r_e, double eps1, double eps2, double eps3, double eps4,
                              double delta, const LameParams& bg) {
    ShellConfig c{r_i, r_e, eps1, eps2, eps3, eps4, delta, bg, 0};
    check_shell(c);
    return c;
}

ShellConfig ShellConfig::preset_fixed(int n0, double r_i, double r_e, double delta, const LameParams& bg,
                                      double eps1, double eps3) {
    if (n0 < 2) throw DegreeError("preset degree n0 must exceed 1");
    const double e2 = -double(n0 + 2) / double(n0 - 1);
    ShellConfig c = make(r_i, r_e, eps1, e2, eps3, e2 * e2, delta, bg);
    c.n0 = n0;
    return c;
}

ShellConfig ShellConfig::preset(double r_i, double r_e, double delta, const LameParams& bg, double eps1,
                                double eps3) {
    if (!(r_i > 0.0) || !(r_e > r_i)) throw ArgumentError("need 0 < r_i < r_e");
    return preset_fixed(select_n0(r_i / r_e, delta), r_i, r_e, delta, bg, eps1, eps3);
}

CloakCoefficients shell_coefficients(int n, int m, Complex f, const ShellConfig& cfg) {
    check_shell(cfg);
    if (n < 1 || std::abs(m) > n) throw ArgumentError("invalid (n, m)");
    const Complex mc = cfg.mu_core(), ms = cfg.mu_shell(), m0 = cfg.background.mu;
    const double re = cfg.r_e, rho = cfg.rho();
    CloakCoefficients c{n, m, 0.0, 0.0, 0.0, 0.0, 0.0};
    if (n == 1) {
        c.upsilon = -3.0 * f * mc / re;
        c.varphi = -3.0 * f * ms / re;
        c.d_n = 9.0 * ms * m0;
        return c;
    }
    const double a = n - 1, b = n + 2, k = 2 * n + 1;
    const double rn1 = std::pow(rho, n - 1), r2n1 = std::pow(rho, 2 * n + 1);
    c.d_n = (a * mc + b * ms) * (a * ms + b * m0) + b * a * r2n1 * (mc - ms) * (ms - m0);
    if (c.d_n == 0.0) throw SingularSystemError("d^n vanishes");
    const Complex scale = 1.0 / (re * c.d_n);
    c.upsilon = -f * m0 * mc * ms * (k * k * k) * rn1 * scale;
    c.phi = f * m0 * (mc - ms) * ms * a * (k * k) * rn1 * scale;
    c.varphi = -f * m0 * ms * (k * k) * (a * mc + b * ms) * scale;
    c.psi = f * m0 * a * k * (-(m0 - ms) * (a * mc + b * ms) + r2n1 * (mc - ms) * (a * m0 + b * ms)) * scale;
    return c;
}

Complex d_n_literal(int n, const ShellConfig& cfg) {
    const Complex mc = cfg.mu_core(), ms = cfg.mu_shell(), m0 = cfg.background.mu;
    const double a = n - 1, b = n + 2;
    return (a * mc + b * m0) * (a * mc + b * ms) + b * a * std::pow(cfg.rho(), 2 * n + 1) * (mc - ms) * (-m0 + ms);
}

CloakCoefficients shell_coefficients_literal(int n, int m, Complex f, const ShellConfig& cfg) {
    check_shell(cfg);
    if (n < 2 || std::abs(m) > n) throw ArgumentError("invalid (n, m)");
    const Complex mc = cfg.mu_core(), ms = cfg.mu_shell(), m0 = cfg.background.mu;
    const double a = n - 1, b = n + 2, k = 2 * n + 1, rho = cfg.rho();
    const double rn1 = std::pow(rho, n - 1);
    CloakCoefficients c{n, m, 0.0, 0.0, 0.0, 0.0, 0.0};
    c.d_n = d_n_literal(n, cfg);
    c.upsilon = -f * m0 * mc * ms * (k * k * k) * rn1 / c.d_n;
    c.phi = f * m0 * (mc - ms) * ms * a * (k * k) * rn1 / c.d_n;
    c.varphi = -f * m0 * ms * (k * k) * (a * mc + b * ms) / c.d_n;
    c.psi = f * a * k * (-m0 * (m0 - ms) * (a * mc + b * ms) + m0 * (mc - ms) * (a * m0 + b * ms * rho * rho)) / c.d_n;
    return c;
}

ModalSolve modal_system_solve(int n, int m, Complex f, const ShellConfig& cfg) {
    check_shell(cfg);
    if (n < 1 || std::abs(m) > n) throw ArgumentError("invalid (n, m)");
    const Complex mc = cfg.mu_core(), ms = cfg.mu_shell(), m0 = cfg.background.mu;
    const double ri = cfg.r_i, re = cfg.r_e;
    const Complex ec = e1(n, mc), es = e1(n, ms), e0 = e1(n, m0);
    const double a = n - 1, b = n + 2;

    // Unknowns (upsilon, phi, varphi, psi); rows: displacement and traction
    // continuity on r_i, then on r_e against the incident field.
    Eigen::Matrix4cd A = Eigen::Matrix4cd::Zero();
    Eigen::Vector4cd rhs = Eigen::Vector4cd::Zero();
    A(0, 0) = ec * ri;
    A(0, 1) = -es * ri;
    A(0, 2) = -es * std::pow(ri, n) / std::pow(re, n - 1);
    A(1, 0) = family1_traction_coeff(RadialKind::Solid, n, mc, ri) * ec / std::pow(ri, n - 1);
    A(1, 1) = ms * es * b;
    A(1, 2) = -family1_traction_coeff(RadialKind::Solid, n, ms, ri) * es / std::pow(re, n - 1);
    A(2, 1) = es * std::pow(ri, n + 2) / std::pow(re, n + 1);
    A(2, 2) = es * re;
    A(2, 3) = -e0 * re;
    A(3, 1) = family1_traction_coeff(RadialKind::Decaying, n, ms, re) * es * std::pow(ri, n + 2);
    A(3, 2) = ms * es * a;
    A(3, 3) = m0 * e0 * b;
    rhs(2) = f;
    rhs(3) = f * family1_traction_coeff(RadialKind::Solid, n, m0, re) / std::pow(re, n);

    const Eigen::JacobiSVD<Eigen::Matrix4cd> svd(A);
    const auto& sv = svd.singularValues();
    ModalSolve out{};
    out.condition = sv(3) > 0.0 ? sv(0) / sv(3) : std::numeric_limits<double>::infinity();
    if (!(out.condition < 1e15)) throw SingularSystemError("core-shell modal system is numerically singular");
    const Eigen::Vector4cd x = A.fullPivLu().solve(rhs);
    const double k = 2 * n + 1;
    out.coeffs = {n, m, x(0), x(1), x(2), x(3), A.determinant() * std::pow(k, 4) * m0 * mc * ms * ms / (ri * re)};
    return out;
}

double critical_radius(double r_i, double r_e) {
    if (!(r_i > 0.0) || !(r_e > r_i)) throw ArgumentError("need 0 < r_i < r_e");
    return std::sqrt(r_e * r_e * r_e / r_i);
}

int select_n0(double rho, double delta) {
    if (!(rho > 0.0 && rho < 1.0)) throw ArgumentError("rho must lie in (0, 1)");
    if (!(delta > 0.0) || !std::isfinite(delta)) throw ArgumentError("delta must be positive");
    if (delta >= 1.0) throw DomainError("no degree n0 satisfies rho^n0 < delta <= rho^(n0-1) for delta >= 1");
    if (delta >= rho) throw DomainError("delta >= rho gives n0 = 1; the preset needs n0 > 1");
    int n0 = int(std::floor(std::log(delta) / std::log(rho))) + 1;
    while (!(std::pow(rho, n0) < delta)) ++n0;
    while (n0 > 2 && !(delta <= std::pow(rho, n0 - 1))) --n0;
    return n0;
}

CloakEnergy cloaking_energy(const Family1Table& f, const ShellConfig& cfg) {
    check_shell(cfg);
    CloakEnergy out;
    const double re = cfg.r_e, ri = cfg.r_i, rho = cfg.rho();
    const Complex ms = cfg.mu_shell();
    const double m0 = cfg.background.mu.real();
    for (const auto& [nm, fv] : f) {
        const int n = nm.first;
        if (n < 1 || std::abs(nm.second) > n) throw ArgumentError("invalid (n, m) in source table");
        if (fv == 0.0) continue;
        const CloakCoefficients c = shell_coefficients(n, nm.second, fv, cfg);
        const Complex es = e1(n, ms);
        const Complex A = es * c.varphi / std::pow(re, n - 1);
        const Complex B = es * c.phi * std::pow(ri, n + 2);
        // r^2 (g' - g/r) conj(g) for g = A r^n + B r^{-n-1}
        auto X = [&](double r) {
            const Complex g = A * std::pow(r, n) + B * std::pow(r, -n - 1);
            const Complex t = double(n - 1) * A * std::pow(r, n - 1) - double(n + 2) * B * std::pow(r, -n - 2);
            return r * r * t * std::conj(g);
        };
        const double e0 = e1(n, m0).real();
        const double en = cfg.delta * m0 * (X(re) - X(ri)).real() / (-e0 * re * re * re);
        if (cfg.n0 != 0 && n == cfg.n0) {
            out.at_n0 += en;
            out.reference_n0 += std::norm(fv) * n * cfg.delta / (cfg.delta * cfg.delta + std::pow(rho, 2 * n));
        } else {
            out.other += en;
        }
    }
    out.total = out.at_n0 + out.other;
    return out;
}

CVec3 scattered_field(const Family1Table& f, const ShellConfig& cfg, const Vec3& x) {
    check_shell(cfg);
    const double r = x.norm();
    if (!(r > cfg.r_e)) throw DomainError("exterior field requires |x| > r_e");
    int n_max = 1;
    for (const auto& [nm, fv] : f) n_max = std::max(n_max, nm.first);
    const HarmonicTable tab(n_max, x / r);
    const LameParams bg = cfg.background;
    CVec3 u = CVec3::Zero();
    for (const auto& [nm, fv] : f) {
        if (fv == 0.0) continue;
        const auto idx = ModeIndex::make(1, nm.first, nm.second);
        const CloakCoefficients c = shell_coefficients(idx.n, idx.m, fv, cfg);
        const Complex e0 = e1(idx.n, bg.mu);
        u += e0 * c.psi * std::pow(cfg.r_e, idx.n + 2) / std::pow(r, idx.n + 1) * hstar_normalizer(idx, cfg.r_e, bg) *
             raw_eigenfunction(idx, tab);
    }
    return u;
}

CVec3 exterior_field(const Family1Table& f, const ShellConfig& cfg, const Vec3& x, double r_s) {
    CVec3 u = scattered_field(f, cfg, x);
    const double r = x.norm(), re = cfg.r_e;
    if (!(r_s > re)) throw ArgumentError("source radius must exceed r_e");
    int n_max = 1;
    for (const auto& [nm, fv] : f) n_max = std::max(n_max, nm.first);
    const HarmonicTable tab(n_max, x / r);
    for (const auto& [nm, fv] : f) {
        if (fv == 0.0) continue;
        const auto idx = ModeIndex::make(1, nm.first, nm.second);
        const int n = idx.n;
        const double radial = r < r_s ? std::pow(r / re, n) : std::pow(r_s / re, n) * std::pow(r_s / r, n + 1);
        u += fv * radial * hstar_normalizer(idx, re, cfg.background) * raw_eigenfunction(idx, tab);
    }
    return u;
}

Family1Table decaying_source(double r_e, double r_s, int n_max) {
    if (!(r_s > r_e) || !(r_e > 0.0)) throw ArgumentError("need r_s > r_e > 0");
    Family1Table t;
    for (int n = 1; n <= n_max; ++n) t[{n, 0}] = std::pow(r_e / r_s, n);
    return t;
}

namespace {

std::vector<Vec3> sample_directions(int count) {
    // Fibonacci lattice, deterministic
    std::vector<Vec3> d;
    const double golden = kPi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < count; ++i) {
        const double z = 1.0 - (2.0 * i + 1.0) / count;
        const double s = std::sqrt(1.0 - z * z);
        d.emplace_back(s * std::cos(golden * i), s * std::sin(golden * i), z);
    }
    return d;
}

}  // namespace

CalrReport calr_verdict(const Family1Table& f, double r_s, double r_i, double r_e, const LameParams& bg,
                        const std::vector<double>& delta_sweep, const CalrOptions& opt, int threads) {
    if (delta_sweep.size() < 2) throw ArgumentError("delta sweep needs at least two values");
    for (std::size_t i = 1; i < delta_sweep.size(); ++i)
        if (!(delta_sweep[i] < delta_sweep[i - 1])) throw ArgumentError("delta sweep must be sorted descending");
    const double radius = opt.sample_factor * r_e * r_e / r_i;
    const auto dirs = sample_directions(opt.n_samples);

    CalrReport rep;
    rep.curve = parallel_map(delta_sweep.size(), threads, [&](std::size_t i) {
        const ShellConfig cfg = ShellConfig::preset(r_i, r_e, delta_sweep[i], bg, opt.eps1, opt.eps3);
        CalrPoint p{cfg.delta, cfg.n0, cfg.eps2, cfg.eps4, cloaking_energy(f, cfg).total, 0.0};
        for (const auto& d : dirs) p.max_exterior_sample = std::max(p.max_exterior_sample, exterior_field(f, cfg, radius * d, r_s).norm());
        return p;
    });

    const double first = rep.curve.front().energy, last = rep.curve.back().energy;
    rep.energy_ratio = first > 0.0 ? last / first : (last > 0.0 ? std::numeric_limits<double>::infinity() : 1.0);
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (const auto& p : rep.curve) {
        lo = std::min(lo, p.max_exterior_sample);
        hi = std::max(hi, p.max_exterior_sample);
    }
    rep.field_variation = lo > 0.0 ? hi / lo : (hi > 0.0 ? std::numeric_limits<double>::infinity() : 1.0);
    rep.resonant = rep.energy_ratio >= opt.blowup_factor && rep.field_variation <= opt.bound_factor;
    return rep;
}

}  // namespace epl
