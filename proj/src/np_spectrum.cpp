#include "elastoplasmon/np_spectrum.hpp"

#include <boost/multiprecision/cpp_complex.hpp>
#include <cmath>

#include "elastoplasmon/errors.hpp"

namespace epl {

namespace {

void check_mode(int family, int n) {
    if (family < 1 || family > 3) throw ArgumentError("family must be 1, 2 or 3");
    if (n < 1) throw DegreeError("degree must be at least 1");
}

void check_material(const LameParams& p) {
    if (p.mu == 0.0) throw DegenerateMaterialError("mu = 0");
    if (p.lambda + 2.0 * p.mu == 0.0) throw DegenerateMaterialError("lambda + 2 mu = 0");
}

void check_background(const LameParams& bg) {
    if (!bg.is_real() || convexity_status(bg.lambda.real(), bg.mu.real()) != Convexity::BothHold)
        throw ArgumentError("background must be real and strongly convex");
}

}  // namespace

Complex np_eigenvalue(int family, int n, const LameParams& p) {
    check_mode(family, n);
    check_material(p);
    const Complex l = p.lambda, m = p.mu;
    const double nn = n;
    switch (family) {
        case 1: return Complex(3.0 / (4.0 * nn + 2.0));
        case 2: return (3.0 * l - 2.0 * m * (2 * nn * nn - 2 * nn - 3)) / (2.0 * (l + 2.0 * m) * (4 * nn * nn - 1));
        default: return (-3.0 * l + 2.0 * m * (2 * nn * nn + 2 * nn - 3)) / (2.0 * (l + 2.0 * m) * (4 * nn * nn - 1));
    }
}

Complex sl_eigenvalue(int family, int n, const LameParams& p) {
    check_mode(family, n);
    check_material(p);
    const Complex l = p.lambda, m = p.mu;
    const double nn = n;
    switch (family) {
        case 1: return -1.0 / (m * (2 * nn + 1));
        case 2: return -(m * (2 + 3 * nn) + l * (nn + 1)) / (m * (l + 2.0 * m) * (4 * nn * nn - 1));
        default: return -(l * (nn - 1) + m * (3 * nn - 2)) / (m * (l + 2.0 * m) * (4 * nn * nn - 1));
    }
}

PlasmonConfig PlasmonConfig::make(double eps1, double eps2, double delta, const LameParams& bg, double r0) {
    check_background(bg);
    if (!std::isfinite(eps1) || !std::isfinite(eps2)) throw ArgumentError("eps1, eps2 must be finite");
    if (!std::isfinite(delta) || delta < 0.0) throw ArgumentError("delta must be finite and nonnegative");
    if (!std::isfinite(r0) || r0 <= 0.0) throw ArgumentError("r0 must be positive");
    return {eps1, eps2, delta, bg, r0};
}

Complex resonance_denominator(int family, int n, double eps1, double eps2, double delta, const LameParams& bg) {
    const LameParams t = LameParams::plasmon(eps1, eps2, delta, bg);
    const Complex xi = np_eigenvalue(family, n, bg);
    const Complex e = sl_eigenvalue(family, n, bg);
    const Complex xit = np_eigenvalue(family, n, t);
    const Complex et = sl_eigenvalue(family, n, t);
    return -0.5 + xit - (0.5 + xi) * et / e;
}

Complex resonance_denominator(int family, int n, const PlasmonConfig& cfg) {
    return resonance_denominator(family, n, cfg.eps1, cfg.eps2, cfg.delta, cfg.background);
}

int CriticalBranch::family() const {
    switch (kind) {
        case BranchKind::C1: return 1;
        case BranchKind::C21:
        case BranchKind::C22: return 2;
        case BranchKind::C3: return 3;
    }
    return 0;
}

const char* to_string(BranchKind k) {
    switch (k) {
        case BranchKind::C1: return "C1";
        case BranchKind::C21: return "C21";
        case BranchKind::C22: return "C22";
        case BranchKind::C3: return "C3";
    }
    return "?";
}

std::string CriticalBranch::label() const { return std::string(to_string(kind)) + "(" + std::to_string(n) + ")"; }

double critical_value(const CriticalBranch& b, double eps_other, const LameParams& bg) {
    check_background(bg);
    const double n = b.n;
    const double l0 = bg.lambda.real(), m0 = bg.mu.real();
    switch (b.kind) {
        case BranchKind::C1:
            if (b.n < 2) throw DegreeError("C1 requires n >= 2");
            return -(n + 2) / (n - 1);
        case BranchKind::C21:
            if (b.n < 1) throw DegreeError("C21 requires n >= 1");
            return -eps_other * (n + 1) * l0 / ((3 * n + 2) * m0);
        case BranchKind::C22:
            if (b.n < 2) throw DegreeError("C22 requires n >= 2");
            return -((2 * n * n + 1) * l0 + (2 * n * n + 2 * n + 2) * m0) /
                   (2 * (n - 1) * ((n + 1) * l0 + (3 * n + 2) * m0));
        case BranchKind::C3: {
            if (b.n < 1) throw DegreeError("C3 requires n >= 1");
            const double e2 = eps_other;
            const double den = ((2 * n * n + 1) * e2 + 2 * n * n - 2) * l0;
            if (den == 0.0) throw PoleError("C3 branch pole: (2n^2+1) eps2 + 2n^2 - 2 = 0");
            return -2 * e2 * ((n * n - n + 1) * e2 + 3 * n * n + n - 2) * m0 / den;
        }
    }
    throw ArgumentError("unknown branch");
}

bool matches_critical(double eps, double c) { return std::abs(eps - c) <= 1e-9 * (1.0 + std::abs(c)); }

Convexity classify_violation(double eps1, double eps2, const LameParams& bg) {
    check_background(bg);
    return convexity_status(eps1 * bg.lambda.real(), eps2 * bg.mu.real());
}

// Im part is O(delta) against O(1) products; double loses ~1e-12 relative here.
double dissipation_weight(int family, int n, const PlasmonConfig& cfg) {
    using Q = boost::multiprecision::cpp_complex_quad;
    const LameParams t = cfg.plasmon();
    check_mode(family, n);
    check_material(t);
    const Q l(Q(cfg.eps1, cfg.delta) * Q(cfg.background.lambda.real(), cfg.background.lambda.imag()));
    const Q m(Q(cfg.eps2, cfg.delta) * Q(cfg.background.mu.real(), cfg.background.mu.imag()));
    const double nn = n;
    Q et, xit;
    switch (family) {
        case 1:
            et = -1 / (m * (2 * nn + 1));
            xit = Q(3) / (4 * nn + 2);
            break;
        case 2:
            et = -(m * (2 + 3 * nn) + l * (nn + 1)) / (m * (l + 2 * m) * (4 * nn * nn - 1));
            xit = (3 * l - 2 * m * (2 * nn * nn - 2 * nn - 3)) / (2 * (l + 2 * m) * (4 * nn * nn - 1));
            break;
        default:
            et = -(l * (nn - 1) + m * (3 * nn - 2)) / (m * (l + 2 * m) * (4 * nn * nn - 1));
            xit = (-3 * l + 2 * m * (2 * nn * nn + 2 * nn - 3)) / (2 * (l + 2 * m) * (4 * nn * nn - 1));
            break;
    }
    const Q w = conj(et) * (xit - Q(0.5));
    return static_cast<double>(w.imag());
}

DCoefficients d_coefficients(int n, const PlasmonConfig& cfg) {
    if (n < 1) throw DegreeError("degree must be at least 1");
    const double l0 = cfg.background.lambda.real(), m0 = cfg.background.mu.real();
    const double e1 = cfg.eps1, e2 = cfg.eps2, nn = n;
    const double n2 = nn * nn, n3 = n2 * nn;
    const double d1 = 4 * e1 * e2 * l0 * m0 * (n3 - 2 * n2 + 2 * nn - 1) + e1 * e1 * l0 * l0 * (2 * n3 - 2 * n2 + nn - 1) +
                      e2 * e2 * m0 * (l0 * (4 * n2 - 1) * nn + 2 * m0 * (3 * n3 - 5 * n2 + 5 * nn - 2));
    const double d2 = (l0 * (nn - 1) + m0 * (3 * nn - 2)) * (l0 * (2 * n2 + 1) + 2 * m0 * (n2 - nn + 1));
    const LameParams t = cfg.plasmon();
    const double d3 = std::norm((t.lambda + 2.0 * t.mu) * (4 * n2 - 1));
    return {d1, d2, d3};
}

namespace {

double closed_form(int family, int n, const PlasmonConfig& cfg, bool literal) {
    const double m0 = cfg.background.mu.real();
    const double dl = cfg.delta, nn = n;
    const double eps = literal ? cfg.eps1 : cfg.eps2;
    switch (family) {
        case 1: return (nn - 1) * dl / ((2 * nn + 1) * (2 * nn + 1) * (eps * eps + dl * dl) * m0);
        case 2: {
            const LameParams t = cfg.plasmon();
            const double a = std::norm(sl_eigenvalue(2, n, t) * t.mu);
            return 2 * (nn - 1) * a * dl / ((eps * eps + dl * dl) * m0);
        }
        case 3: {
            const DCoefficients d = d_coefficients(n, cfg);
            const double v = (dl * m0 * d.d1 + dl * dl * dl * m0 * d.d2) / d.d3;
            if (literal) return v;
            return v / ((cfg.eps2 * cfg.eps2 + dl * dl) * m0 * m0);
        }
    }
    throw ArgumentError("family must be 1, 2 or 3");
}

}  // namespace

double weight_closed_form(int family, int n, const PlasmonConfig& cfg) { return closed_form(family, n, cfg, false); }
double weight_closed_form_literal(int family, int n, const PlasmonConfig& cfg) {
    return closed_form(family, n, cfg, true);
}

std::vector<ResonantDegree> scan_resonant_degrees(double eps1, double eps2, const LameParams& bg, int n_max,
                                                  double tol) {
    check_background(bg);
    if (n_max < 2) throw ArgumentError("N_max must be at least 2");
    std::vector<ResonantDegree> out;
    for (int family = 1; family <= 3; ++family) {
        for (int n = 1; n <= n_max; ++n) {
            Complex d;
            try {
                d = resonance_denominator(family, n, eps1, eps2, 0.0, bg);
            } catch (const DegenerateMaterialError&) {
                continue;  // lambda^ + 2 mu^ = 0: D is 0/0 at delta = 0, not a root
            }
            if (!(std::abs(d) < tol)) continue;
            CriticalBranch br{BranchKind::C1, n};
            if (family == 2) {
                br.kind = BranchKind::C21;
                if (n >= 2) {
                    const double c21 = critical_value({BranchKind::C21, n}, eps1, bg);
                    const double c22 = critical_value({BranchKind::C22, n}, eps1, bg);
                    if (std::abs(eps2 - c22) < std::abs(eps2 - c21)) br.kind = BranchKind::C22;
                }
            } else if (family == 3) {
                br.kind = BranchKind::C3;
            }
            out.push_back({family, n, br, std::abs(d)});
        }
    }
    return out;
}

}  // namespace epl
