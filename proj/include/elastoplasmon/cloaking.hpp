#pragma once

#include <limits>
#include <vector>

#include "elastoplasmon/elastic_kernels.hpp"
#include "elastoplasmon/transmission.hpp"

namespace epl {

struct ShellConfig {
    double r_i = 0.5;
    double r_e = 1.0;
    double eps1 = 1.0;
    double eps2 = 1.0;
    double eps3 = 1.0;
    double eps4 = 1.0;
    double delta = 1e-3;
    LameParams background;
    int n0 = 0;  // degree the preset was tuned to; 0 when eps2/eps4 were given directly

    static ShellConfig make(double r_i, double r_e, double eps1, double eps2, double eps3, double eps4, double delta,
                            const LameParams& bg);
    // eps2 = -(n0+2)/(n0-1), eps4 = eps2^2 with n0 = select_n0(rho, delta).
    static ShellConfig preset(double r_i, double r_e, double delta, const LameParams& bg, double eps1 = 1.0,
                              double eps3 = 1.0);
    static ShellConfig preset_fixed(int n0, double r_i, double r_e, double delta, const LameParams& bg,
                                    double eps1 = 1.0, double eps3 = 1.0);

    double rho() const { return r_i / r_e; }
    Complex mu_core() const { return eps4 * background.mu; }
    Complex mu_shell() const { return Complex(eps2, delta) * background.mu; }
    LameParams core() const { return LameParams::core(eps3, eps4, background); }
    LameParams shell() const { return LameParams::plasmon(eps1, eps2, delta, background); }
};

// Final modal amplitudes (already divided by d^n and r_e) of the core-shell densities.
struct CloakCoefficients {
    int n = 0;
    int m = 0;
    Complex upsilon;  // core density on r_i
    Complex phi;      // shell density on r_i
    Complex varphi;   // shell density on r_e
    Complex psi;      // exterior density on r_e
    Complex d_n;
};

CloakCoefficients shell_coefficients(int n, int m, Complex f, const ShellConfig& cfg);
// Uncorrected variant (alternate d^n, no 1/r_e), for discrepancy reports.
CloakCoefficients shell_coefficients_literal(int n, int m, Complex f, const ShellConfig& cfg);
Complex d_n_literal(int n, const ShellConfig& cfg);

struct ModalSolve {
    CloakCoefficients coeffs;
    double condition;  // 2-norm condition number of the 4x4 system
};

ModalSolve modal_system_solve(int n, int m, Complex f, const ShellConfig& cfg);

double critical_radius(double r_i, double r_e);
int select_n0(double rho, double delta);

struct CloakEnergy {
    double total = 0.0;
    double at_n0 = 0.0;
    double other = 0.0;
    double reference_n0 = 0.0;  // sum_m |f^{n0,m}|^2 n0 delta / (delta^2 + rho^{2 n0})
};

CloakEnergy cloaking_energy(const Family1Table& f, const ShellConfig& cfg);

// Total field F + scattered field for |x| > r_e. F uses the solid expansion for
// |x| < r_s and the exterior expansion of a single layer on the sphere r_s beyond it.
CVec3 exterior_field(const Family1Table& f, const ShellConfig& cfg, const Vec3& x,
                     double r_s = std::numeric_limits<double>::infinity());
CVec3 scattered_field(const Family1Table& f, const ShellConfig& cfg, const Vec3& x);

// f^{n,0} = (r_e / r_s)^n for n = 1..n_max.
Family1Table decaying_source(double r_e, double r_s, int n_max);

struct CalrOptions {
    double blowup_factor = 1e3;
    double bound_factor = 10.0;
    double sample_factor = 1.1;  // samples at sample_factor * r_e^2 / r_i
    int n_samples = 8;
    double eps1 = 1.0;
    double eps3 = 1.0;
};

struct CalrPoint {
    double delta;
    int n0;
    double eps2;
    double eps4;
    double energy;
    double max_exterior_sample;
};

struct CalrReport {
    bool resonant = false;
    double energy_ratio = 0.0;  // last / first
    double field_variation = 0.0;  // max / min of the exterior samples across the sweep
    std::vector<CalrPoint> curve;
};

CalrReport calr_verdict(const Family1Table& f, double r_s, double r_i, double r_e, const LameParams& bg,
                        const std::vector<double>& delta_sweep, const CalrOptions& opt = {}, int threads = 1);

}  // namespace epl
