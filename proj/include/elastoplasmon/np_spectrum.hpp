#pragma once

#include <string>
#include <vector>

#include "elastoplasmon/elastic_kernels.hpp"

namespace epl {

// Eigenvalue of the Neumann-Poincare operator K* on a ball for family 1..3, degree n.
Complex np_eigenvalue(int family, int n, const LameParams& p);
// Single-layer eigenvalue e: S[kappa] = e * r0 * kappa.
Complex sl_eigenvalue(int family, int n, const LameParams& p);

struct PlasmonConfig {
    double eps1 = 1.0;
    double eps2 = 1.0;
    double delta = 1e-3;
    LameParams background;
    double r0 = 1.0;

    // delta = 0 is accepted as the lossless limit; solvers then reject exact roots.
    static PlasmonConfig make(double eps1, double eps2, double delta, const LameParams& bg, double r0 = 1.0);
    LameParams plasmon() const { return LameParams::plasmon(eps1, eps2, delta, background); }
};

Complex resonance_denominator(int family, int n, const PlasmonConfig& cfg);
Complex resonance_denominator(int family, int n, double eps1, double eps2, double delta,
                              const LameParams& bg);

enum class BranchKind { C1, C21, C22, C3 };

struct CriticalBranch {
    BranchKind kind;
    int n;

    int family() const;
    // Which of (eps1, eps2) the branch prescribes; the other one is the free input.
    bool sets_eps1() const { return kind == BranchKind::C3; }
    std::string label() const;
};

const char* to_string(BranchKind k);

double critical_value(const CriticalBranch& b, double eps_other, const LameParams& bg);
bool matches_critical(double eps, double c);

Convexity classify_violation(double eps1, double eps2, const LameParams& bg);

// Im(conj(e~) (-1/2 + xi~)) for the plasmon material of cfg.
double dissipation_weight(int family, int n, const PlasmonConfig& cfg);

struct DCoefficients {
    double d1;
    double d2;
    double d3;
};

DCoefficients d_coefficients(int n, const PlasmonConfig& cfg);

// Closed-form weights. The _literal variant uses eps1 in the family-1/2
// denominators and drops 1/|mu~|^2 in family 3; it disagrees with the direct value.
double weight_closed_form(int family, int n, const PlasmonConfig& cfg);
double weight_closed_form_literal(int family, int n, const PlasmonConfig& cfg);

struct ResonantDegree {
    int family;
    int n;
    CriticalBranch branch;
    double abs_d_at_zero;
};

std::vector<ResonantDegree> scan_resonant_degrees(double eps1, double eps2, const LameParams& bg, int n_max,
                                                  double tol = 1e-9);

}  // namespace epl
