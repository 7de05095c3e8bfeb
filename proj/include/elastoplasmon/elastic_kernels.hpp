#pragma once

#include "elastoplasmon/types.hpp"

namespace epl {

struct LameParams {
    Complex lambda{0.0, 0.0};
    Complex mu{0.0, 0.0};

    // Real, strongly convex medium (mu > 0, 3 lambda + 2 mu > 0).
    static LameParams background(double lambda0, double mu0);
    // ((eps1 + i delta) lambda0, (eps2 + i delta) mu0); delta = 0 gives the lossless limit.
    static LameParams plasmon(double eps1, double eps2, double delta, const LameParams& bg);
    // (eps3 lambda0, eps4 mu0)
    static LameParams core(double eps3, double eps4, const LameParams& bg);

    bool is_real() const { return lambda.imag() == 0.0 && mu.imag() == 0.0; }
    Complex shear_speed() const;     // sqrt(mu), unit density
    Complex pressure_speed() const;  // sqrt(lambda + 2 mu)
};

enum class Convexity { BothHold, FirstBroken, SecondBroken, BothBroken };

const char* to_string(Convexity c);

Convexity convexity_status(double lambda, double mu);

// Static fundamental solution (Kelvin matrix).
Matrix3C kelvin_matrix(const Vec3& x, const LameParams& p);

// Time-harmonic fundamental solution (Kupradze matrix). Closed exponential
// form away from omega |x| -> 0, power series (n_terms) close to it.
Matrix3C kupradze_matrix(const Vec3& x, double omega, const LameParams& p, int n_terms = 30);

struct SeriesValue {
    Matrix3C value;
    double tail_bound;  // estimate of the max-norm of the dropped terms
};

// M such that kupradze = kelvin + omega * M, summed over n = 1..n_terms.
SeriesValue m_omega(const Vec3& x, double omega, const LameParams& p, int n_terms = 30);

}  // namespace epl
