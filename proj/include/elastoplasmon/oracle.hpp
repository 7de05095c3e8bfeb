#pragma once

#include <string>
#include <vector>

#include "elastoplasmon/np_spectrum.hpp"
#include "elastoplasmon/sphere_modes.hpp"

namespace epl {

struct QuadratureSpec {
    int n_theta = 96;
    int n_phi = 192;
    // Fractions of r0, strictly decreasing.
    std::vector<double> offsets{0.3, 0.25, 0.2, 0.15, 0.1};
    int order = 4;  // polynomial degree of the extrapolation fit
    int target_theta = 8;
    int target_phi = 16;

    void validate() const;
};

// Brute-force Kelvin single layer of a modal density (coefficients in the
// H*-basis of `basis`) on the sphere of radius r0, evaluated at x.
CVec3 single_layer_quadrature(const ModalField& density, const Vec3& x, double r0, const LameParams& params,
                              const QuadratureSpec& spec, const LameParams& basis);
CVec3 single_layer_quadrature(const ModalField& density, const Vec3& x, double r0, const LameParams& params,
                              const QuadratureSpec& spec);

struct EigenReport {
    ModeIndex idx;
    Complex measured_e;  // mean of interior and exterior extrapolations, divided by r0
    Complex expected_e;
    double relative_error;
    Complex interior_e;
    Complex exterior_e;
    double continuity_gap;  // |interior - exterior| / |expected|
    Complex traction_minus;  // interior one-sided traction coefficient
    Complex traction_plus;
    Complex expected_minus;  // -1/2 + xi
    Complex expected_plus;   // 1/2 + xi
    double traction_error;   // max relative error of the two one-sided coefficients
};

EigenReport verify_eigenrelation(const ModeIndex& idx, double r0, const LameParams& params,
                                 const QuadratureSpec& spec);
// Batched form sharing one kernel sweep across all modes.
std::vector<EigenReport> verify_eigenrelations(const std::vector<ModeIndex>& modes, double r0,
                                               const LameParams& params, const QuadratureSpec& spec);

struct JumpReport {
    double max_defect;  // max |t+ - t- - density| / max |density| over targets
    double interior_traction_max;
    double exterior_traction_max;
};

JumpReport verify_jump(const ModalField& density, double r0, const LameParams& params, const QuadratureSpec& spec);

struct VolumeGridSpec {
    int n_r = 12;
    int n_theta = 24;
    int n_phi = 48;
    double fd_step = 1e-4;  // relative central-difference step for the strain
};

// delta * int_D strain : C0 strain for u = S~[phi] built from family-1 radial profiles.
double volume_energy(const ModalField& density, const PlasmonConfig& cfg, const VolumeGridSpec& grid = {});

struct GammaSample {
    Vec3 x;
    double omega;
};

std::vector<GammaSample> default_gamma_samples();

struct GammaSplitReport {
    double max_residual;
    double max_tail_bound;
};

GammaSplitReport verify_gamma_split(const std::vector<GammaSample>& samples, const LameParams& params,
                                    int n_terms = 30);

}  // namespace epl
