#pragma once

#include <map>
#include <utility>
#include <vector>

#include "elastoplasmon/np_spectrum.hpp"
#include "elastoplasmon/oracle.hpp"
#include "elastoplasmon/sphere_modes.hpp"

namespace epl {

// (n, m) -> f^{n,m}: coefficients of sum f (r/r_e)^n kappa_1^{n,m} in the H*-normalized basis.
using Family1Table = std::map<std::pair<int, int>, Complex>;

struct SourceData {
    ModalField h;  // trace of F on the sphere
    ModalField g;  // traction of F
    double r0 = 1.0;
    // Set when F is the solid family-1 expansion with these h entries; enables
    // evaluation of F off the sphere.
    bool solid_family1 = false;

    static SourceData make(ModalField h, ModalField g, double r0);
};

SourceData modal_source_from_family1(const Family1Table& coeffs, double r_e, const LameParams& bg, int n_max = 0);

struct DensityPair {
    ModalField phi;
    ModalField psi;
    // (family, n) pairs whose lossless denominator vanishes but which the source leaves unexcited.
    std::vector<std::pair<int, int>> unexcited_resonant;

    // Families 1, 2 at n = 1 carry zero dissipation weight.
    ModalField phi_double_prime() const;
    ModalField phi_prime() const;
};

DensityPair solve_single_inclusion(const SourceData& src, const PlasmonConfig& cfg);

// Rebuilds (h, g) from (phi, psi): h = S~[phi] - S[psi], g = traction jump.
SourceData forward_modal_map(const DensityPair& dp, const PlasmonConfig& cfg);

double dissipated_energy(const DensityPair& dp, const PlasmonConfig& cfg);

struct FieldValue {
    CVec3 value;
    bool used_quadrature = false;
};

FieldValue evaluate_field(const DensityPair& dp, const SourceData& src, const Vec3& x, const PlasmonConfig& cfg,
                          const QuadratureSpec& spec = {});

enum class RadialKind { Solid, Decaying };

// Traction coefficient of r^n kappa_1 (Solid) or r^{-(n+1)} kappa_1 (Decaying) at radius r.
Complex family1_traction_coeff(RadialKind kind, int n, Complex mu, double r);

}  // namespace epl
