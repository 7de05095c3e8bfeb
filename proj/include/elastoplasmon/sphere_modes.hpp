#pragma once

#include <compare>
#include <cstdlib>
#include <map>
#include <vector>

#include "elastoplasmon/elastic_kernels.hpp"

namespace epl {

struct ModeIndex {
    int family = 1;
    int n = 1;
    int m = 0;

    // Checks 1 <= family <= 3, n >= 1, |m| <= n.
    static ModeIndex make(int family, int n, int m);
    // Family 3 at degree n is built from the degree n-1 harmonic.
    bool has_eigenfunction() const { return family != 3 || std::abs(m) <= n - 1; }

    auto operator<=>(const ModeIndex&) const = default;
};

// Every index with an eigenfunction up to n_max, in (family, n, m) order.
std::vector<ModeIndex> all_modes(int n_max);

// Coefficients in the H*-normalized basis; absent entries are zero.
class ModalField {
public:
    explicit ModalField(int n_max = 0);

    int n_max() const { return n_max_; }
    void set(const ModeIndex& idx, Complex value);
    void add(const ModeIndex& idx, Complex value);
    Complex get(const ModeIndex& idx) const;
    const std::map<ModeIndex, Complex>& entries() const { return coeffs_; }
    double norm() const;
    bool empty() const { return coeffs_.empty(); }

private:
    int n_max_;
    std::map<ModeIndex, Complex> coeffs_;
};

struct GaussRule {
    std::vector<double> nodes;  // ascending, in (-1, 1)
    std::vector<double> weights;
};

GaussRule gauss_legendre(int n);

class SphereGrid {
public:
    static SphereGrid make(int n_theta, int n_phi, double radius = 1.0);

    int n_theta() const { return n_theta_; }
    int n_phi() const { return n_phi_; }
    double radius() const { return radius_; }
    std::size_t size() const { return dirs_.size(); }
    const std::vector<Vec3>& directions() const { return dirs_; }
    const std::vector<double>& weights() const { return weights_; }
    Vec3 point(std::size_t k) const { return radius_ * dirs_[k]; }

private:
    int n_theta_ = 0;
    int n_phi_ = 0;
    double radius_ = 1.0;
    std::vector<Vec3> dirs_;
    std::vector<double> weights_;
};

Complex spherical_harmonic(int n, int m, const Vec3& unit_dir);

// Y_n^m and its surface gradient for all n <= n_max, m = -n..n at one direction.
class HarmonicTable {
public:
    HarmonicTable(int n_max, const Vec3& unit_dir);

    Complex value(int n, int m) const;
    CVec3 surface_gradient(int n, int m) const;
    const Vec3& normal() const { return dir_; }

private:
    int n_max_;
    Vec3 dir_;
    std::vector<Complex> val_;
    std::vector<CVec3> grad_;  // full gradient of the solid harmonic at r = 1, m >= 0
};

CVec3 raw_eigenfunction(const ModeIndex& idx, const Vec3& unit_dir);
CVec3 raw_eigenfunction(const ModeIndex& idx, const HarmonicTable& table);

double l2_norm_squared(const ModeIndex& idx, double r0);
double hstar_normalizer(const ModeIndex& idx, double r0, const LameParams& bg);

struct Projection {
    ModalField field;
    double residual;  // relative L2 reconstruction residual on the grid
};

Projection project_modal(const SphereGrid& grid, const std::vector<CVec3>& samples, int n_max,
                         const LameParams& bg);

// Boundary values of sum_k a_k c_k kappa_k at the grid directions.
std::vector<CVec3> synthesize(const ModalField& field, const SphereGrid& grid, const LameParams& bg);
CVec3 synthesize_at(const ModalField& field, const Vec3& unit_dir, double r0, const LameParams& bg);

}  // namespace epl
