#include "elastoplasmon/sphere_modes.hpp"

#include <boost/math/special_functions/legendre.hpp>
#include <cmath>

#include "elastoplasmon/errors.hpp"
#include "elastoplasmon/np_spectrum.hpp"

namespace epl {

ModeIndex ModeIndex::make(int family, int n, int m) {
    if (family < 1 || family > 3) throw ArgumentError("family must be 1, 2 or 3");
    if (n < 1) throw ArgumentError("degree must be at least 1");
    if (std::abs(m) > n) throw ArgumentError("order must satisfy |m| <= n");
    return {family, n, m};
}

std::vector<ModeIndex> all_modes(int n_max) {
    std::vector<ModeIndex> out;
    for (int f = 1; f <= 3; ++f)
        for (int n = 1; n <= n_max; ++n) {
            const int mmax = f == 3 ? n - 1 : n;
            for (int m = -mmax; m <= mmax; ++m) out.push_back({f, n, m});
        }
    return out;
}

ModalField::ModalField(int n_max) : n_max_(n_max) {
    if (n_max < 0) throw ArgumentError("N_max must be nonnegative");
}

void ModalField::set(const ModeIndex& idx, Complex value) {
    ModeIndex::make(idx.family, idx.n, idx.m);
    if (!idx.has_eigenfunction()) throw ArgumentError("family 3 requires |m| <= n - 1");
    if (idx.n > n_max_) throw ArgumentError("mode degree exceeds N_max");
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag()))
        throw ArgumentError("modal coefficient must be finite");
    coeffs_[idx] = value;
}

void ModalField::add(const ModeIndex& idx, Complex value) { set(idx, get(idx) + value); }

Complex ModalField::get(const ModeIndex& idx) const {
    auto it = coeffs_.find(idx);
    return it == coeffs_.end() ? Complex(0.0) : it->second;
}

double ModalField::norm() const {
    double s = 0.0;
    for (const auto& [k, v] : coeffs_) s += std::norm(v);
    return std::sqrt(s);
}

GaussRule gauss_legendre(int n) {
    if (n < 1) throw ArgumentError("Gauss-Legendre rule needs at least one node");
    // boost returns the nonnegative half of the zeros
    const auto half = boost::math::legendre_p_zeros<double>(n);
    GaussRule g;
    for (auto it = half.rbegin(); it != half.rend(); ++it)
        if (*it != 0.0) g.nodes.push_back(-*it);
    for (double z : half) g.nodes.push_back(z);
    for (double z : g.nodes) {
        const double dp = boost::math::legendre_p_prime(n, z);
        g.weights.push_back(2.0 / ((1.0 - z * z) * dp * dp));
    }
    return g;
}

SphereGrid SphereGrid::make(int n_theta, int n_phi, double radius) {
    if (n_theta < 1 || n_phi < 1) throw ArgumentError("grid dimensions must be positive");
    if (!(radius > 0.0) || !std::isfinite(radius)) throw ArgumentError("grid radius must be positive");
    SphereGrid g;
    g.n_theta_ = n_theta;
    g.n_phi_ = n_phi;
    g.radius_ = radius;

    const GaussRule gl = gauss_legendre(n_theta);
    const double dphi = 2.0 * kPi / n_phi;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        const double z = gl.nodes[i];
        const double w = gl.weights[i];
        const double s = std::sqrt(1.0 - z * z);
        for (int j = 0; j < n_phi; ++j) {
            const double phi = j * dphi;
            g.dirs_.emplace_back(s * std::cos(phi), s * std::sin(phi), z);
            g.weights_.push_back(w * dphi * radius * radius);
        }
    }
    return g;
}

namespace {

std::size_t tri(int n, int m) { return std::size_t(n) * (n + 1) / 2 + m; }

}  // namespace

HarmonicTable::HarmonicTable(int n_max, const Vec3& unit_dir)
    : n_max_(n_max), dir_(unit_dir), val_(tri(n_max + 1, 0)), grad_(tri(n_max + 1, 0)) {
    if (n_max < 0) throw ArgumentError("negative harmonic degree");
    if (!unit_dir.allFinite() || std::abs(unit_dir.norm() - 1.0) > 1e-12)
        throw ArgumentError("direction must be a unit vector");
    const double x = unit_dir.x(), y = unit_dir.y(), z = unit_dir.z();
    const Complex xy(x, y);
    const CVec3 dxy(1.0, Complex(0.0, 1.0), 0.0);
    const CVec3 ez(0.0, 0.0, 1.0);
    const CVec3 twox = 2.0 * unit_dir.cast<Complex>();

    // Normalized solid harmonics r^n Y_n^m in Cartesian form, evaluated at r = 1.
    val_[0] = 1.0 / std::sqrt(4.0 * kPi);
    grad_[0] = CVec3::Zero();
    for (int m = 0; m <= n_max; ++m) {
        if (m > 0) {
            const double c = -std::sqrt((2.0 * m + 1) / (2.0 * m));
            const auto p = tri(m - 1, m - 1);
            val_[tri(m, m)] = c * xy * val_[p];
            grad_[tri(m, m)] = c * (dxy * val_[p] + xy * grad_[p]);
        }
        if (m + 1 <= n_max) {
            const double c = std::sqrt(2.0 * m + 3);
            const auto p = tri(m, m);
            val_[tri(m + 1, m)] = c * z * val_[p];
            grad_[tri(m + 1, m)] = c * (ez * val_[p] + z * grad_[p]);
        }
        for (int n = m + 2; n <= n_max; ++n) {
            const double nn = n, mm = m;
            const double a = std::sqrt((4 * nn * nn - 1) / (nn * nn - mm * mm));
            const double b = std::sqrt(((nn - 1) * (nn - 1) - mm * mm) * (2 * nn + 1) / ((2 * nn - 3) * (nn * nn - mm * mm)));
            const auto p1 = tri(n - 1, m), p2 = tri(n - 2, m);
            val_[tri(n, m)] = a * z * val_[p1] - b * val_[p2];
            grad_[tri(n, m)] = a * (ez * val_[p1] + z * grad_[p1]) - b * (twox * val_[p2] + grad_[p2]);
        }
    }
}

Complex HarmonicTable::value(int n, int m) const {
    if (n < 0 || n > n_max_ || std::abs(m) > n) throw ArgumentError("harmonic index out of range");
    if (m >= 0) return val_[tri(n, m)];
    const Complex v = std::conj(val_[tri(n, -m)]);
    return (m % 2 == 0) ? v : -v;
}

CVec3 HarmonicTable::surface_gradient(int n, int m) const {
    if (n < 0 || n > n_max_ || std::abs(m) > n) throw ArgumentError("harmonic index out of range");
    const std::size_t k = tri(n, std::abs(m));
    CVec3 g = grad_[k] - double(n) * val_[k] * dir_.cast<Complex>();
    if (m < 0) {
        g = g.conjugate();
        if (m % 2 != 0) g = -g;
    }
    return g;
}

Complex spherical_harmonic(int n, int m, const Vec3& unit_dir) {
    if (n < 0 || std::abs(m) > n) throw ArgumentError("spherical harmonic requires |m| <= n");
    return HarmonicTable(n, unit_dir).value(n, m);
}

CVec3 raw_eigenfunction(const ModeIndex& idx, const HarmonicTable& t) {
    const CVec3 nu = t.normal().cast<Complex>();
    switch (idx.family) {
        case 1: return t.surface_gradient(idx.n, idx.m).cross(nu);
        case 2: return t.surface_gradient(idx.n, idx.m) + double(idx.n) * t.value(idx.n, idx.m) * nu;
        case 3:
            if (!idx.has_eigenfunction()) throw ArgumentError("family 3 requires |m| <= n - 1");
            return -t.surface_gradient(idx.n - 1, idx.m) + double(idx.n) * t.value(idx.n - 1, idx.m) * nu;
    }
    throw ArgumentError("family must be 1, 2 or 3");
}

CVec3 raw_eigenfunction(const ModeIndex& idx, const Vec3& unit_dir) {
    ModeIndex::make(idx.family, idx.n, idx.m);
    if (!idx.has_eigenfunction()) throw ArgumentError("family 3 requires |m| <= n - 1");
    return raw_eigenfunction(idx, HarmonicTable(idx.n, unit_dir));
}

double l2_norm_squared(const ModeIndex& idx, double r0) {
    ModeIndex::make(idx.family, idx.n, idx.m);
    if (!(r0 > 0.0)) throw ArgumentError("r0 must be positive");
    const double n = idx.n;
    switch (idx.family) {
        case 1: return n * (n + 1) * r0 * r0;
        case 2: return n * (2 * n + 1) * r0 * r0;
        default: return n * (2 * n - 1) * r0 * r0;
    }
}

double hstar_normalizer(const ModeIndex& idx, double r0, const LameParams& bg) {
    const double e = sl_eigenvalue(idx.family, idx.n, bg).real();
    return 1.0 / std::sqrt(-e * r0 * l2_norm_squared(idx, r0));
}

std::vector<CVec3> synthesize(const ModalField& field, const SphereGrid& grid, const LameParams& bg) {
    std::vector<std::pair<ModeIndex, Complex>> terms;
    for (const auto& [k, v] : field.entries())
        if (v != 0.0) terms.emplace_back(k, v * hstar_normalizer(k, grid.radius(), bg));
    std::vector<CVec3> out(grid.size(), CVec3::Zero());
    if (terms.empty()) return out;
    for (std::size_t q = 0; q < grid.size(); ++q) {
        HarmonicTable t(field.n_max(), grid.directions()[q]);
        for (const auto& [k, a] : terms) out[q] += a * raw_eigenfunction(k, t);
    }
    return out;
}

CVec3 synthesize_at(const ModalField& field, const Vec3& unit_dir, double r0, const LameParams& bg) {
    CVec3 out = CVec3::Zero();
    if (field.empty()) return out;
    HarmonicTable t(field.n_max(), unit_dir);
    for (const auto& [k, v] : field.entries())
        if (v != 0.0) out += v * hstar_normalizer(k, r0, bg) * raw_eigenfunction(k, t);
    return out;
}

Projection project_modal(const SphereGrid& grid, const std::vector<CVec3>& samples, int n_max,
                         const LameParams& bg) {
    if (samples.size() != grid.size()) throw ArgumentError("sample count does not match grid");
    if (n_max < 1) throw ArgumentError("N_max must be at least 1");
    if (grid.n_theta() < 2 * n_max + 2 || grid.n_phi() < 2 * n_max + 2)
        throw ResolutionError("grid too coarse for N_max (need >= 2 N_max + 2 nodes per direction)");

    const auto modes = all_modes(n_max);
    std::vector<Complex> acc(modes.size(), 0.0);
    for (std::size_t q = 0; q < grid.size(); ++q) {
        HarmonicTable t(n_max, grid.directions()[q]);
        const double w = grid.weights()[q];
        for (std::size_t k = 0; k < modes.size(); ++k)
            acc[k] += w * raw_eigenfunction(modes[k], t).dot(samples[q]);  // dot conjugates kappa
    }

    Projection p{ModalField(n_max), 0.0};
    const double r0 = grid.radius();
    for (std::size_t k = 0; k < modes.size(); ++k) {
        const Complex raw = acc[k] / l2_norm_squared(modes[k], r0);
        p.field.set(modes[k], raw / hstar_normalizer(modes[k], r0, bg));
    }

    const auto back = synthesize(p.field, grid, bg);
    double num = 0.0, den = 0.0;
    for (std::size_t q = 0; q < grid.size(); ++q) {
        num += grid.weights()[q] * (samples[q] - back[q]).squaredNorm();
        den += grid.weights()[q] * samples[q].squaredNorm();
    }
    p.residual = den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
    return p;
}

}  // namespace epl
