#include "elastoplasmon/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "elastoplasmon/errors.hpp"

namespace epl {

void QuadratureSpec::validate() const {
    if (n_theta < 2 || n_phi < 2 || target_theta < 1 || target_phi < 1)
        throw ArgumentError("quadrature grids must be positive");
    if (offsets.empty()) throw ArgumentError("need at least one extrapolation offset");
    for (std::size_t i = 0; i < offsets.size(); ++i) {
        if (!(offsets[i] > 0.0) || !(offsets[i] < 0.5)) throw ArgumentError("offsets must lie in (0, 1/2)");
        if (i > 0 && !(offsets[i] < offsets[i - 1])) throw ArgumentError("offsets must be strictly decreasing");
    }
    if (order < 0 || order >= int(offsets.size())) throw ArgumentError("extrapolation order needs order + 1 offsets");
}

namespace {

// Parameter-free kernel moments; combined with (lambda, mu) afterwards.
struct Sums {
    CVec3 u1 = CVec3::Zero();  // sum w phi / r
    CVec3 u2 = CVec3::Zero();  // sum w d (d.phi) / r^3
    Matrix3C g1 = Matrix3C::Zero();  // sum w phi_j d_l / r^3
    Matrix3C g4 = Matrix3C::Zero();  // sum w d_j d_l (d.phi) / r^5
    Complex a3 = 0.0;  // sum w (d.phi) / r^3
};

struct Local {
    CVec3 u;
    Matrix3C grad;  // grad(j, l) = d_l u_j
};

class Layer {
public:
    Layer(const SphereGrid& grid) : grid_(grid) {
        pts_.reserve(grid.size());
        for (std::size_t k = 0; k < grid.size(); ++k) pts_.push_back(grid.point(k));
    }

    void sums(const Vec3& x, const std::vector<std::vector<CVec3>>& dens, std::vector<Sums>& out) const {
        out.assign(dens.size(), Sums{});
        const auto& w = grid_.weights();
        for (std::size_t k = 0; k < pts_.size(); ++k) {
            const Vec3 d = x - pts_[k];
            const double r2 = d.squaredNorm();
            const double ri = 1.0 / std::sqrt(r2);
            const double r3 = ri / r2;
            const double r5 = r3 / r2;
            const Eigen::Matrix3d dd = d * d.transpose();
            const Eigen::Vector3cd dc = d.cast<Complex>();
            for (std::size_t j = 0; j < dens.size(); ++j) {
                const CVec3& p = dens[j][k];
                const Complex a = w[k] * dc.dot(p);  // Eigen dot conjugates the left side, d is real
                Sums& s = out[j];
                s.u1 += (w[k] * ri) * p;
                s.u2 += (a * r3) * dc;
                s.g1 += (w[k] * r3) * p * dc.transpose();
                s.g4 += (a * r5) * dd.cast<Complex>();
                s.a3 += a * r3;
            }
        }
    }

private:
    const SphereGrid& grid_;
    std::vector<Vec3> pts_;
};

Local combine(const Sums& s, const LameParams& p) {
    const Complex a = 1.0 / p.mu;
    const Complex b = 1.0 / (p.lambda + 2.0 * p.mu);
    const Complex g1 = 0.5 * (a + b);
    const Complex g2 = 0.5 * (a - b);
    const double c = 1.0 / (4.0 * kPi);
    Local out;
    out.u = c * (-g1 * s.u1 - g2 * s.u2);
    out.grad = c * (g1 * s.g1 - g2 * (Matrix3C::Identity() * s.a3 + s.g1.transpose() - 3.0 * s.g4));
    return out;
}

CVec3 traction(const Local& f, const LameParams& p, const Vec3& nu) {
    const CVec3 n = nu.cast<Complex>();
    return p.lambda * f.grad.trace() * n + p.mu * (f.grad + f.grad.transpose()) * n;
}

struct Fit {
    Complex value;
    double spread;
};

Complex poly_fit_at_zero(const std::vector<double>& s, const std::vector<Complex>& v, int order) {
    Eigen::MatrixXd a(s.size(), order + 1);
    Eigen::VectorXcd b(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        double pw = 1.0;
        for (int k = 0; k <= order; ++k, pw *= s[i]) a(i, k) = pw;
        b(i) = v[i];
    }
    const Eigen::VectorXcd c = a.cast<Complex>().colPivHouseholderQr().solve(b);
    return c(0);
}

// Extrapolates samples at abscissae s (away from 0) to s = 0; spread compares
// against the fit that drops the farthest sample.
Fit extrapolate(const std::vector<double>& s, const std::vector<Complex>& v, int order) {
    Fit f{poly_fit_at_zero(s, v, order), 0.0};
    if (s.size() >= 2) {
        std::vector<double> s2(s.begin() + 1, s.end());
        std::vector<Complex> v2(v.begin() + 1, v.end());
        const int o2 = std::min<int>(order, int(s2.size()) - 1);
        f.spread = std::abs(poly_fit_at_zero(s2, v2, o2) - f.value);
    }
    return f;
}

std::vector<double> abscissae(const QuadratureSpec& spec, bool exterior) {
    std::vector<double> s;
    for (double h : spec.offsets) s.push_back(exterior ? 1.0 / (1.0 + h) - 1.0 : -h);
    return s;
}

std::vector<CVec3> sample_density(const ModalField& density, const SphereGrid& grid, const LameParams& basis) {
    return synthesize(density, grid, basis);
}

}  // namespace

CVec3 single_layer_quadrature(const ModalField& density, const Vec3& x, double r0, const LameParams& params,
                              const QuadratureSpec& spec, const LameParams& basis) {
    spec.validate();
    if (!(r0 > 0.0)) throw ArgumentError("r0 must be positive");
    const double dist = std::abs(x.norm() - r0);
    const double min_off = spec.offsets.back() * r0;
    if (dist < min_off * (1.0 - 1e-12))
        throw AccuracyError("evaluation point closer to the surface than the smallest offset", dist / r0);
    if (density.empty()) return CVec3::Zero();
    const SphereGrid grid = SphereGrid::make(spec.n_theta, spec.n_phi, r0);
    const Layer layer(grid);
    std::vector<std::vector<CVec3>> dens{sample_density(density, grid, basis)};
    std::vector<Sums> s;
    layer.sums(x, dens, s);
    return combine(s[0], params).u;
}

CVec3 single_layer_quadrature(const ModalField& density, const Vec3& x, double r0, const LameParams& params,
                              const QuadratureSpec& spec) {
    return single_layer_quadrature(density, x, r0, params, spec, params);
}

std::vector<EigenReport> verify_eigenrelations(const std::vector<ModeIndex>& modes, double r0,
                                               const LameParams& params, const QuadratureSpec& spec) {
    spec.validate();
    if (!(r0 > 0.0)) throw ArgumentError("r0 must be positive");
    int n_max = 0;
    for (const auto& m : modes) {
        ModeIndex::make(m.family, m.n, m.m);
        if (!m.has_eigenfunction()) throw ArgumentError("family 3 requires |m| <= n - 1");
        n_max = std::max(n_max, m.n);
    }
    const SphereGrid src = SphereGrid::make(spec.n_theta, spec.n_phi, r0);
    const SphereGrid tgt = SphereGrid::make(spec.target_theta, spec.target_phi, 1.0);
    const Layer layer(src);

    std::vector<std::vector<CVec3>> dens(modes.size(), std::vector<CVec3>(src.size()));
    for (std::size_t k = 0; k < src.size(); ++k) {
        const HarmonicTable t(n_max, src.directions()[k]);
        for (std::size_t j = 0; j < modes.size(); ++j) dens[j][k] = raw_eigenfunction(modes[j], t);
    }
    std::vector<std::vector<CVec3>> kap(modes.size(), std::vector<CVec3>(tgt.size()));
    std::vector<double> kk(modes.size(), 0.0);
    for (std::size_t q = 0; q < tgt.size(); ++q) {
        const HarmonicTable t(n_max, tgt.directions()[q]);
        for (std::size_t j = 0; j < modes.size(); ++j) {
            kap[j][q] = raw_eigenfunction(modes[j], t);
            kk[j] += tgt.weights()[q] * kap[j][q].squaredNorm();
        }
    }

    const std::size_t nh = spec.offsets.size();
    // [side][mode][offset]
    std::vector<std::vector<std::vector<Complex>>> pu(2, std::vector<std::vector<Complex>>(modes.size(), std::vector<Complex>(nh, 0.0)));
    auto pt = pu;
    std::vector<Sums> sums;
    for (int side = 0; side < 2; ++side) {
        for (std::size_t h = 0; h < nh; ++h) {
            const double r = r0 * (side == 0 ? 1.0 - spec.offsets[h] : 1.0 + spec.offsets[h]);
            for (std::size_t q = 0; q < tgt.size(); ++q) {
                const Vec3& nu = tgt.directions()[q];
                layer.sums(r * nu, dens, sums);
                for (std::size_t j = 0; j < modes.size(); ++j) {
                    const Local f = combine(sums[j], params);
                    const double w = tgt.weights()[q] / kk[j];
                    pu[side][j][h] += w * kap[j][q].dot(f.u);
                    pt[side][j][h] += w * kap[j][q].dot(traction(f, params, nu));
                }
            }
        }
    }

    const auto s_in = abscissae(spec, false);
    const auto s_out = abscissae(spec, true);
    std::vector<EigenReport> out;
    for (std::size_t j = 0; j < modes.size(); ++j) {
        const ModeIndex& idx = modes[j];
        EigenReport rep{};
        rep.idx = idx;
        const Fit ui = extrapolate(s_in, pu[0][j], spec.order);
        const Fit uo = extrapolate(s_out, pu[1][j], spec.order);
        const Fit ti = extrapolate(s_in, pt[0][j], spec.order);
        const Fit to = extrapolate(s_out, pt[1][j], spec.order);
        rep.expected_e = sl_eigenvalue(idx.family, idx.n, params);
        const Complex xi = np_eigenvalue(idx.family, idx.n, params);
        rep.expected_minus = -0.5 + xi;
        rep.expected_plus = 0.5 + xi;

        const double scale_u = std::abs(rep.expected_e) * r0;
        const double scale_t = std::max(std::abs(rep.expected_minus), std::abs(rep.expected_plus));
        if (ui.spread > 1e-2 * scale_u || uo.spread > 1e-2 * scale_u || ti.spread > 1e-2 * scale_t ||
            to.spread > 1e-2 * scale_t)
            throw InstabilityError("near-surface extrapolation did not settle");

        rep.interior_e = ui.value / r0;
        rep.exterior_e = uo.value / r0;
        rep.measured_e = 0.5 * (rep.interior_e + rep.exterior_e);
        const double ae = std::abs(rep.expected_e);
        rep.relative_error =
            std::max(std::abs(rep.interior_e - rep.expected_e), std::abs(rep.exterior_e - rep.expected_e)) / ae;
        rep.continuity_gap = std::abs(rep.interior_e - rep.exterior_e) / ae;
        rep.traction_minus = ti.value;
        rep.traction_plus = to.value;
        rep.traction_error =
            std::max(std::abs(ti.value - rep.expected_minus), std::abs(to.value - rep.expected_plus)) / scale_t;
        out.push_back(rep);
    }
    return out;
}

EigenReport verify_eigenrelation(const ModeIndex& idx, double r0, const LameParams& params,
                                 const QuadratureSpec& spec) {
    return verify_eigenrelations({idx}, r0, params, spec).front();
}

JumpReport verify_jump(const ModalField& density, double r0, const LameParams& params, const QuadratureSpec& spec) {
    spec.validate();
    if (!params.is_real()) throw ArgumentError("jump check needs a real background for the modal basis");
    const SphereGrid src = SphereGrid::make(spec.n_theta, spec.n_phi, r0);
    const SphereGrid tgt = SphereGrid::make(spec.target_theta, spec.target_phi, 1.0);
    const Layer layer(src);
    std::vector<std::vector<CVec3>> dens{sample_density(density, src, params)};
    const auto on_surface = synthesize(density, SphereGrid::make(spec.target_theta, spec.target_phi, r0), params);

    const auto s_in = abscissae(spec, false);
    const auto s_out = abscissae(spec, true);
    const std::size_t nh = spec.offsets.size();
    JumpReport rep{0.0, 0.0, 0.0};
    double dmax = 0.0;
    for (const auto& v : on_surface) dmax = std::max(dmax, v.norm());
    if (dmax == 0.0) return rep;

    std::vector<Sums> sums;
    for (std::size_t q = 0; q < tgt.size(); ++q) {
        const Vec3& nu = tgt.directions()[q];
        std::vector<std::vector<Complex>> tin(3, std::vector<Complex>(nh)), tout = tin;
        for (std::size_t h = 0; h < nh; ++h) {
            for (int side = 0; side < 2; ++side) {
                const double r = r0 * (side == 0 ? 1.0 - spec.offsets[h] : 1.0 + spec.offsets[h]);
                layer.sums(r * nu, dens, sums);
                const CVec3 t = traction(combine(sums[0], params), params, nu);
                for (int c = 0; c < 3; ++c) (side == 0 ? tin : tout)[c][h] = t[c];
            }
        }
        CVec3 tm, tp;
        for (int c = 0; c < 3; ++c) {
            tm[c] = extrapolate(s_in, tin[c], spec.order).value;
            tp[c] = extrapolate(s_out, tout[c], spec.order).value;
        }
        rep.max_defect = std::max(rep.max_defect, (tp - tm - on_surface[q]).norm() / dmax);
        rep.interior_traction_max = std::max(rep.interior_traction_max, tm.norm() / dmax);
        rep.exterior_traction_max = std::max(rep.exterior_traction_max, tp.norm() / dmax);
    }
    return rep;
}

double volume_energy(const ModalField& density, const PlasmonConfig& cfg, const VolumeGridSpec& vg) {
    int n_max = 0;
    for (const auto& [k, v] : density.entries()) {
        if (v == 0.0) continue;
        if (k.family != 1) throw ArgumentError("volume energy supports family-1 densities only");
        n_max = std::max(n_max, k.n);
    }
    if (n_max == 0) return 0.0;
    if (vg.n_r < n_max + 1 || vg.n_theta < n_max + 2 || vg.n_phi < 2 * n_max + 2)
        throw ResolutionError("volume grid too coarse for the density degree");

    const double r0 = cfg.r0;
    const LameParams bg = cfg.background;
    const LameParams t = cfg.plasmon();
    struct Term {
        ModeIndex k;
        Complex a;
    };
    std::vector<Term> terms;
    for (const auto& [k, v] : density.entries())
        if (v != 0.0)
            terms.push_back({k, v * hstar_normalizer(k, r0, bg) * sl_eigenvalue(1, k.n, t) / std::pow(r0, k.n - 1)});

    auto field = [&](const Vec3& x) {
        const double r = x.norm();
        const HarmonicTable tab(n_max, x / r);
        CVec3 u = CVec3::Zero();
        for (const auto& term : terms) u += term.a * std::pow(r, term.k.n) * raw_eigenfunction(term.k, tab);
        return u;
    };

    const SphereGrid ang = SphereGrid::make(vg.n_theta, vg.n_phi, 1.0);
    const GaussRule radial = gauss_legendre(vg.n_r);
    const double h = vg.fd_step * r0;
    const double l0 = bg.lambda.real(), m0 = bg.mu.real();
    double total = 0.0;
    for (std::size_t i = 0; i < radial.nodes.size(); ++i) {
        const double wr = radial.weights[i] * 0.5 * r0;
        const double r = 0.5 * r0 * (radial.nodes[i] + 1.0);
        for (std::size_t q = 0; q < ang.size(); ++q) {
            const Vec3 x = r * ang.directions()[q];
            Matrix3C g;
            for (int l = 0; l < 3; ++l) {
                Vec3 e = Vec3::Zero();
                e[l] = h;
                g.col(l) = (field(x + e) - field(x - e)) / (2.0 * h);
            }
            const Matrix3C eps = 0.5 * (g + g.transpose());
            const double dens = l0 * std::norm(eps.trace()) + 2.0 * m0 * eps.squaredNorm();
            total += wr * r * r * ang.weights()[q] * dens;
        }
    }
    return cfg.delta * total;
}

std::vector<GammaSample> default_gamma_samples() {
    const std::vector<Vec3> dirs{Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, 1), Vec3(1, 1, 1).normalized(),
                                 Vec3(-0.3, 0.5, 0.81).normalized()};
    std::vector<GammaSample> out;
    for (double r : {0.5, 0.8, 1.3, 2.0})
        for (const auto& d : dirs)
            for (double w : {0.0, 0.01, 0.03, 0.05, 0.1}) out.push_back({r * d, w});
    return out;
}

GammaSplitReport verify_gamma_split(const std::vector<GammaSample>& samples, const LameParams& params, int n_terms) {
    GammaSplitReport rep{0.0, 0.0};
    for (const auto& s : samples) {
        const Matrix3C full = kupradze_matrix(s.x, s.omega, params, n_terms);
        const Matrix3C stat = kelvin_matrix(s.x, params);
        const SeriesValue m = m_omega(s.x, s.omega, params, n_terms);
        const Matrix3C res = full - stat - s.omega * m.value;
        rep.max_residual = std::max(rep.max_residual, res.cwiseAbs().maxCoeff());
        rep.max_tail_bound = std::max(rep.max_tail_bound, s.omega * m.tail_bound);
    }
    return rep;
}

}  // namespace epl
