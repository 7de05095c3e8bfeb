#include "elastoplasmon/transmission.hpp"

#include <cmath>
#include <set>

#include "elastoplasmon/errors.hpp"

namespace epl {

namespace {

constexpr double kSingularTol = 1e-14;
constexpr double kResonanceTol = 1e-9;

}  // namespace

SourceData SourceData::make(ModalField h, ModalField g, double r0) {
    if (h.n_max() != g.n_max()) throw ArgumentError("h and g must share the truncation degree");
    if (!(r0 > 0.0) || !std::isfinite(r0)) throw ArgumentError("r0 must be positive");
    return {std::move(h), std::move(g), r0, false};
}

SourceData modal_source_from_family1(const Family1Table& coeffs, double r_e, const LameParams& bg, int n_max) {
    int top = n_max;
    for (const auto& [nm, f] : coeffs) top = std::max(top, nm.first);
    SourceData s = SourceData::make(ModalField(top), ModalField(top), r_e);
    const Complex mu0 = bg.mu;
    for (const auto& [nm, f] : coeffs) {
        const auto idx = ModeIndex::make(1, nm.first, nm.second);
        s.h.set(idx, f);
        s.g.set(idx, f * mu0 * double(nm.first - 1) / r_e);
    }
    s.solid_family1 = true;
    return s;
}

ModalField DensityPair::phi_double_prime() const {
    ModalField out(phi.n_max());
    for (const auto& [k, v] : phi.entries())
        if (k.n == 1 && k.family <= 2) out.set(k, v);
    return out;
}

ModalField DensityPair::phi_prime() const {
    ModalField out(phi.n_max());
    for (const auto& [k, v] : phi.entries())
        if (!(k.n == 1 && k.family <= 2)) out.set(k, v);
    return out;
}

DensityPair solve_single_inclusion(const SourceData& src, const PlasmonConfig& cfg) {
    if (src.h.n_max() != src.g.n_max()) throw ArgumentError("h and g must share the truncation degree");
    if (std::abs(src.r0 - cfg.r0) > 1e-12 * cfg.r0) throw ArgumentError("source radius differs from inclusion radius");
    const int n_max = src.h.n_max();
    const LameParams bg = cfg.background;
    const LameParams t = cfg.plasmon();
    const double r0 = cfg.r0;

    std::set<ModeIndex> modes;
    for (const auto& [k, v] : src.h.entries()) modes.insert(k);
    for (const auto& [k, v] : src.g.entries()) modes.insert(k);

    DensityPair dp{ModalField(n_max), ModalField(n_max), {}};
    std::set<std::pair<int, int>> excited;
    for (const auto& k : modes) {
        const Complex h = src.h.get(k), g = src.g.get(k);
        if (h == 0.0 && g == 0.0) continue;
        const Complex xi = np_eigenvalue(k.family, k.n, bg);
        const Complex e = sl_eigenvalue(k.family, k.n, bg);
        const Complex et = sl_eigenvalue(k.family, k.n, t);
        const Complex d = resonance_denominator(k.family, k.n, cfg);
        const Complex num = g - (0.5 + xi) * h / (r0 * e);
        if (num == 0.0) {
            dp.psi.set(k, -h / (e * r0));
            continue;
        }
        excited.insert({k.family, k.n});
        if (std::abs(d) <= kSingularTol)
            throw SingularSystemError("resonance denominator vanishes for an excited mode");
        const Complex phi = num / d;
        dp.phi.set(k, phi);
        dp.psi.set(k, et / e * phi - h / (e * r0));
    }

    if (n_max >= 1) {
        for (const auto& r : scan_resonant_degrees(cfg.eps1, cfg.eps2, bg, std::max(n_max, 2), kResonanceTol))
            if (r.n <= n_max && !excited.count({r.family, r.n})) dp.unexcited_resonant.emplace_back(r.family, r.n);
    }
    return dp;
}

SourceData forward_modal_map(const DensityPair& dp, const PlasmonConfig& cfg) {
    const int n_max = std::max(dp.phi.n_max(), dp.psi.n_max());
    SourceData s = SourceData::make(ModalField(n_max), ModalField(n_max), cfg.r0);
    const LameParams bg = cfg.background;
    const LameParams t = cfg.plasmon();
    std::set<ModeIndex> modes;
    for (const auto& [k, v] : dp.phi.entries()) modes.insert(k);
    for (const auto& [k, v] : dp.psi.entries()) modes.insert(k);
    for (const auto& k : modes) {
        const Complex phi = dp.phi.get(k), psi = dp.psi.get(k);
        const Complex e = sl_eigenvalue(k.family, k.n, bg);
        const Complex xi = np_eigenvalue(k.family, k.n, bg);
        const Complex et = sl_eigenvalue(k.family, k.n, t);
        const Complex xit = np_eigenvalue(k.family, k.n, t);
        s.h.set(k, et * cfg.r0 * phi - e * cfg.r0 * psi);
        s.g.set(k, (-0.5 + xit) * phi - (0.5 + xi) * psi);
    }
    return s;
}

double dissipated_energy(const DensityPair& dp, const PlasmonConfig& cfg) {
    double e = 0.0;
    for (const auto& [k, v] : dp.phi.entries()) {
        if (v == 0.0) continue;
        const double w = dissipation_weight(k.family, k.n, cfg);
        e += std::norm(v) * w / -sl_eigenvalue(k.family, k.n, cfg.background).real();
    }
    return e;
}

FieldValue evaluate_field(const DensityPair& dp, const SourceData& src, const Vec3& x, const PlasmonConfig& cfg,
                          const QuadratureSpec& spec) {
    if (!x.allFinite()) throw ArgumentError("evaluation point must be finite");
    const double r = x.norm();
    const double r0 = cfg.r0;
    if (std::abs(r - r0) <= 1e-12 * r0) throw BoundaryEvaluationError("x lies on the interface; use one-sided limits");
    if (r == 0.0) return {CVec3::Zero(), false};

    const LameParams bg = cfg.background;
    const bool inside = r < r0;
    const LameParams mat = inside ? cfg.plasmon() : bg;
    const ModalField& dens = inside ? dp.phi : dp.psi;

    int n_max = std::max(dens.n_max(), src.h.n_max());
    const HarmonicTable tab(std::max(n_max, 1), x / r);
    FieldValue out{CVec3::Zero(), false};
    ModalField rest(dens.n_max());
    for (const auto& [k, v] : dens.entries()) {
        if (v == 0.0) continue;
        if (k.family != 1) {
            rest.set(k, v);
            continue;
        }
        const Complex e = sl_eigenvalue(1, k.n, mat);
        const double radial = inside ? std::pow(r, k.n) / std::pow(r0, k.n - 1) : std::pow(r0, k.n + 2) / std::pow(r, k.n + 1);
        out.value += v * hstar_normalizer(k, r0, bg) * e * radial * raw_eigenfunction(k, tab);
    }
    if (!rest.empty()) {
        out.value += single_layer_quadrature(rest, x, r0, mat, spec, bg);
        out.used_quadrature = true;
    }
    if (!inside) {
        bool has_source = false;
        for (const auto& [k, v] : src.h.entries()) has_source = has_source || v != 0.0;
        for (const auto& [k, v] : src.g.entries()) has_source = has_source || v != 0.0;
        if (has_source && !src.solid_family1)
            throw ArgumentError("exterior evaluation needs F; only solid family-1 sources define it off the sphere");
        for (const auto& [k, v] : src.h.entries()) {
            if (v == 0.0) continue;
            out.value += v * hstar_normalizer(k, r0, bg) * std::pow(r / r0, k.n) * raw_eigenfunction(k, tab);
        }
    }
    return out;
}

Complex family1_traction_coeff(RadialKind kind, int n, Complex mu, double r) {
    if (n < 1) throw DegreeError("degree must be at least 1");
    if (!(r > 0.0)) throw ArgumentError("radius must be positive");
    if (kind == RadialKind::Solid) return mu * double(n - 1) * std::pow(r, n - 1);
    return -mu * double(n + 2) * std::pow(r, -(n + 2));
}

}  // namespace epl
