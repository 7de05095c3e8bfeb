#include "commands.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include "elastoplasmon/cloaking.hpp"
#include "elastoplasmon/np_spectrum.hpp"
#include "elastoplasmon/oracle.hpp"
#include "elastoplasmon/parallel.hpp"
#include "elastoplasmon/transmission.hpp"

namespace epl::cli {

namespace {

const std::vector<std::string> kAllChecks{"gamma_split", "roots",       "weights",      "d1_positivity",
                                          "round_trip",  "cloak_oracle", "volume_energy", "eigen",
                                          "jump"};

Json log_range(double start, double stop, int count) {
    return {{"start", start}, {"stop", stop}, {"count", count}};
}

// Deterministic uniform draws on [0, 1) that do not depend on the standard
// library's distribution implementation.
class Draws {
public:
    explicit Draws(std::uint64_t seed) : rng_(seed) {}
    double uniform() { return double(rng_() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }
    int integer(int a, int b) { return a + int(uniform() * (b - a + 1)); }
    Complex unit_complex() {
        const double re = uniform(-1, 1);
        return {re, uniform(-1, 1)};
    }

private:
    std::mt19937_64 rng_;
};

double num(const Json& j, const char* key) {
    const Json& v = j.at(key);
    if (!v.is_number()) throw ConfigError(std::string("'") + key + "' must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError(std::string("'") + key + "' must be finite");
    return d;
}

int integer(const Json& j, const char* key) {
    const Json& v = j.at(key);
    if (!v.is_number_integer()) throw ConfigError(std::string("'") + key + "' must be an integer");
    return v.get<int>();
}

std::vector<double> deltas(const Json& j) {
    std::vector<double> out;
    if (j.is_array()) {
        for (const auto& v : j) {
            if (!v.is_number()) throw ConfigError("delta list entries must be numbers");
            out.push_back(v.get<double>());
        }
    } else if (j.is_object()) {
        const double a = num(j, "start"), b = num(j, "stop");
        const int c = integer(j, "count");
        if (!(a > 0.0 && b > 0.0) || c < 2) throw ConfigError("delta range needs positive ends and count >= 2");
        for (int i = 0; i < c; ++i) out.push_back(std::exp(std::log(a) + (std::log(b) - std::log(a)) * i / (c - 1)));
    } else {
        throw ConfigError("delta must be a list or {start, stop, count}");
    }
    if (out.size() < 2) throw ConfigError("delta sweep needs at least two values");
    for (double d : out)
        if (!(d > 0.0) || !std::isfinite(d)) throw ConfigError("delta values must be positive");
    return out;
}

LameParams material(const Json& cfg) {
    const Json& m = cfg.at("material");
    try {
        return LameParams::background(num(m, "lambda0"), num(m, "mu0"));
    } catch (const ArgumentError& e) {
        throw ConfigError(std::string("material: ") + e.what());
    }
}

Json header(const std::string& command, const Json& cfg) {
    return {{"tool", "elastoplasmon"}, {"version", version()}, {"command", command}, {"config", cfg}};
}

void write_file(const std::filesystem::path& p, const std::string& text) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + p.string());
    f << text;
}

CsvTable csv_with_meta(std::vector<std::string> cols, const std::string& command, const Json& cfg) {
    CsvTable t(std::move(cols));
    t.add_meta("tool", "elastoplasmon");
    t.add_meta("version", version());
    t.add_meta("command", command);
    t.add_meta("config", dump_json(cfg, 0).substr(0, dump_json(cfg, 0).size() - 1));
    return t;
}

std::string fd(double v) { return format_double(v); }

// ---- spectrum ----------------------------------------------------------------

int cmd_spectrum(const Json& cfg, const std::filesystem::path& out, std::ostream& log) {
    const LameParams bg = material(cfg);
    const int n_max = integer(cfg.at("spectrum"), "n_max");
    if (n_max < 1) throw ConfigError("spectrum.n_max must be >= 1");
    CsvTable t = csv_with_meta({"family", "n", "xi", "e"}, "spectrum", cfg);
    for (int f = 1; f <= 3; ++f)
        for (int n = 1; n <= n_max; ++n)
            t.add_row({std::to_string(f), std::to_string(n), fd(np_eigenvalue(f, n, bg).real()),
                       fd(sl_eigenvalue(f, n, bg).real())});
    write_file(out / "spectrum.csv", t.str());
    log << "spectrum: " << t.rows() << " rows\n";
    return kOk;
}

// ---- critical ----------------------------------------------------------------

int cmd_critical(const Json& cfg, const std::filesystem::path& out, std::ostream& log) {
    const LameParams bg = material(cfg);
    const Json& c = cfg.at("critical");
    const int n_max = integer(c, "n_max");
    if (n_max < 2) throw ConfigError("critical.n_max must be >= 2");
    const double eps1 = num(c, "eps1");
    std::vector<double> eps2s;
    for (const auto& v : c.at("eps2")) eps2s.push_back(v.get<double>());

    CsvTable t = csv_with_meta({"branch", "n", "eps_other", "value", "status", "violation"}, "critical", cfg);
    Json rows = Json::array();
    auto emit = [&](BranchKind k, int n, double other) {
        std::string status = "ok", violation;
        double value = std::nan("");
        try {
            value = critical_value({k, n}, other, bg);
            const double e1 = k == BranchKind::C3 ? value : eps1;
            const double e2 = k == BranchKind::C3 ? other : value;
            violation = to_string(classify_violation(e1, e2, bg));
        } catch (const PoleError&) {
            status = "pole";
        }
        t.add_row({to_string(k), std::to_string(n), fd(other), fd(value), status, violation});
        rows.push_back({{"branch", to_string(k)}, {"n", n}, {"eps_other", other}, {"value", value}, {"status", status},
                        {"violation", violation}});
    };
    for (int n = 2; n <= n_max; ++n) emit(BranchKind::C1, n, 0.0);
    for (int n = 1; n <= n_max; ++n) emit(BranchKind::C21, n, eps1);
    for (int n = 2; n <= n_max; ++n) emit(BranchKind::C22, n, 0.0);
    for (double e2 : eps2s)
        for (int n = 1; n <= n_max; ++n) emit(BranchKind::C3, n, e2);
    write_file(out / "critical.csv", t.str());
    Json j = header("critical", cfg);
    j["branches"] = rows;
    write_file(out / "critical.json", dump_json(j));
    log << "critical: " << t.rows() << " branch values\n";
    return kOk;
}

// ---- sweep -------------------------------------------------------------------

SourceData sweep_source(const Json& s, double r0, const LameParams& bg, int n_max) {
    Family1Table f1;
    for (const auto& e : s.at("family1")) f1[{integer(e, "n"), integer(e, "m")}] = Complex(num(e, "re"), e.value("im", 0.0));
    SourceData src = modal_source_from_family1(f1, r0, bg, n_max);
    const auto& extra = s.at("modes");
    if (!extra.empty()) src.solid_family1 = false;
    for (const auto& e : extra) {
        const auto idx = ModeIndex::make(integer(e, "family"), integer(e, "n"), integer(e, "m"));
        src.h.add(idx, Complex(e.value("h_re", 0.0), e.value("h_im", 0.0)));
        src.g.add(idx, Complex(e.value("g_re", 0.0), e.value("g_im", 0.0)));
    }
    return src;
}

struct Fit {
    double slope = std::nan("");
    double intercept = std::nan("");
};

Fit loglog_fit(const std::vector<double>& x, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int k = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(y[i] > 0.0)) continue;
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx, sy += ly, sxx += lx * lx, sxy += lx * ly, ++k;
    }
    Fit f;
    if (k < 2) return f;
    f.slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
    f.intercept = (sy - f.slope * sx) / k;
    return f;
}

int cmd_sweep(const Json& cfg, const std::filesystem::path& out, std::ostream& log) {
    const LameParams bg = material(cfg);
    const Json& s = cfg.at("sweep");
    const double eps1 = num(s, "eps1"), eps2 = num(s, "eps2"), r0 = num(s, "r0");
    const int n_max = integer(s, "n_max");
    if (n_max < 1) throw ConfigError("sweep.n_max must be >= 1");
    const auto ds = deltas(s.at("delta"));
    SourceData src;
    try {
        (void)PlasmonConfig::make(eps1, eps2, ds.front(), bg, r0);
        src = sweep_source(s.at("source"), r0, bg, n_max);
    } catch (const ArgumentError& e) {
        throw ConfigError(std::string("sweep: ") + e.what());
    }
    const int threads = cfg.at("run").at("threads").get<int>();

    struct Row {
        double delta, energy, phi_norm, phi_prime_norm;
        std::vector<std::pair<int, int>> unexcited;
    };
    const auto rows = parallel_map(ds.size(), threads, [&](std::size_t i) {
        const PlasmonConfig pc = PlasmonConfig::make(eps1, eps2, ds[i], bg, r0);
        const DensityPair dp = solve_single_inclusion(src, pc);
        return Row{ds[i], dissipated_energy(dp, pc), dp.phi.norm(), dp.phi_prime().norm(), dp.unexcited_resonant};
    });

    CsvTable t = csv_with_meta({"delta", "energy", "phi_norm", "phi_prime_norm"}, "sweep", cfg);
    std::vector<double> x, y;
    Json jr = Json::array();
    for (const auto& r : rows) {
        t.add_row({fd(r.delta), fd(r.energy), fd(r.phi_norm), fd(r.phi_prime_norm)});
        jr.push_back({{"delta", r.delta}, {"energy", r.energy}, {"phi_norm", r.phi_norm}, {"phi_prime_norm", r.phi_prime_norm}});
        x.push_back(r.delta);
        y.push_back(r.energy);
    }
    const Fit fit = loglog_fit(x, y);
    Json unexc = Json::array();
    for (const auto& [f, n] : rows.front().unexcited) unexc.push_back({{"family", f}, {"n", n}});
    Json resonant = Json::array();
    for (const auto& r : scan_resonant_degrees(eps1, eps2, bg, std::max(n_max, 2)))
        resonant.push_back({{"family", r.family}, {"n", r.n}, {"branch", to_string(r.branch.kind)}, {"abs_D_at_zero", r.abs_d_at_zero}});

    Json j = header("sweep", cfg);
    j["slope"] = fit.slope;
    j["intercept"] = fit.intercept;
    j["energy_ratio_last_first"] = y.front() > 0.0 ? y.back() / y.front() : std::nan("");
    j["resonant_degrees"] = resonant;
    j["unexcited_resonant"] = unexc;
    j["rows"] = jr;
    write_file(out / "sweep.csv", t.str());
    write_file(out / "sweep.json", dump_json(j));
    log << "sweep: " << rows.size() << " points, log-log slope " << fd(fit.slope) << "\n";
    return kOk;
}

// ---- cloak -------------------------------------------------------------------

int cmd_cloak(const Json& cfg, const std::filesystem::path& out, std::ostream& log) {
    const LameParams bg = material(cfg);
    const Json& c = cfg.at("cloak");
    const double ri = num(c, "r_i"), re = num(c, "r_e");
    if (!(ri > 0.0 && re > ri)) throw ConfigError("cloak: need 0 < r_i < r_e");
    const double rstar = critical_radius(ri, re);
    double rs = c.at("source_radius").is_null() ? num(c, "source_radius_factor") * rstar : num(c, "source_radius");
    if (!(rs > re)) throw ConfigError("cloak: source radius must exceed r_e");
    const int n_max = integer(c, "n_max");
    if (n_max < 1) throw ConfigError("cloak.n_max must be >= 1");
    auto ds = deltas(c.at("delta"));
    for (double d : ds)
        if (!(d < ri / re)) throw ConfigError("cloak: every delta must be below rho so that n0 > 1");
    CalrOptions opt;
    opt.blowup_factor = num(c, "blowup_factor");
    opt.bound_factor = num(c, "bound_factor");
    opt.sample_factor = num(c, "sample_factor");
    opt.n_samples = integer(c, "n_samples");
    opt.eps1 = num(c, "eps1");
    opt.eps3 = num(c, "eps3");
    if (opt.n_samples < 1) throw ConfigError("cloak.n_samples must be >= 1");

    const Family1Table f = decaying_source(re, rs, n_max);
    const CalrReport rep = calr_verdict(f, rs, ri, re, bg, ds, opt, cfg.at("run").at("threads").get<int>());

    CsvTable t = csv_with_meta({"delta", "n0", "eps2", "eps4", "energy", "max_exterior_sample"}, "cloak", cfg);
    Json curve = Json::array();
    for (const auto& p : rep.curve) {
        t.add_row({fd(p.delta), std::to_string(p.n0), fd(p.eps2), fd(p.eps4), fd(p.energy), fd(p.max_exterior_sample)});
        curve.push_back({{"delta", p.delta}, {"n0", p.n0}, {"eps2", p.eps2}, {"eps4", p.eps4}, {"energy", p.energy},
                         {"max_exterior_sample", p.max_exterior_sample}});
    }
    Json j = header("cloak", cfg);
    j["critical_radius"] = rstar;
    j["source_radius"] = rs;
    j["sample_radius"] = opt.sample_factor * re * re / ri;
    j["resonant"] = rep.resonant;
    j["energy_ratio"] = rep.energy_ratio;
    j["field_variation"] = rep.field_variation;
    j["curve"] = curve;
    write_file(out / "cloak.csv", t.str());
    write_file(out / "cloak.json", dump_json(j));
    log << "cloak: resonant=" << (rep.resonant ? "true" : "false") << " energy_ratio=" << fd(rep.energy_ratio) << "\n";
    return kOk;
}

// ---- verify ------------------------------------------------------------------

Json record(const std::string& check, Json params, double measured, double expected, double rel_error, bool pass) {
    return {{"check", check}, {"params", std::move(params)}, {"measured", measured}, {"expected", expected},
            {"rel_error", rel_error}, {"pass", pass}};
}

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

void check_gamma(const LameParams& bg, double tol, Json& out) {
    const auto rep = verify_gamma_split(default_gamma_samples(), bg, 30);
    out.push_back(record("gamma_split", {{"n_terms", 30}}, rep.max_residual, 0.0, rep.max_residual,
                         rep.max_residual <= tol * 1e-10));
}

void check_roots(const LameParams& bg, double tol, Json& out) {
    double worst = 0.0;
    int count = 0, skipped = 0;
    auto probe = [&](BranchKind k, int n, double other) {
        const double c = critical_value({k, n}, other, bg);
        const int fam = CriticalBranch{k, n}.family();
        const double e1 = k == BranchKind::C3 ? c : other;
        const double e2 = k == BranchKind::C3 ? other : c;
        try {
            worst = std::max(worst, std::abs(resonance_denominator(fam, n, e1, e2, 0.0, bg)));
            ++count;
        } catch (const DegenerateMaterialError&) {
            ++skipped;
        }
    };
    for (int n = 1; n <= 10; ++n) {
        if (n >= 2) probe(BranchKind::C1, n, 1.0);
        probe(BranchKind::C21, n, 1.0);
        if (n >= 2) probe(BranchKind::C22, n, 1.0);
        for (double e2 : {-3.0, 2.0}) probe(BranchKind::C3, n, e2);
    }
    out.push_back(record("roots", {{"branches", count}, {"degenerate_skipped", skipped}}, worst, 0.0, worst, worst <= tol * 1e-12));
}

void check_weights(const LameParams& bg, double tol, Draws& rng, Json& out) {
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double e1 = rng.uniform(-5, 5);
        const double e2 = rng.uniform(-5, 5);
        const PlasmonConfig pc = PlasmonConfig::make(e1, e2, rng.uniform(1e-4, 1e-1), bg);
        const int n = rng.integer(1, 20);
        for (int f = 1; f <= 3; ++f) {
            const double direct = dissipation_weight(f, n, pc);
            const double closed = weight_closed_form(f, n, pc);
            worst = std::max(worst, std::abs(direct - closed) / std::max(std::abs(direct), 1e-300));
        }
    }
    out.push_back(record("weights", {{"draws", 100}}, worst, 0.0, worst, worst <= tol * 1e-12));
}

void check_d1(Draws& rng, int draws, Json& out) {
    double min_d1 = std::numeric_limits<double>::infinity();
    for (int i = 0; i < draws; ++i) {
        double l0, m0;
        do {
            l0 = rng.uniform(0.0, 10.0);
            m0 = rng.uniform(0.0, 10.0);
        } while (!(m0 > 0.0 && 3 * l0 + 2 * m0 > 0.0));
        const double e1 = rng.uniform(-10, 10);
        const double e2 = rng.uniform(-10, 10);
        const PlasmonConfig pc = PlasmonConfig::make(e1, e2, 1e-3, LameParams::background(l0, m0));
        const double d1 = d_coefficients(rng.integer(1, 50), pc).d1;
        min_d1 = std::min(min_d1, d1);
    }
    out.push_back(record("d1_positivity", {{"draws", draws}}, min_d1, 0.0, 0.0, min_d1 > 0.0));
}

void check_round_trip(const LameParams& bg, double tol, Draws& rng, Json& out) {
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const int n_max = 10;
        SourceData src = SourceData::make(ModalField(n_max), ModalField(n_max), 1.0);
        for (const auto& k : all_modes(n_max)) {
            src.h.set(k, rng.unit_complex());
            src.g.set(k, rng.unit_complex());
        }
        const double delta = std::pow(10.0, rng.uniform(-6, -1));
        const double e1 = rng.uniform(-5, 5);
        const double e2 = rng.uniform(-5, 5);
        const PlasmonConfig pc = PlasmonConfig::make(e1, e2, delta, bg);
        const SourceData back = forward_modal_map(solve_single_inclusion(src, pc), pc);
        double diff = 0.0, ref = 0.0;
        for (const auto& [k, v] : src.h.entries()) diff += std::norm(back.h.get(k) - v), ref += std::norm(v);
        for (const auto& [k, v] : src.g.entries()) diff += std::norm(back.g.get(k) - v), ref += std::norm(v);
        worst = std::max(worst, std::sqrt(diff / ref));
    }
    out.push_back(record("round_trip", {{"trials", 20}}, worst, 0.0, worst, worst <= tol * 1e-12));
}

void check_cloak_oracle(const LameParams& bg, double tol, Draws& rng, int count, Json& out) {
    double worst = 0.0;
    for (int i = 0; i < count; ++i) {
        const int n = rng.integer(1, 20);
        const double rho = rng.uniform(0.1, 0.9);
        const double delta = std::pow(10.0, rng.uniform(-6, -1));
        const double eps2 = rng.uniform(-5, 5);
        const double eps4 = rng.uniform(0.1, 30);
        const ShellConfig sc = ShellConfig::make(rho, 1.0, 1.0, eps2, 1.0, eps4, delta, bg);
        const Complex f = rng.unit_complex();
        const CloakCoefficients a = shell_coefficients(n, 0, f, sc);
        const CloakCoefficients b = modal_system_solve(n, 0, f, sc).coeffs;
        const double scale = std::max({std::abs(a.upsilon), std::abs(a.phi), std::abs(a.varphi), std::abs(a.psi)});
        for (auto [x, y] : {std::pair{a.upsilon, b.upsilon}, {a.phi, b.phi}, {a.varphi, b.varphi}, {a.psi, b.psi}})
            worst = std::max(worst, std::abs(x - y) / scale);
        worst = std::max(worst, rel(b.d_n, a.d_n));
    }
    out.push_back(record("cloak_oracle", {{"instances", count}}, worst, 0.0, worst, worst <= tol * 1e-10));
}

void check_volume_energy(const LameParams& bg, double tol, Json& out) {
    const PlasmonConfig pc = PlasmonConfig::make(1.0, -2.5, 1e-2, bg);
    ModalField phi(3);
    phi.set({1, 3, 0}, 1.0);
    phi.set({1, 2, 1}, Complex(0.3, -0.4));
    const DensityPair dp{phi, ModalField(3), {}};
    const double a = volume_energy(phi, pc);
    const double b = dissipated_energy(dp, pc);
    const double r = std::abs(a - b) / b;
    out.push_back(record("volume_energy", {{"modes", "(1,3,0),(1,2,1)"}}, a, b, r, r <= tol * 1e-4));
}

void check_eigen(const LameParams& bg, double tol, int n_max, Json& out) {
    std::vector<ModeIndex> modes;
    for (int f = 1; f <= 3; ++f)
        for (int n = 1; n <= n_max; ++n) modes.push_back({f, n, 0});
    for (const auto& r : verify_eigenrelations(modes, 1.0, bg, QuadratureSpec{})) {
        const Json p = {{"family", r.idx.family}, {"n", r.idx.n}, {"m", r.idx.m}};
        out.push_back(record("eigen_single_layer", p, r.measured_e.real(), r.expected_e.real(), r.relative_error,
                             r.relative_error <= tol * 1e-4));
        out.push_back(record("eigen_traction", p, r.traction_minus.real(), r.expected_minus.real(), r.traction_error,
                             r.traction_error <= tol * 1e-3));
    }
}

void check_jump(const LameParams& bg, double tol, Draws& rng, Json& out) {
    ModalField d(3);
    for (const auto& k : all_modes(3)) d.set(k, rng.unit_complex());
    const auto rep = verify_jump(d, 1.0, bg, QuadratureSpec{});
    out.push_back(record("jump", {{"n_max", 3}}, rep.max_defect, 0.0, rep.max_defect, rep.max_defect <= tol * 1e-3));
}

int cmd_verify(const Json& cfg, const std::filesystem::path& out, std::ostream& log) {
    const LameParams bg = material(cfg);
    const Json& v = cfg.at("verify");
    std::vector<std::string> checks;
    for (const auto& c : v.at("checks")) checks.push_back(c.get<std::string>());
    for (const auto& c : checks)
        if (std::find(kAllChecks.begin(), kAllChecks.end(), c) == kAllChecks.end())
            throw ConfigError("unknown verification check '" + c + "'");
    const double tol = num(v, "tolerance_scale");
    if (!(tol > 0.0)) throw ConfigError("verify.tolerance_scale must be positive");
    Draws rng(std::uint64_t(cfg.at("run").at("seed").get<long long>()));
    Json records = Json::array();
    for (const auto& c : kAllChecks) {
        if (std::find(checks.begin(), checks.end(), c) == checks.end()) continue;
        if (c == "gamma_split") check_gamma(bg, tol, records);
        if (c == "roots") check_roots(bg, tol, records);
        if (c == "weights") check_weights(bg, tol, rng, records);
        if (c == "d1_positivity") check_d1(rng, integer(v, "fuzz_draws"), records);
        if (c == "round_trip") check_round_trip(bg, tol, rng, records);
        if (c == "cloak_oracle") check_cloak_oracle(bg, tol, rng, integer(v, "cloak_instances"), records);
        if (c == "volume_energy") check_volume_energy(bg, tol, records);
        if (c == "eigen") check_eigen(bg, tol, integer(v, "eigen_n_max"), records);
        if (c == "jump") check_jump(bg, tol, rng, records);
    }
    bool all = true;
    for (const auto& r : records) all = all && r.at("pass").get<bool>();
    Json j = header("verify", cfg);
    j["pass"] = all;
    j["records"] = records;
    write_file(out / "verify.json", dump_json(j));
    log << "verify: " << records.size() << " records, " << (all ? "all passed" : "FAILURES") << "\n";
    return all ? kOk : kVerificationFailure;
}

}  // namespace

Json default_config() {
    Json c;
    c["run"] = {{"threads", 1}, {"seed", 20240601}};
    c["material"] = {{"lambda0", 2.0}, {"mu0", 1.0}};
    c["spectrum"] = {{"n_max", 10}};
    c["critical"] = {{"n_max", 10}, {"eps1", 1.0}, {"eps2", Json::array({-3.0, 1.0, 2.0})}};
    c["sweep"] = {{"eps1", 1.0},
                  {"eps2", -2.5},
                  {"r0", 1.0},
                  {"n_max", 10},
                  {"delta", log_range(1e-3, 1e-6, 7)},
                  {"source", {{"family1", Json::array({{{"n", 3}, {"m", 0}, {"re", 1.0}, {"im", 0.0}}})},
                              {"modes", Json::array()}}}};
    c["cloak"] = {{"r_i", 0.5},
                  {"r_e", 1.0},
                  {"source_radius", nullptr},
                  {"source_radius_factor", 0.8},
                  {"n_max", 80},
                  {"delta", log_range(1e-2, 1e-8, 13)},
                  {"blowup_factor", 1e3},
                  {"bound_factor", 10.0},
                  {"sample_factor", 1.1},
                  {"n_samples", 8},
                  {"eps1", 1.0},
                  {"eps3", 1.0}};
    c["verify"] = {{"checks", kAllChecks}, {"fuzz_draws", 10000}, {"cloak_instances", 500}, {"eigen_n_max", 2},
                   {"tolerance_scale", 1.0}};
    return c;
}

Json resolve_config(const Json& user) {
    Json base = default_config();
    if (user.is_null()) return base;
    if (!user.is_object()) throw ConfigError("config root must be an object");
    for (auto it = user.begin(); it != user.end(); ++it) {
        if (!base.contains(it.key())) throw ConfigError("unknown config section '" + it.key() + "'");
        Json& sec = base[it.key()];
        if (!it.value().is_object()) throw ConfigError("config section '" + it.key() + "' must be an object");
        for (auto kv = it.value().begin(); kv != it.value().end(); ++kv) {
            if (!sec.contains(kv.key())) throw ConfigError("unknown config key '" + it.key() + "." + kv.key() + "'");
            sec[kv.key()] = kv.value();
        }
    }
    return base;
}

Json load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file " + path);
    try {
        return Json::parse(f);
    } catch (const Json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
}

int run(const Options& opt, std::ostream& log) {
    try {
        Json cfg = resolve_config(opt.config_path.empty() ? Json() : load_config(opt.config_path));
        if (opt.threads >= 0) cfg["run"]["threads"] = opt.threads;
        if (opt.seed >= 0) cfg["run"]["seed"] = opt.seed;
        if (!opt.checks.empty()) cfg["verify"]["checks"] = opt.checks;
        if (!cfg["run"]["threads"].is_number_integer() || cfg["run"]["threads"].get<int>() < 1)
            throw ConfigError("run.threads must be a positive integer");
        if (!cfg["run"]["seed"].is_number_integer()) throw ConfigError("run.seed must be an integer");

        const std::filesystem::path out(opt.out_dir);
        std::error_code ec;
        std::filesystem::create_directories(out, ec);
        if (ec) throw ConfigError("cannot create output directory " + opt.out_dir);

        if (opt.command == "spectrum") return cmd_spectrum(cfg, out, log);
        if (opt.command == "critical") return cmd_critical(cfg, out, log);
        if (opt.command == "sweep") return cmd_sweep(cfg, out, log);
        if (opt.command == "cloak") return cmd_cloak(cfg, out, log);
        if (opt.command == "verify") return cmd_verify(cfg, out, log);
        throw ConfigError("unknown command '" + opt.command + "'");
    } catch (const ConfigError& e) {
        log << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const Json::exception& e) {
        log << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const SingularSystemError& e) {
        log << "numerical singularity: " << e.what() << "\n";
        return kSingular;
    } catch (const SingularityError& e) {
        log << "numerical singularity: " << e.what() << "\n";
        return kSingular;
    } catch (const PoleError& e) {
        log << "numerical singularity: " << e.what() << "\n";
        return kSingular;
    } catch (const DegenerateMaterialError& e) {
        log << "numerical singularity: " << e.what() << "\n";
        return kSingular;
    } catch (const Error& e) {
        log << "config error: " << e.what() << "\n";
        return kConfigError;
    }
}

int main_entry(int argc, char** argv) {
    CLI::App app{"Elastic plasmon resonance: spectra, critical values, sweeps, cloaking and oracle checks"};
    app.set_version_flag("--version", version());
    Options opt;
    app.add_option("--config", opt.config_path, "JSON config file");
    app.add_option("--out", opt.out_dir, "output directory");
    app.add_option("--threads", opt.threads, "worker threads for sweeps")->check(CLI::PositiveNumber);
    app.add_option("--seed", opt.seed, "seed for randomized verification suites")->check(CLI::NonNegativeNumber);
    app.require_subcommand(1);
    app.fallthrough();
    const std::pair<const char*, const char*> subs[] = {
        {"spectrum", "NP and single-layer eigenvalues of a ball"},
        {"critical", "critical Lame values per branch and degree"},
        {"sweep", "dissipated energy of a single inclusion over a delta sweep"},
        {"cloak", "core-shell energy and exterior field over a delta sweep"},
        {"verify", "run the built-in numerical checks"},
    };
    for (const auto& [name, help] : subs) {
        auto* sub = app.add_subcommand(name, help);
        if (std::string(name) == "verify") sub->add_option("--check", opt.checks, "run only these checks");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfigError;
    }
    opt.command = app.get_subcommands().front()->get_name();
    return run(opt, std::cerr);
}

}  // namespace epl::cli
