// Command-line surface for the superradiance toolkit.
//
// Subcommands:
//   simulate    diagonalize a finite lattice (or Dicke) coupling matrix
//   dispersion  exact lattice sum I_d(k) over a wavenumber grid
//   analytic    continuum counterpart of `dispersion`
//   design      invert the continuum curves for target (Gamma*, Delta*)
//   validate    run the cross-check suites, emit a machine-readable report
//
// Configuration comes from flags and/or a JSON file (--config); explicit
// flags override file values.  Exit codes: 0 success, 2 invalid input,
// 3 numerical failure, 4 infeasible design target (1: validation suite
// reported failures).

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "supra/analytics.hpp"
#include "supra/design.hpp"
#include "supra/io.hpp"
#include "supra/spectrum.hpp"
#include "supra/validate.hpp"

namespace {

using nlohmann::json;
using namespace supra;

constexpr int schema_version = 1;

json load_config(const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) throw validation_error(errc::bad_config, "cannot open config file " + path);
    std::string text;
    char buf[4096];
    size_t n;
    while ((n = std::fread(buf, 1, sizeof(buf), f)) > 0) text.append(buf, n);
    std::fclose(f);
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw validation_error(errc::bad_config, "config is not valid JSON: " + std::string(e.what()));
    }
    if (!j.is_object()) throw validation_error(errc::bad_config, "config must be a JSON object");
    // outputs of `design` carry their inputs under "config"; accept them directly
    if (j.contains("config") && j.at("config").is_object()) j = j.at("config");
    return j;
}

template <typename T>
void fill(const json& j, const char* key, const CLI::Option* opt, T& target) {
    if (opt->count() > 0 || !j.contains(key)) return;
    try {
        target = j.at(key).get<T>();
    } catch (const json::exception&) {
        throw validation_error(errc::bad_config, std::string("config key '") + key + "' has the wrong type");
    }
}

void emit(const std::string& text, const std::string& output_path) {
    if (output_path.empty())
        std::fwrite(text.data(), 1, text.size(), stdout);
    else
        io::write_text_atomic(output_path, text);
}

std::string table_to_string(const std::vector<std::string>& header,
                            const std::vector<std::vector<double>>& rows,
                            const std::string& format) {
    if (format == "csv") return io::csv_table(header, rows);
    json j;
    j["schema_version"] = schema_version;
    j["columns"] = header;
    j["rows"] = rows;
    return j.dump(2) + "\n";
}

// ---------------------------------------------------------------- simulate

struct SimulateOpts {
    int d = 1;
    int m = 0;
    double k0a = 3.0;
    double alpha = 0.0;
    double A = 1.0;
    double A_real = 0.0, A_imag = 0.0;
    int epsilon = +1;
    bool compensated = false;
    double delta_omega0 = 0.0;
    bool dicke = false;
    long n = 0;
    std::string config, output, format = "csv";
};

CouplingModel model_from_flags(int d, double A, double alpha, int epsilon, bool compensated,
                               bool custom, double A_real, double A_imag) {
    if (custom) {
        CouplingModel m;
        m.A = cplx(A_real, A_imag);
        m.alpha = alpha;
        m.epsilon = epsilon;
        m.d = d;
        m.custom = true;
        m.validate();
        return m;
    }
    if (compensated) {
        if (d != 2)
            throw validation_error(errc::bad_config, "--compensated applies to d = 2 only");
        return compensated_coupling_2d(A, alpha, epsilon);
    }
    return standard_coupling(d, A, alpha, epsilon);
}

int run_simulate(const SimulateOpts& o, bool custom_A) {
    SingleAtomTerm self;
    self.delta_omega0 = o.delta_omega0;

    Eigen::MatrixXcd M;
    if (o.dicke) {
        if (o.n <= 0) throw validation_error(errc::bad_config, "--dicke requires --n");
        M = dicke_matrix(o.n, self);
    } else {
        if (o.m <= 0)
            throw validation_error(errc::bad_config, "simulate needs --m (or --dicke with --n)");
        LatticeSpec spec;
        spec.d = o.d;
        spec.k0a = o.k0a;
        spec.m = o.m;
        const CouplingModel model = model_from_flags(o.d, o.A, o.alpha, o.epsilon, o.compensated,
                                                     custom_A, o.A_real, o.A_imag);
        M = coupling_matrix(build_lattice(spec), model, self);
    }
    const SpectrumResult res = solve_modes(M, self);

    std::vector<std::vector<double>> rows;
    rows.reserve(static_cast<size_t>(res.eigenvalues.size()));
    for (long i = 0; i < res.eigenvalues.size(); ++i)
        rows.push_back({static_cast<double>(i), res.eigenvalues(i).real(),
                        res.eigenvalues(i).imag(), res.rates(i), res.shifts(i)});
    emit(table_to_string({"index", "re_E", "im_E", "gamma", "delta"}, rows, o.format), o.output);
    return 0;
}

// -------------------------------------------------------------- dispersion

struct DispersionOpts {
    int d = 1;
    int m = 0;
    double k0a = 3.0;
    double alpha = 0.0;
    double A = 1.0;
    double A_real = 0.0, A_imag = 0.0;
    int epsilon = +1;
    bool compensated = false;
    bool matched_azimuth = false;
    double theta = pi / 2.0;
    double phi = 0.0;
    double k_min = 0.0, k_max = 0.0;
    double xi_max = 0.0;
    int points = 201;
    std::string config, output, format = "csv";
};

int run_dispersion(const DispersionOpts& o, bool custom_A, bool have_range, bool have_xi) {
    if (o.m <= 0) throw validation_error(errc::bad_config, "dispersion needs --m");
    LatticeSpec spec;
    spec.d = o.d;
    spec.k0a = o.k0a;
    spec.m = o.m;
    const CouplingModel model = model_from_flags(o.d, o.A, o.alpha, o.epsilon, o.compensated,
                                                 custom_A, o.A_real, o.A_imag);
    const auto lattice = build_lattice(spec);
    const double phi = o.matched_azimuth ? matched_scan_azimuth(o.d) : o.phi;
    const double b =
        dimension_constants(o.d, o.d == 3 ? std::optional<double>(o.theta) : std::nullopt).b;
    const double scale = o.k0a * b * std::pow(static_cast<double>(spec.N()), 1.0 / o.d);

    double k_min = o.k_min, k_max = o.k_max;
    if (have_xi) {
        if (have_range)
            throw validation_error(errc::bad_config, "--xi-max conflicts with --k-min/--k-max");
        k_min = 1.0 - o.xi_max / scale;
        k_max = 1.0 + o.xi_max / scale;
    } else if (!have_range) {
        k_min = 1.0 - 3.0 * pi / scale; // default: the universal-curve window
        k_max = 1.0 + 3.0 * pi / scale;
    }

    Wavevector kv0;
    kv0.k = 1.0;
    kv0.theta = o.theta;
    kv0.phi = phi;
    double ref = lattice_sum(lattice, model, kv0).chi - 1.0;
    if (!(std::abs(ref) > 0.0)) {
        std::cerr << "warning: chi(k0) - 1 = 0; emitting unnormalized chi_hat/shift_hat\n";
        ref = 1.0;
    }

    const auto pts = dispersion_scan(lattice, model, k_min, k_max, o.points, o.theta, phi);
    std::vector<std::vector<double>> rows;
    rows.reserve(pts.size());
    for (const auto& p : pts)
        rows.push_back({p.k, (p.k - 1.0) * scale, (p.chi - 1.0) / ref, p.shift / ref, p.chi,
                        p.shift, p.I.real(), p.I.imag()});
    emit(table_to_string({"k", "xi", "chi_hat", "shift_hat", "chi", "shift", "re_I", "im_I"}, rows,
                         o.format),
         o.output);
    return 0;
}

// ---------------------------------------------------------------- analytic

struct AnalyticOpts {
    int d = 1;
    double N = 0.0;
    double k0a = 3.0;
    double alpha = 0.0;
    double A = 1.0;
    int epsilon = +1;
    double theta = pi / 2.0;
    double k_min = 0.0, k_max = 0.0;
    double xi_max = 0.0;
    int points = 201;
    std::string config, output, format = "csv";
};

int run_analytic(const AnalyticOpts& o, bool have_range, bool have_xi) {
    if (!(o.N >= 1.0)) throw validation_error(errc::bad_config, "analytic needs --N >= 1");
    AnalyticContext ctx;
    ctx.d = o.d;
    ctx.alpha = o.alpha;
    ctx.epsilon = o.epsilon;
    ctx.A = (o.d == 3) ? cplx(0.0, -o.A) : cplx(o.A, 0.0);
    ctx.k0a = o.k0a;
    ctx.N = o.N;
    if (o.d == 3) ctx.theta = o.theta;
    ctx.validate();
    if (ctx.N < 100.0)
        std::cerr << "warning: continuum formulas are approximate below N ~ 100\n";

    const double b = dimension_constants(ctx.d, ctx.theta).b;
    const double scale = ctx.k0a * b * std::pow(ctx.N, 1.0 / ctx.d);
    double k_min = o.k_min, k_max = o.k_max;
    if (have_xi) {
        if (have_range)
            throw validation_error(errc::bad_config, "--xi-max conflicts with --k-min/--k-max");
        k_min = 1.0 - o.xi_max / scale;
        k_max = 1.0 + o.xi_max / scale;
    } else if (!have_range) {
        k_min = 1.0 - 3.0 * pi / scale;
        k_max = 1.0 + 3.0 * pi / scale;
    }
    if (!(o.points >= 2)) throw validation_error(errc::bad_grid, "need at least 2 grid points");
    if (!(k_min > 0.0) || !(k_max > k_min))
        throw validation_error(errc::bad_wavevector, "require 0 < k_min < k_max");

    const double ref = chi_max(ctx) - 1.0;
    bool outside = false;
    std::vector<std::vector<double>> rows;
    rows.reserve(static_cast<size_t>(o.points));
    for (int i = 0; i < o.points; ++i) {
        const double k = k_min + (k_max - k_min) * i / double(o.points - 1);
        const ContinuumResult r = continuum_I(ctx, k);
        outside = outside || !r.in_window;
        rows.push_back({r.k, (r.k - 1.0) * scale, (r.chi - 1.0) / ref, r.shift / ref, r.chi,
                        r.shift, r.I.real(), r.I.imag()});
    }
    if (outside)
        std::cerr << "warning: part of the grid lies outside the validity window |k-k0| <= pi/(a b_d N^(1/d))\n";
    emit(table_to_string({"k", "xi", "chi_hat", "shift_hat", "chi", "shift", "re_I", "im_I"}, rows,
                         o.format),
         o.output);
    return 0;
}

// ------------------------------------------------------------------ design

struct DesignOpts {
    double gamma = 0.0;
    double delta = 0.0;
    int d = 1;
    double alpha = 0.0;
    int epsilon = +1;
    double A = 1.0;
    std::string free = "N";
    double k0a = 0.0;
    double N = 0.0;
    double theta = pi / 2.0;
    std::string config, output;
};

int run_design(const DesignOpts& o, bool have_eps, bool have_k0a, bool have_N, bool have_theta) {
    DesignTarget t;
    t.gamma_target = o.gamma;
    t.delta_target = o.delta;
    t.d = o.d;
    t.alpha = o.alpha;
    if (have_eps) t.epsilon = o.epsilon;
    t.A_magnitude = o.A;
    if (o.free == "N")
        t.free_parameter = DesignTarget::Free::N;
    else if (o.free == "k0a")
        t.free_parameter = DesignTarget::Free::k0a;
    else
        throw validation_error(errc::bad_config, "--free must be N or k0a");
    if (have_k0a) t.k0a = o.k0a;
    if (have_N) t.N = o.N;
    if (o.d == 3 || have_theta) t.theta = o.theta;

    const DesignSolution s = solve_design(t);

    json cfg;
    cfg["gamma"] = t.gamma_target;
    cfg["delta"] = t.delta_target;
    cfg["d"] = t.d;
    cfg["alpha"] = t.alpha;
    cfg["epsilon"] = s.epsilon;
    cfg["A"] = t.A_magnitude;
    cfg["free"] = o.free;
    if (t.k0a) cfg["k0a"] = *t.k0a;
    if (t.N) cfg["N"] = *t.N;
    if (t.theta) cfg["theta"] = *t.theta;

    json sol;
    sol["xi"] = s.xi;
    sol["chi_max"] = s.chi_max;
    sol["d"] = s.d;
    sol["alpha"] = s.alpha;
    sol["epsilon"] = s.epsilon;
    sol["A_real"] = s.A.real();
    sol["A_imag"] = s.A.imag();
    sol["k0a"] = s.k0a;
    sol["N_real"] = s.N_real;
    sol["N"] = s.N;
    sol["m"] = s.m;
    sol["k"] = s.k;
    sol["gamma_pre"] = s.gamma_pre;
    sol["delta_pre"] = s.delta_pre;
    sol["gamma_residual"] = s.gamma_residual;
    sol["delta_residual"] = s.delta_residual;
    sol["warnings"] = s.warnings;

    json out;
    out["schema_version"] = schema_version;
    out["config"] = cfg;
    out["solution"] = sol;
    emit(out.dump(2) + "\n", o.output);
    return 0;
}

// ---------------------------------------------------------------- validate

struct ValidateOpts {
    std::string suite = "all";
    unsigned seed = 1;
    std::string config, output;
};

int run_validate(const ValidateOpts& o) {
    std::vector<checks::Check> results;
    if (o.suite == "all") {
        results = checks::run_all(o.seed);
    } else if (o.suite == "trace") {
        results.push_back(checks::trace_conservation(o.seed));
    } else if (o.suite == "dicke") {
        results.push_back(checks::dicke_limit());
    } else if (o.suite == "collapse") {
        results.push_back(checks::universal_collapse());
        results.push_back(checks::shift_offset());
        results.push_back(checks::resonance_shift());
    } else if (o.suite == "closedform") {
        results.push_back(checks::closed_form_agreement());
        results.push_back(checks::specfun_identities());
    } else if (o.suite == "roundtrip") {
        results.push_back(checks::design_roundtrip(o.seed + 1));
        results.push_back(checks::similarity_rules());
    } else if (o.suite == "scaling") {
        results.push_back(checks::enhancement_scaling());
    } else {
        throw validation_error(errc::bad_config,
                               "--suite must be one of trace, dicke, collapse, closedform, "
                               "roundtrip, scaling, all");
    }

    bool all_pass = true;
    json arr = json::array();
    for (const auto& c : results) {
        all_pass = all_pass && c.pass;
        json jc;
        jc["name"] = c.name;
        jc["pass"] = c.pass;
        jc["value"] = c.value;
        jc["tolerance"] = c.tolerance;
        jc["note"] = c.note;
        arr.push_back(jc);
    }
    json out;
    out["schema_version"] = schema_version;
    out["suite"] = o.suite;
    out["seed"] = o.seed;
    out["checks"] = arr;
    out["all_pass"] = all_pass;
    emit(out.dump(2) + "\n", o.output);
    return all_pass ? 0 : 1;
}

// -------------------------------------------------------------------- main

int run(int argc, char** argv) {
    CLI::App app{"superradiance toolkit: lattice numerics, continuum analytics, inverse design"};
    app.require_subcommand(1);

    // simulate
    SimulateOpts so;
    CLI::App* sim = app.add_subcommand("simulate", "diagonalize a lattice or Dicke coupling matrix");
    auto* so_d = sim->add_option("--d", so.d, "dimension (1, 2, 3)");
    auto* so_m = sim->add_option("--m", so.m, "atoms per side (even)");
    auto* so_k0a = sim->add_option("--k0a", so.k0a, "lattice constant in units 1/k0 (> 1)");
    auto* so_alpha = sim->add_option("--alpha", so.alpha, "coupling power-law exponent");
    auto* so_A = sim->add_option("--A", so.A, "coupling strength magnitude");
    auto* so_Ar = sim->add_option("--A-real", so.A_real, "custom Re(A), bypasses presets");
    auto* so_Ai = sim->add_option("--A-imag", so.A_imag, "custom Im(A), bypasses presets");
    auto* so_eps = sim->add_option("--epsilon", so.epsilon, "phase sign (+1 or -1)");
    auto* so_comp = sim->add_flag("--compensated", so.compensated, "d=2 propagator-phase coupling");
    auto* so_dw = sim->add_option("--delta-omega0", so.delta_omega0, "single-atom shift");
    auto* so_dicke = sim->add_flag("--dicke", so.dicke, "all-to-all coupling (small volume)");
    auto* so_n = sim->add_option("--n", so.n, "atom count for --dicke");
    auto* so_fmt = sim->add_option("--format", so.format, "csv or json")
                       ->check(CLI::IsMember({"csv", "json"}));
    sim->add_option("--output", so.output, "output path (stdout if omitted)");
    sim->add_option("--config", so.config, "JSON config file; flags override");
    so_n->excludes(so_m);
    so_Ar->needs(so_Ai);
    so_Ai->needs(so_Ar);
    so_Ar->excludes(so_A);
    so_comp->excludes(so_Ar);

    // dispersion
    DispersionOpts po;
    CLI::App* dis = app.add_subcommand("dispersion", "exact lattice sum over a wavenumber grid");
    auto* po_d = dis->add_option("--d", po.d, "dimension (1, 2, 3)");
    auto* po_m = dis->add_option("--m", po.m, "atoms per side (even)");
    auto* po_k0a = dis->add_option("--k0a", po.k0a, "lattice constant in units 1/k0 (> 1)");
    auto* po_alpha = dis->add_option("--alpha", po.alpha, "coupling power-law exponent");
    auto* po_A = dis->add_option("--A", po.A, "coupling strength magnitude");
    auto* po_Ar = dis->add_option("--A-real", po.A_real, "custom Re(A)");
    auto* po_Ai = dis->add_option("--A-imag", po.A_imag, "custom Im(A)");
    auto* po_eps = dis->add_option("--epsilon", po.epsilon, "phase sign (+1 or -1)");
    auto* po_comp = dis->add_flag("--compensated", po.compensated, "d=2 propagator-phase coupling");
    auto* po_mat = dis->add_flag("--matched-azimuth", po.matched_azimuth,
                                 "scan along the d=2 equal-area direction");
    auto* po_th = dis->add_option("--theta", po.theta, "polar angle of k (d=3)");
    auto* po_phi = dis->add_option("--phi", po.phi, "azimuth of k");
    auto* po_kmin = dis->add_option("--k-min", po.k_min, "grid start, units k0");
    auto* po_kmax = dis->add_option("--k-max", po.k_max, "grid end, units k0");
    auto* po_xi = dis->add_option("--xi-max", po.xi_max, "symmetric grid spanning |xi| <= xi-max");
    auto* po_pts = dis->add_option("--points", po.points, "grid points (>= 2)");
    auto* po_fmt = dis->add_option("--format", po.format, "csv or json")
                       ->check(CLI::IsMember({"csv", "json"}));
    dis->add_option("--output", po.output, "output path (stdout if omitted)");
    dis->add_option("--config", po.config, "JSON config file; flags override");
    po_Ar->needs(po_Ai);
    po_Ai->needs(po_Ar);
    po_Ar->excludes(po_A);
    po_comp->excludes(po_Ar);
    po_kmin->needs(po_kmax);
    po_kmax->needs(po_kmin);
    po_mat->excludes(po_phi);

    // analytic
    AnalyticOpts ao;
    CLI::App* ana = app.add_subcommand("analytic", "continuum curves over a wavenumber grid");
    auto* ao_d = ana->add_option("--d", ao.d, "dimension (1, 2, 3)");
    auto* ao_N = ana->add_option("--N", ao.N, "atom count (continuum, real-valued)");
    auto* ao_k0a = ana->add_option("--k0a", ao.k0a, "lattice constant in units 1/k0 (> 1)");
    auto* ao_alpha = ana->add_option("--alpha", ao.alpha, "coupling power-law exponent");
    auto* ao_A = ana->add_option("--A", ao.A, "coupling strength magnitude");
    auto* ao_eps = ana->add_option("--epsilon", ao.epsilon, "phase sign (+1 or -1)");
    auto* ao_th = ana->add_option("--theta", ao.theta, "polar angle of k (d=3)");
    auto* ao_kmin = ana->add_option("--k-min", ao.k_min, "grid start, units k0");
    auto* ao_kmax = ana->add_option("--k-max", ao.k_max, "grid end, units k0");
    auto* ao_xi = ana->add_option("--xi-max", ao.xi_max, "symmetric grid spanning |xi| <= xi-max");
    auto* ao_pts = ana->add_option("--points", ao.points, "grid points (>= 2)");
    auto* ao_fmt = ana->add_option("--format", ao.format, "csv or json")
                       ->check(CLI::IsMember({"csv", "json"}));
    ana->add_option("--output", ao.output, "output path (stdout if omitted)");
    ana->add_option("--config", ao.config, "JSON config file; flags override");
    ao_kmin->needs(ao_kmax);
    ao_kmax->needs(ao_kmin);

    // design
    DesignOpts deo;
    CLI::App* des = app.add_subcommand("design", "invert the continuum curves for a target");
    auto* de_g = des->add_option("--gamma", deo.gamma, "target decay rate, units gamma0 (>= 1)");
    auto* de_dl = des->add_option("--delta", deo.delta, "target shift, units gamma0");
    auto* de_d = des->add_option("--d", deo.d, "dimension (1, 2, 3)");
    auto* de_al = des->add_option("--alpha", deo.alpha, "coupling power-law exponent");
    auto* de_eps = des->add_option("--epsilon", deo.epsilon, "phase sign (+1 or -1)");
    auto* de_A = des->add_option("--A", deo.A, "coupling strength magnitude");
    auto* de_free = des->add_option("--free", deo.free, "free parameter: N or k0a")
                        ->check(CLI::IsMember({"N", "k0a"}));
    auto* de_k0a = des->add_option("--k0a", deo.k0a, "fixed lattice constant");
    auto* de_N = des->add_option("--N", deo.N, "fixed atom count");
    auto* de_th = des->add_option("--theta", deo.theta, "polar angle of k (d=3)");
    des->add_option("--output", deo.output, "output path (stdout if omitted)");
    des->add_option("--config", deo.config, "JSON config file; flags override");

    // validate
    ValidateOpts vo;
    CLI::App* val = app.add_subcommand("validate", "run cross-check suites");
    auto* vo_suite =
        val->add_option("--suite", vo.suite, "trace|dicke|collapse|closedform|roundtrip|scaling|all")
            ->check(CLI::IsMember({"trace", "dicke", "collapse", "closedform", "roundtrip",
                                   "scaling", "all"}));
    auto* vo_seed = val->add_option("--seed", vo.seed, "seed for the randomized suites");
    val->add_option("--output", vo.output, "output path (stdout if omitted)");
    val->add_option("--config", vo.config, "JSON config file; flags override");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e); // prints help text or the parse error
        return rc == 0 ? 0 : 2;
    }

    if (sim->parsed()) {
        if (!so.config.empty()) {
            const json j = load_config(so.config);
            fill(j, "d", so_d, so.d);
            fill(j, "m", so_m, so.m);
            fill(j, "k0a", so_k0a, so.k0a);
            fill(j, "alpha", so_alpha, so.alpha);
            fill(j, "A", so_A, so.A);
            fill(j, "A-real", so_Ar, so.A_real);
            fill(j, "A-imag", so_Ai, so.A_imag);
            fill(j, "epsilon", so_eps, so.epsilon);
            fill(j, "compensated", so_comp, so.compensated);
            fill(j, "delta-omega0", so_dw, so.delta_omega0);
            fill(j, "dicke", so_dicke, so.dicke);
            fill(j, "n", so_n, so.n);
            fill(j, "format", so_fmt, so.format);
        }
        const bool custom = so_Ar->count() > 0 || so_Ai->count() > 0;
        return run_simulate(so, custom);
    }
    if (dis->parsed()) {
        if (!po.config.empty()) {
            const json j = load_config(po.config);
            fill(j, "d", po_d, po.d);
            fill(j, "m", po_m, po.m);
            fill(j, "k0a", po_k0a, po.k0a);
            fill(j, "alpha", po_alpha, po.alpha);
            fill(j, "A", po_A, po.A);
            fill(j, "A-real", po_Ar, po.A_real);
            fill(j, "A-imag", po_Ai, po.A_imag);
            fill(j, "epsilon", po_eps, po.epsilon);
            fill(j, "compensated", po_comp, po.compensated);
            fill(j, "matched-azimuth", po_mat, po.matched_azimuth);
            fill(j, "theta", po_th, po.theta);
            fill(j, "phi", po_phi, po.phi);
            fill(j, "k-min", po_kmin, po.k_min);
            fill(j, "k-max", po_kmax, po.k_max);
            fill(j, "xi-max", po_xi, po.xi_max);
            fill(j, "points", po_pts, po.points);
            fill(j, "format", po_fmt, po.format);
        }
        const bool custom = po_Ar->count() > 0 || po_Ai->count() > 0;
        const bool have_range = po_kmin->count() > 0 || po_kmax->count() > 0 ||
                                (!po.config.empty() && po.k_min != 0.0 && po.k_max != 0.0);
        const bool have_xi = po_xi->count() > 0 || po.xi_max != 0.0;
        return run_dispersion(po, custom, have_range, have_xi);
    }
    if (ana->parsed()) {
        if (!ao.config.empty()) {
            const json j = load_config(ao.config);
            fill(j, "d", ao_d, ao.d);
            fill(j, "N", ao_N, ao.N);
            fill(j, "k0a", ao_k0a, ao.k0a);
            fill(j, "alpha", ao_alpha, ao.alpha);
            fill(j, "A", ao_A, ao.A);
            fill(j, "epsilon", ao_eps, ao.epsilon);
            fill(j, "theta", ao_th, ao.theta);
            fill(j, "k-min", ao_kmin, ao.k_min);
            fill(j, "k-max", ao_kmax, ao.k_max);
            fill(j, "xi-max", ao_xi, ao.xi_max);
            fill(j, "points", ao_pts, ao.points);
            fill(j, "format", ao_fmt, ao.format);
        }
        const bool have_range = ao_kmin->count() > 0 || ao_kmax->count() > 0 ||
                                (!ao.config.empty() && ao.k_min != 0.0 && ao.k_max != 0.0);
        const bool have_xi = ao_xi->count() > 0 || ao.xi_max != 0.0;
        return run_analytic(ao, have_range, have_xi);
    }
    if (des->parsed()) {
        bool cfg_eps = false, cfg_k0a = false, cfg_N = false, cfg_theta = false;
        if (!deo.config.empty()) {
            const json j = load_config(deo.config);
            fill(j, "gamma", de_g, deo.gamma);
            fill(j, "delta", de_dl, deo.delta);
            fill(j, "d", de_d, deo.d);
            fill(j, "alpha", de_al, deo.alpha);
            fill(j, "epsilon", de_eps, deo.epsilon);
            fill(j, "A", de_A, deo.A);
            fill(j, "free", de_free, deo.free);
            fill(j, "k0a", de_k0a, deo.k0a);
            fill(j, "N", de_N, deo.N);
            fill(j, "theta", de_th, deo.theta);
            cfg_eps = j.contains("epsilon");
            cfg_k0a = j.contains("k0a");
            cfg_N = j.contains("N");
            cfg_theta = j.contains("theta");
        }
        if (de_g->count() == 0 && !(deo.gamma > 0.0))
            throw validation_error(errc::bad_config, "design needs --gamma");
        return run_design(deo, de_eps->count() > 0 || cfg_eps, de_k0a->count() > 0 || cfg_k0a,
                          de_N->count() > 0 || cfg_N, de_th->count() > 0 || cfg_theta);
    }
    if (val->parsed()) {
        if (!vo.config.empty()) {
            const json j = load_config(vo.config);
            fill(j, "suite", vo_suite, vo.suite);
            fill(j, "seed", vo_seed, vo.seed);
        }
        return run_validate(vo);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const supra::validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const supra::infeasible_error& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 4;
    } catch (const supra::numerical_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
}
