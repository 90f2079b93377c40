// Command-line front end for the traveling-front stability toolkit.
//
// Subcommands: profile, cstar, spectrum, borders, weight-plan, energy,
// tail-audit, reg-sweep.  Every run writes its artifacts plus a manifest into
// --out; exit codes: 0 ok, 2 no front at the requested speed, 3 structural
// hypothesis violation, 4 numerical failure.

#include <atomic>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "degfront/asymptotics.hpp"
#include "degfront/energy.hpp"
#include "degfront/io.hpp"
#include "degfront/model.hpp"
#include "degfront/operators.hpp"
#include "degfront/profile.hpp"
#include "degfront/spectra.hpp"
#include "degfront/version.hpp"

namespace dg = degfront;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct NoFrontError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct HypothesisError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Cfg {
    double alpha = 1.0, beta = 0.0;
    double c = 1.0;
    double h = 0.01;
    double Xm = 40.0, Xp = 40.0;
    bool auto_grid = true;
    std::string a = "auto";
    std::vector<double> eps_list = {1e-1, 1e-2, 1e-3, 1e-4};
    double eps0 = 0.0;
    double lambda_re = 0.0, lambda_im = 0.0;
    std::vector<double> window; // two entries when set
    bool manufacture = false;
    std::string out = "out";
    int jobs = 1;
    double cstar_lo = 0.1, cstar_hi = 3.0, cstar_tol = 1e-4;
    double tol_stab = 1e-6;
    double kmin = -20.0, kmax = 20.0;
    int knum = 2001;
    std::vector<double> a_list; // spectrum fan-out
    std::string mm_path;        // MatrixMarket export, empty = skip
};

class Manifest {
  public:
    explicit Manifest(fs::path dir) : dir_(std::move(dir)) {}
    fs::path path(const std::string& name) {
        files_.push_back(name);
        return dir_ / name;
    }
    void add(const std::string& name) { files_.push_back(name); }
    void write(const json& config_echo) {
        json j;
        j["config"] = config_echo;
        j["version"] = dg::kVersion;
        j["files"] = files_;
        auto now = std::chrono::system_clock::now();
        j["generated_at_unix"] =
            std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count();
        std::ofstream os(dir_ / "manifest.json", std::ios::binary);
        os << j.dump(2) << "\n";
    }

  private:
    fs::path dir_;
    std::vector<std::string> files_;
};

json config_echo(const Cfg& cfg) {
    json j;
    j["alpha"] = cfg.alpha;
    j["beta"] = cfg.beta;
    j["c"] = cfg.c;
    j["h"] = cfg.h;
    j["auto_grid"] = cfg.auto_grid;
    if (!cfg.auto_grid) {
        j["Xm"] = cfg.Xm;
        j["Xp"] = cfg.Xp;
    }
    j["a"] = cfg.a;
    j["eps_list"] = cfg.eps_list;
    j["eps"] = cfg.eps0;
    j["out"] = cfg.out;
    j["jobs"] = cfg.jobs;
    return j;
}

dg::Model checked_model(const Cfg& cfg) {
    dg::Model m(cfg.alpha, cfg.beta);
    dg::HypothesisReport rep = dg::check_hypotheses(m);
    if (!rep.passed) {
        std::cerr << "hypothesis check failed:\n" << dg::report_json(rep).dump(2) << "\n";
        throw HypothesisError("structural hypotheses (1.2)/(1.4) violated");
    }
    return m;
}

double resolve_c_star(const Cfg& cfg, const dg::Model& m) {
    if (auto known = dg::known_c_star(m); known && !known->approximate) return known->value;
    return dg::estimate_c_star(m, {cfg.cstar_lo, cfg.cstar_hi}, cfg.cstar_tol);
}

dg::FrontProfile make_profile(const Cfg& cfg, const dg::Model& m) {
    dg::Orbit orbit = dg::shoot_orbit(m, cfg.c);
    if (orbit.classification != dg::OrbitClass::Smooth) {
        const char* what = orbit.classification == dg::OrbitClass::Undershoot ? "undershoot"
                           : orbit.classification == dg::OrbitClass::Sharp    ? "sharp"
                                                                              : "overshoot";
        throw NoFrontError(std::string("no smooth front at c = ") + std::to_string(cfg.c) +
                           " (orbit classified " + what +
                           "); smooth monotone fronts require c > c*");
    }
    dg::GridSpec grid;
    if (cfg.auto_grid) {
        grid = dg::GridSpec::auto_spec(m, cfg.c, cfg.h);
    } else {
        grid.h = cfg.h;
        grid.Xm = cfg.Xm;
        grid.Xp = cfg.Xp;
    }
    return dg::reconstruct_profile(orbit, m, cfg.c, grid);
}

double resolve_a(const Cfg& cfg, const dg::Model& m, dg::WeightPlan* plan_out = nullptr) {
    if (cfg.a != "auto") return std::stod(cfg.a);
    double cs = resolve_c_star(cfg, m);
    dg::WeightPlan plan = dg::weight_plan(m, cfg.c, cs);
    if (plan_out) *plan_out = plan;
    return plan.recommended_a; // 0 when the interval is empty
}

void write_profile_csv(const fs::path& p, const dg::FrontProfile& prof) {
    dg::CsvWriter csv(p.string(), {"x", "phi", "phi_x"});
    for (std::size_t i = 0; i < prof.xi.size(); ++i)
        csv.row({dg::CsvWriter::cell(prof.xi[i]), dg::CsvWriter::cell(prof.phi[i]),
                 dg::CsvWriter::cell(prof.phix[i])});
}

// ---------------------------------------------------------------- commands

int cmd_profile(const Cfg& cfg) {
    dg::Model m = checked_model(cfg);
    dg::FrontProfile prof = make_profile(cfg, m);

    Manifest man(cfg.out);
    {
        std::ofstream os(man.path("hypotheses.json"), std::ios::binary);
        os << dg::report_json(dg::check_hypotheses(m)).dump(2) << "\n";
    }
    write_profile_csv(man.path("profile.csv"), prof);

    std::vector<double> res = dg::profile_residual(prof, m);
    double sup = 0.0;
    for (double v : res) sup = std::max(sup, std::abs(v));
    json meta = dg::profile_meta_json(prof);
    meta["model"] = json::parse(dg::model_to_json(m));
    meta["residual_sup"] = sup;
    {
        std::ofstream os(man.path("profile.json"), std::ios::binary);
        os << meta.dump(2) << "\n";
    }
    man.write(config_echo(cfg));
    std::printf("profile: N=%zu residual_sup=%.3e rate_minus=%.6f rate_plus=%.6f\n",
                prof.phi.size(), sup, prof.rate_minus, prof.rate_plus);
    return 0;
}

int cmd_cstar(const Cfg& cfg) {
    dg::Model m = checked_model(cfg);
    double est = dg::estimate_c_star(m, {cfg.cstar_lo, cfg.cstar_hi}, cfg.cstar_tol);
    json j;
    j["estimate"] = est;
    j["bracket"] = {cfg.cstar_lo, cfg.cstar_hi};
    j["tol"] = cfg.cstar_tol;
    if (auto known = dg::known_c_star(m))
        j["known"] = {{"value", known->value}, {"approximate", known->approximate}};
    else
        j["known"] = nullptr;
    Manifest man(cfg.out);
    {
        std::ofstream os(man.path("cstar.json"), std::ios::binary);
        os << j.dump(2) << "\n";
    }
    man.write(config_echo(cfg));
    std::printf("c_star: %.6f\n", est);
    return 0;
}

void write_spectrum_files(Manifest& man, const std::string& tag, const dg::SpectrumReport& rep,
                          const dg::OperatorMatrix& M, const dg::Model& m, double c) {
    {
        std::ofstream os(man.path("spectrum" + tag + ".json"), std::ios::binary);
        os << dg::report_json(rep).dump(2) << "\n";
    }
    {
        dg::CsvWriter csv(man.path("eigenvalues" + tag + ".csv").string(),
                          {"re", "im", "localization"});
        for (std::size_t i = 0; i < rep.eigenvalues.size(); ++i)
            csv.row({dg::CsvWriter::cell(rep.eigenvalues[i].real()),
                     dg::CsvWriter::cell(rep.eigenvalues[i].imag()),
                     dg::CsvWriter::cell(rep.localization_scores[i])});
    }
    {
        dg::CsvWriter csv(man.path("borders" + tag + ".csv").string(),
                          {"k", "s_plus_re", "s_plus_im", "s_minus_re", "s_minus_im"});
        std::vector<double> kg(2001);
        for (int i = 0; i < 2001; ++i) kg[i] = -20.0 + 0.02 * i;
        dg::SCurves sc = dg::s_curves(m, c, M.a, kg);
        for (std::size_t i = 0; i < kg.size(); ++i)
            csv.row({dg::CsvWriter::cell(kg[i]), dg::CsvWriter::cell(sc.s_plus[i].real()),
                     dg::CsvWriter::cell(sc.s_plus[i].imag()),
                     dg::CsvWriter::cell(sc.s_minus[i].real()),
                     dg::CsvWriter::cell(sc.s_minus[i].imag())});
    }
}

int cmd_spectrum(const Cfg& cfg) {
    dg::Model m = checked_model(cfg);
    dg::FrontProfile prof = make_profile(cfg, m);
    Manifest man(cfg.out);

    dg::WeightPlan plan;
    double a = resolve_a(cfg, m, &plan);
    if (cfg.a == "auto" && plan.empty) {
        json j;
        j["verdict"] = "UnstableInAllWeights";
        j["weight_plan"] = dg::report_json(plan);
        std::ofstream os(man.path("spectrum.json"), std::ios::binary);
        os << j.dump(2) << "\n";
        man.write(config_echo(cfg));
        std::printf("spectrum: weight interval empty -> UnstableInAllWeights\n");
        return 0;
    }

    if (!cfg.a_list.empty()) {
        // fan the weights out across a worker pool; the coordinator alone
        // writes the manifest
        std::vector<dg::SpectrumReport> reps(cfg.a_list.size());
        std::vector<dg::OperatorMatrix> mats(cfg.a_list.size());
        std::atomic<std::size_t> next{0};
        auto work = [&]() {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= cfg.a_list.size()) return;
                mats[i] = dg::assemble(prof, m, cfg.eps0, cfg.a_list[i]);
                reps[i] = dg::spectrum_report(mats[i], m, cfg.c, cfg.tol_stab);
            }
        };
        int nw = std::max(1, cfg.jobs);
        std::vector<std::thread> pool;
        for (int t = 0; t < nw; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
        for (std::size_t i = 0; i < cfg.a_list.size(); ++i) {
            write_spectrum_files(man, "_a" + std::to_string(i), reps[i], mats[i], m, cfg.c);
            std::printf("spectrum a=%.6f: verdict=%s rightmost_re=%.6e\n", cfg.a_list[i],
                        dg::verdict_name(reps[i].verdict), reps[i].rightmost_any.real());
        }
        man.write(config_echo(cfg));
        return 0;
    }

    dg::OperatorMatrix M = dg::assemble(prof, m, cfg.eps0, a);
    dg::SpectrumReport rep = dg::spectrum_report(M, m, cfg.c, cfg.tol_stab);
    write_spectrum_files(man, "", rep, M, m, cfg.c);
    if (!cfg.mm_path.empty()) {
        dg::export_matrix_market(M, (fs::path(cfg.out) / cfg.mm_path).string());
        man.add(cfg.mm_path);
    }
    man.write(config_echo(cfg));
    std::printf("spectrum: a=%.6f verdict=%s rightmost_re=%.6e border_max=%.6e\n", a,
                dg::verdict_name(rep.verdict), rep.rightmost_any.real(),
                rep.analytic_border_max);
    return 0;
}

int cmd_borders(const Cfg& cfg) {
    dg::Model m = checked_model(cfg);
    double a = cfg.a == "auto" ? 0.0 : std::stod(cfg.a);
    std::vector<double> kg(cfg.knum);
    for (int i = 0; i < cfg.knum; ++i)
        kg[i] = cfg.kmin + (cfg.kmax - cfg.kmin) * i / (cfg.knum - 1);

    Manifest man(cfg.out);
    {
        dg::CsvWriter csv(man.path("borders.csv").string(),
                          {"k", "disp_plus_re", "disp_plus_im", "disp_minus_re",
                           "disp_minus_im", "s_plus_re", "s_plus_im", "s_minus_re",
                           "s_minus_im"});
        auto dp = dg::dispersion_curve(m, cfg.c, cfg.eps0, a, dg::Side::Plus, kg);
        auto dm = dg::dispersion_curve(m, cfg.c, cfg.eps0, a, dg::Side::Minus, kg);
        dg::SCurves sc = dg::s_curves(m, cfg.c, a, kg);
        for (std::size_t i = 0; i < kg.size(); ++i)
            csv.row({dg::CsvWriter::cell(kg[i]), dg::CsvWriter::cell(dp[i].real()),
                     dg::CsvWriter::cell(dp[i].imag()), dg::CsvWriter::cell(dm[i].real()),
                     dg::CsvWriter::cell(dm[i].imag()), dg::CsvWriter::cell(sc.s_plus[i].real()),
                     dg::CsvWriter::cell(sc.s_plus[i].imag()),
                     dg::CsvWriter::cell(sc.s_minus[i].real()),
                     dg::CsvWriter::cell(sc.s_minus[i].imag())});
    }
    json j;
    j["omega_bound"] = dg::consistent_splitting_bound(m, cfg.c, cfg.eps0, a);
    j["s_curves_max_re"] = dg::s_curves_max_re(m, cfg.c, a);
    {
        std::ofstream os(man.path("borders.json"), std::ios::binary);
        os << j.dump(2) << "\n";
    }
    man.write(config_echo(cfg));
    std::printf("borders: omega_bound=%.6e s_max_re=%.6e\n", j["omega_bound"].get<double>(),
                j["s_curves_max_re"].get<double>());
    return 0;
}

int cmd_weight_plan(const Cfg& cfg) {
    dg::Model m = checked_model(cfg);
    double cs = resolve_c_star(cfg, m);
    dg::WeightPlan plan = dg::weight_plan(m, cfg.c, cs);
    json j = dg::report_json(plan);
    j["c"] = cfg.c;
    j["c_star"] = cs;
    j["speed_threshold"] = dg::speed_threshold(m, cs);
    Manifest man(cfg.out);
    {
        std::ofstream os(man.path("weight_plan.json"), std::ios::binary);
        os << j.dump(2) << "\n";
    }
    man.write(config_echo(cfg));
    if (plan.empty)
        std::printf("weight-plan: empty (c <= threshold %.5f)\n",
                    j["speed_threshold"].get<double>());
    else
        std::printf("weight-plan: (%.6f, %.6f) recommended a=%.6f\n", plan.a_lower,
                    plan.a_upper, plan.recommended_a);
    return 0;
}

int cmd_energy(const Cfg& cfg) {
    dg::Model m = checked_model(cfg);
    dg::FrontProfile prof = make_profile(cfg, m);
    dg::cplx lambda{cfg.lambda_re, cfg.lambda_im};

    double L = prof.Xm + prof.Xp;
    double wl = -prof.Xm + 0.2 * L, wr = prof.Xp - 0.2 * L; // central 60%
    if (cfg.window.size() == 2) {
        wl = cfg.window[0];
        wr = cfg.window[1];
    }

    std::vector<dg::cplx> u;
    if (cfg.manufacture) {
        if (cfg.lambda_im != 0.0)
            throw std::invalid_argument("manufactured solve supports real lambda only");
        u = dg::manufacture_solution(prof, m, cfg.lambda_re, wl, wr);
    } else {
        u.assign(prof.phix.begin(), prof.phix.end());
    }
    dg::EnergyReport rep = dg::energy_identity(u, lambda, prof, m, wl, wr);

    Manifest man(cfg.out);
    json j = dg::report_json(rep);
    if (!cfg.manufacture && lambda == dg::cplx{0.0, 0.0}) {
        std::vector<double> u0(prof.phix.begin(), prof.phix.end());
        j["kernel_cv"] = dg::kernel_simplicity(u0, prof, m);
    }
    {
        std::ofstream os(man.path("energy.json"), std::ios::binary);
        os << j.dump(2) << "\n";
    }
    {
        std::vector<double> th = dg::theta(prof, m, prof.x0_anchor);
        std::vector<double> H = dg::compute_H(prof, m);
        dg::CsvWriter csv(man.path("energy_fields.csv").string(), {"x", "theta", "H", "psi"});
        for (std::size_t i = 0; i < prof.xi.size(); ++i) {
            double psi = std::abs(th[i]) <= 300.0 ? std::exp(-th[i]) * prof.phix[i] : 0.0;
            csv.row({dg::CsvWriter::cell(prof.xi[i]), dg::CsvWriter::cell(th[i]),
                     dg::CsvWriter::cell(H[i]), dg::CsvWriter::cell(psi)});
        }
    }
    man.write(config_echo(cfg));
    std::printf("energy: lambda=(%g,%g) relative_residual=%.3e rhs=%.3e window=[%g,%g]%s\n",
                lambda.real(), lambda.imag(), rep.relative_residual, rep.rhs, rep.window_l,
                rep.window_r, rep.window_shrunk ? " (shrunk)" : "");
    return 0;
}

int cmd_tail_audit(const Cfg& cfg) {
    dg::Model m = checked_model(cfg);
    dg::FrontProfile prof = make_profile(cfg, m);
    double a = cfg.a == "auto" ? 0.0 : std::stod(cfg.a);
    dg::TailAudit audit = dg::tail_audit(prof, m, a);

    Manifest man(cfg.out);
    {
        std::ofstream os(man.path("tail_audit.json"), std::ios::binary);
        os << dg::report_json(audit).dump(2) << "\n";
    }
    {
        std::vector<double> env = dg::coppel_envelope(m, prof.c, prof.xi);
        dg::CsvWriter csv(man.path("envelope.csv").string(), {"x", "zeta", "phi", "abs_phi_x"});
        for (std::size_t i = 0; i < prof.xi.size(); ++i)
            csv.row({dg::CsvWriter::cell(prof.xi[i]), dg::CsvWriter::cell(env[i]),
                     dg::CsvWriter::cell(prof.phi[i]),
                     dg::CsvWriter::cell(std::abs(prof.phix[i]))});
    }
    man.write(config_echo(cfg));
    std::printf("tail-audit: classification=%s phix_rate=%.5f (predicted %.5f, r2=%.4f) "
                "envelope_r2=%.4f\n",
                dg::decay_class_name(audit.classification), audit.phix.fitted_rate,
                audit.phix.predicted_rate, audit.phix.r_squared, audit.envelope_r2);
    return 0;
}

int cmd_reg_sweep(const Cfg& cfg) {
    dg::Model m = checked_model(cfg);
    dg::FrontProfile prof = make_profile(cfg, m);
    double a = cfg.a == "auto" ? 0.0 : std::stod(cfg.a);
    dg::RegSweep sweep = dg::regularization_sweep(prof, m, a, cfg.eps_list);

    Manifest man(cfg.out);
    {
        std::ofstream os(man.path("reg_sweep.json"), std::ios::binary);
        os << dg::report_json(sweep).dump(2) << "\n";
    }
    {
        dg::CsvWriter csv(man.path("reg_sweep.csv").string(),
                          {"eps", "drift", "lam0_drift", "flagged"});
        for (const auto& row : sweep.rows)
            csv.row({dg::CsvWriter::cell(row.eps), dg::CsvWriter::cell(row.drift),
                     dg::CsvWriter::cell(row.lam0_drift), row.flagged ? "1" : "0"});
    }
    man.write(config_echo(cfg));
    double final_drift = sweep.rows.empty() ? 0.0 : sweep.rows.back().drift;
    std::printf("reg-sweep: slope=%.4f final_drift=%.4e\n", sweep.slope, final_drift);
    return 0;
}

// JSON config file fills defaults; explicitly passed flags override it.
void load_config_file(const std::string& path, Cfg& cfg) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open config file " + path);
    json j = json::parse(is);
    auto get = [&](const char* key, auto& slot) {
        if (j.contains(key)) slot = j[key].template get<std::decay_t<decltype(slot)>>();
    };
    get("alpha", cfg.alpha);
    get("beta", cfg.beta);
    get("c", cfg.c);
    get("h", cfg.h);
    get("Xm", cfg.Xm);
    get("Xp", cfg.Xp);
    if (j.contains("Xm") || j.contains("Xp")) cfg.auto_grid = false;
    get("a", cfg.a);
    get("eps_list", cfg.eps_list);
    get("eps", cfg.eps0);
    get("lambda_re", cfg.lambda_re);
    get("lambda_im", cfg.lambda_im);
    get("out", cfg.out);
    get("jobs", cfg.jobs);
    get("tol_stab", cfg.tol_stab);
}

} // namespace

int main(int argc, char** argv) {
    Cfg cfg;
    // pre-scan for --config so flag values parsed below win over the file
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::string(argv[i]) == "--config") {
            try {
                load_config_file(argv[i + 1], cfg);
            } catch (const std::exception& e) {
                std::cerr << "error: " << e.what() << "\n";
                return 4;
            }
        }
    }

    CLI::App app{"traveling-front construction and spectral stability toolkit"};
    app.set_help_flag("--help", "print help"); // frees -h/--h for the grid step
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "JSON config file (flags win)");

    auto add_common = [&](CLI::App* sub, bool needs_c) {
        sub->set_help_flag("--help", "print help");
        // the file itself is loaded by the prescan above; registering the
        // option here just lets it appear after the subcommand name too
        sub->add_option("--config", config_path, "JSON config file (flags win)");
        sub->add_option("--alpha", cfg.alpha, "D(u) = alpha u + beta u^2");
        sub->add_option("--beta", cfg.beta, "quadratic diffusion coefficient");
        if (needs_c) sub->add_option("--c", cfg.c, "wave speed");
        sub->add_option("--h", cfg.h, "grid spacing");
        auto* xm = sub->add_option("--Xm", cfg.Xm, "left half-width (default: auto)");
        auto* xp = sub->add_option("--Xp", cfg.Xp, "right half-width (default: auto)");
        sub->add_option("--out", cfg.out, "output directory");
        sub->add_option("--jobs", cfg.jobs, "worker pool size for sweeps");
        sub->parse_complete_callback([&cfg, xm, xp]() {
            if (xm->count() || xp->count()) cfg.auto_grid = false;
        });
    };

    auto* sp_profile = app.add_subcommand("profile", "compute and export a front profile");
    add_common(sp_profile, true);

    auto* sp_cstar = app.add_subcommand("cstar", "bisect the threshold speed c*");
    add_common(sp_cstar, false);
    sp_cstar->add_option("--lo", cfg.cstar_lo, "bracket lower end");
    sp_cstar->add_option("--hi", cfg.cstar_hi, "bracket upper end");
    sp_cstar->add_option("--tol", cfg.cstar_tol, "bisection tolerance");

    auto* sp_spectrum = app.add_subcommand("spectrum", "assemble and eigensolve L_a");
    add_common(sp_spectrum, true);
    sp_spectrum->add_option("--a", cfg.a, "weight (number or 'auto')");
    sp_spectrum->add_option("--a-list", cfg.a_list, "weights to sweep (fan-out)")
        ->delimiter(',');
    sp_spectrum->add_option("--eps", cfg.eps0, "regularization parameter");
    sp_spectrum->add_option("--tol-stab", cfg.tol_stab, "marginal-verdict tolerance");
    sp_spectrum->add_option("--mm", cfg.mm_path, "also export the matrix (MatrixMarket)");

    auto* sp_borders = app.add_subcommand("borders", "Fredholm border curves");
    add_common(sp_borders, true);
    sp_borders->add_option("--a", cfg.a, "weight (number or 'auto')");
    sp_borders->add_option("--eps", cfg.eps0, "regularization parameter");
    sp_borders->add_option("--kmin", cfg.kmin, "wavenumber range start");
    sp_borders->add_option("--kmax", cfg.kmax, "wavenumber range end");
    sp_borders->add_option("--knum", cfg.knum, "number of wavenumber samples");

    auto* sp_wp = app.add_subcommand("weight-plan", "admissible weight interval");
    add_common(sp_wp, true);

    auto* sp_energy = app.add_subcommand("energy", "windowed energy identity");
    add_common(sp_energy, true);
    sp_energy->add_option("--lambda", cfg.lambda_re, "Re lambda");
    sp_energy->add_option("--lambda-im", cfg.lambda_im, "Im lambda");
    sp_energy->add_option("--window", cfg.window, "window x_l x_r")->expected(2);
    sp_energy->add_flag("--manufacture", cfg.manufacture,
                        "solve for u on the window instead of using phi_x");

    auto* sp_tail = app.add_subcommand("tail-audit", "right-tail decay measurements");
    add_common(sp_tail, true);
    sp_tail->add_option("--a", cfg.a, "weight for the e^{ax} fits");

    auto* sp_reg = app.add_subcommand("reg-sweep", "eigenvalue drift as eps -> 0");
    add_common(sp_reg, true);
    sp_reg->add_option("--a", cfg.a, "weight (number or 'auto')");
    sp_reg->add_option("--eps", cfg.eps_list, "decreasing positive eps values")
        ->delimiter(',');

    CLI11_PARSE(app, argc, argv);

    try {
        fs::create_directories(cfg.out);
        if (sp_profile->parsed()) return cmd_profile(cfg);
        if (sp_cstar->parsed()) return cmd_cstar(cfg);
        if (sp_spectrum->parsed()) return cmd_spectrum(cfg);
        if (sp_borders->parsed()) return cmd_borders(cfg);
        if (sp_wp->parsed()) return cmd_weight_plan(cfg);
        if (sp_energy->parsed()) return cmd_energy(cfg);
        if (sp_tail->parsed()) return cmd_tail_audit(cfg);
        if (sp_reg->parsed()) return cmd_reg_sweep(cfg);
    } catch (const NoFrontError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const HypothesisError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
