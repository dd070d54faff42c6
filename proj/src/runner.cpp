#include "magnls/runner.hpp"

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "magnls/config.hpp"
#include "magnls/oracles.hpp"
#include "magnls/pauli.hpp"
#include "magnls/snapshot.hpp"
#include "magnls/strichartz.hpp"

namespace magnls {

namespace {

namespace fs = std::filesystem;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + path.string());
    out << text;
}

std::string series_csv(const ObservableSeries& series, bool pauli) {
    std::string csv = "t,mass,T_S,E_S,F_S,L3,g,gdot,Lp1,boundary_mass";
    if (pauli) csv += ",T_P,E_P,F_P,spin_z";
    csv += "\n";
    for (const ObservableRow& r : series) {
        csv += fmt(r.t) + "," + fmt(r.mass) + "," + fmt(r.kinetic) + "," + fmt(r.energy) + "," +
               fmt(r.conserved) + "," + fmt(r.l3) + "," + fmt(r.g) + "," + fmt(r.gdot) + "," +
               fmt(r.lp1) + "," + fmt(r.boundary);
        if (pauli) {
            const PauliExtra& e = *r.pauli;
            csv += "," + fmt(e.t_p) + "," + fmt(e.e_p) + "," + fmt(e.f_p) + "," + fmt(e.spin);
        }
        csv += "\n";
    }
    return csv;
}

json report_json(const BlowupReport& rep, double dt_final) {
    json j;
    j["detected"] = rep.detected;
    j["trigger"] = rep.trigger;
    j["t_detect"] = rep.t_detect;
    j["kinetic_ratio"] = rep.kinetic_ratio;
    j["dt_final"] = dt_final;
    json last;
    last["t"] = rep.last.t;
    last["mass"] = rep.last.mass;
    last["T_S"] = rep.last.kinetic;
    last["E_S"] = rep.last.energy;
    last["F_S"] = rep.last.conserved;
    last["g"] = rep.last.g;
    j["last_row"] = last;
    return j;
}

std::string snap_name(std::size_t step) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "snap_%08zu.f64", step);
    return buf;
}

int mode_evolve(const json& doc, const fs::path& out, bool pauli) {
    SimConfig cfg = parse_sim_config(doc);
    if (pauli) {
        auto result = evolve_pauli(cfg, [&](std::size_t step, double, const SpinorField& f) {
            write_snapshot((out / snap_name(step)).string(), f);
        });
        write_text(out / "observables.csv", series_csv(result.series, true));
        write_text(out / "blowup.json", report_json(result.report, result.dt_final).dump(2) + "\n");
        write_snapshot((out / "final_state.f64").string(), result.final_state);
    } else {
        auto result = evolve(cfg, [&](std::size_t step, double, const ScalarField& f) {
            write_snapshot((out / snap_name(step)).string(), f);
        });
        write_text(out / "observables.csv", series_csv(result.series, false));
        write_text(out / "blowup.json", report_json(result.report, result.dt_final).dump(2) + "\n");
        write_snapshot((out / "final_state.f64").string(), result.final_state);
    }
    return 0;
}

// centered second difference of the recorded g against the virial right side
int mode_virial(const json& doc, const fs::path& out) {
    VirialConfig vc = parse_virial_config(doc);
    const SimConfig& cfg = vc.base;
    const double d = cfg.dim;
    const double coeff = cfg.mu * d * ((cfg.p - (1.0 + 4.0 / d)) / (cfg.p + 1.0));

    ObservableSeries series;
    double f0 = 0.0;
    if (vc.pauli) {
        auto result = evolve_pauli(cfg);
        series = std::move(result.series);
        f0 = series.front().pauli->f_p;
    } else {
        auto result = evolve(cfg);
        series = std::move(result.series);
        f0 = series.front().conserved;
    }

    std::string csv = "t,g,gdot,gddot_fd,rhs,residual\n";
    double sup = 0.0;
    for (std::size_t i = 1; i + 1 < series.size(); ++i) {
        const auto& a = series[i - 1];
        const auto& b = series[i];
        const auto& c = series[i + 1];
        const double dt1 = b.t - a.t, dt2 = c.t - b.t;
        if (std::abs(dt1 - dt2) > 1e-9 * dt1) continue;  // adaptive-dt boundary
        const double gdd = (c.g - 2.0 * b.g + a.g) / (dt1 * dt1);
        const double rhs = 2.0 * f0 + coeff * b.lp1 - cfg.B * cfg.B * b.rho2;
        const double res = gdd - rhs;
        sup = std::max(sup, std::abs(res));
        csv += fmt(b.t) + "," + fmt(b.g) + "," + fmt(b.gdot) + "," + fmt(gdd) + "," + fmt(rhs) +
               "," + fmt(res) + "\n";
    }
    write_text(out / "virial.csv", csv);
    json summary;
    summary["sup_residual"] = sup;
    summary["F0"] = f0;
    summary["rows"] = series.size();
    write_text(out / "virial.json", summary.dump(2) + "\n");
    return 0;
}

json strichartz_report_json(const StrichartzReport& rep) {
    json j;
    j["q"] = rep.q;
    j["r"] = rep.r;
    j["B"] = rep.B;
    j["nodes"] = rep.nodes;
    j["lhs"] = rep.lhs;
    j["rhs"] = rep.rhs;
    j["prefactor"] = rep.prefactor;
    j["rel_gap"] = rep.rel_gap;
    j["free_side_closed_form"] = rep.free_side_closed_form;
    j["free_window"] = rep.free_window;
    j["free_tail_estimate"] = rep.free_tail_estimate;
    json nodes = json::array();
    for (const auto& nd : rep.lhs_nodes) {
        json e;
        e["t"] = nd.t;
        e["norm_r"] = nd.norm_r;
        e["boundary_fraction"] = nd.boundary_fraction;
        nodes.push_back(e);
    }
    j["lhs_nodes"] = nodes;
    return j;
}

int mode_strichartz(const json& doc, const fs::path& out) {
    StrichartzConfig cfg = parse_strichartz_config(doc);
    Grid grid(2, cfg.n, cfg.extent);
    json reports = json::array();
    std::string csv = "B,q,r,state,lhs,rhs,rel_gap\n";
    for (double B : cfg.b_list) {
        StrichartzReport rep = verify_identity_gaussian(grid, cfg.gaussian_a, B, cfg.q, cfg.r,
                                                        cfg.nodes);
        json j = strichartz_report_json(rep);
        j["state"] = "gaussian";
        reports.push_back(j);
        csv += fmt(B) + "," + fmt(cfg.q) + "," + fmt(cfg.r) + ",gaussian," + fmt(rep.lhs) + "," +
               fmt(rep.rhs) + "," + fmt(rep.rel_gap) + "\n";
        if (cfg.include_charge_state) {
            ScalarField psi = sample_field(grid, [&](double x1, double x2, double) {
                return c64{x1, x2} * std::exp(-cfg.gaussian_a * (x1 * x1 + x2 * x2));
            });
            normalize(psi);
            StrichartzReport rc = verify_identity(psi, B, cfg.q, cfg.r, cfg.nodes, cfg.window);
            json jc = strichartz_report_json(rc);
            jc["state"] = "angular-charge";
            reports.push_back(jc);
            csv += fmt(B) + "," + fmt(cfg.q) + "," + fmt(cfg.r) + ",angular-charge," +
                   fmt(rc.lhs) + "," + fmt(rc.rhs) + "," + fmt(rc.rel_gap) + "\n";
        }
    }
    write_text(out / "strichartz.json", reports.dump(2) + "\n");
    write_text(out / "strichartz.csv", csv);
    return 0;
}

int mode_blowup_scan(const json& doc, const fs::path& out) {
    BlowupScanConfig cfg = parse_blowup_scan_config(doc);
    json rows = json::array();
    std::string csv = "B,F_S0,g0,gdot0,predicted_first_zero,detected,t_detect,trigger,gap_fraction\n";
    for (double B : cfg.b_list) {
        SimConfig run_cfg = cfg.base;
        run_cfg.B = B;
        ScalarField psi0 = build_initial_state(run_cfg);
        const ObservableRow row0 = observe(psi0, 0.0, run_cfg.mu, run_cfg.p, run_cfg.B);
        std::optional<double> predicted;
        if (run_cfg.dim == 2 && run_cfg.p == 3.0 && B != 0.0)
            predicted = first_zero({row0.conserved, B, row0.g, row0.gdot});
        auto result = evolve(run_cfg);
        json j;
        j["B"] = B;
        j["F_S0"] = row0.conserved;
        j["g0"] = row0.g;
        j["gdot0"] = row0.gdot;
        j["predicted_first_zero"] = predicted ? json(*predicted) : json(nullptr);
        j["detected"] = result.report.detected;
        j["t_detect"] = result.report.detected ? json(result.report.t_detect) : json(nullptr);
        j["trigger"] = result.report.trigger;
        double gap = std::numeric_limits<double>::quiet_NaN();
        if (predicted && result.report.detected)
            gap = (result.report.t_detect - *predicted) / *predicted;
        j["gap_fraction"] = std::isnan(gap) ? json(nullptr) : json(gap);
        rows.push_back(j);
        csv += fmt(B) + "," + fmt(row0.conserved) + "," + fmt(row0.g) + "," + fmt(row0.gdot) + "," +
               (predicted ? fmt(*predicted) : "nan") + "," +
               (result.report.detected ? "1" : "0") + "," +
               (result.report.detected ? fmt(result.report.t_detect) : "nan") + "," +
               (result.report.trigger.empty() ? "none" : result.report.trigger) + "," +
               (std::isnan(gap) ? "nan" : fmt(gap)) + "\n";
    }
    json scan;
    scan["rows"] = rows;
    write_text(out / "scan.json", scan.dump(2) + "\n");
    write_text(out / "scan.csv", csv);
    return 0;
}

int mode_certify(const json& doc, const fs::path& out) {
    CertifyConfig cfg = parse_certify_config(doc);
    ExampleCertificate cert = certify_example();

    // paper-reported values for comparison
    const double e0_paper = 1600.0 * (1.0 - 800.0 / (81.0 * kPi * kPi));
    const double ratio_paper = 800.0 * kPi;
    const std::pair<double, double> window_paper{2.0, 106.0};

    // grid-pipeline cross-check
    Grid grid(2, cfg.n, cfg.extent);
    ScalarField psi = paper_example_state(grid);
    const double grid_mass = mass(psi);
    const double grid_e0 = energy_s(psi, -1.0, 5.0, 0.0);
    const double grid_l3 = l3_expectation(psi);
    const double grid_rho2 = rho_norm_sq(psi);

    json j;
    json oracle;
    oracle["mass"] = cert.mass;
    oracle["kinetic0"] = cert.kinetic0;
    oracle["l6_power"] = cert.l6_power;
    oracle["E0"] = cert.e0;
    oracle["L3"] = cert.l3;
    oracle["rho_norm_sq"] = cert.rho_norm_sq;
    oracle["g0"] = cert.g0;
    oracle["ratio_L3sq_over_rho2"] = cert.ratio;
    oracle["B_window"] =
        cert.window ? json::array({cert.window->first, cert.window->second}) : json(nullptr);
    j["oracle"] = oracle;

    json grid_values;
    grid_values["n"] = cfg.n;
    grid_values["L"] = cfg.extent;
    grid_values["mass"] = grid_mass;
    grid_values["E0"] = grid_e0;
    grid_values["L3"] = grid_l3;
    grid_values["rho_norm_sq"] = grid_rho2;
    j["grid"] = grid_values;

    json paper;
    paper["E0"] = e0_paper;
    paper["ratio_L3sq_over_rho2"] = ratio_paper;
    paper["B_window"] = json::array({window_paper.first, window_paper.second});
    j["reported"] = paper;

    json flags;
    flags["e0_matches_reported"] = std::abs(cert.e0 - e0_paper) <= 1e-6 * std::abs(e0_paper);
    flags["ratio_matches_reported"] = std::abs(cert.ratio - ratio_paper) <= 1e-3 * ratio_paper;
    const bool window_matches =
        cert.window && std::abs(cert.window->first - window_paper.first) <= 0.05 * window_paper.first &&
        std::abs(cert.window->second - window_paper.second) <= 0.05 * window_paper.second;
    flags["window_matches_reported"] = window_matches;
    flags["grid_matches_oracle"] =
        std::abs(grid_e0 - cert.e0) <= 1e-4 * std::abs(cert.e0) &&
        std::abs(grid_mass - cert.mass) <= 1e-4 * cert.mass &&
        std::abs(grid_rho2 - cert.rho_norm_sq) <= 1e-4 * cert.rho_norm_sq;
    j["flags"] = flags;

    write_text(out / "certificate.json", j.dump(2) + "\n");
    return 0;
}

}  // namespace

int run(const std::string& mode, const std::string& config_path, const std::string& out_dir,
        const std::vector<std::string>& overrides, std::uint64_t seed) {
    try {
        json doc = load_json(config_path);
        for (const std::string& ov : overrides) apply_override(doc, ov);
        (void)seed;
        fs::path out(out_dir);
        std::error_code ec;
        fs::create_directories(out, ec);
        if (ec) throw ConfigError("cannot create output directory " + out_dir);

        if (mode == "evolve") return mode_evolve(doc, out, false);
        if (mode == "evolve-pauli") return mode_evolve(doc, out, true);
        if (mode == "virial-check") return mode_virial(doc, out);
        if (mode == "strichartz-check") return mode_strichartz(doc, out);
        if (mode == "blowup-scan") return mode_blowup_scan(doc, out);
        if (mode == "certify-example") return mode_certify(doc, out);
        throw ConfigError("unknown mode '" + mode + "'");
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const GuardError& e) {
        std::cerr << "numerical guard: " << e.what() << "\n";
        return 3;
    } catch (const ConsistencyError& e) {
        std::cerr << "internal consistency: " << e.what() << "\n";
        return 4;
    }
}

}  // namespace magnls
