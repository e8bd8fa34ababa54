#include "ssqw/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>

#include "ssqw/format.hpp"

namespace ssqw {

void to_json(nlohmann::json& j, const DecayFit& f) {
    j = nlohmann::json{{"slope_plus", f.slope_plus},   {"slope_minus", f.slope_minus},
                       {"r2_plus", f.r2_plus},         {"r2_minus", f.r2_minus},
                       {"points_plus", f.points_plus}, {"points_minus", f.points_minus}};
}

void from_json(const nlohmann::json& j, DecayFit& f) {
    j.at("slope_plus").get_to(f.slope_plus);
    j.at("slope_minus").get_to(f.slope_minus);
    j.at("r2_plus").get_to(f.r2_plus);
    j.at("r2_minus").get_to(f.r2_minus);
    j.at("points_plus").get_to(f.points_plus);
    j.at("points_minus").get_to(f.points_minus);
}

} // namespace ssqw

namespace ssqw::cli {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

void check_keys(const json& j, std::initializer_list<const char*> allowed,
                const char* ctx) {
    if (!j.is_object()) fail(std::string(ctx) + " must be a JSON object");
    for (const auto& item : j.items()) {
        bool ok = false;
        for (const char* a : allowed)
            if (item.key() == a) {
                ok = true;
                break;
            }
        if (!ok) fail("unknown key '" + item.key() + "' in " + ctx);
    }
}

void write_text(const std::filesystem::path& p, const std::string& content) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + p.string() + " for writing");
    f << content;
}

void write_json(const std::filesystem::path& p, const json& j) {
    write_text(p, j.dump(2) + "\n");
}

std::string csv_int(long long v) { return std::to_string(v); }

} // namespace

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::nontrivial_dim1: return "nontrivial_dim1";
        case Verdict::trivial: return "trivial";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

void to_json(json& j, const SummaryDoc& d) {
    j = json{{"start_site", d.start_site},
             {"time_horizon", d.time_horizon},
             {"norm_drift", d.norm_drift},
             {"return_probability", d.return_probability},
             {"survival_probability", d.survival_probability}};
}

void from_json(const json& j, SummaryDoc& d) {
    j.at("start_site").get_to(d.start_site);
    j.at("time_horizon").get_to(d.time_horizon);
    j.at("norm_drift").get_to(d.norm_drift);
    j.at("return_probability").get_to(d.return_probability);
    j.at("survival_probability").get_to(d.survival_probability);
}

void to_json(json& j, const MappingDoc& d) {
    j = json{{"sites", d.sites},
             {"seam", d.seam},
             {"max_defect", d.max_defect},
             {"max_interior_defect", d.max_interior_defect},
             {"max_inverse_defect", d.max_inverse_defect}};
}

void from_json(const json& j, MappingDoc& d) {
    j.at("sites").get_to(d.sites);
    j.at("seam").get_to(d.seam);
    j.at("max_defect").get_to(d.max_defect);
    j.at("max_interior_defect").get_to(d.max_interior_defect);
    j.at("max_inverse_defect").get_to(d.max_inverse_defect);
}

void to_json(json& j, const BirthDoc& d) {
    j = json{{"sign", d.sign},
             {"verdict", d.verdict},
             {"ratios",
              {{"minus", {{"limsup", d.minus_limsup}, {"liminf", d.minus_liminf}}},
               {"plus", {{"limsup", d.plus_limsup}, {"liminf", d.plus_liminf}}},
               {"exact_limits", d.exact_limits}}},
             {"ratio_bound", d.ratio_bound},
             {"lower_bound", d.lower_bound}};
    if (d.residual) {
        j["residuals"] = json{{"total", *d.residual},
                              {"d", *d.d_residual},
                              {"shift", *d.shift_residual},
                              {"evolve", *d.evolve_residual}};
    }
    if (d.decay) j["decay"] = *d.decay;
    if (d.predicted_slope_plus) {
        j["predicted"] = json{{"slope_plus", *d.predicted_slope_plus},
                              {"slope_minus", *d.predicted_slope_minus}};
    }
}

void from_json(const json& j, BirthDoc& d) {
    j.at("sign").get_to(d.sign);
    j.at("verdict").get_to(d.verdict);
    const json& r = j.at("ratios");
    r.at("minus").at("limsup").get_to(d.minus_limsup);
    r.at("minus").at("liminf").get_to(d.minus_liminf);
    r.at("plus").at("limsup").get_to(d.plus_limsup);
    r.at("plus").at("liminf").get_to(d.plus_liminf);
    r.at("exact_limits").get_to(d.exact_limits);
    j.at("ratio_bound").get_to(d.ratio_bound);
    j.at("lower_bound").get_to(d.lower_bound);
    if (j.contains("residuals")) {
        d.residual = j["residuals"].at("total").get<double>();
        d.d_residual = j["residuals"].at("d").get<double>();
        d.shift_residual = j["residuals"].at("shift").get<double>();
        d.evolve_residual = j["residuals"].at("evolve").get<double>();
    }
    if (j.contains("decay")) d.decay = j["decay"].get<DecayFit>();
    if (j.contains("predicted")) {
        d.predicted_slope_plus = j["predicted"].at("slope_plus").get<double>();
        d.predicted_slope_minus = j["predicted"].at("slope_minus").get<double>();
    }
}

BirthDoc make_birth_doc(const BirthReport& rep) {
    BirthDoc d;
    d.sign = rep.sign == BirthSign::plus ? "plus" : "minus";
    d.verdict = verdict_name(rep.verdict);
    d.minus_limsup = rep.ratios.minus.sup;
    d.minus_liminf = rep.ratios.minus.inf;
    d.plus_limsup = rep.ratios.plus.sup;
    d.plus_liminf = rep.ratios.plus.inf;
    d.exact_limits = rep.ratios.exact_limits;
    d.ratio_bound = rep.ratio_bound;
    d.lower_bound = rep.lower_bound;
    if (rep.residuals) {
        d.residual = rep.residuals->residual;
        d.d_residual = rep.residuals->d_residual;
        d.shift_residual = rep.residuals->shift_residual;
        d.evolve_residual = rep.residuals->evolve_residual;
    }
    d.decay = rep.decay;
    if (rep.verdict == Verdict::nontrivial_dim1 && rep.ratios.exact_limits) {
        d.predicted_slope_plus = std::log(rep.ratios.plus.sup);
        d.predicted_slope_minus = -std::log(rep.ratios.minus.sup);
    }
    return d;
}

void cmd_simulate(const ExperimentConfig& cfg, const std::filesystem::path& out_dir) {
    check_keys(cfg.command_options, {}, "command-options (simulate)");
    const int window = cfg.require_window();
    const int horizon = cfg.require_time();
    const auto [shift, coins] = cfg.build();

    State psi = State::delta(0, {cplx(1.0), cplx(0.0)});
    int start_site = 0;
    if (const auto* d = std::get_if<InitialDelta>(&cfg.initial)) {
        if (std::abs(d->x) > window)
            fail("initial.delta.x lies outside the configured window");
        if (!(norm2(d->spinor) > 0.0)) fail("initial spinor must be nonzero");
        const double n = std::sqrt(norm2(d->spinor));
        psi = State::delta(d->x, {d->spinor[0] / n, d->spinor[1] / n});
        start_site = d->x;
    } else if (const auto* b = std::get_if<InitialBirth>(&cfg.initial)) {
        psi = construct_eigenvector(shift, coins, b->sign, -window, window,
                                    cfg.tol.tail_mass, cfg.tol.classify_margin,
                                    cfg.tol.min_chi);
        double best = -1.0;
        for (int x = psi.x_min(); x <= psi.x_max(); ++x)
            if (psi.site_norm2(x) > best) {
                best = psi.site_norm2(x);
                start_site = x;
            }
    } else {
        fail("simulate requires 'initial'");
    }

    std::string csv = "t,x,probability\n";
    SummaryDoc summary;
    summary.start_site = start_site;
    summary.time_horizon = horizon;
    const State psi0 = psi;
    for (int t = 0;; ++t) {
        const std::map<int, double> dist = position_distribution(psi);
        for (const auto& [x, pr] : dist)
            csv += csv_int(t) + "," + csv_int(x) + "," + format_double(pr) + "\n";
        const auto at_start = dist.find(start_site);
        summary.return_probability.push_back(at_start == dist.end() ? 0.0
                                                                    : at_start->second);
        summary.survival_probability.push_back(std::norm(overlap(psi0, psi)));
        summary.norm_drift = std::max(summary.norm_drift, std::abs(psi.norm() - 1.0));
        if (t == horizon) break;
        psi = step(shift, coins, psi, cfg.tol.compaction);
    }
    write_text(out_dir / "distribution.csv", csv);
    write_json(out_dir / "summary.json", json(summary));
}

void cmd_spectrum(const ExperimentConfig& cfg, const std::filesystem::path& out_dir) {
    check_keys(cfg.command_options, {"sites"}, "command-options (spectrum)");
    int sites = 0;
    if (cfg.command_options.contains("sites")) {
        if (!cfg.command_options["sites"].is_number_integer())
            fail("command-options.sites must be an integer");
        sites = cfg.command_options["sites"].get<int>();
    } else if (cfg.window) {
        sites = 2 * *cfg.window;
    } else {
        fail("spectrum needs command-options.sites or window");
    }
    if (sites < 4) fail("spectrum needs at least 4 sites");
    const auto [shift, coins] = cfg.build();
    const MappingReport rep = spectral_mapping_check(shift, coins, sites);

    std::string t_csv = "eigenvalue,residual,boundary_localized\n";
    for (std::size_t i = 0; i < rep.t_spectrum.values_real.size(); ++i)
        t_csv += format_double(rep.t_spectrum.values_real[i]) + "," +
                 format_double(rep.t_spectrum.residuals[i]) + "," +
                 (rep.t_spectrum.boundary_localized[i] ? "1" : "0") + "\n";
    write_text(out_dir / "spectrum_T.csv", t_csv);

    std::string u_csv = "re,im,residual,mapping_defect,boundary_localized\n";
    for (std::size_t i = 0; i < rep.u_spectrum.values.size(); ++i)
        u_csv += format_double(rep.u_spectrum.values[i].real()) + "," +
                 format_double(rep.u_spectrum.values[i].imag()) + "," +
                 format_double(rep.u_spectrum.residuals[i]) + "," +
                 format_double(rep.u_spectrum.mapping_defects[i]) + "," +
                 (rep.u_spectrum.boundary_localized[i] ? "1" : "0") + "\n";
    write_text(out_dir / "spectrum_U.csv", u_csv);

    MappingDoc doc;
    doc.sites = sites;
    doc.seam = rep.seam;
    doc.max_defect = rep.max_defect;
    doc.max_interior_defect = rep.max_interior_defect;
    doc.max_inverse_defect = rep.max_inverse_defect;
    write_json(out_dir / "mapping.json", json(doc));
}

void cmd_birth(const ExperimentConfig& cfg, const std::filesystem::path& out_dir) {
    check_keys(cfg.command_options, {"tail_start"}, "command-options (birth)");
    const int window = cfg.require_window();
    int tail_start = 30;
    if (cfg.command_options.contains("tail_start")) {
        if (!cfg.command_options["tail_start"].is_number_integer())
            fail("command-options.tail_start must be an integer");
        tail_start = cfg.command_options["tail_start"].get<int>();
    }
    const auto [shift, coins] = cfg.build();
    for (const BirthSign sign : {BirthSign::plus, BirthSign::minus}) {
        const char* tag = sign == BirthSign::plus ? "plus" : "minus";
        const BirthReport rep =
            birth_report(shift, coins, sign, -window, window, tail_start,
                         cfg.tol.tail_mass, cfg.tol.classify_margin, cfg.tol.min_chi);
        write_json(out_dir / (std::string("birth_") + tag + ".json"),
                   json(make_birth_doc(rep)));
        if (rep.eigenvector) {
            std::string csv = "x,norm2,log_norm2\n";
            for (int x = rep.eigenvector->x_min(); x <= rep.eigenvector->x_max(); ++x) {
                const double m = rep.eigenvector->site_norm2(x);
                if (m > 0.0)
                    csv += csv_int(x) + "," + format_double(m) + "," +
                           format_double(std::log(m)) + "\n";
            }
            write_text(out_dir / (std::string("birth_") + tag + ".csv"), csv);
        }
    }
}

namespace {

struct GridParam {
    std::string name;
    std::vector<double> values;
};

std::vector<GridParam> parse_grid(const json& opts) {
    if (!opts.contains("grid")) fail("sweep needs command-options.grid");
    const json& grid = opts["grid"];
    check_keys(grid, {"parameters"}, "grid");
    if (!grid.contains("parameters")) fail("grid requires 'parameters'");
    const json& params = grid["parameters"];
    if (!params.is_array() || params.empty() || params.size() > 2)
        fail("grid.parameters must list one or two parameters");
    std::vector<GridParam> out;
    for (const json& p : params) {
        check_keys(p, {"name", "values", "from", "to", "count"}, "grid parameter");
        GridParam g;
        if (!p.contains("name")) fail("grid parameter requires 'name'");
        g.name = p["name"].get<std::string>();
        if (p.contains("values")) {
            for (const json& v : p["values"]) {
                if (!v.is_number()) fail("grid values must be numbers");
                g.values.push_back(v.get<double>());
            }
        } else {
            if (!p.contains("from") || !p.contains("to") || !p.contains("count"))
                fail("grid parameter needs 'values' or 'from'/'to'/'count'");
            const double from = p["from"].get<double>();
            const double to = p["to"].get<double>();
            const int count = p["count"].get<int>();
            if (count < 1) fail("grid count must be positive");
            for (int i = 0; i < count; ++i)
                g.values.push_back(count == 1 ? from
                                              : from + i * (to - from) / (count - 1));
        }
        if (g.values.empty()) fail("grid parameter '" + g.name + "' has no values");
        out.push_back(std::move(g));
    }
    return out;
}

struct SweepRow {
    ShiftParams shift;
    CoinField coins;
    bool boundary = false;
    Verdict predicted_plus = Verdict::inconclusive;
    Verdict predicted_minus = Verdict::inconclusive;
};

double override_or(const std::map<std::string, double>& o, const std::string& name,
                   double fallback) {
    const auto it = o.find(name);
    return it == o.end() ? fallback : it->second;
}

SweepRow build_point(const ExperimentConfig& cfg,
                     const std::map<std::string, double>& o) {
    if (const auto* a = std::get_if<AnisotropicModel>(&cfg.model)) {
        for (const auto& [k, v] : o)
            if (k != "epsilon" && k != "p")
                fail("anisotropic sweeps accept parameters 'epsilon' and 'p', not '" +
                     k + "'");
        AnisotropicSpec spec = a->spec;
        spec.epsilon = override_or(o, "epsilon", spec.epsilon);
        if (!cfg.shift_p && !o.count("p"))
            fail("anisotropic sweeps need shift.p in the config or a 'p' grid");
        const double p = override_or(o, "p", cfg.shift_p.value_or(0.0));
        // Sweeping p re-derives q = sqrt(1 - p^2); a configured q only applies
        // to the un-swept value.
        const ShiftParams shift = o.count("p") || !cfg.shift_q
                                      ? ShiftParams(p, std::sqrt(1.0 - p * p))
                                      : ShiftParams(p, *cfg.shift_q);
        SweepRow row{shift, anisotropic_coin(spec)};
        try {
            std::tie(row.predicted_plus, row.predicted_minus) =
                predict_anisotropic(spec.epsilon, p);
        } catch (const std::domain_error&) {
            row.boundary = true;
        }
        return row;
    }
    if (const auto* k = std::get_if<KitagawaModel>(&cfg.model)) {
        for (const auto& [key, v] : o)
            if (key != "theta2" && key != "theta_minus" && key != "theta_plus")
                fail("kitagawa sweeps accept 'theta2', 'theta_minus' and 'theta_plus', "
                     "not '" + key + "'");
        if (!k->spec.theta1_minus || !k->spec.theta1_plus)
            fail("kitagawa sweeps need declared limit angles (constant or two-phase "
                 "theta1)");
        const double tm = override_or(o, "theta_minus", *k->spec.theta1_minus);
        const double tp = override_or(o, "theta_plus", *k->spec.theta1_plus);
        const double t2 = override_or(o, "theta2", k->spec.theta2);
        auto [shift, coins] = kitagawa_coin(KitagawaSpec::two_phase(tm, tp, t2));
        SweepRow row{shift, std::move(coins)};
        try {
            std::tie(row.predicted_plus, row.predicted_minus) =
                predict_two_phase_angles(tm, tp, t2);
        } catch (const std::domain_error&) {
            row.boundary = true;
        }
        return row;
    }
    fail("custom-table models have no closed-form prediction to sweep against");
}

} // namespace

int cmd_sweep(const ExperimentConfig& cfg, const std::filesystem::path& out_dir) {
    check_keys(cfg.command_options, {"grid"}, "command-options (sweep)");
    const std::vector<GridParam> grid = parse_grid(cfg.command_options);

    std::string csv;
    for (const GridParam& g : grid) csv += g.name + ",";
    csv += "B_plus,b_plus,verdict_plus,B_minus,b_minus,verdict_minus,"
           "predicted_plus,predicted_minus,agree\n";

    const std::size_t n0 = grid[0].values.size();
    const std::size_t n1 = grid.size() > 1 ? grid[1].values.size() : 1;
    int disagreements = 0;
    for (std::size_t i = 0; i < n0; ++i)
        for (std::size_t j = 0; j < n1; ++j) {
            std::map<std::string, double> o;
            o[grid[0].name] = grid[0].values[i];
            if (grid.size() > 1) o[grid[1].name] = grid[1].values[j];
            const SweepRow row = build_point(cfg, o);

            csv += format_double(grid[0].values[i]) + ",";
            if (grid.size() > 1) csv += format_double(grid[1].values[j]) + ",";

            Verdict actual[2];
            double bounds[2][2];
            for (const BirthSign sign : {BirthSign::plus, BirthSign::minus}) {
                const std::size_t s = sign == BirthSign::plus ? 0 : 1;
                const SideRatios ratios =
                    side_ratios(row.shift, row.coins, sign, 1, cfg.tol.min_chi);
                actual[s] = classify(ratios, cfg.tol.classify_margin);
                bounds[s][0] = std::max(ratios.minus.sup, ratios.plus.sup);
                bounds[s][1] = std::min(ratios.minus.inf, ratios.plus.inf);
            }
            csv += format_double(bounds[0][0]) + "," + format_double(bounds[0][1]) +
                   "," + verdict_name(actual[0]) + ",";
            csv += format_double(bounds[1][0]) + "," + format_double(bounds[1][1]) +
                   "," + verdict_name(actual[1]) + ",";
            if (row.boundary) {
                csv += "boundary,boundary,boundary\n";
            } else {
                const bool agree = actual[0] == row.predicted_plus &&
                                   actual[1] == row.predicted_minus;
                if (!agree) ++disagreements;
                csv += verdict_name(row.predicted_plus) + "," +
                       verdict_name(row.predicted_minus) + "," +
                       (agree ? "yes" : "no") + "\n";
            }
        }
    write_text(out_dir / "sweep.csv", csv);
    return disagreements;
}

int run_command(std::string_view cmd, const std::filesystem::path& config_path,
                const std::filesystem::path& out_dir) {
    try {
        const ExperimentConfig cfg = ExperimentConfig::load(config_path);
        std::filesystem::create_directories(out_dir);
        if (cmd == "simulate") {
            cmd_simulate(cfg, out_dir);
            return 0;
        }
        if (cmd == "spectrum") {
            cmd_spectrum(cfg, out_dir);
            return 0;
        }
        if (cmd == "birth") {
            cmd_birth(cfg, out_dir);
            return 0;
        }
        if (cmd == "sweep") {
            const int bad = cmd_sweep(cfg, out_dir);
            if (bad > 0) {
                std::cerr << "sweep: classification disagrees with the prediction on "
                          << bad << " grid point(s); see sweep.csv\n";
                return 4;
            }
            return 0;
        }
        std::cerr << "unknown command '" << cmd << "'\n";
        return 1;
    } catch (const TrivialBirthSpace& e) {
        std::cerr << "trivial birth space: " << e.what() << "\n";
        return 2;
    } catch (const HypothesisViolation& e) {
        std::cerr << "hypothesis violation: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace ssqw::cli
