// knotbeta: beta function of a knot from the command line.
//
// Subcommands: eval, sweep, residues, energy, gradient, bracket, polygon,
// selfcheck. Knots come from JSON files (fourier / torus / polygon / circle);
// tables leave as CSV or JSON with 17-significant-digit numbers.
// Exit status: 0 success, 1 check failure, 2 input or pole error.

#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "knotbeta/energy.hpp"
#include "knotbeta/polygonal.hpp"
#include "knotbeta/selfcheck.hpp"
#include "knotbeta/variational.hpp"

namespace kb = knotbeta;
using nlohmann::json;

namespace {

constexpr int kExitCheckFailure = 1;
constexpr int kExitInputError = 2;

struct CliOptions {
    std::string knot_path;
    std::string config_path;
    kb::RunConfig run;
    bool epsilon_set = false, order_set = false, samples_set = false, guard_set = false,
         format_set = false, out_set = false;
};

kb::RunConfig resolve_config(const CliOptions& opt) {
    kb::RunConfig cfg;
    if (!opt.config_path.empty()) cfg = kb::load_run_config(opt.config_path, cfg);
    if (opt.epsilon_set) cfg.epsilon = opt.run.epsilon;
    if (opt.order_set) cfg.order = opt.run.order;
    if (opt.samples_set) cfg.samples = opt.run.samples;
    if (opt.guard_set) cfg.guard_radius = opt.run.guard_radius;
    if (opt.format_set) cfg.format = opt.run.format;
    if (opt.out_set) cfg.out = opt.run.out;
    return cfg;
}

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty() && path != "-") {
            file_.open(path);
            if (!file_) throw std::runtime_error("cannot open output file: " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

void emit_error(const std::string& code, const std::string& message) {
    json err{{"error", code}, {"message", message}};
    std::cerr << err.dump() << "\n";
}

struct EvalRow {
    double s_re, s_im;
    kb::MeroValue value;
    std::string method;
};

EvalRow eval_one(const kb::LoadedKnot& lk, std::complex<double> s, const kb::RunConfig& cfg) {
    EvalRow row;
    row.s_re = s.real();
    row.s_im = s.imag();
    if (lk.type == "circle") {
        row.value = kb::circle_beta(s, *lk.circle_radius, cfg.guard_radius);
        row.method = "closed-form";
    } else if (lk.knot.kind() == kb::Knot::Kind::Polygon) {
        row.value = kb::polygon_beta(lk.knot, s, cfg.guard_radius);
        row.method = "polygon";
    } else {
        const kb::ArcFrame frame(lk.knot, cfg.samples, 10);
        if (s.real() > 0.0) {
            row.value.value = kb::beta_direct(frame, s);
            row.value.distance_to_pole = kb::distance_to_odd_poles(s);
            row.value.guard_radius = cfg.guard_radius;
            row.value.error_estimate = 1e-9 * std::abs(row.value.value);
            row.method = "direct";
        } else {
            row.value = kb::beta_eval(frame, s, cfg.continuation());
            row.method = "continuation";
        }
    }
    return row;
}

int cmd_eval(const CliOptions& opt, double s) {
    const kb::RunConfig cfg = resolve_config(opt);
    const kb::LoadedKnot lk = kb::load_knot_file(opt.knot_path);
    const EvalRow row = eval_one(lk, {s, 0.0}, cfg);
    if (!row.value.reliable()) {
        emit_error("pole-proximity", "s is within the guard radius of a pole at " +
                                         kb::format_g17(row.value.nearest_pole.value_or(0.0)));
        return kExitInputError;
    }
    Output out(cfg.out);
    if (cfg.format == "json") {
        json j{{"s", row.s_re},
               {"re_B", row.value.value.real()},
               {"im_B", row.value.value.imag()},
               {"err_est", row.value.error_estimate},
               {"method", row.method}};
        out.stream() << j.dump(2) << "\n";
    } else {
        out.stream() << "s,re_B,im_B,err_est,method\n"
                     << kb::format_g17(row.s_re) << "," << kb::format_g17(row.value.value.real())
                     << "," << kb::format_g17(row.value.value.imag()) << ","
                     << kb::format_g17(row.value.error_estimate) << "," << row.method << "\n";
    }
    return 0;
}

int cmd_sweep(const CliOptions& opt, double smin, double smax, double step) {
    if (!(step > 0.0)) {
        emit_error("bad-grid", "step must be positive");
        return kExitInputError;
    }
    const kb::RunConfig cfg = resolve_config(opt);
    const kb::LoadedKnot lk = kb::load_knot_file(opt.knot_path);
    Output out(cfg.out);
    out.stream() << "s,re_B,im_B,err_est,flag\n";
    std::optional<kb::ArcFrame> frame;
    if (lk.type != "circle" && lk.knot.smooth()) frame.emplace(lk.knot, cfg.samples, 10);
    for (double s = smin; s <= smax + 1e-12; s += step) {
        std::string flag;
        kb::MeroValue v;
        try {
            if (lk.type == "circle") {
                v = kb::circle_beta({s, 0.0}, *lk.circle_radius, cfg.guard_radius);
            } else if (lk.knot.kind() == kb::Knot::Kind::Polygon) {
                v = kb::polygon_beta(lk.knot, {s, 0.0}, cfg.guard_radius);
            } else if (s > 0.0) {
                v.value = kb::beta_direct(*frame, {s, 0.0});
                v.distance_to_pole = kb::distance_to_odd_poles({s, 0.0});
                v.guard_radius = cfg.guard_radius;
                v.error_estimate = 1e-9 * std::abs(v.value);
            } else {
                v = kb::beta_eval(*frame, {s, 0.0}, cfg.continuation());
            }
        } catch (const std::exception& e) {
            out.stream() << kb::format_g17(s) << ",,,,error\n";
            continue;
        }
        if (!v.reliable()) {
            out.stream() << kb::format_g17(s) << ",,,,pole\n";
            continue;
        }
        out.stream() << kb::format_g17(s) << "," << kb::format_g17(v.value.real()) << ","
                     << kb::format_g17(v.value.imag()) << "," << kb::format_g17(v.error_estimate)
                     << ",\n";
    }
    return 0;
}

int cmd_residues(const CliOptions& opt, int max_j) {
    const kb::RunConfig cfg = resolve_config(opt);
    const kb::LoadedKnot lk = kb::load_knot_file(opt.knot_path);
    Output out(cfg.out);

    json rows = json::array();
    if (lk.knot.kind() == kb::Knot::Kind::Polygon) {
        const kb::PolygonResidues res = kb::polygon_residues(lk.knot);
        rows.push_back({{"pole", -1.0},
                        {"residue", res.at_minus_1},
                        {"prop21_printed", res.prop21_printed_minus_1},
                        {"printed_disagrees", true}});
        rows.push_back({{"pole", -2.0}, {"residue", res.at_minus_2}});
    } else {
        if (2 * max_j >= cfg.order) {
            emit_error("insufficient-order", "residue j = " + std::to_string(max_j) +
                                                 " needs order > " + std::to_string(2 * max_j));
            return kExitInputError;
        }
        const kb::ArcFrame frame(lk.knot, cfg.samples, 10);
        for (int j = 0; j <= max_j; ++j) {
            const kb::ResidueReport rep = kb::beta_residue(frame, j, cfg.continuation());
            json row{{"j", j}, {"pole", -2.0 * j - 1.0}, {"series_residue", rep.series_residue}};
            if (rep.formula_residue) row["formula_residue"] = *rep.formula_residue;
            if (rep.oracle_residue) row["oracle_residue"] = *rep.oracle_residue;
            if (rep.paper_printed) {
                row["paper_printed"] = *rep.paper_printed;
                row["verdict"] = rep.printed_disagrees ? "DISAGREES" : "agrees";
            }
            rows.push_back(row);
        }
    }
    if (cfg.format == "json") {
        out.stream() << rows.dump(2) << "\n";
    } else {
        out.stream() << "j,pole,series_residue,formula_residue,oracle_residue,paper_printed,verdict\n";
        for (const auto& row : rows) {
            auto opt_str = [&](const char* key) {
                return row.contains(key) ? kb::format_g17(row[key].get<double>()) : std::string();
            };
            out.stream() << (row.contains("j") ? std::to_string(row["j"].get<int>()) : "") << ","
                         << kb::format_g17(row["pole"].get<double>()) << ","
                         << (row.contains("series_residue") ? kb::format_g17(row["series_residue"].get<double>())
                                                            : opt_str("residue"))
                         << "," << opt_str("formula_residue") << "," << opt_str("oracle_residue")
                         << "," << (row.contains("prop21_printed") ? opt_str("prop21_printed")
                                                                   : opt_str("paper_printed"))
                         << ","
                         << (row.contains("verdict") ? row["verdict"].get<std::string>() : "")
                         << "\n";
        }
    }
    return 0;
}

int cmd_energy(const CliOptions& opt) {
    const kb::RunConfig cfg = resolve_config(opt);
    const kb::LoadedKnot lk = kb::load_knot_file(opt.knot_path);
    if (!lk.knot.smooth()) {
        emit_error("not-smooth", "energy requires a smooth knot");
        return kExitInputError;
    }
    const kb::ArcFrame frame(lk.knot, cfg.samples, 10);
    kb::EnergyConfig ecfg;
    ecfg.order = cfg.order;
    const kb::EnergyReport rep = kb::prop31_check(frame, ecfg, cfg.continuation());
    Output out(cfg.out);
    json j{{"E", rep.E}, {"B_minus2", rep.B_minus2}, {"defect", rep.defect},
           {"f_minus2", rep.f_minus2}};
    if (cfg.format == "json") {
        out.stream() << j.dump(2) << "\n";
    } else {
        out.stream() << "E,B_minus2,defect,f_minus2\n"
                     << kb::format_g17(rep.E) << "," << kb::format_g17(rep.B_minus2) << ","
                     << kb::format_g17(rep.defect) << "," << kb::format_g17(rep.f_minus2) << "\n";
    }
    return 0;
}

int cmd_gradient(const CliOptions& opt, double s, bool printed_convention) {
    const kb::RunConfig cfg = resolve_config(opt);
    const kb::LoadedKnot lk = kb::load_knot_file(opt.knot_path);
    if (!lk.knot.smooth()) {
        emit_error("not-smooth", "gradient requires a smooth knot");
        return kExitInputError;
    }
    const kb::ArcFrame frame(lk.knot, cfg.samples, 10);
    kb::VariationalConfig vcfg;
    if (printed_convention) vcfg.convention = kb::GradientConvention::Printed;
    const kb::GradientField gf = kb::gradient_field(frame, s, vcfg);
    Output out(cfg.out);
    out.stream() << "x,gx,gy,gz\n";
    for (int i = 0; i < frame.samples(); ++i)
        out.stream() << kb::format_g17(frame.x(i)) << "," << kb::format_g17(gf.g[i].x) << ","
                     << kb::format_g17(gf.g[i].y) << "," << kb::format_g17(gf.g[i].z) << "\n";
    return 0;
}

int cmd_bracket(const CliOptions& opt, double s, double u) {
    const kb::RunConfig cfg = resolve_config(opt);
    const kb::LoadedKnot lk = kb::load_knot_file(opt.knot_path);
    if (!lk.knot.smooth()) {
        emit_error("not-smooth", "bracket requires a smooth knot");
        return kExitInputError;
    }
    const int n = std::min(cfg.samples, 128); // O(N^2) kernel, N^3-equivalent cost
    const kb::ArcFrame frame(lk.knot, n, 6);
    const double value = kb::poisson_bracket(frame, s, u);
    const kb::ArcFrame coarse(lk.knot, n / 2, 6);
    const double est = std::abs(value - kb::poisson_bracket(coarse, s, u));
    Output out(cfg.out);
    if (cfg.format == "json") {
        json j{{"s", s}, {"u", u}, {"bracket", value}, {"refinement_estimate", est}};
        out.stream() << j.dump(2) << "\n";
    } else {
        out.stream() << "s,u,bracket,refinement_estimate\n"
                     << kb::format_g17(s) << "," << kb::format_g17(u) << ","
                     << kb::format_g17(value) << "," << kb::format_g17(est) << "\n";
    }
    return 0;
}

int cmd_polygon(const CliOptions& opt, std::optional<double> s) {
    const kb::RunConfig cfg = resolve_config(opt);
    const kb::LoadedKnot lk = kb::load_knot_file(opt.knot_path);
    if (lk.knot.kind() != kb::Knot::Kind::Polygon) {
        emit_error("not-polygon", "polygon command requires a polygon knot file");
        return kExitInputError;
    }
    const kb::PolygonResidues res = kb::polygon_residues(lk.knot);
    json j{{"res_minus_1", res.at_minus_1},
           {"res_minus_2", res.at_minus_2},
           {"prop21_printed_minus_1", res.prop21_printed_minus_1}};
    if (s) {
        const kb::MeroValue v = kb::polygon_beta(lk.knot, {*s, 0.0}, cfg.guard_radius);
        if (!v.reliable()) {
            emit_error("pole-proximity", "s is within the guard radius of a polygon pole");
            return kExitInputError;
        }
        j["s"] = *s;
        j["B"] = v.value.real();
        j["err_est"] = v.error_estimate;
    }
    Output out(cfg.out);
    out.stream() << j.dump(2) << "\n";
    return 0;
}

int cmd_selfcheck(const CliOptions& opt) {
    const kb::RunConfig cfg = resolve_config(opt);
    const auto results = kb::run_selfcheck(cfg);
    json rows = json::array();
    for (const auto& r : results) {
        const char* status = r.status == kb::CheckStatus::Pass ? "PASS"
                             : r.status == kb::CheckStatus::Skip ? "SKIPPED"
                                                                 : "FAIL";
        rows.push_back({{"id", r.id},
                        {"name", r.name},
                        {"status", status},
                        {"seconds", r.seconds},
                        {"detail", r.detail}});
        std::cerr << "[" << status << "] " << r.id << " " << r.name << "\n";
    }
    Output out(cfg.out);
    out.stream() << rows.dump(2) << "\n";
    return kb::all_passed(results) ? 0 : kExitCheckFailure;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"beta function of a knot: evaluation, residues, energies, brackets"};
    app.require_subcommand(1);

    CliOptions opt;
    auto add_common = [&](CLI::App* sub, bool needs_knot = true) {
        if (needs_knot) sub->add_option("--knot", opt.knot_path, "knot JSON file")->required();
        sub->add_option("--config", opt.config_path, "JSON config overriding defaults");
        sub->add_option("--epsilon", opt.run.epsilon, "strip half-width (0 = auto scan)")
            ->each([&](const std::string&) { opt.epsilon_set = true; });
        sub->add_option("--order", opt.run.order, "subtraction order r")
            ->each([&](const std::string&) { opt.order_set = true; });
        sub->add_option("--samples", opt.run.samples, "arc-length samples N")
            ->each([&](const std::string&) { opt.samples_set = true; });
        sub->add_option("--guard", opt.run.guard_radius, "pole guard radius")
            ->each([&](const std::string&) { opt.guard_set = true; });
        sub->add_option("--format", opt.run.format, "csv or json")
            ->each([&](const std::string&) { opt.format_set = true; });
        sub->add_option("--out", opt.run.out, "output path (default stdout)")
            ->each([&](const std::string&) { opt.out_set = true; });
    };

    double s = 0.0, u = 0.0, smin = 0.0, smax = 0.0, step = 0.25;
    int max_j = 2;
    bool printed_convention = false;
    bool has_s = false;

    auto* eval = app.add_subcommand("eval", "evaluate B_K(s) at one point");
    add_common(eval);
    eval->add_option("--s", s, "exponent")->required();

    auto* sweep = app.add_subcommand("sweep", "CSV table of B_K over an s grid");
    add_common(sweep);
    sweep->add_option("--smin", smin)->required();
    sweep->add_option("--smax", smax)->required();
    sweep->add_option("--step", step);

    auto* residues = app.add_subcommand("residues", "residue report at s = -2j-1");
    add_common(residues);
    residues->add_option("--max-j", max_j);

    auto* energy = app.add_subcommand("energy", "Mobius energy and the s = -2 identity");
    add_common(energy);

    auto* gradient = app.add_subcommand("gradient", "per-sample gradient field of B_s");
    add_common(gradient);
    gradient->add_option("--s", s, "exponent (> 1)")->required();
    gradient->add_flag("--printed-exponent", printed_convention,
                       "use the published chord^{s-1} kernel instead of chord^{s-2}");

    auto* bracket = app.add_subcommand("bracket", "Poisson bracket of B_s and B_u");
    add_common(bracket);
    bracket->add_option("--s", s)->required();
    bracket->add_option("--u", u)->required();

    auto* polygon = app.add_subcommand("polygon", "polygon residues and optional evaluation");
    add_common(polygon);
    polygon->add_option("--s", s)->each([&](const std::string&) { has_s = true; });

    auto* selfcheck = app.add_subcommand("selfcheck", "run the full oracle suite");
    add_common(selfcheck, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (eval->parsed()) return cmd_eval(opt, s);
        if (sweep->parsed()) return cmd_sweep(opt, smin, smax, step);
        if (residues->parsed()) return cmd_residues(opt, max_j);
        if (energy->parsed()) return cmd_energy(opt);
        if (gradient->parsed()) return cmd_gradient(opt, s, printed_convention);
        if (bracket->parsed()) return cmd_bracket(opt, s, u);
        if (polygon->parsed())
            return cmd_polygon(opt, has_s ? std::optional<double>(s) : std::nullopt);
        if (selfcheck->parsed()) return cmd_selfcheck(opt);
    } catch (const std::exception& e) {
        emit_error("runtime-error", e.what());
        return kExitInputError;
    }
    return 0;
}
