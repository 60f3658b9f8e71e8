// Command-line front end: simulation campaigns, calibration, MSD analysis and
// analytic curve dumps, all emitting deterministic CSV/JSON.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "subdiff/analytics.hpp"
#include "subdiff/errors.hpp"
#include "subdiff/estimate.hpp"
#include "subdiff/msd.hpp"
#include "subdiff/pipeline.hpp"
#include "subdiff/simulate.hpp"

namespace {

using namespace subdiff;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

EnsembleKind parse_kind(const std::string& model) {
    if (model == "nts") return EnsembleKind::nts;
    if (model == "subdiff") return EnsembleKind::subdiffusive;
    if (model == "subordinator") return EnsembleKind::subordinator;
    if (model == "inverse") return EnsembleKind::inverse_subordinator;
    if (model == "abm") return EnsembleKind::abm;
    throw ParseError("unknown model '" + model + "'");
}

struct Options {
    std::string model = "nts";
    double alpha = 0.5, lambda = 1.0, beta = 0.0;
    double t_max = 1.0;
    std::size_t n_points = 1000;
    std::size_t n_paths = 1;
    std::uint64_t seed = 0;
    double delta = 0.0;
    std::string in_path, out_path;
    std::string format = "json";
    std::string fit = "poly2";
    double epsilon = 0.0;
    double z_max = 0.0;
    double t_eval = 1.0;
    double x_min = 0.01, x_max = 10.0;
    std::size_t reps = 100;
    std::size_t len = 1000;
};

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open output file " + path);
    return out;
}

int cmd_simulate(const Options& o) {
    const ModelParams params(o.alpha, o.lambda, o.beta);
    const TimeGrid grid = TimeGrid::uniform(o.t_max, o.n_points);
    const TrajectoryEnsemble e = simulate_ensemble(parse_kind(o.model), params, grid,
                                                   o.n_paths, o.seed, o.delta);
    write_ensemble_csv(e, o.out_path);
    return kExitOk;
}

int cmd_estimate(const Options& o) {
    const TrajectoryEnsemble e = ingest_csv(o.in_path);
    CalibrationConfig cfg;
    cfg.epsilon = o.epsilon;
    CalibrationReport rep;
    if (o.model == "auto") {
        rep = run_calibration(e, cfg);
    } else {
        rep.config = cfg;
        rep.selected =
            (o.model == "subdiff") ? SelectedModel::subdiffusive : SelectedModel::nts;
        rep.selection_rule = "forced by --model " + o.model;
        rep.msd = empirical_msd(e);
        const double dt = e.shared_grid[1] - e.shared_grid[0];
        for (std::size_t i = 0; i < e.paths.size(); ++i) {
            TrajectoryResult row;
            row.index = i;
            try {
                if (rep.selected == SelectedModel::subdiffusive) {
                    SubdiffEstimationConfig sc;
                    sc.epsilon = o.epsilon;
                    row.report = estimate_subdiffusive(e.paths[i].values, dt, sc);
                } else {
                    NtsEstimationConfig nc;
                    nc.z_max_override = o.z_max;
                    row.report = estimate_nts(
                        IncrementSeries::from_series(e.paths[i].values, dt), nc);
                }
                row.ok = true;
            } catch (const std::exception& ex) {
                row.error = ex.what();
            }
            rep.rows.push_back(row);
        }
    }
    emit_report(rep, o.format == "csv" ? ReportFormat::csv : ReportFormat::json,
                o.out_path);
    return kExitOk;
}

int cmd_msd(const Options& o) {
    const TrajectoryEnsemble e = ingest_csv(o.in_path);
    const MsdCurve curve = empirical_msd(e);
    const MsdFit fit = fit_msd(curve, o.fit == "power2"
                                          ? MsdModel::two_regime_power
                                          : MsdModel::second_order_polynomial);
    write_msd_csv(curve, &fit, o.out_path);
    return kExitOk;
}

int cmd_validate(const Options& o) {
    const ModelParams truth(o.alpha, o.lambda, o.beta);
    const EstimatorKind kind =
        (o.model == "subdiff") ? EstimatorKind::subdiffusive : EstimatorKind::nts;
    const ValidationSummary s =
        validate_estimator(kind, truth, o.reps, o.len, o.seed);
    auto q = [](const QuantileSummary& qs) {
        return nlohmann::ordered_json{{"min", qs.min},       {"q10", qs.q10},
                                      {"q25", qs.q25},       {"median", qs.median},
                                      {"q75", qs.q75},       {"q90", qs.q90},
                                      {"max", qs.max}};
    };
    nlohmann::ordered_json j;
    j["config"] = {{"model", o.model}, {"alpha", o.alpha}, {"lambda", o.lambda},
                   {"beta", o.beta},   {"reps", o.reps},   {"len", o.len},
                   {"seed", o.seed}};
    j["alpha"] = q(s.alpha);
    j["lambda"] = q(s.lambda);
    j["beta"] = q(s.beta);
    j["n_failed"] = s.n_failed;
    auto out = open_out(o.out_path);
    out << j.dump(2) << "\n";
    return kExitOk;
}

int cmd_transform(const Options& o) {
    const ModelParams params(o.alpha, o.lambda, o.beta);
    double z_max = o.z_max;
    if (z_max <= 0.0)
        z_max = (o.model == "nts")
                    ? 0.9 * laplace_nts_domain_bound(o.lambda, o.beta)
                    : 3.0;
    std::vector<std::vector<double>> phi_cols;
    std::size_t n_emp = 0;
    TrajectoryEnsemble e{TimeGrid({0.0, 1.0}), {}, 0};
    if (!o.in_path.empty()) {
        e = ingest_csv(o.in_path);
        n_emp = e.paths.size();
    }
    auto out = open_out(o.out_path);
    out << "z,analytic";
    for (std::size_t c = 0; c < n_emp; ++c) out << ",phi_" << c;
    out << "\n";
    for (std::size_t i = 1; i <= o.n_points; ++i) {
        const double z =
            z_max * static_cast<double>(i) / static_cast<double>(o.n_points);
        double analytic = 0.0;
        if (o.model == "nts")
            analytic = laplace_nts(params, LaplaceQuery(z, o.t_eval));
        else if (o.model == "subordinator")
            analytic = laplace_subordinator(params.temper(), LaplaceQuery(z, o.t_eval));
        else if (o.model == "inverse")
            analytic = laplace_inverse_subordinator(params.temper(), o.t_eval, z);
        else if (o.model == "ys")
            analytic = laplace_ys(params, o.t_eval, z);
        else
            throw ParseError("transform: unknown model '" + o.model + "'");
        out << format_double(z) << "," << format_double(analytic);
        for (std::size_t c = 0; c < n_emp; ++c) {
            const double dt = e.shared_grid[1] - e.shared_grid[0];
            out << ","
                << format_double(empirical_laplace(
                       IncrementSeries::from_series(e.paths[c].values, dt), z));
        }
        out << "\n";
    }
    return kExitOk;
}

int cmd_density(const Options& o) {
    const ModelParams params(o.alpha, o.lambda, o.beta);
    auto out = open_out(o.out_path);
    out << "x,pdf\n";
    for (std::size_t i = 0; i < o.n_points; ++i) {
        const double x =
            o.x_min + (o.x_max - o.x_min) * static_cast<double>(i) /
                          static_cast<double>(o.n_points - 1);
        double pdf = 0.0;
        if (o.model == "stable")
            pdf = stable_pdf(StableParams(o.alpha), x);
        else if (o.model == "tempered")
            pdf = tempered_stable_pdf(params.temper(), o.t_eval, x);
        else if (o.model == "inverse")
            pdf = inverse_subordinator_pdf(params.temper(), o.t_eval, x);
        else if (o.model == "nts")
            pdf = nts_pdf(params, o.t_eval, x);
        else if (o.model == "ys")
            pdf = ys_pdf(params, o.t_eval, x);
        else
            throw ParseError("density: unknown model '" + o.model + "'");
        out << format_double(x) << "," << format_double(pdf) << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Subordinated arithmetic Brownian motion toolkit"};
    app.require_subcommand(1);
    Options o;

    auto add_params = [&](CLI::App* c) {
        c->add_option("--alpha", o.alpha, "stability index in (0,1)");
        c->add_option("--lambda", o.lambda, "tempering rate >= 0");
        c->add_option("--beta", o.beta, "drift");
    };

    auto* sim = app.add_subcommand("simulate", "simulate trajectory ensembles");
    sim->add_option("--model", o.model, "nts|subdiff|subordinator|inverse|abm");
    add_params(sim);
    sim->add_option("--t-max", o.t_max, "grid end time");
    sim->add_option("--n-points", o.n_points, "grid points");
    sim->add_option("--n-paths", o.n_paths, "trajectories");
    sim->add_option("--seed", o.seed, "master seed");
    sim->add_option("--delta", o.delta, "inverse-subordinator step (0 = auto)");
    sim->add_option("--out", o.out_path, "output CSV")->required();

    auto* est = app.add_subcommand("estimate", "estimate model parameters from CSV");
    est->add_option("--model", o.model, "nts|subdiff|auto");
    est->add_option("--in", o.in_path, "input CSV")->required();
    est->add_option("--epsilon", o.epsilon, "constancy tolerance");
    est->add_option("--z-max", o.z_max, "z-grid upper end override");
    est->add_option("--format", o.format, "json|csv");
    est->add_option("--out", o.out_path, "output report")->required();

    auto* msd = app.add_subcommand("msd", "empirical MSD with fitted model");
    msd->add_option("--in", o.in_path, "input CSV")->required();
    msd->add_option("--fit", o.fit, "poly2|power2");
    msd->add_option("--out", o.out_path, "output CSV")->required();

    auto* val = app.add_subcommand("validate", "Monte Carlo estimator validation");
    val->add_option("--model", o.model, "nts|subdiff");
    add_params(val);
    val->add_option("--reps", o.reps, "replications");
    val->add_option("--len", o.len, "path length (increments)");
    val->add_option("--seed", o.seed, "master seed");
    val->add_option("--out", o.out_path, "output JSON")->required();

    auto* tra = app.add_subcommand("transform", "analytic/empirical Laplace transforms");
    tra->add_option("--model", o.model, "nts|subordinator|inverse|ys");
    add_params(tra);
    tra->add_option("--t", o.t_eval, "process time");
    tra->add_option("--z-max", o.z_max, "grid upper end (0 = auto)");
    tra->add_option("--n-points", o.n_points, "grid points");
    tra->add_option("--in", o.in_path, "optional CSV for empirical columns");
    tra->add_option("--out", o.out_path, "output CSV")->required();

    auto* den = app.add_subcommand("density", "analytic density dumps");
    den->add_option("--model", o.model, "stable|tempered|inverse|nts|ys");
    add_params(den);
    den->add_option("--t", o.t_eval, "process time");
    den->add_option("--x-min", o.x_min, "lowest x");
    den->add_option("--x-max", o.x_max, "highest x");
    den->add_option("--n-points", o.n_points, "grid points");
    den->add_option("--out", o.out_path, "output CSV")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) return cmd_simulate(o);
        if (est->parsed()) return cmd_estimate(o);
        if (msd->parsed()) return cmd_msd(o);
        if (val->parsed()) return cmd_validate(o);
        if (tra->parsed()) return cmd_transform(o);
        if (den->parsed()) return cmd_density(o);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const GridError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const ShapeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitOk;
}
