#include "subdiff/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace subdiff {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

double parse_cell(const std::string& s, std::size_t row, std::size_t col) {
    if (s.empty())
        throw ParseError("csv: missing cell at row " + std::to_string(row) + ", column " +
                         std::to_string(col));
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw ParseError("csv: bad number '" + s + "' at row " + std::to_string(row));
    }
    if (pos != s.size())
        throw ParseError("csv: trailing characters in '" + s + "' at row " +
                         std::to_string(row));
    return v;
}

}  // namespace

TrajectoryEnsemble ingest_csv_stream(std::istream& in, const std::string& name) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError(name + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto header = split_csv_line(line);
    if (header.size() < 2 || header[0] != "t")
        throw ParseError(name + ": header must be t,traj_0,traj_1,...");
    const std::size_t n_traj = header.size() - 1;

    std::vector<double> t;
    std::vector<std::vector<double>> cols(n_traj);
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto cells = split_csv_line(line);
        if (cells.size() != n_traj + 1)
            throw ShapeError(name + ": row " + std::to_string(row) + " has " +
                             std::to_string(cells.size()) + " cells, expected " +
                             std::to_string(n_traj + 1));
        const double tv = parse_cell(cells[0], row, 0);
        if (!t.empty() && !(tv > t.back()))
            throw GridError(name + ": t column not strictly increasing at row " +
                            std::to_string(row));
        t.push_back(tv);
        for (std::size_t c = 0; c < n_traj; ++c)
            cols[c].push_back(parse_cell(cells[c + 1], row, c + 1));
    }
    if (t.size() < 2) throw ParseError(name + ": need at least 2 data rows");

    TrajectoryEnsemble e{TimeGrid(std::move(t)), {}, 0};
    for (auto& col : cols)
        e.paths.emplace_back(e.shared_grid, std::move(col), PathKind::abm);
    return e;
}

TrajectoryEnsemble ingest_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("ingest_csv: cannot open " + path);
    return ingest_csv_stream(in, path);
}

void write_ensemble_csv(const TrajectoryEnsemble& e, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("write_ensemble_csv: cannot open " + path);
    out << "t";
    for (std::size_t i = 0; i < e.paths.size(); ++i) out << ",traj_" << i;
    out << "\n";
    for (std::size_t k = 0; k < e.shared_grid.size(); ++k) {
        out << format_double(e.shared_grid[k]);
        for (const auto& p : e.paths) out << "," << format_double(p.values[k]);
        out << "\n";
    }
    if (!out) throw IoError("write_ensemble_csv: write failed for " + path);
}

std::string to_string(SelectedModel m) {
    switch (m) {
        case SelectedModel::nts: return "nts";
        case SelectedModel::subdiffusive: return "subdiffusive";
        case SelectedModel::undetermined: return "undetermined";
    }
    return "undetermined";
}

CalibrationReport run_calibration(const TrajectoryEnsemble& e,
                                  const CalibrationConfig& cfg) {
    CalibrationReport rep;
    rep.config = cfg;
    rep.msd = empirical_msd(e);
    {
        std::ostringstream rule;
        rule << "subdiffusive if median flat-increment fraction >= "
             << cfg.flat_fraction_threshold << "; nts if <= "
             << cfg.flat_fraction_threshold / 4.0
             << "; in between, subdiffusive if power p_small < "
             << cfg.p_small_threshold
             << " and small-window log residual of the polynomial > "
             << cfg.residual_margin
             << " * power small-window residual, else nts; undetermined if no "
                "model fits";
        rep.selection_rule = rule.str();
    }

    try {
        rep.poly_fit = fit_msd(rep.msd, MsdModel::second_order_polynomial);
    } catch (const std::exception&) {
    }
    try {
        rep.power_fit = fit_msd(rep.msd, MsdModel::two_regime_power);
    } catch (const std::exception&) {
    }

    // Primary discriminator: operational-time freezing. The inverse clock
    // produces exact flat runs; the continuous models almost surely never
    // repeat a value. The ensemble MSD alone cannot separate the two at small
    // path counts (both shapes are near-linear outside a short crossover).
    double flat_fraction = 0.0;
    {
        std::vector<double> fractions;
        for (const auto& p : e.paths) {
            std::size_t flats = 0;
            for (std::size_t k = 1; k < p.values.size(); ++k)
                if (std::abs(p.values[k] - p.values[k - 1]) <= cfg.epsilon) ++flats;
            fractions.push_back(static_cast<double>(flats) /
                                static_cast<double>(p.values.size() - 1));
        }
        std::sort(fractions.begin(), fractions.end());
        flat_fraction = fractions[fractions.size() / 2];
    }

    if (!rep.poly_fit && !rep.power_fit) {
        rep.selected = SelectedModel::undetermined;
    } else if (flat_fraction >= cfg.flat_fraction_threshold) {
        rep.selected = SelectedModel::subdiffusive;
    } else if (flat_fraction <= cfg.flat_fraction_threshold / 4.0 ||
               !rep.poly_fit || !rep.power_fit) {
        rep.selected = SelectedModel::nts;
    } else {
        // Ambiguous flatness: fall back to the MSD-shape comparison. The
        // polynomial family cannot grow sublinearly, so subdiffusion shows as
        // a sublinear small-lag exponent plus the polynomial losing to the
        // power law on the small-lag window in the same log-space metric.
        double poly_small_resid = 0.0;
        {
            const RegimeWindows win = regime_windows(rep.msd);
            std::vector<double> lt, lm;
            for (std::size_t i = 0; i < rep.msd.lags.size(); ++i)
                if (rep.msd.lags[i] > 0.0 && rep.msd.values[i] > 0.0) {
                    lt.push_back(rep.msd.lags[i]);
                    lm.push_back(rep.msd.values[i]);
                }
            for (std::size_t i : win.small_idx) {
                const double pred = msd_fit_eval(*rep.poly_fit, lt[i]);
                if (!(pred > 0.0)) {
                    poly_small_resid = 1e300;
                    break;
                }
                const double r = std::log(lm[i]) - std::log(pred);
                poly_small_resid += r * r;
            }
        }
        if (rep.power_fit->p_small < cfg.p_small_threshold &&
            poly_small_resid > cfg.residual_margin * rep.power_fit->residual_small)
            rep.selected = SelectedModel::subdiffusive;
        else
            rep.selected = SelectedModel::nts;
    }

    const double dt = e.shared_grid[1] - e.shared_grid[0];
    for (std::size_t i = 0; i < e.paths.size(); ++i) {
        TrajectoryResult row;
        row.index = i;
        try {
            if (rep.selected == SelectedModel::subdiffusive) {
                SubdiffEstimationConfig sc;
                sc.epsilon = cfg.epsilon;
                row.report = estimate_subdiffusive(e.paths[i].values, dt, sc);
            } else if (rep.selected == SelectedModel::nts) {
                row.report =
                    estimate_nts(IncrementSeries::from_series(e.paths[i].values, dt));
            } else {
                row.error = "model undetermined; no estimator run";
                rep.rows.push_back(row);
                continue;
            }
            row.ok = true;
        } catch (const std::exception& ex) {
            row.error = ex.what();
        }
        rep.rows.push_back(row);
    }
    return rep;
}

namespace {

nlohmann::ordered_json fit_to_json(const MsdFit& f) {
    nlohmann::ordered_json j;
    if (f.model_kind == MsdModel::second_order_polynomial) {
        j["model"] = "poly2";
        j["a"] = f.a;
        j["b"] = f.b;
    } else {
        j["model"] = "power2";
        j["c_small"] = f.c_small;
        j["p_small"] = f.p_small;
        j["c_large"] = f.c_large;
        j["p_large"] = f.p_large;
        j["split_lag"] = f.split_lag;
    }
    j["residual"] = f.residual;
    return j;
}

}  // namespace

std::string render_report(const CalibrationReport& report, ReportFormat format) {
    if (format == ReportFormat::csv) {
        std::ostringstream out;
        out << "trajectory,alpha,lambda,beta\n";
        for (const auto& row : report.rows) {
            out << row.index << ",";
            if (row.ok)
                out << format_double(row.report.alpha_hat) << ","
                    << format_double(row.report.lambda_hat) << ","
                    << format_double(row.report.beta_hat);
            else
                out << ",,";
            out << "\n";
        }
        return out.str();
    }
    nlohmann::ordered_json j;
    j["selected_model"] = to_string(report.selected);
    j["selection_rule"] = report.selection_rule;
    j["config"] = {{"flat_fraction_threshold", report.config.flat_fraction_threshold},
                   {"p_small_threshold", report.config.p_small_threshold},
                   {"residual_margin", report.config.residual_margin},
                   {"epsilon", report.config.epsilon},
                   {"seed", report.config.seed}};
    if (report.poly_fit) j["poly_fit"] = fit_to_json(*report.poly_fit);
    if (report.power_fit) j["power_fit"] = fit_to_json(*report.power_fit);
    j["n_paths"] = report.msd.n_paths;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : report.rows) {
        nlohmann::ordered_json r;
        r["trajectory"] = row.index;
        r["ok"] = row.ok;
        if (row.ok) {
            r["alpha"] = row.report.alpha_hat;
            r["lambda"] = row.report.lambda_hat;
            r["beta"] = row.report.beta_hat;
            r["objective"] = row.report.objective;
        } else {
            r["error"] = row.error;
        }
        rows.push_back(r);
    }
    j["trajectories"] = rows;
    return j.dump(2) + "\n";
}

void emit_report(const CalibrationReport& report, ReportFormat format,
                 const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("emit_report: cannot open " + path);
    out << render_report(report, format);
    if (!out) throw IoError("emit_report: write failed for " + path);
}

void write_msd_csv(const MsdCurve& curve, const MsdFit* fit, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("write_msd_csv: cannot open " + path);
    out << (fit ? "lag,msd,fit\n" : "lag,msd\n");
    for (std::size_t i = 0; i < curve.lags.size(); ++i) {
        out << format_double(curve.lags[i]) << "," << format_double(curve.values[i]);
        if (fit) out << "," << format_double(msd_fit_eval(*fit, curve.lags[i]));
        out << "\n";
    }
    if (!out) throw IoError("write_msd_csv: write failed for " + path);
}

}  // namespace subdiff
