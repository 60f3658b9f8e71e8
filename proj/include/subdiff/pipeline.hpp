#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "subdiff/estimate.hpp"
#include "subdiff/msd.hpp"
#include "subdiff/params.hpp"

namespace subdiff {

// Multi-trajectory CSV: header `t,traj_0,traj_1,...`, strictly increasing t.
TrajectoryEnsemble ingest_csv(const std::string& path);
TrajectoryEnsemble ingest_csv_stream(std::istream& in, const std::string& name);

// Inverse of ingest_csv; doubles serialized with %.17g so round trips and
// repeated emissions are byte-identical.
void write_ensemble_csv(const TrajectoryEnsemble& e, const std::string& path);

enum class SelectedModel { nts, subdiffusive, undetermined };
std::string to_string(SelectedModel m);

struct CalibrationConfig {
    double flat_fraction_threshold = 0.2;  // median flat-increment fraction above
                                           // which the ensemble counts as subdiffusive
    double p_small_threshold = 0.9;   // MSD fallback: sublinear small-lag exponent
    double residual_margin = 1.5;     // MSD fallback: power must beat polynomial
    double epsilon = 0.0;             // flatness / decomposition tolerance
    std::uint64_t seed = 0;           // provenance echo
};

struct TrajectoryResult {
    std::size_t index = 0;
    bool ok = false;
    std::string error;
    EstimationReport report;
};

struct CalibrationReport {
    SelectedModel selected = SelectedModel::undetermined;
    std::string selection_rule;  // the rule applied, recorded verbatim
    std::optional<MsdFit> poly_fit;
    std::optional<MsdFit> power_fit;
    MsdCurve msd;
    std::vector<TrajectoryResult> rows;
    CalibrationConfig config;
};

// Paper-style workflow: ensemble MSD, both fits, model selection, then the
// matching estimator per trajectory (per-trajectory failures do not abort).
CalibrationReport run_calibration(const TrajectoryEnsemble& e,
                                  const CalibrationConfig& cfg = {});

enum class ReportFormat { csv, json };

// Deterministic serialization; JSON embeds the config echo and seed, CSV
// mirrors the paper's table columns (trajectory, alpha, lambda, beta).
void emit_report(const CalibrationReport& report, ReportFormat format,
                 const std::string& path);
std::string render_report(const CalibrationReport& report, ReportFormat format);

// Plot-ready curve dump: one row per lag with empirical and fitted values.
void write_msd_csv(const MsdCurve& curve, const MsdFit* fit, const std::string& path);

std::string format_double(double v);  // %.17g

}  // namespace subdiff
