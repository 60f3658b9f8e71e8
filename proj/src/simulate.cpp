#include "subdiff/simulate.hpp"

#include <cmath>
#include <stdexcept>

#include "subdiff/sampling.hpp"

namespace subdiff {

namespace {

constexpr std::uint64_t kClockSubstream = 0;
constexpr std::uint64_t kGaussSubstream = 1;

double default_delta(const TimeGrid& grid, double delta) {
    if (delta > 0.0) return delta;
    return grid.min_step() / 10.0;
}

}  // namespace

std::string to_string(PathKind k) {
    switch (k) {
        case PathKind::subordinator: return "subordinator";
        case PathKind::inverse_subordinator: return "inverse_subordinator";
        case PathKind::abm: return "abm";
        case PathKind::nts: return "nts";
        case PathKind::subdiffusive: return "subdiffusive";
    }
    return "unknown";
}

SamplePath simulate_subordinator(const TemperParams& params, const TimeGrid& grid,
                                 RandomStream& stream) {
    std::vector<double> v(grid.size());
    double t_prev = 0.0, total = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double dt = grid[i] - t_prev;
        if (dt > 0.0) total += sample_tempered_stable_increment(stream, params, dt);
        v[i] = total;
        t_prev = grid[i];
    }
    return SamplePath(grid, std::move(v), PathKind::subordinator);
}

InverseSubordinatorDetail simulate_inverse_subordinator_detail(
    const TemperParams& params, const TimeGrid& tau_grid, double delta,
    RandomStream& stream) {
    if (!(delta > 0.0))
        throw DomainError("simulate_inverse_subordinator: delta must be > 0");
    std::vector<double> t_path;  // T(delta), T(2 delta), ...
    std::vector<double> s(tau_grid.size());
    double t_cum = 0.0;
    std::size_t n = 0;  // steps taken so far
    for (std::size_t k = 0; k < tau_grid.size(); ++k) {
        const double tau = tau_grid[k];
        while (!(t_cum > tau)) {
            t_cum += sample_tempered_stable_increment(stream, params, delta);
            t_path.push_back(t_cum);
            ++n;
        }
        s[k] = delta * static_cast<double>(n);
    }
    return {SamplePath(tau_grid, std::move(s), PathKind::inverse_subordinator),
            std::move(t_path), delta};
}

SamplePath simulate_inverse_subordinator(const TemperParams& params,
                                         const TimeGrid& tau_grid, double delta,
                                         RandomStream& stream) {
    return simulate_inverse_subordinator_detail(params, tau_grid, delta, stream).s;
}

SamplePath simulate_abm(double beta, const TimeGrid& grid, RandomStream& stream) {
    std::vector<double> v(grid.size());
    double t_prev = 0.0, x = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double dt = grid[i] - t_prev;
        if (dt > 0.0)
            x += beta * dt + std::sqrt(dt) * sample_standard_gaussian(stream);
        v[i] = x;
        t_prev = grid[i];
    }
    return SamplePath(grid, std::move(v), PathKind::abm);
}

SamplePath simulate_nts(const ModelParams& params, const TimeGrid& grid,
                        RandomStream& stream) {
    RandomStream clock = stream.substream(kClockSubstream);
    RandomStream gauss = stream.substream(kGaussSubstream);
    const TemperParams tp = params.temper();
    std::vector<double> v(grid.size());
    double t_prev = 0.0, y = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double dt = grid[i] - t_prev;
        if (dt > 0.0) {
            const double d_t = sample_tempered_stable_increment(clock, tp, dt);
            y += sample_standard_gaussian(gauss) * std::sqrt(d_t) + params.beta * d_t;
        }
        v[i] = y;
        t_prev = grid[i];
    }
    return SamplePath(grid, std::move(v), PathKind::nts);
}

SamplePath simulate_subdiffusive(const ModelParams& params, const TimeGrid& tau_grid,
                                 double delta, RandomStream& stream) {
    RandomStream clock = stream.substream(kClockSubstream);
    RandomStream gauss = stream.substream(kGaussSubstream);
    SamplePath s_path =
        simulate_inverse_subordinator(params.temper(), tau_grid, delta, clock);
    std::vector<double> v(tau_grid.size());
    double s_prev = 0.0, y = 0.0;
    for (std::size_t k = 0; k < tau_grid.size(); ++k) {
        const double ds = s_path.values[k] - s_prev;
        if (ds > 0.0)
            y += params.beta * ds + std::sqrt(ds) * sample_standard_gaussian(gauss);
        v[k] = y;
        s_prev = s_path.values[k];
    }
    return SamplePath(tau_grid, std::move(v), PathKind::subdiffusive);
}

namespace {

SamplePath simulate_one(EnsembleKind kind, const ModelParams& params,
                        const TimeGrid& grid, double delta, RandomStream& stream) {
    switch (kind) {
        case EnsembleKind::subordinator:
            return simulate_subordinator(params.temper(), grid, stream);
        case EnsembleKind::inverse_subordinator:
            return simulate_inverse_subordinator(params.temper(), grid, delta, stream);
        case EnsembleKind::abm:
            return simulate_abm(params.beta, grid, stream);
        case EnsembleKind::nts:
            return simulate_nts(params, grid, stream);
        case EnsembleKind::subdiffusive:
            return simulate_subdiffusive(params, grid, delta, stream);
    }
    throw std::logic_error("simulate_one: unknown kind");
}

TrajectoryEnsemble run_ensemble(EnsembleKind kind, const ModelParams& params,
                                const TimeGrid& grid, std::size_t n_paths,
                                std::uint64_t master_seed, double delta, bool parallel) {
    if (n_paths < 1) throw DomainError("simulate_ensemble: n_paths must be >= 1");
    const double d = (kind == EnsembleKind::inverse_subordinator ||
                      kind == EnsembleKind::subdiffusive)
                         ? default_delta(grid, delta)
                         : delta;
    std::vector<std::vector<double>> values(n_paths);
    PathKind pk = PathKind::abm;
    std::string error;

#pragma omp parallel for schedule(dynamic) if (parallel)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n_paths); ++i) {
        try {
            RandomStream stream(master_seed, static_cast<std::uint64_t>(i));
            SamplePath p = simulate_one(kind, params, grid, d, stream);
            values[i] = std::move(p.values);
        } catch (const std::exception& e) {
#pragma omp critical
            error = e.what();
        }
    }
    if (!error.empty()) throw std::runtime_error("simulate_ensemble: " + error);

    switch (kind) {
        case EnsembleKind::subordinator: pk = PathKind::subordinator; break;
        case EnsembleKind::inverse_subordinator: pk = PathKind::inverse_subordinator; break;
        case EnsembleKind::abm: pk = PathKind::abm; break;
        case EnsembleKind::nts: pk = PathKind::nts; break;
        case EnsembleKind::subdiffusive: pk = PathKind::subdiffusive; break;
    }
    TrajectoryEnsemble e{grid, {}, master_seed};
    e.paths.reserve(n_paths);
    for (auto& v : values) e.paths.emplace_back(grid, std::move(v), pk);
    return e;
}

}  // namespace

TrajectoryEnsemble simulate_ensemble(EnsembleKind kind, const ModelParams& params,
                                     const TimeGrid& grid, std::size_t n_paths,
                                     std::uint64_t master_seed, double delta) {
    return run_ensemble(kind, params, grid, n_paths, master_seed, delta, true);
}

TrajectoryEnsemble simulate_ensemble_serial(EnsembleKind kind, const ModelParams& params,
                                            const TimeGrid& grid, std::size_t n_paths,
                                            std::uint64_t master_seed, double delta) {
    return run_ensemble(kind, params, grid, n_paths, master_seed, delta, false);
}

}  // namespace subdiff
