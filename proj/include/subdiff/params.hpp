#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "subdiff/errors.hpp"

namespace subdiff {

// Stability index of the one-sided stable law, alpha in (0,1) strictly.
struct StableParams {
    double alpha;

    explicit StableParams(double alpha_) : alpha(alpha_) {
        if (!(alpha > 0.0 && alpha < 1.0))
            throw DomainError("StableParams: alpha must lie in (0,1), got " +
                              std::to_string(alpha_));
    }
};

// Tempered stable subordinator parameters; lambda = 0 is the pure stable case.
struct TemperParams {
    double alpha;
    double lambda;

    TemperParams(double alpha_, double lambda_) : alpha(alpha_), lambda(lambda_) {
        if (!(alpha > 0.0 && alpha < 1.0))
            throw DomainError("TemperParams: alpha must lie in (0,1), got " +
                              std::to_string(alpha_));
        if (!(lambda >= 0.0))
            throw DomainError("TemperParams: lambda must be >= 0, got " +
                              std::to_string(lambda_));
    }

    StableParams stable() const { return StableParams(alpha); }
};

// Full model triple (alpha, lambda, beta). Any finite drift is accepted.
struct ModelParams {
    double alpha;
    double lambda;
    double beta;

    ModelParams(double alpha_, double lambda_, double beta_)
        : alpha(alpha_), lambda(lambda_), beta(beta_) {
        if (!(alpha > 0.0 && alpha < 1.0))
            throw DomainError("ModelParams: alpha must lie in (0,1), got " +
                              std::to_string(alpha_));
        if (!(lambda >= 0.0))
            throw DomainError("ModelParams: lambda must be >= 0, got " +
                              std::to_string(lambda_));
        if (!std::isfinite(beta_))
            throw DomainError("ModelParams: beta must be finite");
    }

    TemperParams temper() const { return TemperParams(alpha, lambda); }
};

// Strictly increasing sequence of non-negative times, at least 2 points.
class TimeGrid {
public:
    explicit TimeGrid(std::vector<double> points) : points_(std::move(points)) {
        if (points_.size() < 2)
            throw GridError("TimeGrid: need at least 2 points");
        if (points_.front() < 0.0)
            throw GridError("TimeGrid: first point must be >= 0");
        for (std::size_t i = 1; i < points_.size(); ++i)
            if (!(points_[i] > points_[i - 1]))
                throw GridError("TimeGrid: points must be strictly increasing at index " +
                                std::to_string(i));
    }

    static TimeGrid uniform(double t_max, std::size_t n_points) {
        if (n_points < 2) throw GridError("TimeGrid::uniform: need >= 2 points");
        if (!(t_max > 0.0)) throw GridError("TimeGrid::uniform: t_max must be > 0");
        std::vector<double> p(n_points);
        for (std::size_t i = 0; i < n_points; ++i)
            p[i] = t_max * static_cast<double>(i) / static_cast<double>(n_points - 1);
        return TimeGrid(std::move(p));
    }

    // Zero followed by n_points log-spaced times in [t_lo, t_hi].
    static TimeGrid log_spaced(double t_lo, double t_hi, std::size_t n_points) {
        if (!(t_lo > 0.0 && t_hi > t_lo))
            throw GridError("TimeGrid::log_spaced: need 0 < t_lo < t_hi");
        std::vector<double> p;
        p.reserve(n_points + 1);
        p.push_back(0.0);
        const double la = std::log(t_lo), lb = std::log(t_hi);
        for (std::size_t i = 0; i < n_points; ++i)
            p.push_back(std::exp(la + (lb - la) * static_cast<double>(i) /
                                          static_cast<double>(n_points - 1)));
        return TimeGrid(std::move(p));
    }

    const std::vector<double>& points() const { return points_; }
    std::size_t size() const { return points_.size(); }
    double operator[](std::size_t i) const { return points_[i]; }
    double front() const { return points_.front(); }
    double back() const { return points_.back(); }
    double min_step() const {
        double m = points_[1] - points_[0];
        for (std::size_t i = 2; i < points_.size(); ++i)
            m = std::min(m, points_[i] - points_[i - 1]);
        return m;
    }

    bool operator==(const TimeGrid& o) const { return points_ == o.points_; }

private:
    std::vector<double> points_;
};

enum class PathKind { subordinator, inverse_subordinator, abm, nts, subdiffusive };

std::string to_string(PathKind k);

struct SamplePath {
    TimeGrid grid;
    std::vector<double> values;
    PathKind kind;

    SamplePath(TimeGrid g, std::vector<double> v, PathKind k)
        : grid(std::move(g)), values(std::move(v)), kind(k) {
        if (values.size() != grid.size())
            throw ShapeError("SamplePath: values length differs from grid length");
    }
};

struct TrajectoryEnsemble {
    TimeGrid shared_grid;
    std::vector<SamplePath> paths;
    std::uint64_t master_seed = 0;
};

}  // namespace subdiff
