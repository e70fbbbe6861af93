#pragma once

#include "homsample/mcmc.hpp"
#include "homsample/network.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace homsample {

struct ProfileGrid {
    std::vector<double> ts;
    std::vector<double> values;
};

// `points` equispaced levels on [0,1]; the default 101 gives 0, 0.01, ..., 1.
std::vector<double> uniform_grid(std::size_t points = 101);

// Trapezoidal integral of |p - q| over the common grid.
double profile_l1_distance(const ProfileGrid& p, const ProfileGrid& q);

// Running mean of prod A(x_i,x_j)^{A_H(i,j)}.
class ChdEstimator : public Observer {
public:
    ChdEstimator(const Motif& h, const Network& net);
    void observe(std::span<const std::size_t> x) override;
    void merge(const ChdEstimator& other);
    double value() const;
    std::size_t count() const { return count_; }
    // Per-step values, recorded only when enabled (for concentration reports).
    void keep_trajectory(bool keep) { keep_ = keep; }
    const std::vector<double>& trajectory() const { return trajectory_; }

private:
    Motif h_;
    const Network& net_;
    double sum_ = 0.0;
    std::size_t count_ = 0;
    bool keep_ = false;
    std::vector<double> trajectory_;
};

// Running mean, per grid level t, of 1(min over H-edges of A^{A_H} >= t).
class ProfileEstimator : public Observer {
public:
    ProfileEstimator(const Motif& h, const Network& net, std::vector<double> grid = uniform_grid());
    void observe(std::span<const std::size_t> x) override;
    void merge(const ProfileEstimator& other);
    ProfileGrid value() const;
    std::size_t count() const { return count_; }

private:
    Motif h_;
    const Network& net_;
    std::vector<double> grid_;
    std::vector<std::uint64_t> hits_;  // steps whose level reaches grid point g but not g+1
    std::size_t count_ = 0;
};

// MACC: mean of A(x_i,x_j) for i <= j off the motif's edges; motif edges pinned to 1.
class MaccEstimator : public Observer {
public:
    MaccEstimator(const Motif& f, const Network& net);
    void observe(std::span<const std::size_t> x) override;
    void merge(const MaccEstimator& other);
    Matrix value() const;
    std::size_t count() const { return count_; }

private:
    Motif f_;
    const Network& net_;
    Matrix sums_;
    std::size_t count_ = 0;
};

// Mass at (x(0), x(k-1)) weighted by prod A^{A_H}; normalized to entry sum 1.
class TransformEstimator : public Observer {
public:
    TransformEstimator(const Motif& h, const Network& net);
    void observe(std::span<const std::size_t> x) override;
    void merge(const TransformEstimator& other);
    Network value() const;
    std::size_t count() const { return count_; }

private:
    Motif h_;
    const Network& net_;
    std::map<std::pair<std::size_t, std::size_t>, double> mass_;
    std::size_t count_ = 0;
};

}  // namespace homsample
