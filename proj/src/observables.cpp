#include "homsample/observables.hpp"

#include "homsample/errors.hpp"
#include "homsample/exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace homsample {

std::vector<double> uniform_grid(std::size_t points) {
    if (points < 2) throw ConfigError("a profile grid needs at least 2 points");
    std::vector<double> grid(points);
    for (std::size_t g = 0; g < points; ++g)
        grid[g] = static_cast<double>(g) / static_cast<double>(points - 1);
    return grid;
}

double profile_l1_distance(const ProfileGrid& p, const ProfileGrid& q) {
    if (p.ts != q.ts || p.values.size() != p.ts.size() || q.values.size() != q.ts.size())
        throw ConfigError("profiles must share the same grid");
    double total = 0.0;
    for (std::size_t g = 0; g + 1 < p.ts.size(); ++g) {
        const double left = std::abs(p.values[g] - q.values[g]);
        const double right = std::abs(p.values[g + 1] - q.values[g + 1]);
        total += 0.5 * (left + right) * (p.ts[g + 1] - p.ts[g]);
    }
    return total;
}

ChdEstimator::ChdEstimator(const Motif& h, const Network& net) : h_(h), net_(net) {}

void ChdEstimator::observe(std::span<const std::size_t> x) {
    const double v = edge_product(h_, net_, x);
    sum_ += v;
    ++count_;
    if (keep_) trajectory_.push_back(v);
}

void ChdEstimator::merge(const ChdEstimator& other) {
    sum_ += other.sum_;
    count_ += other.count_;
    trajectory_.insert(trajectory_.end(), other.trajectory_.begin(), other.trajectory_.end());
}

double ChdEstimator::value() const {
    if (count_ == 0) throw ConfigError("estimator has no observations");
    return sum_ / static_cast<double>(count_);
}

ProfileEstimator::ProfileEstimator(const Motif& h, const Network& net, std::vector<double> grid)
    : h_(h), net_(net), grid_(std::move(grid)), hits_(grid_.size(), 0) {
    if (grid_.empty() || !std::is_sorted(grid_.begin(), grid_.end()))
        throw ConfigError("profile grid must be nonempty and sorted");
}

void ProfileEstimator::observe(std::span<const std::size_t> x) {
    ++count_;
    double level = std::numeric_limits<double>::infinity();
    const std::size_t k = h_.size();
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            const double e = h_.weight(i, j);
            if (e == 0.0) continue;
            const double a = net_.weight(x[i], x[j]);
            level = std::min(level, e == 1.0 ? a : std::pow(a, e));
        }
    const auto reached = static_cast<std::size_t>(std::upper_bound(grid_.begin(), grid_.end(), level) - grid_.begin());
    if (reached > 0) ++hits_[reached - 1];
}

void ProfileEstimator::merge(const ProfileEstimator& other) {
    if (other.grid_ != grid_) throw ConfigError("profiles must share the same grid");
    for (std::size_t g = 0; g < hits_.size(); ++g) hits_[g] += other.hits_[g];
    count_ += other.count_;
}

ProfileGrid ProfileEstimator::value() const {
    if (count_ == 0) throw ConfigError("estimator has no observations");
    ProfileGrid result{grid_, std::vector<double>(grid_.size(), 0.0)};
    std::uint64_t running = 0;
    for (std::size_t g = grid_.size(); g-- > 0;) {
        running += hits_[g];
        result.values[g] = static_cast<double>(running) / static_cast<double>(count_);
    }
    return result;
}

MaccEstimator::MaccEstimator(const Motif& f, const Network& net)
    : f_(f), net_(net),
      sums_(Matrix::Zero(static_cast<Eigen::Index>(f.size()), static_cast<Eigen::Index>(f.size()))) {}

void MaccEstimator::observe(std::span<const std::size_t> x) {
    ++count_;
    const std::size_t k = f_.size();
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i; j < k; ++j)
            if (f_.weight(i, j) == 0.0)
                sums_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) += net_.weight(x[i], x[j]);
}

void MaccEstimator::merge(const MaccEstimator& other) {
    sums_ += other.sums_;
    count_ += other.count_;
}

Matrix MaccEstimator::value() const {
    if (count_ == 0) throw ConfigError("estimator has no observations");
    const Eigen::Index k = sums_.rows();
    Matrix m(k, k);
    for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = i; j < k; ++j) {
            const double v = f_.weights()(i, j) > 0.0 ? 1.0 : sums_(i, j) / static_cast<double>(count_);
            m(i, j) = v;
            m(j, i) = v;
        }
    return m;
}

TransformEstimator::TransformEstimator(const Motif& h, const Network& net) : h_(h), net_(net) {
    if (h.size() < 2) throw ConfigError("motif transform needs k >= 2");
}

void TransformEstimator::observe(std::span<const std::size_t> x) {
    ++count_;
    const double w = edge_product(h_, net_, x);
    if (w > 0.0) mass_[{x[0], x[h_.size() - 1]}] += w;
}

void TransformEstimator::merge(const TransformEstimator& other) {
    for (const auto& [key, w] : other.mass_) mass_[key] += w;
    count_ += other.count_;
}

Network TransformEstimator::value() const {
    double total = 0.0;
    for (const auto& entry : mass_) total += entry.second;
    if (!(total > 0.0)) throw NumericalError("transform estimator accumulated no mass");
    std::vector<WeightedEdge> edges;
    edges.reserve(mass_.size());
    for (const auto& [key, w] : mass_) edges.push_back({key.first, key.second, w / total});
    return Network(net_.size(), edges, net_.alpha());
}

}  // namespace homsample
