#include "loggas/point_config.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "loggas/error.hpp"

namespace loggas {

PointConfiguration::PointConfiguration(std::vector<double> pts)
    : pts_(std::move(pts)) {}

PointConfiguration PointConfiguration::from_sorted(std::vector<double> points) {
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        if (!(points[i] < points[i + 1])) {
            throw DomainError("points must be strictly increasing");
        }
    }
    for (const double p : points) {
        if (!std::isfinite(p)) throw DomainError("points must be finite");
    }
    return PointConfiguration(std::move(points));
}

PointConfiguration PointConfiguration::from_unsorted(std::vector<double> points) {
    std::sort(points.begin(), points.end());
    return from_sorted(std::move(points));
}

double PointConfiguration::min_gap() const {
    if (pts_.size() < 2) return std::numeric_limits<double>::infinity();
    double g = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < pts_.size(); ++i) {
        g = std::min(g, pts_[i + 1] - pts_[i]);
    }
    return g;
}

}  // namespace loggas
