#pragma once

#include <span>
#include <vector>

namespace loggas {

// Strictly increasing finite point set on the real line: zero locations,
// charge positions, eigenvalue lists. Strict ordering is a class invariant;
// both factories throw DomainError on duplicates (code "domain").
class PointConfiguration {
public:
    PointConfiguration() = default;

    // Validates strict increase of an already-sorted list.
    static PointConfiguration from_sorted(std::vector<double> points);

    // Sorts, then validates distinctness.
    static PointConfiguration from_unsorted(std::vector<double> points);

    std::span<const double> points() const noexcept { return pts_; }
    std::size_t size() const noexcept { return pts_.size(); }
    bool empty() const noexcept { return pts_.empty(); }
    double operator[](std::size_t i) const { return pts_[i]; }
    double front() const { return pts_.front(); }
    double back() const { return pts_.back(); }

    // Smallest gap between neighbours; +inf for fewer than two points.
    double min_gap() const;

private:
    explicit PointConfiguration(std::vector<double> pts);

    std::vector<double> pts_;
};

}  // namespace loggas
