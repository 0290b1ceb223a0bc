#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "kldesign/error.hpp"

namespace kld {

/// Non-owning row-major view of n points in dimension d.
///
/// The estimators and discrepancies are defined for any finite point set,
/// including a single point, so they accept this view. Design converts to it.
class PointsView {
public:
    PointsView() = default;
    PointsView(std::span<const double> coords, std::size_t dim);

    std::size_t size() const noexcept { return dim_ == 0 ? 0 : coords_.size() / dim_; }
    std::size_t dim() const noexcept { return dim_; }
    std::span<const double> coords() const noexcept { return coords_; }

    std::span<const double> operator[](std::size_t i) const noexcept {
        return coords_.subspan(i * dim_, dim_);
    }

private:
    std::span<const double> coords_;
    std::size_t dim_ = 0;
};

/// n points in [0,1]^d, stored row-major.
///
/// Invariants: n >= 2, d >= 1, every coordinate in [0,1] (inclusive). Point
/// order is preserved by every operation. Coincident points are allowed and
/// reported by has_duplicates(); only estimators that need distinct points
/// reject them.
class Design {
public:
    /// Validates and takes ownership of row-major coordinates.
    Design(std::size_t dim, std::vector<double> coords);

    std::size_t size() const noexcept { return coords_.size() / dim_; }
    std::size_t dim() const noexcept { return dim_; }
    bool has_duplicates() const noexcept { return has_duplicates_; }

    std::span<const double> operator[](std::size_t i) const noexcept {
        return std::span<const double>(coords_).subspan(i * dim_, dim_);
    }
    const std::vector<double>& coords() const noexcept { return coords_; }

    PointsView view() const noexcept { return {coords_, dim_}; }
    operator PointsView() const noexcept { return view(); }

    /// Copy of this design with point i replaced; the replacement is validated.
    Design with_point(std::size_t i, std::span<const double> point) const;

    friend bool operator==(const Design&, const Design&) = default;

private:
    std::size_t dim_;
    std::vector<double> coords_;
    bool has_duplicates_ = false;
};

/// Builds a Design from a table of rows. Throws ValidationError on ragged
/// rows, n < 2, an empty row, or a coordinate outside [0,1] (NaN included).
Design validate_design(const std::vector<std::vector<double>>& rows);

/// Dense symmetric matrix of Euclidean distances with zero diagonal.
class DistanceMatrix {
public:
    explicit DistanceMatrix(std::size_t n) : n_(n), values_(n * n, 0.0) {}

    std::size_t size() const noexcept { return n_; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return values_[i * n_ + j]; }
    double& operator()(std::size_t i, std::size_t j) noexcept { return values_[i * n_ + j]; }

private:
    std::size_t n_;
    std::vector<double> values_;
};

double squared_distance(std::span<const double> a, std::span<const double> b) noexcept;
double distance(std::span<const double> a, std::span<const double> b) noexcept;

DistanceMatrix pairwise_distances(PointsView points);

/// Nearest-neighbor distance of every point; zero where a point is duplicated.
/// Requires at least two points.
std::vector<double> nn_distances(PointsView points);

/// Reads the design CSV format: header `x1,...,xd`, one row per point.
Design read_design_csv(std::istream& in);
Design read_design_csv_file(const std::string& path);

/// Writes the design CSV format with shortest round-trip float formatting.
void write_design_csv(std::ostream& out, const Design& design);
void write_design_csv_file(const std::string& path, const Design& design);

/// Shortest decimal string that parses back to exactly `value`.
std::string format_double(double value);

}  // namespace kld
