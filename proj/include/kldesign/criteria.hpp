#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "kldesign/design.hpp"

namespace kld {

/// Uniformity and structure criteria of one design.
struct CriteriaReport {
    std::size_t n = 0;
    std::size_t d = 0;
    double cov = 0.0;
    double mindist = 0.0;
    double dl2 = 0.0;
    double dc2 = 0.0;
    double mst_mean = 0.0;
    double mst_std = 0.0;
    std::optional<std::string> label;

    friend bool operator==(const CriteriaReport&, const CriteriaReport&) = default;
};

/// Flat object: n, d, cov, mindist, dl2, dc2, mst_mean, mst_std, optional label.
void to_json(nlohmann::json& j, const CriteriaReport& report);
void from_json(const nlohmann::json& j, CriteriaReport& report);

/// Smallest pairwise distance (maximin criterion, larger is better).
double mindist(PointsView points);

/// Cover measure: coefficient of variation (population convention) of the
/// nearest-neighbor distances. Zero iff all of them are equal. Throws
/// DegenerateDesignError when every point coincides.
double coverage(PointsView points);

/// L2 star discrepancy via Warnock's closed form.
double dl2(PointsView points);

/// Centered L2 discrepancy via Hickernell's closed form.
double dc2(PointsView points);

struct MstEdge {
    std::size_t from;
    std::size_t to;
    double length;
};

/// Euclidean minimum spanning tree of the complete graph (dense Prim, O(n^2)).
/// Edges come out in the order they join the tree, growing from point 0;
/// equal lengths are resolved toward the lexicographically smallest index pair.
std::vector<MstEdge> minimum_spanning_tree(PointsView points);

/// The n-1 MST edge lengths in tree-growth order.
std::vector<double> mst_edges(PointsView points);

struct MstStats {
    double mean = 0.0;
    double std = 0.0;  // population standard deviation
};

MstStats mst_stats(const std::vector<double>& edges);

CriteriaReport evaluate(const Design& design, std::optional<std::string> label = std::nullopt);

}  // namespace kld
