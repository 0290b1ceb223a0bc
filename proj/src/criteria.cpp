#include "kldesign/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace kld {

void to_json(nlohmann::json& j, const CriteriaReport& report) {
    j = nlohmann::json{{"n", report.n},
                       {"d", report.d},
                       {"cov", report.cov},
                       {"mindist", report.mindist},
                       {"dl2", report.dl2},
                       {"dc2", report.dc2},
                       {"mst_mean", report.mst_mean},
                       {"mst_std", report.mst_std}};
    if (report.label) j["label"] = *report.label;
}

void from_json(const nlohmann::json& j, CriteriaReport& report) {
    j.at("n").get_to(report.n);
    j.at("d").get_to(report.d);
    j.at("cov").get_to(report.cov);
    j.at("mindist").get_to(report.mindist);
    j.at("dl2").get_to(report.dl2);
    j.at("dc2").get_to(report.dc2);
    j.at("mst_mean").get_to(report.mst_mean);
    j.at("mst_std").get_to(report.mst_std);
    if (auto it = j.find("label"); it != j.end() && !it->is_null()) {
        report.label = it->get<std::string>();
    } else {
        report.label.reset();
    }
}

double mindist(PointsView points) {
    if (points.size() < 2) throw ValidationError("mindist needs at least 2 points");
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            best = std::min(best, squared_distance(points[i], points[j]));
        }
    }
    return std::sqrt(best);
}

double coverage(PointsView points) {
    const auto gamma = nn_distances(points);
    const double n = static_cast<double>(gamma.size());
    double mean = 0.0;
    for (double g : gamma) mean += g;
    mean /= n;
    if (mean == 0.0) throw DegenerateDesignError("cover measure is undefined when all points coincide");
    double var = 0.0;
    for (double g : gamma) var += (g - mean) * (g - mean);
    return std::sqrt(var / n) / mean;
}

double dl2(PointsView points) {
    const std::size_t n = points.size();
    const std::size_t d = points.dim();
    if (n == 0) throw ValidationError("discrepancy needs at least one point");

    double single = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double prod = 1.0;
        for (double x : points[i]) prod *= 1.0 - x * x;
        single += prod;
    }
    double pair = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto a = points[i];
        for (std::size_t j = 0; j < n; ++j) {
            const auto b = points[j];
            double prod = 1.0;
            for (std::size_t k = 0; k < d; ++k) prod *= 1.0 - std::max(a[k], b[k]);
            pair += prod;
        }
    }
    const double nn = static_cast<double>(n);
    const double dd = static_cast<double>(d);
    const double sq = std::pow(3.0, -dd) - std::pow(2.0, 1.0 - dd) / nn * single + pair / (nn * nn);
    return std::sqrt(std::max(sq, 0.0));
}

double dc2(PointsView points) {
    const std::size_t n = points.size();
    const std::size_t d = points.dim();
    if (n == 0) throw ValidationError("discrepancy needs at least one point");

    double single = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double prod = 1.0;
        for (double x : points[i]) {
            const double c = std::abs(x - 0.5);
            prod *= 1.0 + 0.5 * c - 0.5 * c * c;
        }
        single += prod;
    }
    double pair = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto a = points[i];
        for (std::size_t j = 0; j < n; ++j) {
            const auto b = points[j];
            double prod = 1.0;
            for (std::size_t k = 0; k < d; ++k) {
                prod *= 1.0 + 0.5 * std::abs(a[k] - 0.5) + 0.5 * std::abs(b[k] - 0.5) - 0.5 * std::abs(a[k] - b[k]);
            }
            pair += prod;
        }
    }
    const double nn = static_cast<double>(n);
    const double sq = std::pow(13.0 / 12.0, static_cast<double>(d)) - 2.0 / nn * single + pair / (nn * nn);
    return std::sqrt(std::max(sq, 0.0));
}

std::vector<MstEdge> minimum_spanning_tree(PointsView points) {
    const std::size_t n = points.size();
    std::vector<MstEdge> edges;
    if (n < 2) return edges;
    edges.reserve(n - 1);

    const auto pair_of = [](std::size_t a, std::size_t b) {
        return a < b ? std::pair{a, b} : std::pair{b, a};
    };

    std::vector<bool> in_tree(n, false);
    std::vector<double> key(n, std::numeric_limits<double>::infinity());
    std::vector<std::size_t> parent(n, 0);
    in_tree[0] = true;
    for (std::size_t v = 1; v < n; ++v) key[v] = distance(points[0], points[v]);

    for (std::size_t step = 1; step < n; ++step) {
        std::size_t next = n;
        for (std::size_t v = 0; v < n; ++v) {
            if (in_tree[v]) continue;
            if (next == n || key[v] < key[next] ||
                (key[v] == key[next] && pair_of(parent[v], v) < pair_of(parent[next], next))) {
                next = v;
            }
        }
        in_tree[next] = true;
        edges.push_back({parent[next], next, key[next]});
        for (std::size_t v = 0; v < n; ++v) {
            if (in_tree[v]) continue;
            const double dist = distance(points[next], points[v]);
            if (dist < key[v] || (dist == key[v] && pair_of(next, v) < pair_of(parent[v], v))) {
                key[v] = dist;
                parent[v] = next;
            }
        }
    }
    return edges;
}

std::vector<double> mst_edges(PointsView points) {
    std::vector<double> lengths;
    for (const auto& e : minimum_spanning_tree(points)) lengths.push_back(e.length);
    return lengths;
}

MstStats mst_stats(const std::vector<double>& edges) {
    if (edges.empty()) throw ValidationError("MST statistics need at least one edge");
    const double m = static_cast<double>(edges.size());
    double mean = 0.0;
    for (double e : edges) mean += e;
    mean /= m;
    double var = 0.0;
    for (double e : edges) var += (e - mean) * (e - mean);
    return {mean, std::sqrt(var / m)};
}

CriteriaReport evaluate(const Design& design, std::optional<std::string> label) {
    const PointsView points = design.view();
    const auto mst = mst_stats(mst_edges(points));
    CriteriaReport report;
    report.n = design.size();
    report.d = design.dim();
    report.cov = coverage(points);
    report.mindist = mindist(points);
    report.dl2 = dl2(points);
    report.dc2 = dc2(points);
    report.mst_mean = mst.mean;
    report.mst_std = mst.std;
    report.label = std::move(label);
    return report;
}

}  // namespace kld
