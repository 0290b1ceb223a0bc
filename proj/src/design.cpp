#include "kldesign/design.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace kld {

namespace {

void check_coordinate(double value, std::size_t point, std::size_t axis) {
    if (!(value >= 0.0 && value <= 1.0)) {
        std::ostringstream msg;
        msg << "coordinate " << axis + 1 << " of point " << point + 1 << " is " << value
            << ", outside [0,1]";
        throw ValidationError(msg.str());
    }
}

bool any_duplicates(std::span<const double> coords, std::size_t dim) {
    const std::size_t n = coords.size() / dim;
    for (std::size_t i = 0; i < n; ++i) {
        const auto a = coords.subspan(i * dim, dim);
        for (std::size_t j = i + 1; j < n; ++j) {
            if (std::ranges::equal(a, coords.subspan(j * dim, dim))) return true;
        }
    }
    return false;
}

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        fields.push_back(trim(std::string_view(line).substr(start, comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return fields;
}

}  // namespace

PointsView::PointsView(std::span<const double> coords, std::size_t dim)
    : coords_(coords), dim_(dim) {
    if (dim == 0) throw ValidationError("point dimension must be at least 1");
    if (coords.size() % dim != 0) throw ValidationError("coordinate count is not a multiple of the dimension");
}

Design::Design(std::size_t dim, std::vector<double> coords) : dim_(dim), coords_(std::move(coords)) {
    if (dim_ == 0) throw ValidationError("design dimension must be at least 1");
    if (coords_.size() % dim_ != 0) throw ValidationError("coordinate count is not a multiple of the dimension");
    if (coords_.size() / dim_ < 2) throw ValidationError("a design needs at least 2 points");
    for (std::size_t k = 0; k < coords_.size(); ++k) check_coordinate(coords_[k], k / dim_, k % dim_);
    has_duplicates_ = any_duplicates(coords_, dim_);
}

Design Design::with_point(std::size_t i, std::span<const double> point) const {
    if (i >= size()) throw ValidationError("point index out of range");
    if (point.size() != dim_) throw ValidationError("replacement point has the wrong dimension");
    std::vector<double> coords = coords_;
    std::ranges::copy(point, coords.begin() + static_cast<std::ptrdiff_t>(i * dim_));
    return Design(dim_, std::move(coords));
}

Design validate_design(const std::vector<std::vector<double>>& rows) {
    if (rows.size() < 2) throw ValidationError("a design needs at least 2 points, got " + std::to_string(rows.size()));
    const std::size_t dim = rows.front().size();
    if (dim == 0) throw ValidationError("design rows must have at least one coordinate");
    std::vector<double> coords;
    coords.reserve(rows.size() * dim);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != dim) {
            std::ostringstream msg;
            msg << "row " << i + 1 << " has " << rows[i].size() << " coordinates, expected " << dim;
            throw ValidationError(msg.str());
        }
        coords.insert(coords.end(), rows[i].begin(), rows[i].end());
    }
    return Design(dim, std::move(coords));
}

double squared_distance(std::span<const double> a, std::span<const double> b) noexcept {
    double sum = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double diff = a[k] - b[k];
        sum += diff * diff;
    }
    return sum;
}

double distance(std::span<const double> a, std::span<const double> b) noexcept {
    return std::sqrt(squared_distance(a, b));
}

DistanceMatrix pairwise_distances(PointsView points) {
    const std::size_t n = points.size();
    DistanceMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double dist = distance(points[i], points[j]);
            out(i, j) = dist;
            out(j, i) = dist;
        }
    }
    return out;
}

std::vector<double> nn_distances(PointsView points) {
    const std::size_t n = points.size();
    if (n < 2) throw ValidationError("nearest-neighbor distances need at least 2 points");
    std::vector<double> best(n, std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double sq = squared_distance(points[i], points[j]);
            best[i] = std::min(best[i], sq);
            best[j] = std::min(best[j], sq);
        }
    }
    for (double& v : best) v = std::sqrt(v);
    return best;
}

Design read_design_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        ++line_no;
        if (!trim(line).empty()) {
            header = split_fields(line);
            break;
        }
    }
    if (header.empty()) throw CsvParseError("design CSV is empty", 0, 0);
    if (line_no == 1 && header.front().starts_with("\xEF\xBB\xBF")) header.front().erase(0, 3);
    for (std::size_t k = 0; k < header.size(); ++k) {
        if (header[k] != "x" + std::to_string(k + 1)) {
            throw CsvParseError("line " + std::to_string(line_no) + ", column " + std::to_string(k + 1) +
                                    ": expected header field 'x" + std::to_string(k + 1) + "', got '" +
                                    header[k] + "'",
                                line_no, k + 1);
        }
    }
    const std::size_t dim = header.size();

    std::vector<double> coords;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto fields = split_fields(line);
        if (fields.size() != dim) {
            throw CsvParseError("line " + std::to_string(line_no) + ": expected " + std::to_string(dim) +
                                    " fields, got " + std::to_string(fields.size()),
                                line_no, 0);
        }
        for (std::size_t k = 0; k < dim; ++k) {
            const std::string& field = fields[k];
            double value = 0.0;
            const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
            if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
                throw CsvParseError("line " + std::to_string(line_no) + ", column " + std::to_string(k + 1) +
                                        ": cannot parse '" + field + "' as a number",
                                    line_no, k + 1);
            }
            if (!(value >= 0.0 && value <= 1.0)) {
                throw CsvParseError("line " + std::to_string(line_no) + ", column " + std::to_string(k + 1) +
                                        ": value " + field + " outside [0,1]",
                                    line_no, k + 1);
            }
            coords.push_back(value);
        }
    }
    if (coords.size() / dim < 2) {
        throw ValidationError("a design needs at least 2 points, got " + std::to_string(coords.size() / dim));
    }
    return Design(dim, std::move(coords));
}

Design read_design_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "' for reading");
    return read_design_csv(in);
}

std::string format_double(double value) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

void write_design_csv(std::ostream& out, const Design& design) {
    for (std::size_t k = 0; k < design.dim(); ++k) out << (k ? ",x" : "x") << k + 1;
    out << '\n';
    for (std::size_t i = 0; i < design.size(); ++i) {
        const auto p = design[i];
        for (std::size_t k = 0; k < p.size(); ++k) out << (k ? "," : "") << format_double(p[k]);
        out << '\n';
    }
}

void write_design_csv_file(const std::string& path, const Design& design) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    write_design_csv(out, design);
    if (!out) throw Error("write to '" + path + "' failed");
}

}  // namespace kld
