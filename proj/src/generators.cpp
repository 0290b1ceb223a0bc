#include "kldesign/generators.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "kldesign/rng.hpp"

namespace kld {

namespace {

constexpr std::array<std::pair<Family, std::string_view>, 5> kFamilyNames{{
    {Family::RANDOM, "random"},
    {Family::LHS, "lhs"},
    {Family::HALTON, "halton"},
    {Family::HAMMERSLEY, "hammersley"},
    {Family::SOBOL, "sobol"},
}};

void check_size(std::size_t n, std::size_t d) {
    if (n < 2) throw ValidationError("design size n must be at least 2, got " + std::to_string(n));
    if (d < 1) throw ValidationError("dimension d must be at least 1");
}

// Primitive polynomial (degree, interior coefficients) and initial direction
// integers m_1..m_degree for Sobol dimensions 2..10 (Joe & Kuo, new-joe-kuo-6.21201).
struct SobolPoly {
    unsigned degree;
    unsigned coeffs;
    std::array<std::uint32_t, 5> m;
};

constexpr std::array<SobolPoly, kSobolMaxDim - 1> kSobolPolys{{
    {1, 0, {1}},
    {2, 1, {1, 3}},
    {3, 1, {1, 3, 1}},
    {3, 2, {1, 1, 1}},
    {4, 1, {1, 1, 3, 3}},
    {4, 4, {1, 3, 5, 13}},
    {5, 2, {1, 1, 5, 5, 17}},
    {5, 4, {1, 1, 5, 5, 5}},
    {5, 7, {1, 1, 7, 11, 19}},
}};

constexpr unsigned kSobolBits = 32;

// Direction integers v_j scaled by 2^32, j = 0..31, for one dimension.
std::array<std::uint32_t, kSobolBits> sobol_directions(std::size_t dim_index) {
    std::array<std::uint32_t, kSobolBits> v{};
    if (dim_index == 0) {
        for (unsigned j = 0; j < kSobolBits; ++j) v[j] = std::uint32_t{1} << (kSobolBits - 1 - j);
        return v;
    }
    const SobolPoly& poly = kSobolPolys[dim_index - 1];
    const unsigned s = poly.degree;
    for (unsigned j = 0; j < s && j < kSobolBits; ++j) v[j] = poly.m[j] << (kSobolBits - 1 - j);
    for (unsigned j = s; j < kSobolBits; ++j) {
        v[j] = v[j - s] ^ (v[j - s] >> s);
        for (unsigned k = 1; k < s; ++k) {
            if ((poly.coeffs >> (s - 1 - k)) & 1u) v[j] ^= v[j - k];
        }
    }
    return v;
}

}  // namespace

std::string_view to_string(Family family) noexcept {
    for (const auto& [f, name] : kFamilyNames) {
        if (f == family) return name;
    }
    return "unknown";
}

std::optional<Family> parse_family(std::string_view name) noexcept {
    for (const auto& [f, known] : kFamilyNames) {
        if (known == name) return f;
    }
    return std::nullopt;
}

void GeneratorSpec::validate() const {
    check_size(n, d);
    if (family == Family::SOBOL && d > kSobolMaxDim) {
        throw UnsupportedDimensionError("sobol supports d <= " + std::to_string(kSobolMaxDim) + ", got d=" +
                                        std::to_string(d));
    }
}

Design generate(const GeneratorSpec& spec) {
    spec.validate();
    switch (spec.family) {
        case Family::RANDOM: return random_design(spec.n, spec.d, spec.seed);
        case Family::LHS: return lhs_design(spec.n, spec.d, spec.seed);
        case Family::HALTON: return halton_design(spec.n, spec.d);
        case Family::HAMMERSLEY: return hammersley_design(spec.n, spec.d);
        case Family::SOBOL: return sobol_design(spec.n, spec.d);
    }
    throw ValidationError("unknown generator family");
}

Design random_design(std::size_t n, std::size_t d, std::uint64_t seed) {
    check_size(n, d);
    Rng rng(seed);
    std::vector<double> coords(n * d);
    for (double& x : coords) x = uniform01(rng);
    return Design(d, std::move(coords));
}

std::size_t lhs_stratum(double x, std::size_t n) noexcept {
    const double scaled = std::floor(x * static_cast<double>(n));
    if (scaled <= 0.0) return 0;
    return std::min(static_cast<std::size_t>(scaled), n - 1);
}

Design lhs_design(std::size_t n, std::size_t d, std::uint64_t seed) {
    check_size(n, d);
    Rng rng(seed);
    std::vector<double> coords(n * d);
    std::vector<std::size_t> perm(n);
    const double width = static_cast<double>(n);
    for (std::size_t k = 0; k < d; ++k) {
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        for (std::size_t i = n - 1; i > 0; --i) {
            std::swap(perm[i], perm[uniform_index(rng, i + 1)]);
        }
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t stratum = perm[i];
            double x = (static_cast<double>(stratum) + uniform01(rng)) / width;
            // Rounding can land x on a stratum edge; step back inside.
            while (lhs_stratum(x, n) > stratum) x = std::nextafter(x, 0.0);
            while (lhs_stratum(x, n) < stratum) x = std::nextafter(x, 1.0);
            coords[i * d + k] = x;
        }
    }
    return Design(d, std::move(coords));
}

double van_der_corput(std::uint64_t index, std::uint64_t base) {
    if (base < 2) throw ValidationError("radical inverse base must be at least 2");
    double result = 0.0;
    double scale = 1.0 / static_cast<double>(base);
    const double step = scale;
    while (index > 0) {
        result += static_cast<double>(index % base) * scale;
        index /= base;
        scale *= step;
    }
    return result;
}

std::uint64_t nth_prime(std::size_t k) {
    if (k == 0) throw ValidationError("prime index starts at 1");
    std::size_t found = 0;
    for (std::uint64_t candidate = 2;; ++candidate) {
        bool prime = true;
        for (std::uint64_t p = 2; p * p <= candidate; ++p) {
            if (candidate % p == 0) {
                prime = false;
                break;
            }
        }
        if (prime && ++found == k) return candidate;
    }
}

Design halton_design(std::size_t n, std::size_t d) {
    check_size(n, d);
    std::vector<std::uint64_t> bases(d);
    for (std::size_t k = 0; k < d; ++k) bases[k] = nth_prime(k + 1);
    std::vector<double> coords(n * d);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < d; ++k) coords[i * d + k] = van_der_corput(i + 1, bases[k]);
    }
    return Design(d, std::move(coords));
}

Design hammersley_design(std::size_t n, std::size_t d) {
    check_size(n, d);
    std::vector<std::uint64_t> bases(d - 1);
    for (std::size_t k = 0; k + 1 < d; ++k) bases[k] = nth_prime(k + 1);
    std::vector<double> coords(n * d);
    for (std::size_t i = 0; i < n; ++i) {
        coords[i * d] = (static_cast<double>(i + 1) - 0.5) / static_cast<double>(n);
        for (std::size_t k = 1; k < d; ++k) coords[i * d + k] = van_der_corput(i + 1, bases[k - 1]);
    }
    return Design(d, std::move(coords));
}

Design sobol_design(std::size_t n, std::size_t d) {
    GeneratorSpec{Family::SOBOL, n, d, 0}.validate();
    if (n >= (std::size_t{1} << kSobolBits)) throw ValidationError("sobol supports n < 2^32");

    std::vector<std::array<std::uint32_t, kSobolBits>> directions;
    for (std::size_t k = 0; k < d; ++k) directions.push_back(sobol_directions(k));

    std::vector<std::uint32_t> state(d, 0);
    std::vector<double> coords(n * d);
    for (std::size_t i = 1; i <= n; ++i) {
        // Gray-code step: flip the direction of the lowest zero bit of i-1.
        const auto bit = static_cast<unsigned>(std::countr_one(i - 1));
        for (std::size_t k = 0; k < d; ++k) {
            state[k] ^= directions[k][bit];
            coords[(i - 1) * d + k] = static_cast<double>(state[k]) * 0x1.0p-32;
        }
    }
    return Design(d, std::move(coords));
}

}  // namespace kld
