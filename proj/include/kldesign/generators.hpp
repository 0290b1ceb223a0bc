#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "kldesign/design.hpp"

namespace kld {

enum class Family { RANDOM, LHS, HALTON, HAMMERSLEY, SOBOL };

/// Lowercase CLI name: random, lhs, halton, hammersley, sobol.
std::string_view to_string(Family family) noexcept;
std::optional<Family> parse_family(std::string_view name) noexcept;

inline constexpr std::size_t kSobolMaxDim = 10;

struct GeneratorSpec {
    Family family = Family::RANDOM;
    std::size_t n = 0;
    std::size_t d = 0;
    std::uint64_t seed = 0;  // ignored by HALTON, HAMMERSLEY, SOBOL

    /// Throws ValidationError (UnsupportedDimensionError for SOBOL with d > 10).
    void validate() const;
};

Design generate(const GeneratorSpec& spec);

/// n i.i.d. uniform points, coordinates drawn row-major from Rng(seed).
Design random_design(std::size_t n, std::size_t d, std::uint64_t seed);

/// Latin hypercube: in every column, point i lies in stratum perm_k(i) with a
/// uniform offset inside it; one independent permutation per column.
Design lhs_design(std::size_t n, std::size_t d, std::uint64_t seed);

/// Index of the stratum [s/n, (s+1)/n) containing x, clamped to n-1.
std::size_t lhs_stratum(double x, std::size_t n) noexcept;

/// Radical inverse of index in the given base. Requires base >= 2.
double van_der_corput(std::uint64_t index, std::uint64_t base);

/// The k-th prime, k >= 1 (2, 3, 5, ...).
std::uint64_t nth_prime(std::size_t k);

/// Point i (i = 1..n) has coordinate k equal to the radical inverse of i in
/// the k-th prime base.
Design halton_design(std::size_t n, std::size_t d);

/// First coordinate (i - 0.5)/n, the rest Halton in the first d-1 primes.
Design hammersley_design(std::size_t n, std::size_t d);

/// Points 1..n of the Gray-code Sobol sequence (the all-zero point 0 is
/// skipped), Joe-Kuo direction numbers, d <= 10.
Design sobol_design(std::size_t n, std::size_t d);

}  // namespace kld
