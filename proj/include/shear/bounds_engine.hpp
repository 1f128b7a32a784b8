#pragma once

// Lyapunov, GLE and entropy bounds assembled from the per-block bound functions.
//
// The series give bounds on 4*lambda (resp. 4*ell(q)) because a block has
// mean length E n = 4. Every value returned here is already divided by 4,
// i.e. on the per-matrix scale; multiply by kMeanBlockLength for the block
// scale.

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "shear/bound_functions.hpp"
#include "shear/linalg.hpp"
#include "shear/series.hpp"

namespace shear {

inline constexpr double kMeanBlockLength = 4.0;

enum class BoundFamily : std::uint8_t { Global, Improved };
enum class ExponentKind : std::uint8_t { Lyapunov, GLE, Entropy };

std::string_view to_string(BoundFamily f) noexcept;
std::string_view to_string(ExponentKind k) noexcept;
BoundFamily parse_family(std::string_view s);

struct Interval {
    double lower = 0.0;
    double upper = 0.0;
};

/// Bounds from a single norm. Either side may be unavailable (the improved
/// opposed family has an upper bound only for Linf).
struct NormBounds {
    NormKind norm = NormKind::L1;
    std::optional<double> lower;
    std::optional<double> upper;
};

/// Max of the available lowers and min of the available uppers.
struct Envelope {
    double lower = 0.0;
    double upper = 0.0;
    NormKind lower_norm = NormKind::L1;
    NormKind upper_norm = NormKind::L1;

    double gap() const noexcept { return upper - lower; }
};

struct BoundReport {
    ShearParams params;
    BoundFamily family = BoundFamily::Global;
    ExponentKind kind = ExponentKind::Lyapunov;
    double q = 0.0;  // meaningful for GLE only
    std::array<NormBounds, 3> per_norm{};
    Envelope envelope{};
    /// Largest tail estimate over all series that were summed.
    double max_tail = 0.0;

    const NormBounds& norm(NormKind k) const;
};

/// The equal-weight mixture of bound functions feeding one (norm, side)
/// entry. Empty when the family provides no bound for that entry.
std::vector<BoundFunctionId> bound_mixture(Regime regime, BoundFamily family, NormKind norm,
                                           Side side);

/// Lyapunov exponent bounds, sum 2^{-a-b} log(mean_m f_m(a,b)) / 4 per norm.
BoundReport lyapunov_bounds(const ShearParams& p, BoundFamily family,
                            const SeriesConfig& cfg = {});

/// Closed-form relaxation of the global Linf bounds (positive regime):
///   kappa + log(ab) <= 4 lambda <= kappa + log(sqrt(ab) + 1/sqrt(ab)) + log(1 + ab)/2.
Interval corollary_explicit_bounds(const ShearParams& p);

/// Which bound-function side feeds the lower and the upper GLE bound.
struct GleSides {
    Side lower_from;
    Side upper_from;
};

/// q >= 0: lower from the phi side, upper from psi; q < 0 swapped. The
/// same table is used for both regimes.
GleSides gle_side_assignment(Regime regime, double q) noexcept;

/// Generalised Lyapunov exponent bounds log(sum 2^{-a-b} mean_m f_m^q) / 4.
BoundReport gle_bounds(double q, const ShearParams& p, BoundFamily family,
                       const SeriesConfig& cfg = {});

/// Exact arguments of (1/4) log(.) for integer q in [1, 6], from expanding
/// (1 + a ab b)^q and (1 + a + a ab b)^q against the polylog table.
struct ExactArguments {
    double lower = 0.0;
    double upper = 0.0;
};
ExactArguments gle_exact_arguments(int q, const ShearParams& p);

/// Integer-only version for integral alpha*beta; throws DomainError on
/// overflow of 64-bit integers.
std::pair<std::uint64_t, std::uint64_t> gle_exact_arguments_integral(int q,
                                                                     std::int64_t alpha_beta);

/// (1/4) log of gle_exact_arguments.
Interval gle_exact_integer(int q, const ShearParams& p);

/// (log(1 + 4 ab) / 4, log(3 + 4 ab) / 4).
Interval entropy_bounds(const ShearParams& p);

struct GLECurve {
    std::vector<double> q_grid;
    std::vector<double> lower;
    std::vector<double> upper;
};

/// Uniform q grid from q_min to q_max (n_points >= 2), envelope bounds.
std::vector<double> uniform_grid(double q_min, double q_max, int n_points);
std::vector<BoundReport> gle_sweep(const std::vector<double>& q_grid, const ShearParams& p,
                                   BoundFamily family, const SeriesConfig& cfg = {});
GLECurve gle_curve(double q_min, double q_max, int n_points, const ShearParams& p,
                   BoundFamily family, const SeriesConfig& cfg = {});

}  // namespace shear
