#pragma once

// Expectations under the block distribution P(a, b) = 2^{-(a+b)}, a, b >= 1.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <utility>

namespace shear {

struct SeriesConfig {
    /// Square truncation a, b <= max_index for the first pass.
    int max_index = 64;
    /// Tail tolerance, absolute for |sum| <= 1 and relative above.
    double tail_tol = 1e-12;
    /// When false the sum is truncated at max_index with no doubling check.
    bool check_tail = true;

    void validate() const;
};

struct SeriesResult {
    double value = 0.0;
    /// |S(2A) - S(A)|; empty when the tail check is disabled.
    std::optional<double> tail_estimate;
    /// Largest index actually summed.
    int index_used = 0;
    bool converged = true;
};

using BlockFunction = std::function<double(int a, int b)>;

/// Neumaier-compensated accumulator.
class CompensatedSum {
public:
    void add(double x) noexcept;
    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// sum_{a,b=1}^{A} 2^{-a-b} f(a,b), accumulated diagonal by diagonal
/// (increasing a+b). Diagonals are evaluated in parallel; the reduction
/// order is fixed so the result is bit-identical to the serial path.
double block_sum(const BlockFunction& f, int max_index);
double block_sum_serial(const BlockFunction& f, int max_index);

/// Truncated expectation with a doubling tail check (A, then 2A).
SeriesResult expect_block(const BlockFunction& f, const SeriesConfig& cfg = {});
SeriesResult expect_block_serial(const BlockFunction& f, const SeriesConfig& cfg = {});

/// Throws ConvergenceError naming `what` if the tail check failed.
double require_converged(const SeriesResult& r, const char* what);

/// kappa = sum 2^{-a-b} log(ab) = 2 sum_a 2^{-a} log a  (~1.0157).
double kappa();

inline constexpr int kPolylogMaxOrder = 12;

/// sum_{a>=1} 2^{-a} a^n for 0 <= n <= 12 (1, 2, 6, 26, 150, 1082, 9366, ...).
std::uint64_t polylog_half_exact(int n);
double polylog_half(int n);

/// Polynomial sum_{ij} c_ij a^i b^j keyed by (i, j).
using PolyCoeffs = std::map<std::pair<int, int>, double>;

/// Exact expectation sum c_ij polylog_half(i) polylog_half(j).
double expect_block_exact_poly(const PolyCoeffs& coeffs);

}  // namespace shear
