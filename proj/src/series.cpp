#include "shear/series.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "shear/error.hpp"

namespace shear {

void SeriesConfig::validate() const {
    if (max_index < 8) throw DomainError("SeriesConfig.max_index must be >= 8");
    if (!(tail_tol > 0.0)) throw DomainError("SeriesConfig.tail_tol must be > 0");
}

void CompensatedSum::add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
        comp_ += (sum_ - t) + x;
    } else {
        comp_ += (x - t) + sum_;
    }
    sum_ = t;
}

namespace {

// Partial sum over the diagonal a + b = d restricted to the A x A square.
double diagonal_sum(const BlockFunction& f, int d, int max_index) {
    const int lo = std::max(1, d - max_index);
    const int hi = std::min(max_index, d - 1);
    const double weight = std::ldexp(1.0, -d);
    CompensatedSum acc;
    for (int a = lo; a <= hi; ++a) acc.add(f(a, d - a));
    return weight * acc.value();
}

double reduce_diagonals(const std::vector<double>& parts) {
    CompensatedSum acc;
    for (double x : parts) acc.add(x);
    return acc.value();
}

template <bool Parallel>
double block_sum_impl(const BlockFunction& f, int max_index) {
    const int n_diag = 2 * max_index - 1;  // d = 2 .. 2A
    std::vector<double> parts(static_cast<std::size_t>(n_diag), 0.0);
    if constexpr (Parallel) {
#pragma omp parallel for schedule(dynamic, 4)
        for (int i = 0; i < n_diag; ++i) parts[static_cast<std::size_t>(i)] = diagonal_sum(f, i + 2, max_index);
    } else {
        for (int i = 0; i < n_diag; ++i) parts[static_cast<std::size_t>(i)] = diagonal_sum(f, i + 2, max_index);
    }
    return reduce_diagonals(parts);
}

template <bool Parallel>
SeriesResult expect_block_impl(const BlockFunction& f, const SeriesConfig& cfg) {
    cfg.validate();
    SeriesResult r;
    const double first = block_sum_impl<Parallel>(f, cfg.max_index);
    if (!cfg.check_tail) {
        r.value = first;
        r.index_used = cfg.max_index;
        return r;
    }
    const double second = block_sum_impl<Parallel>(f, 2 * cfg.max_index);
    const double tail = std::abs(second - first);
    r.value = second;
    r.tail_estimate = tail;
    r.index_used = 2 * cfg.max_index;
    r.converged = std::isfinite(second) && tail <= cfg.tail_tol * std::max(1.0, std::abs(second));
    return r;
}

}  // namespace

double block_sum(const BlockFunction& f, int max_index) { return block_sum_impl<true>(f, max_index); }

double block_sum_serial(const BlockFunction& f, int max_index) {
    return block_sum_impl<false>(f, max_index);
}

SeriesResult expect_block(const BlockFunction& f, const SeriesConfig& cfg) {
    return expect_block_impl<true>(f, cfg);
}

SeriesResult expect_block_serial(const BlockFunction& f, const SeriesConfig& cfg) {
    return expect_block_impl<false>(f, cfg);
}

double require_converged(const SeriesResult& r, const char* what) {
    if (!r.converged) {
        std::ostringstream os;
        os << what << ": series did not converge (tail estimate "
           << (r.tail_estimate ? *r.tail_estimate : 0.0) << " at index " << r.index_used << ")";
        throw ConvergenceError(os.str());
    }
    return r.value;
}

double kappa() {
    // Terms 2^{-a} log a fall below 1e-30 well before a = 110.
    CompensatedSum acc;
    for (int a = 2; a <= 110; ++a) acc.add(std::ldexp(std::log(static_cast<double>(a)), -a));
    return 2.0 * acc.value();
}

std::uint64_t polylog_half_exact(int n) {
    if (n < 0 || n > kPolylogMaxOrder) {
        std::ostringstream os;
        os << "polylog_half order " << n << " outside [0, " << kPolylogMaxOrder << "]";
        throw DomainError(os.str());
    }
    // S(n) = sum_{a>=1} 2^{-a} a^n and T(k) = S(k) + [k == 0] (the a = 0 term).
    // Shifting a -> a + 1 gives S(n) = sum_{k<n} C(n,k) T(k) for n >= 1.
    std::uint64_t t[kPolylogMaxOrder + 1] = {};
    std::uint64_t s[kPolylogMaxOrder + 1] = {};
    s[0] = 1;
    t[0] = 2;
    for (int m = 1; m <= n; ++m) {
        std::uint64_t binom = 1;  // C(m, k)
        std::uint64_t acc = 0;
        for (int k = 0; k < m; ++k) {
            acc += binom * t[k];
            binom = binom * static_cast<std::uint64_t>(m - k) / static_cast<std::uint64_t>(k + 1);
        }
        s[m] = acc;
        t[m] = acc;
    }
    return s[n];
}

double polylog_half(int n) { return static_cast<double>(polylog_half_exact(n)); }

double expect_block_exact_poly(const PolyCoeffs& coeffs) {
    CompensatedSum acc;
    for (const auto& [exponents, c] : coeffs) {
        const auto [i, j] = exponents;
        acc.add(c * polylog_half(i) * polylog_half(j));
    }
    return acc.value();
}

}  // namespace shear
