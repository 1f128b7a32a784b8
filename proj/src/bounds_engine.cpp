#include "shear/bounds_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "shear/error.hpp"

namespace shear {

std::string_view to_string(BoundFamily f) noexcept {
    return f == BoundFamily::Global ? "global" : "improved";
}

std::string_view to_string(ExponentKind k) noexcept {
    switch (k) {
        case ExponentKind::Lyapunov: return "lyapunov";
        case ExponentKind::GLE: return "gle";
        case ExponentKind::Entropy: return "entropy";
    }
    return "?";
}

BoundFamily parse_family(std::string_view s) {
    if (s == "global") return BoundFamily::Global;
    if (s == "improved") return BoundFamily::Improved;
    throw DomainError("unknown family '" + std::string(s) + "' (expected global or improved)");
}

const NormBounds& BoundReport::norm(NormKind k) const {
    for (const auto& nb : per_norm) {
        if (nb.norm == k) return nb;
    }
    throw InternalError("norm missing from report");
}

std::vector<BoundFunctionId> bound_mixture(Regime regime, BoundFamily family, NormKind norm,
                                           Side side) {
    std::vector<BoundFunctionId> out;
    const bool positive = regime == Regime::PositivePair;
    if (family == BoundFamily::Global) {
        out.push_back({positive ? FunctionFamily::Global : FunctionFamily::GlobalNeg, norm, side});
        return out;
    }
    if (positive) {
        // P(a<b) = P(a=b) = P(a>b) = 1/3 for the previous block.
        for (int m = 1; m <= 3; ++m) out.push_back({FunctionFamily::Improved, norm, side, m});
        return out;
    }
    // Opposed: (min(a,2), min(b,2)) of the previous block, each with probability 1/4.
    if (side == Side::Lower) {
        for (int ma = 1; ma <= 2; ++ma) {
            for (int mb = 1; mb <= 2; ++mb) {
                out.push_back({FunctionFamily::ImprovedNeg, norm, side, ma, mb});
            }
        }
    } else if (norm == NormKind::Linf) {
        for (int m = 1; m <= 4; ++m) out.push_back({FunctionFamily::ImprovedNeg, norm, side, m});
    }
    return out;
}

namespace {

Envelope make_envelope(const std::array<NormBounds, 3>& per_norm) {
    Envelope env;
    env.lower = -std::numeric_limits<double>::infinity();
    env.upper = std::numeric_limits<double>::infinity();
    for (const auto& nb : per_norm) {
        if (nb.lower && *nb.lower > env.lower) {
            env.lower = *nb.lower;
            env.lower_norm = nb.norm;
        }
        if (nb.upper && *nb.upper < env.upper) {
            env.upper = *nb.upper;
            env.upper_norm = nb.norm;
        }
    }
    if (!std::isfinite(env.lower) || !std::isfinite(env.upper)) {
        throw InternalError("envelope needs at least one lower and one upper bound");
    }
    return env;
}

// One-sided Lyapunov bound from an equal-weight mixture of bound functions.
double lyapunov_side(const BoundCatalog& cat, const std::vector<BoundFunctionId>& mix,
                     const SeriesConfig& cfg, double& max_tail) {
    const double w = 1.0 / static_cast<double>(mix.size());
    auto f = [&](int a, int b) {
        double acc = 0.0;
        for (const auto& id : mix) acc += cat.eval(id, a, b);
        return std::log(w * acc);
    };
    const SeriesResult r = expect_block(f, cfg);
    if (r.tail_estimate) max_tail = std::max(max_tail, *r.tail_estimate);
    return require_converged(r, "lyapunov_bounds") / kMeanBlockLength;
}

double gle_side(const BoundCatalog& cat, const std::vector<BoundFunctionId>& mix, double q,
                const SeriesConfig& cfg, double& max_tail) {
    const double w = 1.0 / static_cast<double>(mix.size());
    auto f = [&](int a, int b) {
        double acc = 0.0;
        for (const auto& id : mix) acc += std::exp(q * std::log(cat.eval(id, a, b)));
        return w * acc;
    };
    const SeriesResult r = expect_block(f, cfg);
    if (r.tail_estimate) max_tail = std::max(max_tail, *r.tail_estimate);
    return std::log(require_converged(r, "gle_bounds")) / kMeanBlockLength;
}

void require_positive(const ShearParams& p, const char* what) {
    if (p.regime() != Regime::PositivePair) {
        throw DomainError(std::string(what) + " requires alpha >= 1 and beta >= 1");
    }
}

}  // namespace

BoundReport lyapunov_bounds(const ShearParams& p, BoundFamily family, const SeriesConfig& cfg) {
    const BoundCatalog cat(p);
    BoundReport rep{p, family, ExponentKind::Lyapunov};
    for (std::size_t i = 0; i < kAllNorms.size(); ++i) {
        const NormKind k = kAllNorms[i];
        NormBounds nb{k, std::nullopt, std::nullopt};
        const auto lo = bound_mixture(p.regime(), family, k, Side::Lower);
        const auto hi = bound_mixture(p.regime(), family, k, Side::Upper);
        if (!lo.empty()) nb.lower = lyapunov_side(cat, lo, cfg, rep.max_tail);
        if (!hi.empty()) nb.upper = lyapunov_side(cat, hi, cfg, rep.max_tail);
        rep.per_norm[i] = nb;
    }
    rep.envelope = make_envelope(rep.per_norm);
    return rep;
}

Interval corollary_explicit_bounds(const ShearParams& p) {
    require_positive(p, "corollary_explicit_bounds");
    const double k = kappa();
    const double ab = p.product();
    const double r = std::sqrt(ab);
    return {(k + std::log(ab)) / kMeanBlockLength,
            (k + std::log(r + 1.0 / r) + 0.5 * std::log1p(ab)) / kMeanBlockLength};
}

GleSides gle_side_assignment(Regime /*regime*/, double q) noexcept {
    // All bound functions exceed 1, so x -> x^q is increasing for q >= 0 and
    // decreasing for q < 0.
    if (q >= 0.0) return {Side::Lower, Side::Upper};
    return {Side::Upper, Side::Lower};
}

BoundReport gle_bounds(double q, const ShearParams& p, BoundFamily family, const SeriesConfig& cfg) {
    if (!std::isfinite(q)) throw DomainError("q must be finite");
    BoundReport rep{p, family, ExponentKind::GLE, q};
    const GleSides sides = gle_side_assignment(p.regime(), q);
    const BoundCatalog cat(p);
    for (std::size_t i = 0; i < kAllNorms.size(); ++i) {
        const NormKind k = kAllNorms[i];
        NormBounds nb{k, std::nullopt, std::nullopt};
        const auto lo = bound_mixture(p.regime(), family, k, sides.lower_from);
        const auto hi = bound_mixture(p.regime(), family, k, sides.upper_from);
        if (q == 0.0) {
            // sum 2^{-a-b} = 1 exactly.
            if (!lo.empty()) nb.lower = 0.0;
            if (!hi.empty()) nb.upper = 0.0;
        } else {
            if (!lo.empty()) nb.lower = gle_side(cat, lo, q, cfg, rep.max_tail);
            if (!hi.empty()) nb.upper = gle_side(cat, hi, q, cfg, rep.max_tail);
        }
        rep.per_norm[i] = nb;
    }
    rep.envelope = make_envelope(rep.per_norm);
    return rep;
}

namespace {

void check_exact_order(int q) {
    if (q < 1 || q > 6) {
        std::ostringstream os;
        os << "exact GLE values need integer q in [1, 6] (got " << q << ")";
        throw DomainError(os.str());
    }
}

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// (1 + ab a b)^q = sum_j C(q,j) ab^j a^j b^j.
PolyCoeffs lower_poly(int q, double ab) {
    PolyCoeffs c;
    for (int j = 0; j <= q; ++j) {
        c[{j, j}] += factorial(q) / (factorial(j) * factorial(q - j)) * std::pow(ab, j);
    }
    return c;
}

// (1 + a + ab a b)^q = sum_{i+j+k=q} q!/(i! j! k!) a^j (ab a b)^k.
PolyCoeffs upper_poly(int q, double ab) {
    PolyCoeffs c;
    for (int j = 0; j <= q; ++j) {
        for (int k = 0; j + k <= q; ++k) {
            const int i = q - j - k;
            const double multinom = factorial(q) / (factorial(i) * factorial(j) * factorial(k));
            c[{j + k, k}] += multinom * std::pow(ab, k);
        }
    }
    return c;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r = 0;
    if (__builtin_mul_overflow(a, b, &r)) throw DomainError("exact GLE argument overflows 64-bit integers");
    return r;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r = 0;
    if (__builtin_add_overflow(a, b, &r)) throw DomainError("exact GLE argument overflows 64-bit integers");
    return r;
}

}  // namespace

ExactArguments gle_exact_arguments(int q, const ShearParams& p) {
    check_exact_order(q);
    require_positive(p, "gle_exact_arguments");
    const double ab = p.product();
    return {expect_block_exact_poly(lower_poly(q, ab)), expect_block_exact_poly(upper_poly(q, ab))};
}

std::pair<std::uint64_t, std::uint64_t> gle_exact_arguments_integral(int q,
                                                                     std::int64_t alpha_beta) {
    check_exact_order(q);
    if (alpha_beta < 1) throw DomainError("integral alpha*beta must be >= 1");
    auto binom = [](int n, int k) {
        std::uint64_t r = 1;
        for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
        return r;
    };
    const auto ab = static_cast<std::uint64_t>(alpha_beta);
    auto pw = [&](int e) {
        std::uint64_t r = 1;
        for (int i = 0; i < e; ++i) r = checked_mul(r, ab);
        return r;
    };

    std::uint64_t lower = 0;
    for (int j = 0; j <= q; ++j) {
        const std::uint64_t pj = polylog_half_exact(j);
        lower = checked_add(lower, checked_mul(checked_mul(binom(q, j), pw(j)), checked_mul(pj, pj)));
    }
    std::uint64_t upper = 0;
    for (int j = 0; j <= q; ++j) {
        for (int k = 0; j + k <= q; ++k) {
            const std::uint64_t multinom = binom(q, j) * binom(q - j, k);
            const std::uint64_t term = checked_mul(checked_mul(multinom, pw(k)),
                                                   checked_mul(polylog_half_exact(j + k), polylog_half_exact(k)));
            upper = checked_add(upper, term);
        }
    }
    return {lower, upper};
}

Interval gle_exact_integer(int q, const ShearParams& p) {
    const ExactArguments args = gle_exact_arguments(q, p);
    return {std::log(args.lower) / kMeanBlockLength, std::log(args.upper) / kMeanBlockLength};
}

Interval entropy_bounds(const ShearParams& p) {
    require_positive(p, "entropy_bounds");
    const double ab = p.product();
    return {std::log(1.0 + 4.0 * ab) / kMeanBlockLength, std::log(3.0 + 4.0 * ab) / kMeanBlockLength};
}

std::vector<double> uniform_grid(double q_min, double q_max, int n_points) {
    if (!(q_min < q_max)) throw DomainError("grid requires q_min < q_max");
    if (n_points < 2) throw DomainError("grid requires at least 2 points");
    std::vector<double> g(static_cast<std::size_t>(n_points));
    const double step = (q_max - q_min) / (n_points - 1);
    for (int i = 0; i < n_points; ++i) g[static_cast<std::size_t>(i)] = q_min + i * step;
    g.back() = q_max;
    return g;
}

std::vector<BoundReport> gle_sweep(const std::vector<double>& q_grid, const ShearParams& p,
                                   BoundFamily family, const SeriesConfig& cfg) {
    std::vector<BoundReport> out;
    out.reserve(q_grid.size());
    for (double q : q_grid) out.push_back(gle_bounds(q, p, family, cfg));
    return out;
}

GLECurve gle_curve(double q_min, double q_max, int n_points, const ShearParams& p,
                   BoundFamily family, const SeriesConfig& cfg) {
    GLECurve c;
    c.q_grid = uniform_grid(q_min, q_max, n_points);
    for (const auto& rep : gle_sweep(c.q_grid, p, family, cfg)) {
        c.lower.push_back(rep.envelope.lower);
        c.upper.push_back(rep.envelope.upper);
    }
    return c;
}

}  // namespace shear
