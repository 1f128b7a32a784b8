#include "shear/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "shear/error.hpp"

namespace shear {

std::string_view to_string(Regime r) noexcept {
    return r == Regime::PositivePair ? "positive" : "opposed";
}

std::string_view to_string(NormKind k) noexcept {
    switch (k) {
        case NormKind::L1: return "L1";
        case NormKind::L2: return "L2";
        case NormKind::Linf: return "Linf";
    }
    return "?";
}

NormKind parse_norm(std::string_view s) {
    if (s == "L1" || s == "l1" || s == "1") return NormKind::L1;
    if (s == "L2" || s == "l2" || s == "2") return NormKind::L2;
    if (s == "Linf" || s == "linf" || s == "inf") return NormKind::Linf;
    throw DomainError("unknown norm '" + std::string(s) + "' (expected L1, L2 or Linf)");
}

ShearParams ShearParams::make(double alpha, double beta) {
    if (!std::isfinite(alpha) || !std::isfinite(beta)) {
        throw DomainError("alpha and beta must be finite");
    }
    if (alpha >= 1.0) {
        if (beta < 1.0) throw DomainError("beta must be >= 1 when alpha >= 1");
        return {alpha, beta, Regime::PositivePair};
    }
    if (alpha < -2.0) {
        if (!(beta > 2.0)) throw DomainError("beta must be > 2 when alpha < -2");
        return {alpha, beta, Regime::OpposedPair};
    }
    throw DomainError("alpha must be >= 1 or < -2");
}

ShearParams ShearParams::positive(double alpha, double beta) {
    auto p = make(alpha, beta);
    if (p.regime() != Regime::PositivePair) {
        throw DomainError("positive regime requires alpha >= 1 and beta >= 1");
    }
    return p;
}

ShearParams ShearParams::opposed(double alpha, double beta) {
    auto p = make(alpha, beta);
    if (p.regime() != Regime::OpposedPair) {
        throw DomainError("opposed regime requires alpha < -2 and beta > 2");
    }
    return p;
}

BlockExponents::BlockExponents(int a, int b) : a_(a), b_(b) {
    if (a < 1 || b < 1) {
        std::ostringstream os;
        os << "block exponents must be >= 1 (got a=" << a << ", b=" << b << ")";
        throw DomainError(os.str());
    }
}

Mat2 shear_a(const ShearParams& p) noexcept { return {1.0, 0.0, p.alpha(), 1.0}; }
Mat2 shear_b(const ShearParams& p) noexcept { return {1.0, p.beta(), 0.0, 1.0}; }

Mat2 k_ab(double a, double b, double alpha, double beta) noexcept {
    const double x = a * alpha;
    const double y = b * beta;
    return {1.0, y, x, 1.0 + x * y};
}

Mat2 k_ab(const BlockExponents& block, const ShearParams& p) noexcept {
    return k_ab(block.a(), block.b(), p.alpha(), p.beta());
}

double vec_norm(const Vec2& x, NormKind k) noexcept {
    switch (k) {
        case NormKind::L1: return std::abs(x.u) + std::abs(x.v);
        case NormKind::L2: return std::hypot(x.u, x.v);
        case NormKind::Linf: return std::max(std::abs(x.u), std::abs(x.v));
    }
    return 0.0;
}

namespace {

struct Gram {
    double p, r, s;  // M^T M = [[p, r], [r, s]]
    double top;      // larger eigenvalue
};

Gram gram(const Mat2& m) noexcept {
    Gram g{};
    g.p = m.m11 * m.m11 + m.m21 * m.m21;
    g.s = m.m12 * m.m12 + m.m22 * m.m22;
    g.r = m.m11 * m.m12 + m.m21 * m.m22;
    g.top = 0.5 * (g.p + g.s) + std::hypot(0.5 * (g.p - g.s), g.r);
    return g;
}

}  // namespace

double spectral_norm(const Mat2& m) noexcept { return std::sqrt(gram(m).top); }

Vec2 top_singular_vector(const Mat2& m) noexcept {
    const Gram g = gram(m);
    // Two algebraically equivalent null vectors of (M^T M - top I); keep the
    // better conditioned one.
    Vec2 x{g.r, g.top - g.p};
    Vec2 y{g.top - g.s, g.r};
    Vec2 w = vec_norm(x, NormKind::L2) >= vec_norm(y, NormKind::L2) ? x : y;
    const double n = vec_norm(w, NormKind::L2);
    if (n == 0.0) return {1.0, 0.0};  // M^T M is a multiple of the identity
    return {w.u / n, w.v / n};
}

bool is_hyperbolic(const BlockExponents& block, double alpha, double beta) noexcept {
    const double tr = 2.0 + block.a() * alpha * block.b() * beta;
    return std::abs(tr) > 2.0;
}

bool is_hyperbolic(const BlockExponents& block, const ShearParams& p) noexcept {
    return is_hyperbolic(block, p.alpha(), p.beta());
}

}  // namespace shear
