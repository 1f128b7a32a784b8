#include "shear/cones.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "shear/error.hpp"

namespace shear {

namespace {

void require_regime(const ShearParams& p, Regime r, const char* what) {
    if (p.regime() != r) {
        throw DomainError(std::string(what) + " requires the " + std::string(to_string(r)) +
                          " regime");
    }
}

double gamma_closed_form(double alpha, double beta) {
    const double h = 0.5 * beta;
    return -h + std::sqrt(h * h + beta / alpha);
}

}  // namespace

Cone cone_positive(const ShearParams& p) {
    require_regime(p, Regime::PositivePair, "cone_positive");
    return {0.0, 1.0 / p.alpha()};
}

Cone cone_negative(const ShearParams& p) {
    require_regime(p, Regime::OpposedPair, "cone_negative");
    return {gamma(p).value, 0.0};
}

Cone invariant_cone(const ShearParams& p) {
    return p.regime() == Regime::PositivePair ? cone_positive(p) : cone_negative(p);
}

double expanding_eigenvector_slope(double alpha, double beta) {
    // K_11 = [[1, beta], [alpha, 1 + alpha beta]], det 1, trace t = 2 + alpha beta.
    // Eigenvalues solve e^2 - t e + 1 = 0; (1 - e) u + beta v = 0 gives u/v.
    const double t = 2.0 + alpha * beta;
    const double disc = t * t - 4.0;
    if (disc <= 0.0) throw DomainError("K_11 is not hyperbolic");
    const double root = std::sqrt(disc);
    const double e = t >= 0.0 ? 0.5 * (t + root) : 0.5 * (t - root);
    return beta / (e - 1.0);
}

GammaValue gamma(double alpha, double beta) {
    if (!(alpha < 0.0) || !(beta > 0.0)) {
        throw DomainError("gamma requires alpha < 0 < beta");
    }
    if (alpha * beta >= -4.0) {
        throw DomainError("gamma requires alpha*beta < -4 (invariant cone undefined)");
    }
    const double g = gamma_closed_form(alpha, beta);
    const double check = expanding_eigenvector_slope(alpha, beta);
    if (std::abs(g - check) > 1e-9) {
        std::ostringstream os;
        os << "gamma closed form " << g << " disagrees with eigenvector slope " << check;
        throw InternalError(os.str());
    }
    return {g};
}

GammaValue gamma(const ShearParams& p) {
    require_regime(p, Regime::OpposedPair, "gamma");
    return gamma(p.alpha(), p.beta());
}

double map_slope(const Mat2& m, double slope) {
    const double den = m.m21 * slope + m.m22;
    if (den == 0.0) throw DomainError("projective blow-up: image vector has v' = 0");
    return (m.m11 * slope + m.m12) / den;
}

BlockOrder block_order(int a, int b) noexcept {
    if (a < b) return BlockOrder::ALessB;
    if (a == b) return BlockOrder::AEqualB;
    return BlockOrder::AGreaterB;
}

Cone improved_cone_positive(BlockOrder order, const ShearParams& p) {
    require_regime(p, Regime::PositivePair, "improved_cone_positive");
    const double al = p.alpha();
    const double ab = p.product();
    switch (order) {
        case BlockOrder::ALessB: return {0.0, 1.0 / al};
        case BlockOrder::AEqualB: return {0.0, (1.0 + ab) / (2.0 * al + al * ab)};
        case BlockOrder::AGreaterB: return {0.0, (1.0 + ab) / (3.0 * al + 2.0 * al * ab)};
    }
    return {0.0, 1.0 / al};
}

double gamma_mab(int m_a, int m_b, const ShearParams& p) {
    require_regime(p, Regime::OpposedPair, "gamma_mab");
    if (m_a < 1 || m_a > 2 || m_b < 1 || m_b > 2) {
        throw DomainError("gamma_mab indices must be 1 or 2");
    }
    const double g = gamma(p).value;
    const double den = m_a * p.alpha() * g + m_a * m_b * p.product() + 1.0;
    // Negative for alpha < -2, beta > 2 since alpha*Gamma < |alpha| and alpha*beta < -4.
    if (!(den < 0.0)) throw InternalError("gamma_mab denominator is not negative");
    return (g + m_b * p.beta()) / den;
}

Cone improved_cone_negative(int m_a, int m_b, const ShearParams& p) {
    const double lo = gamma_mab(m_a, m_b, p);
    if (m_a == 1 && m_b == 1) return {lo, p.beta() / (1.0 + p.product())};
    if (m_a == 1) return {lo, 1.0 / p.alpha()};
    return {lo, 0.0};
}

bool slope_in_cone(const Cone& c, double slope) noexcept {
    const double tol = kConeEdgeTol * std::max({1.0, std::abs(c.lo), std::abs(c.hi)});
    return slope >= c.lo - tol && slope <= c.hi + tol;
}

bool cone_contains(const Cone& c, const Vec2& x) {
    if (x.v == 0.0) throw DomainError("slope u/v undefined for v = 0");
    return slope_in_cone(c, x.u / x.v);
}

}  // namespace shear
