#pragma once

// Invariant cones in tangent space, stored as closed intervals of the slope
// u/v. The antipodal sector (u, v < 0) is identified with the one shown.

#include <cstdint>

#include "shear/linalg.hpp"

namespace shear {

struct Cone {
    double lo = 0.0;
    double hi = 0.0;

    double width() const noexcept { return hi - lo; }
};

/// Relative tolerance applied at cone edges.
inline constexpr double kConeEdgeTol = 1e-12;

/// Slope of the expanding eigenvector of K_11 in the opposed regime.
struct GammaValue {
    double value;
};

/// C+ = {0 <= u/v <= 1/alpha}; positive regime only.
Cone cone_positive(const ShearParams& p);

/// C- = {Gamma <= u/v <= 0}; opposed regime only.
Cone cone_negative(const ShearParams& p);

/// C+ or C- depending on the regime.
Cone invariant_cone(const ShearParams& p);

/// Gamma = -beta/2 + sqrt((beta/2)^2 + beta/alpha). Cross-checked against
/// the eigenvector slope of K_11; a mismatch above 1e-9 throws InternalError.
GammaValue gamma(const ShearParams& p);

/// Raw form, rejecting alpha*beta >= -4 where the cone is undefined.
GammaValue gamma(double alpha, double beta);

/// Slope of the eigenvector of K_11 for the eigenvalue of largest modulus,
/// computed from the characteristic polynomial.
double expanding_eigenvector_slope(double alpha, double beta);

/// Projective action: u'/v' = (m11 s + m12) / (m21 s + m22).
/// Throws DomainError when v' = 0.
double map_slope(const Mat2& m, double slope);

enum class BlockOrder : std::uint8_t { ALessB = 1, AEqualB = 2, AGreaterB = 3 };

/// Image of C+ under K_ab for the given comparison of a and b.
/// a<b: [0, 1/alpha]; a=b: [0, (1+ab)/(2a+a^2 b)]; a>b: [0, (1+ab)/(3a+2a^2 b)]
/// (with a = alpha, b = beta in the closed forms).
Cone improved_cone_positive(BlockOrder order, const ShearParams& p);

BlockOrder block_order(int a, int b) noexcept;

/// Gamma_{ma,mb} = (Gamma + mb beta) / (ma alpha Gamma + ma mb alpha beta + 1),
/// ma, mb in {1, 2}. Gamma_{1,1} = Gamma.
double gamma_mab(int m_a, int m_b, const ShearParams& p);

/// Image of C- under K_ab, indexed by (ma, mb) = (min(a,2), min(b,2)):
/// (1,1): [Gamma, beta/(1+alpha beta)]   (2,1): [Gamma_21, 0]
/// (1,2): [Gamma_12, 1/alpha]            (2,2): [Gamma_22, 0]
Cone improved_cone_negative(int m_a, int m_b, const ShearParams& p);

/// lo <= u/v <= hi within kConeEdgeTol. Throws DomainError when v = 0.
bool cone_contains(const Cone& c, const Vec2& x);

bool slope_in_cone(const Cone& c, double slope) noexcept;

}  // namespace shear
