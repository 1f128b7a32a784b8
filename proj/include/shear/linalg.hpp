#pragma once

// Exact 2x2 algebra for the shear pair
//
//   A = [1 0; alpha 1],  B = [1 beta; 0 1],  K_ab = A^a B^b.
//
// Everything here is a pure function on small value types.

#include <array>
#include <cstdint>
#include <string_view>

namespace shear {

enum class Regime : std::uint8_t { PositivePair, OpposedPair };

enum class NormKind : std::uint8_t { L1, L2, Linf };

inline constexpr std::array<NormKind, 3> kAllNorms{NormKind::L1, NormKind::L2, NormKind::Linf};

std::string_view to_string(Regime r) noexcept;
std::string_view to_string(NormKind k) noexcept;
NormKind parse_norm(std::string_view s);

/// Shear strengths together with the regime they fall in.
///
/// PositivePair: alpha >= 1 and beta >= 1.
/// OpposedPair:  alpha < -2 and beta > 2 (guarantees |alpha beta| > 4).
class ShearParams {
public:
    /// Infers the regime from the signs; throws DomainError naming the
    /// violated constraint otherwise.
    static ShearParams make(double alpha, double beta);
    static ShearParams positive(double alpha, double beta);
    static ShearParams opposed(double alpha, double beta);

    double alpha() const noexcept { return alpha_; }
    double beta() const noexcept { return beta_; }
    Regime regime() const noexcept { return regime_; }
    double product() const noexcept { return alpha_ * beta_; }

private:
    ShearParams(double alpha, double beta, Regime r) noexcept
        : alpha_(alpha), beta_(beta), regime_(r) {}

    double alpha_;
    double beta_;
    Regime regime_;
};

struct Vec2 {
    double u = 0.0;
    double v = 0.0;

    friend constexpr bool operator==(const Vec2&, const Vec2&) = default;
};

struct Mat2 {
    double m11 = 1.0, m12 = 0.0;
    double m21 = 0.0, m22 = 1.0;

    static constexpr Mat2 identity() noexcept { return {}; }

    constexpr double det() const noexcept { return m11 * m22 - m12 * m21; }
    constexpr double trace() const noexcept { return m11 + m22; }
    constexpr Mat2 transpose() const noexcept { return {m11, m21, m12, m22}; }

    friend constexpr bool operator==(const Mat2&, const Mat2&) = default;
};

constexpr Mat2 operator*(const Mat2& x, const Mat2& y) noexcept {
    return {x.m11 * y.m11 + x.m12 * y.m21, x.m11 * y.m12 + x.m12 * y.m22,
            x.m21 * y.m11 + x.m22 * y.m21, x.m21 * y.m12 + x.m22 * y.m22};
}

constexpr Vec2 operator*(const Mat2& m, const Vec2& x) noexcept {
    return {m.m11 * x.u + m.m12 * x.v, m.m21 * x.u + m.m22 * x.v};
}

/// Block exponents (a, b) of K_ab, both >= 1.
class BlockExponents {
public:
    BlockExponents(int a, int b);

    int a() const noexcept { return a_; }
    int b() const noexcept { return b_; }

private:
    int a_;
    int b_;
};

Mat2 shear_a(const ShearParams& p) noexcept;
Mat2 shear_b(const ShearParams& p) noexcept;

/// K_ab in closed form: [[1, b beta], [a alpha, 1 + a alpha b beta]].
Mat2 k_ab(const BlockExponents& block, const ShearParams& p) noexcept;
Mat2 k_ab(double a, double b, double alpha, double beta) noexcept;

double vec_norm(const Vec2& x, NormKind k) noexcept;

/// Largest singular value via the larger eigenvalue of M^T M.
double spectral_norm(const Mat2& m) noexcept;

/// Unit right singular vector for the largest singular value.
Vec2 top_singular_vector(const Mat2& m) noexcept;

/// |trace K_ab| > 2, i.e. |2 + a alpha b beta| > 2 (det K_ab = 1).
bool is_hyperbolic(const BlockExponents& block, const ShearParams& p) noexcept;
bool is_hyperbolic(const BlockExponents& block, double alpha, double beta) noexcept;

}  // namespace shear
