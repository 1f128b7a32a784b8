#pragma once

// Per-block bounds on the growth ratio ||K_ab X|| / ||X|| for X in the
// invariant cone (or one of its improved sub-cones).
//
// Families:
//   Global       phi_k, psi_k on C+                       (alpha, beta >= 1)
//   Improved     hat-phi_k^(m), hat-psi_k^(m), m = 1..3   on the image cones of C+
//   GlobalNeg    tilde-phi_k, tilde-psi_k on C-           (alpha < -2, beta > 2)
//   ImprovedNeg  hat-tilde-phi_k^(ma,mb), ma,mb in {1,2}; hat-tilde-psi_inf^(m), m = 1..4
//
// All functions accept real a, b >= 1 even though the series only uses
// integers.

#include <cstdint>
#include <string>
#include <string_view>

#include "shear/linalg.hpp"

namespace shear {

enum class FunctionFamily : std::uint8_t { Global, Improved, GlobalNeg, ImprovedNeg };
enum class Side : std::uint8_t { Lower, Upper };

std::string_view to_string(FunctionFamily f) noexcept;
std::string_view to_string(Side s) noexcept;

/// Identifies one bound function.
///
/// Case indices: Improved uses m in {1,2,3} (a<b, a=b, a>b on the previous
/// block). ImprovedNeg lower uses (m, mb) in {1,2}^2 with m = min(a,2) and
/// mb = min(b,2) of the previous block. ImprovedNeg upper (Linf only) uses
/// m in {1..4}: 1 = previous (1,1), 2 = previous (1,>=2), 3 and 4 the rest.
struct BoundFunctionId {
    FunctionFamily family = FunctionFamily::Global;
    NormKind norm = NormKind::Linf;
    Side side = Side::Lower;
    int m = 0;
    int mb = 0;

    std::string label() const;
};

/// Throws DomainError for combinations that do not exist.
void validate(const BoundFunctionId& id);

/// C_{a alpha b beta} = (a alpha + b beta)^2 + (a alpha b beta)^2.
struct CValue {
    double value;
};
CValue c_value(double a, double b, double alpha, double beta) noexcept;

/// Evaluates bound functions for one fixed parameter pair. Gamma and the
/// Gamma_{ma,mb} are computed once at construction.
class BoundCatalog {
public:
    explicit BoundCatalog(const ShearParams& p);

    const ShearParams& params() const noexcept { return params_; }

    /// Value for any valid id; no validation beyond a debug check.
    double eval(const BoundFunctionId& id, double a, double b) const;

    double gamma() const noexcept { return gamma_; }
    double gamma_mab(int m_a, int m_b) const noexcept { return gamma_mab_[m_a - 1][m_b - 1]; }

private:
    double global_lower(NormKind k, double a, double b) const noexcept;
    double global_upper(NormKind k, double a, double b) const noexcept;
    double improved_lower(NormKind k, int m, double a, double b) const noexcept;
    double improved_upper(NormKind k, int m, double a, double b) const noexcept;
    double neg_lower(NormKind k, double g, double a, double b) const noexcept;
    double neg_upper(NormKind k, double a, double b) const noexcept;
    double neg_improved_upper(int m, double a, double b) const noexcept;

    ShearParams params_;
    double gamma_ = 0.0;
    double gamma_mab_[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
};

/// Lower-side bound function (phi family). Validates id and regime.
double phi(const BoundFunctionId& id, const BlockExponents& block, const ShearParams& p);
double phi(const BoundFunctionId& id, double a, double b, const ShearParams& p);

/// Upper-side bound function (psi family). Validates id and regime.
double psi(const BoundFunctionId& id, const BlockExponents& block, const ShearParams& p);
double psi(const BoundFunctionId& id, double a, double b, const ShearParams& p);

/// ||K_ab x||_k / ||x||_k. Rejects x outside the regime's invariant cone.
double growth_ratio(const BlockExponents& block, const ShearParams& p, const Vec2& x, NormKind k);

}  // namespace shear
