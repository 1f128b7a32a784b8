#include "shear/bound_functions.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <sstream>

#include "shear/cones.hpp"
#include "shear/error.hpp"

namespace shear {

std::string_view to_string(FunctionFamily f) noexcept {
    switch (f) {
        case FunctionFamily::Global: return "global";
        case FunctionFamily::Improved: return "improved";
        case FunctionFamily::GlobalNeg: return "global-neg";
        case FunctionFamily::ImprovedNeg: return "improved-neg";
    }
    return "?";
}

std::string_view to_string(Side s) noexcept { return s == Side::Lower ? "lower" : "upper"; }

std::string BoundFunctionId::label() const {
    std::ostringstream os;
    os << to_string(family) << '/' << to_string(norm) << '/' << to_string(side);
    if (m != 0) os << "/m=" << m;
    if (mb != 0) os << ",mb=" << mb;
    return os.str();
}

void validate(const BoundFunctionId& id) {
    auto fail = [&](const char* why) {
        throw DomainError("invalid bound function " + id.label() + ": " + why);
    };
    switch (id.family) {
        case FunctionFamily::Global:
        case FunctionFamily::GlobalNeg:
            if (id.m != 0 || id.mb != 0) fail("global families take no case index");
            break;
        case FunctionFamily::Improved:
            if (id.m < 1 || id.m > 3 || id.mb != 0) fail("case index must be m in {1,2,3}");
            break;
        case FunctionFamily::ImprovedNeg:
            if (id.side == Side::Lower) {
                if (id.m < 1 || id.m > 2 || id.mb < 1 || id.mb > 2) {
                    fail("case index must be (ma, mb) in {1,2}x{1,2}");
                }
            } else {
                if (id.norm != NormKind::Linf) fail("improved opposed upper bound exists only for Linf");
                if (id.m < 1 || id.m > 4 || id.mb != 0) fail("case index must be m in {1..4}");
            }
            break;
    }
}

CValue c_value(double a, double b, double alpha, double beta) noexcept {
    const double x = a * alpha;
    const double y = b * beta;
    const double s = x + y;
    const double p = x * y;
    return {s * s + p * p};
}

BoundCatalog::BoundCatalog(const ShearParams& p) : params_(p) {
    if (p.regime() == Regime::OpposedPair) {
        gamma_ = shear::gamma(p).value;
        for (int i = 1; i <= 2; ++i) {
            for (int j = 1; j <= 2; ++j) gamma_mab_[i - 1][j - 1] = shear::gamma_mab(i, j, p);
        }
    }
}

double BoundCatalog::global_lower(NormKind k, double a, double b) const noexcept {
    const double al = params_.alpha();
    const double be = params_.beta();
    const double y = b * be;
    const double prod = a * al * y;
    switch (k) {
        case NormKind::L1: return 1.0 + al / (1.0 + al) * (a + y + prod);
        case NormKind::L2: {
            const double first = (1.0 + prod) * (1.0 + prod) + y * y;
            const double t = 1.0 + a + prod;
            const double u = 1.0 + al * y;
            const double second = (al * al * t * t + u * u) / (1.0 + al * al);
            return std::min(std::sqrt(first), std::sqrt(second));
        }
        case NormKind::Linf: return 1.0 + prod;
    }
    return 0.0;
}

double BoundCatalog::global_upper(NormKind k, double a, double b) const noexcept {
    const double al = params_.alpha();
    const double be = params_.beta();
    const double y = b * be;
    const double prod = a * al * y;
    switch (k) {
        case NormKind::L1: return 1.0 + y + prod;
        case NormKind::L2: {
            const double c = c_value(a, b, al, be).value;
            return std::sqrt(0.5 * (2.0 + c + std::sqrt(c * (c + 4.0))));
        }
        case NormKind::Linf: return 1.0 + a + prod;
    }
    return 0.0;
}

double BoundCatalog::improved_lower(NormKind k, int m, double a, double b) const noexcept {
    if (m == 1 || k == NormKind::Linf) return global_lower(k, a, b);
    const double al = params_.alpha();
    const double be = params_.beta();
    const double ab = al * be;
    const double x = a * al;
    const double y = b * be;
    const double prod = x * y;
    // Sub-cone edge is (1 + ab) / (al * w) with w = 2 + ab (a=b) or 3 + 2ab (a>b).
    const double w = m == 2 ? 2.0 + ab : 3.0 + 2.0 * ab;
    if (k == NormKind::L1) {
        return (al * w * (prod + y + 1.0) + (x + 1.0) * (ab + 1.0)) / (al * (w + be) + 1.0);
    }
    const double first = (1.0 + prod) * (1.0 + prod) + y * y;
    const double s = 1.0 + ab + al * y * w;
    const double t = x * (1.0 + ab) + al * w * (1.0 + prod);
    const double den = (1.0 + ab) * (1.0 + ab) + al * al * w * w;
    return std::min(std::sqrt(first), std::sqrt((s * s + t * t) / den));
}

double BoundCatalog::improved_upper(NormKind k, int m, double a, double b) const noexcept {
    if (m == 1 || k != NormKind::Linf) return global_upper(k, a, b);
    const double ab = params_.product();
    const double prod = a * params_.alpha() * b * params_.beta();
    const double w = m == 2 ? 2.0 + ab : 3.0 + 2.0 * ab;
    return 1.0 + prod + a * (1.0 + ab) / w;
}

double BoundCatalog::neg_lower(NormKind k, double g, double a, double b) const noexcept {
    const double x = a * params_.alpha();
    const double y = b * params_.beta();
    const double prod = x * y;
    switch (k) {
        case NormKind::L1: return (y + g - prod - 1.0 - x * g) / (1.0 - g);
        case NormKind::L2: {
            const double s = g + y;
            const double t = 1.0 + x * g + prod;
            return std::sqrt((s * s + t * t) / (1.0 + g * g));
        }
        case NormKind::Linf: return -prod - x * g - 1.0;
    }
    return 0.0;
}

double BoundCatalog::neg_upper(NormKind k, double a, double b) const noexcept {
    const double y = b * params_.beta();
    const double prod = a * params_.alpha() * y;
    switch (k) {
        case NormKind::L1: return y - prod - 1.0;
        case NormKind::L2: return std::hypot(-prod - 1.0, y);
        case NormKind::Linf: return -prod - 1.0;
    }
    return 0.0;
}

double BoundCatalog::neg_improved_upper(int m, double a, double b) const noexcept {
    const double base = neg_upper(NormKind::Linf, a, b);
    const double ab = params_.product();
    switch (m) {
        case 1: return base - a * ab / (1.0 + ab);
        case 2: return base - a;
        default: return base;
    }
}

double BoundCatalog::eval(const BoundFunctionId& id, double a, double b) const {
    const bool lower = id.side == Side::Lower;
    switch (id.family) {
        case FunctionFamily::Global:
            return lower ? global_lower(id.norm, a, b) : global_upper(id.norm, a, b);
        case FunctionFamily::Improved:
            return lower ? improved_lower(id.norm, id.m, a, b) : improved_upper(id.norm, id.m, a, b);
        case FunctionFamily::GlobalNeg:
            return lower ? neg_lower(id.norm, gamma_, a, b) : neg_upper(id.norm, a, b);
        case FunctionFamily::ImprovedNeg:
            return lower ? neg_lower(id.norm, gamma_mab(id.m, id.mb), a, b)
                         : neg_improved_upper(id.m, a, b);
    }
    return 0.0;
}

namespace {

void check_regime(const BoundFunctionId& id, const ShearParams& p) {
    const bool negative =
        id.family == FunctionFamily::GlobalNeg || id.family == FunctionFamily::ImprovedNeg;
    const Regime want = negative ? Regime::OpposedPair : Regime::PositivePair;
    if (p.regime() != want) {
        throw DomainError("bound function " + id.label() + " requires the " +
                          std::string(to_string(want)) + " regime");
    }
}

void check_block(double a, double b) {
    if (!(a >= 1.0) || !(b >= 1.0)) throw DomainError("bound functions require a, b >= 1");
}

double evaluate_checked(const BoundFunctionId& id, Side want, double a, double b,
                        const ShearParams& p) {
    if (id.side != want) {
        throw DomainError(std::string(want == Side::Lower ? "phi" : "psi") +
                          " called with a " + std::string(to_string(id.side)) + " id");
    }
    validate(id);
    check_regime(id, p);
    check_block(a, b);
    return BoundCatalog(p).eval(id, a, b);
}

}  // namespace

double phi(const BoundFunctionId& id, double a, double b, const ShearParams& p) {
    return evaluate_checked(id, Side::Lower, a, b, p);
}

double phi(const BoundFunctionId& id, const BlockExponents& block, const ShearParams& p) {
    return phi(id, block.a(), block.b(), p);
}

double psi(const BoundFunctionId& id, double a, double b, const ShearParams& p) {
    return evaluate_checked(id, Side::Upper, a, b, p);
}

double psi(const BoundFunctionId& id, const BlockExponents& block, const ShearParams& p) {
    return psi(id, block.a(), block.b(), p);
}

double growth_ratio(const BlockExponents& block, const ShearParams& p, const Vec2& x, NormKind k) {
    if (!cone_contains(invariant_cone(p), x)) {
        throw DomainError("growth_ratio: vector lies outside the invariant cone");
    }
    const Vec2 y = k_ab(block, p) * x;
    return vec_norm(y, k) / vec_norm(x, k);
}

}  // namespace shear
