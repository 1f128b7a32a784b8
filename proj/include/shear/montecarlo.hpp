#pragma once

// Monte Carlo estimators used to validate the bounds. Each estimator has an
// OpenMP path and a serial reference; both run the same per-ensemble kernel
// on streams derived from (seed, ensemble index) and reduce in ensemble
// order, so they agree bit for bit.

#include <cstdint>
#include <variant>

#include "shear/linalg.hpp"

namespace shear {

struct McConfig {
    std::uint64_t n_steps = 1'000'000;  // matrix applications per trajectory
    std::uint64_t n_ensembles = 16;
    std::uint64_t seed = 42;
    std::uint64_t renorm_every = 1;

    void validate() const;
};

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;  // 0 when n_samples == 1
    std::uint64_t n_samples = 0;
};

/// (1/N) log ||M_N X_0||_2 with fair i.i.d. choices of A and B, X_0 = (0, 1).
/// One sample per ensemble; std_error is the ensemble standard error.
McEstimate lyapunov_mc(const ShearParams& p, const McConfig& cfg);
McEstimate lyapunov_mc_serial(const ShearParams& p, const McConfig& cfg);

struct GleMcEstimate : McEstimate {
    /// Kish effective sample size of the weights exp(q log ||X_N||).
    double effective_sample_size = 0.0;
    /// Set when the effective sample size falls below kMinEssFraction * n_samples:
    /// the estimate is then dominated by a few trajectories.
    bool low_ess = false;
};

inline constexpr double kMinEssFraction = 0.05;
inline constexpr int kBootstrapResamples = 200;

/// (1/N) log mean_e ||X_N^(e)||^q via log-sum-exp over ensembles; the
/// standard error is a bootstrap over ensembles. Finite-N estimates are
/// biased and their variance grows exponentially with |q| N.
GleMcEstimate gle_mc(double q, const ShearParams& p, const McConfig& cfg);
GleMcEstimate gle_mc_serial(double q, const ShearParams& p, const McConfig& cfg);

struct Exhaustive {};
struct Sampled {
    std::uint64_t n_samples = 100'000;
    std::uint64_t seed = 42;
};
using StandardBoundMode = std::variant<Exhaustive, Sampled>;

inline constexpr int kMaxExhaustiveLength = 22;

/// E_k = (1/k) E log ||C||_2 over products C of length k.
/// Exhaustive enumerates all 2^k products (k <= 22); Sampled averages n
/// uniformly drawn products.
double standard_bound(int k, const ShearParams& p, const StandardBoundMode& mode);
double standard_bound_serial(int k, const ShearParams& p, const StandardBoundMode& mode);

/// Default mode: exhaustive up to kMaxExhaustiveLength, Sampled(1e5) beyond.
StandardBoundMode default_standard_mode(int k, std::uint64_t seed = 42);

struct BlockStats {
    double mean_block_len = 0.0;
    double p_eq = 0.0;
    double p_gt = 0.0;
    double p_lt = 0.0;
    double lambda_est = 0.0;
    double lambda_std_error = 0.0;
    std::uint64_t n_blocks = 0;
};

/// Simulates the coin sequence, groups it into blocks A^a B^b and applies
/// the closed-form K_ab. Here cfg.n_steps counts blocks per ensemble.
BlockStats block_oracle(const ShearParams& p, const McConfig& cfg);
BlockStats block_oracle_serial(const ShearParams& p, const McConfig& cfg);

}  // namespace shear
