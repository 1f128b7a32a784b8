#include "shear/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <vector>

#include "shear/error.hpp"
#include "shear/rng.hpp"
#include "shear/series.hpp"

namespace shear {

void McConfig::validate() const {
    if (n_steps == 0) throw DomainError("McConfig.n_steps must be positive");
    if (n_ensembles == 0) throw DomainError("McConfig.n_ensembles must be positive");
    if (renorm_every == 0) throw DomainError("McConfig.renorm_every must be positive");
    if (renorm_every > n_steps) throw DomainError("McConfig.renorm_every must not exceed n_steps");
}

namespace {

// Runs body(i) for i in [0, n) either on the OpenMP team or serially.
template <bool Parallel, class Body>
void for_each_index(std::uint64_t n, Body&& body) {
    const auto count = static_cast<std::int64_t>(n);
    if constexpr (Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (std::int64_t i = 0; i < count; ++i) body(static_cast<std::uint64_t>(i));
    } else {
        for (std::int64_t i = 0; i < count; ++i) body(static_cast<std::uint64_t>(i));
    }
}

McEstimate summarize(const std::vector<double>& samples) {
    McEstimate est;
    est.n_samples = samples.size();
    CompensatedSum acc;
    for (double x : samples) acc.add(x);
    est.mean = acc.value() / static_cast<double>(samples.size());
    if (samples.size() > 1) {
        CompensatedSum sq;
        for (double x : samples) sq.add((x - est.mean) * (x - est.mean));
        const double var = sq.value() / static_cast<double>(samples.size() - 1);
        est.std_error = std::sqrt(var / static_cast<double>(samples.size()));
    }
    return est;
}

// log ||M_N X_0||_2 for one trajectory; coin true selects B.
double trajectory_log_growth(const ShearParams& p, const McConfig& cfg, std::uint64_t ensemble) {
    CoinStream coins(Xoshiro256ss::stream(cfg.seed, ensemble));
    const double al = p.alpha();
    const double be = p.beta();
    double u = 0.0;
    double v = 1.0;
    CompensatedSum acc;
    std::uint64_t since = 0;
    for (std::uint64_t i = 0; i < cfg.n_steps; ++i) {
        if (coins.next()) {
            u += be * v;
        } else {
            v += al * u;
        }
        if (++since == cfg.renorm_every) {
            const double n = std::sqrt(u * u + v * v);
            acc.add(std::log(n));
            u /= n;
            v /= n;
            since = 0;
        }
    }
    if (since != 0) acc.add(std::log(std::sqrt(u * u + v * v)));
    return acc.value();
}

template <bool Parallel>
std::vector<double> trajectory_logs(const ShearParams& p, const McConfig& cfg) {
    cfg.validate();
    std::vector<double> logs(cfg.n_ensembles);
    for_each_index<Parallel>(cfg.n_ensembles,
                             [&](std::uint64_t e) { logs[e] = trajectory_log_growth(p, cfg, e); });
    return logs;
}

template <bool Parallel>
McEstimate lyapunov_impl(const ShearParams& p, const McConfig& cfg) {
    std::vector<double> per = trajectory_logs<Parallel>(p, cfg);
    for (double& x : per) x /= static_cast<double>(cfg.n_steps);
    return summarize(per);
}

// (1/N) (log sum_e exp(q L_e) - log E) over the chosen ensemble indices.
double gle_from_logs(double q, const std::vector<double>& logs, const std::vector<std::size_t>& idx,
                     double n_steps) {
    double mx = -std::numeric_limits<double>::infinity();
    for (std::size_t i : idx) mx = std::max(mx, q * logs[i]);
    CompensatedSum acc;
    for (std::size_t i : idx) acc.add(std::exp(q * logs[i] - mx));
    return (mx + std::log(acc.value()) - std::log(static_cast<double>(idx.size()))) / n_steps;
}

template <bool Parallel>
GleMcEstimate gle_impl(double q, const ShearParams& p, const McConfig& cfg) {
    if (!std::isfinite(q)) throw DomainError("q must be finite");
    cfg.validate();
    GleMcEstimate est;
    est.n_samples = cfg.n_ensembles;
    if (q == 0.0) {
        est.effective_sample_size = static_cast<double>(cfg.n_ensembles);
        return est;
    }
    const std::vector<double> logs = trajectory_logs<Parallel>(p, cfg);
    const double n = static_cast<double>(cfg.n_steps);
    std::vector<std::size_t> all(logs.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    est.mean = gle_from_logs(q, logs, all, n);

    double mx = -std::numeric_limits<double>::infinity();
    for (double l : logs) mx = std::max(mx, q * l);
    CompensatedSum w1;
    CompensatedSum w2;
    for (double l : logs) {
        const double w = std::exp(q * l - mx);
        w1.add(w);
        w2.add(w * w);
    }
    est.effective_sample_size = w1.value() * w1.value() / w2.value();
    est.low_ess = est.effective_sample_size < kMinEssFraction * static_cast<double>(logs.size());

    if (logs.size() > 1) {
        // The bootstrap stream is salted so it never coincides with a trajectory stream.
        Xoshiro256ss rng = Xoshiro256ss::stream(cfg.seed ^ 0xB0075742A9E5C1D3ULL, 0);
        std::vector<double> reps(kBootstrapResamples);
        std::vector<std::size_t> idx(logs.size());
        for (double& r : reps) {
            for (auto& i : idx) {
                i = static_cast<std::size_t>(rng.uniform() * static_cast<double>(logs.size()));
            }
            r = gle_from_logs(q, logs, idx, n);
        }
        est.std_error = summarize(reps).std_error * std::sqrt(static_cast<double>(reps.size()));
    }
    return est;
}

// ---------------------------------------------------------------------------
// Standard bound

constexpr double kRescaleAbove = 1e100;

double max_abs(const Mat2& m) noexcept {
    return std::max({std::abs(m.m11), std::abs(m.m12), std::abs(m.m21), std::abs(m.m22)});
}

void rescale(Mat2& m, double& log_scale) noexcept {
    const double s = max_abs(m);
    m.m11 /= s;
    m.m12 /= s;
    m.m21 /= s;
    m.m22 /= s;
    log_scale += std::log(s);
}

void check_length(int k) {
    if (k < 1) throw DomainError("standard bound length k must be >= 1");
}

struct ExhaustiveWalk {
    Mat2 a;
    Mat2 b;
    CompensatedSum acc;

    void visit(Mat2 c, double log_scale, int remaining) {
        if (max_abs(c) > kRescaleAbove) rescale(c, log_scale);
        if (remaining == 0) {
            acc.add(log_scale + std::log(spectral_norm(c)));
            return;
        }
        visit(a * c, log_scale, remaining - 1);
        visit(b * c, log_scale, remaining - 1);
    }
};

template <bool Parallel>
double exhaustive_impl(int k, const ShearParams& p) {
    if (k > kMaxExhaustiveLength) {
        std::ostringstream os;
        os << "exhaustive standard bound limited to k <= " << kMaxExhaustiveLength << " (got " << k
           << ")";
        throw DomainError(os.str());
    }
    const Mat2 a = shear_a(p);
    const Mat2 b = shear_b(p);
    const int depth = std::min(k, 8);
    const std::uint64_t n_prefix = std::uint64_t{1} << depth;
    std::vector<double> parts(n_prefix);
    for_each_index<Parallel>(n_prefix, [&](std::uint64_t prefix) {
        Mat2 c = Mat2::identity();
        for (int j = 0; j < depth; ++j) c = ((prefix >> j) & 1u ? b : a) * c;
        ExhaustiveWalk walk{a, b, {}};
        walk.visit(c, 0.0, k - depth);
        parts[prefix] = walk.acc.value();
    });
    CompensatedSum total;
    for (double x : parts) total.add(x);
    return total.value() / static_cast<double>(std::uint64_t{1} << k) / k;
}

// Plain enumeration used as the serial reference.
double exhaustive_reference(int k, const ShearParams& p) {
    if (k > kMaxExhaustiveLength) {
        throw DomainError("exhaustive standard bound limited to k <= 22");
    }
    const Mat2 a = shear_a(p);
    const Mat2 b = shear_b(p);
    const std::uint64_t n = std::uint64_t{1} << k;
    CompensatedSum total;
    for (std::uint64_t mask = 0; mask < n; ++mask) {
        Mat2 c = Mat2::identity();
        double log_scale = 0.0;
        for (int j = 0; j < k; ++j) {
            c = ((mask >> j) & 1u ? b : a) * c;
            if (max_abs(c) > kRescaleAbove) rescale(c, log_scale);
        }
        total.add(log_scale + std::log(spectral_norm(c)));
    }
    return total.value() / static_cast<double>(n) / k;
}

double sampled_product_log(int k, const ShearParams& p, std::uint64_t seed, std::uint64_t index) {
    CoinStream coins(Xoshiro256ss::stream(seed, index));
    const Mat2 a = shear_a(p);
    const Mat2 b = shear_b(p);
    Mat2 c = Mat2::identity();
    double log_scale = 0.0;
    for (int j = 0; j < k; ++j) {
        c = (coins.next() ? b : a) * c;
        if ((j & 7) == 7) rescale(c, log_scale);
    }
    return (log_scale + std::log(spectral_norm(c))) / k;
}

template <bool Parallel>
double sampled_impl(int k, const ShearParams& p, const Sampled& s) {
    if (s.n_samples == 0) throw DomainError("Sampled.n_samples must be positive");
    std::vector<double> vals(s.n_samples);
    for_each_index<Parallel>(s.n_samples,
                             [&](std::uint64_t i) { vals[i] = sampled_product_log(k, p, s.seed, i); });
    CompensatedSum total;
    for (double x : vals) total.add(x);
    return total.value() / static_cast<double>(s.n_samples);
}

// ---------------------------------------------------------------------------
// Block oracle

struct BlockTally {
    std::uint64_t blocks = 0;
    std::uint64_t steps = 0;
    std::uint64_t eq = 0;
    std::uint64_t gt = 0;
    std::uint64_t lt = 0;
    double log_growth = 0.0;
};

BlockTally run_blocks(const ShearParams& p, const McConfig& cfg, std::uint64_t ensemble) {
    CoinStream coins(Xoshiro256ss::stream(cfg.seed, ensemble));
    BlockTally t;
    CompensatedSum acc;
    Vec2 x{0.0, 1.0};
    // Coin true selects B. A block is a run of B's followed by a run of A's,
    // acting on the vector as A^a B^b. Leading A's form no complete block.
    bool cur = coins.next();
    while (!cur) cur = coins.next();
    for (std::uint64_t blk = 0; blk < cfg.n_steps; ++blk) {
        int b = 0;
        while (cur) {
            ++b;
            cur = coins.next();
        }
        int a = 0;
        while (!cur) {
            ++a;
            cur = coins.next();
        }
        x = k_ab(a, b, p.alpha(), p.beta()) * x;
        const double n = std::sqrt(x.u * x.u + x.v * x.v);
        acc.add(std::log(n));
        x = {x.u / n, x.v / n};
        t.steps += static_cast<std::uint64_t>(a + b);
        if (a == b) {
            ++t.eq;
        } else if (a > b) {
            ++t.gt;
        } else {
            ++t.lt;
        }
    }
    t.blocks = cfg.n_steps;
    t.log_growth = acc.value();
    return t;
}

template <bool Parallel>
BlockStats block_impl(const ShearParams& p, const McConfig& cfg) {
    cfg.validate();
    std::vector<BlockTally> tallies(cfg.n_ensembles);
    for_each_index<Parallel>(cfg.n_ensembles,
                             [&](std::uint64_t e) { tallies[e] = run_blocks(p, cfg, e); });
    BlockTally total;
    CompensatedSum logs;
    std::vector<double> per;
    per.reserve(tallies.size());
    for (const auto& t : tallies) {
        total.blocks += t.blocks;
        total.steps += t.steps;
        total.eq += t.eq;
        total.gt += t.gt;
        total.lt += t.lt;
        logs.add(t.log_growth);
        per.push_back(t.log_growth / static_cast<double>(t.steps));
    }
    BlockStats s;
    const double nb = static_cast<double>(total.blocks);
    s.n_blocks = total.blocks;
    s.mean_block_len = static_cast<double>(total.steps) / nb;
    s.p_eq = static_cast<double>(total.eq) / nb;
    s.p_gt = static_cast<double>(total.gt) / nb;
    s.p_lt = static_cast<double>(total.lt) / nb;
    s.lambda_est = logs.value() / static_cast<double>(total.steps);
    s.lambda_std_error = summarize(per).std_error;
    return s;
}

}  // namespace

McEstimate lyapunov_mc(const ShearParams& p, const McConfig& cfg) { return lyapunov_impl<true>(p, cfg); }
McEstimate lyapunov_mc_serial(const ShearParams& p, const McConfig& cfg) {
    return lyapunov_impl<false>(p, cfg);
}

GleMcEstimate gle_mc(double q, const ShearParams& p, const McConfig& cfg) {
    return gle_impl<true>(q, p, cfg);
}
GleMcEstimate gle_mc_serial(double q, const ShearParams& p, const McConfig& cfg) {
    return gle_impl<false>(q, p, cfg);
}

StandardBoundMode default_standard_mode(int k, std::uint64_t seed) {
    if (k <= kMaxExhaustiveLength) return Exhaustive{};
    return Sampled{100'000, seed};
}

double standard_bound(int k, const ShearParams& p, const StandardBoundMode& mode) {
    check_length(k);
    if (std::holds_alternative<Exhaustive>(mode)) return exhaustive_impl<true>(k, p);
    return sampled_impl<true>(k, p, std::get<Sampled>(mode));
}

double standard_bound_serial(int k, const ShearParams& p, const StandardBoundMode& mode) {
    check_length(k);
    if (std::holds_alternative<Exhaustive>(mode)) return exhaustive_reference(k, p);
    return sampled_impl<false>(k, p, std::get<Sampled>(mode));
}

BlockStats block_oracle(const ShearParams& p, const McConfig& cfg) { return block_impl<true>(p, cfg); }
BlockStats block_oracle_serial(const ShearParams& p, const McConfig& cfg) {
    return block_impl<false>(p, cfg);
}

}  // namespace shear
