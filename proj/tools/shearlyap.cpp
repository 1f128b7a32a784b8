// shearlyap: bounds and Monte Carlo estimates for random shear products.
//
// Exit codes: 0 ok, 1 usage, 2 parameter domain, 3 series did not converge,
// 4 internal error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <omp.h>

#include "CLI11.hpp"
#include "shear/bounds_engine.hpp"
#include "shear/cones.hpp"
#include "shear/error.hpp"
#include "shear/montecarlo.hpp"
#include "shear/output.hpp"

namespace {

using namespace shear;

struct GlobalOptions {
    std::string format = "text";
    std::string config;
    std::string output;
    std::optional<int> max_index;
    std::optional<double> tail_tol;
    bool no_tail_check = false;
    int threads = 0;
};

SeriesConfig series_config(const GlobalOptions& g) {
    SeriesConfig cfg;
    if (!g.config.empty()) apply_series_config(read_key_value_file(g.config), cfg);
    if (g.max_index) cfg.max_index = *g.max_index;
    if (g.tail_tol) cfg.tail_tol = *g.tail_tol;
    if (g.no_tail_check) cfg.check_tail = false;
    cfg.validate();
    return cfg;
}

std::vector<BoundFamily> families(const std::string& s) {
    if (s == "both") return {BoundFamily::Global, BoundFamily::Improved};
    return {parse_family(s)};
}

std::vector<NormKind> norms(const std::string& s) {
    std::vector<NormKind> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(parse_norm(tok));
    if (out.empty()) throw DomainError("no norms selected");
    return out;
}

Json opt(const std::optional<double>& x) { return x ? Json(*x) : Json(nullptr); }
Json times4(const std::optional<double>& x) {
    return x ? Json(*x * kMeanBlockLength) : Json(nullptr);
}

void add_report(Document& doc, const BoundReport& r, const std::vector<NormKind>& keep) {
    for (const auto& nb : r.per_norm) {
        if (std::find(keep.begin(), keep.end(), nb.norm) == keep.end()) continue;
        Json j;
        j["exponent"] = to_string(r.kind);
        j["q"] = r.kind == ExponentKind::GLE ? Json(r.q) : Json(nullptr);
        j["alpha"] = r.params.alpha();
        j["beta"] = r.params.beta();
        j["regime"] = to_string(r.params.regime());
        j["family"] = to_string(r.family);
        j["norm"] = to_string(nb.norm);
        j["lower"] = opt(nb.lower);
        j["upper"] = opt(nb.upper);
        j["lower_x4"] = times4(nb.lower);
        j["upper_x4"] = times4(nb.upper);
        j["lower_norm"] = nullptr;
        j["upper_norm"] = nullptr;
        j["max_tail"] = r.max_tail;
        doc.add("BoundReport", std::move(j));
    }
    Json j;
    j["exponent"] = to_string(r.kind);
    j["q"] = r.kind == ExponentKind::GLE ? Json(r.q) : Json(nullptr);
    j["alpha"] = r.params.alpha();
    j["beta"] = r.params.beta();
    j["regime"] = to_string(r.params.regime());
    j["family"] = to_string(r.family);
    j["norm"] = "envelope";
    j["lower"] = r.envelope.lower;
    j["upper"] = r.envelope.upper;
    j["lower_x4"] = r.envelope.lower * kMeanBlockLength;
    j["upper_x4"] = r.envelope.upper * kMeanBlockLength;
    j["lower_norm"] = to_string(r.envelope.lower_norm);
    j["upper_norm"] = to_string(r.envelope.upper_norm);
    j["max_tail"] = r.max_tail;
    doc.add("BoundReport", std::move(j));
}

Json mc_payload(std::string_view estimator, const ShearParams& p, std::optional<double> q,
                const McConfig& mc, const McEstimate& e) {
    Json j;
    j["estimator"] = estimator;
    j["alpha"] = p.alpha();
    j["beta"] = p.beta();
    j["q"] = opt(q);
    j["n_steps"] = mc.n_steps;
    j["n_ensembles"] = mc.n_ensembles;
    j["seed"] = mc.seed;
    j["mean"] = e.mean;
    j["std_error"] = e.std_error;
    j["mean_x4"] = e.mean * kMeanBlockLength;
    return j;
}

void emit(const GlobalOptions& g, const Document& doc) {
    const OutputFormat f = parse_format(g.format);
    if (g.output.empty()) {
        write(std::cout, doc, f);
        return;
    }
    const std::string path = resolve_output_path(g.output);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DomainError("cannot write '" + path + "'");
    write(out, doc, f);
    if (f == OutputFormat::Csv) {
        std::ofstream meta(path + ".meta.json");
        meta << to_json(doc.metadata).dump(2) << '\n';
    }
}

// ---------------------------------------------------------------------------

struct BoundsCmd {
    double alpha = 0.0;
    double beta = 0.0;
    std::string family = "both";
    std::string norms = "L1,L2,Linf";
    std::optional<double> q;
};

void run_bounds(const GlobalOptions& g, const BoundsCmd& c) {
    const SeriesConfig cfg = series_config(g);
    const ShearParams p = ShearParams::make(c.alpha, c.beta);
    const auto keep = norms(c.norms);
    Document doc{make_metadata("bounds", cfg, std::nullopt), {}};
    for (BoundFamily f : families(c.family)) {
        add_report(doc, c.q ? gle_bounds(*c.q, p, f, cfg) : lyapunov_bounds(p, f, cfg), keep);
    }
    emit(g, doc);
}

struct Table1Cmd {
    bool no_mc = false;
    std::string steps = "1e6";
    std::uint64_t ensembles = 16;
    std::uint64_t seed = 42;
};

void run_table1(const GlobalOptions& g, const Table1Cmd& c) {
    const SeriesConfig cfg = series_config(g);
    const ShearParams p = ShearParams::positive(1.0, 1.0);
    Document doc{make_metadata("table1", cfg, c.no_mc ? std::nullopt : std::optional(c.seed)), {}};
    auto row = [&](std::string_view family, NormKind k, std::string_view side, double v) {
        char rounded[16];
        std::snprintf(rounded, sizeof rounded, "%.5f", v);
        Json j;
        j["family"] = family;
        j["norm"] = to_string(k);
        j["side"] = side;
        j["value"] = v;
        j["value_x4"] = v * kMeanBlockLength;
        j["rounded"] = rounded;
        doc.add("TableRow", std::move(j));
    };
    const BoundReport global = lyapunov_bounds(p, BoundFamily::Global, cfg);
    for (const auto& nb : global.per_norm) {
        row("global", nb.norm, "lower", *nb.lower);
        row("global", nb.norm, "upper", *nb.upper);
    }
    const BoundReport improved = lyapunov_bounds(p, BoundFamily::Improved, cfg);
    row("improved", NormKind::L1, "lower", *improved.norm(NormKind::L1).lower);
    row("improved", NormKind::L2, "lower", *improved.norm(NormKind::L2).lower);
    row("improved", NormKind::Linf, "upper", *improved.norm(NormKind::Linf).upper);
    if (!c.no_mc) {
        const McConfig mc{parse_count(c.steps), c.ensembles, c.seed, 1};
        doc.add("McEstimate", mc_payload("lyapunov", p, std::nullopt, mc, lyapunov_mc(p, mc)));
    }
    emit(g, doc);
}

struct SweepCmd {
    std::string mode;
    std::optional<std::string> alpha;
    std::optional<double> beta;
    std::string q = "-3:3:0.5";
    std::string family = "both";
    bool mc = false;
    std::optional<std::string> mc_steps;
    std::uint64_t mc_ensembles = 16;
    std::uint64_t seed = 42;
    int standard_k = 0;
};

struct Point {
    std::string_view mode;
    double alpha;
    double beta;
    std::optional<double> q;
};

void add_point(Document& doc, const Point& pt, std::string_view family, std::string_view norm,
               std::string_view side, double value, std::optional<double> std_error = {}) {
    Json j;
    j["mode"] = pt.mode;
    j["alpha"] = pt.alpha;
    j["beta"] = pt.beta;
    j["q"] = opt(pt.q);
    j["family"] = family;
    j["norm"] = norm;
    j["side"] = side;
    j["value"] = value;
    j["value_x4"] = value * kMeanBlockLength;
    j["std_error"] = opt(std_error);
    doc.add("CurvePoint", std::move(j));
}

void add_bound_points(Document& doc, const Point& pt, const BoundReport& r, double offset,
                      std::string_view lower_side, std::string_view upper_side) {
    const auto fam = to_string(r.family);
    for (const auto& nb : r.per_norm) {
        if (nb.lower) add_point(doc, pt, fam, to_string(nb.norm), lower_side, *nb.lower - offset);
        if (nb.upper) add_point(doc, pt, fam, to_string(nb.norm), upper_side, *nb.upper - offset);
    }
}

void run_sweep(const GlobalOptions& g, const SweepCmd& c) {
    const SeriesConfig cfg = series_config(g);
    const std::string& m = c.mode;
    const bool negative = m == "neg-bounds" || m == "neg-gle";
    const bool gle = m == "gle" || m == "neg-gle";
    if (!(m == "lyap-bounds" || m == "errors" || m == "envelopes" || gle || negative)) {
        throw DomainError("unknown sweep mode '" + m +
                          "' (lyap-bounds, errors, envelopes, gle, neg-bounds, neg-gle)");
    }
    const bool want_mc = c.mc || m == "errors";
    Document doc{make_metadata("sweep " + m, cfg, want_mc ? std::optional(c.seed) : std::nullopt),
                 {}};
    const auto fams = families(c.family);

    if (gle) {
        const double alpha = std::stod(c.alpha.value_or(negative ? "-3" : "1"));
        const double beta = c.beta.value_or(negative ? -alpha : alpha);
        const ShearParams p = ShearParams::make(alpha, beta);
        const McConfig mc{parse_count(c.mc_steps.value_or("200")), c.mc_ensembles, c.seed, 1};
        for (double q : parse_range(c.q)) {
            const Point pt{m, alpha, beta, q};
            for (BoundFamily f : fams) add_bound_points(doc, pt, gle_bounds(q, p, f, cfg), 0.0, "lower", "upper");
            const double rq = std::round(q);
            if (!negative && rq == q && rq >= 1 && rq <= 6) {
                const Interval ex = gle_exact_integer(static_cast<int>(rq), p);
                add_point(doc, pt, "exact", "Linf", "lower", ex.lower);
                add_point(doc, pt, "exact", "Linf", "upper", ex.upper);
            }
            if (c.mc) {
                const GleMcEstimate e = gle_mc(q, p, mc);
                add_point(doc, pt, "mc", "L2", "estimate", e.mean, e.std_error);
                if (e.low_ess) {
                    std::cerr << "warning: q=" << q << ": effective sample size "
                              << e.effective_sample_size << " of " << e.n_samples << '\n';
                }
            }
        }
        emit(g, doc);
        return;
    }

    const std::vector<double> alphas =
        parse_range(c.alpha.value_or(negative ? "-10:-3:1" : "1:10:1"));
    const McConfig mc{parse_count(c.mc_steps.value_or("1e6")), c.mc_ensembles, c.seed, 1};
    for (double alpha : alphas) {
        const double beta = c.beta.value_or(negative ? -alpha : alpha);
        const ShearParams p = ShearParams::make(alpha, beta);
        const Point pt{m, alpha, beta, std::nullopt};
        std::optional<McEstimate> est;
        if (want_mc) {
            est = lyapunov_mc(p, mc);
            add_point(doc, pt, "mc", "L2", "estimate", est->mean, est->std_error);
        }
        const double offset = m == "errors" ? est->mean : 0.0;
        const bool err = m == "errors";
        for (BoundFamily f : fams) {
            const BoundReport r = lyapunov_bounds(p, f, cfg);
            if (m == "envelopes") {
                const auto fam = to_string(r.family);
                for (const auto& nb : r.per_norm) {
                    if (nb.lower && nb.upper) add_point(doc, pt, fam, to_string(nb.norm), "gap", *nb.upper - *nb.lower);
                }
                add_point(doc, pt, fam, "envelope", "lower", r.envelope.lower);
                add_point(doc, pt, fam, "envelope", "upper", r.envelope.upper);
                add_point(doc, pt, fam, "envelope", "gap", r.envelope.gap());
            } else {
                add_bound_points(doc, pt, r, offset, err ? "lower_error" : "lower",
                                 err ? "upper_error" : "upper");
            }
        }
        if (p.regime() == Regime::PositivePair && m != "envelopes") {
            const Interval cor = corollary_explicit_bounds(p);
            add_point(doc, pt, "corollary", "Linf", err ? "lower_error" : "lower", cor.lower - offset);
            add_point(doc, pt, "corollary", "Linf", err ? "upper_error" : "upper", cor.upper - offset);
        }
        if (c.standard_k > 0) {
            const double ek = standard_bound(c.standard_k, p, default_standard_mode(c.standard_k, c.seed));
            add_point(doc, pt, "standard", "L2", err ? "upper_error" : "upper", ek - offset);
        }
    }
    emit(g, doc);
}

struct McCmd {
    double alpha = 0.0;
    double beta = 0.0;
    std::optional<double> q;
    std::optional<std::string> steps;
    std::uint64_t ensembles = 16;
    std::uint64_t seed = 42;
    std::uint64_t renorm_every = 1;
    bool oracle = false;
};

void run_mc(const GlobalOptions& g, const McCmd& c) {
    const SeriesConfig cfg = series_config(g);
    const ShearParams p = ShearParams::make(c.alpha, c.beta);
    const std::string def_steps = c.q ? "200" : (c.oracle ? "250000" : "1e6");
    const McConfig mc{parse_count(c.steps.value_or(def_steps)), c.ensembles, c.seed, c.renorm_every};
    Document doc{make_metadata("mc", cfg, c.seed), {}};
    if (c.oracle) {
        const BlockStats s = block_oracle(p, mc);
        Json j;
        j["alpha"] = p.alpha();
        j["beta"] = p.beta();
        j["n_blocks"] = s.n_blocks;
        j["mean_block_len"] = s.mean_block_len;
        j["p_eq"] = s.p_eq;
        j["p_gt"] = s.p_gt;
        j["p_lt"] = s.p_lt;
        j["lambda"] = s.lambda_est;
        j["std_error"] = s.lambda_std_error;
        doc.add("BlockStats", std::move(j));
    } else if (c.q) {
        const GleMcEstimate e = gle_mc(*c.q, p, mc);
        Json j = mc_payload("gle", p, c.q, mc, e);
        j["ess"] = e.effective_sample_size;
        j["low_ess"] = e.low_ess;
        doc.add("McEstimate", std::move(j));
        if (e.low_ess) {
            std::cerr << "warning: effective sample size " << e.effective_sample_size << " of "
                      << e.n_samples << "; the estimate is dominated by a few trajectories\n";
        }
    } else {
        doc.add("McEstimate", mc_payload("lyapunov", p, std::nullopt, mc, lyapunov_mc(p, mc)));
    }
    emit(g, doc);
}

struct ExactCmd {
    double alpha = 0.0;
    double beta = 0.0;
    std::string q = "1:6:1";
};

void run_gle_exact(const GlobalOptions& g, const ExactCmd& c) {
    const SeriesConfig cfg = series_config(g);
    const ShearParams p = ShearParams::make(c.alpha, c.beta);
    Document doc{make_metadata("gle-exact", cfg, std::nullopt), {}};
    const double ab = p.product();
    const bool integral = p.regime() == Regime::PositivePair && std::floor(ab) == ab && ab < 1e6;
    for (double qd : parse_range(c.q)) {
        if (std::floor(qd) != qd) throw DomainError("gle-exact needs integer q");
        const int q = static_cast<int>(qd);
        const ExactArguments args = gle_exact_arguments(q, p);
        Json j;
        j["exponent"] = "gle_exact";
        j["q"] = q;
        j["alpha"] = p.alpha();
        j["beta"] = p.beta();
        j["lower_arg"] = args.lower;
        j["upper_arg"] = args.upper;
        if (integral) {
            const auto [lo, hi] = gle_exact_arguments_integral(q, static_cast<std::int64_t>(ab));
            j["lower_arg_int"] = lo;
            j["upper_arg_int"] = hi;
        } else {
            j["lower_arg_int"] = nullptr;
            j["upper_arg_int"] = nullptr;
        }
        j["lower"] = std::log(args.lower) / kMeanBlockLength;
        j["upper"] = std::log(args.upper) / kMeanBlockLength;
        j["lower_x4"] = std::log(args.lower);
        j["upper_x4"] = std::log(args.upper);
        doc.add("BoundReport", std::move(j));
    }
    emit(g, doc);
}

struct EntropyCmd {
    double alpha = 0.0;
    double beta = 0.0;
};

void run_entropy(const GlobalOptions& g, const EntropyCmd& c) {
    const SeriesConfig cfg = series_config(g);
    const ShearParams p = ShearParams::make(c.alpha, c.beta);
    const Interval e = entropy_bounds(p);
    Document doc{make_metadata("entropy", cfg, std::nullopt), {}};
    Json j;
    j["exponent"] = "entropy";
    j["alpha"] = p.alpha();
    j["beta"] = p.beta();
    j["lower"] = e.lower;
    j["upper"] = e.upper;
    j["lower_x4"] = e.lower * kMeanBlockLength;
    j["upper_x4"] = e.upper * kMeanBlockLength;
    doc.add("BoundReport", std::move(j));
    emit(g, doc);
}

struct StandardCmd {
    std::string k = "12";
    double alpha = 0.0;
    double beta = 0.0;
    std::string mode = "auto";
    std::string samples = "1e5";
    std::uint64_t seed = 42;
};

void run_standard(const GlobalOptions& g, const StandardCmd& c) {
    const SeriesConfig cfg = series_config(g);
    const ShearParams p = ShearParams::make(c.alpha, c.beta);
    Document doc{make_metadata("standard-bound", cfg, c.seed), {}};
    for (double kd : parse_range(c.k)) {
        if (std::floor(kd) != kd) throw DomainError("k must be an integer");
        const int k = static_cast<int>(kd);
        StandardBoundMode mode;
        if (c.mode == "auto") {
            mode = default_standard_mode(k, c.seed);
        } else if (c.mode == "exhaustive") {
            mode = Exhaustive{};
        } else if (c.mode == "sampled") {
            mode = Sampled{parse_count(c.samples), c.seed};
        } else {
            throw DomainError("unknown mode '" + c.mode + "' (auto, exhaustive, sampled)");
        }
        Json j;
        j["k"] = k;
        j["alpha"] = p.alpha();
        j["beta"] = p.beta();
        j["mode"] = std::holds_alternative<Exhaustive>(mode) ? "exhaustive" : "sampled";
        j["n_samples"] = std::holds_alternative<Sampled>(mode) ? Json(std::get<Sampled>(mode).n_samples)
                                                                : Json(std::uint64_t{1} << k);
        j["value"] = standard_bound(k, p, mode);
        doc.add("StandardBound", std::move(j));
    }
    emit(g, doc);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bounds and estimates for Lyapunov exponents of random shear products"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", shear::tool_version());

    GlobalOptions g;
    app.add_option("--format", g.format, "text, json or csv")
        ->check(CLI::IsMember({"text", "json", "csv"}))
        ->capture_default_str();
    app.add_option("--config", g.config, "key = value file (max_index, tail_tol, check_tail)");
    app.add_option("--output,-o", g.output, "write to file (relative to $SHEARLYAP_OUTPUT_DIR if set)");
    app.add_option("--max-index", g.max_index, "series truncation A (default 64)");
    app.add_option("--tail-tol", g.tail_tol, "series tail tolerance (default 1e-12)");
    app.add_flag("--no-tail-check", g.no_tail_check, "plain truncation at --max-index");
    app.add_option("--threads", g.threads, "OpenMP threads (0 = runtime default)");

    BoundsCmd bounds;
    auto* sb = app.add_subcommand("bounds", "Lyapunov or GLE bounds for one (alpha, beta)");
    sb->add_option("--alpha", bounds.alpha)->required();
    sb->add_option("--beta", bounds.beta)->required();
    sb->add_option("--family", bounds.family, "global, improved or both")->capture_default_str();
    sb->add_option("--norms", bounds.norms, "comma list of L1, L2, Linf")->capture_default_str();
    sb->add_option("--q", bounds.q, "GLE order; omit for the Lyapunov exponent");
    sb->add_option("--tol", g.tail_tol, "series tail tolerance");

    Table1Cmd table1;
    auto* st = app.add_subcommand("table1", "bounds at alpha = beta = 1 with a Monte Carlo estimate");
    st->add_flag("--no-mc", table1.no_mc);
    st->add_option("--mc-steps", table1.steps)->capture_default_str();
    st->add_option("--mc-ensembles", table1.ensembles)->capture_default_str();
    st->add_option("--seed", table1.seed)->capture_default_str();

    SweepCmd sweep;
    auto* ss = app.add_subcommand("sweep", "bounds over a parameter range");
    ss->add_option("--mode", sweep.mode, "lyap-bounds, errors, envelopes, gle, neg-bounds, neg-gle")
        ->required();
    ss->add_option("--alpha", sweep.alpha, "alpha range start:stop:step (gle modes: one value)");
    ss->add_option("--beta", sweep.beta, "fixed beta (default alpha, or -alpha for neg modes)");
    ss->add_option("--q", sweep.q, "q range for gle modes")->capture_default_str();
    ss->add_option("--family", sweep.family)->capture_default_str();
    ss->add_flag("--mc", sweep.mc, "add Monte Carlo estimates");
    ss->add_option("--mc-steps", sweep.mc_steps);
    ss->add_option("--mc-ensembles", sweep.mc_ensembles)->capture_default_str();
    ss->add_option("--seed", sweep.seed)->capture_default_str();
    ss->add_option("--standard-k", sweep.standard_k, "add the length-k standard bound");

    McCmd mc;
    auto* sm = app.add_subcommand("mc", "Monte Carlo estimate of lambda or ell(q)");
    sm->add_option("--alpha", mc.alpha)->required();
    sm->add_option("--beta", mc.beta)->required();
    sm->add_option("--q", mc.q, "GLE order");
    sm->add_option("--steps", mc.steps, "steps per trajectory (blocks with --oracle)");
    sm->add_option("--ensembles", mc.ensembles)->capture_default_str();
    sm->add_option("--seed", mc.seed)->capture_default_str();
    sm->add_option("--renorm-every", mc.renorm_every)->capture_default_str();
    sm->add_flag("--oracle", mc.oracle, "block-level simulation with case frequencies");

    ExactCmd exact;
    auto* se = app.add_subcommand("gle-exact", "closed-form GLE bounds for integer q in [1, 6]");
    se->add_option("--alpha", exact.alpha)->required();
    se->add_option("--beta", exact.beta)->required();
    se->add_option("--q", exact.q)->capture_default_str();

    EntropyCmd entropy;
    auto* sn = app.add_subcommand("entropy", "topological entropy bounds");
    sn->add_option("--alpha", entropy.alpha)->required();
    sn->add_option("--beta", entropy.beta)->required();

    StandardCmd standard;
    auto* sk = app.add_subcommand("standard-bound", "E_k = (1/k) E log ||C||_2 over length-k products");
    sk->add_option("--k", standard.k, "k or k range")->capture_default_str();
    sk->add_option("--alpha", standard.alpha)->required();
    sk->add_option("--beta", standard.beta)->required();
    sk->add_option("--mode", standard.mode, "auto, exhaustive or sampled")->capture_default_str();
    sk->add_option("--samples", standard.samples)->capture_default_str();
    sk->add_option("--seed", standard.seed)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (g.threads > 0) omp_set_num_threads(g.threads);
        if (*sb) run_bounds(g, bounds);
        if (*st) run_table1(g, table1);
        if (*ss) run_sweep(g, sweep);
        if (*sm) run_mc(g, mc);
        if (*se) run_gle_exact(g, exact);
        if (*sn) run_entropy(g, entropy);
        if (*sk) run_standard(g, standard);
    } catch (const shear::DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const shear::ConvergenceError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: invalid number: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 4;
    }
    return 0;
}
