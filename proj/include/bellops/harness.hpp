#pragma once

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "bellops/angles.hpp"
#include "bellops/bounds.hpp"
#include "bellops/coefficients.hpp"
#include "bellops/coplanar.hpp"
#include "bellops/errors.hpp"
#include "bellops/lhv.hpp"
#include "bellops/rng.hpp"
#include "bellops/serialize.hpp"
#include "bellops/signs.hpp"
#include "bellops/statevector.hpp"
#include "bellops/version.hpp"
#include "bellops/werner_wolf.hpp"

namespace bellops {

enum class CampaignKind { coplanar_mc, ww_mc, expectation_mc, lhv_sweep, mk_baseline };
enum class StateSelector { ghz, random, eigen };
enum class OutputFormat { csv, json };

inline CampaignKind campaign_kind_from_string(const std::string& s) {
    if (s == "coplanar_mc") return CampaignKind::coplanar_mc;
    if (s == "ww_mc") return CampaignKind::ww_mc;
    if (s == "expectation_mc") return CampaignKind::expectation_mc;
    if (s == "lhv_sweep") return CampaignKind::lhv_sweep;
    if (s == "mk_baseline") return CampaignKind::mk_baseline;
    throw config_error("unknown campaign kind: " + s);
}

inline std::string to_string(CampaignKind k) {
    switch (k) {
        case CampaignKind::coplanar_mc: return "coplanar_mc";
        case CampaignKind::ww_mc: return "ww_mc";
        case CampaignKind::expectation_mc: return "expectation_mc";
        case CampaignKind::lhv_sweep: return "lhv_sweep";
        case CampaignKind::mk_baseline: return "mk_baseline";
    }
    return "?";
}

inline StateSelector state_selector_from_string(const std::string& s) {
    if (s == "ghz") return StateSelector::ghz;
    if (s == "random") return StateSelector::random;
    if (s == "eigen") return StateSelector::eigen;
    throw config_error("unknown state selector: " + s);
}

inline std::string to_string(StateSelector s) {
    switch (s) {
        case StateSelector::ghz: return "ghz";
        case StateSelector::random: return "random";
        case StateSelector::eigen: return "eigen";
    }
    return "?";
}

inline OutputFormat output_format_from_string(const std::string& s) {
    if (s == "csv") return OutputFormat::csv;
    if (s == "json") return OutputFormat::json;
    throw config_error("unknown output format: " + s);
}

inline std::string to_string(OutputFormat f) {
    return f == OutputFormat::csv ? "csv" : "json";
}

struct CampaignConfig {
    CampaignKind kind = CampaignKind::coplanar_mc;
    int n = 2;
    int r = 2;
    std::int64_t trials = 1;
    std::uint64_t master_seed = 0;
    CoefficientScheme scheme = CoefficientScheme::uniform;
    std::vector<double> explicit_values;    // explicit scheme: signed values, r^n of them
    OptimizerConfig optimizer;              // per-trial seed is derived from the trial seed
    StateSelector state = StateSelector::ghz; // expectation_mc only
    std::optional<AngleConfig> warm_start;  // extra optimizer start when present
    std::string output_path;                // empty writes to stdout
    OutputFormat format = OutputFormat::csv;
    int threads = 1;
    bool timing = false; // measured elapsed_ms breaks byte-level reproducibility
};

struct TrialRecord {
    std::int64_t trial_index = 0;
    std::uint64_t trial_seed = 0;
    double norm_estimate = 0.0;
    double bound = 0.0;
    std::optional<double> lhv_value;
    bool passed = false;
    std::int64_t elapsed_ms = 0;
};

struct CampaignSummary {
    std::int64_t trials = 0;
    double empirical_pass_fraction = 0.0;
    double paper_bound_fraction = 0.0;
    double norm_min = 0.0, norm_p50 = 0.0, norm_p95 = 0.0, norm_max = 0.0;
    double mk_reference = 0.0; // 2^((n-1)/2)
};

inline void validate_config(const CampaignConfig& cfg) {
    if (cfg.trials < 1) throw config_error("trials must be >= 1");
    if (cfg.threads < 1) throw config_error("threads must be >= 1");
    if (cfg.n < 2) throw config_error("n must be >= 2");
    if (cfg.r < 1) throw config_error("r must be >= 1");
    if (cfg.kind == CampaignKind::ww_mc && cfg.r != 2)
        throw config_error("ww_mc requires r = 2");
    if (cfg.kind == CampaignKind::mk_baseline && cfg.r != 2)
        throw config_error("mk_baseline requires r = 2");
    if (cfg.scheme == CoefficientScheme::explicit_values) {
        auto expected = static_cast<std::size_t>(checked_pow(cfg.r, cfg.n));
        if (cfg.explicit_values.size() != expected)
            throw config_error("explicit scheme needs r^n coefficient values");
    }
    if (cfg.warm_start &&
        (cfg.warm_start->sites() != cfg.n || cfg.warm_start->settings() != cfg.r))
        throw config_error("warm_start dimensions must match n and r");
}

// The lower-bound fraction of sign choices the tested ceiling is proven to
// cover: 1 - 1/(n^2 e^(rn)) for the coplanar/classical runs, 1 - 1/(2^(2n) e)
// for the two-setting extremal family, 1 - 1/(4n^2 e^(2rn)) for fixed-state
// expectations.
inline double paper_bound_fraction(const CampaignConfig& cfg) {
    switch (cfg.kind) {
        case CampaignKind::coplanar_mc:
        case CampaignKind::lhv_sweep:
        case CampaignKind::mk_baseline:
            return tail_probability(cfg.n, cfg.r);
        case CampaignKind::ww_mc:
            return 1.0 - std::exp(-1.0) / std::ldexp(1.0, 2 * cfg.n);
        case CampaignKind::expectation_mc:
            return 1.0 - std::exp(-2.0 * cfg.r * cfg.n) /
                             (4.0 * double(cfg.n) * double(cfg.n));
    }
    return 0.0;
}

namespace detail {

inline BellSpec build_trial_spec(const CampaignConfig& cfg, std::uint64_t trial_seed) {
    if (cfg.scheme == CoefficientScheme::explicit_values)
        return BellSpec(signed_coefficients(cfg.n, cfg.r, cfg.explicit_values));
    CoefficientTensor tensor = make_coefficients(cfg.scheme, cfg.n, cfg.r, trial_seed);
    return BellSpec(apply_signs(tensor, sample_signs(trial_seed, cfg.n, cfg.r)));
}

inline QuantumState build_trial_state(const CampaignConfig& cfg, const BellSpec& spec,
                                      std::uint64_t trial_seed) {
    switch (cfg.state) {
        case StateSelector::ghz: return ghz(cfg.n);
        case StateSelector::random: {
            // GHZ rotated by an independent Haar-random one-qubit unitary
            // per site (columns of a random Gaussian 2-vector pair,
            // orthonormalized by construction).
            QuantumState s = ghz(cfg.n);
            CounterRng rng(tagged_key(trial_seed, seed_tag::state));
            for (int j = 0; j < cfg.n; ++j) {
                auto [a, b] = rng.next_gaussian_pair();
                auto [c, d] = rng.next_gaussian_pair();
                std::complex<double> alpha(a, b), beta(c, d);
                double scale = 1.0 / std::sqrt(std::norm(alpha) + std::norm(beta));
                alpha *= scale;
                beta *= scale;
                s = apply_one_site(s, j, {alpha, -std::conj(beta), beta, std::conj(alpha)});
            }
            return s;
        }
        case StateSelector::eigen: {
            AngleConfig angles = random_angles(cfg.n, cfg.r, trial_seed);
            auto records = eigen_spectrum(spec, angles);
            const EigenRecord* top = &records.front();
            for (const auto& rec : records)
                if (rec.magnitude > top->magnitude) top = &rec;
            return eigenvector(top->omega, canonical_angle(-top->phase));
        }
    }
    throw config_error("bad state selector");
}

inline TrialRecord run_trial(const CampaignConfig& cfg, std::int64_t index) {
    TrialRecord rec;
    rec.trial_index = index;
    rec.trial_seed = derive_seed(cfg.master_seed, std::uint64_t(index));
    auto start_time = std::chrono::steady_clock::now();

    OptimizerConfig opt = cfg.optimizer;
    opt.seed = rec.trial_seed;
    std::vector<AngleConfig> warm;
    if (cfg.warm_start) warm.push_back(*cfg.warm_start);

    switch (cfg.kind) {
        case CampaignKind::coplanar_mc: {
            BellSpec spec = build_trial_spec(cfg, rec.trial_seed);
            rec.norm_estimate = max_norm_over_angles(spec, opt, warm).value;
            rec.bound = prop_bound(PropBound::prop1, cfg.n, cfg.r);
            break;
        }
        case CampaignKind::ww_mc: {
            SignFunction f = sample_f(rec.trial_seed, cfg.n);
            if (opt.starts == 0 && warm.empty()) {
                // norm at one sampled direction set per trial
                AngleConfig angles = random_angles(cfg.n, 2, rec.trial_seed);
                rec.norm_estimate = norm_fixed_angles(ww_spec(f), angles);
            } else {
                rec.norm_estimate = ww_max_norm_over_angles(f, opt, warm).value;
            }
            rec.bound = prop_bound(PropBound::prop3, cfg.n, 2);
            break;
        }
        case CampaignKind::expectation_mc: {
            BellSpec spec = build_trial_spec(cfg, rec.trial_seed);
            QuantumState state = build_trial_state(cfg, spec, rec.trial_seed);
            std::vector<PolarConfig> warm_polar;
            for (const auto& w : warm) warm_polar.push_back(embed_coplanar(w));
            rec.norm_estimate = max_expectation_over_angles(spec, state, opt, warm_polar).value;
            rec.bound = prop_bound(PropBound::prop2, cfg.n, cfg.r);
            break;
        }
        case CampaignKind::lhv_sweep: {
            BellSpec spec = build_trial_spec(cfg, rec.trial_seed);
            LhvResult res = cfg.n * cfg.r <= max_lhv_bits
                                ? lhv_norm_exact(spec)
                                : lhv_norm_heuristic(spec, 32, rec.trial_seed);
            rec.norm_estimate = res.value;
            rec.lhv_value = res.value;
            rec.bound = prop_bound(PropBound::prop1, cfg.n, cfg.r);
            break;
        }
        case CampaignKind::mk_baseline: {
            MKSpec mk = mk_spec(cfg.n);
            rec.norm_estimate = norm_fixed_angles(mk.spec, mk.optimal_angles);
            LhvResult res = 2 * cfg.n <= max_lhv_bits
                                ? lhv_norm_exact(mk.spec)
                                : lhv_norm_heuristic(mk.spec, 32, rec.trial_seed);
            rec.lhv_value = res.value;
            rec.bound = prop_bound(PropBound::prop1, cfg.n, 2);
            break;
        }
    }

    rec.passed = rec.norm_estimate <= rec.bound;
    if (cfg.timing)
        rec.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - start_time)
                             .count();
    return rec;
}

inline double nearest_rank(const std::vector<double>& sorted, double q) {
    auto idx = std::size_t(std::llround(q * double(sorted.size() - 1)));
    return sorted[std::min(idx, sorted.size() - 1)];
}

} // namespace detail

struct CampaignResult {
    CampaignSummary summary;
    std::vector<TrialRecord> records; // in trial_index order
};

// Runs all trials on a fixed-size pool. Each trial's seed depends only on
// (master_seed, trial_index) and records land in preassigned slots, so the
// result is identical for any thread count.
inline CampaignResult run_campaign(const CampaignConfig& cfg) {
    validate_config(cfg);
    std::vector<TrialRecord> records(std::size_t(cfg.trials));

    const int workers = int(std::min<std::int64_t>(cfg.threads, cfg.trials));
    std::atomic<std::int64_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto body = [&] {
        for (;;) {
            std::int64_t i = next.fetch_add(1);
            if (i >= cfg.trials || failed.load()) return;
            try {
                records[std::size_t(i)] = detail::run_trial(cfg, i);
            } catch (...) {
                std::scoped_lock lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                failed.store(true);
                return;
            }
        }
    };
    if (workers <= 1) {
        body();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(std::size_t(workers));
        for (int t = 0; t < workers; ++t) pool.emplace_back(body);
        for (auto& t : pool) t.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    CampaignResult out;
    out.records = std::move(records);
    CampaignSummary& s = out.summary;
    s.trials = cfg.trials;
    std::vector<double> norms;
    norms.reserve(out.records.size());
    std::int64_t passed = 0;
    for (const auto& rec : out.records) {
        norms.push_back(rec.norm_estimate);
        passed += rec.passed ? 1 : 0;
    }
    std::sort(norms.begin(), norms.end());
    s.empirical_pass_fraction = double(passed) / double(cfg.trials);
    s.paper_bound_fraction = paper_bound_fraction(cfg);
    s.norm_min = norms.front();
    s.norm_p50 = detail::nearest_rank(norms, 0.50);
    s.norm_p95 = detail::nearest_rank(norms, 0.95);
    s.norm_max = norms.back();
    s.mk_reference = std::exp2(0.5 * (cfg.n - 1));
    return out;
}

// ---- result emission ----

namespace detail {

inline std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

} // namespace detail

inline std::string render_csv(const std::vector<TrialRecord>& records, const CampaignConfig& cfg) {
    std::string out = "trial_index,trial_seed,n,r,norm_estimate,bound,lhv_value,passed,elapsed_ms\n";
    for (const auto& rec : records) {
        out += std::to_string(rec.trial_index);
        out += ',';
        out += std::to_string(rec.trial_seed);
        out += ',';
        out += std::to_string(cfg.n);
        out += ',';
        out += std::to_string(cfg.r);
        out += ',';
        out += detail::format_double(rec.norm_estimate);
        out += ',';
        out += detail::format_double(rec.bound);
        out += ',';
        if (rec.lhv_value) out += detail::format_double(*rec.lhv_value);
        out += ',';
        out += rec.passed ? '1' : '0';
        out += ',';
        out += std::to_string(rec.elapsed_ms);
        out += '\n';
    }
    return out;
}

// Config echo for result files. Execution knobs (threads, output path,
// format, timing) are deliberately omitted: results must be byte-identical
// across those, and the echo defines result identity.
inline void to_json(ordered_json& j, const CampaignConfig& cfg) {
    j = ordered_json{{"kind", to_string(cfg.kind)},
                     {"n", cfg.n},
                     {"r", cfg.r},
                     {"trials", cfg.trials},
                     {"master_seed", cfg.master_seed},
                     {"scheme", to_string(cfg.scheme)}};
    if (cfg.scheme == CoefficientScheme::explicit_values)
        j["explicit_values"] = cfg.explicit_values;
    ordered_json opt;
    to_json(opt, cfg.optimizer);
    j["optimizer"] = std::move(opt);
    if (cfg.kind == CampaignKind::expectation_mc) j["state"] = to_string(cfg.state);
    if (cfg.warm_start) {
        ordered_json warm;
        to_json(warm, *cfg.warm_start);
        j["warm_start"] = std::move(warm);
    }
}

inline void from_json(const json& j, CampaignConfig& cfg) {
    cfg = CampaignConfig{};
    if (j.contains("kind")) cfg.kind = campaign_kind_from_string(j.at("kind").get<std::string>());
    if (j.contains("n")) j.at("n").get_to(cfg.n);
    if (j.contains("r")) j.at("r").get_to(cfg.r);
    if (j.contains("trials")) j.at("trials").get_to(cfg.trials);
    if (j.contains("master_seed")) j.at("master_seed").get_to(cfg.master_seed);
    if (j.contains("scheme"))
        cfg.scheme = scheme_from_string(j.at("scheme").get<std::string>());
    if (j.contains("explicit_values")) j.at("explicit_values").get_to(cfg.explicit_values);
    if (j.contains("optimizer")) cfg.optimizer = j.at("optimizer").get<OptimizerConfig>();
    if (j.contains("state"))
        cfg.state = state_selector_from_string(j.at("state").get<std::string>());
    if (j.contains("warm_start")) cfg.warm_start = j.at("warm_start").get<AngleConfig>();
    if (j.contains("output_path")) j.at("output_path").get_to(cfg.output_path);
    if (j.contains("format"))
        cfg.format = output_format_from_string(j.at("format").get<std::string>());
    if (j.contains("threads")) j.at("threads").get_to(cfg.threads);
    if (j.contains("timing")) j.at("timing").get_to(cfg.timing);
}

inline void to_json(ordered_json& j, const TrialRecord& rec) {
    j = ordered_json{{"trial_index", rec.trial_index},
                     {"trial_seed", rec.trial_seed},
                     {"norm_estimate", rec.norm_estimate},
                     {"bound", rec.bound},
                     {"lhv_value", rec.lhv_value ? ordered_json(*rec.lhv_value)
                                                 : ordered_json(nullptr)},
                     {"passed", rec.passed},
                     {"elapsed_ms", rec.elapsed_ms}};
}

inline void to_json(ordered_json& j, const CampaignSummary& s) {
    j = ordered_json{{"trials", s.trials},
                     {"empirical_pass_fraction", s.empirical_pass_fraction},
                     {"paper_bound_fraction", s.paper_bound_fraction},
                     {"norm_min", s.norm_min},
                     {"norm_p50", s.norm_p50},
                     {"norm_p95", s.norm_p95},
                     {"norm_max", s.norm_max},
                     {"mk_reference", s.mk_reference}};
}

inline std::string render_json(const CampaignResult& result, const CampaignConfig& cfg) {
    ordered_json j;
    j["version"] = version;
    j["log_base"] = log_base;
    // Norm estimates are optimizer lower bounds; the tested claim is an
    // upper bound, so passes are conservative in the right direction.
    j["norm_estimates_are"] = "attained lower bounds";
    ordered_json config;
    to_json(config, cfg);
    j["config"] = std::move(config);
    ordered_json summary;
    to_json(summary, result.summary);
    j["summary"] = std::move(summary);
    ordered_json records = ordered_json::array();
    for (const auto& rec : result.records) {
        ordered_json r;
        to_json(r, rec);
        records.push_back(std::move(r));
    }
    j["records"] = std::move(records);
    return j.dump(2) + "\n";
}

inline std::string render_results(const CampaignResult& result, const CampaignConfig& cfg) {
    return cfg.format == OutputFormat::csv ? render_csv(result.records, cfg)
                                           : render_json(result, cfg);
}

// Writes to cfg.output_path, or stdout when the path is empty.
inline void emit_results(const CampaignResult& result, const CampaignConfig& cfg) {
    std::string payload = render_results(result, cfg);
    if (cfg.output_path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(cfg.output_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + cfg.output_path);
    out.write(payload.data(), std::streamsize(payload.size()));
    if (!out) throw std::runtime_error("write failed: " + cfg.output_path);
}

} // namespace bellops
