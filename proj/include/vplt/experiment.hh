/* experiment.hh -- seeded experiment runner with CSV/JSON reports */

#ifndef VPLT_EXPERIMENT_HH_
#define VPLT_EXPERIMENT_HH_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "vplt/stream_tester.hh"
#include "vplt/vpa.hh"

namespace vplt {

/// One experiment: a generator, a list of stream lengths, and seeded trials
/// per length. Trial i uses seed base_seed + i (i counted across the whole
/// run), so reports are reproducible from the config alone.
struct ExperimentConfig {
    std::string vpa_file;       // empty: built-in Disj machine
    std::string generator;      // disj-member | disj-far | random-member | random-balanced
    std::size_t j = 0;          // Disj pairs; 0 with j_frac unset means j = 1
    std::optional<double> j_frac; // j = ceil(j_frac * n), overrides j
    std::vector<std::uint64_t> n_values; // ascending
    double epsilon = 0.1;
    double eta = 1.0 / 3.0;
    std::size_t trials = 1;
    std::uint64_t base_seed = 0;
    Profile profile = Profile::Desk;
    std::optional<std::uint64_t> T_override, k_override;
    bool exact_mode = false;
    int workers = 0;            // 0: library default
    std::string csv_path;       // optional output files
    std::string json_path;

    static ExperimentConfig from_json(const nlohmann::json& j);
};

struct TrialResult {
    std::uint64_t n = 0;
    std::uint64_t seed = 0;
    std::string verdict;
    std::size_t stored_peak = 0;
    std::size_t stack_max = 0;
    std::uint64_t t = 0, k = 0, T = 0;
    double ms = 0;
};

/// Least-squares fit of stored_peak ~ c * (log2 n)^p over per-n means.
struct MemoryFit {
    bool ok = false;
    double c = 0;
    double p = 0;
};

struct ExperimentReport {
    std::vector<TrialResult> trials; // in (n, seed) order
    std::map<std::uint64_t, double> accept_rate; // per n
    MemoryFit fit;

    std::string to_csv() const; // columns: n,seed,verdict,stored_peak,stack_max,t,k,T,ms
    nlohmann::json to_json(const ExperimentConfig& cfg) const;
};

/// Runs all (n, trial) cells, concurrently when workers allow; each trial
/// owns its generator RNG and tester. Generator or tester failures carry the
/// trial index in the exception message.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

} // namespace vplt

#endif // VPLT_EXPERIMENT_HH_
