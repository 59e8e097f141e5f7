// experiment.hpp
// End-to-end runs: build A_n by a subset rule, partition it, embed and
// decompose the good classes, aggregate Delta_x, and evaluate the Hoelder
// chain over G + G against the exact |A_n + A_n|. Also the random-host
// simulation and the set-spec mini-language used by the CLI.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "primesum/ntheory.hpp"
#include "primesum/report.hpp"
#include "primesum/zm_sumsets.hpp"

namespace primesum::experiment {

using ntheory::u64;

struct SubsetRule {
    enum class Kind { AllPrimes, ResidueFilter, RandomThinning };
    Kind kind = Kind::AllPrimes;
    u64 b0 = 1, m0 = 1;   // residue-filter: p = b0 mod m0
    double density = 1;   // random-thinning: keep probability
    u64 seed = 0;         // random-thinning

    // "all", "residue:b0:m0", "random:delta:seed". ConfigError otherwise.
    static SubsetRule parse(const std::string& s);
    std::string str() const;
};

struct ExperimentConfig {
    u64 n = 100000;
    u64 W = 3;
    double delta = 1;  // target density, enters the default eps0
    SubsetRule rule;
    double eps = 0.1;
    std::optional<double> sigma;  // default eps / 20
    std::optional<double> eps0;   // default min(sigma^6 delta^4 / 400, 0.01)
    unsigned k = 3;               // Hoelder exponent of the final chain
    u64 seed = 0;
    report::Format output_format = report::Format::Csv;

    double sigma_value() const;
    double eps0_value() const;
    // ConfigError with bounds when the run is infeasible or outside the caps.
    void validate() const;
};

inline constexpr u64 kMaxN = 10'000'000;
inline constexpr u64 kMaxExactSumsetN = 1'000'000;
inline constexpr double kMaxWork = 1e9;

// The primes <= n selected by the rule, ascending.
std::vector<u64> build_subset(const SubsetRule& rule, const ntheory::PrimeTable& primes);

report::FinalReport run_pipeline(const ExperimentConfig& cfg);

struct RandomSetExperiment {
    u64 N = 1000;
    double p = 0.5;
    double alpha = 0.5;
    double beta = 0.5;
    u64 trials = 10;
    u64 seed = 0;
    unsigned k = 2;  // Hoelder exponent of the per-trial cross-check
};

struct TrialResult {
    u64 trial = 0;
    u64 host_size = 0;   // |S|
    u64 subset_size = 0; // |A|
    u64 sumset = 0;      // |A + A| in Z_N
    double fraction = 0;
    double holder_fraction = 0;  // Hoelder lower bound / N
    bool skipped = false;
};

struct RandomHostSummary {
    RandomSetExperiment exp;
    double theta = 0;  // p = N^{-theta}
    std::vector<TrialResult> trials;
    u64 skipped = 0;
    double mean = 0, min = 0, max = 0;  // over non-skipped trials
    u64 reached_beta = 0;               // trials with fraction >= beta
};

// ConfigError outside N <= 1e6, trials <= 1e4, p in (0, 1], alpha in (0, 1],
// beta in (0, 1). InvariantViolation if a trial's sumset is below its Hoelder
// bound.
RandomHostSummary simulate_random_host(const RandomSetExperiment& exp);
report::FinalReport random_host_report(const RandomHostSummary& s);

// Set specs for subsets of Z_m: "units", "all", "list:a,b,c", "range:a:b"
// (a <= x < b), "units-mod:b0:m0", "random:p:seed", "random-units:p:seed".
sumsets::SubsetOfZm parse_set_spec(const std::string& spec, const ntheory::FactoredModulus& m);

}  // namespace primesum::experiment
