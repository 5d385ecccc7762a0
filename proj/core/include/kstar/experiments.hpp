// Seeded Monte Carlo campaigns over random regular graphs.
//
// Trial seeds are derive_seed({master, n, trial}) (existence, leaf) or
// derive_seed({master, sample}) (cycles), so any single record can be
// regenerated on its own. Records are ordered by (n, trial) whatever the
// thread count. The ms column is 0 unless timing is requested, which keeps
// the CSV byte-identical across runs.

#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "kstar/decompose.hpp"

namespace kstar {

inline constexpr double kWilsonZ95 = 1.959963984540054;

struct Interval {
  double lo = 0;
  double hi = 0;
};
Interval wilson_interval(long successes, long trials, double z = kWilsonZ95);

struct TrialConfig {
  int d = 0;
  int k = 0;
  std::vector<long> n_list;
  int trials = 0;
  std::uint64_t master_seed = 0;
  SolveOptions solver;
  bool simple_only = true;
  unsigned threads = 0;
  bool record_time = false;
  int max_tries = 100000;
};

struct TrialRecord {
  long n = 0;
  int trial = 0;
  std::uint64_t seed = 0;
  bool simple = false;
  std::array<long, 4> x{};
  bool found = false;
  std::string status;  // found | proven-none | unknown | not-simple
  double ms = 0;
};

struct Frequency {
  long n = 0;
  long trials = 0;
  long successes = 0;
  long unknown = 0;
  double frequency = 0;
  Interval interval;
};

struct ExistenceResult {
  std::vector<TrialRecord> records;
  std::vector<Frequency> summary;
};

// Validates d, k, trials and 2k | dn for every n; std::invalid_argument / std::domain_error.
void validate(const TrialConfig& config);
ExistenceResult run_existence(const TrialConfig& config);
// Recomputes the per-n summary from records alone.
std::vector<Frequency> summarize(const std::vector<TrialRecord>& records);

struct CycleStat {
  int j = 0;
  double mean = 0;
  double variance = 0;
  double lambda = 0;
  double std_error = 0;  // sqrt(variance / trials)
  double z = 0;          // (mean - lambda) / std_error
};

struct CycleResult {
  int d = 0;
  long n = 0;
  int trials = 0;
  std::vector<CycleStat> stats;
  long simple = 0;
  double simple_frequency = 0;
  double simple_expected = 0;  // exp(-(d^2 - 1) / 4)
  double simple_std_error = 0;
  std::vector<std::vector<long>> samples;  // X_1..X_m per sample
};

// Pairing samples (not conditioned on simplicity); trials >= 100.
CycleResult run_cycle_poisson(int d, long n, int trials, int m, std::uint64_t seed, unsigned threads = 0);

struct LeafRecord {
  int trial = 0;
  std::uint64_t seed = 0;
  bool condition = false;  // independent set of size (2k-d)n/(2k) exists
  bool found = false;
  std::string status;
  double ms = 0;
};

struct LeafResult {
  int d = 0;
  int k = 0;
  long n = 0;
  long required = 0;
  std::vector<LeafRecord> records;
  Frequency condition;
  Frequency decomposition;
  bool implication_holds = true;  // found => condition on every trial
};

LeafResult run_leaf_condition(int d, int k, long n, int trials, std::uint64_t seed, const SolveOptions& solver,
                              unsigned threads = 0, int cap = kDefaultIndependenceCap, bool record_time = false);

// Decimal rendering used by every CSV/JSON writer: shortest round-trip form.
std::string format_double(double x);

void write_existence_csv(std::ostream& out, const std::vector<TrialRecord>& records);
void write_cycles_csv(std::ostream& out, const CycleResult& r);
void write_leaf_csv(std::ostream& out, const LeafResult& r);

nlohmann::json to_json(const Frequency& f);
nlohmann::json summary_json(const ExistenceResult& r, const TrialConfig& config);
nlohmann::json summary_json(const CycleResult& r);
nlohmann::json summary_json(const LeafResult& r);

}  // namespace kstar
