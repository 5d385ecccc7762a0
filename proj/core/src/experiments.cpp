#include "kstar/experiments.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>

#include "kstar/moments.hpp"
#include "kstar/pairing.hpp"
#include "kstar/parallel.hpp"
#include "kstar/random.hpp"

namespace kstar {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

Frequency make_frequency(long n, long trials, long successes, long unknown) {
  Frequency f;
  f.n = n;
  f.trials = trials;
  f.successes = successes;
  f.unknown = unknown;
  f.frequency = trials > 0 ? double(successes) / double(trials) : 0.0;
  f.interval = wilson_interval(successes, trials);
  return f;
}

std::string bool01(bool b) { return b ? "1" : "0"; }

}  // namespace

Interval wilson_interval(long successes, long trials, double z) {
  if (trials <= 0) return {0, 1};
  if (successes < 0 || successes > trials) throw std::invalid_argument("wilson_interval: successes out of range");
  const double nn = double(trials);
  const double p = double(successes) / nn;
  const double z2 = z * z;
  const double denom = 1 + z2 / nn;
  const double centre = (p + z2 / (2 * nn)) / denom;
  const double half = z / denom * std::sqrt(p * (1 - p) / nn + z2 / (4 * nn * nn));
  // Pin the boundary cases so rounding cannot move them off 0 or 1.
  return {successes == 0 ? 0.0 : std::max(0.0, centre - half), successes == trials ? 1.0 : std::min(1.0, centre + half)};
}

void validate(const TrialConfig& c) {
  if (c.d < 1 || c.k < 1) throw std::invalid_argument("d and k must be positive");
  if (c.trials < 1) throw std::invalid_argument("trials must be positive");
  if (c.n_list.empty()) throw std::invalid_argument("n list is empty");
  for (long n : c.n_list) require_divisible(n, c.d, c.k);
}

ExistenceResult run_existence(const TrialConfig& config) {
  validate(config);
  ExistenceResult out;
  const std::size_t per_n = static_cast<std::size_t>(config.trials);
  out.records.resize(config.n_list.size() * per_n);
  parallel_for(out.records.size(), config.threads, [&](std::size_t slot) {
    const long n = config.n_list[slot / per_n];
    const int trial = static_cast<int>(slot % per_n);
    const auto start = Clock::now();
    TrialRecord rec;
    rec.n = n;
    rec.trial = trial;
    rec.seed = derive_seed({config.master_seed, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(trial)});
    Multigraph g;
    if (config.simple_only) {
      g = sample_simple_graph(static_cast<int>(n), config.d, rec.seed, config.max_tries).graph;
    } else {
      g = project(sample_pairing(static_cast<int>(n), config.d, rec.seed));
    }
    rec.simple = is_simple(g);
    const auto x = count_cycles(g, 4);
    std::copy(x.begin(), x.end(), rec.x.begin());
    if (!rec.simple) {
      rec.status = "not-simple";
    } else {
      SolveOptions opt = config.solver;
      opt.seed = derive_seed({rec.seed, 0x501eULL});
      const SolveResult r = solve(g, config.k, opt);
      rec.status = to_string(r.status);
      rec.found = r.status == SolveStatus::found;
      if (rec.found) {
        const std::string why = explain_invalid(g, *r.decomposition, config.k);
        if (!why.empty()) throw std::logic_error("solver returned an invalid decomposition: " + why);
      }
    }
    if (config.record_time) rec.ms = elapsed_ms(start);
    out.records[slot] = std::move(rec);
  });
  out.summary = summarize(out.records);
  return out;
}

std::vector<Frequency> summarize(const std::vector<TrialRecord>& records) {
  std::vector<long> order;
  std::map<long, std::array<long, 3>> counts;  // trials, successes, unknown
  for (const auto& r : records) {
    auto [it, inserted] = counts.try_emplace(r.n, std::array<long, 3>{0, 0, 0});
    if (inserted) order.push_back(r.n);
    auto& c = it->second;
    ++c[0];
    if (r.found) ++c[1];
    if (r.status == "unknown") ++c[2];
  }
  std::vector<Frequency> out;
  for (long n : order) {
    const auto& c = counts[n];
    out.push_back(make_frequency(n, c[0], c[1], c[2]));
  }
  return out;
}

CycleResult run_cycle_poisson(int d, long n, int trials, int m, std::uint64_t seed, unsigned threads) {
  if (trials < 100) throw std::invalid_argument("run_cycle_poisson needs at least 100 trials");
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  if (d < 2 || n < 1) throw std::invalid_argument("need d >= 2 and n >= 1");
  if ((static_cast<long>(d) * n) % 2 != 0) throw std::domain_error("dn must be even");
  CycleResult out;
  out.d = d;
  out.n = n;
  out.trials = trials;
  out.samples.resize(static_cast<std::size_t>(trials));
  std::vector<char> simple(static_cast<std::size_t>(trials), 0);
  parallel_for(static_cast<std::size_t>(trials), threads, [&](std::size_t i) {
    const Multigraph g = project(sample_pairing(static_cast<int>(n), d, derive_seed({seed, i})));
    out.samples[i] = count_cycles(g, m);
    simple[i] = out.samples[i][0] == 0 && (m < 2 ? g.parallel_pair_count() == 0 : out.samples[i][1] == 0);
  });
  const double t = trials;
  for (int j = 1; j <= m; ++j) {
    double sum = 0, sq = 0;
    for (const auto& s : out.samples) {
      const double v = double(s[static_cast<std::size_t>(j - 1)]);
      sum += v;
      sq += v * v;
    }
    CycleStat st;
    st.j = j;
    st.mean = sum / t;
    st.variance = (sq - t * st.mean * st.mean) / (t - 1);
    st.lambda = cycle_lambda(d, j).get_d();
    st.std_error = std::sqrt(st.variance / t);
    st.z = st.std_error > 0 ? (st.mean - st.lambda) / st.std_error : 0.0;
    out.stats.push_back(st);
  }
  for (char s : simple) out.simple += s;
  out.simple_frequency = double(out.simple) / t;
  out.simple_expected = std::exp(-(double(d) * d - 1) / 4);
  out.simple_std_error = std::sqrt(out.simple_frequency * (1 - out.simple_frequency) / t);
  return out;
}

LeafResult run_leaf_condition(int d, int k, long n, int trials, std::uint64_t seed, const SolveOptions& solver,
                              unsigned threads, int cap, bool record_time) {
  if (!(2 * k > d && k < d)) throw std::invalid_argument("leaf condition needs d/2 < k < d");
  if (trials < 1) throw std::invalid_argument("trials must be positive");
  require_divisible(n, d, k);
  if (n > cap) throw std::domain_error("n=" + std::to_string(n) + " exceeds the independence cap " + std::to_string(cap));
  LeafResult out;
  out.d = d;
  out.k = k;
  out.n = n;
  out.required = (2L * k - d) * n / (2L * k);
  out.records.resize(static_cast<std::size_t>(trials));
  parallel_for(out.records.size(), threads, [&](std::size_t i) {
    const auto start = Clock::now();
    LeafRecord rec;
    rec.trial = static_cast<int>(i);
    rec.seed = derive_seed({seed, static_cast<std::uint64_t>(n), i});
    const Multigraph g = sample_simple_graph(static_cast<int>(n), d, rec.seed).graph;
    rec.condition = has_independent_set(g, static_cast<int>(out.required), cap);
    SolveOptions opt = solver;
    opt.seed = derive_seed({rec.seed, 0x501eULL});
    const SolveResult r = solve(g, k, opt);
    rec.status = to_string(r.status);
    rec.found = r.status == SolveStatus::found;
    if (rec.found) {
      const std::string why = explain_invalid(g, *r.decomposition, k);
      if (!why.empty()) throw std::logic_error("solver returned an invalid decomposition: " + why);
    }
    if (record_time) rec.ms = elapsed_ms(start);
    out.records[i] = std::move(rec);
  });
  long cond = 0, found = 0, unknown = 0;
  for (const auto& r : out.records) {
    cond += r.condition;
    found += r.found;
    unknown += r.status == "unknown";
    if (r.found && !r.condition) out.implication_holds = false;
  }
  out.condition = make_frequency(n, trials, cond, 0);
  out.decomposition = make_frequency(n, trials, found, unknown);
  return out;
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void write_existence_csv(std::ostream& out, const std::vector<TrialRecord>& records) {
  out << "n,trial,seed,simple,x1,x2,x3,x4,found,status,ms\n";
  for (const auto& r : records) {
    out << r.n << ',' << r.trial << ',' << r.seed << ',' << bool01(r.simple);
    for (long x : r.x) out << ',' << x;
    out << ',' << bool01(r.found) << ',' << r.status << ',' << format_double(r.ms) << '\n';
  }
}

void write_cycles_csv(std::ostream& out, const CycleResult& r) {
  out << "j,mean,var,lambda,se,z\n";
  for (const auto& s : r.stats) {
    out << s.j << ',' << format_double(s.mean) << ',' << format_double(s.variance) << ',' << format_double(s.lambda)
        << ',' << format_double(s.std_error) << ',' << format_double(s.z) << '\n';
  }
}

void write_leaf_csv(std::ostream& out, const LeafResult& r) {
  out << "n,trial,seed,condition,found,status,ms\n";
  for (const auto& rec : r.records) {
    out << r.n << ',' << rec.trial << ',' << rec.seed << ',' << bool01(rec.condition) << ',' << bool01(rec.found)
        << ',' << rec.status << ',' << format_double(rec.ms) << '\n';
  }
}

nlohmann::json to_json(const Frequency& f) {
  return {{"n", f.n},
          {"trials", f.trials},
          {"successes", f.successes},
          {"unknown", f.unknown},
          {"frequency", f.frequency},
          {"wilson95", {f.interval.lo, f.interval.hi}}};
}

nlohmann::json summary_json(const ExistenceResult& r, const TrialConfig& c) {
  nlohmann::json per_n = nlohmann::json::array();
  for (const auto& f : r.summary) per_n.push_back(to_json(f));
  return {{"experiment", "existence"}, {"d", c.d},         {"k", c.k},
          {"seed", c.master_seed},     {"trials", c.trials}, {"per_n", per_n}};
}

nlohmann::json summary_json(const CycleResult& r) {
  nlohmann::json stats = nlohmann::json::array();
  for (const auto& s : r.stats) {
    stats.push_back({{"j", s.j},
                     {"mean", s.mean},
                     {"variance", s.variance},
                     {"lambda", s.lambda},
                     {"std_error", s.std_error},
                     {"z", s.z}});
  }
  return {{"experiment", "cycles"},
          {"d", r.d},
          {"n", r.n},
          {"trials", r.trials},
          {"cycles", stats},
          {"simple", {{"count", r.simple},
                      {"frequency", r.simple_frequency},
                      {"expected", r.simple_expected},
                      {"std_error", r.simple_std_error}}}};
}

nlohmann::json summary_json(const LeafResult& r) {
  return {{"experiment", "leaf"},
          {"d", r.d},
          {"k", r.k},
          {"n", r.n},
          {"required_independent_set", r.required},
          {"condition", to_json(r.condition)},
          {"decomposition", to_json(r.decomposition)},
          {"implication_holds", r.implication_holds}};
}

}  // namespace kstar
