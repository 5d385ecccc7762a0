#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "kstar/decompose.hpp"
#include "kstar/experiments.hpp"
#include "kstar/landscape.hpp"
#include "kstar/moments.hpp"
#include "kstar/pairing.hpp"
#include "kstar/parallel.hpp"
#include "kstar/thresholds.hpp"

namespace kstar::cli {

namespace {

using json = nlohmann::ordered_json;

const std::vector<std::string> kFormats = {"text", "csv", "json"};

std::string dec(const Decimal& x, int digits = 17) { return format_decimal(x, digits); }
std::string yes(bool b) { return b ? "true" : "false"; }

// Writes to the named file, or to `fallback` when the name is empty.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : out_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open " + path + " for writing");
      out_ = &file_;
    }
  }
  std::ostream& operator*() { return *out_; }

 private:
  std::ofstream file_;
  std::ostream* out_;
};

struct Common {
  std::string format = "text";
  unsigned threads = 0;
  std::optional<std::uint64_t> seed;

  std::uint64_t seed_or_default(std::ostream& err) const {
    if (!seed) err << "notice: --seed not given, using seed 0\n";
    return seed.value_or(0);
  }
};

void add_format(CLI::App* app, Common& c, const std::string& def = "text") {
  c.format = def;
  app->add_option("--format", c.format, "Output format")->check(CLI::IsMember(kFormats))->capture_default_str();
}
void add_threads(CLI::App* app, Common& c) {
  app->add_option("--threads", c.threads, "Worker threads (0 = available parallelism)");
}
void add_seed(CLI::App* app, Common& c) { app->add_option("--seed", c.seed, "Master seed (default 0)"); }

long smallest_n(int d, int k) { return 2L * k / std::gcd(static_cast<long>(d), 2L * k); }

// ---- thresholds / table1 / scan -------------------------------------------

void run_thresholds(int d, std::optional<int> k, const Common& c, std::ostream& out) {
  const ThresholdReport r = threshold_report(d, k);
  if (c.format == "json") {
    out << json{{"d", r.d},        {"k", r.k},           {"ksscm", r.ksscm},         {"kplus", r.kplus},
                {"p2", r.p2_holds}, {"p1", r.p1_holds}, {"c_value", dec(r.c_value)}, {"c_gt_one", r.c_gt_one}}
               .dump(2)
        << '\n';
  } else if (c.format == "csv") {
    out << "d,k,ksscm,kplus,p2,p1,c_value,c_gt_one\n"
        << r.d << ',' << r.k << ',' << r.ksscm << ',' << r.kplus << ',' << yes(r.p2_holds) << ',' << yes(r.p1_holds)
        << ',' << dec(r.c_value) << ',' << yes(r.c_gt_one) << '\n';
  } else {
    out << "ksscm=" << r.ksscm << " kplus=" << r.kplus << '\n'
        << "k=" << r.k << " p2=" << yes(r.p2_holds) << " p1=" << yes(r.p1_holds) << " c=" << dec(r.c_value, 12)
        << " c_gt_one=" << yes(r.c_gt_one) << '\n';
  }
}

struct Row {
  int d, ksscm, kplus;
};

std::vector<Row> threshold_rows(int dmin, int dmax, unsigned threads) {
  if (dmin < 3 || dmax < dmin) throw std::invalid_argument("need 3 <= dmin <= dmax");
  std::vector<Row> rows(static_cast<std::size_t>(dmax - dmin + 1));
  parallel_for(rows.size(), threads, [&](std::size_t i) {
    const int d = dmin + static_cast<int>(i);
    rows[i] = {d, compute_ksscm(d), compute_kplus(d)};
  });
  return rows;
}

void run_table1(int dmin, int dmax, const Common& c, std::ostream& out) {
  const auto rows = threshold_rows(dmin, dmax, c.threads);
  if (c.format == "json") {
    json arr = json::array();
    for (const auto& r : rows) arr.push_back({{"d", r.d}, {"ksscm", r.ksscm}, {"kplus", r.kplus}});
    out << arr.dump(2) << '\n';
  } else if (c.format == "csv") {
    out << "d,ksscm,kplus\n";
    for (const auto& r : rows) out << r.d << ',' << r.ksscm << ',' << r.kplus << '\n';
  } else {
    std::ostringstream d, s, p;
    d << "d     ";
    s << "ksscm ";
    p << "kplus ";
    for (const auto& r : rows) {
      d << ' ' << std::setw(3) << r.d;
      s << ' ' << std::setw(3) << r.ksscm;
      p << ' ' << std::setw(3) << r.kplus;
    }
    out << d.str() << '\n' << s.str() << '\n' << p.str() << '\n';
  }
}

void run_scan(int dmin, int dmax, const Common& c, std::ostream& out) {
  const auto rows = threshold_rows(dmin, dmax, c.threads);
  bool all = true;
  std::vector<bool> ok;
  for (const auto& r : rows) {
    ok.push_back(r.ksscm == r.kplus || r.ksscm == r.kplus - 1);
    all = all && ok.back();
  }
  if (c.format == "json") {
    json arr = json::array();
    for (std::size_t i = 0; i < rows.size(); ++i)
      arr.push_back({{"d", rows[i].d}, {"ksscm", rows[i].ksscm}, {"kplus", rows[i].kplus}, {"within_one", bool(ok[i])}});
    out << json{{"rows", arr}, {"all_within_one", all}}.dump(2) << '\n';
  } else {
    out << "d,ksscm,kplus,within_one\n";
    for (std::size_t i = 0; i < rows.size(); ++i)
      out << rows[i].d << ',' << rows[i].ksscm << ',' << rows[i].kplus << ',' << yes(ok[i]) << '\n';
    if (c.format == "text") out << "all_within_one=" << yes(all) << '\n';
  }
}

// ---- fhat -------------------------------------------------------------------

void run_fhat(const Params& p, int points, const std::string& path, const Common& c, std::ostream& out) {
  const P1Detail detail = check_P1_detail(p);
  const auto series = plot_fhat(p, default_fhat_grid(p, points));
  const int changes = count_sign_changes(series, Decimal("1e-40"));
  const RationalInterval iv = p1_interval(p);
  json summary{{"d", p.d},
               {"k", p.k},
               {"interval", {dec(to_decimal(iv.lo)), dec(to_decimal(iv.hi))}},
               {"points", series.size()},
               {"sign_changes", changes},
               {"q_roots_in_interval", detail.q_roots_in_interval},
               {"surviving_roots", detail.surviving_roots},
               {"p1", detail.holds}};
  auto write_csv = [&](std::ostream& o) {
    o << "x,fhat\n";
    for (const auto& pt : series) o << dec(pt.x) << ',' << dec(pt.value) << '\n';
  };
  if (!path.empty()) {
    Sink file(path, out);
    write_csv(*file);
  }
  if (c.format == "json") {
    json pts = json::array();
    for (const auto& pt : series) pts.push_back({dec(pt.x), dec(pt.value)});
    summary["series"] = pts;
    out << summary.dump(2) << '\n';
  } else if (c.format == "csv") {
    if (path.empty()) write_csv(out);
  } else {
    out << "interval=(" << dec(to_decimal(iv.lo), 12) << ", " << dec(to_decimal(iv.hi), 12) << ")\n"
        << "points=" << series.size() << " sign_changes=" << changes << '\n'
        << "q_roots_in_interval=" << detail.q_roots_in_interval << " surviving_roots=" << detail.surviving_roots
        << " p1=" << yes(detail.holds) << '\n';
  }
}

// ---- moments ----------------------------------------------------------------

void run_moments(int d, int k, std::optional<long> n_opt, std::uint64_t cap, const Common& c, std::ostream& out) {
  const long n = n_opt.value_or(smallest_n(d, k));
  const MomentReport r = moment_report(n, d, k, cap);
  const Decimal ey = to_decimal(r.exact_EY);
  json j{{"d", d},
         {"k", k},
         {"n", n},
         {"exact_EY", to_string(r.exact_EY)},
         {"exact_EY_decimal", dec(ey)},
         {"asympt_EY", dec(r.asympt_EY)},
         {"exact_over_asympt", dec(ey / r.asympt_EY)},
         {"c_value", dec(c_value({d, k}).value)}};
  if (r.exact_EY2) {
    j["exact_EY2"] = to_string(*r.exact_EY2);
    j["exact_EY2_decimal"] = dec(to_decimal(*r.exact_EY2));
    j["EY2_over_EY_squared"] = dec(to_decimal(*r.exact_EY2 / (r.exact_EY * r.exact_EY)));
  }
  if (r.variance_ratio_limit) {
    j["variance_ratio_limit"] = dec(*r.variance_ratio_limit);
    j["sum_lambda_delta_sq"] = dec(*r.sum_lambda_delta_sq);
  }
  if (c.format == "json") {
    out << j.dump(2) << '\n';
  } else if (c.format == "csv") {
    out << "key,value\n";
    for (auto it = j.begin(); it != j.end(); ++it)
      out << it.key() << ',' << (it->is_string() ? it->get<std::string>() : it->dump()) << '\n';
  } else {
    for (auto it = j.begin(); it != j.end(); ++it)
      out << it.key() << '=' << (it->is_string() ? it->get<std::string>() : it->dump()) << '\n';
  }
}

// ---- landscape --------------------------------------------------------------

void run_landscape(const Params& p, bool maximize, int starts, const std::string& dump, const Common& c,
                   std::ostream& out, std::ostream& err) {
  const BStar star = bstar(p);
  const auto b = bstar_decimal(p);
  json j{{"d", p.d},
         {"k", p.k},
         {"bstar", [&] {
            json arr = json::array();
            for (const auto& q : star.b) arr.push_back(to_string(q));
            return arr;
          }()},
         {"beta", to_string(star.beta)},
         {"gamma", to_string(star.gamma)},
         {"sum_sq_weighted", to_string(star.second)},
         {"phi_bstar", dec(phi(p, b))},
         {"phi_bstar_closed", dec(phi_bstar_closed(p))},
         {"psi_bstar", dec(psi(p, b))},
         {"phi_corner", dec(phi(p, corner_point(p)))}};
  Decimal grad_norm = 0;
  for (const auto& g : grad_phi(p, b)) grad_norm = std::max(grad_norm, Decimal(abs(g)));
  j["grad_norm_bstar"] = dec(grad_norm, 6);
  if (check_P2(p)) {
    j["det_negH_closed"] = dec(det_negH_closed(p));
    j["det_negH_rank2"] = dec(det_negH_rank2(p));
    j["negH_cholesky"] = negH_cholesky_ok(p);
    const LaplaceReconstruction lr = laplace_reconstruction(p);
    j["laplace_constant_ratio"] = dec(lr.constant_ratio);
    j["variance_ratio_limit"] = dec(variance_ratio_limit(p.d, p.k));
    j["laplace_exponent_gap"] = dec(lr.exponent_gap, 6);
  }
  if (maximize) {
    MaximizeOptions opt;
    opt.starts = starts;
    opt.seed = c.seed_or_default(err);
    opt.threads = c.threads;
    const MaximizeResult m = maximize_phi(p, opt);
    if (m.outside_proven_range) err << "warning: (d,k) outside the range where the global-max statement applies\n";
    j["maximize"] = {{"starts", starts},
                     {"value", dec(m.value)},
                     {"bstar_value", dec(m.bstar_value)},
                     {"distance_to_bstar", m.distance_to_bstar},
                     {"matches_bstar", m.matches_bstar},
                     {"outside_proven_range", m.outside_proven_range}};
    if (!dump.empty()) {
      Sink file(dump, out);
      *file << "start";
      for (int i = 0; i <= p.d - p.k; ++i) *file << ",x" << i;
      for (int i = 0; i <= p.d - p.k; ++i) *file << ",b" << i;
      *file << ",value\n";
      for (const auto& rec : m.starts) {
        *file << rec.start;
        for (double x : rec.initial) *file << ',' << format_double(x);
        for (double x : rec.final_point) *file << ',' << format_double(x);
        *file << ',' << format_double(rec.value);
        *file << '\n';
      }
    }
  }
  if (c.format == "json") {
    out << j.dump(2) << '\n';
  } else {
    const char sep = c.format == "csv" ? ',' : '=';
    if (c.format == "csv") out << "key,value\n";
    for (auto it = j.begin(); it != j.end(); ++it)
      out << it.key() << sep << (it->is_string() ? it->get<std::string>() : it->dump()) << '\n';
  }
}

// ---- sample / decompose -----------------------------------------------------

void run_sample(int n, int d, bool simple, int max_tries, const std::string& path, const Common& c, std::ostream& out,
                std::ostream& err) {
  const std::uint64_t seed = c.seed_or_default(err);
  Multigraph g;
  int tries = 1;
  if (simple) {
    SimpleSample s = sample_simple_graph(n, d, seed, max_tries);
    g = std::move(s.graph);
    tries = s.tries;
  } else {
    g = project(sample_pairing(n, d, seed));
  }
  Sink sink(path, out);
  if (c.format == "json") {
    json edges = json::array();
    for (const auto& e : g.edges()) edges.push_back({e.u, e.v});
    *sink << json{{"n", n},         {"d", d},         {"seed", seed}, {"tries", tries},
                  {"simple", is_simple(g)}, {"cycles", count_cycles(g, 4)}, {"edges", edges}}
                 .dump()
          << '\n';
  } else {
    write_graph(*sink, g);
  }
}

void run_decompose(const std::string& path, int k, const std::string& mode, double time_limit, long node_cap,
                   const Common& c, std::ostream& out, std::ostream& err) {
  const Multigraph g = read_graph_file(path);
  SolveOptions opt;
  opt.mode = parse_solve_mode(mode);
  opt.time_limit_seconds = time_limit;
  opt.node_cap = node_cap;
  opt.seed = c.seed.value_or(0);
  const SolveResult r = solve(g, k, opt);
  if (c.format == "json") {
    json stars = json::array();
    if (r.decomposition)
      for (const auto& s : r.decomposition->stars) stars.push_back({{"center", s.center}, {"edges", s.edges}});
    out << json{{"status", to_string(r.status)}, {"k", k},           {"stars", stars},
                {"reason", r.reason},            {"nodes", r.stats.nodes}, {"method", r.stats.method}}
               .dump(2)
        << '\n';
    return;
  }
  out << to_string(r.status) << '\n';
  if (r.decomposition) {
    for (const auto& s : r.decomposition->stars) {
      out << s.center << ':';
      for (int e : s.edges) out << ' ' << e;
      out << '\n';
    }
  }
  if (!r.reason.empty()) err << "note: " << r.reason << '\n';
}

// ---- experiments ------------------------------------------------------------

SolveOptions solver_options(const std::string& mode, double time_limit, long node_cap) {
  SolveOptions opt;
  opt.mode = parse_solve_mode(mode);
  opt.time_limit_seconds = time_limit;
  opt.node_cap = node_cap;
  return opt;
}

void emit_summary(const nlohmann::json& summary, const std::string& json_path, const Common& c, std::ostream& out) {
  if (!json_path.empty()) {
    Sink file(json_path, out);
    *file << summary.dump(2) << '\n';
  }
  if (c.format == "json" && json_path.empty()) out << summary.dump(2) << '\n';
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"k-star decomposition thresholds, moments and solvers", "kstar"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");
  std::function<void()> action;
  Common common;

  // thresholds
  int th_d = 0;
  std::optional<int> th_k;
  auto* th = app.add_subcommand("thresholds", "k_SSCM(d), k_plus(d), P1/P2 and c(d,k)");
  th->add_option("--d", th_d, "Degree")->required();
  th->add_option("--k", th_k, "Star size (default: k_SSCM(d))");
  add_format(th, common);
  th->callback([&] { action = [&] { run_thresholds(th_d, th_k, common, out); }; });

  // table1
  int t1_min = 3, t1_max = 20;
  auto* t1 = app.add_subcommand("table1", "k_SSCM(d) and k_plus(d) for a range of d");
  t1->add_option("--dmin", t1_min, "Smallest d")->capture_default_str();
  t1->add_option("--dmax", t1_max, "Largest d")->capture_default_str();
  add_format(t1, common);
  add_threads(t1, common);
  t1->callback([&] { action = [&] { run_table1(t1_min, t1_max, common, out); }; });

  // scan
  int sc_min = 3, sc_max = 100;
  auto* sc = app.add_subcommand("scan", "Check k_SSCM(d) in {k_plus(d)-1, k_plus(d)} over a range");
  sc->add_option("--dmin", sc_min, "Smallest d")->capture_default_str();
  sc->add_option("--dmax", sc_max, "Largest d")->capture_default_str();
  add_format(sc, common, "csv");
  add_threads(sc, common);
  sc->callback([&] { action = [&] { run_scan(sc_min, sc_max, common, out); }; });

  // fhat
  int fh_d = 0, fh_k = 0, fh_points = 400;
  std::string fh_out;
  auto* fh = app.add_subcommand("fhat", "Plot data for fhat on the P1 interval");
  fh->add_option("--d", fh_d, "Degree")->required();
  fh->add_option("--k", fh_k, "Star size")->required();
  fh->add_option("--points", fh_points, "Interior grid points")->capture_default_str()->check(CLI::PositiveNumber);
  fh->add_option("--out", fh_out, "Write the CSV series to this file");
  add_format(fh, common, "csv");
  fh->callback([&] { action = [&] { run_fhat({fh_d, fh_k}, fh_points, fh_out, common, out); }; });

  // moments
  int mo_d = 0, mo_k = 0;
  std::optional<long> mo_n;
  std::uint64_t mo_cap = kDefaultLatticeCap;
  auto* mo = app.add_subcommand("moments", "Exact and asymptotic moments");
  mo->add_option("--d", mo_d, "Degree")->required();
  mo->add_option("--k", mo_k, "Star size")->required();
  mo->add_option("--n", mo_n, "Number of vertices (default: smallest admissible)");
  mo->add_option("--cap", mo_cap, "Lattice-point cap for the exact second moment")->capture_default_str();
  add_format(mo, common);
  mo->callback([&] { action = [&] { run_moments(mo_d, mo_k, mo_n, mo_cap, common, out); }; });

  // landscape
  int la_d = 0, la_k = 0, la_starts = 200;
  bool la_max = false;
  std::string la_dump;
  auto* la = app.add_subcommand("landscape", "Second-moment landscape checks at b*");
  la->add_option("--d", la_d, "Degree")->required();
  la->add_option("--k", la_k, "Star size")->required();
  la->add_flag("--maximize", la_max, "Run the multistart global-max search");
  la->add_option("--starts", la_starts, "Random starts for --maximize")->capture_default_str()->check(CLI::PositiveNumber);
  la->add_option("--dump", la_dump, "CSV of (start, value, point) per start");
  add_format(la, common);
  add_threads(la, common);
  add_seed(la, common);
  la->callback([&] { action = [&] { run_landscape({la_d, la_k}, la_max, la_starts, la_dump, common, out, err); }; });

  // sample
  int sa_n = 0, sa_d = 0, sa_tries = 100000;
  bool sa_simple = false;
  std::string sa_out;
  auto* sa = app.add_subcommand("sample", "Sample a configuration-model graph");
  sa->add_option("--n", sa_n, "Number of vertices")->required();
  sa->add_option("--d", sa_d, "Degree")->required();
  sa->add_flag("--simple", sa_simple, "Reject until simple");
  sa->add_option("--max-tries", sa_tries, "Rejection limit")->capture_default_str();
  sa->add_option("--out", sa_out, "Write the graph to this file");
  add_format(sa, common);
  add_seed(sa, common);
  sa->callback([&] { action = [&] { run_sample(sa_n, sa_d, sa_simple, sa_tries, sa_out, common, out, err); }; });

  // decompose
  std::string de_graph, de_mode = "auto";
  int de_k = 0;
  double de_time = 60;
  long de_nodes = SolveOptions{}.node_cap;
  auto* de = app.add_subcommand("decompose", "Find or refute a k-star decomposition");
  de->add_option("--graph", de_graph, "Graph file")->required();
  de->add_option("--k", de_k, "Star size")->required();
  de->add_option("--mode", de_mode, "Solver mode")->check(CLI::IsMember({"exact", "heuristic", "auto"}))->capture_default_str();
  de->add_option("--time-limit", de_time, "Seconds")->capture_default_str()->check(CLI::PositiveNumber);
  de->add_option("--node-cap", de_nodes, "Branch-and-bound node cap")->capture_default_str()->check(CLI::PositiveNumber);
  add_format(de, common);
  add_seed(de, common);
  de->callback([&] { action = [&] { run_decompose(de_graph, de_k, de_mode, de_time, de_nodes, common, out, err); }; });

  // experiment
  auto* ex = app.add_subcommand("experiment", "Monte Carlo campaigns");
  ex->require_subcommand(1);
  std::string ex_csv, ex_json, ex_mode = "auto";
  double ex_time = 30;
  long ex_nodes = SolveOptions{}.node_cap;
  bool ex_timing = false;
  auto add_experiment_common = [&](CLI::App* sub, bool solver) {
    sub->add_option("--csv", ex_csv, "Per-trial CSV path (default stdout)");
    sub->add_option("--json", ex_json, "JSON summary path");
    sub->add_flag("--time", ex_timing, "Record wall time in the ms column");
    if (solver) {
      sub->add_option("--mode", ex_mode, "Solver mode")->check(CLI::IsMember({"exact", "heuristic", "auto"}))->capture_default_str();
      sub->add_option("--time-limit", ex_time, "Seconds per solve")->capture_default_str()->check(CLI::PositiveNumber);
      sub->add_option("--node-cap", ex_nodes, "Node cap per solve")->capture_default_str()->check(CLI::PositiveNumber);
    }
    add_format(sub, common);
    add_threads(sub, common);
    add_seed(sub, common);
  };

  TrialConfig ex_cfg;
  bool ex_multigraphs = false;
  auto* exe = ex->add_subcommand("existence", "Decomposition frequency against n");
  exe->add_option("--d", ex_cfg.d, "Degree")->required();
  exe->add_option("--k", ex_cfg.k, "Star size")->required();
  exe->add_option("--n", ex_cfg.n_list, "Comma-separated vertex counts")->required()->delimiter(',');
  exe->add_option("--trials", ex_cfg.trials, "Trials per n")->required()->check(CLI::PositiveNumber);
  exe->add_flag("--multigraphs", ex_multigraphs, "Keep non-simple samples (recorded as not-simple)");
  add_experiment_common(exe, true);
  exe->callback([&] {
    action = [&] {
      ex_cfg.master_seed = common.seed_or_default(err);
      ex_cfg.threads = common.threads;
      ex_cfg.record_time = ex_timing;
      ex_cfg.simple_only = !ex_multigraphs;
      ex_cfg.solver = solver_options(ex_mode, ex_time, ex_nodes);
      const ExistenceResult r = run_existence(ex_cfg);
      {
        Sink csv(ex_csv, out);
        if (common.format != "json" || !ex_csv.empty()) write_existence_csv(*csv, r.records);
      }
      emit_summary(summary_json(r, ex_cfg), ex_json, common, out);
    };
  });

  int cy_d = 3, cy_trials = 10000, cy_m = 4;
  long cy_n = 200;
  auto* exc = ex->add_subcommand("cycles", "Short-cycle counts against their Poisson means");
  exc->add_option("--d", cy_d, "Degree")->capture_default_str();
  exc->add_option("--n", cy_n, "Number of vertices")->capture_default_str();
  exc->add_option("--trials", cy_trials, "Samples (>= 100)")->capture_default_str();
  exc->add_option("--m", cy_m, "Longest cycle length")->capture_default_str()->check(CLI::PositiveNumber);
  add_experiment_common(exc, false);
  exc->callback([&] {
    action = [&] {
      const CycleResult r = run_cycle_poisson(cy_d, cy_n, cy_trials, cy_m, common.seed_or_default(err), common.threads);
      {
        Sink csv(ex_csv, out);
        if (common.format != "json" || !ex_csv.empty()) write_cycles_csv(*csv, r);
      }
      emit_summary(summary_json(r), ex_json, common, out);
    };
  });

  int lf_d = 0, lf_k = 0, lf_trials = 100, lf_cap = kDefaultIndependenceCap;
  long lf_n = 0;
  auto* exl = ex->add_subcommand("leaf", "Leaf independent-set condition against decomposition");
  exl->add_option("--d", lf_d, "Degree")->required();
  exl->add_option("--k", lf_k, "Star size")->required();
  exl->add_option("--n", lf_n, "Number of vertices")->required();
  exl->add_option("--trials", lf_trials, "Trials")->capture_default_str()->check(CLI::PositiveNumber);
  exl->add_option("--cap", lf_cap, "Independence-number vertex cap")->capture_default_str();
  add_experiment_common(exl, true);
  exl->callback([&] {
    action = [&] {
      const LeafResult r = run_leaf_condition(lf_d, lf_k, lf_n, lf_trials, common.seed_or_default(err),
                                              solver_options(ex_mode, ex_time, ex_nodes), common.threads, lf_cap,
                                              ex_timing);
      {
        Sink csv(ex_csv, out);
        if (common.format != "json" || !ex_csv.empty()) write_leaf_csv(*csv, r);
      }
      emit_summary(summary_json(r), ex_json, common, out);
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  if (!action) {
    err << app.help();
    return kExitUsage;
  }
  try {
    action();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitOk;
}

}  // namespace kstar::cli
