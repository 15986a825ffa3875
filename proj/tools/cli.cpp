#include "cli.hpp"

#include <omp.h>

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include "anderson/csv.hpp"
#include "anderson/estimator.hpp"
#include "anderson/formulas.hpp"
#include "anderson/verify.hpp"

namespace anderson::cli {

namespace {

using Config = std::vector<std::pair<std::string, std::string>>;
using json = nlohmann::ordered_json;

struct Options {
  double p = 0.3;
  double zeta = 4.0;
  std::int64_t size = 100000;
  std::int64_t reps = 8;
  std::uint64_t seed = 1;
  std::size_t grid = 401;
  double x_min = 0.01;
  double x_max = 3.99;
  int special_up_to = 12;
  double tol = 1e-12;
  std::string out;
  int threads = 0;
  std::string mode = "strict";
  bool with_bounds = false;
  std::string variant = "ceil_m1";
  std::int64_t gaps = 1000000;
  std::int64_t trials = 100;
  std::int64_t max_size = 500;
  int n = 3;
  int n_max = 12;
  std::vector<double> zetas{2.0, 2.5, 3.0, 4.0, 20.0};
  std::vector<std::int64_t> n_list{10000, 100000, 1000000};
  std::string check;
};

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw DomainError("cannot open output file " + path);
      os_ = file_.get();
    }
  }
  std::ostream& stream() { return *os_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* os_;
};

void add_common(CLI::App* sub, Options& o, bool seeded = true) {
  sub->add_option("--p", o.p, "Bernoulli parameter, 0 < p < 1");
  if (seeded) sub->add_option("--seed", o.seed, "master seed");
  sub->add_option("--out", o.out, "output path (default stdout)");
  sub->add_option("--threads", o.threads, "OpenMP threads (0 = all available)")->check(CLI::NonNegativeNumber);
}

void add_sim(CLI::App* sub, Options& o) {
  sub->add_option("--zeta", o.zeta, "disorder strength zeta >= 0");
  sub->add_option("--size", o.size, "system size L");
  sub->add_option("--reps", o.reps, "Monte Carlo repetitions");
}

void add_grid(CLI::App* sub, Options& o) {
  sub->add_option("--grid", o.grid, "number of uniform grid points");
  sub->add_option("--x-min", o.x_min, "lowest grid energy");
  sub->add_option("--x-max", o.x_max, "highest grid energy");
  sub->add_option("--special-up-to", o.special_up_to, "merge special energies for n = 2..N into the grid");
}

void add_mode(CLI::App* sub, Options& o) {
  sub->add_option("--mode", o.mode, "eigenvalue count: strict (<) or weak (<=)")
      ->check(CLI::IsMember({"strict", "weak"}));
}

Config echo(const CLI::App* sub) {
  Config c{{"command", sub->get_name()}};
  for (const CLI::Option* opt : sub->get_options()) {
    const std::string name = opt->get_single_name();
    if (name == "help" || name == "out" || name == "threads") continue;
    std::string value;
    if (opt->count() > 0) {
      const auto& rs = opt->results();
      for (std::size_t i = 0; i < rs.size(); ++i) value += (i ? "," : "") + rs[i];
    } else {
      value = opt->get_default_str();
    }
    c.emplace_back(name, value);
  }
  return c;
}

json config_json(const Config& c) {
  json j = json::object();
  for (const auto& [k, v] : c) j[k] = v;
  return j;
}

CountMode mode_of(const Options& o) { return o.mode == "weak" ? CountMode::Weak : CountMode::Strict; }

std::vector<double> grid_of(const Options& o) {
  if (o.grid < 1) throw DomainError("--grid must be >= 1");
  return make_grid(o.grid, o.x_min, o.x_max, o.special_up_to);
}

struct BoundRow {
  double lower, upper, fp, free, lif_lo, lif_hi;
};

BoundRow bounds_at(BernoulliParam p, double x, double tol) {
  const auto b = theorem1_bounds(p, x, tol);
  BoundRow r{b.lower, b.upper, envelope_fp(p, x), free_ids(x), 0.0, 0.0};
  if (x <= 2.0) {
    const auto l = lifschitz_bounds(p, x, BandEdge::Lower);
    r.lif_lo = l.lower;
    r.lif_hi = l.upper;
  } else {
    const auto u = lifschitz_bounds(p, 4.0 - x, BandEdge::Upper);
    r.lif_lo = p.q() - u.upper;
    r.lif_hi = p.q() - u.lower;
  }
  return r;
}

int cmd_bounds(const Options& o, const Config& cfg, std::ostream& os) {
  const BernoulliParam p(o.p);
  if (!(o.tol > 0.0)) throw DomainError("--tol must be > 0");
  const auto xs = grid_of(o);
  std::vector<BoundRow> rows;
  for (double x : xs) rows.push_back(bounds_at(p, x, o.tol));
  write_config_header(os, cfg);
  os << "energy,lower,upper,fp,free,lif_lo,lif_hi\n";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const auto& r = rows[i];
    write_row(os, {format_double(xs[i]), format_double(r.lower), format_double(r.upper), format_double(r.fp),
                   format_double(r.free), format_double(r.lif_lo), format_double(r.lif_hi)});
  }
  return kOk;
}

int cmd_ids(const Options& o, const Config& cfg, std::ostream& os) {
  const BernoulliParam p(o.p);
  const DisorderParam zeta(o.zeta);
  const auto xs = grid_of(o);
  const auto curve = monte_carlo_ids(p, zeta, o.size, o.reps, xs, mode_of(o), Seed{o.seed, 0});
  if (!o.with_bounds) {
    write_curve_csv(os, curve, cfg);
    return kOk;
  }
  write_config_header(os, cfg);
  os << "energy,value,stderr,p,zeta,L,reps,seed,lower,upper,fp,free\n";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::vector<std::string> row{format_double(xs[i]),
                                 format_double(curve.values[i]),
                                 curve.stderr_ ? format_double(curve.stderr_at(i)) : "",
                                 format_double(o.p),
                                 format_double(o.zeta),
                                 std::to_string(o.size),
                                 std::to_string(o.reps),
                                 std::to_string(o.seed)};
    if (xs[i] > 0.0 && xs[i] < 4.0) {
      const auto b = bounds_at(p, xs[i], 1e-12);
      for (double v : {b.lower, b.upper, b.fp, b.free}) row.push_back(format_double(v));
    } else {
      for (int k = 0; k < 3; ++k) row.emplace_back("");
      row.push_back(format_double(free_ids(xs[i])));
    }
    write_row(os, row);
  }
  return kOk;
}

int cmd_blockids(const Options& o, const Config& cfg, std::ostream& os) {
  const BernoulliParam p(o.p);
  const auto variant = series_variant_from_string(o.variant);
  const auto xs = grid_of(o);
  write_curve_csv(os, block_ids(p, variant, o.gaps, xs, Seed{o.seed, 0}), cfg);
  return kOk;
}

int cmd_special(const Options& o, const Config& cfg, std::ostream& os) {
  const BernoulliParam p(o.p);
  if (o.n_max < 2) throw DomainError("--n-max must be >= 2");
  write_config_header(os, cfg);
  os << "n,lower,upper,ids_lower,ids_upper\n";
  for (const auto& s : special_energies(p, o.n_max)) {
    write_row(os, {std::to_string(s.n), format_double(s.lower), format_double(s.upper), format_double(s.ids_lower),
                   format_double(s.ids_upper)});
  }
  return kOk;
}

std::vector<VerificationReport> run_checks(const Options& o) {
  const BernoulliParam p(o.p);
  const DisorderParam zeta(o.zeta);
  const Seed seed{o.seed, 0};
  const auto all = o.check == "all";
  auto want = [&](const char* name) { return all || o.check == name; };
  // Hypothesis checks up front so "all" fails fast instead of after minutes of work.
  if (all || o.check == "theorem1" || o.check == "special" || o.check == "cor4" || o.check == "lifschitz")
    zeta.require_strong();
  std::vector<VerificationReport> reports;
  std::optional<std::vector<double>> grid;
  auto g = [&]() -> const std::vector<double>& {
    if (!grid) grid = grid_of(o);
    return *grid;
  };
  if (want("cor4")) reports.push_back(check_corollary4(p, zeta, o.size, o.reps, g(), seed));
  if (want("interlacing")) reports.push_back(check_interlacing_suite(o.trials, o.max_size, seed));
  if (want("lemma5")) reports.push_back(check_lemma5(p, o.n_list, o.reps, seed));
  if (want("lifschitz")) reports.push_back(check_lifschitz(p, zeta, o.size, o.reps, seed));
  if (want("series")) {
    const std::vector<double> ps{0.1, 0.3, 0.5, 0.7, 0.9};
    reports.push_back(check_series_identities(ps, 1000, 2e-12));
  }
  if (want("special")) reports.push_back(check_special_energies(p, zeta, o.size, o.reps, o.n_max, seed));
  if (want("symmetry")) reports.push_back(check_symmetry(p, zeta, o.size, o.reps, g(), seed));
  if (want("theorem1")) reports.push_back(check_theorem1(p, zeta, o.size, o.reps, g(), seed));
  return reports;
}

int cmd_verify(const Options& o, const Config& cfg, std::ostream& os, std::ostream& err) {
  const auto reports = run_checks(o);
  json doc;
  doc["config"] = config_json(cfg);
  doc["reports"] = json::array();
  bool failed = false;
  for (const auto& r : reports) {
    doc["reports"].push_back(to_json(r));
    failed = failed || r.status == Status::Fail;
  }
  os << doc.dump(2) << '\n';
  err << summary_table(reports);
  return failed ? kVerifyFailed : kOk;
}

int cmd_conjecture(const Options& o, const Config& cfg, std::ostream& os, std::ostream& err) {
  const BernoulliParam p(o.p);
  const auto table = conjecture_experiment(p, o.n, o.zetas, o.size, o.reps, Seed{o.seed, 0});
  write_config_header(os, cfg);
  os << "zeta,n,branch,estimate,stderr,closed_form,proved,energy,fp_left,fp_right\n";
  for (const auto& r : table.rows) {
    write_row(os, {format_double(r.zeta), std::to_string(r.n), r.branch, format_double(r.estimate),
                   format_double(r.stderr_), format_double(r.closed_form), r.proved ? "true" : "false",
                   format_double(r.energy), format_double(r.fp_left), format_double(r.fp_right)});
  }
  err << summary_table({table.proved_cases});
  return table.proved_cases.status == Status::Fail ? kVerifyFailed : kOk;
}

int cmd_lemma5(const Options& o, const Config& cfg, std::ostream& os, std::ostream& err) {
  const BernoulliParam p(o.p);
  const auto r = check_lemma5(p, o.n_list, o.reps, Seed{o.seed, 0});
  write_config_header(os, cfg);
  os << "n,median_ratio,band_lo,band_hi\n";
  for (const auto& row : r.details["rows"]) {
    write_row(os, {std::to_string(row["n"].get<std::int64_t>()), format_double(row["median_ratio"].get<double>()),
                   format_double(row["band_lo"].get<double>()), format_double(row["band_hi"].get<double>())});
  }
  err << summary_table({r});
  return r.status == Status::Fail ? kVerifyFailed : kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Integrated density of states of the 1D Anderson-Bernoulli model", "anderson-ids"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();

  std::map<std::string, Options> opts;
  auto make = [&](const char* name, const char* help) {
    opts[name] = Options{};
    return std::pair<CLI::App*, Options*>{app.add_subcommand(name, help), &opts[name]};
  };

  {
    auto [s, o] = make("bounds", "closed-form bounds on an energy grid");
    o->special_up_to = 0;
    add_common(s, *o, false);
    add_grid(s, *o);
    s->add_option("--tol", o->tol, "series truncation tolerance");
  }
  {
    auto [s, o] = make("ids", "Monte Carlo IDS curve");
    add_common(s, *o);
    add_sim(s, *o);
    add_grid(s, *o);
    add_mode(s, *o);
    s->add_flag("--with-bounds", o->with_bounds, "append lower, upper, fp and free columns");
  }
  {
    auto [s, o] = make("blockids", "IDS of a block operator from sampled gaps");
    add_common(s, *o);
    add_grid(s, *o);
    s->add_option("--variant", o->variant, "series variant")
        ->check(CLI::IsMember({"ceil_m1", "floor_m1", "ceil_0", "floor_0", "neumann"}));
    s->add_option("--n", o->gaps, "number of sampled gaps");
  }
  {
    auto [s, o] = make("verify", "run verification checks (JSON report)");
    s->add_option("check", o->check, "check name")
        ->required()
        ->check(CLI::IsMember(
            {"theorem1", "interlacing", "special", "cor4", "lifschitz", "lemma5", "symmetry", "series", "all"}));
    add_common(s, *o);
    add_sim(s, *o);
    add_grid(s, *o);
    s->add_option("--trials", o->trials, "interlacing: random realizations");
    s->add_option("--max-size", o->max_size, "interlacing: largest L");
    s->add_option("--n-max", o->n_max, "special: largest n");
    s->add_option("--n-list", o->n_list, "lemma5: gap counts")->delimiter(',');
  }
  {
    auto [s, o] = make("special", "special energies and their IDS values");
    add_common(s, *o, false);
    s->add_option("--n-max", o->n_max, "largest n");
  }
  {
    auto [s, o] = make("conjecture", "IDS at special energies across zeta");
    o->reps = 8;
    add_common(s, *o);
    s->add_option("--size", o->size, "system size L");
    s->add_option("--reps", o->reps, "Monte Carlo repetitions");
    s->add_option("--n", o->n, "special energy index n >= 2");
    s->add_option("--zetas", o->zetas, "comma separated zeta values >= 2")->delimiter(',');
  }
  {
    auto [s, o] = make("lemma5", "maximal gap growth statistic");
    o->reps = 32;
    add_common(s, *o);
    s->add_option("--reps", o->reps, "repetitions per n");
    s->add_option("--n-list", o->n_list, "comma separated gap counts >= 1000")->delimiter(',');
  }

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  const Options& o = opts.at(sub->get_name());
  const Config cfg = echo(sub);
  try {
    if (o.threads > 0) omp_set_num_threads(o.threads);
    Output sink(o.out, out);
    std::ostream& os = sink.stream();
    const std::string name = sub->get_name();
    if (name == "bounds") return cmd_bounds(o, cfg, os);
    if (name == "ids") return cmd_ids(o, cfg, os);
    if (name == "blockids") return cmd_blockids(o, cfg, os);
    if (name == "special") return cmd_special(o, cfg, os);
    if (name == "verify") return cmd_verify(o, cfg, os, err);
    if (name == "conjecture") return cmd_conjecture(o, cfg, os, err);
    if (name == "lemma5") return cmd_lemma5(o, cfg, os, err);
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << '\n';
    return kResource;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace anderson::cli
