#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "concentro/bounds.hpp"
#include "concentro/errors.hpp"
#include "concentro/graphs.hpp"
#include "concentro/io.hpp"
#include "concentro/montecarlo.hpp"
#include "concentro/norms.hpp"
#include "concentro/poly.hpp"
#include "concentro/rmt.hpp"
#include "json.hpp"

#ifndef CONCENTRO_VERSION
#define CONCENTRO_VERSION "0.0.0"
#endif

namespace concentro::cli {

namespace {

using nlohmann::json;

// Thrown for bad flag values the option parser cannot see (missing inputs,
// conflicting settings). Reported with exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Common {
  std::uint64_t seed = 0;
  int workers = 1;
  std::string out;
};

struct LawArgs {
  std::string law = "gaussian";
  double pp = 0.5;
  double alpha = 2.0;
  std::string dist;  // JSON file, overrides the flags above
};

struct NormArgs {
  int restarts = 64;
  double tol = 1e-10;
  int max_sweeps = 500;
  bool force_als = false;
};

struct McArgs {
  long N = 100000;
  long batch = 8192;
  std::vector<double> p_list{2.0};
};

std::string num(double v) { return format_number(v); }

int default_workers() {
  if (const char* env = std::getenv("CONCENTRO_WORKERS")) {
    try {
      const int w = std::stoi(env);
      if (w >= 1) return w;
    } catch (const std::exception&) {
    }
  }
  return 1;
}

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {
    common_.workers = default_workers();
    app_.name("concentro");
    app_.description("Moment and tail bounds for polynomial functions of independent variables");
    app_.set_version_flag("--version", std::string(CONCENTRO_VERSION));
    app_.require_subcommand(1);
    app_.fallthrough();
    app_.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app_.add_option("--config", config_path_, "JSON file with option values; flags override it");
    build();
  }

  int run(std::vector<std::string> args);

 private:
  CLI::App* leaf(CLI::App* name, const std::string& title, const std::string& help,
                 std::function<void()> handler);
  void add_common(CLI::App* a) {
    a->add_option("--seed", common_.seed, "RNG seed")->capture_default_str();
    a->add_option("--workers", common_.workers, "worker threads (env CONCENTRO_WORKERS)")
        ->capture_default_str();
    a->add_option("--out", common_.out, "write the report here instead of stdout");
  }
  void add_law(CLI::App* a) {
    a->add_option("--law", law_.law, "gaussian, rademacher, bernoulli or weibull")
        ->capture_default_str();
    a->add_option("--pp", law_.pp, "success probability for --law bernoulli")->capture_default_str();
    a->add_option("--alpha", law_.alpha, "shape for --law weibull")->capture_default_str();
    a->add_option("--dist", law_.dist, "distribution JSON file (overrides --law)");
  }
  void add_norm_opts(CLI::App* a) {
    a->add_option("--restarts", norm_.restarts, "ALS restarts")->capture_default_str();
    a->add_option("--tol", norm_.tol, "ALS relative tolerance")->capture_default_str();
    a->add_option("--max-sweeps", norm_.max_sweeps, "ALS sweeps per restart")->capture_default_str();
    a->add_flag("--force-als", norm_.force_als, "skip exact routes");
  }
  void add_mc(CLI::App* a) {
    a->add_option("--N", mc_.N, "sample size")->capture_default_str();
    a->add_option("--batch", mc_.batch, "samples per RNG stream")->capture_default_str();
    a->add_option("--p", mc_.p_list, "moment orders")->capture_default_str()->expected(1, -1);
  }

  void build();
  void apply_config(CLI::App* active);
  CLI::App* active_leaf() const;

  std::string need(const std::string& value, const char* flag) const {
    if (value.empty()) throw UsageError(std::string("missing required option ") + flag);
    return value;
  }
  NormOptions norm_options() const {
    NormOptions o;
    o.restarts = norm_.restarts;
    o.tol = norm_.tol;
    o.max_sweeps = norm_.max_sweeps;
    o.seed = common_.seed;
    o.workers = common_.workers;
    o.force_als = norm_.force_als;
    o.validate();
    return o;
  }
  MCConfig mc_config() const {
    MCConfig c;
    c.N = mc_.N;
    c.batch = mc_.batch;
    c.seed = common_.seed;
    c.p_list = mc_.p_list;
    c.workers = common_.workers;
    return c;
  }
  ProductDistribution distribution(int n) const;
  double auto_L(const ProductDistribution& d) const;
  BoundReport moment_bound(const Polynomial& f, const ProductDistribution& d, double p) const;

  CsvWriter report(std::vector<std::string> columns) const;
  void emit(const CsvWriter& w);
  static void bound_rows(CsvWriter& w, const BoundReport& r);

  void cmd_norm();
  void cmd_mixednorm();
  void cmd_bounds();
  void cmd_tail();
  void cmd_mc_moments();
  void cmd_mc_tail();
  void cmd_mc_chaos();
  void cmd_mc_sandwich();
  void cmd_mc_hermite();
  void cmd_mc_sobolev();
  void cmd_graphs_triangles();
  void cmd_graphs_cyclebound();
  void cmd_rmt();
  void cmd_hermite();

  std::ostream& out_;
  std::ostream& err_;
  CLI::App app_;
  std::string config_path_;
  std::map<const CLI::App*, std::function<void()>> handlers_;

  Common common_;
  LawArgs law_;
  NormArgs norm_;
  McArgs mc_;

  // per-command inputs
  std::string tensor_path_, poly_path_, graph_path_, partition_, split_, mode_ = "both",
      convention_ = "unit", L_ = "auto", cert_;
  std::string kind_ = "auto";
  double mix_alpha_ = 2.0, p_ = 2.0, gamma_ = 0.5, C_ = 1.0, window_ = 10.0, max_ratio_ = 1.0,
         eps_ = 0.5, gp_ = 0.5, K_ = 4.0;
  std::vector<double> t_list_;
  std::vector<long> n_list_{10, 100, 1000};
  int d_ = 2, k_ = 3, n_ = 30, hk_ = -1;
};

CLI::App* Runner::leaf(CLI::App* parent, const std::string& title, const std::string& help,
                       std::function<void()> handler) {
  CLI::App* a = parent->add_subcommand(title, help);
  add_common(a);
  handlers_[a] = std::move(handler);
  return a;
}

void Runner::build() {
  auto* norm = leaf(&app_, "norm", "injective norm ‖A‖_J of a tensor", [this] { cmd_norm(); });
  norm->add_option("--tensor", tensor_path_, "tensor JSON file");
  norm->add_option("--partition", partition_, "partition, e.g. \"1,2|3\" or [[1,2],[3]]");
  norm->add_option("--cert", cert_, "write the maximizing vectors to this JSON file");
  add_norm_opts(norm);

  auto* mixed = leaf(&app_, "mixednorm", "mixed norm ‖A‖_{J|K}", [this] { cmd_mixednorm(); });
  mixed->add_option("--tensor", tensor_path_, "tensor JSON file");
  mixed->add_option("--split", split_, "split partition, e.g. \"1||2,3\"");
  mixed->add_option("--alpha", mix_alpha_, "outer exponent in [1,2]")->capture_default_str();
  add_norm_opts(mixed);

  auto* bounds = leaf(&app_, "bounds", "moment bound for a polynomial", [this] { cmd_bounds(); });
  bounds->add_option("--poly", poly_path_, "polynomial JSON file");
  bounds->add_option("--p", p_, "moment order >= 2")->capture_default_str();
  bounds->add_option("--kind", kind_, "auto, gaussian, sobolev, subgaussian or weibull")
      ->capture_default_str();
  bounds->add_option("--L", L_, "Sobolev constant or 'auto'")->capture_default_str();
  bounds->add_option("--gamma", gamma_, "Sobolev growth exponent")->capture_default_str();
  add_law(bounds);
  add_norm_opts(bounds);

  auto* tail = leaf(&app_, "tail", "tail bound 2exp(-eta_f(t)/C)", [this] { cmd_tail(); });
  tail->add_option("--poly", poly_path_, "polynomial JSON file");
  tail->add_option("--t", t_list_, "deviation levels")->expected(1, -1);
  tail->add_option("--L", L_, "Sobolev constant or 'auto'")->capture_default_str();
  tail->add_option("--gamma", gamma_, "Sobolev growth exponent")->capture_default_str();
  tail->add_option("--C", C_, "constant in the exponent")->capture_default_str();
  add_law(tail);
  add_norm_opts(tail);

  auto* mc = app_.add_subcommand("mc", "Monte Carlo experiments");
  mc->require_subcommand(1);
  auto* moments = leaf(mc, "moments", "empirical centred moments", [this] { cmd_mc_moments(); });
  moments->add_option("--poly", poly_path_, "polynomial JSON file");
  add_law(moments);
  add_mc(moments);

  auto* mtail = leaf(mc, "tail", "empirical tail probabilities", [this] { cmd_mc_tail(); });
  mtail->add_option("--poly", poly_path_, "polynomial JSON file");
  mtail->add_option("--t", t_list_, "deviation levels")->expected(1, -1);
  add_law(mtail);
  add_mc(mtail);

  auto* chaos = leaf(mc, "chaos", "decoupled vs undecoupled Gaussian chaos", [this] { cmd_mc_chaos(); });
  chaos->add_option("--tensor", tensor_path_, "tensor JSON file");
  chaos->add_option("--mode", mode_, "decoupled, undecoupled or both")->capture_default_str();
  add_mc(chaos);

  auto* sandwich = leaf(mc, "sandwich", "empirical moments against the moment bound",
                        [this] { cmd_mc_sandwich(); });
  sandwich->add_option("--poly", poly_path_, "polynomial JSON file");
  sandwich->add_option("--window", window_, "accepted ratio window [1/w, w]")->capture_default_str();
  add_law(sandwich);
  add_mc(sandwich);
  add_norm_opts(sandwich);

  auto* herm = leaf(mc, "hermite", "tetrahedral approximation of Hermite polynomials",
                    [this] { cmd_mc_hermite(); });
  herm->add_option("--d", d_, "Hermite degree (1..4)")->capture_default_str();
  herm->add_option("--n-list", n_list_, "numbers of summands")->capture_default_str()->expected(1, -1);
  add_mc(herm);

  auto* sob = leaf(mc, "sobolev", "Sobolev moment growth check", [this] { cmd_mc_sobolev(); });
  sob->add_option("--poly", poly_path_, "polynomial JSON file");
  sob->add_option("--max-ratio", max_ratio_, "largest accepted lhs/rhs")->capture_default_str();
  add_law(sob);
  add_mc(sob);

  auto* graphs = app_.add_subcommand("graphs", "subgraph counts in G(n,p)");
  graphs->require_subcommand(1);
  auto* tri = leaf(graphs, "triangles", "triangle count tails", [this] { cmd_graphs_triangles(); });
  tri->add_option("--n", n_, "vertices")->capture_default_str();
  tri->add_option("--p", gp_, "edge probability")->capture_default_str();
  tri->add_option("--k", k_, "cycle length (3..5)")->capture_default_str();
  tri->add_option("--N", mc_.N, "sampled graphs")->capture_default_str();
  tri->add_option("--batch", mc_.batch, "samples per RNG stream")->capture_default_str();
  tri->add_option("--eps", eps_, "relative deviation t = eps E Y")->capture_default_str();
  tri->add_option("--t", t_list_, "absolute deviations (override --eps)")->expected(1, -1);
  tri->add_option("--C", C_, "constant in the exponent")->capture_default_str();

  auto* cyc = leaf(graphs, "cyclebound", "norm bounds for cycle counts",
                   [this] { cmd_graphs_cyclebound(); });
  cyc->add_option("--k", k_, "cycle length")->capture_default_str();
  cyc->add_option("--n", n_, "vertices")->capture_default_str();
  cyc->add_option("--p", gp_, "edge probability")->capture_default_str();
  cyc->add_option("--d", d_, "derivative order")->capture_default_str();
  cyc->add_option("--partition", partition_, "partition of [d]; all partitions when omitted");
  cyc->add_option("--graph", graph_path_, "graph JSON file instead of a cycle");

  auto* rmt = leaf(&app_, "rmt", "linear eigenvalue statistics of Wigner matrices", [this] { cmd_rmt(); });
  rmt->add_option("--f", poly_path_, "one-variable polynomial JSON file");
  rmt->add_option("--n", n_, "matrix size")->capture_default_str();
  rmt->add_option("--replicas", mc_.N, "sampled matrices")->capture_default_str();
  rmt->add_option("--batch", mc_.batch, "samples per RNG stream")->capture_default_str();
  rmt->add_option("--t", t_list_, "deviation levels")->expected(1, -1);
  rmt->add_option("--CL", C_, "constant in the exponent")->capture_default_str();
  rmt->add_option("--K", K_, "half-width of the grid for sup |f''|")->capture_default_str();
  rmt->add_option("--convention", convention_, "unit or goe")->capture_default_str();

  auto* hermite = leaf(&app_, "hermite", "Hermite coefficients and expansions", [this] { cmd_hermite(); });
  hermite->add_option("--poly", poly_path_, "polynomial JSON file to expand");
  hermite->add_option("--k", hk_, "print the coefficients of h_k instead");
}

CLI::App* Runner::active_leaf() const {
  const CLI::App* cur = &app_;
  for (;;) {
    auto subs = cur->get_subcommands();
    if (subs.empty()) break;
    cur = subs.front();
  }
  return const_cast<CLI::App*>(cur);
}

// Values from the config file fill options not given on the command line.
void Runner::apply_config(CLI::App* active) {
  if (config_path_.empty()) return;
  json cfg;
  try {
    cfg = json::parse(read_file(config_path_));
  } catch (const json::parse_error& e) {
    throw ParseError(config_path_ + ": " + e.what());
  }
  if (!cfg.is_object()) throw ParseError(config_path_ + ": expected a JSON object");
  for (const auto& [key, value] : cfg.items()) {
    if (key == "command") continue;
    CLI::Option* opt = active->get_option_no_throw("--" + key);
    if (opt == nullptr) throw UsageError("config key \"" + key + "\" is not an option of " + active->get_name());
    if (opt->count() > 0) continue;
    std::vector<std::string> vals;
    auto scalar = [&](const json& v) {
      if (v.is_string()) return v.get<std::string>();
      if (v.is_boolean()) return std::string(v.get<bool>() ? "true" : "false");
      if (v.is_number()) return v.dump();
      if (v.is_array()) return v.dump();  // e.g. a partition [[1,2],[3]]
      throw UsageError("config key \"" + key + "\" has an unsupported value");
    };
    if (value.is_array() && !(key == "partition" || key == "split")) {
      for (const auto& v : value) vals.push_back(scalar(v));
    } else {
      vals.push_back(scalar(value));
    }
    opt->clear();
    opt->add_result(vals);
    opt->run_callback();
  }
}

int Runner::run(std::vector<std::string> args) {
  // A config file may name the command when the command line does not.
  std::string config;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) config = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) config = args[i].substr(9);
  }
  const bool has_command = std::any_of(args.begin(), args.end(), [&](const std::string& a) {
    return app_.get_subcommand_no_throw(a) != nullptr;
  });
  if (!config.empty() && !has_command) {
    json cfg;
    try {
      cfg = json::parse(read_file(config));
    } catch (const json::parse_error& e) {
      throw ParseError(config + ": " + e.what());
    }
    if (cfg.contains("command")) {
      std::vector<std::string> cmd;
      if (cfg["command"].is_array())
        for (const auto& c : cfg["command"]) cmd.push_back(c.get<std::string>());
      else
        cmd = CLI::detail::split(cfg["command"].get<std::string>(), ' ');
      args.insert(args.begin(), cmd.begin(), cmd.end());
    }
  }

  std::reverse(args.begin(), args.end());
  try {
    app_.parse(args);
  } catch (const CLI::CallForHelp&) {
    out_ << app_.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out_ << app_.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out_ << CONCENTRO_VERSION << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err_ << "error: " << e.what() << "\n";
    const CLI::App* where = active_leaf();
    err_ << where->help();
    return 2;
  }

  CLI::App* active = active_leaf();
  apply_config(active);
  if (common_.workers < 1) throw UsageError("--workers must be >= 1");
  auto it = handlers_.find(active);
  if (it == handlers_.end()) throw UsageError("incomplete command; see --help");
  it->second();
  return 0;
}

ProductDistribution Runner::distribution(int n) const {
  if (!law_.dist.empty()) return distribution_from_json(read_file(law_.dist), n);
  if (law_.law == "gaussian") return ProductDistribution::gaussian(n);
  if (law_.law == "rademacher") return ProductDistribution::rademacher(n);
  if (law_.law == "bernoulli") return ProductDistribution::bernoulli(n, law_.pp);
  if (law_.law == "weibull") return ProductDistribution::weibull(n, law_.alpha);
  throw UsageError("--law must be gaussian, rademacher, bernoulli or weibull, got \"" + law_.law + "\"");
}

double Runner::auto_L(const ProductDistribution& d) const {
  if (L_ != "auto") {
    try {
      std::size_t used = 0;
      const double v = std::stod(L_, &used);
      if (used != L_.size()) throw std::invalid_argument("trailing text");
      return v;
    } catch (const std::exception&) {
      throw UsageError("--L must be a number or 'auto', got \"" + L_ + "\"");
    }
  }
  if (d.sobolev()) return d.sobolev()->L;
  if (d.law() == Law::Gaussian) return 1.0;
  const double psi = d.psi2();
  if (!std::isfinite(psi)) throw DomainError("--L auto needs a sub-Gaussian law; pass --L explicitly");
  return psi;
}

BoundReport Runner::moment_bound(const Polynomial& f, const ProductDistribution& d, double p) const {
  std::string kind = kind_;
  if (kind == "auto") {
    if (d.law() == Law::Gaussian && L_ == "auto") kind = "gaussian";
    else if (d.law() == Law::Weibull) kind = "weibull";
    else if (d.sobolev()) kind = "sobolev";
    else kind = "subgaussian";
  }
  const NormOptions o = norm_options();
  if (kind == "gaussian") return gaussian_moment_bound(f, d, p, o);
  if (kind == "weibull") return weibull_moment_bound(f, d, p, d.law() == Law::Weibull ? d.alpha() : law_.alpha, o);
  if (kind == "sobolev") {
    const double g = d.sobolev() ? d.sobolev()->gamma : gamma_;
    return sobolev_moment_bound(f, d, p, auto_L(d), g, o);
  }
  if (kind == "subgaussian") return subgaussian_moment_bound(DerivativeNorms(f, d, o), p, auto_L(d));
  throw UsageError("--kind must be auto, gaussian, sobolev, subgaussian or weibull");
}

CsvWriter Runner::report(std::vector<std::string> columns) const {
  CsvWriter w(std::move(columns));
  w.meta("version", CONCENTRO_VERSION);
  std::string cmd;
  for (const CLI::App* a = active_leaf(); a != nullptr && a != &app_; a = a->get_parent())
    cmd = a->get_name() + (cmd.empty() ? "" : " " + cmd);
  w.meta("command", cmd);
  w.meta("seed", std::to_string(common_.seed));
  for (const CLI::Option* opt : active_leaf()->get_options()) {
    const std::string name = opt->get_name(false, true);
    if (name.empty() || name == "--help" || name == "-h" || name == "--out" || name == "--seed") continue;
    std::string value;
    if (opt->count() > 0) {
      const auto& res = opt->results();
      for (std::size_t i = 0; i < res.size(); ++i) value += (i ? " " : "") + res[i];
    } else {
      value = opt->get_default_str();
    }
    if (!value.empty()) w.meta(name.substr(2), value);
  }
  return w;
}

void Runner::emit(const CsvWriter& w) {
  if (common_.out.empty()) {
    w.write(out_);
    return;
  }
  std::ofstream f(common_.out, std::ios::binary);
  if (!f) throw ParseError("cannot write file: " + common_.out);
  w.write(f);
  out_ << "wrote " << common_.out << "\n";
}

void Runner::bound_rows(CsvWriter& w, const BoundReport& r) {
  for (const auto& t : r.terms)
    w.row({std::to_string(t.d), t.partition, num(t.exponent), num(t.norm),
           t.lower_bound ? "als-lower" : "exact", num(t.value)});
  w.meta("constants", "up to universal constant");
  if (r.has_lower_bound_terms()) w.meta("note", "als-lower terms use attained lower bounds for the norm");
}

void Runner::cmd_norm() {
  const Tensor a = load_tensor(need(tensor_path_, "--tensor"));
  const SetPartition part = partition_from_text(need(partition_, "--partition"), a.order());
  const NormResult r = norm_J(a, part, norm_options());
  std::string cert = cert_;
  if (cert.empty() && !common_.out.empty()) cert = common_.out + ".cert.json";
  if (!cert.empty()) {
    std::ofstream f(cert, std::ios::binary);
    if (!f) throw ParseError("cannot write file: " + cert);
    f << certificate_to_json(r) << "\n";
  }
  CsvWriter w = report({"partition", "value", "method", "flag", "certificate"});
  w.row({part.to_string(), num(r.value), std::string(to_string(r.method)),
         r.lower_bound() ? "als-lower" : "exact", cert.empty() ? "-" : cert});
  emit(w);
}

void Runner::cmd_mixednorm() {
  const Tensor a = load_tensor(need(tensor_path_, "--tensor"));
  const SplitPartition split = SplitPartition::parse(need(split_, "--split"), a.order());
  const MixedNormResult r = mixed_norm_terms(a, split, mix_alpha_, norm_options());
  CsvWriter w = report({"split", "alpha", "value", "choices"});
  w.row({split.to_string(), num(mix_alpha_), num(r.value), std::to_string(r.terms.size())});
  emit(w);
}

void Runner::cmd_bounds() {
  const Polynomial f = load_polynomial(need(poly_path_, "--poly"));
  const ProductDistribution d = distribution(f.nvars());
  const BoundReport r = moment_bound(f, d, p_);
  CsvWriter w = report({"d", "partition", "exponent", "norm", "flag", "term"});
  w.meta("report", r.kind);
  for (const auto& [k, v] : r.meta) w.meta("bound." + k, v);
  bound_rows(w, r);
  w.row({"", "total", "", "", r.has_lower_bound_terms() ? "als-lower" : "exact", num(r.total)});
  emit(w);
}

void Runner::cmd_tail() {
  const Polynomial f = load_polynomial(need(poly_path_, "--poly"));
  if (t_list_.empty()) throw UsageError("missing required option --t");
  const ProductDistribution d = distribution(f.nvars());
  const double L = auto_L(d);
  const double gamma = d.sobolev() && gamma_ == 0.5 ? d.sobolev()->gamma : gamma_;
  const DerivativeNorms norms(f, d, norm_options());
  CsvWriter w = report({"t", "d", "partition", "exponent", "norm", "flag", "term"});
  w.meta("L.used", L);
  w.meta("constants", "up to universal constant");
  for (double t : t_list_) {
    const BoundReport r = eta_tail(norms, t, L, C_, gamma);
    for (const auto& term : r.terms)
      w.row({num(t), std::to_string(term.d), term.partition, num(term.exponent), num(term.norm),
             term.lower_bound ? "als-lower" : "exact", num(term.value)});
    w.row({num(t), "", "eta", "", "", r.has_lower_bound_terms() ? "als-lower" : "exact", num(r.total)});
    w.row({num(t), "", "tail", "", "", "", num(r.tail)});
  }
  emit(w);
}

void Runner::cmd_mc_moments() {
  const Polynomial f = load_polynomial(need(poly_path_, "--poly"));
  const auto rows = empirical_moment(f, distribution(f.nvars()), mc_config());
  CsvWriter w = report({"p", "value", "std_error", "N"});
  for (const auto& r : rows) w.row({num(r.p), num(r.value), num(r.std_error), std::to_string(r.N)});
  emit(w);
}

void Runner::cmd_mc_tail() {
  const Polynomial f = load_polynomial(need(poly_path_, "--poly"));
  if (t_list_.empty()) throw UsageError("missing required option --t");
  const MCConfig cfg = mc_config();
  cfg.validate();
  if (cfg.N < 1000) throw DomainError("empirical tails need N >= 1000");
  const auto z = sample_polynomial(f, distribution(f.nvars()), cfg);
  CsvWriter w = report({"t", "prob", "lower", "upper", "count", "N"});
  for (double t : t_list_) {
    if (!(t >= 0.0)) throw DomainError("t must be nonnegative");
    const TailEstimate e = tail_of(z, t);
    w.row({num(t), num(e.prob), num(e.lower), num(e.upper), std::to_string(e.count), std::to_string(e.N)});
  }
  emit(w);
}

void Runner::cmd_mc_chaos() {
  const Tensor a = load_tensor(need(tensor_path_, "--tensor"));
  if (mode_ != "decoupled" && mode_ != "undecoupled" && mode_ != "both")
    throw UsageError("--mode must be decoupled, undecoupled or both");
  CsvWriter w = report({"mode", "p", "value", "std_error", "N"});
  const MCConfig cfg = mc_config();
  for (double p : cfg.p_list) {
    if (mode_ != "undecoupled") {
      const auto e = chaos_moment(a, ChaosMode::Decoupled, p, cfg);
      w.row({"decoupled", num(p), num(e.value), num(e.std_error), std::to_string(e.N)});
    }
    if (mode_ != "decoupled") {
      const auto e = chaos_moment(a, ChaosMode::Undecoupled, p, cfg);
      w.row({"undecoupled", num(p), num(e.value), num(e.std_error), std::to_string(e.N)});
    }
  }
  emit(w);
}

void Runner::cmd_mc_sandwich() {
  const Polynomial f = load_polynomial(need(poly_path_, "--poly"));
  const ProductDistribution d = distribution(f.nvars());
  const auto rows = sandwich_check(f, d, mc_config(), [&](double p) { return moment_bound(f, d, p); }, window_);
  CsvWriter w = report({"p", "empirical", "std_error", "bound", "ratio", "flag", "pass"});
  for (const auto& r : rows)
    w.row({num(r.p), num(r.empirical), num(r.std_error), num(r.bound), num(r.ratio),
           r.degenerate ? "degenerate" : "", r.pass ? "1" : "0"});
  emit(w);
}

void Runner::cmd_mc_hermite() {
  const auto rows = hermite_tetrahedral_convergence(d_, n_list_, mc_config());
  CsvWriter w = report({"n_terms", "mean_sq", "std_error", "exact"});
  for (const auto& r : rows)
    w.row({std::to_string(r.n_terms), num(r.mean_sq), num(r.std_error), num(r.exact)});
  emit(w);
}

void Runner::cmd_mc_sobolev() {
  const Polynomial f = load_polynomial(need(poly_path_, "--poly"));
  const auto rows = sobolev_check(distribution(f.nvars()), f, mc_config(), max_ratio_);
  CsvWriter w = report({"p", "lhs", "rhs", "ratio", "pass"});
  for (const auto& r : rows)
    w.row({num(r.p), num(r.lhs), num(r.rhs), num(r.ratio), r.pass ? "1" : "0"});
  emit(w);
}

void Runner::cmd_graphs_triangles() {
  MCConfig cfg = mc_config();
  cfg.p_list = {2.0};
  std::vector<double> ts = t_list_;
  if (ts.empty()) ts = {eps_ * expected_cycle_count(k_, n_, gp_)};
  const ErExperiment ex = er_tail_experiment(k_, n_, gp_, ts, cfg, C_);
  CsvWriter w = report({"t", "prob", "lower", "upper", "bound"});
  w.meta("mean", ex.mean);
  w.meta("std_error", ex.std_error);
  w.meta("expected", ex.expected);
  w.meta("constants", "up to universal constant");
  for (const auto& r : ex.rows)
    w.row({num(r.t), num(r.empirical.prob), num(r.empirical.lower), num(r.empirical.upper), num(r.bound)});
  emit(w);
}

void Runner::cmd_graphs_cyclebound() {
  const bool general = !graph_path_.empty();
  const GraphSpec h = general ? load_graph(graph_path_) : GraphSpec::cycle(k_);
  if (d_ < 1 || d_ > static_cast<int>(h.edges().size()))
    throw DomainError("--d must lie in [1, number of edges]");
  std::vector<SetPartition> parts;
  if (partition_.empty()) parts = enumerate_partitions(d_);
  else parts.push_back(partition_from_text(partition_, d_));
  CsvWriter w = report({"d", "partition", "lemma_rhs", "shape"});
  for (const auto& part : parts) {
    if (h.is_cycle()) {
      const CycleNormBound b = cycle_norm_bound(h, part, n_, gp_);
      w.row({std::to_string(d_), part.to_string(), num(b.lemma_rhs), num(b.shape)});
    } else {
      w.row({std::to_string(d_), part.to_string(), num(subgraph_norm_bound(h, part, n_, gp_)), ""});
    }
  }
  emit(w);
}

void Runner::cmd_rmt() {
  const Polynomial f = load_polynomial(need(poly_path_, "--f"));
  if (t_list_.empty()) throw UsageError("missing required option --t");
  WignerSpec spec;
  spec.n = n_;
  if (convention_ == "unit") spec.convention = WignerConvention::UnitVariance;
  else if (convention_ == "goe") spec.convention = WignerConvention::Goe;
  else throw UsageError("--convention must be unit or goe");
  const WignerExperiment ex = wigner_experiment(f, spec, t_list_, mc_config(), C_, K_);
  CsvWriter w = report({"t", "prob", "lower", "upper", "bound"});
  w.meta("mean_z", ex.mean_z);
  w.meta("z_std_error", ex.z_std_error);
  w.meta("sobolev_empirical", ex.sobolev_empirical);
  w.meta("sobolev_std_error", ex.sobolev_std_error);
  w.meta("sobolev_limit", ex.sobolev_limit);
  w.meta("constants", "C_L is a free parameter");
  for (const auto& r : ex.rows)
    w.row({num(r.t), num(r.empirical.prob), num(r.empirical.lower), num(r.empirical.upper), num(r.bound)});
  emit(w);
}

void Runner::cmd_hermite() {
  if (hk_ >= 0) {
    const HermiteCoeffs h = hermite(hk_);
    CsvWriter w = report({"power", "coefficient"});
    for (std::size_t j = 0; j < h.coeffs.size(); ++j)
      if (h.coeffs[j] != 0) w.row({std::to_string(j), std::to_string(h.coeffs[j])});
    emit(w);
    return;
  }
  const Polynomial f = load_polynomial(need(poly_path_, "--poly or --k"));
  CsvWriter w = report({"degrees", "coefficient"});
  for (const auto& [deg, c] : hermite_expansion(f)) {
    std::string s;
    for (std::size_t i = 0; i < deg.size(); ++i) s += (i ? " " : "") + std::to_string(deg[i]);
    w.row({s, num(c)});
  }
  emit(w);
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    Runner r(out, err);
    return r.run(args);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ShapeError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Unsupported& e) {
    err << "error: unsupported: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int dispatch(int argc, const char* const* argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dispatch(args, std::cout, std::cerr);
}

}  // namespace concentro::cli
