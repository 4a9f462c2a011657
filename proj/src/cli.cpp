#include "cqm/cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cqm/charges.hpp"
#include "cqm/config.hpp"
#include "cqm/dynamics.hpp"
#include "cqm/energy.hpp"
#include "cqm/format.hpp"
#include "cqm/potentials.hpp"
#include "cqm/symmetry.hpp"
#include "cqm/verify.hpp"

namespace cqm::cli {

using config::OutputFormat;
using config::RunConfig;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr int kCsvVersion = 1;

// CSV with a versioned comment line naming the columns, then a header row.
class Csv {
 public:
  Csv(const std::string& command, std::vector<std::string> columns) : columns_(std::move(columns)) {
    os_ << "# cqm " << command << " csv v" << kCsvVersion << ": " << joined(columns_) << "\n" << joined(columns_)
        << "\n";
  }
  void row(const std::vector<std::string>& cells) { os_ << joined(cells) << "\n"; }
  std::string str() const { return os_.str(); }

 private:
  static std::string joined(const std::vector<std::string>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
    return s;
  }
  std::vector<std::string> columns_;
  std::ostringstream os_;
};

std::string num(double v) { return format_number(v); }

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

// JSON cannot hold infinities; they are written as the string "inf".
ordered_json jnum(double v) {
  if (std::isfinite(v)) return v;
  return format_number(v);
}

// A subcommand: its CLI11 app, the flags that map onto config keys, and the
// action producing the output text.
struct Command {
  CLI::App* app = nullptr;
  std::map<std::string, std::string> values;  // config key -> raw flag text
  std::vector<std::pair<std::string, CLI::Option*>> flags;
  std::string config_path;
  std::function<int(const RunConfig&, std::string&)> action;

  void flag(const std::string& name, const std::string& key, const std::string& help) {
    flags.emplace_back(key, app->add_option(name, values[key], help)->type_name("VALUE"));
  }
};

void add_io_flags(Command& c) {
  c.app->add_option("--config", c.config_path, "JSON config file; flags override its keys")->type_name("PATH");
  c.flag("--out", "out", "write output to this file instead of stdout");
  c.flag("--format", "format", "csv or json (default csv)");
  c.flag("--jobs", "jobs", "worker threads for row evaluation (default 1)");
}

void add_model_flags(Command& c) {
  c.flag("--s", "s", "length scale s (default 1)");
  c.flag("--alpha", "alpha", "separation multiplier alpha, x = alpha r / s (default 1)");
  c.flag("--lambda", "lambda", "weak amplitude lambda (default 1)");
  c.flag("--k", "k", "confining amplitude k (default 1)");
  c.flag("--t", "t", "additive constant t of the weak potential (default 0)");
  c.flag("--b", "b", "quark charge b (default 1)");
}

void add_shape_flags(Command& c) {
  c.flag("--shape", "shape", "single, two-quark, three-quark or custom (default single)");
  c.flag("--coeffs", "coeffs", "custom shape numerator coefficients c0,c1,... of p(r)");
  c.flag("--m", "m", "custom shape denominator exponent, p(r) / (s + alpha r)^m");
  c.flag("--shape-c", "shape_c", "three-quark shape: radius of the minimum (default 1)");
}

void add_coefficient_flags(Command& c) {
  c.flag("--K", "K", "confining coefficient K (default 0)");
  c.flag("--P", "P", "confining coefficient P (default 0)");
  c.flag("--C", "C", "confining coefficient C (default 1)");
}

void add_tolerance_flags(Command& c) {
  c.flag("--rel-tol", "tolerance.rel", "relative tolerance of the numerical routines");
  c.flag("--abs-tol", "tolerance.abs", "absolute tolerance of the numerical routines");
  c.flag("--max-evals", "tolerance.max_evals", "evaluation budget of the numerical routines");
}

void add_grid_flags(Command& c) {
  c.flag("--grid-spacing", "grid.spacing", "lin or log (default log)");
  c.flag("--grid-lo", "grid.lo", "first radius (default 0.01)");
  c.flag("--grid-hi", "grid.hi", "last radius (default 100)");
  c.flag("--grid-count", "grid.count", "number of radii (default 101)");
}

RunConfig build_config(const Command& c) {
  RunConfig cfg = c.config_path.empty() ? RunConfig{} : config::load_config_file(c.config_path);
  for (const auto& [key, opt] : c.flags)
    if (opt->count() > 0) cfg.set(key, json(c.values.at(key)));
  cfg.validate();
  return cfg;
}

// ---------------------------------------------------------------------------

int cmd_charges(const RunConfig& cfg, std::string& text) {
  const double gamma_sq = cfg.gamma * cfg.gamma;
  Csv csv("charges", {"q", "gamma_sq", "branch", "root", "b"});
  ordered_json rows = ordered_json::array();
  for (auto branch : {charges::Branch::Minus, charges::Branch::Plus}) {
    const charges::ChargeProblem prob{cfg.q, cfg.gamma, branch};
    prob.validate();
    const auto roots = charges::solve_coulomb_charge(prob);
    for (auto [which, b] : {std::pair{"plus", roots.b_plus}, std::pair{"minus", roots.b_minus}}) {
      csv.row({num(cfg.q), num(gamma_sq), charges::to_string(branch), which, num(b)});
      rows.push_back({{"q", cfg.q}, {"gamma_sq", gamma_sq}, {"branch", charges::to_string(branch)},
                      {"root", which}, {"b", b}});
    }
  }
  text = cfg.format == OutputFormat::Csv ? csv.str() : dump(rows);
  return kExitOk;
}

int cmd_potential(const RunConfig& cfg, std::string& text) {
  const auto shape = cfg.make_shape();
  const auto rows = potentials::sample_curves(shape, cfg.model, cfg.coeffs, cfg.grid, cfg.jobs);
  Csv csv("potential", {"r", "psi", "psi_prime", "astar", "phi_k", "phi_p", "singular"});
  ordered_json arr = ordered_json::array();
  for (const auto& r : rows) {
    const double astar = r.astar.value_or(numerics::kInfinity);
    const double phi_k = r.phi_k.value_or(numerics::kInfinity);
    csv.row({num(r.r), num(r.psi), num(r.psi_prime), num(astar), num(phi_k), num(r.phi_p), r.singular() ? "1" : "0"});
    arr.push_back({{"r", r.r}, {"psi", r.psi}, {"psi_prime", r.psi_prime}, {"astar", jnum(astar)},
                   {"phi_k", jnum(phi_k)}, {"phi_p", r.phi_p}, {"singular", r.singular()}});
  }
  text = cfg.format == OutputFormat::Csv ? csv.str() : dump(arr);
  return kExitOk;
}

int cmd_regions(const RunConfig& cfg, std::string& text) {
  const auto dec = potentials::decompose_regions(cfg.make_shape(), cfg.model);
  Csv csv("regions", {"region", "r_lo", "r_hi", "x_lo", "x_hi", "psi_prime_sign"});
  ordered_json regions = ordered_json::array();
  int i = 1;
  for (const auto& r : dec.regions) {
    const double x_lo = cfg.model.x_of(r.r_lo), x_hi = cfg.model.x_of(r.r_hi);
    csv.row({std::to_string(i), num(r.r_lo), num(r.r_hi), num(x_lo), num(x_hi), std::to_string(r.psi_prime_sign)});
    regions.push_back({{"region", i}, {"r_lo", r.r_lo}, {"r_hi", jnum(r.r_hi)}, {"x_lo", x_lo}, {"x_hi", jnum(x_hi)},
                       {"psi_prime_sign", r.psi_prime_sign}});
    ++i;
  }
  ordered_json doc{{"extrema", dec.extrema}, {"regions", regions}};
  text = cfg.format == OutputFormat::Csv ? csv.str() : dump(doc);
  return kExitOk;
}

int cmd_energy_min(const RunConfig& cfg, std::string& text) {
  const auto shape = cfg.make_shape();
  const energy::EnergyFunction xi(cfg.model, shape, cfg.coeffs, true, cfg.tolerance);
  const auto dec = potentials::decompose_regions(shape, cfg.model);
  Csv csv("energy-min", {"region", "r_lo", "r_hi", "status", "r_m", "x_m", "xi"});
  ordered_json arr = ordered_json::array();
  int i = 1;
  for (const auto& reg : dec.regions) {
    ordered_json row{{"region", i}, {"r_lo", reg.r_lo}, {"r_hi", jnum(reg.r_hi)}};
    try {
      const auto m = energy::find_energy_minimum(xi, reg);
      csv.row({std::to_string(i), num(reg.r_lo), num(reg.r_hi), "minimum", num(m.r_m), num(m.x_m), num(m.value)});
      row["status"] = "minimum";
      row["r_m"] = m.r_m;
      row["x_m"] = m.x_m;
      row["xi"] = m.value;
    } catch (const energy::NoInteriorMinimum&) {
      csv.row({std::to_string(i), num(reg.r_lo), num(reg.r_hi), "none", "", "", ""});
      row["status"] = "none";
    }
    arr.push_back(row);
    ++i;
  }
  text = cfg.format == OutputFormat::Csv ? csv.str() : dump(arr);
  return kExitOk;
}

double lambda_over_k(const RunConfig& cfg) {
  if (cfg.model.k_amp == 0.0) throw std::invalid_argument("k must be nonzero");
  return cfg.model.lambda_amp / cfg.model.k_amp;
}

double n_for(const RunConfig& cfg) {
  if (cfg.n) return *cfg.n;
  const double a = cfg.model.alpha;
  return energy::solve_single_quark_n(lambda_over_k(cfg) / (a * a * a), cfg.tolerance);
}

int cmd_single_quark(const RunConfig& cfg, std::string& text) {
  const double a = cfg.model.alpha;
  const double rhs = lambda_over_k(cfg) / (a * a * a);
  const double n = n_for(cfg);
  const auto rep = dynamics::energy_scale_report(cfg.model, n);
  const std::vector<std::pair<std::string, double>> fields{
      {"rhs", rhs},           {"n", n},
      {"r_m", rep.r},         {"xi_k", rep.xi_k},
      {"xi_lambda", rep.xi_lambda}, {"xi_coulomb", rep.xi_coul},
      {"xi_k_MeV", rep.xi_k_MeV},   {"xi_lambda_MeV", rep.xi_lambda_MeV},
      {"xi_coulomb_MeV", rep.xi_coul_MeV}, {"lambda_to_k_ratio", rep.lambda_to_k_ratio()},
  };
  std::vector<std::string> cols, cells;
  ordered_json doc;
  for (const auto& [k, v] : fields) {
    cols.push_back(k);
    cells.push_back(num(v));
    doc[k] = v;
  }
  Csv csv("single-quark", cols);
  csv.row(cells);
  text = cfg.format == OutputFormat::Csv ? csv.str() : dump(doc);
  return kExitOk;
}

ordered_json row_json(const energy::UnstableRow& r) {
  return {{"x_min", r.x_min}, {"x_max", r.x_max}, {"E_min", r.E_min}, {"E_max", r.E_max}, {"depth", r.depth}};
}

ordered_json seed_json(const energy::SeedResult& s) {
  ordered_json j{{"seed", energy::to_string(s.seed)}, {"x_seed", s.x_seed}, {"N", s.N}, {"rel_err_N", s.rel_err_N},
                 {"analyzed", s.analyzed}};
  if (s.analyzed) j["row"] = row_json(s.row);
  return j;
}

// A single user-supplied E(x): the same columns, with N_paper and rel_err_N empty.
int cmd_unstable(const RunConfig& cfg, std::string& text) {
  const auto row = energy::analyze_unstable(cfg.unstable);
  Csv csv("table1", {"D", "N_computed", "N_paper", "x_min", "x_max", "E_min", "E_max", "depth", "rel_err_N"});
  csv.row({num(cfg.unstable.D), num(cfg.unstable.N), "", num(row.x_min), num(row.x_max), num(row.E_min),
           num(row.E_max), num(row.depth), ""});
  ordered_json j{{"D", cfg.unstable.D}, {"U", cfg.unstable.U}, {"N", cfg.unstable.N}, {"T", cfg.unstable.T},
                 {"row", row_json(row)}};
  text = cfg.format == OutputFormat::Csv ? csv.str() : dump(j);
  return kExitOk;
}

int cmd_table1(const RunConfig& cfg, std::string& text) {
  if (cfg.unstable_given) return cmd_unstable(cfg, text);
  const auto reps = energy::reproduce_table1(energy::table1_reference(), cfg.jobs);
  Csv csv("table1", {"D", "N_computed", "N_paper", "x_min", "x_max", "E_min", "E_max", "depth", "rel_err_N"});
  ordered_json arr = ordered_json::array();
  for (const auto& rep : reps) {
    const auto& d = rep.designated;
    if (d.analyzed) {
      csv.row({num(rep.reference.D), num(d.N), num(rep.reference.N), num(d.row.x_min), num(d.row.x_max),
               num(d.row.E_min), num(d.row.E_max), num(d.row.depth), num(d.rel_err_N)});
    } else {
      csv.row({num(rep.reference.D), num(d.N), num(rep.reference.N), "", "", "", "", "", num(d.rel_err_N)});
    }
    const auto& ref = rep.reference;
    ordered_json j{{"D", ref.D},
                   {"published", {{"N", ref.N}, {"x_min", ref.x_min}, {"x_max", ref.x_max}, {"E_min", ref.E_min},
                                  {"E_max", ref.E_max}, {"depth", ref.depth}, {"seed", energy::to_string(ref.seed)}}},
                   {"designated", seed_json(rep.designated)},
                   {"alternate", seed_json(rep.alternate)}};
    j["at_published_N"] = rep.reference_analyzed ? row_json(rep.with_reference_N) : ordered_json(nullptr);
    arr.push_back(j);
  }
  text = cfg.format == OutputFormat::Csv ? csv.str() : dump(arr);
  return kExitOk;
}

int cmd_shm(const RunConfig& cfg, std::string& text) {
  const double n = n_for(cfg);
  const auto res = dynamics::shm_single_quark_closed_form(n, cfg.model.alpha, lambda_over_k(cfg), cfg.model.s);
  const auto phys = dynamics::to_physical(res);
  const std::vector<std::pair<std::string, double>> fields{
      {"n", n},
      {"r_m", res.r_m},
      {"xi", res.xi},
      {"xi_second", res.xi_second},
      {"omega_per_s", phys.omega_per_s},
      {"photon_energy_GeV", phys.photon_energy_GeV},
  };
  std::vector<std::string> cols, cells;
  ordered_json doc;
  for (const auto& [k, v] : fields) {
    cols.push_back(k);
    cells.push_back(num(v));
    doc[k] = v;
  }
  Csv csv("shm", cols);
  csv.row(cells);
  text = cfg.format == OutputFormat::Csv ? csv.str() : dump(doc);
  return kExitOk;
}

int cmd_symmetry(const RunConfig&, std::string& text, int size, bool neutral_only) {
  using namespace symmetry;
  ordered_json pairs = ordered_json::array();
  for (const auto& p : all_qpairs()) pairs.push_back(p.render());
  ordered_json comps = ordered_json::array();
  const int lo = size == 0 ? 1 : size, hi = size == 0 ? 4 : size;
  for (int k = lo; k <= hi; ++k) {
    for (const auto& c : enumerate_compositions(k, neutral_only)) {
      ordered_json labels = ordered_json::array();
      for (const auto& p : c.pairs()) labels.push_back(p.render());
      const bool neutral = is_q_neutral(c);
      const char* status = !neutral ? "not q-neutral" : is_named_hadron_set(c) ? "named" : "admissible, not named";
      comps.push_back({{"size", c.size()}, {"kind", to_string(c.kind())}, {"pairs", labels},
                       {"q_sum_thirds", c.thirds()}, {"q_neutral", neutral}, {"status", status}});
    }
  }
  ordered_json protons = ordered_json::array();
  for (const auto& cfg : proton_configurations()) {
    ordered_json quarks = ordered_json::array();
    std::vector<QPair> ps;
    double charge = 0.0;
    for (const auto& q : cfg) {
      quarks.push_back(q.render());
      ps.push_back(q.pair);
      charge += q.charge;
    }
    protons.push_back({{"quarks", quarks}, {"charge", charge}, {"q_neutral", is_q_neutral(Composition(ps))}});
  }
  text = dump({{"qpairs", pairs}, {"compositions", comps}, {"proton_configurations", protons}});
  return kExitOk;
}

int cmd_mass(const RunConfig& cfg, std::string& text) {
  const auto shape = cfg.make_shape();
  const double m = energy::free_particle_mass(cfg.model, shape, cfg.tolerance);
  const bool single = cfg.shape.kind == "single";
  const double closed = single ? energy::free_particle_mass_single_quark_closed_form(cfg.model) : 0.0;
  Csv csv("mass", {"mass", "closed_form"});
  csv.row({num(m), single ? num(closed) : ""});
  ordered_json doc{{"mass", m}, {"closed_form", single ? ordered_json(closed) : ordered_json(nullptr)}};
  text = cfg.format == OutputFormat::Csv ? csv.str() : dump(doc);
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::string& text) {
  verify::VerifyOptions opt;
  opt.golden_path = cfg.golden;
  opt.tolerance = cfg.tolerance;
  const auto rep = verify::run_verify(opt);
  if (cfg.format == OutputFormat::Json) {
    ordered_json arr = ordered_json::array();
    for (const auto& c : rep.criteria)
      arr.push_back({{"id", c.id}, {"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    text = dump({{"criteria", arr}, {"passed", rep.passed()}, {"total", rep.criteria.size()}});
  } else {
    text = rep.render();
  }
  return rep.all_pass() ? kExitOk : kExitCriterionFailure;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Classical dual-field quark model: charges, potentials, energies, oscillations, q-pairs", "cqm"};
  app.require_subcommand(1);
  std::vector<std::unique_ptr<Command>> commands;

  auto make = [&](const std::string& name, const std::string& desc, const std::string& formulas) -> Command& {
    auto c = std::make_unique<Command>();
    c->app = app.add_subcommand(name, desc);
    c->app->footer(formulas);
    add_io_flags(*c);
    commands.push_back(std::move(c));
    return *commands.back();
  };

  auto& charges_cmd = make("charges", "Coulomb charges allowed by the static null condition",
                           "Solves b^2 -/+ q b - gamma^2 q^2 / 2 = 0 for both sign branches:\n"
                           "  b = q [1 +/- sqrt(1 + 2 gamma^2)] / 2 (minus branch), negated for the plus branch.\n"
                           "gamma^2 = 4, q = 1/3 gives the fractional charges 2/3 and -1/3.");
  charges_cmd.flag("--q", "q", "seed charge q, fractions allowed (default 1/3)");
  charges_cmd.flag("--gamma", "gamma", "signed exponent gamma (default -2)");
  charges_cmd.flag("--gamma-sq", "gamma_sq", "gamma^2; sets gamma = -sqrt(gamma^2)");
  charges_cmd.action = cmd_charges;

  auto& potential_cmd = make("potential", "Sample the weak, confining and particular potentials on a grid",
                             "psi_lambda = lambda s^2 (Psi + t),  A* = Psi''/Psi' + 2/r,\n"
                             "phi_k = (k/s^3) [K s^3 Psi/(r^2 Psi') + P/(r^2 Psi') + C/(r^2 |Psi'|)],\n"
                             "phi_p = b alpha^3 r^2 / (s + alpha r)^3.\n"
                             "Rows at the origin or at an extremum of Psi carry inf in astar and phi_k and\n"
                             "singular = 1.");
  add_model_flags(potential_cmd);
  add_shape_flags(potential_cmd);
  add_coefficient_flags(potential_cmd);
  add_grid_flags(potential_cmd);
  potential_cmd.action = cmd_potential;

  auto& regions_cmd = make("regions", "Split space into one-quark regions at the extrema of Psi",
                           "Region edges are the zeros of Psi', where phi_k diverges; the sign of Psi'\n"
                           "is constant inside each region.");
  add_model_flags(regions_cmd);
  add_shape_flags(regions_cmd);
  regions_cmd.action = cmd_regions;

  auto& emin_cmd = make("energy-min", "Energy minimum in every region",
                        "xi(r) = xi_c + b phi_k(r) + b psi_lambda(r), with\n"
                        "xi_c = 1/2 int (phi_p')^2 r^2 dr = 3 alpha b^2 / (70 s).\n"
                        "Regions where xi falls toward an edge report status none.");
  add_model_flags(emin_cmd);
  add_shape_flags(emin_cmd);
  add_coefficient_flags(emin_cmd);
  add_tolerance_flags(emin_cmd);
  emin_cmd.action = cmd_energy_min;

  auto& sq_cmd = make("single-quark", "Single-quark minimum radius r_m = n s / alpha and its energy scales",
                      "n solves 2 (n+1)^7 (n-1) / n^3 = lambda / (k alpha^3).\n"
                      "xi_k = b k (s + alpha r)^4 / (s^3 r^2), xi_lambda = b lambda s^2 / (s + alpha r)^3,\n"
                      "xi_c = 3 alpha b^2 / (70 s); MeV columns take s in metres and charges in units of e.");
  add_model_flags(sq_cmd);
  add_tolerance_flags(sq_cmd);
  sq_cmd.flag("--n", "n", "use this n instead of solving for it");
  sq_cmd.action = cmd_single_quark;

  auto& t1_cmd = make("table1", "Partially confined quark: the five published unstable solutions",
                      "E(x) = D (1+x) / (x (3x-1)) - U (1+x)^5 / (x^2 (3x-1)) + N x / (1+x)^4 + T,\n"
                      "U = 1, T = 0. N is solved so that the designated listed extremum is stationary,\n"
                      "then the minimum and the following maximum of E are located; depth = E_max - E_min.\n"
                      "Giving any of --D, --U, --N, --T analyzes that single E(x) instead.");
  t1_cmd.flag("--D", "D", "coefficient D of the divergent term (default 10)");
  t1_cmd.flag("--U", "U", "coefficient U (default 1)");
  t1_cmd.flag("--N", "N", "coefficient N of the weak term (default 0)");
  t1_cmd.flag("--T", "T", "additive constant T (default 0)");
  t1_cmd.action = cmd_table1;

  auto& shm_cmd = make("shm", "Small radial oscillations about the single-quark minimum",
                       "omega = sqrt(xi''(r_m) / xi(r_m)) at r_m = n s / alpha, from the closed forms\n"
                       "xi = b k [(n+1)^7 alpha^2 + n^2 lambda/k] / (s n^2 (n+1)^3) and its second derivative.\n"
                       "s in metres; omega_per_s = c omega, photon energy = hbar omega.");
  add_model_flags(shm_cmd);
  shm_cmd.flag("--n", "n", "use this n instead of solving 2 (n+1)^7 (n-1) / n^3 = lambda / (k alpha^3)");
  shm_cmd.action = cmd_shm;

  int sym_size = 0;
  bool sym_neutral = false;
  auto& sym_cmd = make("symmetry", "q-pairs and q-neutral hadron compositions (JSON output)",
                       "Quarks carry one of the q-pairs (+,+), (-,-), (+,-), (-,+) of seed charges +/-1/3.\n"
                       "A composition is q-neutral when its individual q values sum to zero.");
  sym_cmd.app->add_option("--size", sym_size, "composition size 1-4 (default: all sizes)")->check(CLI::Range(0, 4));
  sym_cmd.app->add_flag("--neutral-only", sym_neutral, "list q-neutral compositions only");
  sym_cmd.action = [&](const RunConfig& cfg, std::string& text) {
    return cmd_symmetry(cfg, text, sym_size, sym_neutral);
  };

  auto& mass_cmd = make("mass", "Free-particle mass from the field energy",
                        "m = 1/2 int_0^inf [(phi_p')^2 + phi_p' psi_lambda'] r^2 dr;\n"
                        "for the single shape m = (3 alpha b^2 / 70 - b lambda / 140) / s.");
  add_model_flags(mass_cmd);
  add_shape_flags(mass_cmd);
  add_tolerance_flags(mass_cmd);
  mass_cmd.action = cmd_mass;

  auto& verify_cmd = make("verify", "Run the acceptance criteria against the published values",
                          "Prints one PASS/FAIL line per criterion; exit status 1 if any criterion fails.\n"
                          "Tolerance flags can only tighten the numerical tolerances.");
  verify_cmd.flag("--golden", "golden", "golden values JSON (default: built-in copy)");
  add_tolerance_flags(verify_cmd);
  verify_cmd.action = cmd_verify;

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    std::string help;
    for (const auto& c : commands)
      if (c->app->parsed()) help = c->app->help();
    out << (help.empty() ? app.help() : help);
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "cqm: " << e.what() << "\n";
    return kExitUsage;
  }

  for (const auto& c : commands) {
    if (!c->app->parsed()) continue;
    RunConfig cfg;
    try {
      cfg = build_config(*c);
    } catch (const std::exception& e) {
      err << "cqm " << c->app->get_name() << ": " << e.what() << "\n";
      return kExitUsage;
    }
    std::string text;
    int code = kExitOk;
    try {
      code = c->action(cfg, text);
    } catch (const std::invalid_argument& e) {
      err << "cqm " << c->app->get_name() << ": " << e.what() << "\n";
      return kExitUsage;
    } catch (const std::domain_error& e) {
      err << "cqm " << c->app->get_name() << ": " << e.what() << "\n";
      return kExitUsage;
    } catch (const std::exception& e) {
      err << "cqm " << c->app->get_name() << ": computation failed: " << e.what() << "\n";
      return kExitCriterionFailure;
    }
    if (cfg.out.empty()) {
      out << text;
    } else {
      std::ofstream f(cfg.out, std::ios::binary);
      if (!f || !(f << text)) {
        err << "cqm " << c->app->get_name() << ": cannot write '" << cfg.out << "'\n";
        return kExitUsage;
      }
    }
    return code;
  }
  return kExitUsage;
}

}  // namespace cqm::cli
