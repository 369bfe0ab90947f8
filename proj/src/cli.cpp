#include "excdiv/cli.hpp"

#include <cstdint>
#include <fstream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "excdiv/budget.hpp"
#include "excdiv/divisors.hpp"
#include "excdiv/dynkin.hpp"
#include "excdiv/forest.hpp"
#include "excdiv/lattice.hpp"
#include "excdiv/propcheck.hpp"

namespace excdiv::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Divisor parse_divisor_literal(const std::string& text, int s) {
  std::vector<std::int64_t> coords;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      coords.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("bad divisor literal '" + text + "': expected comma-separated integers");
    }
  }
  if (static_cast<int>(coords.size()) != s)
    throw UsageError("divisor literal has " + std::to_string(coords.size()) +
                     " coordinates, the lattice has rank " + std::to_string(s));
  return Divisor(std::move(coords));
}

nlohmann::json divisor_json(const Divisor& d) {
  return nlohmann::json(d.e);
}

struct Ctx {
  bool json = false;
  std::ostringstream out;
  int exit_code = 0;
};

// ---- subcommand bodies -------------------------------------------------

void cmd_validate(Ctx& c, const std::string& file) {
  ProximityForest f = parse_forest(read_file(file));
  if (c.json) {
    nlohmann::json j;
    j["valid"] = true;
    j["s"] = f.s;
    c.out << j.dump(2) << "\n";
  } else {
    c.out << "valid proximity forest, s = " << f.s << "\n";
  }
}

void cmd_lattice(Ctx& c, const std::string& file) {
  ExceptionalLattice L(parse_forest(read_file(file)));
  const int s = L.rank();
  if (c.json) {
    nlohmann::json j;
    j["s"] = s;
    j["gram_e"] = L.gram();
    nlohmann::json basis = nlohmann::json::array();
    for (int i = 1; i <= s; ++i) basis.push_back(divisor_json(L.total_transform(i)));
    j["basis_change"] = basis;
    j["k_degrees"] = L.k_degrees();
    j["negative_definite"] = true;
    j["leading_minors"] = L.leading_minors();
    c.out << j.dump(2) << "\n";
    return;
  }
  c.out << "s = " << s << "\n";
  c.out << "gram_e (strict transforms):\n";
  for (int i = 0; i < s; ++i) {
    c.out << " ";
    for (int j = 0; j < s; ++j) c.out << " " << L.gram(i, j);
    c.out << "\n";
  }
  c.out << "total transforms (e-coordinates):\n";
  for (int i = 1; i <= s; ++i) c.out << "  E" << i << " = " << L.total_transform(i).str() << "\n";
  c.out << "k_degrees: ";
  for (int i = 0; i < s; ++i) c.out << (i ? "," : "") << L.k_degrees()[i];
  c.out << "\n";
  c.out << "negative definite: yes (leading minors";
  for (auto m : L.leading_minors()) c.out << " " << m;
  c.out << ")\n";
}

void cmd_enumerate(Ctx& c, const std::string& file, std::int64_t kdeg, std::int64_t selfint) {
  ExceptionalLattice L(parse_forest(read_file(file)));
  std::vector<Divisor> classes;
  try {
    classes = enumerate_contracted(L, kdeg, selfint);
  } catch (const std::invalid_argument& ex) {
    throw UsageError(ex.what());
  }
  if (c.json) {
    nlohmann::json j;
    j["kdeg"] = kdeg;
    j["selfint"] = selfint;
    j["count"] = classes.size();
    j["classes"] = nlohmann::json::array();
    for (const Divisor& d : classes) {
      nlohmann::json e;
      e["e"] = divisor_json(d);
      e["E"] = L.to_E_basis(d);
      std::optional<DynkinType> t = classify_ade(L, d);
      e["ade"] = t ? nlohmann::json(t->str()) : nlohmann::json(nullptr);
      j["classes"].push_back(e);
    }
    c.out << j.dump(2) << "\n";
    return;
  }
  c.out << classes.size() << " classes with K.D = " << kdeg << ", D^2 = " << selfint << "\n";
  for (const Divisor& d : classes) {
    std::optional<DynkinType> t = classify_ade(L, d);
    c.out << "  " << d.str() << "  (E-basis ";
    auto y = L.to_E_basis(d);
    for (std::size_t i = 0; i < y.size(); ++i) c.out << (i ? "," : "") << y[i];
    c.out << ")  " << (t ? t->str() : "-") << "\n";
  }
}

void cmd_classify(Ctx& c, const std::string& file, const std::string& divisor) {
  ExceptionalLattice L(parse_forest(read_file(file)));
  Divisor d = parse_divisor_literal(divisor, L.rank());
  if (!d.is_effective()) throw UsageError("divisor must be effective and non-zero");
  std::string reason;
  std::optional<DynkinType> t = classify_ade(L, d, &reason);
  if (c.json) {
    nlohmann::json j;
    j["divisor"] = divisor_json(d);
    j["ade"] = t ? nlohmann::json(t->str()) : nlohmann::json(nullptr);
    j["reason"] = t ? nlohmann::json(nullptr) : nlohmann::json(reason);
    c.out << j.dump(2) << "\n";
  } else if (t) {
    c.out << t->str() << "\n";
  } else {
    c.out << "not an A-D-E configuration: " << reason << "\n";
  }
}

void cmd_dot(Ctx& c, const std::string& file, const std::string& divisor) {
  ExceptionalLattice L(parse_forest(read_file(file)));
  Divisor d = parse_divisor_literal(divisor, L.rank());
  std::string dot;
  try {
    dot = to_dot(dual_graph(L, d));
  } catch (const std::invalid_argument& ex) {
    throw UsageError(ex.what());
  }
  if (c.json) {
    nlohmann::json j;
    j["dot"] = dot;
    c.out << j.dump(2) << "\n";
  } else {
    c.out << dot;
  }
}

void cmd_fundamental_cycle(Ctx& c, const std::string& type_name, const std::string& file,
                           const std::string& divisor) {
  Matrix gram;
  std::vector<int> components;  // 1-based labels
  std::string input;
  if (!type_name.empty()) {
    std::optional<DynkinType> t = DynkinType::parse(type_name);
    if (!t) throw UsageError("unknown Dynkin type '" + type_name + "'");
    gram = abstract_lattice(*t);
    for (int i = 1; i <= t->n; ++i) components.push_back(i);
    input = t->str();
  } else {
    if (file.empty() || divisor.empty())
      throw UsageError("pass a Dynkin type, or --file with --divisor");
    ExceptionalLattice L(parse_forest(read_file(file)));
    Divisor d = parse_divisor_literal(divisor, L.rank());
    if (!d.is_effective() || !d.is_reduced())
      throw UsageError("the configuration must be a reduced effective divisor");
    std::vector<int> supp = d.support();
    gram.assign(supp.size(), std::vector<std::int64_t>(supp.size()));
    for (std::size_t a = 0; a < supp.size(); ++a)
      for (std::size_t b = 0; b < supp.size(); ++b) gram[a][b] = L.gram(supp[a], supp[b]);
    for (int v : supp) components.push_back(v + 1);
    input = "file";
  }

  std::vector<std::int64_t> z;
  try {
    z = fundamental_cycle(gram);
  } catch (const std::invalid_argument& ex) {
    throw UsageError(ex.what());
  }
  std::int64_t sq = 0;
  for (std::size_t a = 0; a < z.size(); ++a)
    for (std::size_t b = 0; b < z.size(); ++b) sq += z[a] * gram[a][b] * z[b];

  if (c.json) {
    nlohmann::json j;
    j["input"] = input;
    j["components"] = components;
    j["cycle"] = z;
    j["self_intersection"] = sq;
    c.out << j.dump(2) << "\n";
    return;
  }
  c.out << "fundamental cycle: ";
  for (std::size_t a = 0; a < z.size(); ++a) c.out << (a ? "," : "") << z[a];
  c.out << "\n";
  c.out << "Z^2 = " << sq << "\n";
}

void cmd_theta(Ctx& c, const std::string& file, const std::string& divisor) {
  ExceptionalLattice L(parse_forest(read_file(file)));
  Divisor d = parse_divisor_literal(divisor, L.rank());
  ThetaResult res;
  std::optional<DynkinType> t;
  try {
    t = classify_ade(L, d);
    res = theta(L, d);
  } catch (const std::invalid_argument& ex) {
    throw UsageError(ex.what());
  }
  if (c.json) {
    nlohmann::json j;
    j["divisor"] = divisor_json(d);
    j["ade"] = t ? nlohmann::json(t->str()) : nlohmann::json(nullptr);
    j["j"] = res.j;
    j["theta"] = res.theta;
    c.out << j.dump(2) << "\n";
  } else {
    c.out << "meets E" << res.j << " once; theta component e" << res.theta << "\n";
  }
}

void cmd_budget_families(Ctx& c, const std::string& file) {
  ExceptionalLattice L(parse_forest(read_file(file)));
  std::vector<DisjointFamily> fams = disjoint_a_families(L);
  bool ok = true;
  for (const auto& f : fams) ok = ok && f.budget <= L.rank();
  if (c.json) {
    nlohmann::json j;
    j["s"] = L.rank();
    j["families"] = nlohmann::json::array();
    for (const auto& f : fams) {
      nlohmann::json e;
      e["members"] = nlohmann::json::array();
      for (const auto& m : f.members) e["members"].push_back(divisor_json(m));
      e["types"] = nlohmann::json::array();
      for (const auto& t : f.types) e["types"].push_back(t.str());
      e["budget"] = f.budget;
      j["families"].push_back(e);
    }
    j["all_within_rank"] = ok;
    c.out << j.dump(2) << "\n";
  } else {
    c.out << fams.size() << " maximal disjoint A-type families (s = " << L.rank() << ")\n";
    for (const auto& f : fams) {
      c.out << "  budget " << f.budget << ":";
      for (std::size_t i = 0; i < f.members.size(); ++i)
        c.out << " " << f.types[i].str() << "[" << f.members[i].str() << "]";
      c.out << "\n";
    }
    if (!ok) c.out << "BUDGET EXCEEDED\n";
  }
  if (!ok) c.exit_code = 1;
}

void emit_suite_report(Ctx& c, const SuiteReport& rep) {
  if (c.json)
    c.out << rep.to_json(2) << "\n";
  else
    c.out << rep.to_text();
  if (rep.violations_total() > 0) c.exit_code = 1;
}

void cmd_check_props(Ctx& c, const std::string& file, const SuiteOptions& opts) {
  ProximityForest f = parse_forest(read_file(file));
  SuiteReport rep = run_suite(f, opts);
  emit_suite_report(c, rep);
}

void cmd_exhaust(Ctx& c, int points, bool upto, int cap, int jobs, const SuiteOptions& opts) {
  std::vector<ProximityForest> forests;
  for (int s = upto ? 1 : points; s <= points; ++s) {
    std::vector<ProximityForest> batch;
    try {
      batch = enumerate_forests(s, cap);
    } catch (const std::invalid_argument& ex) {
      throw UsageError(ex.what());
    }
    forests.insert(forests.end(), batch.begin(), batch.end());
  }
  SuiteReport rep = run_suite_over(forests, opts, jobs);
  rep.mode = "exhaustive";
  emit_suite_report(c, rep);
}

void cmd_fuzz(Ctx& c, int min_points, int max_points, std::int64_t count, std::uint64_t seed,
              int jobs, const SuiteOptions& opts) {
  if (min_points < 1 || max_points < min_points)
    throw UsageError("need 1 <= --min-points <= --max-points");
  std::mt19937_64 meta(seed);
  auto bounded = [&](std::uint64_t n) {
    std::uint64_t threshold = (-n) % n;
    for (;;) {
      std::uint64_t r = meta();
      if (r >= threshold) return r % n;
    }
  };
  std::vector<ProximityForest> forests;
  for (std::int64_t i = 0; i < count; ++i) {
    int s = min_points +
            static_cast<int>(bounded(static_cast<std::uint64_t>(max_points - min_points + 1)));
    forests.push_back(random_forest(s, seed + 1 + static_cast<std::uint64_t>(i)));
  }
  SuiteReport rep = run_suite_over(forests, opts, jobs);
  rep.mode = "random";
  rep.seed = seed;
  rep.count = count;
  emit_suite_report(c, rep);
}

void cmd_miyaoka(Ctx& c, std::int64_t chi, std::int64_t k2, std::int64_t blowups,
                 const std::vector<std::string>& sing_specs) {
  SingularityBudget b;
  b.chi = chi;
  b.k2 = k2;
  b.s = blowups;
  for (const std::string& group : sing_specs) {
    std::string item;
    std::istringstream in(group);
    while (std::getline(in, item, ',')) {
      if (item.empty()) continue;
      std::optional<DynkinType> t = DynkinType::parse(item);
      if (!t) throw UsageError("unknown singularity spec '" + item + "'");
      b.sings.push_back(*t);
    }
  }
  if (b.s < 0) throw UsageError("--blowups must be non-negative");

  BudgetVerdict v = check_budget(b);
  if (c.json) {
    nlohmann::json j;
    j["chi"] = b.chi;
    j["k2"] = b.k2;
    j["blowups"] = b.s;
    j["sings"] = nlohmann::json::array();
    for (const auto& t : b.sings) j["sings"].push_back(t.str());
    j["sum_nu"] = v.sum_nu.str();
    j["bound_miyaoka"] = bound_miyaoka(b.chi, b.k2).str();
    j["bound_theorem"] = v.bound.str();
    j["bound_megyesi_langer"] = bound_megyesi_langer(b.chi, b.k2, b.s).str();
    j["holds"] = v.holds;
    j["slack"] = v.slack.str();
    j["equality_implies_nef"] = v.equality_implies_nef;
    c.out << j.dump(2) << "\n";
  } else {
    c.out << "sum nu                 = " << v.sum_nu.str() << "\n";
    c.out << "bound (miyaoka)        = " << bound_miyaoka(b.chi, b.k2).str() << "\n";
    c.out << "bound (theorem)        = " << v.bound.str() << "\n";
    c.out << "bound (megyesi-langer) = " << bound_megyesi_langer(b.chi, b.k2, b.s).str() << "\n";
    c.out << "holds: " << (v.holds ? "yes" : "NO") << "   slack = " << v.slack.str() << "\n";
    if (v.equality_implies_nef)
      c.out << "equality with the miyaoka bound: the canonical class is nef\n";
  }
  if (!v.holds) c.exit_code = 1;
}

}  // namespace

CommandResult run(const std::vector<std::string>& args) {
  CommandResult result;
  Ctx ctx;

  CLI::App app{"exceptional divisor lattice toolkit"};
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json"}));

  // validate
  std::string v_file;
  CLI::App* validate_cmd = app.add_subcommand("validate", "check a .prox file");
  validate_cmd->add_option("file", v_file)->required();

  // lattice
  std::string l_file;
  CLI::App* lattice_cmd = app.add_subcommand("lattice", "print the exceptional lattice");
  lattice_cmd->add_option("file", l_file)->required();

  // enumerate
  std::string en_file;
  std::int64_t en_kdeg = 0, en_selfint = 0;
  CLI::App* enum_cmd =
      app.add_subcommand("enumerate", "list effective classes with given K-degree and square");
  enum_cmd->add_option("file", en_file)->required();
  enum_cmd->add_option("--kdeg", en_kdeg, "canonical degree")->required();
  enum_cmd->add_option("--selfint", en_selfint, "self-intersection")->required();

  // classify
  std::string cl_file, cl_div;
  CLI::App* classify_cmd = app.add_subcommand("classify", "A-D-E recognition of a divisor");
  classify_cmd->add_option("file", cl_file)->required();
  classify_cmd->add_option("--divisor", cl_div, "e-coordinates, comma separated")->required();

  // dot
  std::string dot_file, dot_div;
  CLI::App* dot_cmd = app.add_subcommand("dot", "dual graph in DOT format");
  dot_cmd->add_option("file", dot_file)->required();
  dot_cmd->add_option("--divisor", dot_div, "e-coordinates, comma separated")->required();

  // fundamental-cycle
  std::string fc_type, fc_file, fc_div;
  CLI::App* fc_cmd = app.add_subcommand("fundamental-cycle", "Artin fundamental cycle");
  fc_cmd->add_option("type", fc_type, "Dynkin type, e.g. D4");
  fc_cmd->add_option("--file", fc_file, ".prox file");
  fc_cmd->add_option("--divisor", fc_div, "reduced configuration inside the file's lattice");

  // theta
  std::string th_file, th_div;
  CLI::App* theta_cmd = app.add_subcommand("theta", "pivot total transform and theta component");
  theta_cmd->add_option("file", th_file)->required();
  theta_cmd->add_option("--divisor", th_div)->required();

  // budget-families
  std::string bf_file;
  CLI::App* bf_cmd =
      app.add_subcommand("budget-families", "maximal disjoint A-type families and budgets");
  bf_cmd->add_option("file", bf_file)->required();

  // shared suite options
  SuiteOptions cp_opts, ex_opts, fz_opts;
  std::int64_t cp_boxcap = -1, ex_boxcap = -1, fz_boxcap = -1;

  // check-props
  std::string cp_file;
  CLI::App* cp_cmd = app.add_subcommand("check-props", "run the proposition suite on one forest");
  cp_cmd->add_option("file", cp_file)->required();
  cp_cmd->add_option("--box-cap", cp_boxcap, "coefficient cap override for box checks");

  // exhaust
  int ex_points = 0, ex_jobs = 0, ex_cap = kDefaultExhaustCap;
  bool ex_upto = false;
  CLI::App* ex_cmd = app.add_subcommand("exhaust", "suite over every forest of a given size");
  ex_cmd->add_option("--points", ex_points, "number of blow-ups")->required();
  ex_cmd->add_flag("--upto", ex_upto, "also run every smaller size");
  ex_cmd->add_option("--cap", ex_cap, "size cap guard");
  ex_cmd->add_option("--jobs", ex_jobs, "worker threads (0 = auto)");
  ex_cmd->add_option("--box-cap", ex_boxcap, "coefficient cap override for box checks");

  // fuzz
  int fz_min = 1, fz_max = 0, fz_jobs = 0;
  std::int64_t fz_count = 0;
  std::uint64_t fz_seed = 0;
  CLI::App* fz_cmd = app.add_subcommand("fuzz", "suite over seeded random forests");
  fz_cmd->add_option("--min-points", fz_min, "minimum forest size");
  fz_cmd->add_option("--max-points", fz_max, "maximum forest size")->required();
  fz_cmd->add_option("--count", fz_count, "number of forests")->required();
  fz_cmd->add_option("--seed", fz_seed, "base seed")->required();
  fz_cmd->add_option("--jobs", fz_jobs, "worker threads (0 = auto)");
  fz_cmd->add_option("--box-cap", fz_boxcap, "coefficient cap override for box checks");

  // miyaoka
  std::int64_t my_chi = 0, my_k2 = 0, my_blowups = 0;
  std::vector<std::string> my_sings;
  CLI::App* my_cmd = app.add_subcommand("miyaoka", "singularity budget inequality");
  my_cmd->add_option("--chi", my_chi, "chi(O_X)")->required();
  my_cmd->add_option("--k2", my_k2, "K_X^2")->required();
  my_cmd->add_option("--blowups", my_blowups, "blow-ups from the minimal model")->required();
  my_cmd->add_option("--sing", my_sings, "singularity types (A<n>, D<n>, E6, E7, E8)");

  // Let `--format` appear after the subcommand as well.
  for (auto* sub : app.get_subcommands(nullptr)) sub->fallthrough();

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    result.out = app.help();
    result.exit_code = 0;
    return result;
  } catch (const CLI::ParseError& e) {
    result.err = std::string(e.what()) + "\n";
    result.exit_code = 2;
    return result;
  }

  ctx.json = format == "json";
  if (cp_boxcap >= 0) cp_opts.box_cap_override = cp_boxcap;
  if (ex_boxcap >= 0) ex_opts.box_cap_override = ex_boxcap;
  if (fz_boxcap >= 0) fz_opts.box_cap_override = fz_boxcap;

  try {
    if (validate_cmd->parsed()) cmd_validate(ctx, v_file);
    else if (lattice_cmd->parsed()) cmd_lattice(ctx, l_file);
    else if (enum_cmd->parsed()) cmd_enumerate(ctx, en_file, en_kdeg, en_selfint);
    else if (classify_cmd->parsed()) cmd_classify(ctx, cl_file, cl_div);
    else if (dot_cmd->parsed()) cmd_dot(ctx, dot_file, dot_div);
    else if (fc_cmd->parsed()) cmd_fundamental_cycle(ctx, fc_type, fc_file, fc_div);
    else if (theta_cmd->parsed()) cmd_theta(ctx, th_file, th_div);
    else if (bf_cmd->parsed()) cmd_budget_families(ctx, bf_file);
    else if (cp_cmd->parsed()) cmd_check_props(ctx, cp_file, cp_opts);
    else if (ex_cmd->parsed()) cmd_exhaust(ctx, ex_points, ex_upto, ex_cap, ex_jobs, ex_opts);
    else if (fz_cmd->parsed()) cmd_fuzz(ctx, fz_min, fz_max, fz_count, fz_seed, fz_jobs, fz_opts);
    else if (my_cmd->parsed()) cmd_miyaoka(ctx, my_chi, my_k2, my_blowups, my_sings);
  } catch (const UsageError& ex) {
    result.err = std::string(ex.what()) + "\n";
    result.exit_code = 2;
    return result;
  } catch (const ParseError& ex) {
    result.err = std::string(ex.what()) + "\n";
    result.exit_code = 2;
    return result;
  } catch (const RuleViolation& ex) {
    result.err = std::string(ex.what()) + "\n";
    result.exit_code = 2;
    return result;
  } catch (const std::exception& ex) {
    result.err = std::string("error: ") + ex.what() + "\n";
    result.exit_code = 2;
    return result;
  }

  result.out = ctx.out.str();
  result.exit_code = ctx.exit_code;
  return result;
}

}  // namespace excdiv::cli
