#pragma once

// Command-line front end. run() is separate from main so the test suite can
// drive it in-process.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gft/gft.hpp"

namespace gft::cli {

enum ExitCode : int { ok = 0, violation = 1, usage = 2 };

struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string format = "json";
  std::string output;

  // construct / deficiency
  std::uint64_t n = 0;
  std::uint64_t max_n = 200;
  std::string variant = "nf";
  std::size_t depth = 4;
  bool no_split = false;

  // density
  std::string group;
  std::string subgroup;
  std::string element;
  std::optional<std::int64_t> quad;
  std::string norton;
  std::vector<std::uint64_t> x;

  // asymptotics
  std::string name;
  std::vector<std::uint64_t> samples;

  // analyze
  std::string tower_file;
  std::string policy = "stable";
};

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

inline void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.output.empty()) {
    out << text;
    return;
  }
  std::filesystem::path path(cfg.output);
  if (path.is_relative()) {
    if (const char* dir = std::getenv("GFT_OUTPUT_DIR"); dir && *dir) path = std::filesystem::path(dir) / path;
  }
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file " + path.string());
  f << text;
}

inline Variant variant_of(const RunConfig& cfg) {
  try {
    return parse_variant(cfg.variant);
  } catch (const std::invalid_argument& e) {
    throw usage_error(e.what());
  }
}

inline void require_format(const RunConfig& cfg) {
  if (cfg.format != "json" && cfg.format != "csv") throw usage_error("--format must be json or csv");
}

}  // namespace detail

inline int cmd_construct(const RunConfig& cfg, std::ostream& out) {
  if (cfg.n < 1 || cfg.n > cfg.max_n)
    throw usage_error("--n must lie in [1, " + std::to_string(cfg.max_n) + "]");
  detail::require_format(cfg);
  const auto c = construct_Kn(cfg.n);
  detail::emit(cfg, cfg.format == "csv" ? construction_csv({c}) : dump_json(to_json(c)), out);
  return c.gs_satisfied ? ok : violation;
}

inline int cmd_deficiency(const RunConfig& cfg, std::ostream& out) {
  if (cfg.n < 1 || cfg.n > cfg.max_n)
    throw usage_error("--n must lie in [1, " + std::to_string(cfg.max_n) + "]");
  detail::require_format(cfg);
  const Variant variant = detail::variant_of(cfg);
  if (variant == Variant::ff) throw usage_error("the K_n tower is a number-field tower; use --variant nf or grh");

  const auto c = construct_Kn(cfg.n);
  const std::vector<std::uint64_t> split = cfg.no_split ? std::vector<std::uint64_t>{} : c.P;
  const auto tower = simulate_classfield_tower(c.field, split, cfg.depth, 2);
  const auto phi = phi_limit(tower);
  phi.validate();
  const auto rep = basic_inequality(phi, variant);
  const auto ihara = ihara_split_bound(phi, split, 1, variant);
  const auto alpha = deficiency_lower_bound(c.field, c.field.ramified_primes(), 2, variant);

  const bool sound = rep.deficiency >= 0.0 && rep.deficiency <= 1.0 && ihara.holds && rep.deficiency >= alpha.alpha;
  if (cfg.format == "csv") {
    detail::emit(cfg, inequality_csv({{variant, cfg.n, rep.lhs, rep.deficiency, alpha.alpha}}), out);
  } else {
    Json j;
    j["n"] = cfg.n;
    j["depth"] = cfg.depth;
    j["split"] = split;
    j["phi"] = to_json(phi);
    j["inequality"] = to_json(rep);
    j["ihara"] = to_json(ihara);
    j["lower_bound"] = to_json(alpha);
    j["consistent"] = sound;
    detail::emit(cfg, dump_json(j), out);
  }
  return sound ? ok : violation;
}

inline int cmd_density(const RunConfig& cfg, std::ostream& out) {
  detail::require_format(cfg);
  const int modes = !cfg.group.empty() + cfg.quad.has_value() + !cfg.norton.empty();
  if (modes != 1) throw usage_error("density needs exactly one of --group, --quad, --norton");

  if (!cfg.group.empty()) {
    const auto G = catalog_group(cfg.group);
    Json j;
    j["group"] = cfg.group;
    j["order"] = G.order();
    bool sound = true;
    if (!cfg.element.empty()) {
      j["class_density"] = conjugacy_class_density(G, G.element(cfg.element)).get_str();
    }
    if (!cfg.subgroup.empty()) {
      std::vector<std::uint32_t> gens;
      for (const auto& g : detail::split(cfg.subgroup, ';')) gens.push_back(G.element(g));
      const auto H = Subgroup::generated(G, gens);
      const auto rep = split_degree_one_density(G, H);
      sound = rep.lower_bound <= rep.value && rep.value <= rep.upper_bound && rep.lower_attained == rep.normal;
      j["subgroup_order"] = H.order();
      j["split_degree_one"] = to_json(rep);
      j["totally_split"] = totally_split_density_bound(G, H).get_str();
    }
    if (cfg.element.empty() && cfg.subgroup.empty()) {
      Json classes = Json::array();
      Rational total = 0;
      for (const auto& cls : conjugacy_classes(G)) {
        const auto dens = conjugacy_class_density(G, cls.front());
        total += dens;
        classes.push_back({{"size", cls.size()}, {"density", dens.get_str()}});
      }
      j["classes"] = classes;
      sound = total == 1;
    }
    if (cfg.format == "csv") throw usage_error("group densities are JSON only");
    detail::emit(cfg, dump_json(j), out);
    return sound ? ok : violation;
  }

  if (cfg.x.empty()) throw usage_error("--x is required with --quad and --norton");
  if (cfg.quad) {
    if (cfg.x.size() != 1) throw usage_error("--quad takes a single --x");
    const auto e = empirical_split_density(*cfg.quad, cfg.x.front());
    if (cfg.format == "csv") {
      detail::emit(cfg, "d,x,split,unramified,fraction\n" + std::to_string(*cfg.quad) + ',' +
                            std::to_string(cfg.x.front()) + ',' + std::to_string(e.split) + ',' +
                            std::to_string(e.unramified) + ',' + format_double(e.fraction) + '\n',
                   out);
    } else {
      Json j = to_json(e);
      j["d"] = *cfg.quad;
      j["x"] = cfg.x.front();
      detail::emit(cfg, dump_json(j), out);
    }
    return ok;
  }

  const auto qa = detail::split(cfg.norton, ',');
  if (qa.size() != 2) throw usage_error("--norton expects q,a");
  std::uint64_t q = 0;
  std::int64_t a = 0;
  try {
    q = std::stoull(qa[0]);
    a = std::stoll(qa[1]);
  } catch (const std::exception&) {
    throw usage_error("--norton expects two integers q,a");
  }
  const auto top = *std::max_element(cfg.x.begin(), cfg.x.end());
  if (top < 10) throw usage_error("--x must be >= 10");
  const auto series = norton_series(q, a, cfg.x, sieve(top));
  if (cfg.format == "csv") {
    detail::emit(cfg, norton_csv(series), out);
  } else {
    Json j;
    j["q"] = q;
    j["a"] = a;
    Json pts = Json::array();
    for (const auto& p : series) pts.push_back(to_json(p));
    j["points"] = pts;
    detail::emit(cfg, dump_json(j), out);
  }
  return ok;
}

inline int cmd_asymptotics(const RunConfig& cfg, std::ostream& out) {
  detail::require_format(cfg);
  if (cfg.samples.empty()) throw usage_error("--samples is required");
  const Variant variant = detail::variant_of(cfg);
  if (variant == Variant::ff) throw usage_error("asymptotic sequences are number-field only");
  SequenceReport rep;
  try {
    asymptote_of(cfg.name, 2, variant);
    rep = ratio_report(cfg.name, cfg.samples, variant);
  } catch (const std::invalid_argument& e) {
    throw usage_error(e.what());
  }
  detail::emit(cfg, cfg.format == "json" ? dump_json(to_json(rep)) : sequence_csv(rep), out);
  return ok;
}

inline int cmd_analyze(const RunConfig& cfg, std::ostream& out) {
  if (cfg.format != "json") throw usage_error("analyze emits JSON only");
  std::ifstream f(cfg.tower_file);
  if (!f) throw usage_error("cannot read tower file " + cfg.tower_file);
  Json doc;
  try {
    doc = Json::parse(f);
  } catch (const Json::exception& e) {
    throw usage_error(std::string("tower file is not valid JSON: ") + e.what());
  }
  Tower t;
  try {
    t = tower_from_json(doc);
  } catch (const Json::exception& e) {
    throw usage_error(std::string("malformed tower description: ") + e.what());
  }
  const auto policy = cfg.policy == "top" ? LimitPolicy::use_top : LimitPolicy::require_stable;
  if (cfg.policy != "top" && cfg.policy != "stable") throw usage_error("--policy must be stable or top");
  const auto phi = phi_limit(t, policy);
  phi.validate();

  Json j;
  j["phi"] = to_json(phi);
  bool sound = true;
  std::vector<std::uint64_t> T;
  for (const auto& [q, count] : t.split_norms) {
    for (std::uint64_t i = 0; i < count; ++i) T.push_back(q);
  }
  const auto base_degree = t.levels.front().degree;
  const std::vector<Variant> variants =
      t.is_number_field() ? std::vector<Variant>{Variant::nf, Variant::grh_nf} : std::vector<Variant>{Variant::ff};
  Json reports = Json::object();
  for (auto v : variants) {
    const auto rep = basic_inequality(phi, v);
    const auto ih = ihara_split_bound(phi, T, base_degree, v);
    sound = sound && rep.deficiency >= -1e-12 && rep.deficiency <= 1.0 && ih.holds;
    reports[to_string(v)] = {{"inequality", to_json(rep)}, {"ihara", to_json(ih)}};
  }
  j["reports"] = reports;
  j["almost_galois_sum"] = almost_galois_sum(t, t.levels.size() - 1);
  j["consistent"] = sound;
  detail::emit(cfg, dump_json(j), out);
  return sound ? ok : violation;
}

inline std::string seed_catalog() {
  Json j;
  Json groups = Json::object();
  for (const auto& name : catalog_names()) {
    const auto G = catalog_group(name);
    groups[name] = {{"order", G.order()}, {"subgroups", all_subgroups(G).size()}};
  }
  j["groups"] = groups;
  j["sequences"] = {"sn", "sprimen", "epsilon", "gn", "gpn"};
  j["variants"] = {"nf", "grh", "ff"};
  j["fixtures"] = {{"ff_optimal", {{"r", 4}, {"phi", {{"4", 1}}}}},
                   {"gs_imaginary_quadratic", 3.0 + 2.0 * std::sqrt(2.0)},
                   {"gs_ff_example", 4.0 + 2.0 * std::sqrt(3.0)}};
  return dump_json(j);
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tsfasman-Vladut invariants, class field tower thresholds and density checks", "gft"};
  RunConfig cfg;
  bool catalog = false;
  app.add_flag("--seed-catalog", catalog, "List built-in groups, sequences and fixtures");
  app.add_option("--output,-o", cfg.output, "Write the report here (relative paths resolve under $GFT_OUTPUT_DIR)");
  app.add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.require_subcommand(0, 1);
  app.fallthrough();

  auto* construct = app.add_subcommand("construct", "Build the real quadratic field K_n");
  construct->add_option("--n", cfg.n, "Number of prescribed split primes")->required();
  construct->add_option("--max-n", cfg.max_n, "Upper limit accepted for --n");

  auto* deficiency = app.add_subcommand("deficiency", "Deficiency of the 2-class field tower over K_n");
  deficiency->add_option("--n", cfg.n)->required();
  deficiency->add_option("--max-n", cfg.max_n);
  deficiency->add_option("--variant", cfg.variant, "nf, grh or ff");
  deficiency->add_option("--depth", cfg.depth, "Simulated tower depth");
  deficiency->add_flag("--no-split", cfg.no_split, "Declare no split primes");

  auto* density = app.add_subcommand("density", "Chebotarev and empirical densities");
  density->add_option("--group", cfg.group, "Catalog group (see --seed-catalog)");
  density->add_option("--subgroup", cfg.subgroup, "Generators in cycle notation, ';'-separated");
  density->add_option("--element", cfg.element, "Element in cycle notation");
  density->add_option("--quad", cfg.quad, "Squarefree d for Q(sqrt d)");
  density->add_option("--norton", cfg.norton, "Progression q,a");
  density->add_option("--x", cfg.x, "Bound(s) x")->delimiter(',');

  auto* asym = app.add_subcommand("asymptotics", "Ratio reports against asymptotic laws");
  asym->add_option("--name", cfg.name, "sn, sprimen, epsilon, gn or gpn")->required();
  asym->add_option("--samples", cfg.samples, "Ascending n values")->delimiter(',');
  asym->add_option("--variant", cfg.variant, "nf or grh (epsilon)");

  auto* analyze = app.add_subcommand("analyze", "Analyze a tower description file");
  analyze->add_option("--tower", cfg.tower_file)->required();
  analyze->add_option("--policy", cfg.policy, "stable or top");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return usage;
  }

  try {
    if (catalog) {
      detail::emit(cfg, seed_catalog(), out);
      return ok;
    }
    if (asym->parsed() && app.get_option("--format")->count() == 0) cfg.format = "csv";
    if (construct->parsed()) return cmd_construct(cfg, out);
    if (deficiency->parsed()) return cmd_deficiency(cfg, out);
    if (density->parsed()) return cmd_density(cfg, out);
    if (asym->parsed()) return cmd_asymptotics(cfg, out);
    if (analyze->parsed()) return cmd_analyze(cfg, out);
    err << app.help();
    return usage;
  } catch (const usage_error& e) {
    err << "gft: " << e.what() << '\n';
    return usage;
  } catch (const std::invalid_argument& e) {
    err << "gft: " << e.what() << '\n';
    return usage;
  } catch (const std::domain_error& e) {
    err << "gft: " << e.what() << '\n';
    return usage;
  } catch (const std::exception& e) {
    // invariant and construction failures
    err << "gft: " << e.what() << '\n';
    return violation;
  }
}

}  // namespace gft::cli
