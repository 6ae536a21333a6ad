#include "carleson/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <variant>
#include <vector>

#include "carleson/carleson_checkers.hpp"
#include "carleson/conformal_maps.hpp"
#include "carleson/embedding_lab.hpp"
#include "carleson/measures.hpp"
#include "carleson/planar_domain.hpp"
#include "carleson/quasi_subharmonic.hpp"
#include "carleson/stopping_time.hpp"

namespace carleson {
namespace {

// Config-phase failure: maps to exit code 2, message names the field.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

const std::vector<std::string> kKnownChecks = {
    "square", "whitney", "boundary", "embed", "stopping", "qns", "equivalence",
    "suite"};

void require_known_keys(const Json& node, const std::string& path,
                        std::initializer_list<const char*> known) {
  if (!node.is_object()) throw ConfigError(path + ": expected an object");
  for (const auto& item : node.items()) {
    if (std::find_if(known.begin(), known.end(), [&](const char* k) {
          return item.key() == k;
        }) == known.end()) {
      throw ConfigError(path + "." + item.key() + ": unknown field");
    }
  }
}

double number_at(const Json& node, const std::string& path) {
  if (!node.is_number()) throw ConfigError(path + ": expected a number");
  return node.get<double>();
}

int int_at(const Json& node, const std::string& path, int lo, int hi) {
  if (!node.is_number_integer()) throw ConfigError(path + ": expected an integer");
  const long long v = node.get<long long>();
  if (v < lo || v > hi) {
    throw ConfigError(path + ": must lie in [" + std::to_string(lo) + ", " +
                      std::to_string(hi) + "]");
  }
  return static_cast<int>(v);
}

ConformalMap parse_map(const Json& spec, const std::string& path) {
  std::string tag = "identity";
  if (spec.contains("map")) {
    if (!spec.at("map").is_string()) {
      throw ConfigError(path + ".map: expected a string");
    }
    tag = spec.at("map").get<std::string>();
  }
  const auto complex_param = [&]() -> Complex {
    if (!spec.contains("parameters")) {
      throw ConfigError(path + ".parameters: required for map '" + tag + "'");
    }
    const Json& params = spec.at("parameters");
    if (!params.is_array() || params.empty() || params.size() > 2) {
      throw ConfigError(path + ".parameters: expected [re] or [re, im]");
    }
    const double re = number_at(params[0], path + ".parameters[0]");
    const double im =
        params.size() > 1 ? number_at(params[1], path + ".parameters[1]") : 0.0;
    return {re, im};
  };
  try {
    if (tag == "identity") return ConformalMap::identity();
    if (tag == "moebius") return ConformalMap::moebius(complex_param());
    if (tag == "quadratic") return ConformalMap::quadratic(complex_param());
    if (tag == "power_corner") {
      const Complex g = complex_param();
      if (g.imag() != 0.0) {
        throw ConfigError(path + ".parameters: exponent must be real");
      }
      return ConformalMap::power_corner(g.real());
    }
    if (tag == "compose") {
      if (!spec.contains("outer") || !spec.contains("inner")) {
        throw ConfigError(path + ": compose needs 'outer' and 'inner' objects");
      }
      return ConformalMap::compose(parse_map(spec.at("outer"), path + ".outer"),
                                   parse_map(spec.at("inner"), path + ".inner"));
    }
  } catch (const std::invalid_argument& err) {
    throw ConfigError(path + ": " + err.what());
  }
  throw ConfigError(path + ".map: unknown tag '" + tag + "'");
}

struct Knobs {
  int depth = 8;
  int whitney_min_level = 1;
  int whitney_max_level = 0;  // 0 -> depth
  int boundary_probes = 16;
  int boundary_radii = 6;
  double boundary_beta = 1.0;
  int family_max_level = 5;
  int family_angular_multiplier = 4;
  int embed_boundary_samples = 2048;
  int radial_cells = 96;
  int angular_cells = 192;
  double stopping_factor = 0.0;  // 0 -> exp(1 + dyadic BMO estimate)
  int qns_balls = 48;
  int suite_measures = 6;
  int suite_atoms = 24;
  double suite_beta = 1.5;
  double pullback_exponent = 0.0;
};

Knobs parse_knobs(const Json& config) {
  Knobs knobs;
  if (!config.contains("knobs")) {
    knobs.whitney_max_level = knobs.depth;
    return knobs;
  }
  const Json& node = config.at("knobs");
  require_known_keys(node, "config.knobs",
                     {"depth", "whitney_min_level", "whitney_max_level",
                      "boundary_probes", "boundary_radii", "boundary_beta",
                      "family_max_level", "family_angular_multiplier",
                      "embed_boundary_samples", "radial_cells", "angular_cells",
                      "stopping_factor", "qns_balls", "suite_measures",
                      "suite_atoms", "suite_beta", "pullback_exponent"});
  const auto geti = [&](const char* key, int fallback, int lo, int hi) {
    return node.contains(key) ? int_at(node.at(key), std::string("config.knobs.") + key, lo, hi)
                              : fallback;
  };
  const auto getd = [&](const char* key, double fallback) {
    return node.contains(key)
               ? number_at(node.at(key), std::string("config.knobs.") + key)
               : fallback;
  };
  knobs.depth = geti("depth", knobs.depth, 1, 16);
  knobs.whitney_min_level = geti("whitney_min_level", knobs.whitney_min_level, 0, 20);
  knobs.whitney_max_level = geti("whitney_max_level", knobs.whitney_max_level, 0, 20);
  knobs.boundary_probes = geti("boundary_probes", knobs.boundary_probes, 1, 4096);
  knobs.boundary_radii = geti("boundary_radii", knobs.boundary_radii, 1, 40);
  knobs.boundary_beta = getd("boundary_beta", knobs.boundary_beta);
  knobs.family_max_level = geti("family_max_level", knobs.family_max_level, 1, 12);
  knobs.family_angular_multiplier =
      geti("family_angular_multiplier", knobs.family_angular_multiplier, 1, 64);
  knobs.embed_boundary_samples =
      geti("embed_boundary_samples", knobs.embed_boundary_samples, 8, 1 << 20);
  knobs.radial_cells = geti("radial_cells", knobs.radial_cells, 4, 4096);
  knobs.angular_cells = geti("angular_cells", knobs.angular_cells, 4, 8192);
  knobs.stopping_factor = getd("stopping_factor", knobs.stopping_factor);
  knobs.qns_balls = geti("qns_balls", knobs.qns_balls, 1, 4096);
  knobs.suite_measures = geti("suite_measures", knobs.suite_measures, 1, 64);
  knobs.suite_atoms = geti("suite_atoms", knobs.suite_atoms, 1, 4096);
  knobs.suite_beta = getd("suite_beta", knobs.suite_beta);
  knobs.pullback_exponent = getd("pullback_exponent", knobs.pullback_exponent);
  if (knobs.whitney_max_level == 0) knobs.whitney_max_level = knobs.depth;
  if (!(knobs.boundary_beta > 0.0)) {
    throw ConfigError("config.knobs.boundary_beta: must be positive");
  }
  if (!(knobs.suite_beta > 1.0)) {
    throw ConfigError("config.knobs.suite_beta: must exceed 1");
  }
  if (knobs.stopping_factor != 0.0 && !(knobs.stopping_factor > 1.0)) {
    throw ConfigError("config.knobs.stopping_factor: must exceed 1");
  }
  return knobs;
}

struct ParsedConfig {
  ConformalMap map = ConformalMap::identity();
  bool has_domain = false;
  int boundary_samples = 2048;
  EmbeddingParams params{2.0, 2.0, 0.0};
  SpaceKind space = SpaceKind::kHardy;
  std::vector<std::string> checks;
  std::uint64_t seed = 1;
  Knobs knobs;
  Json brackets = Json::object();
  std::string measure_kind = "empty";
  Json measure_spec = Json::object();
};

ParsedConfig parse_config(const Json& config) {
  if (!config.is_object()) throw ConfigError("config: expected a JSON object");
  require_known_keys(config, "config",
                     {"domain", "measure", "params", "checks", "knobs",
                      "brackets", "seed"});
  ParsedConfig parsed;

  if (config.contains("seed")) {
    const Json& seed = config.at("seed");
    if (!seed.is_number_integer() || seed.get<long long>() < 0) {
      throw ConfigError("config.seed: expected a nonnegative integer");
    }
    parsed.seed = seed.get<std::uint64_t>();
  }

  if (config.contains("domain")) {
    const Json& dom = config.at("domain");
    require_known_keys(dom, "config.domain",
                       {"map", "parameters", "outer", "inner", "boundary_samples"});
    parsed.map = parse_map(dom, "config.domain");
    parsed.has_domain = parsed.map.descriptor() != "identity";
    if (dom.contains("boundary_samples")) {
      parsed.boundary_samples =
          int_at(dom.at("boundary_samples"), "config.domain.boundary_samples", 64,
                 1 << 20);
    }
  }

  if (config.contains("params")) {
    const Json& pq = config.at("params");
    require_known_keys(pq, "config.params", {"p", "q", "alpha", "space"});
    const double p = pq.contains("p") ? number_at(pq.at("p"), "config.params.p") : 2.0;
    const double q = pq.contains("q") ? number_at(pq.at("q"), "config.params.q") : p;
    const double alpha =
        pq.contains("alpha") ? number_at(pq.at("alpha"), "config.params.alpha") : 0.0;
    try {
      parsed.params = EmbeddingParams(p, q, alpha);
    } catch (const std::invalid_argument& err) {
      throw ConfigError(std::string("config.params: ") + err.what());
    }
    if (pq.contains("space")) {
      if (!pq.at("space").is_string()) {
        throw ConfigError("config.params.space: expected a string");
      }
      const std::string space = pq.at("space").get<std::string>();
      if (space == "hardy") {
        parsed.space = SpaceKind::kHardy;
      } else if (space == "bergman") {
        parsed.space = SpaceKind::kBergman;
      } else {
        throw ConfigError("config.params.space: expected 'hardy' or 'bergman'");
      }
    }
  }

  if (config.contains("checks")) {
    const Json& checks = config.at("checks");
    if (!checks.is_array()) throw ConfigError("config.checks: expected an array");
    for (std::size_t i = 0; i < checks.size(); ++i) {
      if (!checks[i].is_string()) {
        throw ConfigError("config.checks[" + std::to_string(i) + "]: expected a string");
      }
      const std::string name = checks[i].get<std::string>();
      if (std::find(kKnownChecks.begin(), kKnownChecks.end(), name) ==
          kKnownChecks.end()) {
        throw ConfigError("config.checks[" + std::to_string(i) + "]: unknown check '" +
                          name + "'");
      }
      if (std::find(parsed.checks.begin(), parsed.checks.end(), name) ==
          parsed.checks.end()) {
        parsed.checks.push_back(name);
      }
    }
  } else {
    parsed.checks = {"square", "whitney", "boundary", "embed",
                     "stopping", "qns", "equivalence"};
  }

  parsed.knobs = parse_knobs(config);

  if (config.contains("brackets")) {
    const Json& brackets = config.at("brackets");
    if (!brackets.is_object()) throw ConfigError("config.brackets: expected an object");
    for (const auto& item : brackets.items()) {
      if (std::find(kKnownChecks.begin(), kKnownChecks.end(), item.key()) ==
          kKnownChecks.end()) {
        throw ConfigError("config.brackets." + item.key() + ": unknown check");
      }
      const Json& pair = item.value();
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() ||
          !pair[1].is_number() || pair[0].get<double>() > pair[1].get<double>()) {
        throw ConfigError("config.brackets." + item.key() +
                          ": expected [lo, hi] with lo <= hi");
      }
    }
    parsed.brackets = brackets;
  }

  if (config.contains("measure")) {
    parsed.measure_spec = config.at("measure");
    require_known_keys(parsed.measure_spec, "config.measure",
                       {"atoms", "atoms_csv", "grid_csv", "radial", "boundary_arc"});
    int forms = 0;
    for (const char* key : {"atoms", "atoms_csv", "grid_csv", "radial", "boundary_arc"}) {
      if (parsed.measure_spec.contains(key)) {
        ++forms;
        parsed.measure_kind = key;
      }
    }
    if (forms > 1) {
      throw ConfigError("config.measure: give exactly one of atoms, atoms_csv, "
                        "grid_csv, radial, boundary_arc");
    }
  }
  return parsed;
}

PlanarMeasure build_measure(const ParsedConfig& parsed, const BoundaryCurve* curve) {
  const Json& spec = parsed.measure_spec;
  if (parsed.measure_kind == "empty") return AtomicMeasure{};
  try {
    if (parsed.measure_kind == "atoms") {
      const Json& atoms = spec.at("atoms");
      if (!atoms.is_array()) throw ConfigError("config.measure.atoms: expected an array");
      AtomicMeasure mu;
      for (std::size_t i = 0; i < atoms.size(); ++i) {
        const Json& row = atoms[i];
        const std::string path = "config.measure.atoms[" + std::to_string(i) + "]";
        if (!row.is_array() || row.size() != 3) {
          throw ConfigError(path + ": expected [x, y, weight]");
        }
        mu.add(Complex(number_at(row[0], path), number_at(row[1], path)),
               number_at(row[2], path));
      }
      return mu;
    }
    if (parsed.measure_kind == "atoms_csv" || parsed.measure_kind == "grid_csv") {
      const Json& node = spec.at(parsed.measure_kind);
      if (!node.is_string()) {
        throw ConfigError("config.measure." + parsed.measure_kind + ": expected a path");
      }
      const std::string path = node.get<std::string>();
      if (!std::filesystem::exists(path)) {
        throw ConfigError("config.measure." + parsed.measure_kind +
                          ": missing file: " + path);
      }
      if (parsed.measure_kind == "atoms_csv") return read_atoms_csv(path);
      return read_grid_csv(path);
    }
    if (parsed.measure_kind == "radial") {
      const Json& node = spec.at("radial");
      require_known_keys(node, "config.measure.radial", {"coeff", "exponent"});
      return RadialPowerDensity(
          node.contains("coeff") ? number_at(node.at("coeff"), "config.measure.radial.coeff")
                                 : 1.0,
          node.contains("exponent")
              ? number_at(node.at("exponent"), "config.measure.radial.exponent")
              : 0.0);
    }
    // boundary_arc: constant density on the working boundary polyline.
    const Json& node = spec.at("boundary_arc");
    require_known_keys(node, "config.measure.boundary_arc", {"value"});
    const double value =
        node.contains("value") ? number_at(node.at("value"), "config.measure.boundary_arc.value")
                               : 1.0;
    if (!curve) {
      throw ConfigError("config.measure.boundary_arc: no boundary curve available");
    }
    return BoundaryArcMeasure(*curve, std::vector<double>(curve->size(), value));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& err) {
    throw ConfigError("config.measure: " + std::string(err.what()));
  } catch (const std::runtime_error& err) {
    throw ConfigError("config.measure: " + std::string(err.what()));
  }
}

void apply_bracket(Json& result, const Json& brackets, const std::string& name,
                   double value) {
  result["constant"] = value;
  if (brackets.contains(name)) {
    const Json& pair = brackets.at(name);
    result["bracket"] = pair;
    result["pass"] = std::isfinite(value) && value >= pair[0].get<double>() &&
                     value <= pair[1].get<double>();
  } else {
    result["pass"] = true;
  }
}

void write_probe_csv(const std::filesystem::path& path,
                     const std::vector<ProbeRecord>& probes) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "probe_id,parameter,measure,ratio\n";
  char line[320];
  for (const auto& probe : probes) {
    std::snprintf(line, sizeof line, "%s,%.17g,%.17g,%.17g\n", probe.probe_id.c_str(),
                  probe.parameter, probe.measure, probe.ratio);
    out << line;
  }
}

}  // namespace

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  Json parsed;
  try {
    in >> parsed;
  } catch (const Json::parse_error& err) {
    throw std::runtime_error(path + ": " + err.what());
  }
  return parsed;
}

RunOutcome run(const Json& config, const std::string& out_dir) {
  const auto start = std::chrono::steady_clock::now();
  RunOutcome outcome;
  Json body;
  body["provenance"]["config"] = config;

  const auto finalize = [&](int exit_code) {
    outcome.exit_code = exit_code;
    outcome.report["body"] = body;
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    outcome.report["timing"]["seconds"] = seconds;
    if (!out_dir.empty()) {
      std::filesystem::create_directories(out_dir);
      std::ofstream out(std::filesystem::path(out_dir) / "report.json");
      out << outcome.report.dump(2) << "\n";
    }
    return outcome;
  };

  ParsedConfig parsed;
  std::optional<Domain> domain;
  std::optional<Domain> disc_domain;  // polyline circle for boundary scans
  std::optional<PlanarMeasure> measure;
  try {
    parsed = parse_config(config);
    if (parsed.has_domain) {
      try {
        domain.emplace(Domain::from_map(parsed.map, parsed.boundary_samples));
      } catch (const std::exception& err) {
        throw ConfigError(std::string("config.domain: boundary polyline invalid: ") +
                          err.what());
      }
    } else {
      disc_domain.emplace(Domain(circle_curve(parsed.boundary_samples)));
    }
    const BoundaryCurve* curve =
        domain ? &domain->curve() : &disc_domain->curve();
    measure.emplace(build_measure(parsed, curve));
  } catch (const ConfigError& err) {
    body["error"] = err.what();
    return finalize(2);
  }

  const double beta = parsed.space == SpaceKind::kHardy
                          ? parsed.params.hardy_exponent()
                          : parsed.params.bergman_exponent();
  const Knobs& knobs = parsed.knobs;
  Json warnings = Json::array();

  // Disc-side copy of the measure: the identity setup keeps it as-is, a real
  // domain pulls atoms back through the map.
  std::optional<PlanarMeasure> disc_measure;
  std::string disc_measure_error;
  if (!parsed.has_domain) {
    disc_measure = *measure;
  } else {
    try {
      const PullbackResult pulled =
          knobs.pullback_exponent != 0.0
              ? weighted_pullback(parsed.map, *measure, knobs.pullback_exponent)
              : pullback(parsed.map, *measure);
      disc_measure = PlanarMeasure(pulled.measure);
      if (!pulled.rejected.empty()) {
        warnings.push_back("pullback rejected " +
                           std::to_string(pulled.rejected.size()) +
                           " atoms with mass " + std::to_string(pulled.rejected_mass));
      }
      if (pulled.near_boundary_flags > 0) {
        warnings.push_back("pullback preimages near the boundary: " +
                           std::to_string(pulled.near_boundary_flags));
      }
    } catch (const std::exception& err) {
      disc_measure_error = err.what();
    }
  }

  const auto need_disc = [&]() -> const PlanarMeasure& {
    if (!disc_measure) {
      throw std::runtime_error("measure has no disc pullback: " + disc_measure_error);
    }
    return *disc_measure;
  };

  const DiscQuadratureSpec quadrature{knobs.radial_cells, knobs.angular_cells};
  Json results = Json::object();
  bool all_ok = true;

  for (const std::string& check : parsed.checks) {
    Json result;
    result["status"] = "ok";
    std::vector<ProbeRecord> probes;
    std::string side_file;
    try {
      if (check == "square") {
        const double constant = square_constant(need_disc(), beta, knobs.depth, &probes);
        result["beta"] = beta;
        result["depth"] = knobs.depth;
        apply_bracket(result, parsed.brackets, check, constant);
        side_file = "square_probes.csv";
      } else if (check == "whitney") {
        WhitneyScanSpec scan;
        scan.min_level = std::max(1, knobs.whitney_min_level);
        scan.max_level = std::max(scan.min_level, knobs.whitney_max_level);
        const double constant =
            parsed.has_domain
                ? whitney_ball_constant(*measure, beta, scan, &*domain, &probes)
                : whitney_ball_constant(need_disc(), beta, scan, nullptr, &probes);
        result["beta"] = beta;
        result["min_level"] = scan.min_level;
        result["max_level"] = scan.max_level;
        apply_bracket(result, parsed.brackets, check, constant);
        side_file = "whitney_probes.csv";
      } else if (check == "boundary") {
        const Domain& dom = parsed.has_domain ? *domain : *disc_domain;
        const BoundaryCurve& curve = dom.curve();
        std::vector<Complex> centers;
        const std::size_t stride =
            std::max<std::size_t>(1, curve.size() / knobs.boundary_probes);
        for (std::size_t i = 0; i < curve.size() &&
                                centers.size() < static_cast<std::size_t>(knobs.boundary_probes);
             i += stride) {
          centers.push_back(curve.vertex(i));
        }
        std::vector<double> radii;
        for (int j = 1; j <= knobs.boundary_radii; ++j) {
          radii.push_back(dom.diameter() * std::ldexp(1.0, -j));
        }
        const double constant = boundary_ball_constant(
            *measure, dom, knobs.boundary_beta, centers, radii, &probes);
        result["beta"] = knobs.boundary_beta;
        result["centers"] = centers.size();
        result["radii"] = radii.size();
        apply_bracket(result, parsed.brackets, check, constant);
        side_file = "boundary_probes.csv";
      } else if (check == "embed") {
        const SpaceSpec space{parsed.space, parsed.params.p, parsed.params.alpha};
        FamilySpec family_spec;
        family_spec.max_level = knobs.family_max_level;
        family_spec.angular_multiplier = knobs.family_angular_multiplier;
        const std::vector<TestFunction> family = default_family(space, family_spec);
        EmbeddingOptions opts;
        opts.boundary_samples = knobs.embed_boundary_samples;
        opts.quadrature = quadrature;
        const EmbeddingEstimate estimate =
            embedding_constant(space, parsed.params.q, need_disc(), family, opts);
        result["power_constant"] = estimate.power_constant;
        result["witness"] = describe(family[estimate.witness]);
        result["family_size"] = family.size();
        apply_bracket(result, parsed.brackets, check, estimate.constant);
      } else if (check == "stopping") {
        StoppingConfig stopping;
        stopping.max_depth = std::min(knobs.depth, 16);
        stopping.stopping_factor =
            knobs.stopping_factor > 0.0
                ? knobs.stopping_factor
                : std::exp(1.0 + bmo_norm_estimate(parsed.map, 6, 64).value);
        const GenerationTree tree = build_generations(parsed.map, stopping);
        result["stopping_factor"] = stopping.stopping_factor;
        result["regions"] = tree.regions().size();
        result["generation_count"] = tree.generations().size();
        result["unresolved_area"] = tree.unresolved_area();
        Json lengths = Json::array();
        for (double value : tree.generation_arc_lengths()) lengths.push_back(value);
        result["generation_arc_lengths"] = lengths;
        apply_bracket(result, parsed.brackets, check, generation_decay(tree));
        if (!out_dir.empty()) {
          std::ofstream out(std::filesystem::path(out_dir) / "stopping_report.txt");
          out << tree.text_report();
          result["report_file"] = "stopping_report.txt";
        }
      } else if (check == "qns") {
        std::vector<std::pair<std::string, QnsCandidate>> candidates;
        candidates.emplace_back(
            "modulus-sq", ModulusPower{Monomial{1, 1.0}, 2.0});
        candidates.emplace_back(
            "kernel-p", ModulusPower{HardyKernel{Complex(0.5, 0.0), parsed.params.p},
                                     parsed.params.p});
        if (!parsed.has_domain) {
          std::vector<double> band(64);
          for (std::size_t j = 0; j < band.size(); ++j) {
            band[j] = 1.0 + std::cos(j * kTwoPi / band.size());
          }
          candidates.emplace_back("harmonic-band", HarmonicData{band});
        }
        double constant = 0.0;
        Json ratios = Json::object();
        for (const auto& [name, candidate] : candidates) {
          const auto u = [&candidate](Complex z) { return evaluate(candidate, z); };
          const double ratio =
              parsed.has_domain
                  ? weighted_area_ratio(u, *measure, parsed.params.alpha, *domain,
                                        quadrature)
                  : weighted_area_ratio(u, need_disc(), parsed.params.alpha,
                                        quadrature);
          ratios[name] = ratio;
          if (std::isfinite(ratio)) constant = std::max(constant, ratio);
        }
        const std::vector<BallSpec> balls =
            random_disc_balls(parsed.seed, knobs.qns_balls);
        const QnsCandidate probe =
            ModulusPower{HardyKernel{Complex(0.5, 0.0), parsed.params.p},
                         parsed.params.p};
        result["ratios"] = ratios;
        result["mean_value_constant"] = qns_constant(probe, balls).constant;
        apply_bracket(result, parsed.brackets, check, constant);
      } else if (check == "equivalence") {
        // The square/ball comparison needs beta > 1; fall back to the suite
        // exponent when the space exponent q/p is too small.
        const double eq_beta = beta > 1.0 ? beta : knobs.suite_beta;
        const EquivalenceReport eq = equivalence_report(need_disc(), eq_beta, knobs.depth);
        result["square_c"] = eq.square_c;
        result["ball_c"] = eq.ball_c;
        result["beta"] = eq_beta;
        apply_bracket(result, parsed.brackets, check, eq.ratio);
      } else if (check == "suite") {
        const std::vector<AtomicMeasure> suite = random_atom_suite(
            parsed.seed, knobs.suite_measures, knobs.suite_atoms,
            std::min(knobs.depth, 10));
        double min_ratio = std::numeric_limits<double>::infinity();
        double max_ratio = 0.0;
        for (const AtomicMeasure& m : suite) {
          const EquivalenceReport eq =
              equivalence_report(m, knobs.suite_beta, knobs.depth);
          min_ratio = std::min(min_ratio, eq.ratio);
          max_ratio = std::max(max_ratio, eq.ratio);
        }
        result["measures"] = suite.size();
        result["beta"] = knobs.suite_beta;
        result["min_ratio"] = min_ratio;
        apply_bracket(result, parsed.brackets, check, max_ratio);
      }
    } catch (const std::exception& err) {
      result = Json::object();
      result["status"] = "error";
      result["error"] = err.what();
      result["pass"] = false;
    }
    if (!out_dir.empty() && !side_file.empty() && !probes.empty() &&
        result.value("status", std::string()) == "ok") {
      write_probe_csv(std::filesystem::path(out_dir) / side_file, probes);
      result["probe_csv"] = side_file;
    }
    if (!result["pass"].get<bool>()) all_ok = false;
    results[check] = result;
  }

  body["provenance"]["seed"] = parsed.seed;
  body["provenance"]["map"] = parsed.map.descriptor();
  body["provenance"]["measure_kind"] = parsed.measure_kind;
  body["provenance"]["beta"] = beta;
  body["provenance"]["resolution"] = {
      {"boundary_samples", parsed.boundary_samples},
      {"depth", knobs.depth},
      {"radial_cells", knobs.radial_cells},
      {"angular_cells", knobs.angular_cells}};
  body["provenance"]["warnings"] = warnings;
  body["results"] = results;
  return finalize(all_ok ? 0 : 1);
}

std::string render_report(const Json& report) {
  std::ostringstream out;
  const Json& body = report.contains("body") ? report.at("body") : report;
  if (body.contains("error")) {
    out << "config error: " << body.at("error").get<std::string>() << "\n";
    return out.str();
  }
  if (body.contains("provenance")) {
    const Json& prov = body.at("provenance");
    out << "run";
    if (prov.contains("map")) out << " map=" << prov.at("map").get<std::string>();
    if (prov.contains("measure_kind")) {
      out << " measure=" << prov.at("measure_kind").get<std::string>();
    }
    if (prov.contains("seed")) out << " seed=" << prov.at("seed").get<std::uint64_t>();
    out << "\n";
    if (prov.contains("warnings")) {
      for (const auto& warning : prov.at("warnings")) {
        out << "warning: " << warning.get<std::string>() << "\n";
      }
    }
  }
  if (body.contains("results")) {
    for (const auto& item : body.at("results").items()) {
      const Json& result = item.value();
      out << item.key() << ": status=" << result.value("status", std::string("?"));
      if (result.contains("constant")) {
        out << " constant=" << result.at("constant").get<double>();
      }
      if (result.contains("bracket")) {
        out << " bracket=[" << result.at("bracket")[0].get<double>() << ", "
            << result.at("bracket")[1].get<double>() << "]";
      }
      if (result.contains("pass")) {
        out << (result.at("pass").get<bool>() ? " pass" : " FAIL");
      }
      if (result.contains("error")) {
        out << " error=" << result.at("error").get<std::string>();
      }
      out << "\n";
    }
  }
  return out.str();
}

}  // namespace carleson
