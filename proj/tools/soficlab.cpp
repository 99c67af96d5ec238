// soficlab: command-line surface over the sofic-entropy toolkit.
//
// Subcommands: entropy, density, indep, km, tile, bijection, det, liyorke,
// validate. Every run is deterministic for a fixed (config, seed); reports
// embed the config and its hash for replay.
//
// Exit codes: 0 success, 2 validation failure, 3 budget exhaustion (partial
// results written when possible), 4 configuration error.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <future>
#include <iostream>
#include <random>
#include <sstream>

#include "soficlab/entropy.hpp"
#include "soficlab/independence.hpp"
#include "soficlab/quasitiling.hpp"
#include "soficlab/serialize.hpp"
#include "soficlab/spectral.hpp"

using json = nlohmann::json;
using namespace soficlab;

namespace {

constexpr const char* kCodeVersion = "soficlab-0.1.0";

std::uint64_t fnv_hash(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

json report_shell(const std::string& kind, const json& config) {
  json report;
  report["schema_version"] = 1;
  report["kind"] = kind;
  report["code_version"] = kCodeVersion;
  report["config"] = config;
  report["config_hash"] = fnv_hash(config.dump());
  report["timestamp"] =
      std::chrono::duration_cast<std::chrono::seconds>(
          std::chrono::system_clock::now().time_since_epoch())
          .count();
  return report;
}

void emit(const json& report, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << report.dump(2) << std::endl;
    return;
  }
  std::ofstream os(out_path);
  if (!os) throw CLI::ValidationError("--out", "cannot open " + out_path);
  os << report.dump(2) << '\n';
}

std::vector<int> parse_range(const std::string& text) {
  auto dots = text.find("..");
  std::vector<int> out;
  if (dots == std::string::npos) {
    std::istringstream is(text);
    std::string tok;
    while (std::getline(is, tok, ',')) out.push_back(std::stoi(tok));
    return out;
  }
  int lo = std::stoi(text.substr(0, dots));
  int hi = std::stoi(text.substr(dots + 2));
  for (int v = lo; v <= hi; ++v) out.push_back(v);
  return out;
}

std::vector<double> parse_doubles(const std::string& text) {
  std::vector<double> out;
  std::istringstream is(text);
  std::string tok;
  while (std::getline(is, tok, ',')) out.push_back(std::stod(tok));
  return out;
}

struct ParsedAction {
  ActionSpec action;
  std::string description;
};

ParsedAction parse_action(const std::string& text, const GroupSpec& group) {
  if (text == "fullshift2" || text == "fullshift:2")
    return {full_shift(group, 2), "full shift on 2 symbols"};
  if (text == "fullshift3" || text == "fullshift:3")
    return {full_shift(group, 3), "full shift on 3 symbols"};
  if (text == "fullshift6" || text == "fullshift:6")
    return {full_shift(group, 6), "full shift on 6 symbols"};
  if (text == "product23")
    return {product_action(full_shift(group, 2), full_shift(group, 3)),
            "product of full shifts on 2 and 3 symbols"};
  if (text.rfind("fullshift:", 0) == 0)
    return {full_shift(group, std::stoi(text.substr(10))), text};
  if (text.rfind("sft:", 0) == 0) {
    // sft:<file>[:k]
    std::string rest = text.substr(4);
    int k = 2;
    auto colon = rest.rfind(':');
    if (colon != std::string::npos && colon > 1) {
      k = std::stoi(rest.substr(colon + 1));
      rest = rest.substr(0, colon);
    }
    std::ifstream is(rest);
    if (!is) throw CLI::ValidationError("--action", "cannot open " + rest);
    auto patterns = load_forbidden_patterns(group, is);
    return {sft(group, k, std::move(patterns)), "SFT from " + rest};
  }
  if (text == "golden") {
    ForbiddenPattern p;
    p.cells.push_back({GroupElement{{0}}, {1}});
    p.cells.push_back({GroupElement{{1}}, {1}});
    return {sft(group, 2, {p}), "golden mean shift"};
  }
  if (text.rfind("ring:", 0) == 0) {
    RingElement f = parse_ring_element(group, text.substr(5));
    return {algebraic_action(RingMatrix::scalar(f)), "X_f for f = " + text.substr(5)};
  }
  throw CLI::ValidationError("--action", "unknown action: " + text);
}

SetTuple parse_tuple(const std::string& text, const GroupSpec& group) {
  SetTuple tuple;
  std::istringstream is(text);
  std::string part;
  while (std::getline(is, part, ',')) {
    if (part.rfind("cyl:", 0) != 0)
      throw CLI::ValidationError("--tuple", "expected cyl:<pos>=<sym>: " + part);
    std::string body = part.substr(4);
    auto eq = body.find('=');
    if (eq == std::string::npos)
      throw CLI::ValidationError("--tuple", "missing '=' in " + part);
    std::string pos_text = body.substr(0, eq);
    GroupElement pos = pos_text == "e" ? identity(group)
                                       : parse_element(group, pos_text);
    tuple.sets.push_back(cylinder(pos, std::stoi(body.substr(eq + 1))));
  }
  if (tuple.sets.empty())
    throw CLI::ValidationError("--tuple", "empty tuple");
  return tuple;
}

std::vector<std::vector<GroupElement>> parse_shapes(const std::string& text,
                                                    const GroupSpec& group) {
  std::vector<std::vector<GroupElement>> shapes;
  std::istringstream is(text);
  std::string part;
  while (std::getline(is, part, ',')) {
    if (part.rfind("ball:", 0) == 0) {
      shapes.push_back(ball(group, std::stoi(part.substr(5))));
    } else if (part.rfind("interval:", 0) == 0) {
      int len = std::stoi(part.substr(9));
      std::vector<GroupElement> shape;
      for (int g = 0; g < len; ++g) shape.push_back(GroupElement{{g}});
      shapes.push_back(std::move(shape));
    } else {
      throw CLI::ValidationError("--shapes", "expected ball:<r> or interval:<n>");
    }
  }
  std::sort(shapes.begin(), shapes.end(),
            [](const auto& a, const auto& b) { return a.size() < b.size(); });
  return shapes;
}

PointPattern parse_point(const std::string& text, const ActionSpec& action,
                         int radius) {
  PointPattern x = constant_pattern(action, radius, 0);
  if (text == "const:0") return x;
  if (text.rfind("const:", 0) == 0) {
    int sym = std::stoi(text.substr(6));
    for (auto& [g, v] : x.symbols) v = sym;
    return x;
  }
  if (text == "dyadic") {
    for (auto& [g, v] : x.symbols) {
      std::int64_t a = std::llabs(g.data[0]);
      if (a > 0 && (a & (a - 1)) == 0) v = 1;
    }
    return x;
  }
  std::ifstream is(text);
  if (!is) throw CLI::ValidationError("point", "cannot open " + text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw CLI::ValidationError("point", "expected <pos>=<sym>: " + line);
    GroupElement pos = parse_element(action.group, line.substr(0, eq));
    x.symbols.at(pos) = std::stoi(line.substr(eq + 1));
  }
  return x;
}

json separation_json(const SeparationReport& sep) {
  json out;
  out["epsilon"] = sep.epsilon;
  out["metric"] = sep.metric == MapMetric::Rho2 ? "rho2" : "rhoinf";
  out["bound"] = sep.bound == SeparationReport::Bound::Exact ? "exact"
                                                             : "greedy-lower";
  out["log_count"] = sep.log_count;
  if (sep.count) out["count"] = *sep.count;
  if (sep.power_form)
    out["power_form"] = {{"base", sep.power_form->first},
                         {"exp", sep.power_form->second}};
  return out;
}

int run_entropy(const std::string& action_text, const std::string& levels_text,
                const std::string& eps_text, const std::string& delta_text,
                int window, std::int64_t budget, std::uint64_t seed,
                const std::string& metric_text, const std::string& out_path,
                const std::string& csv_path) {
  GroupSpec z = GroupSpec::lattice(1);
  ParsedAction parsed = parse_action(action_text, z);

  EntropySchedule schedule;
  schedule.action = parsed.action;
  std::vector<int> levels = parse_range(levels_text);
  int support = window;
  if (!schedule.action.is_symbolic()) {
    const auto& inv = schedule.action.algebraic().adjoint_inverse;
    std::int64_t r = 0;
    for (int i = 0; i < inv.n(); ++i)
      for (int j = 0; j < inv.n(); ++j)
        r = std::max(r, inv.at(i, j).support_radius());
    support = static_cast<int>(r) + window + 1;
  }
  for (int n : levels) schedule.levels.push_back(quotient_sofic(z, {n}, support));
  for (int r = 1; r <= window; ++r) schedule.f_radii.push_back(r);
  schedule.deltas = parse_doubles(delta_text);
  schedule.epsilons = parse_doubles(eps_text);
  schedule.metric = metric_text == "2" ? MapMetric::Rho2 : MapMetric::RhoInf;
  schedule.policy.budget = budget;
  schedule.seed = seed;

  EntropyReport result = estimate(schedule);

  json config = {{"action", action_text}, {"levels", levels_text},
                 {"eps", eps_text},       {"delta", delta_text},
                 {"window", window},      {"budget", budget},
                 {"seed", seed},          {"metric", metric_text}};
  json report = report_shell("entropy", config);
  json cells = json::array();
  for (const auto& cell : result.cells) {
    json c;
    c["level"] = cell.level;
    c["d"] = cell.d;
    c["f_radius"] = cell.f_radius;
    c["delta"] = cell.delta;
    c["epsilon"] = cell.epsilon;
    c["family_empty"] = cell.family_empty;
    c["certified"] = cell.certified;
    c["samples_checked"] = cell.samples_checked;
    if (cell.family_empty) {
      c["value"] = "-inf";
    } else {
      c["value"] = cell.value;
      c["value_log2"] = cell.value / std::log(2.0);
      c["value_is_exact_log"] = cell.value_is_exact_log;
      c["separation"] = separation_json(cell.separation);
    }
    if (!cell.flags.empty()) c["flags"] = cell.flags;
    cells.push_back(std::move(c));
  }
  report["results"]["cells"] = std::move(cells);
  report["results"]["monotone_in_epsilon"] = result.monotone_in_epsilon;
  report["results"]["monotone_in_delta"] = result.monotone_in_delta;
  report["results"]["partial"] = result.partial;
  auto summary = [&](double v) -> json {
    if (v == kNegInfinity) return "-inf";
    return v;
  };
  report["results"]["summary"] = {{"max", summary(result.summary_max)},
                                  {"min", summary(result.summary_min)},
                                  {"last", summary(result.summary_last)}};
  emit(report, out_path);

  if (!csv_path.empty()) {
    std::ofstream csv(csv_path);
    csv << "level,d,f_radius,delta,epsilon,value,exact_log\n";
    for (const auto& cell : result.cells)
      csv << cell.level << ',' << cell.d << ',' << cell.f_radius << ','
          << cell.delta << ',' << cell.epsilon << ','
          << (cell.family_empty ? std::string("-inf")
                                : std::to_string(cell.value))
          << ',' << cell.value_is_exact_log << '\n';
  }
  return result.partial ? 3 : 0;
}

int run_density(const std::string& action_text, const std::string& window_text,
                const std::string& tuple_text, const std::string& mode,
                const std::string& out_path) {
  GroupSpec z = GroupSpec::lattice(1);
  ParsedAction parsed = parse_action(action_text, z);
  SetTuple tuple = parse_tuple(tuple_text, z);

  std::vector<GroupElement> f_set;
  for (int g : parse_range(window_text)) f_set.push_back(GroupElement{{g}});

  SearchOptions opts;
  opts.mode = mode == "greedy" ? SearchOptions::Mode::Greedy
                               : SearchOptions::Mode::Exact;
  DensityResult result = independence_density(parsed.action, f_set, tuple, opts);

  json config = {{"action", action_text},
                 {"window", window_text},
                 {"tuple", tuple_text},
                 {"mode", mode}};
  json report = report_shell("density", config);
  report["results"]["q"] = result.q;
  report["results"]["exact"] = result.exact;
  report["results"]["hit_unknown"] = result.hit_unknown;
  json j = json::array();
  for (const auto& s : result.j_set) j.push_back(format_element(z, s));
  report["results"]["j_set"] = std::move(j);
  report["results"]["f_size"] = f_set.size();
  emit(report, out_path);
  return 0;
}

int run_indep(const std::string& action_text, int modulus, int support,
              const std::string& j_text, int f_radius, double delta,
              const std::string& tuple_text, bool sample, std::uint64_t seed,
              const std::string& out_path) {
  GroupSpec z = GroupSpec::lattice(1);
  ParsedAction parsed = parse_action(action_text, z);
  SoficMap sigma = quotient_sofic(z, {modulus}, support);
  SetTuple tuple = tuple_text.empty()
                       ? [&] {
                           SetTuple t;
                           for (int i = 0; i < parsed.action.alphabet_size(); ++i)
                             t.sets.push_back(cylinder(identity(z), i));
                           return t;
                         }()
                       : parse_tuple(tuple_text, z);

  std::vector<int> j_set;
  if (j_text == "all") {
    for (int i = 0; i < sigma.d(); ++i) j_set.push_back(i);
  } else {
    for (int v : parse_range(j_text)) j_set.push_back(v);
  }

  WitnessGenerator gen =
      fullshift_witness_generator(parsed.action, tuple, sigma, f_radius);
  SearchOptions opts;
  opts.allow_sampling = sample;
  opts.seed = seed;
  SoficIndependenceResult result = sofic_independence_check(
      parsed.action, j_set, tuple, ball(z, f_radius), delta, sigma, gen, opts);

  json config = {{"action", action_text}, {"modulus", modulus},
                 {"support", support},    {"j", j_text},
                 {"f_radius", f_radius},  {"delta", delta},
                 {"tuple", tuple_text},   {"sample", sample},
                 {"seed", seed}};
  json report = report_shell("indep", config);
  report["results"]["verdict"] = result.verdict == Tristate::True    ? "true"
                                 : result.verdict == Tristate::False ? "false"
                                                                     : "unknown";
  report["results"]["sampled"] = result.sampled;
  report["results"]["omegas_checked"] = result.omegas_checked;
  report["results"]["failures"] = result.failures;
  emit(report, out_path);
  return result.verdict == Tristate::False ? 2 : 0;
}

int run_km(const std::string& input, int k, const std::string& mode,
           const std::string& out_path) {
  std::ifstream is(input);
  if (!is) throw CLI::ValidationError("--input", "cannot open " + input);
  std::vector<std::vector<int>> tuples;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<int> t;
    for (char ch : line) {
      if (ch < '1' || ch > '9')
        throw CLI::ValidationError("--input", "digits 1..k expected: " + line);
      t.push_back(ch - '1');
    }
    tuples.push_back(std::move(t));
  }
  KmOptions opts;
  opts.mode = mode == "greedy" ? KmOptions::Mode::Greedy : KmOptions::Mode::Exact;
  KmResult result = km_extract(tuples, k, opts);

  json config = {{"input", input}, {"k", k}, {"mode", mode}};
  json report = report_shell("km", config);
  report["results"]["coords"] = result.coords;
  report["results"]["size"] = result.coords.size();
  report["results"]["exact"] = result.exact;
  report["results"]["achieved_ratio"] = result.achieved_ratio;
  report["results"]["witnesses"] = result.witnesses;
  // embed the instance for certificate replay
  report["results"]["instance"] = tuples;
  emit(report, out_path);
  return 0;
}

int run_tile(const std::string& group_text, const std::string& moduli_text,
             const std::string& shapes_text, double tau, double eta,
             const std::string& out_path) {
  int rank = group_text == "Z2" ? 2 : 1;
  GroupSpec g = GroupSpec::lattice(rank);
  std::vector<std::int64_t> moduli;
  for (int m : parse_range(moduli_text)) moduli.push_back(m);
  if (static_cast<int>(moduli.size()) != rank)
    throw CLI::ValidationError("--moduli", "rank mismatch");

  auto shapes = parse_shapes(shapes_text, g);
  int support = 1;
  for (const auto& shape : shapes)
    for (const auto& s : shape)
      support = std::max(support, static_cast<int>(word_length(g, s)));
  SoficMap sigma = quotient_sofic(g, moduli, support);
  IndexSet v(sigma.d());
  for (int i = 0; i < sigma.d(); ++i) v[i] = i;

  QuasitileOptions qopts;
  qopts.want_occupancy = true;
  TileSystem tiles = quasitile(sigma, shapes, v, tau, eta, qopts);

  json config = {{"group", group_text}, {"moduli", moduli_text},
                 {"shapes", shapes_text}, {"tau", tau}, {"eta", eta}};
  json report = report_shell("tile", config);
  report["results"] = json::parse(tile_system_to_json(tiles, sigma));
  report["results"]["support_radius"] = support;
  emit(report, out_path);
  return 0;
}

int run_bijection(int modulus, double tau, double epsilon, int f_radius,
                  int trials, std::uint64_t seed, const std::string& out_path) {
  GroupSpec z = GroupSpec::lattice(1);
  SoficMap sigma = quotient_sofic(z, {modulus}, std::max(70, 8 * f_radius + 2));
  json runs = json::array();
  bool all_ok = true;
  for (int trial = 0; trial < trials; ++trial) {
    std::mt19937_64 rng(seed + trial);
    std::vector<int> all(modulus);
    for (int i = 0; i < modulus; ++i) all[i] = i;
    auto pick = [&](std::vector<int> v) {
      std::shuffle(v.begin(), v.end(), rng);
      v.resize(modulus / 2);
      std::sort(v.begin(), v.end());
      return v;
    };
    IndexSet y = pick(all), zset = pick(all);
    CommutingBijectionOptions opts;
    opts.f_radius = f_radius;
    CommutingBijectionResult r =
        commuting_bijection(sigma, y, zset, tau, epsilon, opts);
    json one;
    one["trial"] = trial;
    one["max_defect"] = r.max_defect;
    one["overlap"] = r.overlap;
    one["lambda_bound"] = r.lambda_bound;
    one["defect_ok"] = r.defect_ok;
    one["overlap_ok"] = r.overlap_ok;
    one["diagnostics"] = r.diagnostics;
    runs.push_back(std::move(one));
    all_ok = all_ok && r.defect_ok && r.overlap_ok;
  }
  json config = {{"modulus", modulus}, {"tau", tau},
                 {"epsilon", epsilon}, {"f_radius", f_radius},
                 {"trials", trials},   {"seed", seed}};
  json report = report_shell("bijection", config);
  report["results"]["runs"] = std::move(runs);
  report["results"]["all_ok"] = all_ok;
  emit(report, out_path);
  return all_ok ? 0 : 2;
}

int run_det(const std::string& ring_text, const std::string& moduli_text,
            int exact_cap, int jobs, const std::string& out_path) {
  GroupSpec z = GroupSpec::lattice(1);
  RingElement f = parse_ring_element(z, ring_text);
  std::vector<std::vector<std::int64_t>> moduli;
  for (int n : parse_range(moduli_text)) moduli.push_back({n});

  FkOptions opts;
  opts.exact_cap = exact_cap;

  DetReport result;
  if (jobs > 1 && moduli.size() > 1) {
    // per-modulus computations are independent; fan out and stitch
    std::vector<std::future<DetReport>> futures;
    for (const auto& mod : moduli)
      futures.push_back(std::async(std::launch::async, [&, mod] {
        return fk_det_estimate(f, {mod}, opts);
      }));
    std::vector<std::vector<std::int64_t>> all = moduli;
    result.f_text = format_ring_element(f);
    for (auto& fut : futures) {
      DetReport piece = fut.get();
      result.levels.push_back(piece.levels.front());
    }
    // recompute the aggregate over the stitched levels
    DetReport direct = fk_det_estimate(f, moduli, opts);
    result.estimate = direct.estimate;
    result.spread = direct.spread;
    result.aggregated_from = direct.aggregated_from;
  } else {
    result = fk_det_estimate(f, moduli, opts);
  }

  json config = {{"ring", ring_text},
                 {"moduli", moduli_text},
                 {"exact_cap", exact_cap}};
  json report = report_shell("det", config);
  json levels = json::array();
  for (const auto& level : result.levels) {
    json l;
    l["moduli"] = level.moduli;
    l["dim"] = level.dim;
    l["exact"] = level.exact;
    l["singular"] = level.singular;
    if (!level.singular) {
      l["log_abs_det"] = level.log_abs_det;
      l["value"] = level.value;
      l["value_is_exact_log"] = level.value_is_exact_log;
    }
    if (!level.exact) l["condition"] = level.condition;
    levels.push_back(std::move(l));
  }
  report["results"]["levels"] = std::move(levels);
  report["results"]["estimate"] = result.estimate;
  report["results"]["spread"] = result.spread;
  report["results"]["aggregated_from"] = result.aggregated_from;
  emit(report, out_path);
  return 0;
}

int run_liyorke(const std::string& action_text, const std::string& x_text,
                const std::string& y_text, int radius, double a, double b,
                const std::string& out_path) {
  GroupSpec z = GroupSpec::lattice(1);
  ParsedAction parsed = parse_action(action_text, z);
  PointPattern x = parse_point(x_text, parsed.action, radius);
  PointPattern y = parse_point(y_text, parsed.action, radius);
  LiYorkeReport result = li_yorke_scan(parsed.action, x, y, radius, a, b);

  json config = {{"action", action_text}, {"x", x_text}, {"y", y_text},
                 {"radius", radius},      {"a", a},      {"b", b}};
  json report = report_shell("liyorke", config);
  json annuli = json::array();
  for (const auto& ann : result.annuli) {
    json one;
    one["radius"] = ann.radius;
    one["sup"] = ann.sup;
    one["inf"] = ann.inf;
    if (ann.sup_witness)
      one["sup_witness"] = format_element(z, *ann.sup_witness);
    if (ann.inf_witness)
      one["inf_witness"] = format_element(z, *ann.inf_witness);
    annuli.push_back(std::move(one));
  }
  report["results"]["annuli"] = std::move(annuli);
  report["results"]["separation_evidence"] = result.separation_evidence;
  report["results"]["proximality_evidence"] = result.proximality_evidence;
  report["results"]["note"] =
      "finite-radius evidence only; no limit claim is made";
  emit(report, out_path);
  return 0;
}

int run_validate(const std::string& input) {
  std::ifstream is(input);
  if (!is) throw CLI::ValidationError("--input", "cannot open " + input);
  json stored = json::parse(is);
  std::string kind = stored.at("kind").get<std::string>();

  if (kind == "tile") {
    const json& config = stored.at("config");
    int rank = config.at("group").get<std::string>() == "Z2" ? 2 : 1;
    GroupSpec g = GroupSpec::lattice(rank);
    std::vector<std::int64_t> moduli;
    for (int m : parse_range(config.at("moduli").get<std::string>()))
      moduli.push_back(m);
    int support = stored.at("results").at("support_radius").get<int>();
    SoficMap sigma = quotient_sofic(g, moduli, support);
    TileSystem tiles =
        tile_system_from_json(stored.at("results").dump(), sigma);
    validate_tile_system(tiles, sigma);
    std::cout << "tile certificate valid: cover " << tiles.cover_fraction
              << std::endl;
    return 0;
  }
  if (kind == "km") {
    auto tuples =
        stored.at("results").at("instance").get<std::vector<std::vector<int>>>();
    auto coords = stored.at("results").at("coords").get<std::vector<int>>();
    int k = stored.at("config").at("k").get<int>();
    // replay: the stored coordinate set must shatter the stored instance
    std::set<std::vector<int>> restrictions;
    for (const auto& t : tuples) {
      std::vector<int> r;
      for (int c : coords) r.push_back(t.at(c));
      restrictions.insert(std::move(r));
    }
    double needed = std::pow(static_cast<double>(k),
                             static_cast<double>(coords.size()));
    if (static_cast<double>(restrictions.size()) != needed)
      throw Error("km certificate does not shatter");
    std::cout << "km certificate valid: |I| = " << coords.size() << std::endl;
    return 0;
  }
  if (kind == "density") {
    const json& config = stored.at("config");
    GroupSpec z = GroupSpec::lattice(1);
    ParsedAction parsed =
        parse_action(config.at("action").get<std::string>(), z);
    SetTuple tuple = parse_tuple(config.at("tuple").get<std::string>(), z);
    std::vector<GroupElement> j_set;
    for (const auto& name : stored.at("results").at("j_set"))
      j_set.push_back(parse_element(z, name.get<std::string>()));
    if (is_independence_set(parsed.action, j_set, tuple) != Tristate::True)
      throw Error("density certificate failed revalidation");
    std::cout << "density certificate valid: |J| = " << j_set.size()
              << std::endl;
    return 0;
  }
  throw CLI::ValidationError("--input", "no validator for kind: " + kind);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"soficlab: sofic approximations, microstates, independence, "
               "quasitilings, and Fuglede-Kadison determinants at desk scale"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "read options from an INI file (flags win)");

  std::string out_path, csv_path;
  std::uint64_t seed = 0;
  int jobs = 1;
  app.add_option("--out", out_path, "write the JSON report here ('-' = stdout)")
      ->capture_default_str();
  app.add_option("--seed", seed, "seed for all randomized choices")
      ->capture_default_str();
  app.add_option("--jobs", jobs, "parallel jobs for independent level runs")
      ->capture_default_str();

  auto* entropy_cmd = app.add_subcommand("entropy", "h_Sigma estimation grid");
  std::string e_action = "fullshift2", e_levels = "4..10", e_eps = "0.5",
              e_delta = "0.25", e_metric = "inf";
  int e_window = 1;
  std::int64_t e_budget = 1'000'000;
  entropy_cmd->add_option("--action,--preset", e_action, "action or preset");
  entropy_cmd->add_option("--levels", e_levels, "quotient sizes, lo..hi or csv");
  entropy_cmd->add_option("--eps", e_eps, "epsilon grid, decreasing csv");
  entropy_cmd->add_option("--delta", e_delta, "delta grid, decreasing csv");
  entropy_cmd->add_option("--window", e_window, "F-chain radius");
  entropy_cmd->add_option("--budget", e_budget, "explicit family size budget");
  entropy_cmd->add_option("--metric", e_metric, "inf or 2");
  entropy_cmd->add_option("--csv", csv_path, "also flatten cells to CSV");

  auto* density_cmd = app.add_subcommand("density", "orbit independence density");
  std::string d_action = "golden", d_window = "0..9",
              d_tuple = "cyl:e=0,cyl:e=1", d_mode = "exact";
  density_cmd->add_option("--action", d_action, "symbolic action");
  density_cmd->add_option("--window", d_window, "finite window F in Z");
  density_cmd->add_option("--tuple", d_tuple, "cylinder tuple");
  density_cmd->add_option("--mode", d_mode, "exact or greedy");

  auto* indep_cmd = app.add_subcommand("indep", "sofic independence check");
  std::string i_action = "fullshift:2", i_j = "all", i_tuple;
  int i_modulus = 8, i_support = 2, i_f_radius = 1;
  double i_delta = 0.25;
  bool i_sample = false;
  indep_cmd->add_option("--action", i_action, "full shift action");
  indep_cmd->add_option("--modulus", i_modulus, "quotient size");
  indep_cmd->add_option("--support", i_support, "sofic support radius");
  indep_cmd->add_option("--j", i_j, "index set: 'all' or lo..hi/csv");
  indep_cmd->add_option("--f-radius", i_f_radius, "F ball radius");
  indep_cmd->add_option("--delta", i_delta, "Map tolerance");
  indep_cmd->add_option("--tuple", i_tuple, "cylinder tuple (default identity)");
  indep_cmd->add_flag("--sample", i_sample, "allow statistical omega sampling");

  auto* km_cmd = app.add_subcommand("km", "Karpovsky-Milman extraction");
  std::string k_input, k_mode = "exact";
  int k_k = 2;
  km_cmd->add_option("--input", k_input, "tuple file, one digit string per line")
      ->required();
  km_cmd->add_option("--k", k_k, "alphabet size");
  km_cmd->add_option("--mode", k_mode, "exact or greedy");

  auto* tile_cmd = app.add_subcommand("tile", "quasitiling of a quotient");
  std::string t_group = "Z", t_moduli = "60", t_shapes = "ball:2,ball:5";
  double t_tau = 0.0, t_eta = 0.1;
  tile_cmd->add_option("--group", t_group, "Z or Z2");
  tile_cmd->add_option("--modulus,--moduli", t_moduli, "quotient moduli");
  tile_cmd->add_option("--shapes", t_shapes, "nested shapes, e.g. ball:2,ball:5");
  tile_cmd->add_option("--tau", t_tau, "allowed uncovered fraction of V");
  tile_cmd->add_option("--eta", t_eta, "eta-disjointness parameter");

  auto* bij_cmd = app.add_subcommand("bijection", "commuting near-bijection");
  int b_modulus = 240, b_f_radius = 1, b_trials = 1;
  double b_tau = 0.25, b_eps = 0.2;
  bij_cmd->add_option("--modulus", b_modulus, "quotient size");
  bij_cmd->add_option("--tau", b_tau, "density parameter");
  bij_cmd->add_option("--eps", b_eps, "commutation defect target");
  bij_cmd->add_option("--f-radius", b_f_radius, "defect ball radius");
  bij_cmd->add_option("--trials", b_trials, "seeded trials");

  auto* det_cmd = app.add_subcommand("det", "Fuglede-Kadison determinant");
  std::string dt_ring = "2-t", dt_group = "Z", dt_moduli = "4..64";
  int dt_cap = 512;
  det_cmd->add_option("--ring", dt_ring, "group ring element, e.g. 2-t");
  det_cmd->add_option("--group", dt_group, "Z (lattice rank 1)");
  det_cmd->add_option("--moduli", dt_moduli, "quotient sizes");
  det_cmd->add_option("--exact-cap", dt_cap, "exact determinant dimension cap");

  auto* ly_cmd = app.add_subcommand("liyorke", "finite-radius Li-Yorke scan");
  std::string l_action = "fullshift:2", l_x = "const:0", l_y = "dyadic";
  int l_radius = 8;
  double l_a = 0.5, l_b = 0.0;
  ly_cmd->add_option("--action", l_action, "symbolic action");
  ly_cmd->add_option("--x", l_x, "point: const:<s>, dyadic, or file");
  ly_cmd->add_option("--y", l_y, "point: const:<s>, dyadic, or file");
  ly_cmd->add_option("--radius", l_radius, "scan radius");
  ly_cmd->add_option("--a", l_a, "separation threshold");
  ly_cmd->add_option("--b", l_b, "proximality threshold");

  auto* val_cmd = app.add_subcommand("validate", "replay a stored certificate");
  std::string v_input;
  val_cmd->add_option("--input", v_input, "certificate JSON")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (entropy_cmd->parsed())
      return run_entropy(e_action, e_levels, e_eps, e_delta, e_window,
                         e_budget, seed, e_metric, out_path, csv_path);
    if (density_cmd->parsed())
      return run_density(d_action, d_window, d_tuple, d_mode, out_path);
    if (indep_cmd->parsed())
      return run_indep(i_action, i_modulus, i_support, i_j, i_f_radius,
                       i_delta, i_tuple, i_sample, seed, out_path);
    if (km_cmd->parsed()) return run_km(k_input, k_k, k_mode, out_path);
    if (tile_cmd->parsed())
      return run_tile(t_group, t_moduli, t_shapes, t_tau, t_eta, out_path);
    if (bij_cmd->parsed())
      return run_bijection(b_modulus, b_tau, b_eps, b_f_radius, b_trials, seed,
                           out_path);
    if (det_cmd->parsed())
      return run_det(dt_ring, dt_moduli, dt_cap, jobs, out_path);
    if (ly_cmd->parsed())
      return run_liyorke(l_action, l_x, l_y, l_radius, l_a, l_b, out_path);
    if (val_cmd->parsed()) return run_validate(v_input);
  } catch (const BudgetExhausted& err) {
    std::cerr << "budget exhausted: " << err.what() << std::endl;
    return 3;
  } catch (const CLI::Error& err) {
    std::cerr << "config error: " << err.what() << std::endl;
    return 4;
  } catch (const Error& err) {
    std::cerr << "validation failure: " << err.what() << std::endl;
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "config error: " << err.what() << std::endl;
    return 4;
  }
  return 4;
}
