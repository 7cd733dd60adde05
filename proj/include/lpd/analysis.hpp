#pragma once

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "coset.hpp"
#include "error.hpp"
#include "group.hpp"
#include "incidence.hpp"
#include "io.hpp"
#include "structure.hpp"

namespace lpd
{

enum class CheckStatus
{
  Pass,
  Fail,
  NotApplicable,
  Unknown
};

inline char const *to_string(CheckStatus status)
{
  switch (status) {
  case CheckStatus::Pass: return "pass";
  case CheckStatus::Fail: return "fail";
  case CheckStatus::NotApplicable: return "not-applicable";
  case CheckStatus::Unknown: return "unknown";
  }
  return "unknown";
}

struct CheckResult
{
  CheckStatus status = CheckStatus::NotApplicable;
  std::string detail;
};

// Names used as keys in the report.
inline constexpr char const *check_names[] = {"lemma_2_2", "prop_2_3",  "lemma_3_3",
                                              "lemma_3_4", "lemma_5_1", "lemma_5_2",
                                              "lemma_6_1", "lemma_7_1"};

inline constexpr char const *non_quasiprimitive = "non-quasiprimitive";

struct TypeSummary
{
  std::string tag = "unknown"; // HA, AS, OTHER, non-quasiprimitive, unknown, intransitive
  std::optional<std::uint64_t> witness_order;
  std::vector<std::string> witness_generators;
  std::vector<std::uint64_t> minimal_normal_subgroup_orders;
};

enum class Verdict
{
  Pass,
  Fail,
  Unknown
};

struct AnalysisReport
{
  std::string instance_id;
  std::optional<DesignParameters> parameters;
  std::string design_error;
  std::optional<LocalPrimitivityReport> local_primitivity;
  TypeSummary point_type;
  TypeSummary block_type;
  std::map<std::string, CheckResult> lemma_checks;
  bool theorem_applicable = false;
  bool theorem_violation = false;
  std::map<std::string, double> timings_ms;

  Verdict verdict() const
  {
    if (!parameters || theorem_violation)
      return Verdict::Fail;
    bool unknown = point_type.tag == "unknown" && local_primitivity &&
                   local_primitivity->locally_primitive();
    if (block_type.tag == "unknown" && local_primitivity && local_primitivity->locally_primitive())
      unknown = true;
    for (auto const &[name, check] : lemma_checks) {
      if (check.status == CheckStatus::Fail)
        return Verdict::Fail;
      if (check.status == CheckStatus::Unknown)
        unknown = true;
    }
    return unknown ? Verdict::Unknown : Verdict::Pass;
  }
};

/// The point/block type pairs permitted for a locally primitive design:
/// (AS, quasiprimitive), (HA, HA) and (HA, non-quasiprimitive).
inline bool allowed_type_pair(std::string const &point, std::string const &block)
{
  if (point == "AS")
    return block != non_quasiprimitive && block != "unknown";
  if (point == "HA")
    return block == "HA" || block == non_quasiprimitive;
  return false;
}

namespace detail
{

inline TypeSummary summarize(TypeReport const &report)
{
  TypeSummary summary;
  summary.tag = to_string(report.tag);
  if (report.witness) {
    summary.witness_order = to_u64(report.witness->order());
    for (auto const &g : report.witness->generators())
      summary.witness_generators.push_back(g.to_string());
  }
  for (auto const &n : report.minimal_normal_subgroups)
    summary.minimal_normal_subgroup_orders.push_back(to_u64(n.order()));
  std::sort(summary.minimal_normal_subgroup_orders.begin(),
            summary.minimal_normal_subgroup_orders.end());
  return summary;
}

class Stopwatch
{
public:
  double lap()
  {
    auto now = std::chrono::steady_clock::now();
    double ms = std::chrono::duration<double, std::milli>(now - _start).count();
    _start = now;
    return ms;
  }

private:
  std::chrono::steady_clock::time_point _start = std::chrono::steady_clock::now();
};

template<typename F>
CheckResult guarded(F &&f)
{
  try {
    return f();
  } catch (Error const &e) {
    if (e.code() == ErrorCode::LimitExceeded)
      return {CheckStatus::Unknown, e.what()};
    throw;
  }
}

inline CheckResult pass_if(bool ok, std::string detail)
{ return {ok ? CheckStatus::Pass : CheckStatus::Fail, std::move(detail)}; }

// Distinct blocks of each cell are pairwise disjoint.
inline bool cells_disjoint(IncidenceStructure const &design,
                           std::vector<std::vector<Point>> const &cells)
{
  for (auto const &cell : cells) {
    std::vector<bool> seen(design.v(), false);
    for (Point j : cell)
      for (Point x : design.block(j)) {
        if (seen[x])
          return false;
        seen[x] = true;
      }
  }
  return true;
}

// For a regular abelian N: translation[x] is the element mapping 0 to x.
inline std::vector<Permutation> translations(PermGroup const &n)
{
  auto elements = n.elements(n.degree());
  std::vector<Permutation> result(n.degree(), Permutation::identity(n.degree()));
  for (auto const &t : elements)
    result[t[0]] = t;
  return result;
}

inline bool is_subgroup_block(Block const &block, std::vector<Permutation> const &translation)
{
  if (!std::binary_search(block.begin(), block.end(), Point{0}))
    return false;
  for (Point x : block)
    for (Point y : block)
      if (!std::binary_search(block.begin(), block.end(), translation[y][x]))
        return false;
  return true;
}

} // namespace detail

struct AnalyzeOptions
{
  Limits limits = default_limits();
  bool record_timings = false;
};

/// Full pipeline on one instance. Input errors (parse, preservation) throw;
/// resource limits turn the affected checks into "unknown".
inline AnalysisReport analyze(PermGroup const &group, IncidenceStructure const &design,
                              std::string instance_id = {},
                              AnalyzeOptions const &options = {})
{
  auto const &limits = options.limits;
  AnalysisReport report;
  report.instance_id = std::move(instance_id);
  for (auto const *name : check_names)
    report.lemma_checks[name] = {CheckStatus::NotApplicable, {}};
  detail::Stopwatch clock;
  auto lap = [&](char const *name) {
    double ms = clock.lap();
    if (options.record_timings)
      report.timings_ms[name] = ms;
  };

  DesignAction action(group, design);
  lap("preservation");

  try {
    report.parameters = verify_design(design);
  } catch (Error const &e) {
    if (e.code() == ErrorCode::Internal)
      throw;
    report.design_error = e.what();
  }
  lap("verify");

  auto lp = is_locally_primitive(action, limits);
  report.local_primitivity = lp;
  lap("local_primitivity");
  if (!report.parameters)
    return report;
  auto const &params = *report.parameters;

  // types
  std::optional<TypeReport> point_report;
  if (!action.point_transitive()) {
    report.point_type.tag = "intransitive";
  } else {
    try {
      point_report = classify_point_action(group, limits);
      report.point_type = detail::summarize(*point_report);
    } catch (Error const &e) {
      if (e.code() != ErrorCode::LimitExceeded)
        throw;
    }
  }

  PermGroup const &blocks = action.block_action().image;
  std::optional<PermGroup> intransitive_normal;
  if (!action.block_transitive()) {
    report.block_type.tag = "intransitive";
  } else {
    try {
      auto qp = quasiprimitivity(blocks, limits);
      if (!qp.quasiprimitive) {
        report.block_type.tag = non_quasiprimitive;
        intransitive_normal = qp.intransitive_normal;
      } else {
        report.block_type = detail::summarize(classify_point_action(blocks, limits));
      }
    } catch (Error const &e) {
      if (e.code() != ErrorCode::LimitExceeded)
        throw;
    }
  }
  lap("types");

  bool locally_primitive = lp.locally_primitive();
  if (locally_primitive) {
    report.theorem_applicable = true;
    bool known = report.point_type.tag != "unknown" && report.block_type.tag != "unknown";
    report.theorem_violation =
      known && !allowed_type_pair(report.point_type.tag, report.block_type.tag);
  }

  auto &checks = report.lemma_checks;

  if (lp.flag_transitive) {
    checks["lemma_2_2"] = detail::guarded([&] {
      PermGroup left = group.stabilizer(0);
      std::size_t beta = design.blocks_through(0).front();
      PermGroup right = action.on_points(action.block_stabilizer(beta));
      auto cross = crosscheck_double_cosets(group, left, right,
                                            CrosscheckMode::CosetRepresentatives, 0, 1, limits);
      auto built = coset_graph_design(group, left, right, limits);
      auto coset_params = verify_design(built.design);
      bool ok = cross.passed() && cross.lambda == params.lambda && coset_params == params;
      return detail::pass_if(ok, "|RL cap RLg|/|R| = " +
                                   (cross.lambda ? std::to_string(*cross.lambda)
                                                 : std::string("non-constant")) +
                                   " over " + std::to_string(cross.checked) + " cosets");
    });
    lap("lemma_2_2");
  }

  checks["prop_2_3"] = detail::guarded([&] {
    std::size_t diameter = incidence_graph_diameter(design);
    bool ok = diameter <= 4 && (!params.symmetric || diameter == 3);
    return detail::pass_if(ok, "diameter " + std::to_string(diameter));
  });

  if (lp.flag_transitive && lp.stabilizer_bound_ok) {
    Point alpha = 0;
    std::size_t beta = design.blocks_through(alpha).front();
    BigInt g = group.order();
    BigInt ga = action.point_stabilizer(alpha).order();
    BigInt gab = action.flag_stabilizer(alpha, beta).order();
    checks["lemma_3_3"] = detail::pass_if(
      *lp.stabilizer_bound_ok,
      "|G| = " + g.str() + ", |G_a|^3/|G_ab|^2 = " + BigInt(ga * ga * ga).str() + "/" +
        BigInt(gab * gab).str());
  }

  checks["lemma_3_4"] = detail::pass_if(action.block_action().faithful,
                                        "|G| = " + group.order().str() + ", |G^B| = " +
                                          blocks.order().str());

  if (locally_primitive)
    checks["lemma_5_1"] = detail::pass_if(lp.flag_transitive && lp.point_primitive,
                                          std::string("flag-transitive ") +
                                            (lp.flag_transitive ? "yes" : "no") +
                                            ", point-primitive " +
                                            (lp.point_primitive ? "yes" : "no"));
  lap("basic_checks");

  // N: the HA witness when the point type is HA, else the intransitive
  // normal subgroup found by the quasiprimitivity test.
  std::optional<std::vector<std::vector<Point>>> n_orbits;
  if (locally_primitive && report.block_type.tag == non_quasiprimitive) {
    if (point_report && point_report->tag == ActionType::HA && point_report->witness) {
      DesignAction n_action(*point_report->witness, design);
      n_orbits = n_action.block_action().image.orbits();
    } else if (intransitive_normal) {
      n_orbits = intransitive_normal->orbits();
    }
  }

  if (locally_primitive && action.block_transitive() && !is_primitive(blocks)) {
    checks["lemma_5_2"] = detail::guarded([&] {
      std::set<std::vector<std::vector<Point>>> systems;
      for (Point x = 1; x < blocks.degree(); ++x) {
        auto system = minimal_block_system(blocks, 0, x);
        if (!system.is_trivial(blocks.degree()))
          systems.insert(system.cells);
      }
      if (n_orbits && n_orbits->size() > 1 && n_orbits->front().size() > 1)
        systems.insert(*n_orbits);
      bool ok = !systems.empty();
      for (auto const &cells : systems)
        ok = ok && detail::cells_disjoint(design, cells);
      return detail::pass_if(ok, std::to_string(systems.size()) + " block systems checked");
    });
  }

  if (n_orbits) {
    bool ok = params.v * params.r == params.b * params.k && params.v % params.k == 0;
    std::uint64_t expected = params.v / params.k;
    std::set<std::size_t> sizes;
    for (auto const &orbit : *n_orbits)
      sizes.insert(orbit.size());
    ok = ok && sizes.size() == 1 && *sizes.begin() == expected;
    std::string seen;
    for (auto s : sizes)
      seen += (seen.empty() ? "" : ",") + std::to_string(s);
    checks["lemma_6_1"] = detail::pass_if(ok, "orbit size " + seen + ", v/k = " +
                                                std::to_string(expected));
  }

  if (locally_primitive && report.block_type.tag == non_quasiprimitive && point_report &&
      point_report->tag == ActionType::HA && point_report->witness) {
    auto translation = detail::translations(*point_report->witness);
    bool ok = true;
    for (Point j : design.blocks_through(0))
      ok = ok && detail::is_subgroup_block(design.block(j), translation);
    // every block, moved to contain 0, is a subgroup
    for (auto const &block : design.blocks()) {
      Permutation back = translation[block.front()].inverse();
      Block moved;
      for (Point x : block)
        moved.push_back(back[x]);
      std::sort(moved.begin(), moved.end());
      ok = ok && detail::is_subgroup_block(moved, translation);
    }
    checks["lemma_7_1"] = detail::pass_if(
      ok, std::to_string(design.blocks_through(0).size()) +
            " blocks through 0 checked as subspaces; all blocks are translates");
  }
  lap("structural_checks");
  return report;
}

inline nlohmann::ordered_json to_json(TypeSummary const &summary)
{
  nlohmann::ordered_json j;
  j["tag"] = summary.tag;
  if (summary.witness_order)
    j["witness_order"] = *summary.witness_order;
  else
    j["witness_order"] = nullptr;
  j["witness_generators"] = summary.witness_generators;
  j["minimal_normal_subgroup_orders"] = summary.minimal_normal_subgroup_orders;
  return j;
}

inline nlohmann::ordered_json to_json(DesignParameters const &p)
{
  return {{"v", p.v},           {"b", p.b},         {"r", p.r},
          {"k", p.k},           {"lambda", p.lambda}, {"symmetric", p.symmetric}};
}

inline nlohmann::ordered_json to_json(LocalPrimitivityReport const &lp)
{
  nlohmann::ordered_json j;
  j["trivial_design"] = lp.trivial_design;
  j["point_transitive"] = lp.point_transitive;
  j["block_transitive"] = lp.block_transitive;
  j["flag_transitive"] = lp.flag_transitive;
  j["point_local_primitive"] = lp.point_local_primitive;
  j["block_local_primitive"] = lp.block_local_primitive;
  j["locally_primitive"] = lp.locally_primitive();
  j["point_primitive"] = lp.point_primitive;
  j["block_quasiprimitive"] = lp.block_quasiprimitive ? nlohmann::ordered_json(*lp.block_quasiprimitive)
                                                      : nlohmann::ordered_json(nullptr);
  j["stabilizer_bound_ok"] = lp.stabilizer_bound_ok ? nlohmann::ordered_json(*lp.stabilizer_bound_ok)
                                                    : nlohmann::ordered_json(nullptr);
  j["reason"] = lp.reason;
  return j;
}

inline char const *to_string(Verdict verdict)
{
  switch (verdict) {
  case Verdict::Pass: return "pass";
  case Verdict::Fail: return "fail";
  case Verdict::Unknown: return "unknown";
  }
  return "unknown";
}

inline nlohmann::ordered_json to_json(AnalysisReport const &report)
{
  nlohmann::ordered_json j;
  j["instance_id"] = report.instance_id;
  j["parameters"] = report.parameters ? to_json(*report.parameters) : nlohmann::ordered_json(nullptr);
  if (!report.design_error.empty())
    j["design_error"] = report.design_error;
  j["local_primitivity"] = report.local_primitivity ? to_json(*report.local_primitivity)
                                                    : nlohmann::ordered_json(nullptr);
  j["point_type"] = to_json(report.point_type);
  j["block_type"] = to_json(report.block_type);
  nlohmann::ordered_json checks;
  for (auto const *name : check_names) {
    auto const &c = report.lemma_checks.at(name);
    checks[name] = {{"status", to_string(c.status)}, {"detail", c.detail}};
  }
  j["lemma_checks"] = checks;
  j["theorem_1_2"] = {{"applicable", report.theorem_applicable},
                      {"pair", {report.point_type.tag, report.block_type.tag}},
                      {"violation", report.theorem_violation}};
  j["verdict"] = to_string(report.verdict());
  if (!report.timings_ms.empty())
    j["timings_ms"] = report.timings_ms;
  return j;
}

/// Exit codes shared by the command line tools.
enum ExitCode : int
{
  exit_pass = 0,
  exit_failure = 1,
  exit_input_error = 2,
  exit_unknown = 3
};

inline int exit_code(Verdict verdict)
{
  switch (verdict) {
  case Verdict::Pass: return exit_pass;
  case Verdict::Fail: return exit_failure;
  case Verdict::Unknown: return exit_unknown;
  }
  return exit_failure;
}

struct CensusEntry
{
  std::string name;
  std::optional<AnalysisReport> report;
  std::string error; // set when the instance could not be analyzed
};

struct CensusResult
{
  std::vector<CensusEntry> entries;
  // (point type, block type) -> count, over locally primitive instances
  std::map<std::pair<std::string, std::string>, std::size_t> table;
  std::size_t violations = 0;
  std::size_t failures = 0;
  std::size_t unknown = 0;
  std::size_t errors = 0;

  int exit_code() const
  {
    if (violations || failures)
      return exit_failure;
    if (errors)
      return exit_input_error;
    if (unknown)
      return exit_unknown;
    return exit_pass;
  }
};

/// Analyzes every NAME.group / NAME.design pair in a directory, in name
/// order. A file without its partner, or one that fails to load, is reported
/// as an errored instance; the others are still analyzed.
inline CensusResult census(std::filesystem::path const &directory,
                           AnalyzeOptions const &options = {})
{
  namespace fs = std::filesystem;
  ensure(fs::is_directory(directory), ErrorCode::Parse,
         "not a directory: " + directory.string());

  std::set<std::string> names;
  for (auto const &entry : fs::directory_iterator(directory)) {
    auto ext = entry.path().extension();
    if (entry.is_regular_file() && (ext == ".group" || ext == ".design"))
      names.insert(entry.path().stem().string());
  }

  CensusResult result;
  for (auto const &name : names) {
    CensusEntry entry{name, std::nullopt, {}};
    try {
      auto group_path = directory / (name + ".group");
      auto design_path = directory / (name + ".design");
      ensure(fs::exists(group_path), ErrorCode::Parse, "missing " + group_path.string());
      ensure(fs::exists(design_path), ErrorCode::Parse, "missing " + design_path.string());
      auto group = load_group(group_path.string());
      auto design = read_design_file(design_path.string());
      entry.report = analyze(group, design, name, options);
    } catch (Error const &e) {
      entry.error = e.what();
    }

    if (!entry.report) {
      ++result.errors;
    } else {
      auto const &r = *entry.report;
      if (r.theorem_violation)
        ++result.violations;
      switch (r.verdict()) {
      case Verdict::Pass: break;
      case Verdict::Fail: ++result.failures; break;
      case Verdict::Unknown: ++result.unknown; break;
      }
      if (r.theorem_applicable)
        ++result.table[{r.point_type.tag, r.block_type.tag}];
    }
    result.entries.push_back(std::move(entry));
  }
  return result;
}

inline nlohmann::ordered_json to_json(CensusResult const &census)
{
  nlohmann::ordered_json j;
  nlohmann::ordered_json instances = nlohmann::ordered_json::array();
  for (auto const &e : census.entries) {
    if (e.report)
      instances.push_back(to_json(*e.report));
    else
      instances.push_back({{"instance_id", e.name}, {"error", e.error}});
  }
  j["instances"] = instances;
  nlohmann::ordered_json table = nlohmann::ordered_json::array();
  for (auto const &[pair, count] : census.table)
    table.push_back({{"point_type", pair.first}, {"block_type", pair.second}, {"count", count}});
  j["table"] = table;
  j["violations"] = census.violations;
  j["failures"] = census.failures;
  j["unknown"] = census.unknown;
  j["errors"] = census.errors;
  return j;
}

} // namespace lpd
