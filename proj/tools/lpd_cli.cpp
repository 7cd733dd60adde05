// Command line front end: build, coset, verify, analyze, crosscheck, census.

#include <cstdio>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "lpd/lpd.hpp"

namespace
{

using json = nlohmann::ordered_json;

void emit(std::string const &text, std::string const &path)
{
  if (path.empty() || path == "-")
    std::cout << text;
  else
    lpd::write_text(path, text);
}

int run_build(std::string const &kind, std::vector<std::size_t> const &params,
              std::string const &prefix)
{
  lpd::BuiltDesign built = [&] {
    if (kind == "pg") {
      lpd::ensure(params.size() == 3, lpd::ErrorCode::InvalidArgument,
                  "build pg needs: d q i");
      return lpd::build_pg(params[0], static_cast<std::uint32_t>(params[1]), params[2]);
    }
    if (kind == "ag") {
      lpd::ensure(params.size() == 3, lpd::ErrorCode::InvalidArgument,
                  "build ag needs: d q i");
      return lpd::build_ag(params[0], static_cast<std::uint32_t>(params[1]), params[2]);
    }
    if (kind == "symplectic") {
      lpd::ensure(params.size() == 2, lpd::ErrorCode::InvalidArgument,
                  "build symplectic needs: m q");
      return lpd::build_symplectic_subdesign(params[0], static_cast<std::uint32_t>(params[1]));
    }
    lpd::fail(lpd::ErrorCode::InvalidArgument, "unknown geometry " + kind);
  }();

  auto params_text = lpd::verify_design(built.design);
  std::string comment = built.name + ": 2-(" + std::to_string(params_text.v) + "," +
                        std::to_string(params_text.k) + "," +
                        std::to_string(params_text.lambda) + "), group order " +
                        built.group.order().str();
  if (prefix.empty()) {
    std::cout << lpd::format_design(built.design, comment) << '\n'
              << lpd::format_group(built.group, comment);
  } else {
    lpd::write_text(prefix + ".design", lpd::format_design(built.design, comment));
    lpd::write_text(prefix + ".group", lpd::format_group(built.group, comment));
    std::cerr << comment << '\n';
  }
  return lpd::exit_pass;
}

lpd::PermGroup subgroup_from_file(std::string const &path, std::size_t degree)
{
  auto file = lpd::read_group_file(path);
  lpd::ensure(file.degree == degree, lpd::ErrorCode::DegreeMismatch,
              path + " has degree " + std::to_string(file.degree) + ", expected " +
                std::to_string(degree));
  return lpd::PermGroup(file.generators);
}

int run_coset(std::string const &group_path, std::string const &left_path,
              std::string const &right_path, std::string const &out)
{
  auto group = lpd::load_group(group_path);
  auto left = subgroup_from_file(left_path, group.degree());
  auto right = subgroup_from_file(right_path, group.degree());
  auto built = lpd::coset_graph_design(group, left, right);
  auto cross = lpd::crosscheck_double_cosets(group, left, right);

  emit(lpd::format_design(built.design), out);
  json record;
  record["index_L"] = built.index_left;
  record["index_R"] = built.index_right;
  record["lambda_constant"] = cross.constant;
  record["lambda"] = cross.lambda ? json(*cross.lambda) : json(nullptr);
  record["trivial_factorization"] = lpd::is_trivial_factorization(group, left, right);
  record["faithful"] = built.faithful;
  (out.empty() || out == "-" ? std::cerr : std::cout) << record.dump(2) << '\n';
  return lpd::exit_pass;
}

int run_verify(std::string const &design_path)
{
  auto design = lpd::read_design_file(design_path);
  try {
    auto params = lpd::verify_design(design);
    json j = lpd::to_json(params);
    j["t_max"] = lpd::t_design_strength(design, 1000000).t_max;
    std::cout << j.dump(2) << '\n';
    return lpd::exit_pass;
  } catch (lpd::Error const &e) {
    if (e.code() == lpd::ErrorCode::Internal || e.code() == lpd::ErrorCode::LimitExceeded)
      throw;
    std::cout << json{{"design", false}, {"reason", e.what()}}.dump(2) << '\n';
    return lpd::exit_failure;
  }
}

int run_analyze(std::string const &group_path, std::string const &design_path,
                std::string const &json_out, bool timings)
{
  auto group = lpd::load_group(group_path);
  auto design = lpd::read_design_file(design_path);
  lpd::AnalyzeOptions options;
  options.record_timings = timings;
  auto report = lpd::analyze(group, design, std::filesystem::path(design_path).stem().string(),
                             options);

  if (!json_out.empty()) {
    emit(lpd::to_json(report).dump(2) + "\n", json_out);
    if (json_out == "-")
      return lpd::exit_code(report.verdict());
  }

  std::cout << "instance " << report.instance_id << '\n';
  if (report.parameters) {
    auto const &p = *report.parameters;
    std::cout << "  design     2-(" << p.v << "," << p.k << "," << p.lambda << ") b=" << p.b
              << " r=" << p.r << (p.symmetric ? " symmetric" : "") << '\n';
  } else {
    std::cout << "  design     not a 2-design: " << report.design_error << '\n';
  }
  if (report.local_primitivity)
    std::cout << "  locally primitive "
              << (report.local_primitivity->locally_primitive() ? "yes" : "no") << '\n';
  std::cout << "  types      (" << report.point_type.tag << ", " << report.block_type.tag
            << ")\n";
  for (auto const *name : lpd::check_names) {
    auto const &c = report.lemma_checks.at(name);
    std::cout << "  " << std::left << std::setw(10) << name << " " << std::setw(15)
              << lpd::to_string(c.status) << c.detail << '\n';
  }
  if (report.theorem_violation)
    std::cout << "  THEOREM VIOLATION: type pair (" << report.point_type.tag << ", "
              << report.block_type.tag << ") is not permitted\n";
  std::cout << "  verdict    " << lpd::to_string(report.verdict()) << '\n';
  return lpd::exit_code(report.verdict());
}

int run_crosscheck(std::string const &group_path, std::string const &left_path,
                   std::string const &right_path, bool exhaustive, std::size_t samples,
                   std::uint64_t seed)
{
  auto group = lpd::load_group(group_path);
  auto left = subgroup_from_file(left_path, group.degree());
  auto right = subgroup_from_file(right_path, group.degree());
  auto mode = exhaustive ? lpd::CrosscheckMode::Exhaustive : lpd::CrosscheckMode::Auto;
  auto result = lpd::crosscheck_double_cosets(group, left, right, mode, samples, seed);

  bool design_ok = true;
  std::string reason;
  try {
    lpd::verify_design(lpd::coset_graph_design(group, left, right).design);
  } catch (lpd::Error const &e) {
    if (e.code() == lpd::ErrorCode::Internal || e.code() == lpd::ErrorCode::LimitExceeded)
      throw;
    design_ok = false;
    reason = e.what();
  }

  json j;
  j["constant"] = result.constant;
  j["lambda"] = result.lambda ? json(*result.lambda) : json(nullptr);
  j["ratios"] = result.ratios;
  j["graph_agrees"] = result.graph_agrees;
  j["checked"] = result.checked;
  j["exhaustive"] = result.exhaustive;
  j["design_verified"] = design_ok;
  if (!design_ok)
    j["design_error"] = reason;
  j["consistent"] = result.passed() == design_ok;
  std::cout << j.dump(2) << '\n';
  if (result.passed() != design_ok)
    return lpd::exit_failure;
  return result.passed() ? lpd::exit_pass : lpd::exit_failure;
}

int run_census(std::string const &dir, std::string const &json_out)
{
  auto result = lpd::census(dir);
  if (!json_out.empty())
    emit(lpd::to_json(result).dump(2) + "\n", json_out);

  std::cout << std::left << std::setw(28) << "instance" << std::setw(16) << "parameters"
            << std::setw(8) << "loc.pr" << std::setw(8) << "point" << std::setw(20) << "block"
            << "verdict\n";
  for (auto const &e : result.entries) {
    std::cout << std::setw(28) << e.name;
    if (!e.report) {
      std::cout << "ERROR " << e.error << '\n';
      continue;
    }
    auto const &r = *e.report;
    std::string params = "-";
    if (r.parameters)
      params = std::to_string(r.parameters->v) + "," + std::to_string(r.parameters->k) + "," +
               std::to_string(r.parameters->lambda);
    bool lp = r.local_primitivity && r.local_primitivity->locally_primitive();
    std::cout << std::setw(16) << params << std::setw(8) << (lp ? "yes" : "no") << std::setw(8)
              << r.point_type.tag << std::setw(20) << r.block_type.tag
              << lpd::to_string(r.verdict())
              << (r.theorem_violation ? "  THEOREM VIOLATION" : "") << '\n';
  }
  std::cout << "\ntype pairs of locally primitive instances:\n";
  if (result.table.empty())
    std::cout << "  (none)\n";
  for (auto const &[pair, count] : result.table)
    std::cout << "  (" << pair.first << ", " << pair.second << "): " << count << '\n';
  std::cout << "violations " << result.violations << ", failures " << result.failures
            << ", unknown " << result.unknown << ", errors " << result.errors << '\n';
  return result.exit_code();
}

} // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Permutation-group designs: construction and local primitivity checks"};
  app.require_subcommand(1);
  app.footer("Set LPD_ENUM_LIMIT to change the element enumeration limit.\n"
             "Exit codes: 0 pass, 1 check failure, 2 input error, 3 resource limit.");

  auto *build = app.add_subcommand("build", "Build a classical design and its group");
  std::string kind, prefix;
  std::vector<std::size_t> params;
  build->add_option("kind", kind, "pg | ag | symplectic")->required()
    ->check(CLI::IsMember({"pg", "ag", "symplectic"}));
  build->add_option("params", params, "pg/ag: d q i; symplectic: m q")->required();
  build->add_option("-o,--out", prefix, "write PREFIX.design and PREFIX.group");

  auto *coset = app.add_subcommand("coset", "Coset graph design Cos(G, L, R)");
  std::string group_path, left_path, right_path, out;
  coset->add_option("group", group_path)->required()->check(CLI::ExistingFile);
  coset->add_option("left", left_path, "generators of L (group file format)")
    ->required()->check(CLI::ExistingFile);
  coset->add_option("right", right_path, "generators of R (group file format)")
    ->required()->check(CLI::ExistingFile);
  coset->add_option("-o,--out", out, "design output file");

  auto *verify = app.add_subcommand("verify", "Verify a 2-design");
  std::string design_path;
  verify->add_option("design", design_path)->required()->check(CLI::ExistingFile);

  auto *analyze = app.add_subcommand("analyze", "Full analysis of a group acting on a design");
  std::string json_out;
  bool timings = false;
  analyze->add_option("group", group_path)->required()->check(CLI::ExistingFile);
  analyze->add_option("design", design_path)->required()->check(CLI::ExistingFile);
  analyze->add_option("--json", json_out, "write the JSON report (- for stdout)");
  analyze->add_flag("--timings", timings, "include timings in the JSON report");

  auto *crosscheck = app.add_subcommand("crosscheck", "Double coset count crosscheck");
  bool exhaustive = false;
  std::size_t samples = 50;
  std::uint64_t seed = 1;
  crosscheck->add_option("group", group_path)->required()->check(CLI::ExistingFile);
  crosscheck->add_option("left", left_path)->required()->check(CLI::ExistingFile);
  crosscheck->add_option("right", right_path)->required()->check(CLI::ExistingFile);
  crosscheck->add_flag("--exhaustive", exhaustive, "check every g outside L");
  crosscheck->add_option("--samples", samples, "sample count when not exhaustive");
  crosscheck->add_option("--seed", seed);

  auto *census = app.add_subcommand("census", "Analyze every instance in a directory");
  std::string dir;
  census->add_option("dir", dir)->required()->check(CLI::ExistingDirectory);
  census->add_option("--json", json_out, "write the JSON census report (- for stdout)");

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : lpd::exit_input_error;
  }

  try {
    if (*build)
      return run_build(kind, params, prefix);
    if (*coset)
      return run_coset(group_path, left_path, right_path, out);
    if (*verify)
      return run_verify(design_path);
    if (*analyze)
      return run_analyze(group_path, design_path, json_out, timings);
    if (*crosscheck)
      return run_crosscheck(group_path, left_path, right_path, exhaustive, samples, seed);
    if (*census)
      return run_census(dir, json_out);
  } catch (lpd::Error const &e) {
    std::cerr << "error: " << e.what() << '\n';
    if (e.code() == lpd::ErrorCode::LimitExceeded)
      return lpd::exit_unknown;
    if (e.code() == lpd::ErrorCode::Internal)
      return lpd::exit_failure;
    return lpd::exit_input_error;
  }
  return lpd::exit_input_error;
}
