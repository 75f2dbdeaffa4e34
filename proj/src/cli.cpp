#include "mdc/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "mdc/capacity.hpp"
#include "mdc/codes.hpp"
#include "mdc/combnet.hpp"
#include "mdc/error.hpp"
#include "mdc/oracle.hpp"
#include "mdc/simulate.hpp"

namespace mdc {

namespace {

using nlohmann::json;

// Bad command-line values, as opposed to bad configuration contents.
struct FlagError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Parse, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

PatternSet parse_group(const json& doc, const char* key, int num_paths) {
  PatternSet set;
  if (!doc.contains(key)) return set;
  const json& arr = doc.at(key);
  if (!arr.is_array())
    throw Error(ErrorKind::Parse, std::string(key) + " must be an array");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string where = std::string(key) + "[" + std::to_string(i) + "]";
    if (!arr[i].is_string())
      throw Error(ErrorKind::Parse, where + " must be a pattern string");
    const std::string text = arr[i].get<std::string>();
    if (static_cast<int>(text.size()) != num_paths)
      throw Error(ErrorKind::Parse, where + ": pattern '" + text + "' has " +
                                        std::to_string(text.size()) +
                                        " characters, expected " +
                                        std::to_string(num_paths));
    try {
      if (!set.insert(BlockagePattern::parse(text)).second)
        throw Error(ErrorKind::Parse, where + ": duplicate pattern '" + text + "'");
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Parse) throw;
      const std::string msg = e.what();
      throw Error(ErrorKind::Parse,
                  msg.rfind(where, 0) == 0 ? msg : where + ": " + msg);
    }
  }
  return set;
}

Rational capacity_of(const NetworkConfig& cfg) {
  return rational_from_double(cfg.capacity);
}

std::string absolute(const Rational& normalized, const NetworkConfig& cfg) {
  return to_decimal_string(normalized * capacity_of(cfg));
}

json region_json(const RateRegion& reg, const NetworkConfig& cfg) {
  json ineqs = json::array();
  for (const auto& q : reg.inequalities)
    ineqs.push_back({{"a1", to_decimal_string(q.a1)},
                     {"a2", to_decimal_string(q.a2)},
                     {"bound", absolute(q.bound, cfg)},
                     {"text", format_inequality(q, cfg.capacity)}});
  json corners = json::array();
  for (const auto& c : reg.corner_points)
    corners.push_back({{"r1", absolute(c.r1, cfg)}, {"r2", absolute(c.r2, cfg)}});
  std::string text;
  for (const auto& q : ineqs) {
    if (!text.empty()) text += ", ";
    text += q.at("text").get<std::string>();
  }
  return {{"exactness", to_string(reg.exactness)},
          {"inequalities", ineqs},
          {"text", text},
          {"corner_points", corners}};
}

json pattern_list(const PatternSet& set) {
  json arr = json::array();
  for (const auto& b : set) arr.push_back(b.to_string());
  return arr;
}

json report_json(const GroupingReport& r) {
  json j = {{"a1_holds", r.a1_holds},
            {"a2_holds", r.a2_holds},
            {"rule_111_holds", r.rule_111_holds},
            {"violations", r.violations}};
  j["kappa1"] = r.kappa1 ? json(*r.kappa1) : json(nullptr);
  j["kappa2"] = r.kappa2 ? json(*r.kappa2) : json(nullptr);
  j["bstar1"] = r.bstar1 ? json(r.bstar1->to_string()) : json(nullptr);
  j["bstar2"] = r.bstar2 ? json(r.bstar2->to_string()) : json(nullptr);
  return j;
}

Rate parse_rate_pair(const std::string& text, const NetworkConfig& cfg) {
  const auto comma = text.find(',');
  if (comma == std::string::npos)
    throw FlagError("target must be 'r1,r2', got '" + text + "'");
  try {
    const Rational c = capacity_of(cfg);
    Rate r{parse_rational(text.substr(0, comma)) / c,
           parse_rational(text.substr(comma + 1)) / c};
    if (r.r1 < 0 || r.r2 < 0) throw FlagError("target rates must be nonnegative");
    return r;
  } catch (const Error& e) {
    throw FlagError(e.what());
  }
}

void write_analyze_text(std::ostream& out, const json& j) {
  const auto& rep = j.at("grouping_report");
  out << "case: " << j.at("case").get<std::string>() << "\n";
  out << "kappa1: " << rep.at("kappa1").dump()
      << "  kappa2: " << rep.at("kappa2").dump() << "\n";
  if (!j.at("c1").is_null()) {
    out << "C1: " << (j.at("c1").at("holds").get<bool>() ? "holds" : "fails");
    if (j.at("c1").at("holds").get<bool>())
      out << " (witness " << j.at("c1").at("witness").dump() << ")";
    out << "\n";
  }
  out << "region (" << j.at("region").at("exactness").get<std::string>()
      << "): " << j.at("region").at("text").get<std::string>() << "\n";
  out << "corner points:";
  for (const auto& c : j.at("region").at("corner_points"))
    out << " (" << c.at("r1").get<std::string>() << ", "
        << c.at("r2").get<std::string>() << ")";
  out << "\n";
  out << "P(U1) = " << j.at("p_u1").get<double>() << "\n";
  out << "P(U2) = " << j.at("p_u2").get<double>() << "\n";
}

int cmd_analyze(const InstanceConfig& inst, bool pretty, std::ostream& out,
                std::ostream& err) {
  const auto& g = inst.grouping;
  const auto& cfg = inst.network;
  if (g.empty())
    throw Error(ErrorKind::DegenerateInstance, "both groups are empty");
  const GroupingReport report = validate_grouping(g);
  json j;
  j["num_paths"] = cfg.num_paths;
  j["capacity"] = cfg.capacity;
  j["group1"] = pattern_list(g.g1());
  j["group2"] = pattern_list(g.g2());
  j["grouping_report"] = report_json(report);
  if (!report.conforming()) {
    out << j.dump(2) << "\n";
    for (const auto& v : report.violations) err << "violation: " << v << "\n";
    return exit_code::kConfig;
  }
  if (g.g2().empty()) {
    j["c1"] = nullptr;
  } else {
    const auto c1 = check_c1(g);
    j["c1"] = {{"holds", c1.holds},
               {"witness", c1.witness ? pattern_list(*c1.witness) : json(nullptr)}};
  }
  const RateRegion reg = region(g, cfg);
  j["case"] = to_string(reg.case_label);
  j["region"] = region_json(reg, cfg);
  j["p_u1"] = decode_probability(g, cfg, 1);
  j["p_u2"] = decode_probability(g, cfg, 2);
  if (pretty)
    write_analyze_text(out, j);
  else
    out << j.dump(2) << "\n";
  return exit_code::kOk;
}

int cmd_region(const InstanceConfig& inst, const std::string& step_text,
               std::ostream& out) {
  Rational step;
  try {
    step = parse_rational(step_text);
  } catch (const Error& e) {
    throw FlagError(e.what());
  }
  if (step <= 0) throw FlagError("--grid-step must be positive");
  const auto& cfg = inst.network;
  const RateRegion reg = region(inst.grouping, cfg);
  const RateRegion outer = cutset_outer_bound(inst.grouping, cfg);
  const Rational c = capacity_of(cfg);
  Rational max1 = 0, max2 = 0;
  for (const auto& p : outer.corner_points) {
    max1 = std::max(max1, p.r1 * c);
    max2 = std::max(max2, p.r2 * c);
  }
  if ((max1 / step) > 10000 || (max2 / step) > 10000)
    throw FlagError("--grid-step too small for this region");
  out << "r1,r2,inside,kind\n";
  for (Rational r1 = 0; r1 <= max1; r1 += step)
    for (Rational r2 = 0; r2 <= max2; r2 += step)
      out << to_decimal_string(r1) << "," << to_decimal_string(r2) << ","
          << (contains(reg, Rate{r1 / c, r2 / c}) ? 1 : 0) << ",grid\n";
  for (const auto& p : reg.corner_points)
    out << absolute(p.r1, cfg) << "," << absolute(p.r2, cfg) << ",1,corner\n";
  return exit_code::kOk;
}

int cmd_scheme(const InstanceConfig& inst, const std::string& target_text,
               std::ostream& out) {
  const Rate target = parse_rate_pair(target_text, inst.network);
  const CodingScheme s = build_scheme(inst.grouping, inst.network, target);
  out << to_json(s).dump(2) << "\n";
  return exit_code::kOk;
}

int cmd_simulate(const InstanceConfig& inst, const std::string& scheme_path,
                 std::int64_t trials, std::uint64_t seed, std::ostream& out) {
  if (trials <= 0) throw FlagError("--trials must be positive");
  json doc;
  try {
    doc = json::parse(read_file(scheme_path));
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Parse, "scheme file: " + std::string(e.what()));
  }
  const CodingScheme s = scheme_from_json(doc);
  const auto& g = inst.grouping;
  const auto& cfg = inst.network;
  const auto result =
      run_monte_carlo(s, g, cfg, static_cast<std::uint64_t>(trials), seed);
  const auto chi = pattern_chi_square(result, cfg);
  json j = {{"result", to_json(result)},
            {"comparison", to_json(compare_with_analytic(result, g, cfg))},
            {"chi_square",
             {{"statistic", chi.statistic},
              {"degrees_of_freedom", chi.degrees_of_freedom},
              {"p_value", chi.p_value}}}};
  out << j.dump(2) << "\n";
  return exit_code::kOk;
}

int cmd_verify(const InstanceConfig& inst, int max_n, int field,
               std::uint64_t seed, std::uint64_t budget,
               const std::string& format, std::ostream& out,
               std::ostream& err) {
  if (max_n < 1) throw FlagError("--max-n must be >= 1");
  if (field != 0 && field != 2 && field != 3 && field != 4 && field != 256)
    throw FlagError("--field must be 0 (auto), 2, 3, 4 or 256");
  if (format != "json" && format != "csv")
    throw FlagError("--format must be json or csv");
  const auto& g = inst.grouping;
  const auto& cfg = inst.network;
  if (g.empty()) throw Error(ErrorKind::DegenerateInstance, "both groups are empty");
  const RateRegion reg = region(g, cfg);
  SweepOptions opts;
  opts.field_order = field;
  opts.seed = seed;
  opts.budget = budget;
  const bool warn = max_n > opts.exhaustive_max_n;
  if (warn)
    err << "warning: block lengths above " << opts.exhaustive_max_n
        << " use randomized search only\n";
  const auto grid = sweep_rate_grid(g, cfg, max_n, opts);
  const bool exact = reg.exactness == Exactness::ExactClosedForm;
  int disagreements = 0;
  int fallbacks = 0;
  json points = json::array();
  std::ostringstream csv;
  csv << "r1,r2,in_region,achievable,search_exhausted,mode,block_length,"
         "field_order\n";
  for (const auto& gv : grid) {
    const bool inside = contains(reg, gv.rate);
    const auto& v = gv.verdict;
    fallbacks += v.fallback_warning;
    // Only a proof of non-achievability can contradict membership.
    if (exact && ((v.achievable && !inside) ||
                  (!v.achievable && inside && v.search_exhausted)))
      ++disagreements;
    json p = to_json(v);
    p.erase("scheme");
    p["r1"] = absolute(gv.rate.r1, cfg);
    p["r2"] = absolute(gv.rate.r2, cfg);
    p["in_region"] = inside;
    points.push_back(std::move(p));
    csv << absolute(gv.rate.r1, cfg) << "," << absolute(gv.rate.r2, cfg) << ","
        << inside << "," << v.achievable << "," << v.search_exhausted << ","
        << to_string(v.mode) << "," << v.block_length << "," << v.field_order
        << "\n";
  }
  if (fallbacks > 0 && !warn)
    err << "warning: " << fallbacks
        << " grid points exceeded the exhaustive search limits and used "
           "randomized search\n";
  if (format == "csv") {
    out << csv.str();
  } else {
    json j = {{"case", to_string(reg.case_label)},
              {"exactness", to_string(reg.exactness)},
              {"max_n", max_n},
              {"field", field},
              {"seed", seed},
              {"randomized_fallback", warn || fallbacks > 0},
              {"disagreements", exact ? json(disagreements) : json(nullptr)},
              {"points", points}};
    out << j.dump(2) << "\n";
  }
  return exit_code::kOk;
}

int cmd_export(const InstanceConfig& inst, const std::string& format,
               std::ostream& out) {
  if (format != "dot" && format != "json")
    throw FlagError("--format must be dot or json");
  const auto net = reduce_to_combination_network(inst.grouping, inst.network);
  out << export_network(net, format);
  return exit_code::kOk;
}

int exit_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnachievableTarget:
    case ErrorKind::UnsupportedCase:
      return exit_code::kUnachievable;
    case ErrorKind::DegenerateInstance:
      return exit_code::kDegenerate;
    default:
      return exit_code::kConfig;
  }
}

}  // namespace

InstanceConfig parse_instance_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < upto; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorKind::Parse, "config: line " + std::to_string(line) +
                                      ", column " + std::to_string(col) +
                                      ": malformed JSON");
  }
  if (!doc.is_object()) throw Error(ErrorKind::Parse, "config must be a JSON object");
  static const std::vector<std::string> known = {"num_paths", "capacity",
                                                 "blockage_probs", "group1", "group2"};
  for (const auto& [key, _] : doc.items())
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw Error(ErrorKind::Parse, "config: unknown key '" + key + "'");
  try {
    NetworkConfig cfg;
    if (!doc.contains("num_paths") || !doc.at("num_paths").is_number_integer())
      throw Error(ErrorKind::Parse, "config: num_paths must be an integer");
    cfg.num_paths = doc.at("num_paths").get<int>();
    if (doc.contains("capacity")) {
      if (!doc.at("capacity").is_number())
        throw Error(ErrorKind::Parse, "config: capacity must be a number");
      cfg.capacity = doc.at("capacity").get<double>();
    }
    if (!doc.contains("blockage_probs") || !doc.at("blockage_probs").is_array())
      throw Error(ErrorKind::Parse, "config: blockage_probs must be an array");
    for (const auto& q : doc.at("blockage_probs")) {
      if (!q.is_number())
        throw Error(ErrorKind::Parse, "config: blockage_probs must hold numbers");
      cfg.blockage_probs.push_back(q.get<double>());
    }
    cfg.validate();
    auto g1 = parse_group(doc, "group1", cfg.num_paths);
    auto g2 = parse_group(doc, "group2", cfg.num_paths);
    return {cfg, Grouping(cfg.num_paths, std::move(g1), std::move(g2))};
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("config: ") + e.what());
  }
}

InstanceConfig load_instance_config(const std::string& path) {
  return parse_instance_config(read_file(path));
}

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Two-level priority multilevel diversity coding over E paths"};
  app.require_subcommand(1);

  std::string config;
  bool pretty = false;
  std::string grid_step;
  std::string target;
  std::string scheme_path;
  std::int64_t trials = 100000;
  std::uint64_t seed = 1;
  int max_n = 2;
  int field = 0;
  std::uint64_t budget = 2000;
  std::string format;

  auto* analyze = app.add_subcommand("analyze", "classify an instance and print its rate region");
  analyze->add_option("config", config, "instance JSON")->required();
  analyze->add_flag("--pretty", pretty, "human-readable output");

  auto* region_cmd = app.add_subcommand("region", "CSV of grid points and corners");
  region_cmd->add_option("config", config, "instance JSON")->required();
  region_cmd->add_option("--grid-step", grid_step, "grid spacing in rate units")->required();

  auto* scheme = app.add_subcommand("scheme", "build a coding scheme for a target rate pair");
  scheme->add_option("config", config, "instance JSON")->required();
  scheme->add_option("--target", target, "r1,r2")->required();

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo blockage simulation");
  simulate->add_option("config", config, "instance JSON")->required();
  simulate->add_option("--scheme", scheme_path, "scheme JSON from `scheme`")->required();
  simulate->add_option("--trials", trials, "number of trials");
  simulate->add_option("--seed", seed, "random seed");

  auto* verify = app.add_subcommand("verify", "linear-code search over a rate grid");
  verify->add_option("config", config, "instance JSON")->required();
  verify->add_option("--max-n", max_n, "largest block length");
  verify->add_option("--field", field, "field order, 0 = try 2 then 4");
  verify->add_option("--seed", seed, "seed for randomized search");
  verify->add_option("--budget", budget, "random attempts per grid point");
  verify->add_option("--format", format, "json or csv")->default_str("json");

  auto* exporter = app.add_subcommand("export-combnet", "export the combination network");
  exporter->add_option("config", config, "instance JSON")->required();
  exporter->add_option("--format", format, "dot or json")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return exit_code::kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kBadFlag;
  }

  try {
    const InstanceConfig inst = load_instance_config(config);
    if (analyze->parsed()) return cmd_analyze(inst, pretty, out, err);
    if (region_cmd->parsed()) return cmd_region(inst, grid_step, out);
    if (scheme->parsed()) return cmd_scheme(inst, target, out);
    if (simulate->parsed()) return cmd_simulate(inst, scheme_path, trials, seed, out);
    if (verify->parsed())
      return cmd_verify(inst, max_n, field, seed, budget,
                        format.empty() ? "json" : format, out, err);
    if (exporter->parsed()) return cmd_export(inst, format, out);
  } catch (const FlagError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kBadFlag;
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return exit_for(e.kind());
  }
  return exit_code::kBadFlag;
}

}  // namespace mdc
