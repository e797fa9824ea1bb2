#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "sgps/sgps.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kDomainError = 1;
constexpr int kParseError = 2;

std::string text_report(const nlohmann::json& j) {
  std::ostringstream os;
  for (const auto& e : j.at("reports")) {
    os << "L" << e.at("line").get<int>() << "  " << e.at("statement").get<std::string>() << "\n";
    if (e.value("ok", false)) {
      const auto& r = e.at("result");
      os << "    " << (r.is_string() ? r.get<std::string>() : r.dump()) << "\n";
    } else {
      os << "    error " << e.at("error").at("message").get<std::string>() << "\n";
    }
  }
  return os.str();
}

int cmd_run(const std::string& path, bool json, std::uint64_t seed) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "cannot open " << path << "\n";
    return kDomainError;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  std::size_t errors = 0;
  nlohmann::json report;
  try {
    report = sgps::dsl::run_session(buf.str(), {seed, false}, &errors);
  } catch (const sgps::ParseError& e) {
    std::cerr << path << ": " << e.what() << "\n";
    return kParseError;
  }
  report["source"] = path;
  if (json) std::cout << sgps::dsl::emit_report(report) << "\n";
  else std::cout << text_report(report);
  return errors == 0 ? kOk : kDomainError;
}

int cmd_scenario(const std::string& id, const std::vector<std::string>& kv, bool json) {
  sgps::ScenarioParams params;
  for (const auto& p : kv) {
    auto eq = p.find('=');
    if (eq == std::string::npos || eq == 0) {
      std::cerr << "expected key=value, got " << p << "\n";
      return kParseError;
    }
    params[p.substr(0, eq)] = p.substr(eq + 1);
  }
  try {
    auto rep = sgps::run_scenario(id, params);
    if (json) {
      std::cout << sgps::dsl::emit_report(rep.to_json()) << "\n";
    } else {
      for (const auto& c : rep.claims)
        std::cout << (c.agrees ? "agree     " : "DISAGREE  ") << c.id << ": expected " << c.expected << ", observed "
                  << c.observed << "\n";
      std::cout << rep.claims.size() << " claims, " << rep.disagreements() << " disagreement(s)\n";
    }
  } catch (const sgps::Error& e) {
    std::cerr << e.what() << "\n";
    return kDomainError;
  }
  return kOk;
}

int cmd_selftest() {
  bool all = true;
  auto cs = sgps::acceptance::criteria();
  for (std::size_t i = 0; i < cs.size(); ++i) {
    auto r = sgps::acceptance::run_timed(cs[i], static_cast<int>(i + 1));
    std::cout << sgps::acceptance::format(r) << std::endl;
    all = all && r.pass;
  }
  return all ? kOk : kDomainError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Skew generalized power series laboratory"};
  app.require_subcommand(1);

  std::string file;
  bool json = false;
  std::uint64_t seed = 1;
  auto* run = app.add_subcommand("run", "Run a session file");
  run->add_option("FILE", file, "session file")->required();
  run->add_flag("--json", json, "emit the JSON report");
  run->add_option("--seed", seed, "random seed");

  std::string id;
  std::vector<std::string> params;
  bool scen_json = false;
  auto* scen = app.add_subcommand("scenario", "Run a built-in scenario");
  scen->add_option("ID", id, "scenario id")->required()->check(CLI::IsMember(sgps::scenario_ids()));
  scen->add_option("params", params, "key=value parameters");
  scen->add_flag("--json", scen_json, "emit the JSON report");

  auto* self = app.add_subcommand("selftest", "Run acceptance criteria 1-9");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kParseError;
  }
  if (*run) return cmd_run(file, json, seed);
  if (*scen) return cmd_scenario(id, params, scen_json);
  if (*self) return cmd_selftest();
  return kOk;
}
