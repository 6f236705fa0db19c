#include <cstdlib>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "sg/acceptance.hpp"
#include "sg/config.hpp"
#include "sg/scenario.hpp"

namespace {

struct CliState {
  std::string config_file;
  // Flag overrides in the order given; applied after file and environment.
  std::vector<std::pair<std::string, std::string>> overrides;
};

void add_config_flags(CLI::App* sub, CliState& st) {
  sub->add_option("--config", st.config_file,
                  "configuration file (key = value lines, # comments)");
  for (const auto& key : sg::config_keys()) {
    sub->add_option_function<std::string>(
        "--" + key,
        [&st, key](const std::string& v) { st.overrides.emplace_back(key, v); },
        "override config key '" + key + "'");
  }
}

sg::ScenarioConfig build_config(const CliState& st) {
  sg::ScenarioConfig cfg;
  if (!st.config_file.empty()) sg::load_config_file(cfg, st.config_file);
  sg::apply_env_overrides(cfg);
  for (const auto& [key, value] : st.overrides) {
    sg::apply_config_value(cfg, key, value, "flag --" + key);
  }
  return cfg;
}

void print_checks(const sg::json& node, const std::string& prefix) {
  if (!node.contains("checks")) return;
  for (const auto& chk : node.at("checks")) {
    std::cout << "  [" << (chk.at("pass").get<bool>() ? "PASS" : "FAIL")
              << "] " << prefix << chk.at("name").get<std::string>()
              << " (rel err " << chk.at("rel_error").get<double>()
              << ", tol " << chk.at("tolerance").get<double>() << ")\n";
  }
}

int do_simulate(const sg::ScenarioConfig& cfg) {
  const sg::json out = sg::run_simulate(cfg);
  print_checks(out.at("field"), "field: ");
  for (const auto& [name, node] : out.at("models").items()) {
    print_checks(node, name + ": ");
  }
  const bool ok = out.at("all_pass").get<bool>();
  std::cout << "wrote " << cfg.out_dir << "/simulate.json\n"
            << (ok ? "all checks passed" : "CHECK FAILURES (see above)")
            << "\n";
  return ok ? 0 : 1;
}

int do_sweep(const sg::ScenarioConfig& cfg) {
  const sg::json out = sg::run_sweep(cfg);
  std::cout << out.at("records").size() << " sweep records\n"
            << "wrote " << cfg.out_dir << "/sweep.json and sweep.csv\n";
  return 0;
}

int do_table1(const sg::ScenarioConfig& cfg) {
  std::string table;
  const sg::json out = sg::run_table1(cfg, &table);
  std::cout << table << "\n"
            << "wrote " << cfg.out_dir
            << "/table1.json, table1.txt, table1.csv\n";
  const bool ok = out.at("matches_reference").get<bool>();
  if (!ok) std::cout << "verdicts DIFFER from the reference classification\n";
  return ok ? 0 : 1;
}

int do_dump(const sg::ScenarioConfig& cfg, const std::string& field,
            const std::string& format, const std::string& out_path) {
  const sg::json out = sg::run_dump_field(cfg, field, format, out_path);
  std::cout << "wrote " << out.at("path").get<std::string>() << " ("
            << out.at("dims")[0].get<std::int64_t>() << "^3 "
            << out.at("format").get<std::string>() << ")\n";
  return 0;
}

int do_acceptance(const sg::AcceptanceOptions& opt) {
  const auto results = sg::run_acceptance(opt, std::cout);
  std::size_t passed = 0;
  for (const auto& r : results) passed += r.pass ? 1 : 0;
  std::cout << "acceptance ("
            << (opt.profile == sg::Profile::fast ? "fast" : "full")
            << "): " << passed << "/" << results.size() << " criteria passed"
            << "\n";
  if (!sg::all_passed(results)) {
    std::cout << "failed: " << sg::failure_summary(results) << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stern-Gerlach electron: four models, one apparatus"};
  app.require_subcommand(1);

  CliState sim_st, sweep_st, table_st, dump_st;

  CLI::App* sim = app.add_subcommand(
      "simulate", "run the configured models once and check the closed forms");
  add_config_flags(sim, sim_st);

  CLI::App* sweep = app.add_subcommand(
      "sweep", "record detector arrivals over the spin-angle sweep");
  add_config_flags(sweep, sweep_st);

  CLI::App* table = app.add_subcommand(
      "table1", "classify outcome uniqueness/discreteness for all four models");
  add_config_flags(table, table_st);

  std::string dump_field = "b", dump_format = "binary",
              dump_out = "field.bin";
  CLI::App* dump = app.add_subcommand(
      "dump-field", "sample the apparatus field on the configured grid");
  add_config_flags(dump, dump_st);
  dump->add_option("--field", dump_field, "b | a | e")
      ->check(CLI::IsMember({"b", "a", "e"}));
  dump->add_option("--format", dump_format, "binary | csv")
      ->check(CLI::IsMember({"binary", "csv"}));
  dump->add_option("--out", dump_out, "output path");

  std::string profile = "full";
  sg::AcceptanceOptions acc_opt;
  CLI::App* acc = app.add_subcommand(
      "acceptance", "run the acceptance criteria (fast or full profile)");
  acc->add_option("--profile", profile, "fast | full")
      ->check(CLI::IsMember({"fast", "full"}));
  acc->add_option("--out-dir", acc_opt.out_dir,
                  "directory for the outcome-table artifact");
  acc->add_option("--break-criterion", acc_opt.break_criterion,
                  "self-test hook: zero the named criterion's tolerances")
      ->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (sim->parsed()) return do_simulate(build_config(sim_st));
    if (sweep->parsed()) return do_sweep(build_config(sweep_st));
    if (table->parsed()) return do_table1(build_config(table_st));
    if (dump->parsed()) {
      return do_dump(build_config(dump_st), dump_field, dump_format, dump_out);
    }
    if (acc->parsed()) {
      acc_opt.profile =
          profile == "fast" ? sg::Profile::fast : sg::Profile::full;
      return do_acceptance(acc_opt);
    }
  } catch (const sg::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
