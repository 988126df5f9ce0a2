// Command-line driver. Each subcommand assembles a flat key=value config
// (optional --config file first, then flag overrides, flags winning) and
// hands it to the shared library through the C API.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mipt.h"

namespace {

struct SubSpec {
  const char* name;
  const char* help;
  // flag name (without --) -> config key; every option is captured as text
  // so the library does all validation.
  std::vector<std::pair<const char*, const char*>> options;
};

const std::vector<std::pair<const char*, const char*>> kCommonOpts = {
    {"q", "q"},           {"lx", "lx"},       {"ly", "ly"},
    {"samples", "samples"}, {"seed", "seed"},
    {"out-csv", "out_csv"}, {"out-json", "out_json"}, {"out-svg", "out_svg"},
};

const SubSpec kSubs[] = {
    {"graph-scan", "Boundary entropy of the graph model over a p_x grid",
     {{"px", "px"}, {"px-min", "px_min"}, {"px-max", "px_max"},
      {"px-step", "px_step"}, {"la", "la"}}},
    {"graph-critical", "Interval-size scaling of the graph model at fixed p_x",
     {{"px", "px"}}},
    {"mutual-info", "Two-interval mutual information vs cross ratio",
     {{"px", "px"}, {"tuples", "tuples"}}},
    {"purify", "Two-edge purification of the graph model vs depth",
     {{"px", "px"}, {"obc", "obc"}, {"ly-min", "ly_min"},
      {"ly-max", "ly_max"}, {"ly-step", "ly_step"}}},
    {"clifford-scan", "Boundary entropy of the Clifford model over a p grid",
     {{"p", "p"}, {"p-min", "p_min"}, {"p-max", "p_max"},
      {"p-step", "p_step"}, {"t", "t"}, {"la", "la"}}},
    {"clifford-purify", "Two-edge purification of the Clifford model",
     {{"p", "p"}, {"t", "t"}, {"obc", "obc"}, {"ly-min", "ly_min"},
      {"ly-max", "ly_max"}, {"ly-step", "ly_step"}}},
    {"couplings", "Closed-form stat-mech couplings at parameter q", {}},
    {"rbim-mc", "Random-bond Ising Monte Carlo",
     {{"l", "l"}, {"k", "k"}, {"k-min", "k_min"}, {"k-max", "k_max"},
      {"k-step", "k_step"}, {"pb", "pb"}, {"pb-min", "pb_min"},
      {"pb-max", "pb_max"}, {"pb-step", "pb_step"}, {"sweeps", "sweeps"},
      {"algo", "algo"}}},
    {"verify", "Hidden differential self-check", {}},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulator and experiment harness for measurement-induced "
               "boundary transitions of 2D shallow circuits"};
  app.set_version_flag("--version", mipt_version());
  app.require_subcommand(1);

  struct Captured {
    std::string command;
    std::string config_path;
    std::map<std::string, std::string> values;  // config key -> value text
  } cap;

  for (const SubSpec& spec : kSubs) {
    CLI::App* sub = app.add_subcommand(spec.name, spec.help);
    if (std::string(spec.name) == "verify") sub->group("");  // hidden
    sub->add_option_function<std::string>(
        "--config",
        [&cap](const std::string& v) { cap.config_path = v; },
        "Key=value config file; flags override its entries");
    auto add = [&](const char* flag, const char* key) {
      sub->add_option_function<std::string>(
          std::string("--") + flag,
          [&cap, key](const std::string& v) { cap.values[key] = v; }, "");
    };
    for (const auto& [flag, key] : kCommonOpts) add(flag, key);
    for (const auto& [flag, key] : spec.options) add(flag, key);
    sub->add_option_function<std::string>(
        "--threads",
        [](const std::string& v) { setenv("MIPT_THREADS", v.c_str(), 1); },
        "Worker thread count (also env MIPT_THREADS)");
    sub->callback([&cap, &spec] { cap.command = spec.name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return MIPT_ERR_CONFIG;
  }

  std::ostringstream config;
  if (!cap.config_path.empty()) {
    std::ifstream in(cap.config_path, std::ios::binary);
    if (!in) {
      std::fprintf(stderr, "error: cannot read config file '%s'\n",
                   cap.config_path.c_str());
      return MIPT_ERR_CONFIG;
    }
    config << in.rdbuf() << '\n';
  }
  config << "command=" << cap.command << '\n';
  for (const auto& [key, value] : cap.values)
    config << key << '=' << value << '\n';

  char errbuf[512];
  const int rc = mipt_run_config(config.str().c_str(), errbuf, sizeof errbuf);
  if (rc != MIPT_OK) std::fprintf(stderr, "error: %s\n", errbuf);
  return rc;
}
