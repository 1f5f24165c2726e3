#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "bosecorr/summation.hpp"
#include "commands.hpp"

namespace {

using Command = int (*)(const bosecorr::app::RunConfig&, std::ostream&, std::ostream&);

int run(Command cmd, const std::string& config_path, const std::string& out_path) {
  using namespace bosecorr;
  try {
    app::RunConfig cfg = config_path.empty() ? app::reference_config() : app::load_config(config_path);
    const std::string target = out_path.empty() ? cfg.out_path : out_path;
    if (target.empty()) return cmd(cfg, std::cout, std::cerr);
    std::ostringstream buf;
    const int code = cmd(cfg, buf, std::cerr);
    std::ofstream f(target, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot write " << target << '\n';
      return 1;
    }
    f << buf.str();
    return code;
  } catch (const app::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Second-order ground state energy of a dilute Bose gas on the unit torus"};
  app.require_subcommand(1);
  std::string config, out;
  int threads = 0;
  app.add_option("--threads", threads, "worker threads (results do not depend on it)")->check(CLI::NonNegativeNumber);

  struct Sub {
    const char* name;
    const char* help;
    Command cmd;
  };
  const Sub subs[] = {
      {"energy", "energy report, one JSON record per N", bosecorr::app::cmd_energy},
      {"scan", "CSV table over a list of N", bosecorr::app::cmd_scan},
      {"verify", "run the invariant suite", bosecorr::app::cmd_verify},
      {"oracle", "closed forms against truncated Fock-space computations", bosecorr::app::cmd_oracle},
  };
  Command chosen = nullptr;
  for (const auto& s : subs) {
    auto* sc = app.add_subcommand(s.name, s.help);
    sc->add_option("--config", config, "run configuration (JSON)");
    sc->add_option("--out", out, "output file (default stdout)");
    sc->add_option("--threads", threads, "worker threads")->check(CLI::NonNegativeNumber);
    sc->callback([&chosen, cmd = s.cmd] { chosen = cmd; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (threads > 0) bosecorr::set_thread_count(threads);
  return run(chosen, config, out);
}
