// dual-appell: verification suites and artifact emitters.
//
// Exit codes: 0 pass, 1 a suite or verdict failed, 2 usage, config or I/O
// error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "emit.hpp"
#include "verify.hpp"

namespace fs = std::filesystem;
using namespace dual_appell;
using namespace dual_appell::cli;

namespace {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ConfigError("'" + path + "': " + e.what());
  }
}

// Relative output paths resolve against DUAL_APPELL_OUT_DIR when it is set.
void write_output(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  fs::path path(out);
  if (path.is_relative()) {
    if (const char* base = std::getenv("DUAL_APPELL_OUT_DIR"); base && *base) path = fs::path(base) / path;
  }
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write '" + path.string() + "'");
  f << text;
  f.close();
  if (!f) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dual-appell: dual n1-Appell-like systems, exact and floating-point verification"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, out_path, scalar;
  std::optional<std::uint64_t> seed;
  bool timings = false;
  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--out", out_path, "output file (default stdout)");
  app.add_option("--seed", seed, "override the config seed");
  app.add_option("--scalar", scalar, "rational | float")->check(CLI::IsMember({"rational", "float"}));

  auto* verify = app.add_subcommand("verify", "run every verification suite");
  verify->add_flag("--timings", timings, "add wall-clock times (reports stop being byte-stable)");
  auto* kernels = app.add_subcommand("kernels", "P-kernels as CSV");
  auto* dchi = app.add_subcommand("dchi", "apply D_chi to an element");
  std::string element_path, symbol_path;
  dchi->add_option("--element", element_path, "PolyElement JSON");
  dchi->add_option("--symbol", symbol_path, "symbol tensor JSON");
  auto* qsystem = app.add_subcommand("qsystem", "Q functionals on coordinate tensors");
  auto* stransform = app.add_subcommand("stransform", "S-transform by both paths");
  std::string functional_path, theta_text;
  stransform->add_option("--functional", functional_path, "DualFunctional JSON");
  stransform->add_option("--theta", theta_text, "JSON array of d scalars, e.g. '[\"1/4\", 0]'");
  auto* gram = app.add_subcommand("gram", "Gram matrix of the measure and PD verdict");
  auto* kingman = app.add_subcommand("kingman", "Lambda_s coefficients, bounds and sphere CF check");
  KingmanOptions kopt;
  kingman->add_option("--s", kopt.s, "s >= -1/2, rational literal or decimal")->capture_default_str();
  kingman->add_option("--terms", kopt.terms, "series terms")->capture_default_str();
  kingman->add_option("--grid", kopt.grid, "polar grid points per axis")->capture_default_str();
  kingman->add_option("--radius", kopt.radius, "grid radius")->capture_default_str();
  kingman->add_option("--samples", kopt.samples, "Monte Carlo samples")->capture_default_str();
  kingman->add_option("--dim", kopt.dim, "sphere dimension")->capture_default_str();
  kingman->add_option("--sphere-radius", kopt.sphere_radius, "sphere radius")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (kingman->parsed()) {
      if (seed) kopt.seed = *seed;
      const auto a = emit_kingman(kopt);
      write_output(out_path, a.text);
      return a.ok ? 0 : 1;
    }

    Json user = config_path.empty() ? Json::object() : read_json(config_path);
    if (!user.is_object()) throw ConfigError("config must be a JSON object");
    if (seed) user["seed"] = *seed;
    if (!scalar.empty()) user["scalar"] = scalar;
    const RunConfig cfg = make_config(user);
    if (out_path.empty()) out_path = cfg.raw.at("output").get<std::string>();

    Artifact a;
    if (verify->parsed()) {
      const auto r = run_verify(cfg, timings);
      a = {dump(r.json), r.ok};
    } else if (kernels->parsed()) {
      a = emit_kernels(cfg);
    } else if (dchi->parsed()) {
      DchiInputs in;
      if (!element_path.empty()) in.element = read_json(element_path);
      if (!symbol_path.empty()) in.symbol = read_json(symbol_path);
      a = emit_dchi(cfg, in);
    } else if (qsystem->parsed()) {
      a = emit_qsystem(cfg);
    } else if (stransform->parsed()) {
      STransformInputs in;
      if (!functional_path.empty()) in.functional = read_json(functional_path);
      if (!theta_text.empty()) {
        try {
          in.theta = Json::parse(theta_text);
        } catch (const Json::exception& e) {
          throw ConfigError(std::string("--theta: ") + e.what());
        }
      }
      a = emit_stransform(cfg, in);
    } else if (gram->parsed()) {
      a = emit_gram(cfg);
    }
    write_output(out_path, a.text);
    return a.ok ? 0 : 1;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
