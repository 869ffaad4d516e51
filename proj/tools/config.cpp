#include "config.hpp"

#include <fstream>
#include <sstream>

namespace dual_appell::cli {

Json default_config() {
  return Json{
      {"d", 2},
      {"n1", 2},
      {"N", 3},
      {"scalar", "rational"},
      {"chi", {{"name", "kingman"}, {"s", "1/2"}}},
      {"gamma", "random"},
      {"measure", {{"kind", "gaussian"}}},
      {"scale", nullptr},
      {"p", 1},
      {"q", 1},
      {"seed", 20261018},
      {"draws", 20},
      {"tolerances", {{"float_rel", 1e-10}, {"mc_sigmas", 4.0}}},
      {"output", ""},
  };
}

std::string RunConfig::hash() const {
  const std::string text = raw.dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) h = (h ^ c) * 1099511628211ull;
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

template <Scalar S>
ChiFunction<S> build_chi(const Json& desc, int n1, int max_block) {
  if (desc.is_string()) return chi_named<S>(desc.get<std::string>(), n1, max_block);
  if (desc.contains("coeffs")) {
    std::vector<S> c;
    for (const auto& v : desc.at("coeffs")) c.push_back(scalar_from_json<S>(v));
    if (static_cast<int>(c.size()) < max_block + 1)
      throw ConfigError("chi: " + std::to_string(c.size()) + " coefficients given, N = " + std::to_string(max_block) +
                        " needs " + std::to_string(max_block + 1));
    return ChiFunction<S>(n1, std::move(c));
  }
  const auto name = desc.at("name").get<std::string>();
  const S s = desc.contains("s") ? scalar_from_json<S>(desc.at("s")) : from_int<S>(0);
  return chi_named<S>(name, n1, max_block, s);
}

template <Scalar S>
Germ<S> build_gamma(const Json& desc, int d, int n1, int max_block, std::uint64_t seed) {
  if (desc.is_string()) {
    const auto name = desc.get<std::string>();
    if (name == "unit") return Germ<S>::unit(d, n1, max_block);
    if (name == "gauss") return gauss_germ<S>(d, n1, max_block);
    if (name == "random") {
      auto rng = make_rng(seed, 0x6A77A);
      return random_germ<S>(rng, d, n1, max_block);
    }
    throw ConfigError("unknown gamma '" + name + "'");
  }
  auto g = germ_from_json<S>(Json{{"d", d}, {"n1", n1}, {"kernels", desc.at("kernels")}});
  if (g.max_block() < max_block)
    throw ConfigError("gamma: kernels given up to degree " + std::to_string(g.max_block() * n1) + ", N needs " +
                      std::to_string(max_block * n1));
  return g;
}

template <Scalar S>
Setup<S> build_setup(const RunConfig& cfg) {
  const int d = cfg.dim(), n1 = cfg.n1(), big_n = cfg.max_block();
  auto chi = build_chi<S>(cfg.raw.at("chi"), n1, big_n);
  auto gamma = build_gamma<S>(cfg.raw.at("gamma"), d, n1, big_n, cfg.seed());
  AppellSystem<S> sys(chi, gamma, big_n);
  auto measure = measure_from_json<S>(cfg.raw.at("measure"), 2 * big_n * n1);
  ScaleVector scale;
  if (cfg.raw.at("scale").is_null()) scale = ScaleVector::standard(d);
  else scale.a = cfg.raw.at("scale").get<std::vector<double>>();
  scale.validate(d);
  return Setup<S>{std::move(chi), std::move(gamma), std::move(sys), std::move(measure), std::move(scale)};
}

template ChiFunction<Rational> build_chi<Rational>(const Json&, int, int);
template ChiFunction<double> build_chi<double>(const Json&, int, int);
template Germ<Rational> build_gamma<Rational>(const Json&, int, int, int, std::uint64_t);
template Germ<double> build_gamma<double>(const Json&, int, int, int, std::uint64_t);
template Setup<Rational> build_setup<Rational>(const RunConfig&);
template Setup<double> build_setup<double>(const RunConfig&);

RunConfig make_config(const Json& user) {
  if (!user.is_object()) throw ConfigError("config must be a JSON object");
  Json raw = default_config();
  for (const auto& [key, value] : user.items()) {
    if (!raw.contains(key)) throw ConfigError("unknown config key '" + key + "'");
    if (key == "tolerances") {
      for (const auto& [tk, tv] : value.items()) {
        if (!raw["tolerances"].contains(tk)) throw ConfigError("unknown tolerance '" + tk + "'");
        raw["tolerances"][tk] = tv;
      }
    } else {
      raw[key] = value;
    }
  }
  if (raw["measure"].is_object() && !raw["measure"].contains("d")) raw["measure"]["d"] = raw["d"];

  RunConfig cfg{raw};
  try {
    if (cfg.dim() < 1) throw ConfigError("d must be >= 1");
    if (cfg.n1() < 1) throw ConfigError("n1 must be >= 1");
    if (cfg.max_block() < 1) throw ConfigError("N must be >= 1");
    if (cfg.draws() < 1) throw ConfigError("draws must be >= 1");
    if (cfg.scalar() != "rational" && cfg.scalar() != "float")
      throw ConfigError("scalar must be 'rational' or 'float'");
    if (raw["measure"].at("d").get<int>() != cfg.dim()) throw ConfigError("measure dimension differs from d");
    if (!(cfg.float_tolerance() > 0)) throw ConfigError("tolerances.float_rel must be positive");
    if (!(cfg.mc_sigmas() > 0)) throw ConfigError("tolerances.mc_sigmas must be positive");
    if (cfg.scalar() == "rational") build_setup<Rational>(cfg);
    else build_setup<double>(cfg);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  try {
    return make_config(Json::parse(in));
  } catch (const Json::exception& e) {
    throw ConfigError("config '" + path + "': " + e.what());
  }
}

}  // namespace dual_appell::cli
