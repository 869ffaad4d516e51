#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "dual_appell/dual_appell.hpp"

namespace dual_appell::cli {

// Raised for anything that makes a configuration unusable; maps to exit 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One run's settings. The JSON form is the single source; command-line flags
// are applied on top of it before validation.
struct RunConfig {
  Json raw;  // normalized config, all defaults filled in

  int dim() const { return raw.at("d").get<int>(); }
  int n1() const { return raw.at("n1").get<int>(); }
  int max_block() const { return raw.at("N").get<int>(); }
  int draws() const { return raw.at("draws").get<int>(); }
  int p() const { return raw.at("p").get<int>(); }
  int q() const { return raw.at("q").get<int>(); }
  std::uint64_t seed() const { return raw.at("seed").get<std::uint64_t>(); }
  std::string scalar() const { return raw.at("scalar").get<std::string>(); }
  double float_tolerance() const { return raw.at("tolerances").at("float_rel").get<double>(); }
  double mc_sigmas() const { return raw.at("tolerances").at("mc_sigmas").get<double>(); }

  // FNV-1a of the canonical dump, hex.
  std::string hash() const;
};

Json default_config();

// Fills defaults, checks every cross-field constraint and builds the typed
// objects once to prove they are constructible. Throws ConfigError.
RunConfig make_config(const Json& user);

RunConfig load_config(const std::string& path);

// Typed view of a validated config.
template <Scalar S>
struct Setup {
  ChiFunction<S> chi;
  Germ<S> gamma;
  AppellSystem<S> system;
  MomentFunctional<S> measure;
  ScaleVector scale;
};

template <Scalar S>
ChiFunction<S> build_chi(const Json& desc, int n1, int max_block);

template <Scalar S>
Germ<S> build_gamma(const Json& desc, int d, int n1, int max_block, std::uint64_t seed);

template <Scalar S>
Setup<S> build_setup(const RunConfig& cfg);

// gamma(theta) = exp(-|theta|^2 / 2): kernel of degree 2k has coefficients
// (2k)! (-1/2)^k / beta! at theta^{2 beta}, |beta| = k.
template <Scalar S>
Germ<S> gauss_germ(int d, int n1, int max_block) {
  if (2 % n1 != 0) throw std::invalid_argument("gauss germ needs n1 in {1, 2}");
  std::vector<SymTensor<S>> k;
  for (int n = 0; n <= max_block; ++n) {
    const int deg = n * n1;
    SymTensor<S> t(d, deg);
    if (deg % 2 == 0) {
      const int half = deg / 2;
      for (const auto& beta : multi_indices(d, half)) {
        t.at(beta + beta) = factorial<S>(deg) * power<S>(from_ratio<S>(-1, 2), half) / beta.template factorial<S>();
      }
    }
    k.push_back(std::move(t));
  }
  return Germ<S>(d, n1, std::move(k));
}

}  // namespace dual_appell::cli
