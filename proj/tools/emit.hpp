#pragma once

#include <optional>
#include <string>

#include "config.hpp"

namespace dual_appell::cli {

// Text of one output file. ok is false when the artifact carries a failing
// verdict (gram not positive definite, kingman check outside tolerance).
struct Artifact {
  std::string text;
  bool ok = true;
};

// CSV, one row per nonzero coefficient of P_n(z), n = 0..N:
//   n,alpha,z_monomial,coefficient
// alpha is the tensor index, z_monomial the exponent of z, both written
// "(a1 a2 ...)". Rows are ordered by n, then alpha, then z_monomial, all in
// graded-lex order.
Artifact emit_kernels(const RunConfig& cfg);

// Optional inputs are JSON documents; when absent, seeded random data is used.
struct DchiInputs {
  std::optional<Json> element;  // PolyElement
  std::optional<Json> symbol;   // SymTensor, rank a multiple of n1
};
Artifact emit_dchi(const RunConfig& cfg, const DchiInputs& in);

// Q functionals for every m <= N and every coordinate tensor Phi = e_alpha.
Artifact emit_qsystem(const RunConfig& cfg);

struct STransformInputs {
  std::optional<Json> functional;  // DualFunctional
  std::optional<Json> theta;       // array of d scalars
};
Artifact emit_stransform(const RunConfig& cfg, const STransformInputs& in);

Artifact emit_gram(const RunConfig& cfg);

struct KingmanOptions {
  std::string s = "1/2";
  int terms = 40;
  int grid = 20;
  double radius = 5.0;
  long samples = 100000;
  std::uint64_t seed = 20261018;
  int dim = 3;
  double sphere_radius = 1.0;
};
Artifact emit_kingman(const KingmanOptions& opt);

// Serialization used for every JSON artifact.
std::string dump(const Json& j);

}  // namespace dual_appell::cli
