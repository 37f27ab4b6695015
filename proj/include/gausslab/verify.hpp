#pragma once

#include "gausslab/report.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace gausslab {

struct VerifyOptions {
  std::uint64_t seed = 42;
  int mc_samples = 100000;  // base count for the identity checks
  int quad_order = 40;
};

// One verification gate: a pass/fail verdict plus the CSV tables backing it.
struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0.0;
  std::string detail;
  // (table name, CSV content); emitted by the CLI, compared for determinism
  std::vector<std::pair<std::string, std::string>> tables;
};

// The full gate suite, in fixed order.  Every bound appearing in a table is
// recomputed from the constants module at run time.
std::vector<CriterionResult> run_verification(const VerifyOptions& options);

// Single gates, shared by the CLI subcommands.
CriterionResult verify_constants(const VerifyOptions& options);
CriterionResult verify_pairing_sums(const VerifyOptions& options);
CriterionResult verify_moment_identities(const VerifyOptions& options);
CriterionResult verify_translation_identity(const VerifyOptions& options);
CriterionResult verify_heat_closed_forms(const VerifyOptions& options);
CriterionResult verify_semigroup(const VerifyOptions& options);
CriterionResult verify_laplacian_commutation(const VerifyOptions& options);
CriterionResult verify_generator_expansion(const VerifyOptions& options);
CriterionResult verify_extension_rates(const VerifyOptions& options);
CriterionResult verify_quadratic_form_bounds(const VerifyOptions& options);
CriterionResult verify_product_bounds(const VerifyOptions& options);
CriterionResult verify_rotation_covariance(const VerifyOptions& options);
CriterionResult verify_multiplication_commutator(const VerifyOptions& options);
CriterionResult verify_holder_telescoping(const VerifyOptions& options);
CriterionResult verify_frame_independence(const VerifyOptions& options);
CriterionResult verify_determinism(const VerifyOptions& options);

}  // namespace gausslab
