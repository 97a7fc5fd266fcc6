#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wdro/oracle.hpp"

namespace wdro {

struct VerifyRow {
  std::string name;
  double closed_form;   // clause value (best additive fit for falsification rows)
  double numeric_sup;   // oracle value (gap floor for falsification rows)
  double abs_gap;
  bool pass;
  bool expected_negative;  // fails by design; does not affect the exit code
};

struct VerifyOptions {
  std::uint64_t seed = 99;
  double tol = 1e-6;
  int instances_per_clause = 4;
  OracleConfig oracle{};
};

// Compact closed-form vs numeric-sup comparison across every reformulation
// clause, plus the falsification rows for out-of-catalog losses.
std::vector<VerifyRow> run_verify_suite(const VerifyOptions& opt);

}  // namespace wdro
