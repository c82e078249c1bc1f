#pragma once

#include "divlink/diagram.h"
#include "divlink/error.h"
#include "divlink/rational.h"

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace divlink::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitResource = 3;
inline constexpr int kExitInternal = 4;

/// Flags shared by the subcommands.
struct CliConfig {
  std::uint64_t seed = 0;
  std::optional<Rational> epsilon;  // perturb: jitter bound; diagram/invariants: string spacing
  Rational mirror_gap{1, 2};
  std::size_t jones_cap = 20;
  std::size_t conway_cap = 24;
  bool json = false;
};

/// Throws InvalidParams unless both caps are positive and epsilon (if set) and the gap are > 0.
void check_config(const CliConfig& config);

int exit_code(ErrorCode code);

struct SelftestCheck {
  std::string name;
  std::string expected;
  std::string actual;
  bool pass = false;
};

struct SelftestReport {
  Convention convention;
  std::vector<SelftestCheck> checks;

  bool ok() const;
};

/// Calibration oracles (Hopf link, right-handed trefoil, uniqueness of the
/// passing convention) and the involution on every corpus diagram, all built
/// with `convention`.
SelftestReport selftest(const Convention& convention = default_convention());

/// Throws CalibrationDrift naming the first failed check.
void require_pass(const SelftestReport& report);

/// Runs `divide <args...>`; args excludes the program name. Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace divlink::cli
