#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nlohmann/json.hpp"
#include "pcode/codes.hpp"
#include "pcode/groups.hpp"

namespace pcode {

struct CheckResult {
  std::string name;
  bool pass = false;
  nlohmann::ordered_json details;
  double millis = 0.0;
};

struct ReproReport {
  unsigned n = 0;
  std::uint64_t q = 0;
  std::string modulus_hex;
  std::vector<CheckResult> checks;
  bool overall = false;

  nlohmann::ordered_json to_json(bool with_timings = false) const;
};

/// The witness g = ((0, alpha+s)^T, [[1, alpha],[0, 1]]) that falsifies
/// Phi(AGL(2,q^2), H_q).
AffineElement phi_failure_witness(const AffineGroup& agl);

/// For g = (a,A) in the normalizer with g^2 in H_q, produces h = (b, I_2)
/// with (gh)^2 = e by the two-case closed form (A = I_2 gives b = 0; else the
/// unipotent and the t != 1 branch). The postcondition is re-verified.
AffineElement constructive_h_witness(const AffineGroup& agl, const AffineElement& g);

struct ReproOptions {
  std::uint64_t seed = 0;
  bool full_g_scan = false;  // full Phi(G) scan (n <= 2 only)
};

CheckResult verify_phi_failure(const AffineGroup& agl, const HqSubgroup& hq,
                               bool full_g_scan);
CheckResult verify_normalizer(const AffineGroup& agl, const HqSubgroup& hq,
                              std::uint64_t seed);

/// Replays the whole argument for 1 <= n <= 3 and reports per-check results.
ReproReport reproduce(unsigned n, const ReproOptions& opts = {});

}  // namespace pcode
