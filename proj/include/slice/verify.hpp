#pragma once

#include <string>
#include <vector>

#include "slice/heavy_search.hpp"

namespace slice::verify {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;  // worst deviation, or the failure description
};

struct Options {
  int random_vectors = 100;     // for the operator identities
  int random_functions = 20;    // for the restriction displays
  int structure_functions = 5;  // for the full suffix-sum identity
  int estimator_samples = 20000;
  std::uint64_t seed = 0x5eedf00dULL;
};

// Uniform entries in [-1, 1).
SliceVector random_vector(const SliceDomain& domain, Rng& rng);
// Uniform +-1 entries.
SliceVector random_pm1(const SliceDomain& domain, Rng& rng);

CheckResult check_diffuddu(const SliceDomain& d, int vectors, Rng& rng);
CheckResult check_adjoint(const SliceDomain& d, int vectors, Rng& rng);
CheckResult check_nulltoeig(const SliceDomain& d);
CheckResult check_normofup(const SliceDomain& d, Rng& rng);
CheckResult check_ortho(const SliceDomain& d, Rng& rng);
CheckResult check_characnull(const SliceDomain& d);
CheckResult check_characortho(const SliceDomain& d);
CheckResult check_normofchi(const SliceDomain& d);
CheckResult check_norm(const SliceDomain& d);
CheckResult check_gram(const SliceDomain& d);
CheckResult check_eigenvalue(const SliceDomain& d);
CheckResult check_parseval_roundtrip(const SliceDomain& d, int vectors, Rng& rng);
CheckResult check_restrict(const SliceDomain& d, int functions, Rng& rng);
CheckResult check_structure(const SliceDomain& d, int functions, Rng& rng);
CheckResult check_estimator_bounded(const SliceDomain& d, int samples, Rng& rng);
CheckResult check_estimator_split(const SliceDomain& d, Rng& rng);

// The full suite for one domain, in a fixed order.
std::vector<CheckResult> claim_checks(const SliceDomain& d, const Options& options);

}  // namespace slice::verify
