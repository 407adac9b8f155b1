#pragma once

#include <atomic>
#include <functional>

#include "slice/restriction.hpp"
#include "slice/rng.hpp"

namespace slice {

// A +-1 valued function accessed through point queries, with a query counter.
// Evaluation is safe to call concurrently when the wrapped evaluator is.
class QueryFunction {
 public:
  using Evaluator = std::function<int(const SliceElement&)>;

  QueryFunction(SliceDomain domain, Evaluator evaluator);

  const SliceDomain& domain() const noexcept { return domain_; }

  // Returns -1 or +1; throws if the evaluator produces anything else.
  int evaluate(const SliceElement& x);

  std::uint64_t query_count() const noexcept { return queries_.load(); }
  void reset_query_count() noexcept { queries_.store(0); }

 private:
  SliceDomain domain_;
  Evaluator evaluator_;
  std::atomic<std::uint64_t> queries_{0};
};

// Wraps a dense vector whose entries must all be exactly -1 or +1.
QueryFunction query_function_from_dense(SliceVector values);

// Evaluates f everywhere (C(n, k) queries).
SliceVector materialize(QueryFunction& f);

class list_cap_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SearchConfig {
  enum class Mode { exact, sampled };

  double tau = 0.1;  // in (0, 1]
  Mode mode = Mode::exact;
  std::uint64_t samples_per_estimate = 0;  // 0: default formula below
  std::uint64_t seed = 0;
  std::uint64_t list_cap = 0;  // 0: ceil(8 / tau^2)
};

// ceil(32 * ln(64 n / tau^2) / tau^4): enough samples for per-call additive
// error tau^2/4 with margin.
std::uint64_t default_samples_per_estimate(int n, double tau);
std::uint64_t default_list_cap(double tau);
void validate_config(const SearchConfig& config);

// One draw of the bucket-weight estimator: a uniform slice element provides
// the suffix z, two points are drawn from the restricted basis vector, and
// the product of the two queried values is reweighted.  Always in [-1, 1].
struct EstimatorSample {
  std::vector<int> suffix;   // bits of z (coordinates i+1 .. n)
  SliceElement y1, y2;       // points of the restricted domain (empty if degenerate)
  double value = 0.0;
};

// Point sampler for one lifted vector v over (n', level): draws y with
// probability |v_y| / ||v||_1 and reports sign(v_y).  Throws if v is zero.
class BasisPointSampler {
 public:
  BasisPointSampler(int n, const TopSet& S, int level);

  std::pair<SliceElement, int> sample(Rng& rng) const;

  const SliceVector& vector() const noexcept { return vector_; }
  double l1() const noexcept { return l1_; }
  double l2_sq() const noexcept { return l2_sq_; }

 private:
  SliceVector vector_;
  std::vector<double> cdf_;
  double l1_ = 0.0;
  double l2_sq_ = 0.0;
};

std::pair<SliceElement, int> sample_restricted_basis_point(int n, const TopSet& S,
                                                           int level, Rng& rng);

// Per-bucket sampling context: the lifted vectors for every reachable
// restricted level are built once and reused across draws.
class BucketSampler {
 public:
  BucketSampler(SliceDomain domain, std::vector<int> bucket, int prefix_len);

  // Issues exactly two point queries, or none when the sample is degenerate
  // (bucket invalid for the drawn restricted level; the value is then 0).
  EstimatorSample draw(QueryFunction& f, Rng& rng) const;

  const std::vector<int>& bucket() const noexcept { return bucket_; }
  int prefix_len() const noexcept { return prefix_len_; }

 private:
  struct Level {
    bool valid = false;
    std::optional<BasisPointSampler> sampler;
    double scale = 0.0;  // ||v||_1^2 / ||v||_2^2 / C(prefix_len, level)
  };

  SliceDomain domain_;
  std::vector<int> bucket_;
  int prefix_len_;
  bool bucket_ballot_ok_ = false;
  std::vector<Level> levels_;  // indexed by restricted weight k - |z|
};

// Normalised bucket weight W(U, i) = sum over T inside {i+1..n} of
// f^(U+T)^2 / C(n, k).  Exact mode materialises f and sums the squared
// restricted coefficient over every suffix; sampled mode averages
// samples_per_estimate estimator draws on a stream derived from
// (seed, i, U).
double estimate_bucket_weight(QueryFunction& f, const std::vector<int>& U, int i,
                              const SearchConfig& config);

// Same, over an already materialised function (no queries).
double exact_bucket_weight(const SliceVector& f, std::vector<int> U, int i);

// Level-by-level heavy-coefficient search.  Starting from the empty bucket,
// each level keeps the children whose estimated weight reaches tau^2/2.
// Exact mode guarantees: every U with |f^(U)| >= tau sqrt(C(n,k)) is listed,
// and every listed U has |f^(U)| >= (tau/2) sqrt(C(n,k)).  Throws
// list_cap_error when the working list exceeds the cap.
std::vector<std::vector<int>> find_heavy_sets(QueryFunction& f,
                                              const SearchConfig& config);

}  // namespace slice
