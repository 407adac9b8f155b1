#include "slice/heavy_search.hpp"

#include <cmath>
#include <stdexcept>

namespace slice {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t stream_key(std::uint64_t seed, std::uint64_t tag,
                         const std::vector<int>& set) {
  std::uint64_t h = mix64(seed ^ 0x736c696365667431ULL);
  h = mix64(h ^ tag);
  for (int e : set) h = mix64(h ^ static_cast<std::uint64_t>(e));
  return h;
}

std::uint64_t Rng::uniform_below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below(0)");
  if ((bound & (bound - 1)) == 0) return next() & (bound - 1);
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  for (;;) {
    const std::uint64_t x = next();
    if (x < limit) return x % bound;
  }
}

QueryFunction::QueryFunction(SliceDomain domain, Evaluator evaluator)
    : domain_(domain), evaluator_(std::move(evaluator)) {
  if (!evaluator_) throw std::invalid_argument("null evaluator");
}

int QueryFunction::evaluate(const SliceElement& x) {
  if (x.weight() != domain_.k())
    throw std::invalid_argument("query point has weight " + std::to_string(x.weight()) +
                                ", expected " + std::to_string(domain_.k()));
  queries_.fetch_add(1, std::memory_order_relaxed);
  const int value = evaluator_(x);
  if (value != 1 && value != -1)
    throw std::domain_error("query function returned " + std::to_string(value) +
                            "; values must be -1 or +1");
  return value;
}

QueryFunction query_function_from_dense(SliceVector values) {
  for (Count i = 0; i < values.size(); ++i)
    if (values[i] != 1.0 && values[i] != -1.0)
      throw std::invalid_argument("dense function entries must be exactly -1 or +1");
  auto data = std::make_shared<SliceVector>(std::move(values));
  auto table = std::make_shared<RankTable>(data->domain().n(), data->domain().k());
  const SliceDomain domain = data->domain();
  return QueryFunction(domain, [data, table](const SliceElement& x) {
    return (*data)[table->rank(x.ones)] > 0.0 ? 1 : -1;
  });
}

SliceVector materialize(QueryFunction& f) {
  SliceVector out = SliceVector::zeros(f.domain());
  Count r = 0;
  SliceElement x;
  for_each_element(f.domain(), [&](const std::vector<int>& ones) {
    x.ones = ones;
    out[r++] = static_cast<double>(f.evaluate(x));
  });
  return out;
}

std::uint64_t default_samples_per_estimate(int n, double tau) {
  const double t2 = tau * tau;
  const double raw = 32.0 * std::log(64.0 * n / t2) / (t2 * t2);
  return static_cast<std::uint64_t>(std::ceil(raw));
}

std::uint64_t default_list_cap(double tau) {
  return static_cast<std::uint64_t>(std::ceil(8.0 / (tau * tau)));
}

void validate_config(const SearchConfig& config) {
  if (!(config.tau > 0.0) || config.tau > 1.0)
    throw std::invalid_argument("tau must lie in (0, 1]");
}

namespace {

std::uint64_t effective_samples(const SearchConfig& config, int n) {
  return config.samples_per_estimate > 0 ? config.samples_per_estimate
                                         : default_samples_per_estimate(n, config.tau);
}

std::uint64_t effective_cap(const SearchConfig& config) {
  return config.list_cap > 0 ? config.list_cap : default_list_cap(config.tau);
}

std::vector<int> checked_bucket(std::vector<int> U, int i, int n) {
  if (i < 0 || i > n) throw std::invalid_argument("prefix length out of range");
  std::sort(U.begin(), U.end());
  for (std::size_t j = 0; j < U.size(); ++j)
    if (U[j] < 1 || U[j] > i || (j > 0 && U[j] == U[j - 1]))
      throw std::invalid_argument("bucket set must lie inside {1.." + std::to_string(i) + "}");
  return U;
}

}  // namespace

BasisPointSampler::BasisPointSampler(int n, const TopSet& S, int level)
    : vector_(apply_up_chain(nullspace_vector(n, S), level)) {
  cdf_.reserve(vector_.size());
  double running = 0.0;
  for (Count i = 0; i < vector_.size(); ++i) {
    running += std::abs(vector_[i]);
    cdf_.push_back(running);
    l2_sq_ += vector_[i] * vector_[i];
  }
  l1_ = running;
  if (l1_ == 0.0)
    throw std::invalid_argument("cannot sample from the zero vector (lift of " +
                                format_set(S.elements()) + " to level " +
                                std::to_string(level) + " of the " +
                                std::to_string(n) + "-cube)");
}

std::pair<SliceElement, int> BasisPointSampler::sample(Rng& rng) const {
  const double u = rng.uniform_unit() * l1_;
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  const Count r = it == cdf_.end() ? static_cast<Count>(cdf_.size()) - 1
                                   : static_cast<Count>(it - cdf_.begin());
  return {unrank_colex(vector_.domain(), r), vector_[r] > 0.0 ? 1 : -1};
}

std::pair<SliceElement, int> sample_restricted_basis_point(int n, const TopSet& S,
                                                           int level, Rng& rng) {
  return BasisPointSampler(n, S, level).sample(rng);
}

BucketSampler::BucketSampler(SliceDomain domain, std::vector<int> bucket, int prefix_len)
    : domain_(domain),
      bucket_(checked_bucket(std::move(bucket), prefix_len, domain.n())),
      prefix_len_(prefix_len),
      bucket_ballot_ok_(satisfies_ballot(bucket_)) {
  const int max_level = std::min(prefix_len_, domain_.k());
  levels_.resize(static_cast<std::size_t>(max_level) + 1);
  if (!bucket_ballot_ok_) return;
  const int usize = static_cast<int>(bucket_.size());
  for (int kk = 0; kk <= max_level; ++kk) {
    // The bucket indexes a basis vector of (prefix_len, kk) only when
    // |U| <= min(kk, prefix_len - kk); the coefficient is 0 otherwise.
    if (usize > std::min(kk, prefix_len_ - kk)) continue;
    Level level;
    level.valid = true;
    level.sampler.emplace(prefix_len_, TopSet(bucket_), kk);
    const double l1 = level.sampler->l1();
    const double l2_sq = level.sampler->l2_sq();
    level.scale = (l1 * l1 / l2_sq) / static_cast<double>(binomial(prefix_len_, kk));
    levels_[static_cast<std::size_t>(kk)] = std::move(level);
  }
}

EstimatorSample BucketSampler::draw(QueryFunction& f, Rng& rng) const {
  EstimatorSample sample;
  const SliceElement x =
      unrank_colex(domain_, rng.uniform_below(domain_.cardinality()));

  sample.suffix.assign(static_cast<std::size_t>(domain_.n() - prefix_len_), 0);
  int prefix_weight = 0;
  for (int p : x.ones) {
    if (p > prefix_len_)
      sample.suffix[static_cast<std::size_t>(p - prefix_len_ - 1)] = 1;
    else
      ++prefix_weight;
  }

  const auto& level = levels_[static_cast<std::size_t>(prefix_weight)];
  if (!level.valid) return sample;  // coefficient is identically 0 here

  auto [y1, s1] = level.sampler->sample(rng);
  auto [y2, s2] = level.sampler->sample(rng);

  // Query f at the lifted points y o z.
  SliceElement lifted;
  lifted.ones.reserve(static_cast<std::size_t>(domain_.k()));
  const auto lift = [&](const SliceElement& y) {
    lifted.ones.assign(y.ones.begin(), y.ones.end());
    for (std::size_t j = 0; j < sample.suffix.size(); ++j)
      if (sample.suffix[j] == 1)
        lifted.ones.push_back(prefix_len_ + 1 + static_cast<int>(j));
    return f.evaluate(lifted);
  };
  const int q1 = lift(y1);
  const int q2 = lift(y2);

  sample.value = level.scale * q1 * q2 * s1 * s2;
  sample.y1 = std::move(y1);
  sample.y2 = std::move(y2);
  return sample;
}

double exact_bucket_weight(const SliceVector& f, std::vector<int> U, int i) {
  const SliceDomain& d = f.domain();
  U = checked_bucket(std::move(U), i, d.n());
  if (!satisfies_ballot(U)) return 0.0;
  const int tail = d.n() - i;
  if (tail > 30) throw domain_too_large_error("too many suffixes to enumerate");

  // Cache the restricted basis vector per reachable level.
  struct Entry {
    bool valid = false;
    SliceVector vector{SliceDomain(0, 0), {0.0}};
    double norm = 0.0;
  };
  std::vector<Entry> cache(static_cast<std::size_t>(std::min(i, d.k())) + 1);
  const int usize = static_cast<int>(U.size());
  for (int kk = 0; kk <= std::min(i, d.k()); ++kk) {
    if (usize > std::min(kk, i - kk)) continue;
    Entry e;
    e.valid = true;
    e.vector = apply_up_chain(nullspace_vector(i, TopSet(U)), kk);
    e.norm = norm2(e.vector);
    cache[static_cast<std::size_t>(kk)] = std::move(e);
  }

  double total = 0.0;
  std::vector<int> z(static_cast<std::size_t>(tail));
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << tail); ++mask) {
    int zw = 0;
    for (int j = 0; j < tail; ++j) {
      z[static_cast<std::size_t>(j)] = static_cast<int>((mask >> j) & 1u);
      zw += z[static_cast<std::size_t>(j)];
    }
    const int kk = d.k() - zw;
    if (kk < 0 || kk > i) continue;
    const auto& entry = cache[static_cast<std::size_t>(kk)];
    if (!entry.valid) continue;
    const auto fz = restrict_suffix(f, z);
    const double c = inner(*fz, entry.vector) / entry.norm;
    total += c * c;
  }
  return total / static_cast<double>(d.cardinality());
}

namespace {

double sampled_bucket_weight(QueryFunction& f, const std::vector<int>& U, int i,
                             const SearchConfig& config) {
  const std::uint64_t samples = effective_samples(config, f.domain().n());
  if (samples == 0) throw std::invalid_argument("sampled mode needs at least one sample");
  if (!satisfies_ballot(U)) return 0.0;  // every sample would be 0
  const BucketSampler sampler(f.domain(), U, i);
  Rng rng(stream_key(config.seed, static_cast<std::uint64_t>(i), U));
  double sum = 0.0;
  for (std::uint64_t s = 0; s < samples; ++s) sum += sampler.draw(f, rng).value;
  return sum / static_cast<double>(samples);
}

}  // namespace

double estimate_bucket_weight(QueryFunction& f, const std::vector<int>& U, int i,
                              const SearchConfig& config) {
  validate_config(config);
  const std::vector<int> bucket = checked_bucket(U, i, f.domain().n());
  if (config.mode == SearchConfig::Mode::exact) {
    check_dense_size(f.domain());
    return exact_bucket_weight(materialize(f), bucket, i);
  }
  return sampled_bucket_weight(f, bucket, i, config);
}

std::vector<std::vector<int>> find_heavy_sets(QueryFunction& f,
                                              const SearchConfig& config) {
  validate_config(config);
  const int n = f.domain().n();
  const double threshold = config.tau * config.tau / 2.0;
  const std::uint64_t cap = effective_cap(config);

  std::optional<SliceVector> dense;
  if (config.mode == SearchConfig::Mode::exact) {
    check_dense_size(f.domain());
    dense.emplace(materialize(f));
  }

  std::vector<std::vector<int>> live;
  live.push_back({});
  for (int i = 0; i < n; ++i) {
    std::vector<std::vector<int>> next;
    for (const std::vector<int>& U : live) {
      for (int child = 0; child < 2; ++child) {
        std::vector<int> candidate = U;
        if (child == 1) candidate.push_back(i + 1);
        const double w =
            dense.has_value()
                ? exact_bucket_weight(*dense, candidate, i + 1)
                : sampled_bucket_weight(f, candidate, i + 1, config);
        if (w >= threshold) {
          next.push_back(std::move(candidate));
          if (next.size() > cap)
            throw list_cap_error(
                "bucket list exceeded the cap of " + std::to_string(cap) +
                " after fixing " + std::to_string(i + 1) +
                " coordinates; estimates are inconsistent with the weight budget");
        }
      }
    }
    live = std::move(next);
  }
  std::sort(live.begin(), live.end(), canonical_set_less);
  return live;
}

}  // namespace slice
