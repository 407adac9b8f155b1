#include "slice/combinatorics.hpp"

#include <cstdlib>

namespace slice {

Count binomial(long long n, long long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  Count result = 1;
  for (long long i = 1; i <= k; ++i) {
    // result * (n-k+i) is always divisible by i at this point.
    Count factor = static_cast<Count>(n - k + i);
    Count product;
    if (__builtin_mul_overflow(result, factor, &product))
      throw std::overflow_error("binomial(" + std::to_string(n) + ", " +
                                std::to_string(k) + ") exceeds 64 bits");
    result = product / static_cast<Count>(i);
  }
  return result;
}

Count dense_size_limit() {
  static const Count limit = [] {
    if (const char* s = std::getenv("SLICE_SIZE_GUARD")) {
      char* end = nullptr;
      unsigned long long v = std::strtoull(s, &end, 10);
      if (end != s && *end == '\0' && v > 0) return static_cast<Count>(v);
    }
    return static_cast<Count>(10'000'000);
  }();
  return limit;
}

SliceDomain::SliceDomain(int n, int k) : n_(n), k_(k) {
  if (n < 0 || k < 0 || k > n)
    throw std::invalid_argument("slice domain requires 0 <= k <= n, got (" +
                                std::to_string(n) + ", " + std::to_string(k) + ")");
}

void check_dense_size(const SliceDomain& domain) {
  const Count size = domain.cardinality();
  if (size > dense_size_limit())
    throw domain_too_large_error(
        "dense representation of (" + std::to_string(domain.n()) + ", " +
        std::to_string(domain.k()) + ") needs " + std::to_string(size) +
        " entries, over the limit of " + std::to_string(dense_size_limit()));
}

SliceElement element_from_bits(const std::vector<int>& bits) {
  SliceElement x;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != 0 && bits[i] != 1)
      throw std::invalid_argument("bit values must be 0 or 1");
    if (bits[i] == 1) x.ones.push_back(static_cast<int>(i) + 1);
  }
  return x;
}

std::vector<int> element_to_bits(const SliceElement& x, int n) {
  std::vector<int> bits(static_cast<std::size_t>(n), 0);
  for (int p : x.ones) {
    if (p < 1 || p > n) throw std::invalid_argument("position outside 1..n");
    bits[static_cast<std::size_t>(p) - 1] = 1;
  }
  return bits;
}

namespace {

void validate_element(const SliceDomain& domain, const SliceElement& x) {
  if (x.weight() != domain.k())
    throw std::invalid_argument("element weight " + std::to_string(x.weight()) +
                                " does not match k = " + std::to_string(domain.k()));
  int prev = 0;
  for (int p : x.ones) {
    if (p <= prev || p > domain.n())
      throw std::invalid_argument("element positions must be strictly increasing within 1.." +
                                  std::to_string(domain.n()));
    prev = p;
  }
}

}  // namespace

Count rank_colex(const SliceDomain& domain, const SliceElement& x) {
  validate_element(domain, x);
  Count rank = 0;
  for (std::size_t j = 0; j < x.ones.size(); ++j)
    rank += binomial(x.ones[j] - 1, static_cast<long long>(j) + 1);
  return rank;
}

SliceElement unrank_colex(const SliceDomain& domain, Count rank) {
  if (rank >= domain.cardinality())
    throw std::out_of_range("rank " + std::to_string(rank) + " out of range for (" +
                            std::to_string(domain.n()) + ", " + std::to_string(domain.k()) + ")");
  SliceElement x;
  x.ones.resize(static_cast<std::size_t>(domain.k()));
  int hi = domain.n();
  for (int j = domain.k(); j >= 1; --j) {
    // Largest c in [j, hi] with C(c-1, j) <= rank; C(.-1, j) is increasing.
    int lo = j, best = j;
    while (lo <= hi) {
      int mid = lo + (hi - lo) / 2;
      if (binomial(mid - 1, j) <= rank) {
        best = mid;
        lo = mid + 1;
      } else {
        hi = mid - 1;
      }
    }
    rank -= binomial(best - 1, j);
    x.ones[static_cast<std::size_t>(j) - 1] = best;
    hi = best - 1;
  }
  return x;
}

RankTable::RankTable(int n, int k_max)
    : n_(n), kmax_(k_max),
      table_(static_cast<std::size_t>(n + 1) * (k_max + 1), 0) {
  for (int i = 0; i <= n; ++i) {
    table_[static_cast<std::size_t>(i) * (kmax_ + 1)] = 1;
    for (int j = 1; j <= std::min(i, kmax_); ++j) {
      table_[static_cast<std::size_t>(i) * (kmax_ + 1) + j] =
          binom(i - 1, j - 1) + binom(i - 1, j);
    }
  }
}

Count RankTable::rank(const std::vector<int>& ones) const {
  Count r = 0;
  for (std::size_t j = 0; j < ones.size(); ++j)
    r += binom(ones[j] - 1, static_cast<int>(j) + 1);
  return r;
}

TopSet::TopSet(std::vector<int> elements) : elements_(std::move(elements)) {
  std::sort(elements_.begin(), elements_.end());
  if (!satisfies_ballot(elements_))
    throw std::invalid_argument("not a top set: " + format_set(elements_) +
                                " violates s_j >= 2j");
}

bool satisfies_ballot(const std::vector<int>& sorted_elements) {
  int prev = 0;
  for (std::size_t j = 0; j < sorted_elements.size(); ++j) {
    const int s = sorted_elements[j];
    if (s <= prev) return false;  // not strictly increasing (or below 1)
    if (static_cast<long long>(s) < 2 * (static_cast<long long>(j) + 1)) return false;
    prev = s;
  }
  return true;
}

bool is_top_set(std::vector<int> elements, int n, int k) {
  if (static_cast<long long>(elements.size()) > k) return false;
  std::sort(elements.begin(), elements.end());
  if (!elements.empty() && elements.back() > n) return false;
  return satisfies_ballot(elements);
}

bool canonical_set_less(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t idx = a.size(); idx-- > 0;) {
    if (a[idx] != b[idx]) return a[idx] < b[idx];
  }
  return false;
}

std::vector<TopSet> enumerate_top_sets(int n, int k_max) {
  if (k_max < 0 || 2 * k_max > n)
    throw std::invalid_argument("enumerate_top_sets requires 0 <= k_max <= n/2");
  std::vector<TopSet> sets;
  for (int i = 0; i <= k_max; ++i) {
    for_each_element(SliceDomain(n, i), [&](const std::vector<int>& ones) {
      if (satisfies_ballot(ones)) sets.push_back(TopSet(ones));
    });
  }
  return sets;
}

std::string format_set(const std::vector<int>& elements) {
  std::string out = "{";
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(elements[i]);
  }
  out += "}";
  return out;
}

}  // namespace slice
