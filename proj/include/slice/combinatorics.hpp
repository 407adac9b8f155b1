#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace slice {

using Count = std::uint64_t;

// Exact C(n, k); 0 outside 0 <= k <= n.  Throws std::overflow_error when the
// value does not fit in 64 bits.
Count binomial(long long n, long long k);

// Thrown when a dense representation would exceed dense_size_limit().
class domain_too_large_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Maximum entry count for dense slice vectors.  Defaults to 10^7; can be
// overridden through the SLICE_SIZE_GUARD environment variable (read once per
// process).
Count dense_size_limit();

// The domain (n, k): length-n binary strings of Hamming weight k, identified
// with the k-subsets of {1..n} (1-based positions of the ones).
class SliceDomain {
 public:
  SliceDomain(int n, int k);

  int n() const noexcept { return n_; }
  int k() const noexcept { return k_; }
  Count cardinality() const { return binomial(n_, k_); }

  // min(k, n-k): bound on the size of a basis index set for this domain.
  int basis_index_bound() const noexcept { return k_ < n_ - k_ ? k_ : n_ - k_; }

  friend bool operator==(const SliceDomain&, const SliceDomain&) = default;
  friend auto operator<=>(const SliceDomain&, const SliceDomain&) = default;

 private:
  int n_;
  int k_;
};

void check_dense_size(const SliceDomain& domain);

// A slice element, stored as the strictly increasing 1-based positions of its
// ones.
struct SliceElement {
  std::vector<int> ones;

  int weight() const noexcept { return static_cast<int>(ones.size()); }

  friend bool operator==(const SliceElement&, const SliceElement&) = default;
};

SliceElement element_from_bits(const std::vector<int>& bits);
std::vector<int> element_to_bits(const SliceElement& x, int n);

// Colexicographic rank: sum over the sorted positions s_1 < ... < s_k of
// C(s_j - 1, j).  All strings with x_n = 0 precede all strings with x_n = 1.
Count rank_colex(const SliceDomain& domain, const SliceElement& x);
SliceElement unrank_colex(const SliceDomain& domain, Count rank);

// Pascal-triangle lookup C(i, j) for 0 <= i <= n, 0 <= j <= k_max, used to
// rank neighbours in O(k) inside operator loops.
class RankTable {
 public:
  RankTable(int n, int k_max);

  Count binom(int i, int j) const noexcept {
    if (j < 0 || j > kmax_ || i < 0 || i > n_) return 0;
    return table_[static_cast<std::size_t>(i) * (kmax_ + 1) + j];
  }
  Count rank(const std::vector<int>& ones) const;

 private:
  int n_;
  int kmax_;
  std::vector<Count> table_;
};

// Visits every element of the domain in colexicographic (= rank) order.  The
// `ones` buffer is reused between calls.
template <typename Fn>
void for_each_element(const SliceDomain& domain, Fn&& fn) {
  const int k = domain.k();
  std::vector<int> ones(static_cast<std::size_t>(k));
  std::iota(ones.begin(), ones.end(), 1);
  const Count total = domain.cardinality();
  for (Count r = 0;;) {
    fn(static_cast<const std::vector<int>&>(ones));
    if (++r == total) break;
    int j = 0;
    while (j + 1 < k && ones[j] + 1 == ones[j + 1]) ++j;
    ++ones[j];
    for (int m = 0; m < j; ++m) ones[m] = m + 1;
  }
}

// A basis index set: strictly increasing elements satisfying s_j >= 2j.
class TopSet {
 public:
  TopSet() = default;
  explicit TopSet(std::vector<int> elements);

  const std::vector<int>& elements() const noexcept { return elements_; }
  int size() const noexcept { return static_cast<int>(elements_.size()); }
  int max_element() const noexcept { return elements_.empty() ? 0 : elements_.back(); }

  friend bool operator==(const TopSet&, const TopSet&) = default;

 private:
  std::vector<int> elements_;
};

bool satisfies_ballot(const std::vector<int>& sorted_elements);

// True iff `elements` (any order, no duplicates) is a subset of {1..n} of size
// at most k whose sorted elements satisfy s_j >= 2j.
bool is_top_set(std::vector<int> elements, int n, int k);

// Canonical order: smaller sets first, colexicographic within a size class.
bool canonical_set_less(const std::vector<int>& a, const std::vector<int>& b);

struct TopSetLess {
  bool operator()(const TopSet& a, const TopSet& b) const {
    return canonical_set_less(a.elements(), b.elements());
  }
};

// All index sets of size <= k_max over {1..n}, in canonical order.  Their
// number per size class i is C(n, i) - C(n, i-1); requires 2*k_max <= n.
std::vector<TopSet> enumerate_top_sets(int n, int k_max);

std::string format_set(const std::vector<int>& elements);

}  // namespace slice
