#include "slice/operators.hpp"

#include <stdexcept>

namespace slice {

namespace {

// Rank of ones with `p` inserted (p not in ones, insertion index `idx`):
// entries before idx keep their 1-based index, p takes idx+1, the rest shift
// up by one.
Count rank_with_inserted(const RankTable& table, const std::vector<int>& ones,
                         std::size_t idx, int p) {
  Count r = 0;
  for (std::size_t j = 0; j < idx; ++j)
    r += table.binom(ones[j] - 1, static_cast<int>(j) + 1);
  r += table.binom(p - 1, static_cast<int>(idx) + 1);
  for (std::size_t j = idx; j < ones.size(); ++j)
    r += table.binom(ones[j] - 1, static_cast<int>(j) + 2);
  return r;
}

// Rank of ones with the element at `skip` removed.
Count rank_with_removed(const RankTable& table, const std::vector<int>& ones,
                        std::size_t skip) {
  Count r = 0;
  for (std::size_t j = 0; j < skip; ++j)
    r += table.binom(ones[j] - 1, static_cast<int>(j) + 1);
  for (std::size_t j = skip + 1; j < ones.size(); ++j)
    r += table.binom(ones[j] - 1, static_cast<int>(j));
  return r;
}

}  // namespace

SliceVector apply_up(const SliceVector& v) {
  const SliceDomain& d = v.domain();
  if (d.k() == d.n())
    throw std::invalid_argument("apply_up: no level above k = n");
  const SliceDomain up(d.n(), d.k() + 1);
  SliceVector out = SliceVector::zeros(up);
  const RankTable table(d.n(), d.k() + 1);
  Count r = 0;
  for_each_element(d, [&](const std::vector<int>& ones) {
    const double val = v[r++];
    if (val == 0.0) return;
    std::size_t idx = 0;
    for (int p = 1; p <= d.n(); ++p) {
      if (idx < ones.size() && ones[idx] == p) {
        ++idx;
        continue;
      }
      out[rank_with_inserted(table, ones, idx, p)] += val;
    }
  });
  return out;
}

SliceVector apply_down(const SliceVector& v) {
  const SliceDomain& d = v.domain();
  if (d.k() == 0)
    throw std::invalid_argument("apply_down: no level below k = 0");
  const SliceDomain down(d.n(), d.k() - 1);
  SliceVector out = SliceVector::zeros(down);
  const RankTable table(d.n(), d.k());
  Count r = 0;
  for_each_element(d, [&](const std::vector<int>& ones) {
    const double val = v[r++];
    if (val == 0.0) return;
    for (std::size_t j = 0; j < ones.size(); ++j)
      out[rank_with_removed(table, ones, j)] += val;
  });
  return out;
}

SliceVector apply_up_chain(const SliceVector& v, int target_level) {
  if (target_level < v.domain().k() || target_level > v.domain().n())
    throw std::invalid_argument("apply_up_chain: target level out of range");
  SliceVector result = v;
  while (result.domain().k() < target_level) result = apply_up(result);
  return result;
}

SliceVector apply_down_chain(const SliceVector& v, int target_level) {
  if (target_level > v.domain().k() || target_level < 0)
    throw std::invalid_argument("apply_down_chain: target level out of range");
  SliceVector result = v;
  while (result.domain().k() > target_level) result = apply_down(result);
  return result;
}

SliceVector apply_up_then_down(const SliceVector& v) {
  if (v.domain().k() == v.domain().n()) return SliceVector::zeros(v.domain());
  return apply_down(apply_up(v));
}

SliceVector apply_down_then_up(const SliceVector& v) {
  if (v.domain().k() == 0) return SliceVector::zeros(v.domain());
  return apply_up(apply_down(v));
}

SliceVector apply_adjacency(const SliceVector& v) {
  const SliceDomain& d = v.domain();
  SliceVector out = SliceVector::zeros(d);
  const RankTable table(d.n(), d.k());
  std::vector<int> reduced(d.k() > 0 ? static_cast<std::size_t>(d.k()) - 1 : 0);
  Count r = 0;
  for_each_element(d, [&](const std::vector<int>& ones) {
    const double val = v[r++];
    if (val == 0.0) return;
    for (std::size_t j = 0; j < ones.size(); ++j) {
      const int removed = ones[j];
      reduced.clear();
      for (std::size_t m = 0; m < ones.size(); ++m)
        if (m != j) reduced.push_back(ones[m]);
      std::size_t idx = 0;
      for (int p = 1; p <= d.n(); ++p) {
        if (idx < reduced.size() && reduced[idx] == p) {
          ++idx;
          continue;
        }
        if (p == removed) continue;
        out[rank_with_inserted(table, reduced, idx, p)] += val;
      }
    }
  });
  return out;
}

}  // namespace slice
