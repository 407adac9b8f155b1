#include "slice/restriction.hpp"

#include <cmath>
#include <stdexcept>

namespace slice {

std::optional<SliceVector> restrict_suffix(const SliceVector& f,
                                           const std::vector<int>& z) {
  const SliceDomain& d = f.domain();
  const int t = static_cast<int>(z.size());
  if (t > d.n()) throw std::invalid_argument("suffix longer than the cube");
  int zw = 0;
  for (int b : z) {
    if (b != 0 && b != 1) throw std::invalid_argument("suffix bits must be 0 or 1");
    zw += b;
  }
  const int nn = d.n() - t;
  const int kk = d.k() - zw;
  if (kk < 0 || kk > nn) return std::nullopt;

  const SliceDomain target(nn, kk);
  check_dense_size(target);
  std::vector<int> suffix_ones;
  for (int j = 0; j < t; ++j)
    if (z[static_cast<std::size_t>(j)] == 1) suffix_ones.push_back(nn + 1 + j);

  const RankTable table(d.n(), d.k());
  SliceVector out = SliceVector::zeros(target);
  std::vector<int> combined;
  combined.reserve(static_cast<std::size_t>(d.k()));
  Count r = 0;
  for_each_element(target, [&](const std::vector<int>& ones) {
    combined.assign(ones.begin(), ones.end());
    combined.insert(combined.end(), suffix_ones.begin(), suffix_ones.end());
    out[r++] = f[table.rank(combined)];
  });
  return out;
}

LiftedPair lift_pair(double f0_at_S, double f1_at_S, int n, int k, const TopSet& S) {
  if (n < 1 || k < 0 || k > n) throw std::invalid_argument("bad (n, k)");
  const int i = S.size();
  const int bound = std::min(k, n - k);
  if (i > bound || S.max_element() > n - 1)
    throw std::invalid_argument("index set " + format_set(S.elements()) +
                                " is not valid for a one-coordinate lift on (" +
                                std::to_string(n) + ", " + std::to_string(k) + ")");
  LiftedPair out;
  if (k == 0 || i == k) {
    out.coefficient = f0_at_S;
  } else if (k == n || i == n - k) {
    out.coefficient = f1_at_S;
  } else {
    const double a = std::sqrt(static_cast<double>(n - k - i));
    const double b = std::sqrt(static_cast<double>(k - i));
    const double d = std::sqrt(static_cast<double>(n - 2 * i));
    out.coefficient = (a * f0_at_S + b * f1_at_S) / d;
    out.coefficient_with_n = (-b * f0_at_S + a * f1_at_S) / d;
  }
  return out;
}

std::pair<double, double> project_pair(double at_S, double at_S_with_n, int n, int k,
                                       const TopSet& S) {
  if (n < 1 || k < 0 || k > n) throw std::invalid_argument("bad (n, k)");
  const int i = S.size();
  if (i >= std::min(k, n - k) || S.max_element() > n - 1)
    throw std::invalid_argument("project_pair requires |S| < min(k, n-k)");
  const double a = std::sqrt(static_cast<double>(n - k - i));
  const double b = std::sqrt(static_cast<double>(k - i));
  const double d = std::sqrt(static_cast<double>(n - 2 * i));
  const double f0 = (a * at_S - b * at_S_with_n) / d;
  const double f1 = (b * at_S + a * at_S_with_n) / d;
  return {f0, f1};
}

double restricted_weight_exact(const SliceVector& f, std::vector<int> U, int i) {
  const SliceDomain& d = f.domain();
  if (i < 0 || i > d.n()) throw std::invalid_argument("prefix length out of range");
  std::sort(U.begin(), U.end());
  for (std::size_t j = 0; j < U.size(); ++j)
    if (U[j] < 1 || U[j] > i || (j > 0 && U[j] == U[j - 1]))
      throw std::invalid_argument("bucket set must lie inside {1.." + std::to_string(i) + "}");
  const int tail = d.n() - i;
  if (tail > 30) throw domain_too_large_error("too many suffixes to enumerate");

  // Route one: group the full spectrum by prefix.
  double by_spectrum = 0.0;
  const Spectrum full = transform(f);
  for (const auto& [S, c] : full.coefficients()) {
    const auto& key = S.elements();
    std::size_t idx = 0;
    bool match = true;
    for (int e : key) {
      if (e > i) break;
      if (idx >= U.size() || U[idx] != e) {
        match = false;
        break;
      }
      ++idx;
    }
    if (match && idx == U.size()) by_spectrum += c * c;
  }

  // Route two: sum the squared coefficient at U over every suffix.
  double by_restrictions = 0.0;
  std::vector<int> z(static_cast<std::size_t>(tail));
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << tail); ++mask) {
    for (int j = 0; j < tail; ++j)
      z[static_cast<std::size_t>(j)] = static_cast<int>((mask >> j) & 1u);
    const double c = coefficient(restrict_suffix(f, z), U);
    by_restrictions += c * c;
  }

  const double scale = std::max({1.0, std::abs(by_spectrum), std::abs(by_restrictions)});
  if (std::abs(by_spectrum - by_restrictions) > 1e-9 * scale)
    throw std::logic_error("bucket weight routes disagree: " +
                           std::to_string(by_spectrum) + " vs " +
                           std::to_string(by_restrictions));
  return by_spectrum;
}

}  // namespace slice
