#include "slice/harmonics.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>

namespace slice {

SliceVector nullspace_vector(int n, const TopSet& S) {
  if (!is_top_set(S.elements(), n, S.size()))
    throw std::invalid_argument("index set " + format_set(S.elements()) +
                                " is not valid inside {1.." + std::to_string(n) + "}");
  SliceVector v(SliceDomain(0, 0), {1.0});
  const auto& s = S.elements();
  std::size_t next = 0;
  for (int m = 1; m <= n; ++m) {
    const int level = static_cast<int>(next);
    if (next < s.size() && s[next] == m) {
      // m joins the index set: top block (x_m = 0) is the scaled negative
      // lift, bottom block (x_m = 1) is the previous vector.
      const SliceVector lifted = apply_up(v);
      const double denom = static_cast<double>(m - 2 * (level + 1) + 1);
      std::vector<double> values;
      values.reserve(lifted.size() + v.size());
      for (Count i = 0; i < lifted.size(); ++i) values.push_back(-lifted[i] / denom);
      for (Count i = 0; i < v.size(); ++i) values.push_back(v[i]);
      v = SliceVector(SliceDomain(m, level + 1), std::move(values));
      ++next;
    } else {
      // m stays out: zero block for the strings with x_m = 1.
      const Count zero_block = binomial(m - 1, level - 1);
      std::vector<double> values;
      values.reserve(v.size() + zero_block);
      for (Count i = 0; i < v.size(); ++i) values.push_back(v[i]);
      values.insert(values.end(), zero_block, 0.0);
      v = SliceVector(SliceDomain(m, level), std::move(values));
    }
  }
  return v;
}

double nullspace_norm_sq(const TopSet& S) {
  double product = 1.0;
  const auto& s = S.elements();
  for (std::size_t j = 0; j < s.size(); ++j) {
    const double offset = static_cast<double>(s[j]) - 2.0 * (static_cast<double>(j) + 1.0);
    product *= (offset + 2.0) / (offset + 1.0);
  }
  return product;
}

double lifted_norm_sq(int n, int k, const TopSet& S) {
  const int i = S.size();
  if (k < i || k > n)
    throw std::invalid_argument("lift level out of range");
  if (k > n - i) return 0.0;
  // (n-2i)! / (n-k-i)! = product of the k-i integers above n-k-i.
  double factor = 1.0;
  for (int j = n - k - i + 1; j <= n - 2 * i; ++j) factor *= static_cast<double>(j);
  for (int j = 2; j <= k - i; ++j) factor *= static_cast<double>(j);  // (k-i)!
  return factor * nullspace_norm_sq(S);
}

BasisVector basis_vector(const SliceDomain& domain, const TopSet& S) {
  if (S.size() > domain.basis_index_bound())
    throw std::invalid_argument("index set " + format_set(S.elements()) +
                                " is too large for (" + std::to_string(domain.n()) +
                                ", " + std::to_string(domain.k()) + ")");
  SliceVector lifted = apply_up_chain(nullspace_vector(domain.n(), S), domain.k());
  const double closed = lifted_norm_sq(domain.n(), domain.k(), S);
  return BasisVector{S, domain.k(), std::move(lifted), closed};
}

std::vector<BasisVector> orthonormal_basis(const SliceDomain& domain) {
  check_dense_size(domain);
  std::vector<BasisVector> basis;
  for (const TopSet& S : enumerate_top_sets(domain.n(), domain.basis_index_bound()))
    basis.push_back(basis_vector(domain, S));
  return basis;
}

Basis::Basis(const SliceDomain& domain)
    : domain_(domain), vectors_(orthonormal_basis(domain)) {
  norms_.reserve(vectors_.size());
  for (std::size_t i = 0; i < vectors_.size(); ++i) {
    norms_.push_back(norm2(vectors_[i].vector));
    positions_.emplace(vectors_[i].index, i);
  }
}

std::optional<std::size_t> Basis::position(const TopSet& S) const {
  auto it = positions_.find(S);
  if (it == positions_.end()) return std::nullopt;
  return it->second;
}

namespace {
std::mutex g_basis_mutex;
std::map<SliceDomain, std::shared_ptr<const Basis>>& basis_cache() {
  static std::map<SliceDomain, std::shared_ptr<const Basis>> cache;
  return cache;
}
}  // namespace

std::shared_ptr<const Basis> shared_basis(const SliceDomain& domain) {
  {
    std::lock_guard<std::mutex> lock(g_basis_mutex);
    auto it = basis_cache().find(domain);
    if (it != basis_cache().end()) return it->second;
  }
  auto built = std::make_shared<const Basis>(domain);
  std::lock_guard<std::mutex> lock(g_basis_mutex);
  auto [it, inserted] = basis_cache().try_emplace(domain, std::move(built));
  return it->second;
}

}  // namespace slice
