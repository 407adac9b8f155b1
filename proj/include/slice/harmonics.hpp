#pragma once

#include <map>
#include <memory>
#include <optional>

#include "slice/operators.hpp"

namespace slice {

// The recursive generator of the level-|S| down-nullspace attached to the
// index set S.  Defined over the cube on {1..n} by
//   |S| = 0:        the single entry 1 at level 0,
//   n not in S:     [ vector over {1..n-1} ; zero block for x_n = 1 ],
//   n = max(S):     [ -(up lift of the {n}-removed vector)/(n - 2|S| + 1) ;
//                     the {n}-removed vector ].
// Requires S to be a valid index set inside {1..n}.
SliceVector nullspace_vector(int n, const TopSet& S);

// Squared 2-norm of nullspace_vector(n, S); independent of n:
// product over j of (s_j - 2j + 2) / (s_j - 2j + 1).
double nullspace_norm_sq(const TopSet& S);

// Closed form for the squared 2-norm of the chain lift of nullspace_vector to
// level k: (n-2i)! (k-i)! / (n-k-i)! times nullspace_norm_sq, i = |S|;
// zero when k > n - i.
double lifted_norm_sq(int n, int k, const TopSet& S);

struct BasisVector {
  TopSet index;
  int level = 0;            // the k it lives on
  SliceVector vector;       // unnormalised chain lift of the nullspace vector
  double norm_sq_closed = 0.0;
};

// The basis vector of (n, k) indexed by S; requires |S| <= min(k, n-k).
BasisVector basis_vector(const SliceDomain& domain, const TopSet& S);

// Full orthogonal eigenbasis of the domain, in canonical index order.  The
// vectors are pairwise orthogonal, |H| = C(n, k) of them, and each is an
// adjacency eigenvector with eigenvalue (n-k-|S|)(k-|S|+1) - (n-k).
std::vector<BasisVector> orthonormal_basis(const SliceDomain& domain);

// Cached basis for one domain, with computed norms and index lookup.
class Basis {
 public:
  explicit Basis(const SliceDomain& domain);

  const SliceDomain& domain() const noexcept { return domain_; }
  const std::vector<BasisVector>& vectors() const noexcept { return vectors_; }
  const std::vector<double>& norms() const noexcept { return norms_; }
  std::optional<std::size_t> position(const TopSet& S) const;

 private:
  SliceDomain domain_;
  std::vector<BasisVector> vectors_;
  std::vector<double> norms_;
  std::map<TopSet, std::size_t, TopSetLess> positions_;
};

// Process-wide basis cache.  Concurrent first calls may race to construct;
// one result is retained.
std::shared_ptr<const Basis> shared_basis(const SliceDomain& domain);

}  // namespace slice
