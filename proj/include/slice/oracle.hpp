#pragma once

#include <Eigen/Dense>

#include "slice/verify.hpp"

namespace slice::oracle {

// Dense reference implementations, built entry-by-entry from the defining
// subset relations rather than from the scatter loops of the library proper.
// Test and audit use only; everything here is dense and slow on purpose.

// One-level raise from `domain` (n, k) to (n, k+1): rows indexed by weight
// k+1 in colex order, columns by the domain, entry 1 iff the column element
// is a subset of the row element.
Eigen::MatrixXd dense_up_matrix(const SliceDomain& domain);

// One-level lowering from `domain` (n, k) to (n, k-1): entry 1 iff the row
// element is a subset of the column element.
Eigen::MatrixXd dense_down_matrix(const SliceDomain& domain);

// Distance-2 graph adjacency on the slice: entry 1 iff the two elements
// share exactly k-1 ones.
Eigen::MatrixXd dense_adjacency_matrix(const SliceDomain& domain);

// Ascending eigenvalues of the dense adjacency, from a standard symmetric
// eigensolve.
std::vector<double> dense_spectrum(const SliceDomain& domain);

// Closed-form adjacency eigenvalues with multiplicity C(n,i) - C(n,i-1) at
// index-set size i, ascending, for comparison against dense_spectrum.
std::vector<double> predicted_spectrum(const SliceDomain& domain);

// Mean of the two-point bucket-weight estimator, computed by literal
// enumeration of every (suffix, y1, y2) outcome weighted by its exact
// probability.  The lifted vectors are built through the dense matrices
// above, so this shares no code path with the sampler.  Requires n <= 8.
double exhaustive_estimator_mean(const SliceVector& f, const std::vector<int>& U,
                                 int i);

// Dense-route audit for one domain: operator agreement on random vectors,
// Gram identity via matrix product, adjacency spectrum match, and the
// estimator mean against the exact bucket weight.
std::vector<verify::CheckResult> deep_checks(const SliceDomain& domain,
                                             const verify::Options& options);

}  // namespace slice::oracle
