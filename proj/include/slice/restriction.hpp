#pragma once

#include <optional>
#include <utility>

#include "slice/fourier.hpp"

namespace slice {

// Restriction of f on (n, k) by fixing the last t coordinates to the bits z
// (z[j] is the value of coordinate n-t+1+j).  The result lives on
// (n-t, k - weight(z)); nullopt when that weight is out of range (the empty
// function).
std::optional<SliceVector> restrict_suffix(const SliceVector& f,
                                           const std::vector<int>& z);

struct LiftedPair {
  double coefficient = 0.0;                  // at S
  std::optional<double> coefficient_with_n;  // at S + {n}; only if |S| < min(k, n-k)
};

// Coefficients of f on (n, k) at S and S + {n} from the coefficients of its
// two one-coordinate restrictions f0 (x_n = 0) and f1 (x_n = 1) at S:
//   f^(S)      = (sqrt(n-k-i) f0 + sqrt(k-i) f1) / sqrt(n-2i)
//   f^(S+{n})  = (-sqrt(k-i) f0 + sqrt(n-k-i) f1) / sqrt(n-2i)
// with the degenerate levels dispatched first: k = 0 or n copies one side,
// |S| = k gives f0, |S| = n-k gives f1.  Requires S inside {1..n-1} with
// |S| <= min(k, n-k).
LiftedPair lift_pair(double f0_at_S, double f1_at_S, int n, int k, const TopSet& S);

// Inverse rotation: recovers (f0, f1) coefficients at S from the pair
// (f^(S), f^(S+{n})).  Requires |S| < min(k, n-k).
std::pair<double, double> project_pair(double at_S, double at_S_with_n, int n, int k,
                                       const TopSet& S);

// Total squared coefficient mass of the bucket {U + T : T inside {i+1..n}}:
// sum over T of f^(U+T)^2.  Computed from the full spectrum of f and checked
// against the sum over all suffixes z of length n-i of the squared restricted
// coefficient at U; the two routes must agree to 1e-9 (relative).
double restricted_weight_exact(const SliceVector& f, std::vector<int> U, int i);

}  // namespace slice
