#pragma once

#include <cmath>
#include <vector>

#include "slice/combinatorics.hpp"

namespace slice {

// A dense real-valued function on one slice domain, indexed by colex rank.
class SliceVector {
 public:
  SliceVector(SliceDomain domain, std::vector<double> values);

  static SliceVector zeros(const SliceDomain& domain);
  static SliceVector constant(const SliceDomain& domain, double value);

  const SliceDomain& domain() const noexcept { return domain_; }
  Count size() const noexcept { return values_.size(); }

  double operator[](Count i) const { return values_[i]; }
  double& operator[](Count i) { return values_[i]; }

  const std::vector<double>& values() const noexcept { return values_; }
  std::vector<double>& values() noexcept { return values_; }

 private:
  SliceDomain domain_;
  std::vector<double> values_;
};

double inner(const SliceVector& a, const SliceVector& b);
double norm_sq(const SliceVector& v);
double norm1(const SliceVector& v);
inline double norm2(const SliceVector& v) { return std::sqrt(norm_sq(v)); }

// max-norm of (a - b); domains must match.
double max_abs_diff(const SliceVector& a, const SliceVector& b);

}  // namespace slice
