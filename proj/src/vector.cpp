#include "slice/vector.hpp"

#include <cmath>
#include <stdexcept>

namespace slice {

SliceVector::SliceVector(SliceDomain domain, std::vector<double> values)
    : domain_(domain), values_(std::move(values)) {
  if (values_.size() != domain_.cardinality())
    throw std::invalid_argument("value count " + std::to_string(values_.size()) +
                                " does not match |slice| = " +
                                std::to_string(domain_.cardinality()));
  for (double v : values_)
    if (!std::isfinite(v)) throw std::invalid_argument("slice vector entries must be finite");
}

SliceVector SliceVector::zeros(const SliceDomain& domain) {
  check_dense_size(domain);
  return SliceVector(domain, std::vector<double>(domain.cardinality(), 0.0));
}

SliceVector SliceVector::constant(const SliceDomain& domain, double value) {
  check_dense_size(domain);
  return SliceVector(domain, std::vector<double>(domain.cardinality(), value));
}

namespace {
void require_same_domain(const SliceVector& a, const SliceVector& b) {
  if (!(a.domain() == b.domain()))
    throw std::invalid_argument("slice vectors live on different domains");
}
}  // namespace

double inner(const SliceVector& a, const SliceVector& b) {
  require_same_domain(a, b);
  double sum = 0.0;
  for (Count i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

double norm_sq(const SliceVector& v) {
  double sum = 0.0;
  for (Count i = 0; i < v.size(); ++i) sum += v[i] * v[i];
  return sum;
}

double norm1(const SliceVector& v) {
  double sum = 0.0;
  for (Count i = 0; i < v.size(); ++i) sum += std::abs(v[i]);
  return sum;
}

double max_abs_diff(const SliceVector& a, const SliceVector& b) {
  require_same_domain(a, b);
  double worst = 0.0;
  for (Count i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

}  // namespace slice
