#pragma once

#include "slice/harmonics.hpp"

namespace slice {

// Coefficients of a function in the orthogonal eigenbasis, keyed by index set
// in canonical order.  Keys must be valid indices for the domain; absent keys
// read as zero.
class Spectrum {
 public:
  using Map = std::map<TopSet, double, TopSetLess>;

  Spectrum(SliceDomain domain, Map coefficients);

  const SliceDomain& domain() const noexcept { return domain_; }
  const Map& coefficients() const noexcept { return coefficients_; }
  double at(const TopSet& S) const;
  double sum_of_squares() const;

 private:
  SliceDomain domain_;
  Map coefficients_;
};

// Forward transform: coefficient at S is <f, v_S> / ||v_S||, with v_S the
// basis vector indexed by S.  Produces every index of the family, Parseval
// holds: sum of squares equals ||f||^2.
Spectrum transform(const SliceVector& f);

// Single coefficient with the zero conventions: returns 0 when f is the empty
// function or when `raw_set` is not a valid index for the domain.
double coefficient(const std::optional<SliceVector>& f, std::vector<int> raw_set);

// Synthesis: f = sum over keys of coefficient * v_S / ||v_S||.
SliceVector inverse_transform(const Spectrum& spectrum);

}  // namespace slice
