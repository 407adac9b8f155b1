#include "slice/fourier.hpp"

#include <cmath>
#include <stdexcept>

namespace slice {

Spectrum::Spectrum(SliceDomain domain, Map coefficients)
    : domain_(domain), coefficients_(std::move(coefficients)) {
  for (const auto& [S, c] : coefficients_) {
    if (S.size() > domain_.basis_index_bound() || S.max_element() > domain_.n())
      throw std::invalid_argument("spectrum key " + format_set(S.elements()) +
                                  " is outside the index family of (" +
                                  std::to_string(domain_.n()) + ", " +
                                  std::to_string(domain_.k()) + ")");
    if (!std::isfinite(c))
      throw std::invalid_argument("spectrum coefficients must be finite");
  }
}

double Spectrum::at(const TopSet& S) const {
  auto it = coefficients_.find(S);
  return it == coefficients_.end() ? 0.0 : it->second;
}

double Spectrum::sum_of_squares() const {
  double sum = 0.0;
  for (const auto& [S, c] : coefficients_) sum += c * c;
  return sum;
}

Spectrum transform(const SliceVector& f) {
  const auto basis = shared_basis(f.domain());
  Spectrum::Map coefficients;
  auto hint = coefficients.end();
  for (std::size_t i = 0; i < basis->vectors().size(); ++i) {
    const BasisVector& bv = basis->vectors()[i];
    const double c = inner(f, bv.vector) / basis->norms()[i];
    hint = coefficients.emplace_hint(hint, bv.index, c);
  }
  return Spectrum(f.domain(), std::move(coefficients));
}

double coefficient(const std::optional<SliceVector>& f, std::vector<int> raw_set) {
  if (!f.has_value()) return 0.0;
  const SliceDomain& d = f->domain();
  if (!is_top_set(raw_set, d.n(), d.basis_index_bound())) return 0.0;
  std::sort(raw_set.begin(), raw_set.end());
  const BasisVector bv = basis_vector(d, TopSet(std::move(raw_set)));
  return inner(*f, bv.vector) / norm2(bv.vector);
}

SliceVector inverse_transform(const Spectrum& spectrum) {
  const auto basis = shared_basis(spectrum.domain());
  SliceVector f = SliceVector::zeros(spectrum.domain());
  for (const auto& [S, c] : spectrum.coefficients()) {
    if (c == 0.0) continue;
    const auto pos = basis->position(S);
    if (!pos.has_value())
      throw std::invalid_argument("spectrum key " + format_set(S.elements()) +
                                  " is outside the index family");
    const BasisVector& bv = basis->vectors()[*pos];
    const double scale = c / basis->norms()[*pos];
    for (Count i = 0; i < f.size(); ++i) f[i] += scale * bv.vector[i];
  }
  return f;
}

}  // namespace slice
