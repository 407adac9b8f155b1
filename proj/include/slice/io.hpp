#pragma once

#include <string>

#include "slice/fourier.hpp"

namespace slice {

// Parse or validation failure for a function file; the message names the
// offending field and, for syntax errors, the byte position.
class file_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SpectrumEntry {
  std::vector<int> set;
  double coefficient = 0.0;
};

// On-disk representation of a function on a slice:
//   dense             values: C(n, k) reals in colex order
//   sparse-spectrum   values: list of {set, coefficient}
//   sign-of-spectrum  same payload; the function is the sign of the synthesis
//                     (sign(0) reads as +1)
struct FunctionFile {
  enum class Encoding { dense, sparse_spectrum, sign_of_spectrum };

  int n = 0;
  int k = 0;
  Encoding encoding = Encoding::dense;
  std::vector<double> dense_values;
  std::vector<SpectrumEntry> entries;
};

FunctionFile read_function_file(const std::string& path);

// Serialises with 17 significant digits and writes through a temporary file
// renamed into place, so a failure never leaves a partial file.
void write_function_file(const std::string& path, const FunctionFile& file);
std::string render_function_file(const FunctionFile& file);

FunctionFile dense_file(const SliceVector& f);
FunctionFile spectrum_file(const Spectrum& spectrum);

// The spectrum payload of a sparse-spectrum or sign-of-spectrum file.
Spectrum spectrum_from_file(const FunctionFile& file);

// Dense function described by the file: the values themselves, the synthesis
// of the spectrum, or its sign.
SliceVector materialize_function(const FunctionFile& file);

// Built-in generators of +-1 functions:
//   "constant"                          all +1
//   "random-pm1"                        independent signs from the seed
//   "sign-of-spectrum:{2,4}=3;{}=0.5"   sign of the listed synthesis
SliceVector synthesize(const std::string& recipe, const SliceDomain& domain,
                       std::uint64_t seed);

}  // namespace slice
