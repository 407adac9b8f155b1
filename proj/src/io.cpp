#include "slice/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "json.hpp"
#include "slice/rng.hpp"

namespace slice {

namespace {

using nlohmann::json;

std::string format_double(double x) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", x);
  return buffer;
}

const char* encoding_name(FunctionFile::Encoding e) {
  switch (e) {
    case FunctionFile::Encoding::dense: return "dense";
    case FunctionFile::Encoding::sparse_spectrum: return "sparse-spectrum";
    case FunctionFile::Encoding::sign_of_spectrum: return "sign-of-spectrum";
  }
  return "dense";
}

FunctionFile::Encoding encoding_from_name(const std::string& name) {
  if (name == "dense") return FunctionFile::Encoding::dense;
  if (name == "sparse-spectrum") return FunctionFile::Encoding::sparse_spectrum;
  if (name == "sign-of-spectrum") return FunctionFile::Encoding::sign_of_spectrum;
  throw file_error("field 'encoding': unknown value \"" + name + "\"");
}

int require_int(const json& j, const std::string& field) {
  if (!j.contains(field) || !j[field].is_number_integer())
    throw file_error("field '" + field + "': expected an integer");
  return j[field].get<int>();
}

void validate_payload(const FunctionFile& file) {
  const SliceDomain domain(file.n, file.k);  // throws invalid_argument on bad (n, k)
  if (file.encoding == FunctionFile::Encoding::dense) {
    if (file.dense_values.size() != domain.cardinality())
      throw file_error("field 'values': expected " + std::to_string(domain.cardinality()) +
                       " entries for (" + std::to_string(file.n) + ", " +
                       std::to_string(file.k) + "), got " +
                       std::to_string(file.dense_values.size()));
    for (double v : file.dense_values)
      if (!std::isfinite(v)) throw file_error("field 'values': entries must be finite");
  } else {
    for (std::size_t i = 0; i < file.entries.size(); ++i) {
      const auto& entry = file.entries[i];
      if (!std::isfinite(entry.coefficient))
        throw file_error("field 'values[" + std::to_string(i) + "].coefficient': must be finite");
      if (!is_top_set(entry.set, file.n, domain.basis_index_bound()))
        throw file_error("field 'values[" + std::to_string(i) + "].set': " +
                         format_set(entry.set) + " is not a top set for (" +
                         std::to_string(file.n) + ", " + std::to_string(file.k) + ")");
    }
  }
}

}  // namespace

FunctionFile read_function_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw file_error("cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw file_error(path + ": syntax error at byte " + std::to_string(e.byte) + ": " +
                     e.what());
  }
  if (!j.is_object()) throw file_error(path + ": top level must be an object");

  FunctionFile file;
  file.n = require_int(j, "n");
  file.k = require_int(j, "k");
  if (!j.contains("encoding") || !j["encoding"].is_string())
    throw file_error("field 'encoding': expected a string");
  file.encoding = encoding_from_name(j["encoding"].get<std::string>());
  if (!j.contains("values") || !j["values"].is_array())
    throw file_error("field 'values': expected an array");

  const json& values = j["values"];
  if (file.encoding == FunctionFile::Encoding::dense) {
    file.dense_values.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (!values[i].is_number())
        throw file_error("field 'values[" + std::to_string(i) + "]': expected a number");
      file.dense_values.push_back(values[i].get<double>());
    }
  } else {
    file.entries.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
      const json& entry = values[i];
      const std::string where = "values[" + std::to_string(i) + "]";
      if (!entry.is_object() || !entry.contains("set") || !entry.contains("coefficient"))
        throw file_error("field '" + where + "': expected {set, coefficient}");
      if (!entry["set"].is_array())
        throw file_error("field '" + where + ".set': expected an array of integers");
      SpectrumEntry se;
      for (const json& e : entry["set"]) {
        if (!e.is_number_integer())
          throw file_error("field '" + where + ".set': expected an array of integers");
        se.set.push_back(e.get<int>());
      }
      if (!entry["coefficient"].is_number())
        throw file_error("field '" + where + ".coefficient': expected a number");
      se.coefficient = entry["coefficient"].get<double>();
      file.entries.push_back(std::move(se));
    }
  }

  try {
    validate_payload(file);
  } catch (const std::invalid_argument& e) {
    throw file_error(path + ": " + e.what());
  }
  return file;
}

std::string render_function_file(const FunctionFile& file) {
  std::string out = "{\n";
  out += "  \"n\": " + std::to_string(file.n) + ",\n";
  out += "  \"k\": " + std::to_string(file.k) + ",\n";
  out += "  \"encoding\": \"" + std::string(encoding_name(file.encoding)) + "\",\n";
  out += "  \"values\": [";
  if (file.encoding == FunctionFile::Encoding::dense) {
    for (std::size_t i = 0; i < file.dense_values.size(); ++i) {
      out += i ? ", " : "";
      out += format_double(file.dense_values[i]);
    }
    out += "]\n";
  } else {
    for (std::size_t i = 0; i < file.entries.size(); ++i) {
      out += i ? ",\n    " : "\n    ";
      out += "{\"set\": [";
      const auto& set = file.entries[i].set;
      for (std::size_t j = 0; j < set.size(); ++j) {
        out += j ? ", " : "";
        out += std::to_string(set[j]);
      }
      out += "], \"coefficient\": " + format_double(file.entries[i].coefficient) + "}";
    }
    out += file.entries.empty() ? "]\n" : "\n  ]\n";
  }
  out += "}\n";
  return out;
}

void write_function_file(const std::string& path, const FunctionFile& file) {
  validate_payload(file);
  const std::string rendered = render_function_file(file);
  const std::string temp = path + ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw file_error("cannot open " + temp + " for writing");
    out << rendered;
    if (!out.good()) throw file_error("write to " + temp + " failed");
  }
  std::error_code ec;
  std::filesystem::rename(temp, path, ec);
  if (ec) {
    std::filesystem::remove(temp);
    throw file_error("cannot move " + temp + " to " + path + ": " + ec.message());
  }
}

FunctionFile dense_file(const SliceVector& f) {
  FunctionFile file;
  file.n = f.domain().n();
  file.k = f.domain().k();
  file.encoding = FunctionFile::Encoding::dense;
  file.dense_values = f.values();
  return file;
}

FunctionFile spectrum_file(const Spectrum& spectrum) {
  FunctionFile file;
  file.n = spectrum.domain().n();
  file.k = spectrum.domain().k();
  file.encoding = FunctionFile::Encoding::sparse_spectrum;
  for (const auto& [S, c] : spectrum.coefficients()) {
    if (c == 0.0) continue;
    file.entries.push_back(SpectrumEntry{S.elements(), c});
  }
  return file;
}

Spectrum spectrum_from_file(const FunctionFile& file) {
  if (file.encoding == FunctionFile::Encoding::dense)
    throw file_error("dense file carries no spectrum payload");
  const SliceDomain domain(file.n, file.k);
  Spectrum::Map map;
  for (const auto& entry : file.entries) {
    TopSet S(entry.set);
    if (auto [it, inserted] = map.emplace(std::move(S), entry.coefficient); !inserted)
      throw file_error("duplicate spectrum set " + format_set(entry.set));
  }
  return Spectrum(domain, std::move(map));
}

SliceVector materialize_function(const FunctionFile& file) {
  validate_payload(file);
  const SliceDomain domain(file.n, file.k);
  switch (file.encoding) {
    case FunctionFile::Encoding::dense:
      return SliceVector(domain, file.dense_values);
    case FunctionFile::Encoding::sparse_spectrum:
      return inverse_transform(spectrum_from_file(file));
    case FunctionFile::Encoding::sign_of_spectrum: {
      SliceVector f = inverse_transform(spectrum_from_file(file));
      for (Count i = 0; i < f.size(); ++i) f[i] = f[i] < 0.0 ? -1.0 : 1.0;
      return f;
    }
  }
  throw std::logic_error("unreachable");
}

namespace {

// "{2,4}=3;{}=0.5" -> spectrum entries.
std::vector<SpectrumEntry> parse_planted_entries(const std::string& text) {
  std::vector<SpectrumEntry> entries;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find(';', pos);
    if (end == std::string::npos) end = text.size();
    const std::string item = text.substr(pos, end - pos);
    const std::size_t eq = item.find('=');
    if (item.size() < 3 || item[0] != '{' || eq == std::string::npos ||
        item.find('}') == std::string::npos || item.find('}') > eq)
      throw std::invalid_argument("planted entry \"" + item +
                                  "\" must look like {2,4}=1.5");
    SpectrumEntry entry;
    const std::string set_part = item.substr(1, item.find('}') - 1);
    std::size_t p = 0;
    while (p < set_part.size()) {
      std::size_t q = set_part.find(',', p);
      if (q == std::string::npos) q = set_part.size();
      entry.set.push_back(std::stoi(set_part.substr(p, q - p)));
      p = q + 1;
    }
    entry.coefficient = std::stod(item.substr(eq + 1));
    entries.push_back(std::move(entry));
    pos = end + 1;
  }
  return entries;
}

}  // namespace

SliceVector synthesize(const std::string& recipe, const SliceDomain& domain,
                       std::uint64_t seed) {
  if (recipe == "constant") return SliceVector::constant(domain, 1.0);
  if (recipe == "random-pm1") {
    SliceVector f = SliceVector::zeros(domain);
    Rng rng(stream_key(seed, 0x706d31ULL, {}));
    for (Count i = 0; i < f.size(); ++i) f[i] = (rng.next() >> 63) ? 1.0 : -1.0;
    return f;
  }
  const std::string prefix = "sign-of-spectrum:";
  if (recipe.rfind(prefix, 0) == 0) {
    FunctionFile file;
    file.n = domain.n();
    file.k = domain.k();
    file.encoding = FunctionFile::Encoding::sign_of_spectrum;
    file.entries = parse_planted_entries(recipe.substr(prefix.size()));
    validate_payload(file);
    return materialize_function(file);
  }
  throw std::invalid_argument(
      "unknown recipe \"" + recipe +
      "\"; expected constant, random-pm1, or sign-of-spectrum:{...}=c[;...]");
}

}  // namespace slice
