#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include <CLI11.hpp>

#include "slice/io.hpp"
#include "slice/oracle.hpp"

namespace {

int run_checked(const std::function<int()>& body) {
  try {
    return body();
  } catch (const slice::domain_too_large_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const slice::file_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const slice::list_cap_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}

int run_verify(int n, int k, bool deep) {
  const slice::SliceDomain domain(n, k);
  slice::check_dense_size(domain);
  const slice::verify::Options options;
  std::vector<slice::verify::CheckResult> results =
      slice::verify::claim_checks(domain, options);
  if (deep) {
    std::vector<slice::verify::CheckResult> extra =
        slice::oracle::deep_checks(domain, options);
    results.insert(results.end(), extra.begin(), extra.end());
  }
  bool all_pass = true;
  for (const auto& r : results) {
    std::printf("claim %s: %s (%s)\n", r.name.c_str(), r.pass ? "PASS" : "FAIL",
                r.detail.c_str());
    all_pass = all_pass && r.pass;
  }
  return all_pass ? 0 : 1;
}

void emit_file(const std::string& output, const slice::FunctionFile& file) {
  if (output.empty()) {
    const std::string text = slice::render_function_file(file);
    std::fwrite(text.data(), 1, text.size(), stdout);
  } else {
    slice::write_function_file(output, file);
  }
}

int run_transform(const std::string& input, const std::string& output, bool inverse) {
  const slice::FunctionFile file = slice::read_function_file(input);
  slice::FunctionFile out;
  if (inverse) {
    if (file.encoding == slice::FunctionFile::Encoding::dense)
      throw slice::file_error("--inverse expects a spectrum encoding, got \"dense\"");
    out = slice::dense_file(slice::materialize_function(file));
  } else {
    out = slice::spectrum_file(slice::transform(slice::materialize_function(file)));
  }
  emit_file(output, out);
  return 0;
}

int run_gl(const std::string& input, const std::string& synth, int n, int k,
           double tau, const std::string& mode, std::uint64_t samples,
           std::uint64_t seed, bool audit) {
  if (input.empty() == synth.empty())
    throw std::invalid_argument("pass exactly one of --input and --synth");
  slice::SliceVector f = input.empty()
                             ? slice::synthesize(synth, slice::SliceDomain(n, k), seed)
                             : slice::materialize_function(
                                   slice::read_function_file(input));
  const slice::SliceDomain domain = f.domain();
  slice::QueryFunction query = slice::query_function_from_dense(f);

  slice::SearchConfig config;
  config.tau = tau;
  config.mode = mode == "sampled" ? slice::SearchConfig::Mode::sampled
                                  : slice::SearchConfig::Mode::exact;
  config.samples_per_estimate = samples;
  config.seed = seed;

  const std::vector<std::vector<int>> heavy = slice::find_heavy_sets(query, config);

  std::optional<slice::Spectrum> spectrum;
  if (audit) spectrum = slice::transform(f);
  const double scale = std::sqrt(static_cast<double>(domain.cardinality()));
  for (const std::vector<int>& U : heavy) {
    if (audit)
      std::printf("%s %.17g\n", slice::format_set(U).c_str(),
                  spectrum->at(slice::TopSet(U)) / scale);
    else
      std::printf("%s\n", slice::format_set(U).c_str());
  }
  std::printf("queries: %" PRIu64 "\n", query.query_count());
  return 0;
}

std::string format_real(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

int run_basis(int n, int k, const std::string& output) {
  const slice::SliceDomain domain(n, k);
  const auto basis = slice::shared_basis(domain);
  std::string text = "{\n  \"n\": " + std::to_string(n) +
                     ",\n  \"k\": " + std::to_string(k) + ",\n  \"vectors\": [";
  for (std::size_t i = 0; i < basis->vectors().size(); ++i) {
    const slice::BasisVector& bv = basis->vectors()[i];
    const int size = bv.index.size();
    const double eigenvalue =
        static_cast<double>((n - k - size) * (k - size + 1) - (n - k));
    text += i ? ",\n    " : "\n    ";
    text += "{\"set\": [";
    for (int j = 0; j < size; ++j) {
      if (j) text += ", ";
      text += std::to_string(bv.index.elements()[static_cast<std::size_t>(j)]);
    }
    text += "], \"eigenvalue\": " + format_real(eigenvalue);
    text += ", \"norm_sq\": " + format_real(bv.norm_sq_closed);
    text += ", \"values\": [";
    for (slice::Count j = 0; j < bv.vector.size(); ++j) {
      if (j) text += ", ";
      text += format_real(bv.vector[j]);
    }
    text += "]}";
  }
  text += "\n  ]\n}\n";
  if (output.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
  } else {
    const std::string temp = output + ".tmp";
    std::FILE* out = std::fopen(temp.c_str(), "wb");
    if (!out) throw slice::file_error("cannot open " + temp + " for writing");
    const bool ok = std::fwrite(text.data(), 1, text.size(), out) == text.size();
    const bool closed = std::fclose(out) == 0;
    if (!ok || !closed) {
      std::remove(temp.c_str());
      throw slice::file_error("write to " + temp + " failed");
    }
    if (std::rename(temp.c_str(), output.c_str()) != 0) {
      std::remove(temp.c_str());
      throw slice::file_error("cannot move " + temp + " to " + output);
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fourier analysis on the slice of the Boolean cube"};
  app.require_subcommand(1);

  int n = 0, k = 0;
  bool deep = false;
  CLI::App* verify = app.add_subcommand("verify", "run the invariant suite for one domain");
  verify->add_option("--n", n, "ground set size")->required();
  verify->add_option("--k", k, "slice weight")->required();
  verify->add_flag("--deep", deep, "also run the dense reference checks");

  std::string input, output;
  bool inverse = false;
  CLI::App* transform =
      app.add_subcommand("transform", "transform a function file to or from its spectrum");
  transform->add_option("--input", input, "function file to read")->required();
  transform->add_option("--output", output, "file to write (stdout when absent)");
  transform->add_flag("--inverse", inverse, "spectrum to dense instead of dense to spectrum");

  std::string synth, mode = "exact";
  double tau = 0.1;
  std::uint64_t samples = 0, seed = 0;
  bool audit = false;
  CLI::App* gl = app.add_subcommand("gl", "search for heavy spectrum indices");
  gl->add_option("--input", input, "function file to read");
  gl->add_option("--synth", synth, "built-in generator recipe instead of a file");
  gl->add_option("--n", n, "ground set size (with --synth)");
  gl->add_option("--k", k, "slice weight (with --synth)");
  gl->add_option("--tau", tau, "weight threshold in (0, 1]");
  gl->add_option("--mode", mode, "estimation mode")
      ->check(CLI::IsMember({"exact", "sampled"}));
  gl->add_option("--samples", samples, "samples per estimate (0: sized from tau)");
  gl->add_option("--seed", seed, "stream seed");
  gl->add_flag("--audit", audit, "print each exact normalized coefficient");

  CLI::App* basis = app.add_subcommand("basis", "serialize the eigenbasis of one domain");
  basis->add_option("--n", n, "ground set size")->required();
  basis->add_option("--k", k, "slice weight")->required();
  basis->add_option("--output", output, "file to write (stdout when absent)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (verify->parsed()) return run_checked([&] { return run_verify(n, k, deep); });
  if (transform->parsed())
    return run_checked([&] { return run_transform(input, output, inverse); });
  if (gl->parsed())
    return run_checked(
        [&] { return run_gl(input, synth, n, k, tau, mode, samples, seed, audit); });
  if (basis->parsed()) return run_checked([&] { return run_basis(n, k, output); });
  return 2;
}
