#include "slice/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace slice::oracle {

namespace {

std::vector<std::vector<int>> all_elements(const SliceDomain& domain) {
  std::vector<std::vector<int>> out;
  out.reserve(static_cast<std::size_t>(domain.cardinality()));
  for_each_element(domain, [&](const std::vector<int>& ones) { out.push_back(ones); });
  return out;
}

bool is_subset(const std::vector<int>& inner, const std::vector<int>& outer) {
  return std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
}

int shared_ones(const std::vector<int>& a, const std::vector<int>& b) {
  int count = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) ++count, ++i, ++j;
    else if (a[i] < b[j]) ++i;
    else ++j;
  }
  return count;
}

Eigen::VectorXd to_eigen(const SliceVector& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.values().data(),
                                           static_cast<Eigen::Index>(v.size()));
}

std::string worst_detail(double worst) {
  std::ostringstream out;
  out.precision(3);
  out << std::scientific << "worst deviation " << worst;
  return out.str();
}

}  // namespace

Eigen::MatrixXd dense_up_matrix(const SliceDomain& domain) {
  if (domain.k() >= domain.n())
    throw std::invalid_argument("dense_up_matrix: no level above");
  const SliceDomain target(domain.n(), domain.k() + 1);
  check_dense_size(domain);
  check_dense_size(target);
  const auto cols = all_elements(domain);
  const auto rows = all_elements(target);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows.size()),
                                            static_cast<Eigen::Index>(cols.size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c)
      if (is_subset(cols[c], rows[r]))
        m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = 1.0;
  return m;
}

Eigen::MatrixXd dense_down_matrix(const SliceDomain& domain) {
  if (domain.k() <= 0) throw std::invalid_argument("dense_down_matrix: no level below");
  const SliceDomain target(domain.n(), domain.k() - 1);
  check_dense_size(domain);
  check_dense_size(target);
  const auto cols = all_elements(domain);
  const auto rows = all_elements(target);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows.size()),
                                            static_cast<Eigen::Index>(cols.size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c)
      if (is_subset(rows[r], cols[c]))
        m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = 1.0;
  return m;
}

Eigen::MatrixXd dense_adjacency_matrix(const SliceDomain& domain) {
  check_dense_size(domain);
  const auto elements = all_elements(domain);
  const Eigen::Index size = static_cast<Eigen::Index>(elements.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(size, size);
  for (Eigen::Index r = 0; r < size; ++r)
    for (Eigen::Index c = 0; c < size; ++c)
      if (r != c && shared_ones(elements[static_cast<std::size_t>(r)],
                                elements[static_cast<std::size_t>(c)]) == domain.k() - 1)
        m(r, c) = 1.0;
  return m;
}

std::vector<double> dense_spectrum(const SliceDomain& domain) {
  const Eigen::MatrixXd adjacency = dense_adjacency_matrix(domain);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(adjacency,
                                                        Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("dense_spectrum: eigensolve failed");
  std::vector<double> values(solver.eigenvalues().data(),
                             solver.eigenvalues().data() + solver.eigenvalues().size());
  std::sort(values.begin(), values.end());
  return values;
}

std::vector<double> predicted_spectrum(const SliceDomain& domain) {
  const int n = domain.n();
  const int k = domain.k();
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(domain.cardinality()));
  for (int i = 0; i <= domain.basis_index_bound(); ++i) {
    const double eigenvalue = static_cast<double>((n - k - i) * (k - i + 1) - (n - k));
    const Count multiplicity = binomial(n, i) - (i > 0 ? binomial(n, i - 1) : 0);
    for (Count m = 0; m < multiplicity; ++m) values.push_back(eigenvalue);
  }
  std::sort(values.begin(), values.end());
  return values;
}

double exhaustive_estimator_mean(const SliceVector& f, const std::vector<int>& U,
                                 int i) {
  const int n = f.domain().n();
  const int k = f.domain().k();
  if (i < 0 || i > n)
    throw std::invalid_argument("exhaustive_estimator_mean: prefix length out of range");
  for (std::size_t j = 0; j < U.size(); ++j)
    if (U[j] < 1 || U[j] > i)
      throw std::invalid_argument("exhaustive_estimator_mean: bucket outside the prefix");
  if (n > 8) throw domain_too_large_error("exhaustive_estimator_mean: n > 8");

  const double total_points = static_cast<double>(binomial(n, k));
  const int tail = n - i;
  double mean = 0.0;
  std::vector<int> z(static_cast<std::size_t>(tail));
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << tail); ++mask) {
    int weight = 0;
    for (int j = 0; j < tail; ++j) {
      z[static_cast<std::size_t>(j)] = static_cast<int>((mask >> j) & 1u);
      weight += z[static_cast<std::size_t>(j)];
    }
    const int kk = k - weight;
    const Count prefix_count = (kk < 0 || kk > i) ? 0 : binomial(i, kk);
    if (prefix_count == 0) continue;
    const double p_suffix = static_cast<double>(prefix_count) / total_points;
    if (!is_top_set(U, i, std::min(kk, i - kk))) continue;  // sample value 0

    // Lift the generator through the dense matrices, independently of the
    // sampler's chain code.
    const SliceVector chi = nullspace_vector(i, TopSet(U));
    Eigen::VectorXd lifted = to_eigen(chi);
    for (int level = static_cast<int>(U.size()); level < kk; ++level)
      lifted = dense_up_matrix(SliceDomain(i, level)) * lifted;
    const double l1 = lifted.cwiseAbs().sum();
    if (l1 == 0.0) continue;  // annihilated lift, sample value 0
    const double l2_sq = lifted.squaredNorm();
    const double scale = l1 * l1 / l2_sq / static_cast<double>(prefix_count);

    const auto fz = restrict_suffix(f, z);
    if (!fz.has_value()) continue;
    double config_mean = 0.0;
    for (Eigen::Index y1 = 0; y1 < lifted.size(); ++y1) {
      if (lifted(y1) == 0.0) continue;
      const double p1 = std::abs(lifted(y1)) / l1;
      const double s1 = lifted(y1) > 0.0 ? 1.0 : -1.0;
      for (Eigen::Index y2 = 0; y2 < lifted.size(); ++y2) {
        if (lifted(y2) == 0.0) continue;
        const double p2 = std::abs(lifted(y2)) / l1;
        const double s2 = lifted(y2) > 0.0 ? 1.0 : -1.0;
        const double value = scale * s1 * s2 * (*fz)[static_cast<Count>(y1)] *
                             (*fz)[static_cast<Count>(y2)];
        config_mean += p1 * p2 * value;
      }
    }
    mean += p_suffix * config_mean;
  }
  return mean;
}

std::vector<verify::CheckResult> deep_checks(const SliceDomain& domain,
                                             const verify::Options& options) {
  std::vector<verify::CheckResult> results;
  const int n = domain.n();
  const int k = domain.k();

  {
    Rng rng(stream_key(options.seed, 101, {n, k}));
    const std::optional<Eigen::MatrixXd> up =
        k < n ? std::optional<Eigen::MatrixXd>(dense_up_matrix(domain)) : std::nullopt;
    const std::optional<Eigen::MatrixXd> down =
        k > 0 ? std::optional<Eigen::MatrixXd>(dense_down_matrix(domain)) : std::nullopt;
    const Eigen::MatrixXd adjacency = dense_adjacency_matrix(domain);
    double worst = 0.0;
    for (int t = 0; t < options.random_vectors; ++t) {
      const SliceVector v = verify::random_vector(domain, rng);
      const Eigen::VectorXd dense = to_eigen(v);
      const double scale = std::max(1.0, norm2(v));
      if (up.has_value()) {
        const Eigen::VectorXd expect = *up * dense;
        const SliceVector got = apply_up(v);
        for (Count r = 0; r < got.size(); ++r)
          worst = std::max(worst,
                           std::abs(got[r] - expect(static_cast<Eigen::Index>(r))) / scale);
      }
      if (down.has_value()) {
        const Eigen::VectorXd expect = *down * dense;
        const SliceVector got = apply_down(v);
        for (Count r = 0; r < got.size(); ++r)
          worst = std::max(worst,
                           std::abs(got[r] - expect(static_cast<Eigen::Index>(r))) / scale);
      }
      const Eigen::VectorXd expect = adjacency * dense;
      const SliceVector got = apply_adjacency(v);
      for (Count r = 0; r < got.size(); ++r)
        worst = std::max(worst,
                         std::abs(got[r] - expect(static_cast<Eigen::Index>(r))) / scale);
    }
    results.push_back({"dense-agree", worst <= 1e-9, worst_detail(worst)});
  }

  {
    const auto basis = shared_basis(domain);
    const Eigen::Index size = static_cast<Eigen::Index>(basis->vectors().size());
    Eigen::MatrixXd columns(static_cast<Eigen::Index>(domain.cardinality()), size);
    for (Eigen::Index c = 0; c < size; ++c)
      columns.col(c) = to_eigen(basis->vectors()[static_cast<std::size_t>(c)].vector) /
                       basis->norms()[static_cast<std::size_t>(c)];
    const Eigen::MatrixXd gram = columns.transpose() * columns;
    const double worst =
        (gram - Eigen::MatrixXd::Identity(size, size)).cwiseAbs().maxCoeff();
    results.push_back({"gram-dense", worst <= 1e-9, worst_detail(worst)});
  }

  {
    const std::vector<double> dense = dense_spectrum(domain);
    const std::vector<double> predicted = predicted_spectrum(domain);
    double worst = 0.0;
    bool counts_match = dense.size() == predicted.size();
    if (counts_match)
      for (std::size_t r = 0; r < dense.size(); ++r)
        worst = std::max(worst, std::abs(dense[r] - predicted[r]));
    results.push_back({"spectrum", counts_match && worst <= 1e-6,
                       counts_match ? worst_detail(worst) : "eigenvalue count mismatch"});
  }

  if (n <= 6) {
    Rng rng(stream_key(options.seed, 102, {n, k}));
    const SliceVector f = verify::random_pm1(domain, rng);
    const double total_points = static_cast<double>(domain.cardinality());
    double worst = 0.0;
    for (int i = 0; i <= n; ++i) {
      for (const TopSet& S : enumerate_top_sets(i, i / 2)) {
        const double mean = exhaustive_estimator_mean(f, S.elements(), i);
        const double exact =
            restricted_weight_exact(f, S.elements(), i) / total_points;
        worst = std::max(worst, std::abs(mean - exact));
      }
    }
    results.push_back({"estimator-mean", worst <= 1e-9, worst_detail(worst)});
  } else {
    results.push_back({"estimator-mean", true, "skipped, enumeration needs n <= 6"});
  }

  return results;
}

}  // namespace slice::oracle
