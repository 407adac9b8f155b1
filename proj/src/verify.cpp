#include "slice/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace slice::verify {

namespace {

constexpr double kTol = 1e-9;

std::string deviation_detail(double worst) {
  std::ostringstream out;
  out.precision(3);
  out << std::scientific << "worst deviation " << worst;
  return out.str();
}

CheckResult report(std::string name, double worst, double budget = kTol) {
  return CheckResult{std::move(name), worst <= budget, deviation_detail(worst)};
}

// |a - b| scaled by max(1, |a|, |b|, extra).
double rel_dev(double a, double b, double extra = 1.0) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b), extra});
}

double eigen_deviation(const SliceVector& applied, double eigenvalue,
                       const SliceVector& v) {
  double worst = 0.0;
  for (Count i = 0; i < v.size(); ++i)
    worst = std::max(worst, std::abs(applied[i] - eigenvalue * v[i]));
  return worst / std::max({1.0, std::abs(eigenvalue), norm2(v)});
}

}  // namespace

SliceVector random_vector(const SliceDomain& domain, Rng& rng) {
  SliceVector v = SliceVector::zeros(domain);
  for (Count i = 0; i < v.size(); ++i) v[i] = 2.0 * rng.uniform_unit() - 1.0;
  return v;
}

SliceVector random_pm1(const SliceDomain& domain, Rng& rng) {
  SliceVector v = SliceVector::zeros(domain);
  for (Count i = 0; i < v.size(); ++i) v[i] = (rng.next() >> 63) ? 1.0 : -1.0;
  return v;
}

CheckResult check_diffuddu(const SliceDomain& d, int vectors, Rng& rng) {
  const double shift = static_cast<double>(d.n() - 2 * d.k());
  double worst = 0.0;
  for (int t = 0; t < vectors; ++t) {
    const SliceVector v = random_vector(d, rng);
    const SliceVector lhs = apply_down_then_up(v);
    const SliceVector rhs = apply_up_then_down(v);
    for (Count i = 0; i < v.size(); ++i)
      worst = std::max(worst,
                       std::abs(lhs[i] - (rhs[i] - shift * v[i])) / std::max(1.0, norm2(v)));
  }
  return report("diffuddu", worst);
}

CheckResult check_adjoint(const SliceDomain& d, int vectors, Rng& rng) {
  if (d.k() == d.n()) return CheckResult{"adjoint", true, "no level above"};
  const SliceDomain above(d.n(), d.k() + 1);
  double worst = 0.0;
  for (int t = 0; t < vectors; ++t) {
    const SliceVector u = random_vector(d, rng);
    const SliceVector w = random_vector(above, rng);
    worst = std::max(worst, rel_dev(inner(apply_up(u), w), inner(u, apply_down(w)),
                                    norm2(u) * norm2(w)));
  }
  return report("adjoint", worst);
}

CheckResult check_nulltoeig(const SliceDomain& d) {
  double worst = 0.0;
  for (const TopSet& S : enumerate_top_sets(d.n(), d.basis_index_bound())) {
    const int i = S.size();
    const SliceVector lifted = apply_up_chain(nullspace_vector(d.n(), S), d.k());
    const double vee = static_cast<double>((d.n() - d.k() - i + 1) * (d.k() - i));
    const double wedge = static_cast<double>((d.n() - d.k() - i) * (d.k() - i + 1));
    worst = std::max(worst, eigen_deviation(apply_down_then_up(lifted), vee, lifted));
    worst = std::max(worst, eigen_deviation(apply_up_then_down(lifted), wedge, lifted));
  }
  return report("nulltoeig", worst);
}

CheckResult check_normofup(const SliceDomain& d, Rng& rng) {
  double worst = 0.0;
  const auto sets = enumerate_top_sets(d.n(), d.basis_index_bound());
  for (const TopSet& S : sets) {
    const SliceVector chi = nullspace_vector(d.n(), S);
    const SliceVector lifted = apply_up_chain(chi, d.k());
    const double expected = lifted_norm_sq(d.n(), d.k(), S) / nullspace_norm_sq(S);
    worst = std::max(worst, rel_dev(norm_sq(lifted) / norm_sq(chi), expected));
    // Lifting one step past n - |S| must annihilate the vector.
    const int i = S.size();
    if (i >= 1 && d.n() - i + 1 <= d.n()) {
      const SliceVector tall = apply_up_chain(chi, d.n() - i);
      const SliceVector dead = apply_up(tall);
      worst = std::max(worst, norm2(dead) / std::max(1.0, static_cast<double>(d.n()) *
                                                              norm2(tall)));
    }
  }
  // The ratio is shared by every vector in the nullspace, not only the
  // generators: spot-check random combinations within a size class.
  std::map<int, std::vector<const TopSet*>> by_size;
  for (const TopSet& S : sets) by_size[S.size()].push_back(&S);
  for (const auto& [size, members] : by_size) {
    if (size == 0 || members.size() < 2) continue;
    SliceVector combo = SliceVector::zeros(SliceDomain(d.n(), size));
    for (const TopSet* S : members) {
      const double c = 2.0 * rng.uniform_unit() - 1.0;
      const SliceVector chi = nullspace_vector(d.n(), *S);
      for (Count i = 0; i < combo.size(); ++i) combo[i] += c * chi[i];
    }
    if (norm_sq(combo) == 0.0) continue;
    const double expected =
        lifted_norm_sq(d.n(), d.k(), *members.front()) / nullspace_norm_sq(*members.front());
    const SliceVector lifted = apply_up_chain(combo, d.k());
    worst = std::max(worst, rel_dev(norm_sq(lifted) / norm_sq(combo), expected));
  }
  return report("normofup", worst);
}

CheckResult check_ortho(const SliceDomain& d, Rng& rng) {
  const auto sets = enumerate_top_sets(d.n(), d.basis_index_bound());
  std::map<int, std::vector<const TopSet*>> by_size;
  for (const TopSet& S : sets) by_size[S.size()].push_back(&S);
  double worst = 0.0;
  for (const auto& [size, members] : by_size) {
    if (members.size() < 2) continue;
    std::vector<SliceVector> lifts;
    lifts.reserve(members.size());
    for (const TopSet* S : members)
      lifts.push_back(apply_up_chain(nullspace_vector(d.n(), *S), d.k()));
    for (std::size_t a = 0; a < lifts.size(); ++a)
      for (std::size_t b = a + 1; b < lifts.size(); ++b)
        worst = std::max(worst, std::abs(inner(lifts[a], lifts[b])) /
                                    std::max(1.0, norm2(lifts[a]) * norm2(lifts[b])));
    // Random orthogonal pairs in the same nullspace.
    SliceVector u = SliceVector::zeros(SliceDomain(d.n(), size));
    SliceVector w = u;
    for (const TopSet* S : members) {
      const SliceVector chi = nullspace_vector(d.n(), *S);
      const double cu = 2.0 * rng.uniform_unit() - 1.0;
      const double cw = 2.0 * rng.uniform_unit() - 1.0;
      for (Count i = 0; i < u.size(); ++i) {
        u[i] += cu * chi[i];
        w[i] += cw * chi[i];
      }
    }
    if (norm_sq(u) == 0.0) continue;
    const double proj = inner(w, u) / norm_sq(u);
    for (Count i = 0; i < w.size(); ++i) w[i] -= proj * u[i];
    const SliceVector lu = apply_up_chain(u, d.k());
    const SliceVector lw = apply_up_chain(w, d.k());
    worst = std::max(worst,
                     std::abs(inner(lu, lw)) / std::max(1.0, norm2(lu) * norm2(lw)));
  }
  return report("ortho", worst);
}

CheckResult check_characnull(const SliceDomain& d) {
  double worst = 0.0;
  for (const TopSet& S : enumerate_top_sets(d.n(), d.basis_index_bound())) {
    if (S.size() == 0) continue;  // nothing below level 0
    const SliceVector chi = nullspace_vector(d.n(), S);
    worst = std::max(worst, norm2(apply_down(chi)) / std::max(1.0, norm2(chi)));
  }
  return report("characnull", worst);
}

CheckResult check_characortho(const SliceDomain& d) {
  const auto sets = enumerate_top_sets(d.n(), d.basis_index_bound());
  std::map<int, std::vector<SliceVector>> by_size;
  for (const TopSet& S : sets) by_size[S.size()].push_back(nullspace_vector(d.n(), S));
  double worst = 0.0;
  for (const auto& [size, vectors] : by_size)
    for (std::size_t a = 0; a < vectors.size(); ++a)
      for (std::size_t b = a + 1; b < vectors.size(); ++b)
        worst = std::max(worst, std::abs(inner(vectors[a], vectors[b])) /
                                    std::max(1.0, norm2(vectors[a]) * norm2(vectors[b])));
  return report("characortho", worst);
}

CheckResult check_normofchi(const SliceDomain& d) {
  double worst = 0.0;
  for (const TopSet& S : enumerate_top_sets(d.n(), d.basis_index_bound()))
    worst = std::max(worst, rel_dev(norm_sq(nullspace_vector(d.n(), S)),
                                    nullspace_norm_sq(S)));
  return report("normofchi", worst);
}

CheckResult check_norm(const SliceDomain& d) {
  double worst = 0.0;
  for (const BasisVector& bv : shared_basis(d)->vectors())
    worst = std::max(worst, rel_dev(norm_sq(bv.vector), bv.norm_sq_closed));
  return report("norm", worst);
}

CheckResult check_gram(const SliceDomain& d) {
  const auto basis = shared_basis(d);
  const auto& vectors = basis->vectors();
  if (vectors.size() != d.cardinality())
    return CheckResult{"gram", false,
                       "basis has " + std::to_string(vectors.size()) + " vectors, expected " +
                           std::to_string(d.cardinality())};
  double worst = 0.0;
  for (std::size_t a = 0; a < vectors.size(); ++a)
    for (std::size_t b = a; b < vectors.size(); ++b) {
      const double g = inner(vectors[a].vector, vectors[b].vector) /
                       (basis->norms()[a] * basis->norms()[b]);
      worst = std::max(worst, std::abs(g - (a == b ? 1.0 : 0.0)));
    }
  return report("gram", worst);
}

CheckResult check_eigenvalue(const SliceDomain& d) {
  double worst = 0.0;
  for (const BasisVector& bv : shared_basis(d)->vectors()) {
    const int i = bv.index.size();
    const double eigenvalue =
        static_cast<double>((d.n() - d.k() - i) * (d.k() - i + 1) - (d.n() - d.k()));
    worst = std::max(worst, eigen_deviation(apply_adjacency(bv.vector), eigenvalue, bv.vector));
  }
  return report("eigenvalue", worst);
}

CheckResult check_parseval_roundtrip(const SliceDomain& d, int vectors, Rng& rng) {
  double worst = 0.0;
  for (int t = 0; t < vectors; ++t) {
    const SliceVector f = random_vector(d, rng);
    const Spectrum spectrum = transform(f);
    worst = std::max(worst, rel_dev(spectrum.sum_of_squares(), norm_sq(f)));
    const SliceVector back = inverse_transform(spectrum);
    worst = std::max(worst, max_abs_diff(f, back) / std::max(1.0, norm2(f)));
  }
  return report("parseval-roundtrip", worst);
}

CheckResult check_restrict(const SliceDomain& d, int functions, Rng& rng) {
  if (d.n() < 1) return CheckResult{"restrict", true, "no coordinate to fix"};
  const auto indices =
      enumerate_top_sets(d.n() - 1, std::min(d.basis_index_bound(), (d.n() - 1) / 2));
  double worst = 0.0;
  for (int t = 0; t < functions; ++t) {
    const SliceVector f = random_vector(d, rng);
    const double scale = std::max(1.0, norm2(f));
    const Spectrum full = transform(f);
    const auto f0 = restrict_suffix(f, {0});
    const auto f1 = restrict_suffix(f, {1});
    const std::optional<Spectrum> s0 =
        f0.has_value() ? std::optional<Spectrum>(transform(*f0)) : std::nullopt;
    const std::optional<Spectrum> s1 =
        f1.has_value() ? std::optional<Spectrum>(transform(*f1)) : std::nullopt;
    for (const TopSet& S : indices) {
      const double c0 = s0.has_value() ? s0->at(S) : 0.0;
      const double c1 = s1.has_value() ? s1->at(S) : 0.0;
      const LiftedPair pair = lift_pair(c0, c1, d.n(), d.k(), S);
      worst = std::max(worst, std::abs(pair.coefficient - full.at(S)) / scale);
      if (pair.coefficient_with_n.has_value()) {
        std::vector<int> with_n = S.elements();
        with_n.push_back(d.n());
        worst = std::max(worst, std::abs(*pair.coefficient_with_n -
                                         full.at(TopSet(with_n))) / scale);
        // And the inverse rotation returns the restricted coefficients.
        const auto [p0, p1] =
            project_pair(full.at(S), full.at(TopSet(with_n)), d.n(), d.k(), S);
        worst = std::max(worst, std::abs(p0 - c0) / scale);
        worst = std::max(worst, std::abs(p1 - c1) / scale);
      }
    }
  }
  return report("restrict", worst);
}

CheckResult check_structure(const SliceDomain& d, int functions, Rng& rng) {
  double worst = 0.0;
  for (int t = 0; t < functions; ++t) {
    const SliceVector f = random_vector(d, rng);
    const double scale = std::max(1.0, norm_sq(f));
    const Spectrum full = transform(f);
    for (int fixed = 1; fixed <= d.n(); ++fixed) {
      const int head = d.n() - fixed;
      // Squared mass per prefix, from the full spectrum...
      std::map<std::vector<int>, double> by_prefix;
      for (const auto& [S, c] : full.coefficients()) {
        std::vector<int> prefix;
        for (int e : S.elements())
          if (e <= head) prefix.push_back(e);
        by_prefix[prefix] += c * c;
      }
      // ...must match the squared restricted coefficients over all suffixes.
      std::map<std::vector<int>, double> by_suffixes;
      std::vector<int> z(static_cast<std::size_t>(fixed));
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << fixed); ++mask) {
        for (int j = 0; j < fixed; ++j)
          z[static_cast<std::size_t>(j)] = static_cast<int>((mask >> j) & 1u);
        const auto fz = restrict_suffix(f, z);
        if (!fz.has_value()) continue;
        const Spectrum restricted = transform(*fz);
        for (const auto& [S, c] : restricted.coefficients())
          by_suffixes[S.elements()] += c * c;
      }
      for (const auto& [prefix, mass] : by_prefix) {
        const auto it = by_suffixes.find(prefix);
        const double other = it == by_suffixes.end() ? 0.0 : it->second;
        worst = std::max(worst, std::abs(mass - other) / scale);
      }
      for (const auto& [prefix, mass] : by_suffixes)
        if (!by_prefix.contains(prefix))
          worst = std::max(worst, std::abs(mass) / scale);
    }
  }
  return report("structure", worst);
}

CheckResult check_estimator_bounded(const SliceDomain& d, int samples, Rng& rng) {
  QueryFunction f = query_function_from_dense(random_pm1(d, rng));
  std::vector<std::pair<std::vector<int>, int>> configs;
  for (int i : {0, d.n() / 2, d.n()}) {
    configs.push_back({{}, i});
    if (i >= 2) configs.push_back({{2}, i});
    if (i >= 4) configs.push_back({{2, 4}, i});
  }
  double worst = 0.0;
  for (const auto& [U, i] : configs) {
    const BucketSampler sampler(d, U, i);
    const int per_config = std::max(1, samples / static_cast<int>(configs.size()));
    for (int s = 0; s < per_config; ++s) {
      const double value = sampler.draw(f, rng).value;
      worst = std::max(worst, std::abs(value) - 1.0);
    }
  }
  return CheckResult{"estimator-bounded", worst <= 1e-12,
                     deviation_detail(std::max(0.0, worst))};
}

CheckResult check_estimator_split(const SliceDomain& d, Rng& rng) {
  const SliceVector f = random_pm1(d, rng);
  double worst = 0.0;
  std::vector<int> U;
  for (int i = 0; i < d.n(); ++i) {
    const double whole = exact_bucket_weight(f, U, i);
    std::vector<int> with = U;
    with.push_back(i + 1);
    const double stay = exact_bucket_weight(f, U, i + 1);
    const double move = exact_bucket_weight(f, with, i + 1);
    worst = std::max(worst, rel_dev(whole, stay + move));
    if (move > stay) U = std::move(with);  // follow the heavier branch
  }
  return report("estimator-split", worst);
}

std::vector<CheckResult> claim_checks(const SliceDomain& d, const Options& options) {
  std::vector<CheckResult> results;
  const auto stream = [&](std::uint64_t tag) {
    return Rng(stream_key(options.seed, tag,
                          {d.n(), d.k()}));
  };
  Rng r1 = stream(1), r2 = stream(2), r3 = stream(3), r4 = stream(4), r5 = stream(5),
      r6 = stream(6), r7 = stream(7), r8 = stream(8);
  results.push_back(check_diffuddu(d, options.random_vectors, r1));
  results.push_back(check_nulltoeig(d));
  results.push_back(check_normofup(d, r2));
  results.push_back(check_ortho(d, r3));
  results.push_back(check_characnull(d));
  results.push_back(check_characortho(d));
  results.push_back(check_normofchi(d));
  results.push_back(check_norm(d));
  results.push_back(check_restrict(d, options.random_functions, r4));
  results.push_back(check_structure(d, options.structure_functions, r5));
  results.push_back(check_adjoint(d, options.random_vectors, r6));
  results.push_back(check_gram(d));
  results.push_back(check_eigenvalue(d));
  results.push_back(check_parseval_roundtrip(d, std::max(1, options.random_vectors / 10), r7));
  results.push_back(check_estimator_bounded(d, options.estimator_samples, r8));
  results.push_back(check_estimator_split(d, r8));
  return results;
}

}  // namespace slice::verify
