#include "bopcrit/generators.hpp"

#include "bopcrit/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bopcrit {

Graph erdos_renyi(int n, double p, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("erdos_renyi requires n >= 1");
  if (!(p > 0.0) || p > 1.0) throw std::invalid_argument("erdos_renyi requires p in (0, 1]");
  Rng rng(seed);
  Matrix w = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.uniform01() < p) {
        w(i, j) = 1.0;
        w(j, i) = 1.0;
      }
  return Graph::from_weights(std::move(w));
}

Graph albert_barabasi(int n, int m, std::uint64_t seed) {
  if (m < 1) throw std::invalid_argument("albert_barabasi requires m >= 1");
  if (n < m + 1) throw std::invalid_argument("albert_barabasi requires n >= m + 1");
  Rng rng(seed);
  Matrix w = Matrix::Zero(n, n);
  // Degree-proportional sampling via a bag of edge endpoints.
  std::vector<int> bag;
  bag.reserve(static_cast<std::size_t>(2 * (m * (m + 1) / 2 + m * (n - m - 1))));
  for (int i = 0; i <= m; ++i)
    for (int j = i + 1; j <= m; ++j) {
      w(i, j) = 1.0;
      w(j, i) = 1.0;
      bag.push_back(i);
      bag.push_back(j);
    }
  std::vector<int> targets;
  for (int v = m + 1; v < n; ++v) {
    targets.clear();
    while (static_cast<int>(targets.size()) < m) {
      const int t = bag[static_cast<std::size_t>(rng.below(bag.size()))];
      if (std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
    }
    for (int t : targets) {
      w(v, t) = 1.0;
      w(t, v) = 1.0;
      bag.push_back(v);
      bag.push_back(t);
    }
  }
  return Graph::from_weights(std::move(w));
}

Graph generate(const GeneratorSpec& spec) {
  return spec.kind == GeneratorSpec::Kind::ER ? erdos_renyi(spec.n, spec.p, spec.seed)
                                              : albert_barabasi(spec.n, spec.m, spec.seed);
}

std::vector<PopulationEntry> sample_population(int count, GeneratorSpec::Kind kind, int n_min,
                                               int n_max, std::uint64_t seed) {
  if (count < 0) throw std::invalid_argument("population count must be non-negative");
  if (n_min < 2 || n_max < n_min) throw std::invalid_argument("invalid population size range");
  std::vector<PopulationEntry> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    Rng draw(derive_seed(seed, static_cast<std::uint64_t>(i)));
    GeneratorSpec spec;
    spec.kind = kind;
    spec.n = draw.int_in(n_min, n_max);
    if (kind == GeneratorSpec::Kind::ER) {
      spec.p = 0.5 * (1.0 - draw.uniform01());  // uniform in (0, 0.5]
    } else {
      spec.m = std::min(draw.int_in(1, 6), spec.n - 1);
    }
    spec.seed = derive_seed(seed, 0x10000u + static_cast<std::uint64_t>(i));
    out.push_back({spec, generate(spec)});
  }
  return out;
}

}  // namespace bopcrit
