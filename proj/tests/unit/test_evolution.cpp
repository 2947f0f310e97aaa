#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <vector>

#include "wpevo/errors.hpp"
#include "wpevo/evolution.hpp"

using namespace wpevo;

namespace {

// Reference partition: peel off the points no remaining point dominates.
std::vector<std::vector<std::size_t>> brute_force_fronts(const std::vector<Objectives>& pts) {
  std::vector<std::vector<std::size_t>> fronts;
  std::vector<bool> taken(pts.size(), false);
  std::size_t left = pts.size();
  while (left > 0) {
    std::vector<std::size_t> front;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (taken[i]) continue;
      bool dominated = false;
      for (std::size_t j = 0; j < pts.size() && !dominated; ++j) {
        if (taken[j] || j == i) continue;
        bool ge = true, gt = false;
        for (std::size_t k = 0; k < pts[i].size(); ++k) {
          ge = ge && pts[j][k] >= pts[i][k];
          gt = gt || pts[j][k] > pts[i][k];
        }
        dominated = ge && gt;
      }
      if (!dominated) front.push_back(i);
    }
    for (std::size_t i : front) taken[i] = true;
    left -= front.size();
    fronts.push_back(front);
  }
  return fronts;
}

// Fitness rises as the effective weights approach 0.5.
Fitness closeness(const Genome& g) {
  double d = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) d += std::abs(g.effective(i) - 0.5);
  const double f = 1.0 / (1.0 + d);
  return {f, 0.0, f};
}

Objectives revised_only(const Individual& ind) { return {ind.fitness.revised}; }

Population evaluated_population(const EvolutionConfig& config, std::uint64_t seed) {
  Rng rng(seed);
  Population pop = initial_population(config, kStandardTopology, rng);
  evaluate_population(pop, closeness, 1);
  return pop;
}

}  // namespace

TEST_CASE("dominance examples") {
  const std::vector<double> a{1, 2}, b{1, 1}, c{0, 3};
  CHECK(dominates(a, b));
  CHECK_FALSE(dominates(b, a));
  CHECK_FALSE(dominates(a, a));
  CHECK_FALSE(dominates(a, c));
  CHECK_FALSE(dominates(c, a));
  const std::vector<double> three{1, 1, 1};
  CHECK_THROWS_AS(dominates(a, three), ContractViolation);
}

TEST_CASE("fast non-dominated sort matches the brute-force partition") {
  Rng rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng() % 64;
    const std::size_t m = 1 + rng() % 3;
    std::vector<Objectives> pts(n, Objectives(m));
    for (auto& p : pts) {
      for (double& v : p) v = static_cast<double>(rng() % 6);  // small grid forces ties
    }
    const auto fronts = fast_non_dominated_sort(pts);
    REQUIRE(fronts == brute_force_fronts(pts));
  }
}

TEST_CASE("crowding distance") {
  const std::vector<Objectives> line{{0.0}, {1.0}, {2.0}};
  const std::vector<std::size_t> all{0, 1, 2};
  const auto d1 = crowding_distance(line, all);
  CHECK(std::isinf(d1[0]));
  CHECK(d1[1] == 1.0);
  CHECK(std::isinf(d1[2]));

  const std::vector<Objectives> front{{0, 4}, {1, 3}, {3, 1}, {4, 0}};
  const std::vector<std::size_t> idx{0, 1, 2, 3};
  const auto d2 = crowding_distance(front, idx);
  CHECK(d2[1] == doctest::Approx(3.0 / 4.0 + 3.0 / 4.0).epsilon(1e-15));
  CHECK(d2[2] == doctest::Approx(1.5).epsilon(1e-15));

  const std::vector<Objectives> flat{{1, 0}, {1, 1}, {1, 2}};
  const auto d3 = crowding_distance(flat, all);
  CHECK(d3[1] == 1.0);  // the zero-range objective adds nothing
}

TEST_CASE("single-objective selection keeps the top mu") {
  Rng rng(8);
  Population cands(200);
  std::vector<double> values;
  for (auto& ind : cands) {
    ind.objectives = {uniform01(rng)};
    values.push_back(ind.objectives[0]);
  }
  std::sort(values.rbegin(), values.rend());
  const Population kept = nsga2_select(cands, 100);
  REQUIRE(kept.size() == 100);
  std::vector<double> got;
  for (const auto& ind : kept) got.push_back(ind.objectives[0]);
  std::sort(got.rbegin(), got.rend());
  CHECK(got == std::vector<double>(values.begin(), values.begin() + 100));
}

TEST_CASE("oversized first front is truncated by crowding") {
  Population cands(150);
  for (std::size_t i = 0; i < cands.size(); ++i) {
    const double x = static_cast<double>(i) / 149.0;
    cands[i].objectives = {x, 1.0 - x * x};  // one non-dominated front
  }
  const Population kept = nsga2_select(cands, 100);
  REQUIRE(kept.size() == 100);
  bool has_low = false, has_high = false;
  for (const auto& ind : kept) {
    CHECK(ind.rank == 0);
    has_low = has_low || ind.objectives[0] == 0.0;
    has_high = has_high || ind.objectives[0] == 1.0;
  }
  CHECK(has_low);
  CHECK(has_high);
}

TEST_CASE("single-point crossover exchanges tails") {
  Rng rng(1);
  const Genome a = random_genome(kStandardTopology, 0.5, rng);
  const Genome b = random_genome(kStandardTopology, 0.5, rng);
  const auto [c, d] = single_point_crossover_at(a, b, 40);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Genome& head_c = i < 40 ? a : b;
    const Genome& head_d = i < 40 ? b : a;
    CHECK(c.weight(i) == head_c.weight(i));
    CHECK(c.active(i) == head_c.active(i));
    CHECK(d.weight(i) == head_d.weight(i));
    CHECK(d.active(i) == head_d.active(i));
  }
  CHECK_THROWS_AS(single_point_crossover_at(a, b, 0), ContractViolation);
  CHECK_THROWS_AS(single_point_crossover_at(a, b, 108), ContractViolation);
}

TEST_CASE("gaussian mutation perturbs about 10% of active genes") {
  EvolutionConfig config;
  config.structural_prob = 0.0;
  Rng rng(99);
  const Genome full = random_genome(kStandardTopology, 1.0, rng);
  const int trials = 4000;
  double changed = 0.0;
  for (int t = 0; t < trials; ++t) {
    const Genome m = gaussian_mutate(full, rng, config);
    for (std::size_t i = 0; i < m.size(); ++i) changed += m.weight(i) != full.weight(i);
  }
  const double mean = changed / trials;
  CHECK(mean == doctest::Approx(10.8).epsilon(0.05));

  const Genome sparse = random_genome(kStandardTopology, 0.1, rng);
  for (int t = 0; t < 200; ++t) {
    const Genome m = gaussian_mutate(sparse, rng, config);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (!sparse.active(i)) CHECK(m.weight(i) == sparse.weight(i));
    }
  }
}

TEST_CASE("structural toggle adds a connection to an empty genome") {
  EvolutionConfig config;
  config.per_gene_prob = 0.0;
  config.structural_prob = 1.0;
  Rng rng(4);
  const Genome m = gaussian_mutate(Genome::empty(), rng, config);
  CHECK(connection_count(m) == 1);
}

TEST_CASE("elitism keeps the best revised fitness") {
  EvolutionConfig config;
  Population pop = evaluated_population(config, 10);
  Rng rng(11);
  double best = 0.0;
  for (const auto& ind : pop) best = std::max(best, ind.fitness.revised);
  for (int gen = 0; gen < 30; ++gen) {
    pop = evolve_generation(pop, closeness, revised_only, config, rng);
    double now = 0.0;
    for (const auto& ind : pop) now = std::max(now, ind.fitness.revised);
    CHECK(now >= best);
    best = now;
  }
}

TEST_CASE("without variation every offspring is a copy of a parent") {
  EvolutionConfig config;
  config.crossover_prob = 0.0;
  config.mutation_prob = 0.0;
  const Population pop = evaluated_population(config, 21);
  Rng rng(22);
  const Population next = evolve_generation(pop, closeness, revised_only, config, rng);
  REQUIRE(next.size() == pop.size());
  for (const auto& ind : next) {
    const bool found = std::any_of(pop.begin(), pop.end(),
                                   [&](const Individual& p) { return p.genome == ind.genome; });
    CHECK(found);
  }
}

TEST_CASE("evolution is deterministic and independent of thread count") {
  EvolutionConfig one;
  EvolutionConfig many;
  many.threads = 3;
  Population a = evaluated_population(one, 5);
  Population b = a;
  Rng ra(6), rb(6);
  for (int gen = 0; gen < 5; ++gen) {
    a = evolve_generation(a, closeness, revised_only, one, ra);
    b = evolve_generation(b, closeness, revised_only, many, rb);
  }
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].genome == b[i].genome);
}

TEST_CASE("evaluator failures score zero") {
  EvolutionConfig config;
  config.population_size = 4;
  Rng rng(1);
  Population pop = initial_population(config, kStandardTopology, rng);
  evaluate_population(
      pop, [](const Genome&) -> Fitness { throw EvaluationError("diverged"); }, 1);
  for (const auto& ind : pop) CHECK(ind.fitness.revised == 0.0);
}
