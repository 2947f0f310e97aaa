#include <doctest.h>

#include <cmath>

#include "wpevo/errors.hpp"
#include "wpevo/weight_protection.hpp"

using namespace wpevo;

namespace {

ReferenceModel reference_of(const Genome& g) { return {g, {TaskId::Pendulum}}; }

Individual individual(const Genome& g, double revised) {
  Individual ind;
  ind.genome = g;
  ind.fitness = {revised, 0.0, revised};
  return ind;
}

}  // namespace

TEST_CASE("penalty of the reference against itself is zero") {
  Rng rng(1);
  const Genome g = random_genome(kStandardTopology, 0.3, rng);
  CHECK(wp_penalty(g, reference_of(g), WpConfig{}) == 0.0);
  CHECK(revised_fitness(0.7, 0.0) == 0.7);
}

TEST_CASE("penalty hand case") {
  // reference holds one connection at 1.0; the candidate moves it to 1.5 and
  // adds a new connection of weight 2.0
  Genome ref = Genome::empty();
  ref.set_weight(3, 1.0);
  ref.set_active(3, true);
  Genome g = ref;
  g.set_weight(3, 1.5);
  g.set_weight(50, 2.0);
  g.set_active(50, true);
  const double penalty = wp_penalty(g, reference_of(ref), WpConfig{0.035, 0.02, 0.2});
  CHECK(penalty == doctest::Approx(0.08875).epsilon(1e-12));
  CHECK(revised_fitness(0.9, penalty) == doctest::Approx(0.81125).epsilon(1e-12));

  // a dropped reference connection costs lambda1 * theta*^2
  Genome dropped = ref;
  dropped.set_active(3, false);
  CHECK(wp_penalty(dropped, reference_of(ref), WpConfig{0.035, 0.02, 0.2}) ==
        doctest::Approx(0.035).epsilon(1e-12));
}

TEST_CASE("penalty is linear in the lambdas") {
  Rng rng(2);
  const Genome ref = random_genome(kStandardTopology, 0.2, rng);
  const Genome g = random_genome(kStandardTopology, 0.3, rng);
  const double p1 = wp_penalty(g, reference_of(ref), WpConfig{1.0, 0.0, 0.0});
  const double p2 = wp_penalty(g, reference_of(ref), WpConfig{0.0, 1.0, 0.0});
  for (const auto& [l1, l2] : {std::pair{0.035, 0.02}, std::pair{0.2, 0.1}, std::pair{3.0, 0.5}}) {
    const double p = wp_penalty(g, reference_of(ref), WpConfig{l1, l2, 0.0});
    CHECK(p == doctest::Approx(l1 * p1 + l2 * p2).epsilon(1e-12));
  }
  const double doubled = wp_penalty(g, reference_of(ref), WpConfig{0.07, 0.04, 0.0});
  CHECK(doubled == doctest::Approx(2.0 * wp_penalty(g, reference_of(ref), WpConfig{})).epsilon(1e-12));
}

TEST_CASE("penalty model agrees across kernels and rejects other layouts") {
  Rng rng(3);
  const ReferenceModel ref = reference_of(random_genome(kStandardTopology, 0.2, rng));
  const PenaltyModel model(ref, 0.035, 0.02);
  const Genome g = random_genome(kStandardTopology, 0.5, rng);
  const double scalar = model(g, simd::scalar_kernels());
  CHECK(model(g) == scalar);
  if (const auto* avx2 = simd::avx2_kernels()) CHECK(model(g, *avx2) == scalar);
  const Genome other = Genome::empty(Topology{6, 4, 3});
  CHECK_THROWS_AS(model(other), StructuralError);
}

TEST_CASE("reference selection") {
  Rng rng(4);
  Population pop;
  for (double f : {0.2, 0.9, 0.5, 0.9}) pop.push_back(individual(random_genome(kStandardTopology, 0.1, rng), f));
  const ReferenceModel first = select_reference(pop, TaskId::CartPole);
  CHECK(first.genome == pop[1].genome);  // lowest index among ties
  CHECK(first.tasks_learned == std::vector<TaskId>{TaskId::CartPole});

  pop[2].fitness.revised = 0.95;
  const ReferenceModel second = select_reference(pop, TaskId::Pendulum, &first);
  CHECK(second.genome == pop[2].genome);
  CHECK(second.tasks_learned == std::vector<TaskId>{TaskId::CartPole, TaskId::Pendulum});
  CHECK_THROWS_AS(select_reference(Population{}, TaskId::CartPole), ContractViolation);
}

TEST_CASE("modularity objective schedule") {
  CHECK(modularity_period(0.2) == 5);
  CHECK(modularity_period(0.0) == 0);
  CHECK(modularity_period(1.0) == 1);
  CHECK(modularity_period(0.3) == 3);
  Genome g = Genome::empty();
  g.set_active(0, true);
  g.set_active(1, true);
  const Individual ind = individual(g, 0.4);
  const WpConfig wp{0.035, 0.02, 0.2};
  int active = 0;
  for (std::size_t gen = 0; gen < 20; ++gen) {
    const Objectives o = objectives_for_generation(gen, wp, ind);
    CHECK(o[0] == 0.4);
    if (o.size() == 2) {
      ++active;
      CHECK(gen % 5 == 0);
      CHECK(o[1] == -2.0);
    }
  }
  CHECK(active == 4);
  CHECK(objectives_for_generation(0, WpConfig{0.035, 0.02, 0.0}, ind).size() == 1);
}

TEST_CASE("weight protection config validation") {
  CHECK_NOTHROW(WpConfig{}.validate());
  CHECK_THROWS_AS((WpConfig{-0.1, 0.02, 0.2}.validate()), ConfigError);
  CHECK_THROWS_AS((WpConfig{0.035, 0.02, 1.5}.validate()), ConfigError);
}
