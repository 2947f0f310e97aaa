#include <algorithm>
#include <limits>
#include <numeric>

#include "wpevo/errors.hpp"
#include "wpevo/evolution.hpp"

namespace wpevo {

bool dominates(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ContractViolation("objective arity mismatch");
  bool strictly_better = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return false;
    if (a[i] > b[i]) strictly_better = true;
  }
  return strictly_better;
}

std::vector<std::vector<std::size_t>> fast_non_dominated_sort(std::span<const Objectives> points) {
  const std::size_t n = points.size();
  std::vector<std::vector<std::size_t>> dominated_by(n);
  std::vector<std::size_t> domination_count(n, 0);
  std::vector<std::vector<std::size_t>> fronts;
  if (n == 0) return fronts;

  std::vector<std::size_t> current;
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = p + 1; q < n; ++q) {
      if (dominates(points[p], points[q])) {
        dominated_by[p].push_back(q);
        ++domination_count[q];
      } else if (dominates(points[q], points[p])) {
        dominated_by[q].push_back(p);
        ++domination_count[p];
      }
    }
  }
  for (std::size_t p = 0; p < n; ++p) {
    if (domination_count[p] == 0) current.push_back(p);
  }
  while (!current.empty()) {
    std::vector<std::size_t> next;
    for (std::size_t p : current) {
      for (std::size_t q : dominated_by[p]) {
        if (--domination_count[q] == 0) next.push_back(q);
      }
    }
    std::sort(next.begin(), next.end());
    fronts.push_back(std::move(current));
    current = std::move(next);
  }
  return fronts;
}

std::vector<double> crowding_distance(std::span<const Objectives> points,
                                      std::span<const std::size_t> front) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const std::size_t size = front.size();
  std::vector<double> distance(size, 0.0);
  if (size <= 2) {
    std::fill(distance.begin(), distance.end(), kInf);
    return distance;
  }
  const std::size_t arity = points[front[0]].size();
  std::vector<std::size_t> order(size);
  for (std::size_t m = 0; m < arity; ++m) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return points[front[a]][m] < points[front[b]][m];
    });
    distance[order.front()] = kInf;
    distance[order.back()] = kInf;
    const double lo = points[front[order.front()]][m];
    const double hi = points[front[order.back()]][m];
    const double range = hi - lo;
    if (!(range > 0.0)) continue;
    for (std::size_t k = 1; k + 1 < size; ++k) {
      const double gap = points[front[order[k + 1]]][m] - points[front[order[k - 1]]][m];
      distance[order[k]] += gap / range;
    }
  }
  return distance;
}

namespace {

std::vector<std::vector<std::size_t>> rank_in_place(Population& population) {
  std::vector<Objectives> points;
  points.reserve(population.size());
  for (const auto& ind : population) points.push_back(ind.objectives);
  auto fronts = fast_non_dominated_sort(points);
  for (std::size_t r = 0; r < fronts.size(); ++r) {
    const auto distance = crowding_distance(points, fronts[r]);
    for (std::size_t k = 0; k < fronts[r].size(); ++k) {
      population[fronts[r][k]].rank = r;
      population[fronts[r][k]].crowding = distance[k];
    }
  }
  return fronts;
}

}  // namespace

void assign_rank_and_crowding(Population& population) { rank_in_place(population); }

Population nsga2_select(Population candidates, std::size_t mu) {
  if (candidates.size() < mu) {
    throw ContractViolation("nsga2_select: " + std::to_string(candidates.size()) +
                            " candidates for " + std::to_string(mu) + " slots");
  }
  const auto fronts = rank_in_place(candidates);

  Population selected;
  selected.reserve(mu);
  for (const auto& front : fronts) {
    if (selected.size() == mu) break;
    if (selected.size() + front.size() <= mu) {
      for (std::size_t i : front) selected.push_back(std::move(candidates[i]));
      continue;
    }
    std::vector<std::size_t> order(front.begin(), front.end());
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return candidates[a].crowding > candidates[b].crowding;
    });
    for (std::size_t k = 0; selected.size() < mu; ++k) {
      selected.push_back(std::move(candidates[order[k]]));
    }
  }
  return selected;
}

}  // namespace wpevo
