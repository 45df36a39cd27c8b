#pragma once

#include <random>

#include "pcook/allocator.hpp"

namespace pcook::testing {

inline AuxResult aux_entry(bool reach, bool feas, std::optional<int> cost, double eps = 1e-3) {
  AuxResult r;
  r.reach = reach;
  r.feas = feas;
  r.cost = cost;
  r.p_reach = eps_map(reach, eps);
  r.p_feas = eps_map(feas, eps);
  return r;
}

inline AllocationProblem random_problem(std::mt19937_64& rng, int n, int m) {
  AllocationProblem p;
  p.n_agents = n;
  for (int i = 0; i < m; ++i) {
    std::vector<AuxResult> row;
    for (int a = 0; a < n; ++a) {
      const int kind = static_cast<int>(rng() % 4);
      const bool reach = kind >= 2;
      const bool feas = kind >= 1;
      row.push_back(aux_entry(reach, feas, feas ? std::optional<int>(1 + static_cast<int>(rng() % 40)) : std::nullopt));
    }
    p.aux.push_back(std::move(row));
  }
  p.ongoing.assign(static_cast<std::size_t>(m), std::vector<bool>(static_cast<std::size_t>(n), false));
  p.stuck = p.ongoing;
  for (int i = 0; i < m; ++i) {
    for (int a = 0; a < n; ++a) {
      p.ongoing[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)] = rng() % 5 == 0;
      p.stuck[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)] = rng() % 9 == 0;
    }
  }
  for (int a = 0; a < n; ++a) p.classes.push_back(static_cast<int>(rng() % 2));
  return p;
}

}  // namespace pcook::testing
