#pragma once

#include <random>
#include <string>
#include <vector>

#include "wcont/finset.hpp"
#include "wcont/skterm.hpp"

namespace wcont::test {

using Rng = std::mt19937_64;

inline FinSet random_set(Rng& rng, std::size_t max_size, const std::string& prefix) {
  std::uniform_int_distribution<std::size_t> d(0, max_size);
  std::size_t n = d(rng);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(prefix + std::to_string(i));
  return FinSet(std::move(labels));
}

inline FinSet nonempty_random_set(Rng& rng, std::size_t max_size,
                                  const std::string& prefix) {
  std::uniform_int_distribution<std::size_t> d(1, max_size);
  std::size_t n = d(rng);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(prefix + std::to_string(i));
  return FinSet(std::move(labels));
}

inline FinMap random_map(Rng& rng, const FinSet& dom, const FinSet& cod) {
  if (!dom.empty() && cod.empty())
    throw Error("random_map: no maps into the empty set");
  std::map<std::string, std::string> graph;
  if (!dom.empty()) {
    std::uniform_int_distribution<std::size_t> d(0, cod.size() - 1);
    for (const auto& x : dom.elements()) graph[x] = cod.elements()[d(rng)];
  }
  return FinMap(dom, cod, std::move(graph));
}

inline Term random_term(Rng& rng, std::size_t size) {
  if (size <= 1) return rng() % 2 ? Term::s() : Term::k();
  std::uniform_int_distribution<std::size_t> d(1, size - 1);
  std::size_t left = d(rng);
  return Term::app(random_term(rng, left), random_term(rng, size - left));
}

}  // namespace wcont::test
