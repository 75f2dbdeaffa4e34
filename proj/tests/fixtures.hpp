#pragma once

#include <initializer_list>
#include <string>

#include "mdc/patterns.hpp"

namespace mdc::test {

inline PatternSet patterns(std::initializer_list<const char*> texts) {
  PatternSet out;
  for (const char* t : texts) out.insert(BlockagePattern::parse(t));
  return out;
}

inline Grouping grouping(std::initializer_list<const char*> g1,
                         std::initializer_list<const char*> g2) {
  const PatternSet a = patterns(g1);
  const PatternSet b = patterns(g2);
  const int e = !a.empty() ? a.begin()->num_paths() : b.begin()->num_paths();
  return Grouping(e, a, b);
}

inline NetworkConfig config(int num_paths, double capacity = 1.0) {
  NetworkConfig cfg;
  cfg.num_paths = num_paths;
  cfg.capacity = capacity;
  cfg.blockage_probs.assign(num_paths, 0.1);
  if (num_paths == 3) cfg.blockage_probs = {0.1, 0.2, 0.3};
  return cfg;
}

// The four three-path instances used throughout the examples.
inline Grouping example2() { return grouping({"100", "110"}, {"011", "101"}); }
inline Grouping example3() {
  return grouping({"100", "010", "101", "011"}, {"110", "111"});
}
inline Grouping example4() {
  return grouping({"100", "010", "110", "011"}, {"101", "111"});
}
inline Grouping example5() {
  return grouping({"100", "010", "110", "011"}, {"111"});
}

// Every disjoint (G1, G2) split of the 2^E - 1 patterns, conforming or not.
template <class F>
void for_each_grouping(int num_paths, F&& f) {
  const auto all = enumerate_patterns(num_paths);
  const std::size_t m = all.size();
  std::size_t total = 1;
  for (std::size_t i = 0; i < m; ++i) total *= 3;
  for (std::size_t code = 0; code < total; ++code) {
    PatternSet g1, g2;
    std::size_t c = code;
    for (std::size_t i = 0; i < m; ++i, c /= 3) {
      if (c % 3 == 1) g1.insert(all[i]);
      if (c % 3 == 2) g2.insert(all[i]);
    }
    f(Grouping(num_paths, g1, g2));
  }
}

}  // namespace mdc::test
