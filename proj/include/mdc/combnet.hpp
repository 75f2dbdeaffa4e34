#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mdc/patterns.hpp"

namespace mdc {

enum class NodeKind { Source, Intermediate, Public, Private };
const char* to_string(NodeKind kind);

struct CombNode {
  std::string id;
  NodeKind kind;

  friend bool operator==(const CombNode&, const CombNode&) = default;
};

struct CombEdge {
  std::string from;
  std::string to;

  friend bool operator==(const CombEdge&, const CombEdge&) = default;
};

/// Source "s", one intermediate "p<i>" per path, one destination per group
/// pattern (named by its text form). Every edge has capacity C.
struct CombinationNetwork {
  double capacity = 1.0;
  std::vector<CombNode> nodes;  // source, intermediates, destinations
  std::vector<CombEdge> edges;

  int num_intermediates() const;
  int num_destinations() const;
  std::vector<std::string> destinations(NodeKind kind) const;

  friend bool operator==(const CombinationNetwork&,
                         const CombinationNetwork&) = default;
};

// Throws Error(DegenerateInstance) when both groups are empty.
CombinationNetwork reduce_to_combination_network(const Grouping& g,
                                                 const NetworkConfig& cfg);

// Max-flow value from the source to `dest`, in units of C multiplied back
// to capacity. Throws Error(NotFound) for unknown destinations.
double min_cut(const CombinationNetwork& net, const std::string& dest);

// Same cut counted in edges (each edge carries one unit of C).
int min_cut_units(const CombinationNetwork& net, const std::string& dest);

// format is "dot" or "json".
std::string export_network(const CombinationNetwork& net,
                           const std::string& format);

nlohmann::json to_json(const CombinationNetwork& net);
CombinationNetwork combination_network_from_json(const nlohmann::json& j);

}  // namespace mdc
