#include "mdc/combnet.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/edmonds_karp_max_flow.hpp>

#include "mdc/error.hpp"

namespace mdc {

namespace {

NodeKind kind_from_string(const std::string& s) {
  if (s == "source") return NodeKind::Source;
  if (s == "intermediate") return NodeKind::Intermediate;
  if (s == "public") return NodeKind::Public;
  if (s == "private") return NodeKind::Private;
  throw Error(ErrorKind::Parse, "unknown node kind '" + s + "'");
}

std::string format_capacity(double c) {
  std::ostringstream os;
  os.precision(17);
  os << c;
  return os.str();
}

}  // namespace

const char* to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::Source: return "source";
    case NodeKind::Intermediate: return "intermediate";
    case NodeKind::Public: return "public";
    case NodeKind::Private: return "private";
  }
  return "source";
}

int CombinationNetwork::num_intermediates() const {
  return static_cast<int>(std::count_if(nodes.begin(), nodes.end(), [](const auto& n) {
    return n.kind == NodeKind::Intermediate;
  }));
}

int CombinationNetwork::num_destinations() const {
  return static_cast<int>(std::count_if(nodes.begin(), nodes.end(), [](const auto& n) {
    return n.kind == NodeKind::Public || n.kind == NodeKind::Private;
  }));
}

std::vector<std::string> CombinationNetwork::destinations(NodeKind kind) const {
  std::vector<std::string> out;
  for (const auto& n : nodes)
    if (n.kind == kind) out.push_back(n.id);
  return out;
}

CombinationNetwork reduce_to_combination_network(const Grouping& g,
                                                 const NetworkConfig& cfg) {
  if (g.empty())
    throw Error(ErrorKind::DegenerateInstance,
                "no patterns to turn into destinations");
  if (cfg.num_paths != g.num_paths())
    throw Error(ErrorKind::InvalidInput,
                "grouping and configuration disagree on the number of paths");
  CombinationNetwork net;
  net.capacity = cfg.capacity;
  net.nodes.push_back({"s", NodeKind::Source});
  for (int i = 1; i <= g.num_paths(); ++i) {
    net.nodes.push_back({"p" + std::to_string(i), NodeKind::Intermediate});
    net.edges.push_back({"s", "p" + std::to_string(i)});
  }
  for (const auto& b : g.all_patterns()) {
    const std::string id = b.to_string();
    net.nodes.push_back(
        {id, g.g1().contains(b) ? NodeKind::Public : NodeKind::Private});
  }
  for (int i = 1; i <= g.num_paths(); ++i)
    for (const auto& b : g.all_patterns())
      if (b.unblocked(i))
        net.edges.push_back({"p" + std::to_string(i), b.to_string()});
  return net;
}

int min_cut_units(const CombinationNetwork& net, const std::string& dest) {
  using Traits = boost::adjacency_list_traits<boost::vecS, boost::vecS,
                                              boost::directedS>;
  using Graph = boost::adjacency_list<
      boost::vecS, boost::vecS, boost::directedS, boost::no_property,
      boost::property<
          boost::edge_capacity_t, long,
          boost::property<boost::edge_residual_capacity_t, long,
                          boost::property<boost::edge_reverse_t,
                                          Traits::edge_descriptor>>>>;

  const auto target = std::find_if(net.nodes.begin(), net.nodes.end(), [&](const auto& n) {
    return n.id == dest && (n.kind == NodeKind::Public || n.kind == NodeKind::Private);
  });
  if (target == net.nodes.end())
    throw Error(ErrorKind::NotFound, "no destination named '" + dest + "'");

  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < net.nodes.size(); ++i) index[net.nodes[i].id] = i;
  Graph graph(net.nodes.size());
  auto capacity = boost::get(boost::edge_capacity, graph);
  auto reverse = boost::get(boost::edge_reverse, graph);
  for (const auto& e : net.edges) {
    const auto u = index.at(e.from);
    const auto v = index.at(e.to);
    auto fwd = boost::add_edge(u, v, graph).first;
    auto back = boost::add_edge(v, u, graph).first;
    capacity[fwd] = 1;
    capacity[back] = 0;
    reverse[fwd] = back;
    reverse[back] = fwd;
  }
  return static_cast<int>(boost::edmonds_karp_max_flow(
      graph, index.at("s"), index.at(dest)));
}

double min_cut(const CombinationNetwork& net, const std::string& dest) {
  return min_cut_units(net, dest) * net.capacity;
}

nlohmann::json to_json(const CombinationNetwork& net) {
  nlohmann::json nodes = nlohmann::json::array();
  for (const auto& n : net.nodes)
    nodes.push_back({{"id", n.id}, {"kind", to_string(n.kind)}});
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : net.edges)
    edges.push_back({{"from", e.from}, {"to", e.to}, {"capacity", net.capacity}});
  return {{"capacity", net.capacity}, {"nodes", nodes}, {"edges", edges}};
}

CombinationNetwork combination_network_from_json(const nlohmann::json& j) {
  try {
    CombinationNetwork net;
    net.capacity = j.at("capacity").get<double>();
    for (const auto& n : j.at("nodes"))
      net.nodes.push_back({n.at("id").get<std::string>(),
                           kind_from_string(n.at("kind").get<std::string>())});
    for (const auto& e : j.at("edges"))
      net.edges.push_back({e.at("from").get<std::string>(),
                           e.at("to").get<std::string>()});
    return net;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("combination network: ") + e.what());
  }
}

std::string export_network(const CombinationNetwork& net,
                           const std::string& format) {
  if (format == "json") return to_json(net).dump(2) + "\n";
  if (format != "dot")
    throw Error(ErrorKind::InvalidInput,
                "unknown export format '" + format + "' (use dot or json)");
  std::ostringstream os;
  os << "digraph combination_network {\n";
  os << "  rankdir=TB;\n";
  for (const auto& n : net.nodes)
    os << "  \"" << n.id << "\" [kind=\"" << to_string(n.kind) << "\"];\n";
  const std::string cap = format_capacity(net.capacity);
  for (const auto& e : net.edges)
    os << "  \"" << e.from << "\" -> \"" << e.to << "\" [capacity=" << cap
       << "];\n";
  os << "}\n";
  return os.str();
}

}  // namespace mdc
