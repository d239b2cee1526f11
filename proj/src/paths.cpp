#include "lightplan/paths.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace lightplan {

bool links_disjoint(const Path& p, const Path& q) {
  for (int lp : p.links) {
    for (int lq : q.links) {
      if (lp == lq) return false;
    }
  }
  return true;
}

Path make_path(const Topology& topology, const std::vector<int>& node_sequence) {
  if (node_sequence.empty()) {
    fail(Errc::bad_route, "<empty>", "a path needs at least one node");
  }
  Path path;
  path.nodes = node_sequence;
  std::set<int> seen;
  for (int n : node_sequence) {
    if (!seen.insert(n).second) {
      fail(Errc::bad_route, topology.node_name(n),
           "route revisits node '" + topology.node_name(n) + "'");
    }
  }
  for (std::size_t i = 0; i + 1 < node_sequence.size(); ++i) {
    int li = topology.link_between(node_sequence[i], node_sequence[i + 1]);
    if (li < 0) {
      fail(Errc::bad_route,
           topology.node_name(node_sequence[i]) + "-" +
               topology.node_name(node_sequence[i + 1]),
           "consecutive route nodes are not adjacent");
    }
    path.links.push_back(li);
  }
  return path;
}

std::vector<std::string> path_node_names(const Topology& topology, const Path& path) {
  std::vector<std::string> names;
  names.reserve(path.nodes.size());
  for (int n : path.nodes) names.push_back(topology.node_name(n));
  return names;
}

namespace {

// (hop count, node sequence) is the total order used everywhere; node indices
// follow the canonical sorted node-name order, so index comparison equals
// identifier comparison.
struct PathOrder {
  bool operator()(const Path& p, const Path& q) const {
    if (p.hop_count() != q.hop_count()) return p.hop_count() < q.hop_count();
    return p.nodes < q.nodes;
  }
};

// Minimum path from src to dst under PathOrder, on the subgraph that excludes
// the blocked nodes and links. BFS from dst yields remaining-hop distances;
// a greedy forward walk that always takes the smallest admissible neighbor
// then realizes the lexicographically smallest shortest path.
std::optional<Path> lex_min_shortest(const Topology& topology, int src, int dst,
                                     const std::vector<char>& node_blocked,
                                     const std::vector<char>& link_blocked) {
  const int n = topology.node_count();
  std::vector<int> dist(n, -1);
  std::deque<int> queue;
  dist[dst] = 0;
  queue.push_back(dst);
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (const auto& [v, li] : topology.adjacency()[u]) {
      if (node_blocked[v] || link_blocked[li] || dist[v] >= 0) continue;
      dist[v] = dist[u] + 1;
      queue.push_back(v);
    }
  }
  if (dist[src] < 0) return std::nullopt;

  std::vector<int> nodes{src};
  int cur = src;
  while (cur != dst) {
    int next = -1;
    for (const auto& [v, li] : topology.adjacency()[cur]) {
      if (node_blocked[v] || link_blocked[li]) continue;
      if (dist[v] == dist[cur] - 1) {
        next = v;  // adjacency is sorted, first hit is the smallest
        break;
      }
    }
    nodes.push_back(next);
    cur = next;
  }
  return make_path(topology, nodes);
}

}  // namespace

std::vector<Path> k_shortest_paths(const Topology& topology, int src, int dst, int k) {
  if (src == dst) {
    fail(Errc::invalid_argument, topology.node_name(src), "src and dst must differ");
  }
  if (k < 1) fail(Errc::invalid_argument, std::to_string(k), "k must be >= 1");

  const int n = topology.node_count();
  std::vector<char> no_nodes(n, 0);
  std::vector<char> no_links(topology.link_count(), 0);

  std::vector<Path> accepted;
  auto first = lex_min_shortest(topology, src, dst, no_nodes, no_links);
  if (!first) {
    fail(Errc::no_path,
         topology.node_name(src) + "-" + topology.node_name(dst),
         "no route between '" + topology.node_name(src) + "' and '" +
             topology.node_name(dst) + "'");
  }
  accepted.push_back(std::move(*first));

  // Yen's deviation search. Candidates live in a set ordered by PathOrder so
  // duplicates collapse and the next accepted path is always the order
  // minimum.
  std::set<Path, PathOrder> candidates;
  while (static_cast<int>(accepted.size()) < k) {
    const Path& prev = accepted.back();
    std::vector<char> node_blocked(n, 0);
    for (std::size_t i = 0; i + 1 < prev.nodes.size(); ++i) {
      const int spur_node = prev.nodes[i];
      std::vector<char> link_blocked(topology.link_count(), 0);
      // Any accepted path sharing the current root prefix must not be
      // regenerated: block its next link out of the spur node.
      for (const Path& p : accepted) {
        if (p.nodes.size() > i &&
            std::equal(p.nodes.begin(), p.nodes.begin() + static_cast<std::ptrdiff_t>(i + 1),
                       prev.nodes.begin())) {
          if (p.links.size() > i) link_blocked[p.links[i]] = 1;
        }
      }
      auto spur = lex_min_shortest(topology, spur_node, dst, node_blocked, link_blocked);
      if (spur) {
        std::vector<int> joined(prev.nodes.begin(),
                                prev.nodes.begin() + static_cast<std::ptrdiff_t>(i));
        joined.insert(joined.end(), spur->nodes.begin(), spur->nodes.end());
        // The spur walk cannot re-enter blocked root nodes, so the join stays
        // loopless.
        candidates.insert(make_path(topology, joined));
      }
      node_blocked[spur_node] = 1;
    }
    if (candidates.empty()) break;
    accepted.push_back(*candidates.begin());
    candidates.erase(candidates.begin());
  }
  return accepted;
}

std::vector<Path> k_shortest_paths(const Topology& topology, const std::string& src,
                                   const std::string& dst, int k) {
  return k_shortest_paths(topology, topology.node_index(src),
                          topology.node_index(dst), k);
}

std::vector<PathPair> disjoint_pairs(const Topology& topology, int src, int dst, int k) {
  std::vector<Path> paths = k_shortest_paths(topology, src, dst, k);
  struct Entry {
    int total_hops;
    int i;
    int j;
  };
  std::vector<Entry> entries;
  for (int i = 0; i < static_cast<int>(paths.size()); ++i) {
    for (int j = 0; j < static_cast<int>(paths.size()); ++j) {
      if (i == j) continue;
      if (!links_disjoint(paths[i], paths[j])) continue;
      entries.push_back({paths[i].hop_count() + paths[j].hop_count(), i, j});
    }
  }
  std::stable_sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) {
    return std::tuple(x.total_hops, x.i, x.j) < std::tuple(y.total_hops, y.i, y.j);
  });
  std::vector<PathPair> pairs;
  pairs.reserve(entries.size());
  for (const Entry& e : entries) {
    pairs.push_back({paths[e.i], paths[e.j]});
  }
  return pairs;
}

std::vector<PathPair> disjoint_pairs(const Topology& topology, const std::string& src,
                                     const std::string& dst, int k) {
  return disjoint_pairs(topology, topology.node_index(src), topology.node_index(dst), k);
}

}  // namespace lightplan
