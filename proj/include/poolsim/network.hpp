#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "poolsim/errors.hpp"

namespace poolsim {

using NodeId = std::int64_t;

struct NetworkNode {
    NodeId id;
    double x_m;
    double y_m;
};

struct NetworkEdge {
    NodeId from;
    NodeId to;
    double length_m;
};

struct Route {
    std::vector<NodeId> nodes; // size >= 1; single node when from == to
    double length_m = 0.0;
    double duration_s = 0.0;   // always length_m / speed
};

/// Immutable directed road graph with one network-wide speed.
///
/// All-pairs shortest distances and lexicographic-smallest successors are
/// precomputed at construction (single-threaded); afterwards the object is
/// read-only and safe to share across concurrent sweep workers. Construction
/// rejects graphs that are not strongly connected.
class Network {
public:
    Network(std::vector<NetworkNode> nodes, std::vector<NetworkEdge> edges, double speed_mps);

    std::size_t node_count() const { return nodes_.size(); }
    std::size_t edge_count() const { return n_edges_; }
    double speed_mps() const { return speed_mps_; }
    const std::vector<NetworkNode>& nodes() const { return nodes_; }
    bool has_node(NodeId id) const { return index_.count(id) != 0; }

    // Shortest-path length / travel time between existing nodes.
    // Unknown ids throw std::out_of_range.
    double distance_m(NodeId from, NodeId to) const;
    double travel_time_s(NodeId from, NodeId to) const;

    // Minimal-length route; among equal-length paths the lexicographically
    // smallest node-id sequence is returned (greedy smallest next hop).
    Route shortest_path(NodeId from, NodeId to) const;

    // Outgoing edges as (neighbour id, length), ascending by neighbour id.
    std::vector<std::pair<NodeId, double>> neighbors(NodeId id) const;

private:
    std::size_t index_of(NodeId id) const;

    std::vector<NetworkNode> nodes_;
    std::unordered_map<NodeId, std::size_t> index_;
    double speed_mps_ = 0.0;
    std::size_t n_edges_ = 0;

    // adjacency sorted by neighbour node id (determinism of tie-breaks)
    std::vector<std::vector<std::pair<std::size_t, double>>> out_;
    std::vector<double> dist_;        // row-major [from * V + to]
    std::vector<std::int32_t> succ_;  // next node index toward target, -1 at target
};

// rows x cols bidirectional lattice with uniform edge length; node ids are
// row-major starting at 0. Default speed is Table-level 36 km/h.
Network make_grid(int rows, int cols, double edge_len_m, double speed_mps = 10.0);

// CSV import, headers required: nodes `node_id,x_m,y_m`,
// edges `from_id,to_id,length_m`. Duplicate edges keep the shorter length.
Network load_network(const std::string& nodes_file, const std::string& edges_file,
                     double speed_mps);

} // namespace poolsim
