#include "poolsim/network.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <queue>
#include <stdexcept>

#include "csv_util.hpp"

namespace poolsim {

using csvutil::parse_double_field;
using csvutil::parse_int_field;
using csvutil::read_csv;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
} // namespace

Network::Network(std::vector<NetworkNode> nodes, std::vector<NetworkEdge> edges, double speed_mps)
    : nodes_(std::move(nodes)), speed_mps_(speed_mps) {
    if (speed_mps_ <= 0.0)
        throw std::invalid_argument("network speed must be > 0");
    if (nodes_.empty())
        throw ValidationError("network has no nodes");

    index_.reserve(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (!index_.emplace(nodes_[i].id, i).second)
            throw ValidationError("duplicate node id " + std::to_string(nodes_[i].id));
    }

    const std::size_t n = nodes_.size();
    // duplicate edges collapse to the shorter length
    std::vector<std::map<std::size_t, double>> out_map(n);
    for (const NetworkEdge& e : edges) {
        auto from_it = index_.find(e.from);
        if (from_it == index_.end())
            throw ValidationError("edge references unknown node " + std::to_string(e.from));
        auto to_it = index_.find(e.to);
        if (to_it == index_.end())
            throw ValidationError("edge references unknown node " + std::to_string(e.to));
        if (e.length_m <= 0.0)
            throw ValidationError("edge " + std::to_string(e.from) + "->" + std::to_string(e.to) +
                                  " has non-positive length");
        auto [it, inserted] = out_map[from_it->second].emplace(to_it->second, e.length_m);
        if (!inserted && e.length_m < it->second)
            it->second = e.length_m;
    }

    out_.resize(n);
    std::vector<std::vector<std::pair<std::size_t, double>>> in(n);
    for (std::size_t u = 0; u < n; ++u) {
        out_[u].assign(out_map[u].begin(), out_map[u].end());
        std::sort(out_[u].begin(), out_[u].end(), [this](const auto& a, const auto& b) {
            return nodes_[a.first].id < nodes_[b.first].id;
        });
        n_edges_ += out_[u].size();
        for (const auto& [v, len] : out_[u])
            in[v].emplace_back(u, len);
    }

    // Per-target reverse Dijkstra fills one distance column and the
    // smallest-next-id successor on equal-length paths.
    dist_.assign(n * n, kInf);
    succ_.assign(n * n, -1);
    std::vector<double> d(n);
    using QueueItem = std::pair<double, std::size_t>;
    for (std::size_t target = 0; target < n; ++target) {
        std::fill(d.begin(), d.end(), kInf);
        d[target] = 0.0;
        std::priority_queue<QueueItem, std::vector<QueueItem>, std::greater<>> pq;
        pq.emplace(0.0, target);
        while (!pq.empty()) {
            auto [du, u] = pq.top();
            pq.pop();
            if (du > d[u])
                continue;
            for (const auto& [w, len] : in[u]) {
                const double cand = d[u] + len;
                if (cand < d[w]) {
                    d[w] = cand;
                    pq.emplace(cand, w);
                }
            }
        }
        for (std::size_t u = 0; u < n; ++u) {
            if (d[u] == kInf)
                throw ValidationError("network is not strongly connected: no path " +
                                      std::to_string(nodes_[u].id) + " -> " +
                                      std::to_string(nodes_[target].id));
            dist_[u * n + target] = d[u];
            if (u == target)
                continue;
            for (const auto& [v, len] : out_[u]) { // ascending neighbour id
                if (d[v] + len == d[u]) {
                    succ_[u * n + target] = static_cast<std::int32_t>(v);
                    break;
                }
            }
        }
    }
}

std::size_t Network::index_of(NodeId id) const {
    auto it = index_.find(id);
    if (it == index_.end())
        throw std::out_of_range("unknown node " + std::to_string(id));
    return it->second;
}

double Network::distance_m(NodeId from, NodeId to) const {
    return dist_[index_of(from) * nodes_.size() + index_of(to)];
}

double Network::travel_time_s(NodeId from, NodeId to) const {
    return distance_m(from, to) / speed_mps_;
}

Route Network::shortest_path(NodeId from, NodeId to) const {
    const std::size_t n = nodes_.size();
    std::size_t u = index_of(from);
    const std::size_t target = index_of(to);
    Route route;
    route.nodes.push_back(nodes_[u].id);
    while (u != target) {
        const std::int32_t next = succ_[u * n + target];
        const auto& adj = out_[u];
        auto it = std::find_if(adj.begin(), adj.end(),
                               [next](const auto& e) { return e.first == static_cast<std::size_t>(next); });
        route.length_m += it->second;
        u = static_cast<std::size_t>(next);
        route.nodes.push_back(nodes_[u].id);
    }
    route.duration_s = route.length_m / speed_mps_;
    return route;
}

std::vector<std::pair<NodeId, double>> Network::neighbors(NodeId id) const {
    std::vector<std::pair<NodeId, double>> out;
    for (const auto& [v, len] : out_[index_of(id)])
        out.emplace_back(nodes_[v].id, len);
    return out;
}

Network make_grid(int rows, int cols, double edge_len_m, double speed_mps) {
    if (rows < 2 || cols < 2)
        throw std::invalid_argument("grid needs at least 2 rows and 2 columns");
    if (edge_len_m <= 0.0)
        throw std::invalid_argument("grid edge length must be > 0");

    std::vector<NetworkNode> nodes;
    nodes.reserve(static_cast<std::size_t>(rows) * cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            nodes.push_back({static_cast<NodeId>(r) * cols + c, c * edge_len_m, r * edge_len_m});

    std::vector<NetworkEdge> edges;
    auto id_at = [cols](int r, int c) { return static_cast<NodeId>(r) * cols + c; };
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            if (c + 1 < cols) {
                edges.push_back({id_at(r, c), id_at(r, c + 1), edge_len_m});
                edges.push_back({id_at(r, c + 1), id_at(r, c), edge_len_m});
            }
            if (r + 1 < rows) {
                edges.push_back({id_at(r, c), id_at(r + 1, c), edge_len_m});
                edges.push_back({id_at(r + 1, c), id_at(r, c), edge_len_m});
            }
        }
    }
    return Network(std::move(nodes), std::move(edges), speed_mps);
}

Network load_network(const std::string& nodes_file, const std::string& edges_file,
                     double speed_mps) {
    std::vector<NetworkNode> nodes;
    std::unordered_map<NodeId, int> seen; // node id -> defining line
    read_csv(nodes_file, "node_id,x_m,y_m", [&](const std::vector<std::string>& f, int line_no) {
        if (f.size() != 3)
            throw ParseError(nodes_file + " line " + std::to_string(line_no) +
                             ": expected 3 fields, got " + std::to_string(f.size()));
        NetworkNode node{parse_int_field(f[0], nodes_file, line_no),
                         parse_double_field(f[1], nodes_file, line_no),
                         parse_double_field(f[2], nodes_file, line_no)};
        if (!seen.emplace(node.id, line_no).second)
            throw ParseError(nodes_file + " line " + std::to_string(line_no) +
                             ": duplicate node id " + std::to_string(node.id));
        nodes.push_back(node);
    });

    std::vector<NetworkEdge> edges;
    read_csv(edges_file, "from_id,to_id,length_m", [&](const std::vector<std::string>& f, int line_no) {
        if (f.size() != 3)
            throw ParseError(edges_file + " line " + std::to_string(line_no) +
                             ": expected 3 fields, got " + std::to_string(f.size()));
        NetworkEdge edge{parse_int_field(f[0], edges_file, line_no),
                         parse_int_field(f[1], edges_file, line_no),
                         parse_double_field(f[2], edges_file, line_no)};
        for (NodeId endpoint : {edge.from, edge.to}) {
            if (!seen.count(endpoint))
                throw ParseError(edges_file + " line " + std::to_string(line_no) +
                                 ": unknown node " + std::to_string(endpoint));
        }
        if (edge.length_m <= 0.0)
            throw ParseError(edges_file + " line " + std::to_string(line_no) +
                             ": length must be > 0");
        edges.push_back(edge);
    });

    return Network(std::move(nodes), std::move(edges), speed_mps);
}

} // namespace poolsim
