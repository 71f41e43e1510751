#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <unistd.h>

#include "oracles.hpp"
#include "poolsim/network.hpp"
#include "poolsim/rng.hpp"

using namespace poolsim;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
    static int counter = 0;
    fs::path dir = fs::temp_directory_path() /
                   ("poolsim_net_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(dir);
    return dir;
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

} // namespace

TEST_CASE("grid node and edge counts") {
    const Network tiny = make_grid(2, 2, 500.0);
    CHECK(tiny.node_count() == 4);
    CHECK(tiny.edge_count() == 8);

    const Network grid = make_grid(3, 3, 500.0);
    CHECK(grid.node_count() == 9);
    CHECK(grid.edge_count() == 24);
}

TEST_CASE("grid rejects degenerate dimensions") {
    CHECK_THROWS_AS(make_grid(1, 5, 500.0), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(2, 1, 500.0), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(3, 3, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(3, 3, 500.0, 0.0), std::invalid_argument);
}

TEST_CASE("shortest path basics on the 3x3 grid") {
    const Network grid = make_grid(3, 3, 500.0); // 36 km/h default speed

    SUBCASE("adjacent nodes") {
        const Route r = grid.shortest_path(0, 1);
        CHECK(r.length_m == 500.0);
        CHECK(r.duration_s == 50.0);
        CHECK(r.nodes == std::vector<NodeId>{0, 1});
    }
    SUBCASE("identity") {
        const Route r = grid.shortest_path(4, 4);
        CHECK(r.length_m == 0.0);
        CHECK(r.duration_s == 0.0);
        CHECK(r.nodes == std::vector<NodeId>{4});
    }
    SUBCASE("opposite corners, checked against exhaustive search") {
        const Route r = grid.shortest_path(0, 8);
        CHECK(r.length_m == 2000.0);
        CHECK(r.length_m == oracle::exhaustive_min_path_length(grid, 0, 8));
    }
    SUBCASE("lexicographic tie-break") {
        // all 0->8 paths have length 2000; smallest node sequence wins
        CHECK(grid.shortest_path(0, 8).nodes == std::vector<NodeId>{0, 1, 2, 5, 8});
        CHECK(grid.shortest_path(8, 0).nodes == std::vector<NodeId>{8, 5, 2, 1, 0});
    }
    SUBCASE("unknown node") {
        CHECK_THROWS_AS(grid.shortest_path(0, 99), std::out_of_range);
        CHECK_THROWS_AS(grid.distance_m(99, 0), std::out_of_range);
    }
}

TEST_CASE("route invariants on random node pairs") {
    const Network grid = make_grid(5, 4, 250.0);
    Rng rng(7);
    const auto& nodes = grid.nodes();
    for (int i = 0; i < 200; ++i) {
        const NodeId a = nodes[rng.uniform_below(nodes.size())].id;
        const NodeId b = nodes[rng.uniform_below(nodes.size())].id;
        const Route r = grid.shortest_path(a, b);

        // length equals the sum of traversed edges (exact on integer lengths)
        double total = 0.0;
        for (std::size_t k = 1; k < r.nodes.size(); ++k)
            total += grid.distance_m(r.nodes[k - 1], r.nodes[k]);
        CHECK(r.length_m == total);
        CHECK(r.duration_s * grid.speed_mps() == doctest::Approx(r.length_m).epsilon(1e-12));
        CHECK(r.length_m == grid.distance_m(a, b));

        // determinism
        const Route again = grid.shortest_path(a, b);
        CHECK(again.nodes == r.nodes);
        CHECK(again.length_m == r.length_m);
    }
}

TEST_CASE("triangle inequality and grid symmetry") {
    const Network grid = make_grid(4, 4, 500.0);
    Rng rng(11);
    const auto& nodes = grid.nodes();
    for (int i = 0; i < 300; ++i) {
        const NodeId a = nodes[rng.uniform_below(nodes.size())].id;
        const NodeId b = nodes[rng.uniform_below(nodes.size())].id;
        const NodeId c = nodes[rng.uniform_below(nodes.size())].id;
        CHECK(grid.distance_m(a, c) <= grid.distance_m(a, b) + grid.distance_m(b, c) + 1e-9);
        CHECK(grid.distance_m(a, b) == grid.distance_m(b, a)); // undirected generator
    }
}

TEST_CASE("file import") {
    const fs::path dir = temp_dir();

    SUBCASE("minimal two-node network") {
        write_file(dir / "nodes.csv", "node_id,x_m,y_m\n1,0,0\n2,100,0\n");
        write_file(dir / "edges.csv", "from_id,to_id,length_m\n1,2,100\n2,1,100\n");
        const Network net = load_network((dir / "nodes.csv").string(),
                                         (dir / "edges.csv").string(), 10.0);
        CHECK(net.node_count() == 2);
        CHECK(net.distance_m(1, 2) == 100.0);
    }

    SUBCASE("edge to a missing node names it") {
        write_file(dir / "nodes.csv", "node_id,x_m,y_m\n1,0,0\n2,100,0\n");
        write_file(dir / "edges.csv", "from_id,to_id,length_m\n1,7,100\n2,1,100\n");
        CHECK_THROWS_WITH_AS(load_network((dir / "nodes.csv").string(),
                                          (dir / "edges.csv").string(), 10.0),
                             doctest::Contains("unknown node 7"), ParseError);
    }

    SUBCASE("malformed row carries the line number") {
        write_file(dir / "nodes.csv", "node_id,x_m,y_m\n1,0,0\nnope,100,0\n");
        write_file(dir / "edges.csv", "from_id,to_id,length_m\n");
        CHECK_THROWS_WITH_AS(load_network((dir / "nodes.csv").string(),
                                          (dir / "edges.csv").string(), 10.0),
                             doctest::Contains("line 3"), ParseError);
    }

    SUBCASE("header is required") {
        write_file(dir / "nodes.csv", "1,0,0\n2,100,0\n");
        write_file(dir / "edges.csv", "from_id,to_id,length_m\n1,2,100\n2,1,100\n");
        CHECK_THROWS_AS(load_network((dir / "nodes.csv").string(),
                                     (dir / "edges.csv").string(), 10.0),
                        ParseError);
    }

    SUBCASE("disconnected graph is rejected") {
        write_file(dir / "nodes.csv", "node_id,x_m,y_m\n1,0,0\n2,100,0\n");
        write_file(dir / "edges.csv", "from_id,to_id,length_m\n1,2,100\n");
        CHECK_THROWS_AS(load_network((dir / "nodes.csv").string(),
                                     (dir / "edges.csv").string(), 10.0),
                        ValidationError);
    }

    SUBCASE("duplicate edges keep the shorter") {
        write_file(dir / "nodes.csv", "node_id,x_m,y_m\n1,0,0\n2,100,0\n");
        write_file(dir / "edges.csv",
                   "from_id,to_id,length_m\n1,2,150\n1,2,100\n2,1,100\n");
        const Network net = load_network((dir / "nodes.csv").string(),
                                         (dir / "edges.csv").string(), 10.0);
        CHECK(net.distance_m(1, 2) == 100.0);
        CHECK(net.edge_count() == 2);
    }

    SUBCASE("file-encoded 3x3 grid routes like the generator") {
        std::string nodes = "node_id,x_m,y_m\n";
        std::string edges = "from_id,to_id,length_m\n";
        const Network gen = make_grid(3, 3, 500.0);
        for (const auto& node : gen.nodes())
            nodes += std::to_string(node.id) + "," + std::to_string(node.x_m) + "," +
                     std::to_string(node.y_m) + "\n";
        for (const auto& node : gen.nodes())
            for (const auto& [to, len] : gen.neighbors(node.id))
                edges += std::to_string(node.id) + "," + std::to_string(to) + "," +
                         std::to_string(len) + "\n";
        write_file(dir / "nodes.csv", nodes);
        write_file(dir / "edges.csv", edges);
        const Network loaded = load_network((dir / "nodes.csv").string(),
                                            (dir / "edges.csv").string(), 10.0);
        for (const auto& a : gen.nodes())
            for (const auto& b : gen.nodes()) {
                CHECK(loaded.distance_m(a.id, b.id) == gen.distance_m(a.id, b.id));
                CHECK(loaded.shortest_path(a.id, b.id).nodes ==
                      gen.shortest_path(a.id, b.id).nodes);
            }
    }

    SUBCASE("CRLF input is accepted") {
        write_file(dir / "nodes.csv", "node_id,x_m,y_m\r\n1,0,0\r\n2,100,0\r\n");
        write_file(dir / "edges.csv", "from_id,to_id,length_m\r\n1,2,100\r\n2,1,100\r\n");
        const Network net = load_network((dir / "nodes.csv").string(),
                                         (dir / "edges.csv").string(), 10.0);
        CHECK(net.node_count() == 2);
    }

    fs::remove_all(dir);
}
