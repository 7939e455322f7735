// Shared fixtures, generators, and independent oracles for the test suites.
// Oracles here must not reuse the library code path they are checking.
#pragma once

#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "prismatic/face_tracing.hpp"
#include "prismatic/rotation_system.hpp"

namespace testsupport {

using prismatic::RotationSystem;

inline std::string data_path(const std::string& name) {
    return std::string(PRISMATIC_DATA_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline const char* kFig2Log =
    "m=19 index=1\n"
    "circuit 0: 15 x 4 11 5 y 14 6 16 18 z 1 17 10 13 8 12 2 3 9 7\n";

inline const char* kK7Log =
    "m=7 index=1\n"
    "circuit 0: 1 3 2 6 4 5\n";

inline RotationSystem k3() {
    return RotationSystem::parse("a: b c\nb: c a\nc: a b\n");
}

inline RotationSystem k4_planar() {
    return RotationSystem::parse("a: b c d\nb: a d c\nc: a b d\nd: a c b\n");
}

// Classical toroidal triangulation of K7: rotation at v is v + (1 3 2 6 4 5).
inline RotationSystem k7_torus() {
    std::string text;
    const int deltas[6] = {1, 3, 2, 6, 4, 5};
    for (int v = 0; v < 7; ++v) {
        text += std::to_string(v) + ":";
        for (int d : deltas) text += " " + std::to_string((v + d) % 7);
        text += "\n";
    }
    return RotationSystem::parse(text);
}

// Independent genus arithmetic: V - E + F = 2 - 2g.
inline int genus_from_counts(int v, int e, int f) {
    int chi = v - e + f;
    if ((2 - chi) % 2 != 0) throw std::runtime_error("odd Euler characteristic");
    return (2 - chi) / 2;
}

// Enumerates every rotation system on the given simple graph with vertex 0's
// rotation frozen (neighbors in index order); the independent oracle for the
// search module. adjacency[v] must be sorted.
inline void for_each_rotation_system(const std::vector<std::vector<int>>& adjacency,
                                     const std::function<void(const RotationSystem&)>& fn) {
    int n = (int)adjacency.size();
    std::vector<std::vector<int>> rot(n);
    rot[0] = adjacency[0];

    std::vector<std::vector<int>> tails(n);  // permutable part per free vertex
    for (int v = 1; v < n; ++v) tails[v] = {adjacency[v].begin() + 1, adjacency[v].end()};

    std::function<void(int)> rec = [&](int v) {
        if (v == n) {
            std::vector<std::pair<std::string, std::vector<std::string>>> rows;
            for (int w = 0; w < n; ++w) {
                std::vector<std::string> nbrs;
                for (int x : rot[w]) nbrs.push_back(std::to_string(x));
                rows.emplace_back(std::to_string(w), nbrs);
            }
            fn(RotationSystem::from_neighbor_lists(rows));
            return;
        }
        std::sort(tails[v].begin(), tails[v].end());
        do {
            rot[v].clear();
            rot[v].push_back(adjacency[v][0]);
            rot[v].insert(rot[v].end(), tails[v].begin(), tails[v].end());
            rec(v + 1);
        } while (std::next_permutation(tails[v].begin(), tails[v].end()));
    };
    rec(1);
}

inline std::vector<std::vector<int>> complete_graph_adjacency(int n) {
    std::vector<std::vector<int>> adj(n);
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (u != v) adj[u].push_back(v);
    return adj;
}

// Random connected multigraph with a random rotation system. Used for
// round-trip and involution properties.
inline RotationSystem random_rotation_system(std::mt19937& rng, int max_vertices = 8,
                                             bool allow_multi = true) {
    int n = 2 + (int)(rng() % (max_vertices - 1));
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) {
        std::string base = (i % 3 == 0) ? std::string(1, char('a' + i)) : std::to_string(i);
        labels.push_back(base);
    }
    std::vector<std::pair<int, int>> edges;
    for (int v = 1; v < n; ++v) edges.emplace_back((int)(rng() % v), v);  // spanning tree
    int extra = (int)(rng() % (n + 2));
    for (int i = 0; i < extra; ++i) {
        int u = (int)(rng() % n), v = (int)(rng() % n);
        if (!allow_multi && u == v) continue;
        edges.emplace_back(u, v);
    }
    std::vector<std::vector<int>> rot(n);
    for (int e = 0; e < (int)edges.size(); ++e) {
        rot[edges[e].first].push_back(2 * e);
        rot[edges[e].second].push_back(2 * e + 1);
    }
    for (auto& row : rot) std::shuffle(row.begin(), row.end(), rng);
    return RotationSystem::build(labels, edges, rot);
}

}  // namespace testsupport
