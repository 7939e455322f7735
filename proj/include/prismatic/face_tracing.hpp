// Face tracing and the Euler polyhedral equation. A face is the orbit of an
// arc under next_in_face; the list of faces determines the genus of the
// embedded surface via |V| - |E| + |F| = 2 - 2g.
#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "prismatic/rotation_system.hpp"

namespace prismatic {

struct FaceWalk {
    std::vector<int> arcs;  // cyclic, stored in canonical rotation

    int sides() const { return (int)arcs.size(); }
};

struct FaceSet {
    std::vector<FaceWalk> faces;
    int v = 0, e = 0, f = 0;
    int genus = 0;

    std::map<int, int> length_histogram() const {
        std::map<int, int> h;
        for (auto& fw : faces) ++h[fw.sides()];
        return h;
    }
    bool all_triangular() const {
        for (auto& fw : faces)
            if (fw.sides() != 3) return false;
        return true;
    }
};

namespace detail {

// Comparison key for an arc that is stable across edge renumbering.
inline std::tuple<std::tuple<int, long long, std::string>,
                  std::tuple<int, long long, std::string>, int>
arc_sort_key(const RotationSystem& rs, int a) {
    return {token_key(rs.label(rs.tail(a))), token_key(rs.label(rs.head(a))),
            rs.copy_index(arc_edge(a))};
}

inline void canonicalize_walk(const RotationSystem& rs, std::vector<int>& walk) {
    size_t n = walk.size(), best = 0;
    auto key = [&](size_t i) { return arc_sort_key(rs, walk[i % n]); };
    for (size_t s = 1; s < n; ++s) {
        for (size_t k = 0; k < n; ++k) {
            auto a = key(s + k), b = key(best + k);
            if (a != b) {
                if (a < b) best = s;
                break;
            }
        }
    }
    std::rotate(walk.begin(), walk.begin() + best, walk.end());
}

}  // namespace detail

// Walks the face containing `start` (the orbit under next_in_face), not canonicalized.
inline std::vector<int> face_walk_from(const RotationSystem& rs, int start) {
    std::vector<int> walk;
    int a = start;
    do {
        walk.push_back(a);
        a = rs.next_in_face(a);
        require((int)walk.size() <= rs.arc_count(), "internal: runaway face walk");
    } while (a != start);
    return walk;
}

inline FaceSet trace_faces(const RotationSystem& rs) {
    FaceSet fs;
    fs.v = rs.vertex_count();
    fs.e = rs.edge_count();
    std::vector<char> used(rs.arc_count(), 0);
    for (int a0 = 0; a0 < rs.arc_count(); ++a0) {
        if (used[a0]) continue;
        auto walk = face_walk_from(rs, a0);
        for (int a : walk) {
            require(!used[a], "internal: arc traced twice");
            used[a] = 1;
        }
        detail::canonicalize_walk(rs, walk);
        fs.faces.push_back({std::move(walk)});
    }
    std::sort(fs.faces.begin(), fs.faces.end(), [&](const FaceWalk& x, const FaceWalk& y) {
        if (x.sides() != y.sides()) return x.sides() < y.sides();
        for (int i = 0; i < x.sides(); ++i) {
            auto a = detail::arc_sort_key(rs, x.arcs[i]);
            auto b = detail::arc_sort_key(rs, y.arcs[i]);
            if (a != b) return a < b;
        }
        return false;
    });
    fs.f = (int)fs.faces.size();
    int chi = fs.v - fs.e + fs.f;
    require((2 - chi) % 2 == 0 && chi <= 2,
            "non-orientable or corrupted structure: Euler characteristic " + std::to_string(chi));
    fs.genus = (2 - chi) / 2;
    int sides = 0;
    for (auto& fw : fs.faces) sides += fw.sides();
    require(sides == 2 * fs.e, "internal: side sum != 2|E|");
    return fs;
}

inline int euler_genus(const FaceSet& fs) {
    int chi = fs.v - fs.e + fs.f;
    require((2 - chi) % 2 == 0, "non-integer genus: odd Euler characteristic");
    require(chi <= 2, "negative genus from Euler characteristic " + std::to_string(chi));
    return (2 - chi) / 2;
}

// Corner i of a face walk: the visit of vertex tail(arcs[i]), entered along
// arcs[i-1] and left along arcs[i].
inline int corner_vertex(const RotationSystem& rs, const FaceWalk& fw, int i) {
    return rs.tail(fw.arcs[i]);
}
inline int corner_in_arc(const FaceWalk& fw, int i) {
    return fw.arcs[(i + fw.sides() - 1) % fw.sides()];
}
inline int corner_out_arc(const FaceWalk& fw, int i) { return fw.arcs[i]; }

// Vertex labels along the walk, one per corner.
inline std::vector<std::string> face_tokens(const RotationSystem& rs, const FaceWalk& fw) {
    std::vector<std::string> out;
    out.reserve(fw.sides());
    for (int i = 0; i < fw.sides(); ++i) out.push_back(rs.label(corner_vertex(rs, fw, i)));
    return out;
}

inline std::vector<int> face_vertex_set(const RotationSystem& rs, const FaceWalk& fw) {
    std::vector<int> vs;
    for (int i = 0; i < fw.sides(); ++i) vs.push_back(corner_vertex(rs, fw, i));
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
}

// True when the walk visits `sides()` pairwise distinct vertices.
inline bool face_is_simple(const RotationSystem& rs, const FaceWalk& fw) {
    return (int)face_vertex_set(rs, fw).size() == fw.sides();
}

// Locates the traced face whose walk contains arc `a`, and a's position in it.
inline std::pair<int, int> locate_arc(const FaceSet& fs, int a) {
    for (int i = 0; i < fs.f; ++i) {
        const auto& arcs = fs.faces[i].arcs;
        for (int j = 0; j < (int)arcs.size(); ++j)
            if (arcs[j] == a) return {i, j};
    }
    fail("internal: arc not found in any face");
}

// Index of fs.faces entry equal to the given (not necessarily canonical) walk.
inline int find_face(const RotationSystem& rs, const FaceSet& fs, std::vector<int> walk) {
    detail::canonicalize_walk(rs, walk);
    for (int i = 0; i < fs.f; ++i)
        if (fs.faces[i].arcs == walk) return i;
    fail("face not present in traced face set");
}

}  // namespace prismatic
