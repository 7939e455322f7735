// Surgery primitives on rotation systems. Every op returns a fresh embedding;
// corner arguments are indices into a face walk (corner i = the visit of
// tail(arcs[i]), entered along arcs[i-1]).
//
// (v, e, f, genus) deltas: flip (0,0,0,0); add_edge_in_face (0,+1,+1,0);
// add_edge_across_faces (0,+1,-1,+1); delete_edge (0,-1,-1,0) when the two
// sides lie on distinct faces, (0,-1,+1,-1) when on one face; subdivide of a
// k-gon (+1,+k,+(k-1),0); contract (-1,-1,0,0); split_vertex net (+1,0,+1,-1).
#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "prismatic/face_tracing.hpp"
#include "prismatic/rotation_system.hpp"

namespace prismatic {

inline void verify_face_of(const RotationSystem& rs, const std::vector<int>& walk) {
    require(!walk.empty(), "empty face walk");
    auto actual = face_walk_from(rs, walk[0]);
    if (actual.size() == walk.size()) {
        auto it = std::find(actual.begin(), actual.end(), walk[0]);
        std::rotate(actual.begin(), it, actual.end());
        if (actual == walk) return;
    }
    fail("walk is not a face of this embedding");
}

inline RotationSystem mirror(const RotationSystem& rs) {
    RotationEditor ed(rs);
    for (auto& row : ed.rows) std::reverse(row.begin(), row.end());
    return std::move(ed).build();
}

namespace detail {

// Connectivity of rs with up to one vertex and one edge masked out.
inline bool connected_without(const RotationSystem& rs, int skip_vertex, int skip_edge) {
    int n = rs.vertex_count();
    std::vector<char> seen(n, 1);
    int want = 0;
    for (int v = 0; v < n; ++v)
        if (v != skip_vertex) {
            seen[v] = 0;
            ++want;
        }
    if (want == 0) return true;
    int start = skip_vertex == 0 ? 1 : 0;
    std::vector<int> stack{start};
    seen[start] = 1;
    int reached = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int a : rs.rotation(v)) {
            if (arc_edge(a) == skip_edge) continue;
            int w = rs.head(a);
            if (w == skip_vertex || seen[w]) continue;
            seen[w] = 1;
            ++reached;
            stack.push_back(w);
        }
    }
    return reached == want;
}

// Inserts `arc` into ed.rows[v] immediately after `anchor` (an arc currently in
// that row).
inline void insert_after(RotationEditor& ed, int v, int anchor, int arc) {
    auto& row = ed.rows[v];
    auto it = std::find(row.begin(), row.end(), anchor);
    require(it != row.end(), "internal: anchor arc missing from rotation");
    row.insert(it + 1, arc);
}

}  // namespace detail

inline RotationSystem delete_vertex(const RotationSystem& rs, std::string_view token) {
    int v = rs.vertex(token);
    require(rs.vertex_count() > 1, "cannot delete the last vertex");
    require(detail::connected_without(rs, v, -1),
            "deleting vertex '" + std::string(token) + "' disconnects the embedding");
    RotationEditor ed(rs);
    ed.erase_vertex(v);
    return std::move(ed).build();
}

// Resolves an edge by endpoints and persistent copy number (the "#k" of files
// and scripts; copy numbers may have gaps after deletions).
inline int resolve_edge(const RotationSystem& rs, std::string_view u, std::string_view v,
                        int copy = 1) {
    auto copies = rs.edges_between(rs.vertex(u), rs.vertex(v));
    require(!copies.empty(), "no edge (" + std::string(u) + "," + std::string(v) + ")");
    for (int e : copies)
        if (rs.copy_index(e) == copy) return e;
    fail("no copy #" + std::to_string(copy) + " of edge (" + std::string(u) + "," +
         std::string(v) + ")");
}

inline RotationSystem delete_edge(const RotationSystem& rs, int e) {
    require(e >= 0 && e < rs.edge_count(), "edge id out of range");
    require(detail::connected_without(rs, -1, e),
            "deleting edge " + rs.describe_edge(e) + " disconnects the embedding");
    RotationEditor ed(rs);
    ed.erase_edge(e);
    return std::move(ed).build();
}

// Replaces e=(u,v), lying on distinct triangles [u,v,c] and [v,u,d], by the
// other diagonal (c,d) of the quadrilateral. May create a parallel edge.
inline RotationSystem flip_edge(const RotationSystem& rs, int e) {
    int ap = 2 * e, am = 2 * e + 1;
    auto f1 = face_walk_from(rs, ap);
    require(std::find(f1.begin(), f1.end(), am) == f1.end(),
            "cannot flip " + rs.describe_edge(e) + ": both sides lie on one face");
    auto f2 = face_walk_from(rs, am);
    require(f1.size() == 3 && f2.size() == 3,
            "cannot flip " + rs.describe_edge(e) + ": not on two triangular faces");
    std::rotate(f1.begin(), std::find(f1.begin(), f1.end(), ap), f1.end());
    std::rotate(f2.begin(), std::find(f2.begin(), f2.end(), am), f2.end());
    int c = rs.head(f1[1]);  // f1 = [(u->v), (v->c), (c->u)]
    int d = rs.head(f2[1]);  // f2 = [(v->u), (u->d), (d->v)]
    require(c != d, "cannot flip " + rs.describe_edge(e) + ": both triangles share apex '" +
                        rs.label(c) + "'");
    RotationEditor ed(rs);
    int g = ed.add_edge(c, d);
    detail::insert_after(ed, c, opposite(f1[1]), 2 * g);      // between (c->v) and (c->u)
    detail::insert_after(ed, d, opposite(f2[1]), 2 * g + 1);  // between (d->u) and (d->v)
    ed.erase_edge(e);
    return std::move(ed).build();
}

inline RotationSystem flip_edge(const RotationSystem& rs, std::string_view u,
                                std::string_view v, int copy = 1) {
    return flip_edge(rs, resolve_edge(rs, u, v, copy));
}

// Chord between two corners of one face; the face splits in two.
inline RotationSystem add_edge_in_face(const RotationSystem& rs, const FaceWalk& face,
                                       int corner1, int corner2) {
    verify_face_of(rs, face.arcs);
    int k = face.sides();
    require(corner1 != corner2, "corners must be distinct");
    require(corner1 >= 0 && corner1 < k && corner2 >= 0 && corner2 < k,
            "corner index out of range");
    int vi = corner_vertex(rs, face, corner1);
    int vj = corner_vertex(rs, face, corner2);
    RotationEditor ed(rs);
    int g = ed.add_edge(vi, vj);
    detail::insert_after(ed, vi, opposite(corner_in_arc(face, corner1)), 2 * g);
    detail::insert_after(ed, vj, opposite(corner_in_arc(face, corner2)), 2 * g + 1);
    return std::move(ed).build();
}

// Edge between corners of two distinct faces; the faces merge and the genus
// rises by one (a handle).
inline RotationSystem add_edge_across_faces(const RotationSystem& rs, const FaceWalk& f1,
                                            int corner1, const FaceWalk& f2, int corner2) {
    verify_face_of(rs, f1.arcs);
    verify_face_of(rs, f2.arcs);
    require(std::find(f2.arcs.begin(), f2.arcs.end(), f1.arcs[0]) == f2.arcs.end(),
            "corners lie on the same face; use add_edge_in_face");
    require(corner1 >= 0 && corner1 < f1.sides() && corner2 >= 0 && corner2 < f2.sides(),
            "corner index out of range");
    int vi = corner_vertex(rs, f1, corner1);
    int vj = corner_vertex(rs, f2, corner2);
    RotationEditor ed(rs);
    int g = ed.add_edge(vi, vj);
    detail::insert_after(ed, vi, opposite(corner_in_arc(f1, corner1)), 2 * g);
    detail::insert_after(ed, vj, opposite(corner_in_arc(f2, corner2)), 2 * g + 1);
    return std::move(ed).build();
}

// Places a new vertex inside the face, joined to every corner in boundary
// order; a k-gon becomes k triangles.
inline RotationSystem subdivide_face(const RotationSystem& rs, const FaceWalk& face,
                                     const std::string& new_label) {
    verify_face_of(rs, face.arcs);
    require(!rs.has_vertex(new_label), "label collision: '" + new_label + "' already exists");
    int k = face.sides();
    RotationEditor ed(rs);
    int z = ed.add_vertex(new_label);
    std::vector<int> spokes(k);
    for (int p = 0; p < k; ++p) {
        int vp = corner_vertex(rs, face, p);
        spokes[p] = ed.add_edge(vp, z);
        detail::insert_after(ed, vp, opposite(corner_in_arc(face, p)), 2 * spokes[p]);
    }
    // Rotation at the hub runs against the boundary direction so each sector
    // closes into a triangle under the tracing rule.
    for (int p = k - 1; p >= 0; --p) ed.rows[z].push_back(2 * spokes[p] + 1);
    return std::move(ed).build();
}

// Contracts a non-loop edge; the merged vertex keeps the tail's label and its
// rotation is the two rotations spliced at the contracted arc-ends.
inline RotationSystem contract_edge(const RotationSystem& rs, int e) {
    require(e >= 0 && e < rs.edge_count(), "edge id out of range");
    int a = rs.tail(2 * e), b = rs.head(2 * e);
    require(a != b, "cannot contract a loop");
    RotationEditor ed(rs);
    const auto& rowa = ed.rows[a];
    const auto& rowb = ed.rows[b];
    int pa = (int)(std::find(rowa.begin(), rowa.end(), 2 * e) - rowa.begin());
    int pb = (int)(std::find(rowb.begin(), rowb.end(), 2 * e + 1) - rowb.begin());
    std::vector<int> merged;
    merged.insert(merged.end(), rowa.begin(), rowa.begin() + pa);
    for (int i = 1; i < (int)rowb.size(); ++i) merged.push_back(rowb[(pb + i) % rowb.size()]);
    merged.insert(merged.end(), rowa.begin() + pa + 1, rowa.end());
    ed.rows[a] = std::move(merged);
    ed.rows[b].clear();
    for (auto& [x, y] : ed.edges) {
        if (x == b) x = a;
        if (y == b) y = a;
    }
    ed.edges[e] = {a, a};  // keep endpoints sane until erased
    ed.erase_edge(e);
    ed.erase_vertex(b);  // b has no incident edges left
    ed.renumber_copy_collisions();  // (a,x) and (b,x) copies may now clash
    return std::move(ed).build();
}

inline RotationSystem contract_edge(const RotationSystem& rs, std::string_view u,
                                    std::string_view v, int copy = 1) {
    return contract_edge(rs, resolve_edge(rs, u, v, copy));
}

struct SplitResult {
    RotationSystem rs;
    std::string u_label;
    std::string v_label;
};

// Lemma-8 vertex split, both steps: the unique nontriangular face must be a
// hexagon [w,a,b,w,c,d]; w is replaced by adjacent u, v per the stated
// rotations and the edge (u,v) is then deleted, dropping the genus by one.
inline SplitResult split_vertex(const RotationSystem& rs, const FaceWalk& hex) {
    verify_face_of(rs, hex.arcs);
    auto fs = trace_faces(rs);
    auto canon = hex.arcs;
    detail::canonicalize_walk(rs, canon);
    for (auto& fw : fs.faces) {
        if (fw.sides() == 3) continue;
        require(fw.arcs == canon, "embedding has a nontriangular face other than the given one");
    }
    require(hex.sides() == 6, "face is not hexagonal");
    require(std::count_if(fs.faces.begin(), fs.faces.end(),
                          [](const FaceWalk& fw) { return fw.sides() != 3; }) == 1,
            "embedding must have exactly one nontriangular face");

    // Locate the doubly incident vertex.
    std::vector<int> tails(6);
    for (int i = 0; i < 6; ++i) tails[i] = corner_vertex(rs, hex, i);
    int w = -1, first = -1;
    for (int i = 0; i < 6 && w < 0; ++i)
        for (int j = i + 1; j < 6; ++j)
            if (tails[i] == tails[j]) {
                require(w < 0, "hexagonal face repeats more than one vertex");
                w = tails[i];
                first = i;
                require(j - i == 3,
                        "hexagonal face is not of the form [w,a,b,w,c,d]: repeats at distance " +
                            std::to_string(j - i));
                break;
            }
    require(w >= 0, "hexagonal face has no repeated vertex");

    std::vector<int> walk = hex.arcs;
    std::rotate(walk.begin(), walk.begin() + first, walk.end());
    // walk = [(w->a), (a->b), (b->w), (w->c), (c->d), (d->w)]
    int a = rs.head(walk[0]), b = rs.head(walk[1]);
    int c = rs.head(walk[3]), d = rs.head(walk[4]);
    {
        std::vector<int> abcd{a, b, c, d};
        std::sort(abcd.begin(), abcd.end());
        require(std::adjacent_find(abcd.begin(), abcd.end()) == abcd.end(),
                "hexagon corners a,b,c,d are not distinct");
    }
    for (int x : rs.rotation(w))
        require(rs.head(x) != w, "loop at the repeated vertex");

    // Segment the rotation at w: [ (w->a) .. (w->b) ] and [ (w->c) .. (w->d) ].
    const auto& row = rs.rotation(w);
    int deg = (int)row.size();
    int start_u = rs.position(walk[0]);               // (w->a)
    int end_u = rs.position(opposite(walk[2]));        // (w->b)
    int start_v = rs.position(walk[3]);               // (w->c)
    int end_v = rs.position(opposite(walk[5]));        // (w->d)
    require((end_u + 1) % deg == start_v && (end_v + 1) % deg == start_u,
            "internal: rotation at repeated vertex not of the form d a ... b c ...");
    std::vector<int> seg_u, seg_v;
    for (int i = start_u; ; i = (i + 1) % deg) {
        seg_u.push_back(row[i]);
        if (i == end_u) break;
    }
    for (int i = start_v; ; i = (i + 1) % deg) {
        seg_v.push_back(row[i]);
        if (i == end_v) break;
    }

    std::string u_label = "u", v_label = "v";
    for (int k = 0; rs.has_vertex(u_label) || rs.has_vertex(v_label); ++k) {
        u_label = "u" + std::to_string(k);
        v_label = "v" + std::to_string(k);
    }

    RotationEditor ed(rs);
    ed.labels[w] = u_label;
    int vv = ed.add_vertex(v_label);
    for (int x : seg_v) {
        auto& ep = ed.edges[arc_edge(x)];
        if (x & 1) ep.second = vv; else ep.first = vv;
    }
    int g = ed.add_edge(w, vv);
    ed.rows[w].assign(1, 2 * g);
    ed.rows[w].insert(ed.rows[w].end(), seg_u.begin(), seg_u.end());
    ed.rows[vv].assign(1, 2 * g + 1);
    ed.rows[vv].insert(ed.rows[vv].end(), seg_v.begin(), seg_v.end());
    RotationSystem split = std::move(ed).build();

    int uv = resolve_edge(split, u_label, v_label);
    RotationSystem out = delete_edge(split, uv);

    auto check = trace_faces(out);
    require(check.all_triangular(), "internal: split did not leave a triangular embedding");
    require(check.genus == fs.genus - 1, "internal: split did not drop the genus by one");
    return {std::move(out), u_label, v_label};
}

}  // namespace prismatic
