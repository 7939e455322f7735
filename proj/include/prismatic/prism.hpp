// Everything specific to the prism graphs K_n x K_2: the genus formula, facial
// covers and cotriangular patchworks, the mirror-and-tube construction (an
// embedding of K_n at genus g plus a facial cover of size h gives the prism at
// genus 2g+h-1), snugness checking, slicing a snug prism back into two copies,
// and split-complete graph handling.
#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "prismatic/face_tracing.hpp"
#include "prismatic/rotation_system.hpp"
#include "prismatic/surgery.hpp"

namespace prismatic {

inline long long prism_lower_bound(long long n) {
    require(n >= 2, "prism graphs need n >= 2");
    return ((n - 2) * (n - 3) + 5) / 6;
}

inline long long prism_genus_formula(long long n) {
    return prism_lower_bound(n) + ((n == 5 || n == 9) ? 1 : 0);
}

struct FacialCover {
    std::vector<int> faces;  // indices into a FaceSet, ascending

    int size() const { return (int)faces.size(); }
};

struct CoverReport {
    bool is_cover = false;
    bool is_patchwork = false;
    std::string witness;
};

inline CoverReport check_cover(const RotationSystem& rs, const FaceSet& fs,
                               const FacialCover& cover) {
    for (int f : cover.faces)
        require(f >= 0 && f < fs.f, "cover face index out of range");
    CoverReport rep;
    std::vector<int> incidences(rs.vertex_count(), 0);
    for (int f : cover.faces)
        for (int i = 0; i < fs.faces[f].sides(); ++i)
            ++incidences[corner_vertex(rs, fs.faces[f], i)];
    rep.is_cover = true;
    rep.is_patchwork = true;
    for (int v = 0; v < rs.vertex_count(); ++v) {
        if (incidences[v] == 0) {
            rep.is_cover = rep.is_patchwork = false;
            rep.witness = "vertex '" + rs.label(v) + "' is not covered";
            return rep;
        }
        if (incidences[v] > 1 && rep.is_patchwork) {
            rep.is_patchwork = false;
            rep.witness = "vertex '" + rs.label(v) + "' has " + std::to_string(incidences[v]) +
                          " incidences with cover faces";
        }
    }
    if (rep.is_patchwork) {
        std::set<int> in_cover(cover.faces.begin(), cover.faces.end());
        for (int f = 0; f < fs.f; ++f) {
            if (in_cover.count(f) || fs.faces[f].sides() == 3) continue;
            rep.is_patchwork = false;
            rep.witness = "non-cover face #" + std::to_string(f) + " has " +
                          std::to_string(fs.faces[f].sides()) + " sides";
            break;
        }
    }
    return rep;
}

inline bool is_facial_cover(const RotationSystem& rs, const FaceSet& fs, const FacialCover& c) {
    return check_cover(rs, fs, c).is_cover;
}
inline bool is_patchwork(const RotationSystem& rs, const FaceSet& fs, const FacialCover& c) {
    return check_cover(rs, fs, c).is_patchwork;
}

namespace detail {

inline void require_complete_simple(const RotationSystem& rs, const std::string& who) {
    int n = rs.vertex_count();
    require(rs.edge_count() == n * (n - 1) / 2, who + " requires a complete graph K_n");
    for (auto& [u, v] : rs.edges()) require(u != v, who + ": loops not allowed");
    std::set<std::pair<int, int>> seen;
    for (auto& [u, v] : rs.edges())
        require(seen.emplace(std::min(u, v), std::max(u, v)).second,
                who + ": parallel edges not allowed");
}

}  // namespace detail

// The mirror-and-tube construction at the rotation-system level. The mirror
// copy carries primed labels; for each cover face and each vertex it covers
// (first covering face wins when faces overlap), the matching edge (v,v') is
// inserted in that face's corner on both sides.
inline RotationSystem build_prism(const RotationSystem& rs, const FaceSet& fs,
                                  const FacialCover& cover) {
    detail::require_complete_simple(rs, "build_prism");
    int n = rs.vertex_count();
    int E = rs.edge_count();
    for (int f : cover.faces)
        require(f >= 0 && f < fs.f, "cover face index out of range");

    // First covering face of each vertex, in ascending (canonical) cover order.
    std::vector<int> first_face(n, -1);
    std::vector<int> owner_corner(n, -1);
    std::vector<int> sorted_cover = cover.faces;
    std::sort(sorted_cover.begin(), sorted_cover.end());
    require(std::adjacent_find(sorted_cover.begin(), sorted_cover.end()) == sorted_cover.end(),
            "cover lists a face twice");
    for (int f : sorted_cover) {
        for (int i = 0; i < fs.faces[f].sides(); ++i) {
            int v = corner_vertex(rs, fs.faces[f], i);
            if (first_face[v] < 0) {
                first_face[v] = f;
                owner_corner[v] = i;
            }
        }
    }
    for (int v = 0; v < n; ++v)
        require(first_face[v] >= 0, "vertex '" + rs.label(v) + "' is covered by no face");
    for (int f : sorted_cover) {
        bool carries = false;
        for (int v = 0; v < n; ++v) carries |= first_face[v] == f;
        require(carries, "cover face #" + std::to_string(f) +
                             " carries no matching edge (every vertex already matched)");
    }

    RotationEditor ed;
    for (int v = 0; v < n; ++v) ed.add_vertex(rs.label(v));
    for (int v = 0; v < n; ++v) ed.add_vertex(rs.label(v) + "'");
    auto mirror_vertex = [&](int v) { return n + v; };
    for (auto& [u, v] : rs.edges()) ed.add_edge(u, v);
    for (auto& [u, v] : rs.edges()) ed.add_edge(mirror_vertex(u), mirror_vertex(v));
    auto mirror_arc = [&](int a) { return 2 * (E + arc_edge(a)) + (a & 1); };

    for (int v = 0; v < n; ++v) {
        ed.rows[v] = {rs.rotation(v).begin(), rs.rotation(v).end()};
        auto& mrow = ed.rows[mirror_vertex(v)];
        for (auto it = rs.rotation(v).rbegin(); it != rs.rotation(v).rend(); ++it)
            mrow.push_back(mirror_arc(*it));
    }

    for (int v = 0; v < n; ++v) {
        const auto& face = fs.faces[first_face[v]];
        int g = ed.add_edge(v, mirror_vertex(v));
        int in_arc = corner_in_arc(face, owner_corner[v]);
        int out_arc = corner_out_arc(face, owner_corner[v]);
        // Side 0: between (v->p) and (v->s); mirror side: between (v'->s') and (v'->p').
        auto& row = ed.rows[v];
        row.insert(std::find(row.begin(), row.end(), opposite(in_arc)) + 1, 2 * g);
        auto& mrow = ed.rows[mirror_vertex(v)];
        mrow.insert(std::find(mrow.begin(), mrow.end(), mirror_arc(out_arc)) + 1, 2 * g + 1);
    }

    RotationSystem out = std::move(ed).build();
    int expected = 2 * fs.genus + (int)cover.faces.size() - 1;
    int got = trace_faces(out).genus;
    require(got == expected, "tube construction produced genus " + std::to_string(got) +
                                 ", expected 2g+h-1 = " + std::to_string(expected));
    return out;
}

// ---------------------------------------------------------------------------

namespace detail {

struct PrismStructure {
    int n = 0;
    std::vector<int> matching_edge;  // per vertex, the matching edge id
    std::vector<int> side;           // per vertex, 0 or 1 (side 0 holds the least token)
    std::vector<int> partner;        // per vertex
};

// Recognizes K_n x K_2: matching edges are the edges on no triangle (for the
// 4-cycle K_2 x K_2, a canonical antipodal pair); removing them must leave two
// complete components joined bijectively.
inline PrismStructure detect_prism(const RotationSystem& rs) {
    int total = rs.vertex_count();
    require(total >= 4 && total % 2 == 0, "not a prism graph: odd or tiny vertex count");
    int n = total / 2;
    for (auto& [u, v] : rs.edges()) require(u != v, "not a prism graph: loop present");
    std::set<std::pair<int, int>> pairs;
    for (auto& [u, v] : rs.edges())
        require(pairs.emplace(std::min(u, v), std::max(u, v)).second,
                "not a prism graph: parallel edges");

    std::vector<int> matching;
    if (n == 2) {
        require(rs.edge_count() == 4, "not a prism graph: K_2 x K_2 must be a 4-cycle");
        int e0 = 0;
        auto [a, b] = rs.edges()[e0];
        for (int e = 1; e < 4; ++e) {
            auto [u, v] = rs.edges()[e];
            if (u != a && u != b && v != a && v != b) matching = {e0, e};
        }
        require(matching.size() == 2, "not a prism graph: no antipodal edge pair");
    } else {
        for (int e = 0; e < rs.edge_count(); ++e) {
            auto [u, v] = rs.edges()[e];
            bool on_triangle = false;
            for (int a : rs.rotation(u))
                if (rs.head(a) != v && rs.adjacent(rs.head(a), v)) on_triangle = true;
            if (!on_triangle) matching.push_back(e);
        }
    }
    require((int)matching.size() == n,
            "not a prism graph: " + std::to_string(matching.size()) +
                " triangle-free edges, expected " + std::to_string(n));

    PrismStructure ps;
    ps.n = n;
    ps.matching_edge.assign(total, -1);
    ps.partner.assign(total, -1);
    for (int e : matching) {
        auto [u, v] = rs.edges()[e];
        require(ps.matching_edge[u] < 0 && ps.matching_edge[v] < 0,
                "not a prism graph: matching candidates are not a perfect matching");
        ps.matching_edge[u] = ps.matching_edge[v] = e;
        ps.partner[u] = v;
        ps.partner[v] = u;
    }

    // Two components after removing the matching.
    ps.side.assign(total, -1);
    int least = rs.sorted_vertices()[0];
    std::vector<int> stack{least};
    ps.side[least] = 0;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int a : rs.rotation(v)) {
            if (arc_edge(a) == ps.matching_edge[v]) continue;
            int w = rs.head(a);
            if (ps.side[w] < 0) {
                ps.side[w] = 0;
                stack.push_back(w);
            }
        }
    }
    int side0 = 0;
    for (int v = 0; v < total; ++v) side0 += ps.side[v] == 0;
    require(side0 == n, "not a prism graph: sides have unequal sizes");
    for (int v = 0; v < total; ++v) {
        if (ps.side[v] < 0) ps.side[v] = 1;
        require(ps.side[v] != ps.side[ps.partner[v]] || n == 1,
                "not a prism graph: matching edge inside one side");
    }
    // Each side is complete.
    for (int u = 0; u < total; ++u)
        for (int v = u + 1; v < total; ++v)
            if (ps.side[u] == ps.side[v])
                require(rs.adjacent(u, v), "not a prism graph: side of '" + rs.label(u) +
                                               "', '" + rs.label(v) + "' is not complete");
    return ps;
}

}  // namespace detail

struct SnugReport {
    int n = 0;
    bool snug = false;
    int genus = 0;
    int face_count = 0;
    std::vector<int> matching_edges;        // edge ids
    std::vector<int> matching_face_indices; // F_M as indices into faces
    std::string witness;                    // first violation, when not snug
    FaceSet faces;
};

// Snug iff every face meeting a matching edge is quadrangular and every other
// face is triangular; snugness forces |F| = (2n^2-n)/3 and genus exactly
// (n-2)(n-3)/6.
inline SnugReport check_snug(const RotationSystem& rs) {
    auto ps = detail::detect_prism(rs);
    SnugReport rep;
    rep.n = ps.n;
    rep.faces = trace_faces(rs);
    rep.genus = rep.faces.genus;
    rep.face_count = rep.faces.f;
    std::set<int> matching;
    for (int v = 0; v < rs.vertex_count(); ++v) matching.insert(ps.matching_edge[v]);
    rep.matching_edges.assign(matching.begin(), matching.end());

    rep.snug = true;
    for (int f = 0; f < rep.faces.f; ++f) {
        const auto& fw = rep.faces.faces[f];
        bool meets_matching = false;
        for (int a : fw.arcs) meets_matching |= matching.count(arc_edge(a)) != 0;
        if (meets_matching) rep.matching_face_indices.push_back(f);
        int want = meets_matching ? 4 : 3;
        if (fw.sides() != want && rep.snug) {
            rep.snug = false;
            rep.witness = std::string(meets_matching ? "matching" : "non-matching") + " face [";
            auto toks = face_tokens(rs, fw);
            for (size_t i = 0; i < toks.size(); ++i)
                rep.witness += (i ? "," : "") + toks[i];
            rep.witness += "] has " + std::to_string(fw.sides()) + " sides";
        }
    }
    if (rep.snug) {
        long long n = ps.n;
        require(3 * rep.face_count == 2 * n * n - n,
                "internal: snug face count violates (2n^2-n)/3");
        require(6LL * rep.genus == (n - 2) * (n - 3),
                "internal: snug genus is not (n-2)(n-3)/6 exactly");
    }
    return rep;
}

struct SliceResult {
    RotationSystem side[2];
    FaceSet faces[2];
    FacialCover patchwork[2];
};

// Cuts a snug prism along the duals of its matching edges: each side is the
// embedding of K_n it restricts to, and the punctured faces form a
// cotriangular patchwork.
inline SliceResult slice(const RotationSystem& rs) {
    auto rep = check_snug(rs);
    require(rep.snug, "slice requires a snug prism: " + rep.witness);
    auto ps = detail::detect_prism(rs);

    SliceResult out;
    for (int s = 0; s < 2; ++s) {
        std::vector<int> verts;
        for (int v = 0; v < rs.vertex_count(); ++v)
            if (ps.side[v] == s) verts.push_back(v);
        std::vector<int> local(rs.vertex_count(), -1);
        std::vector<std::string> labels;
        for (int i = 0; i < (int)verts.size(); ++i) {
            local[verts[i]] = i;
            labels.push_back(rs.label(verts[i]));
        }
        std::vector<std::pair<int, int>> edges;
        std::vector<int> edge_local(rs.edge_count(), -1);
        for (int e = 0; e < rs.edge_count(); ++e) {
            auto [u, v] = rs.edges()[e];
            if (local[u] < 0 || local[v] < 0) continue;
            edge_local[e] = (int)edges.size();
            edges.emplace_back(local[u], local[v]);
        }
        std::vector<std::vector<int>> rows(verts.size());
        for (int i = 0; i < (int)verts.size(); ++i)
            for (int a : rs.rotation(verts[i])) {
                if (edge_local[arc_edge(a)] < 0) continue;  // the matching arc
                rows[i].push_back(2 * edge_local[arc_edge(a)] + (a & 1));
            }
        out.side[s] = RotationSystem::build(labels, edges, rows);
        out.faces[s] = trace_faces(out.side[s]);

        // Punctured faces: for each vertex, the face through the corner the
        // matching edge vacated.
        std::set<int> punctured;
        for (int v : verts) {
            int marc = -1;
            for (int a : rs.rotation(v))
                if (arc_edge(a) == ps.matching_edge[v]) marc = a;
            int succ = rs.successor(marc);
            int la = 2 * edge_local[arc_edge(succ)] + (succ & 1);
            punctured.insert(locate_arc(out.faces[s], la).first);
        }
        out.patchwork[s].faces.assign(punctured.begin(), punctured.end());
        auto cr = check_cover(out.side[s], out.faces[s], out.patchwork[s]);
        require(cr.is_patchwork,
                "internal: sliced side is not a cotriangular patchwork: " + cr.witness);
    }
    require(out.patchwork[0].size() == out.patchwork[1].size(),
            "internal: slice patchworks differ in size");
    require(rep.genus == out.faces[0].genus + out.faces[1].genus + out.patchwork[0].size() - 1,
            "internal: slice genus ledger failed");
    return out;
}

// ---------------------------------------------------------------------------

struct SplitCompleteReport {
    bool ok = false;
    std::string u, v;     // the two special vertices when ok
    std::string witness;  // why not, when !ok
};

// A graph is split-complete when two non-adjacent vertices u, v exist whose
// removal leaves a complete graph and whose neighborhoods partition it.
inline SplitCompleteReport split_complete_check(const RotationSystem& rs) {
    int total = rs.vertex_count();
    SplitCompleteReport rep;
    for (auto& [a, b] : rs.edges())
        if (a == b) {
            rep.witness = "loop present";
            return rep;
        }
    std::set<std::pair<int, int>> pairs;
    for (auto& [a, b] : rs.edges())
        if (!pairs.emplace(std::min(a, b), std::max(a, b)).second) {
            rep.witness = "parallel edges present";
            return rep;
        }

    auto sorted = rs.sorted_vertices();
    for (int ui = 0; ui < total; ++ui) {
        for (int vi = ui + 1; vi < total; ++vi) {
            int u = sorted[ui], v = sorted[vi];
            if (rs.adjacent(u, v)) continue;
            std::set<int> nu, nv;
            for (int a : rs.rotation(u)) nu.insert(rs.head(a));
            for (int a : rs.rotation(v)) nv.insert(rs.head(a));
            if ((int)(nu.size() + nv.size()) != total - 2) continue;
            bool disjoint = true;
            for (int x : nu) disjoint &= !nv.count(x);
            if (!disjoint) continue;
            bool complete = true;
            for (int x = 0; x < total && complete; ++x) {
                if (x == u || x == v) continue;
                for (int y = x + 1; y < total && complete; ++y) {
                    if (y == u || y == v) continue;
                    complete &= rs.adjacent(x, y);
                }
            }
            if (!complete) continue;
            rep.ok = true;
            rep.u = rs.label(u);
            rep.v = rs.label(v);
            return rep;
        }
    }
    rep.witness = "no non-adjacent pair with partitioning neighborhoods over a clique";
    return rep;
}

struct DeleteUvResult {
    RotationSystem rs;
    FaceSet faces;
    FacialCover patchwork;
    std::string u, v;
};

// Cor. 10: deleting the special vertices of a triangular split-complete
// embedding reveals a cotriangular patchwork of two faces.
inline DeleteUvResult delete_uv(const RotationSystem& rs) {
    auto fs = trace_faces(rs);
    require(fs.all_triangular(), "delete_uv requires a triangular embedding");
    auto sc = split_complete_check(rs);
    require(sc.ok, "not a split-complete embedding: " + sc.witness);

    // Remember a link arc of each special vertex to locate the merged faces.
    auto link_arc_label = [&](const std::string& who) {
        int w = rs.vertex(who);
        require(rs.degree(w) >= 3, "special vertex '" + who + "' has degree < 3");
        int a0 = rs.rotation(w)[0], a1 = rs.rotation(w)[1];
        return std::pair<std::string, std::string>(rs.label(rs.head(a1)), rs.label(rs.head(a0)));
    };
    auto [u_from, u_to] = link_arc_label(sc.u);
    auto [v_from, v_to] = link_arc_label(sc.v);

    DeleteUvResult out{delete_vertex(delete_vertex(rs, sc.u), sc.v), {}, {}, sc.u, sc.v};
    out.faces = trace_faces(out.rs);
    auto face_thru = [&](const std::string& from, const std::string& to) {
        int e = resolve_edge(out.rs, from, to);
        int a = 2 * e;
        if (out.rs.label(out.rs.tail(a)) != from) a = 2 * e + 1;
        return locate_arc(out.faces, a).first;
    };
    int fu = face_thru(u_from, u_to);
    int fv = face_thru(v_from, v_to);
    require(fu != fv, "internal: special links merged into one face");
    out.patchwork.faces = {std::min(fu, fv), std::max(fu, fv)};
    auto cr = check_cover(out.rs, out.faces, out.patchwork);
    require(cr.is_patchwork, "internal: deleted links do not form a patchwork: " + cr.witness);
    return out;
}

}  // namespace prismatic
