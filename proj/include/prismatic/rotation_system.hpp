// Rotation systems: multigraphs (parallel edges, loops) with a cyclic order of
// outgoing arcs at every vertex. This is the embedding representation every
// other module works on. Arcs are ints: edge e owns arcs 2e (first->second
// endpoint) and 2e+1 (reverse); opposite(a) == a^1.
#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

namespace prismatic {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

[[noreturn]] inline void fail(const std::string& msg) { throw Error(msg); }

inline void require(bool cond, const std::string& msg) {
    if (!cond) fail(msg);
}

// Token order: digit-prefixed tokens first by (numeric prefix, suffix), then
// the rest lexicographically. Gives 0 < 0' < 2 < 10 < 10' < x < x'.
inline std::tuple<int, long long, std::string> token_key(std::string_view tok) {
    size_t i = 0;
    long long val = 0;
    while (i < tok.size() && tok[i] >= '0' && tok[i] <= '9') {
        val = val * 10 + (tok[i] - '0');
        ++i;
    }
    if (i == 0) return {1, 0, std::string(tok)};
    return {0, val, std::string(tok.substr(i))};
}

inline bool token_less(std::string_view a, std::string_view b) {
    return token_key(a) < token_key(b);
}

inline int arc_edge(int arc) { return arc >> 1; }
inline int opposite(int arc) { return arc ^ 1; }

class RotationSystem {
  public:
    RotationSystem() = default;

    // Assembles and validates. edges[e] = (endpoint0, endpoint1) as vertex
    // indices into labels; rotations[v] lists outgoing arc ids in cyclic order.
    // copies[e] is the persistent parallel-copy number (computed when omitted).
    static RotationSystem build(std::vector<std::string> labels,
                                std::vector<std::pair<int, int>> edges,
                                std::vector<std::vector<int>> rotations,
                                std::vector<int> copies = {}) {
        RotationSystem rs;
        rs.labels_ = std::move(labels);
        rs.edges_ = std::move(edges);
        rs.rot_ = std::move(rotations);
        rs.copy_ = std::move(copies);
        for (int v = 0; v < (int)rs.labels_.size(); ++v) {
            require(!rs.labels_[v].empty(), "empty vertex label");
            auto [it, fresh] = rs.index_.emplace(rs.labels_[v], v);
            require(fresh, "duplicate vertex '" + rs.labels_[v] + "'");
        }
        if (rs.copy_.empty()) rs.assign_default_copies();
        require(rs.copy_.size() == rs.edges_.size(), "copy list length mismatch");
        rs.reindex();
        rs.validate();
        return rs;
    }

    // Simple-graph convenience: each rotation is a cyclic list of neighbor labels.
    static RotationSystem from_neighbor_lists(
        const std::vector<std::pair<std::string, std::vector<std::string>>>& rows);

    int vertex_count() const { return (int)labels_.size(); }
    int edge_count() const { return (int)edges_.size(); }
    int arc_count() const { return 2 * edge_count(); }

    const std::string& label(int v) const { return labels_[v]; }
    const std::vector<std::string>& labels() const { return labels_; }

    int vertex(std::string_view token) const {
        auto it = index_.find(std::string(token));
        require(it != index_.end(), "unknown vertex '" + std::string(token) + "'");
        return it->second;
    }
    bool has_vertex(std::string_view token) const {
        return index_.count(std::string(token)) != 0;
    }

    int tail(int arc) const {
        const auto& e = edges_[arc_edge(arc)];
        return (arc & 1) ? e.second : e.first;
    }
    int head(int arc) const { return tail(opposite(arc)); }

    const std::vector<int>& rotation(int v) const { return rot_[v]; }
    int degree(int v) const { return (int)rot_[v].size(); }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

    // Position of an arc within its tail's rotation.
    int position(int arc) const { return pos_[arc]; }

    int successor(int arc) const {
        const auto& r = rot_[tail(arc)];
        return r[(pos_[arc] + 1) % r.size()];
    }
    int predecessor(int arc) const {
        const auto& r = rot_[tail(arc)];
        return r[(pos_[arc] + r.size() - 1) % r.size()];
    }

    // Face-tracing step: arriving at head(a) along a, the walk continues with
    // the successor of opposite(a) in head(a)'s rotation.
    int next_in_face(int arc) const { return successor(opposite(arc)); }

    bool adjacent(int u, int v) const {
        for (int a : rot_[u])
            if (head(a) == v) return true;
        return false;
    }

    // Edges between u and v, ordered by copy number.
    std::vector<int> edges_between(int u, int v) const {
        std::vector<int> out;
        for (int e = 0; e < edge_count(); ++e) {
            auto [a, b] = edges_[e];
            if ((a == u && b == v) || (a == v && b == u)) out.push_back(e);
        }
        std::sort(out.begin(), out.end(), [&](int x, int y) { return copy_[x] < copy_[y]; });
        return out;
    }

    // Persistent 1-based parallel-copy number used by files and scripts.
    int copy_index(int edge) const { return copy_[edge]; }

    bool connected() const {
        if (labels_.empty()) return true;
        std::vector<char> seen(labels_.size(), 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        int reached = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int a : rot_[v]) {
                int w = head(a);
                if (!seen[w]) {
                    seen[w] = 1;
                    ++reached;
                    stack.push_back(w);
                }
            }
        }
        return reached == (int)labels_.size();
    }

    void validate() const {
        require(labels_.size() == rot_.size(), "rotation count mismatch");
        std::vector<int> placed(arc_count(), 0);
        for (int v = 0; v < vertex_count(); ++v) {
            for (int a : rot_[v]) {
                require(a >= 0 && a < arc_count(), "arc id out of range");
                require(tail(a) == v, "arc placed in wrong rotation (vertex '" + labels_[v] + "')");
                require(++placed[a] == 1, "duplicate arc-end placement at '" + labels_[v] + "'");
            }
        }
        for (int a = 0; a < arc_count(); ++a)
            require(placed[a] == 1, "dangling edge end (edge " + describe_edge(arc_edge(a)) + ")");
        std::map<std::tuple<int, int, int>, int> copy_keys;
        for (int e = 0; e < edge_count(); ++e) {
            auto [u, w] = edges_[e];
            require(u >= 0 && u < vertex_count() && w >= 0 && w < vertex_count(),
                    "edge endpoint out of range");
            require(copy_[e] >= 1, "copy number must be positive");
            require(copy_keys.emplace(std::tuple{std::min(u, w), std::max(u, w), copy_[e]}, e).second,
                    "duplicate copy number on edge " + describe_edge(e));
        }
        require(connected(), "embedding is not connected");
    }

    std::string describe_edge(int e) const {
        auto [u, v] = edges_[e];
        std::string s = "(" + labels_[u] + "," + labels_[v] + ")";
        if (multi_[e] || copy_[e] > 1) s += "#" + std::to_string(copy_[e]);
        return s;
    }

    // Vertex indices sorted by token order.
    std::vector<int> sorted_vertices() const {
        std::vector<int> vs(vertex_count());
        for (int i = 0; i < vertex_count(); ++i) vs[i] = i;
        std::sort(vs.begin(), vs.end(),
                  [&](int a, int b) { return token_less(labels_[a], labels_[b]); });
        return vs;
    }

    // Neighbor token of an arc as written in .emb files: label plus "#k" for
    // parallel copies beyond the first (loops always carry the suffix).
    std::string arc_token(int arc) const {
        int e = arc_edge(arc);
        bool loop = edges_[e].first == edges_[e].second;
        std::string t = labels_[head(arc)];
        if (loop || copy_[e] > 1) t += "#" + std::to_string(copy_[e]);
        return t;
    }

    std::string serialize() const;
    static RotationSystem parse(std::string_view text);

  private:
    void reindex() {
        pos_.assign(arc_count(), -1);
        for (int v = 0; v < vertex_count(); ++v)
            for (int i = 0; i < (int)rot_[v].size(); ++i) pos_[rot_[v][i]] = i;
        multi_.assign(edge_count(), 0);
        std::map<std::pair<int, int>, int> mult;
        for (auto& [u, w] : edges_) ++mult[{std::min(u, w), std::max(u, w)}];
        for (int e = 0; e < edge_count(); ++e) {
            auto [u, w] = edges_[e];
            multi_[e] = mult[{std::min(u, w), std::max(u, w)}] > 1;
        }
    }

    void assign_default_copies() {
        copy_.assign(edge_count(), 0);
        std::map<std::pair<int, int>, int> next;
        for (int e = 0; e < edge_count(); ++e) {
            auto [u, w] = edges_[e];
            copy_[e] = ++next[{std::min(u, w), std::max(u, w)}];
        }
    }

    std::vector<std::string> labels_;
    std::unordered_map<std::string, int> index_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> rot_;
    std::vector<int> pos_;
    std::vector<int> copy_;
    std::vector<char> multi_;

    friend class RotationEditor;
};

// Mutable staging area for surgery ops; rebuilds a validated RotationSystem.
class RotationEditor {
  public:
    explicit RotationEditor(const RotationSystem& rs) {
        labels = rs.labels_;
        edges = rs.edges_;
        copies = rs.copy_;
        for (int v = 0; v < rs.vertex_count(); ++v) {
            rows.emplace_back();
            for (int a : rs.rot_[v]) rows.back().push_back(a);
        }
    }
    RotationEditor() = default;

    std::vector<std::string> labels;
    std::vector<std::pair<int, int>> edges;
    std::vector<int> copies;
    std::vector<std::vector<int>> rows;  // rotations, arcs refer to `edges`

    int add_vertex(const std::string& label) {
        labels.push_back(label);
        rows.emplace_back();
        return (int)labels.size() - 1;
    }

    int add_edge(int u, int v) {
        int k = 0;
        for (int e = 0; e < (int)edges.size(); ++e) {
            auto [a, b] = edges[e];
            if ((a == u && b == v) || (a == v && b == u)) k = std::max(k, copies[e]);
        }
        edges.emplace_back(u, v);
        copies.push_back(k + 1);
        return (int)edges.size() - 1;
    }

    // Removes an edge; arc ids above it shift down by 2.
    void erase_edge(int e) {
        for (auto& row : rows) {
            row.erase(std::remove_if(row.begin(), row.end(),
                                     [&](int a) { return arc_edge(a) == e; }),
                      row.end());
            for (int& a : row)
                if (arc_edge(a) > e) a -= 2;
        }
        edges.erase(edges.begin() + e);
        copies.erase(copies.begin() + e);
    }

    // Removes vertex v, its incident edges, and renumbers everything above.
    void erase_vertex(int v) {
        std::vector<int> dead;
        for (int e = 0; e < (int)edges.size(); ++e)
            if (edges[e].first == v || edges[e].second == v) dead.push_back(e);
        for (int i = (int)dead.size() - 1; i >= 0; --i) erase_edge(dead[i]);
        rows.erase(rows.begin() + v);
        labels.erase(labels.begin() + v);
        for (auto& [a, b] : edges) {
            if (a > v) --a;
            if (b > v) --b;
        }
    }

    // After ops that can merge vertex pairs, reassigns clashing copy numbers
    // (stable in (old copy, edge id) order).
    void renumber_copy_collisions() {
        std::map<std::pair<int, int>, std::vector<int>> groups;
        for (int e = 0; e < (int)edges.size(); ++e) {
            auto [u, w] = edges[e];
            groups[{std::min(u, w), std::max(u, w)}].push_back(e);
        }
        for (auto& [pair, es] : groups) {
            std::set<int> seen;
            bool clash = false;
            for (int e : es) clash |= !seen.insert(copies[e]).second;
            if (!clash) continue;
            std::sort(es.begin(), es.end(),
                      [&](int x, int y) { return std::pair(copies[x], x) < std::pair(copies[y], y); });
            for (int i = 0; i < (int)es.size(); ++i) copies[es[i]] = i + 1;
        }
    }

    RotationSystem build() && {
        return RotationSystem::build(std::move(labels), std::move(edges), std::move(rows),
                                     std::move(copies));
    }
    RotationSystem build() const& {
        return RotationSystem::build(labels, edges, rows, copies);
    }
};

// ---------------------------------------------------------------------------
// .emb text format: one line per vertex, "v: n1 n2 ... nk" (cyclic order of
// neighbor tokens). Parallel copies are "name#2", "name#3", ...; a loop at v
// shows up as two identical "v#k" tokens in v's own line. '#' at the start of
// a token begins a comment; blank lines ignored.

namespace detail {

inline std::pair<std::string, int> split_copy_suffix(const std::string& tok) {
    auto pos = tok.rfind('#');
    if (pos == std::string::npos || pos + 1 >= tok.size()) return {tok, 1};
    int k = 0;
    for (size_t i = pos + 1; i < tok.size(); ++i) {
        if (tok[i] < '0' || tok[i] > '9') return {tok, 1};
        k = k * 10 + (tok[i] - '0');
    }
    return {tok.substr(0, pos), k};
}

}  // namespace detail

inline RotationSystem RotationSystem::parse(std::string_view text) {
    struct Slot {  // one parsed neighbor token
        std::string nbr;
        int copy;
    };
    std::vector<std::string> labels;
    std::map<std::string, int> idx;
    std::vector<std::vector<Slot>> rows;

    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        // '#' inside a token is a copy suffix; a comment '#' follows whitespace
        // or starts the line.
        while (hash != std::string::npos && hash > 0 && !isspace((unsigned char)line[hash - 1]))
            hash = line.find('#', hash + 1);
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head)) continue;
        require(head.size() > 1 && head.back() == ':',
                "malformed line " + std::to_string(lineno) + ": expected 'vertex:'");
        head.pop_back();
        require(idx.emplace(head, (int)labels.size()).second,
                "duplicate vertex '" + head + "' (line " + std::to_string(lineno) + ")");
        labels.push_back(head);
        rows.emplace_back();
        std::string tok;
        while (ls >> tok) {
            auto [nbr, copy] = detail::split_copy_suffix(tok);
            require(copy >= 1, "bad copy suffix in '" + tok + "' (line " + std::to_string(lineno) + ")");
            rows.back().push_back({nbr, copy});
        }
    }
    require(!labels.empty(), "empty embedding file");

    // Pair up arc-ends into edges.
    std::map<std::tuple<std::string, std::string, int>, int> edge_ids;
    std::vector<std::pair<int, int>> edges;
    std::vector<int> copy_numbers;
    std::vector<std::vector<int>> rot(labels.size());
    std::map<std::tuple<std::string, std::string, int>, int> ends_seen;
    for (int v = 0; v < (int)labels.size(); ++v) {
        for (auto& slot : rows[v]) {
            auto it = idx.find(slot.nbr);
            require(it != idx.end(),
                    "dangling edge end: '" + labels[v] + "' lists unknown vertex '" + slot.nbr + "'");
            int w = it->second;
            std::string a = labels[v], b = slot.nbr;
            bool loop = v == w;
            if (token_less(b, a)) std::swap(a, b);
            auto key = std::make_tuple(a, b, slot.copy);
            int& seen = ends_seen[key];
            ++seen;
            require(seen <= 2, "duplicate arc-end: edge (" + a + "," + b + ")#" +
                                   std::to_string(slot.copy) + " placed more than twice");
            int e;
            if (auto eit = edge_ids.find(key); eit != edge_ids.end()) {
                e = eit->second;
            } else {
                e = (int)edges.size();
                edges.emplace_back(v, w);
                copy_numbers.push_back(slot.copy);
                edge_ids.emplace(key, e);
            }
            int arc;
            if (seen == 1) {
                arc = 2 * e;
                if (!loop) edges[e] = {v, w};  // first end seen defines arc 2e's tail
            } else {
                arc = 2 * e + 1;
                if (!loop)
                    require(edges[e].second == v,
                            "dangling edge end: (" + a + "," + b + ")#" + std::to_string(slot.copy) +
                                " not mirrored at '" + labels[v] + "'");
            }
            rot[v].push_back(arc);
        }
    }
    for (auto& [key, n] : ends_seen)
        require(n == 2, "dangling edge end: (" + std::get<0>(key) + "," + std::get<1>(key) + ")#" +
                            std::to_string(std::get<2>(key)) + " appears only once");
    return build(std::move(labels), std::move(edges), std::move(rot), std::move(copy_numbers));
}

inline std::string RotationSystem::serialize() const {
    std::string out;
    for (int v : sorted_vertices()) {
        const auto& row = rot_[v];
        // Rotate to the lexicographically least token sequence so output is canonical.
        std::vector<std::string> toks(row.size());
        for (size_t i = 0; i < row.size(); ++i) toks[i] = arc_token(row[i]);
        size_t best = 0;
        for (size_t s = 1; s < toks.size(); ++s) {
            for (size_t k = 0; k < toks.size(); ++k) {
                const auto& a = toks[(s + k) % toks.size()];
                const auto& b = toks[(best + k) % toks.size()];
                if (a != b) {
                    if (token_less(a, b)) best = s;
                    break;
                }
            }
        }
        out += labels_[v];
        out += ':';
        for (size_t k = 0; k < toks.size(); ++k) {
            out += ' ';
            out += toks[(best + k) % toks.size()];
        }
        out += '\n';
    }
    return out;
}

inline RotationSystem RotationSystem::from_neighbor_lists(
    const std::vector<std::pair<std::string, std::vector<std::string>>>& rows) {
    std::string text;
    for (auto& [v, nbrs] : rows) {
        text += v;
        text += ':';
        for (auto& n : nbrs) {
            text += ' ';
            text += n;
        }
        text += '\n';
    }
    return parse(text);
}

}  // namespace prismatic
