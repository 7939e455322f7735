// Backtracking enumeration of rotation systems with incremental face tracing.
// The searcher assigns rotation successors in the order a face-tracing walk
// consumes them, so every closed walk is checked against the admissible face
// vectors the moment it closes. Vertex 0's rotation is frozen (relabeling
// symmetry); work splits over a fixed frontier of decision prefixes, and a
// node budget is divided evenly across prefixes so budgeted outcomes are
// deterministic and independent of the worker count.
#pragma once

#include <atomic>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "prismatic/face_tracing.hpp"
#include "prismatic/prism.hpp"
#include "prismatic/rotation_system.hpp"

namespace prismatic {

struct FaceVector {
    std::map<int, int> count;  // length -> multiplicity

    int faces() const {
        int f = 0;
        for (auto& [len, c] : count) f += c;
        return f;
    }
    int sides() const {
        int s = 0;
        for (auto& [len, c] : count) s += len * c;
        return s;
    }
    std::map<int, int> nontriangular() const {
        auto nt = count;
        nt.erase(3);
        return nt;
    }
    std::string str() const {
        std::string out;
        for (auto& [len, c] : count) {
            if (!out.empty()) out += " ";
            out += std::to_string(len) + "^" + std::to_string(c);
        }
        return out;
    }
    bool operator<(const FaceVector& o) const { return count < o.count; }
    bool operator==(const FaceVector& o) const { return count == o.count; }
};

struct SearchShape {
    enum Kind { Patchwork, Cover } kind = Patchwork;
    std::map<int, int> lengths;  // length -> multiplicity of the wanted face subset

    int total() const {
        int t = 0;
        for (auto& [len, c] : lengths) t += len * c;
        return t;
    }
    std::string str() const {
        std::string out = kind == Patchwork ? "patchwork:" : "cover:";
        bool first = true;
        for (auto& [len, c] : lengths)
            for (int i = 0; i < c; ++i) {
                out += (first ? "" : ",") + std::to_string(len);
                first = false;
            }
        return out;
    }
};

// All face-length multisets an embedding of K_n at genus g can have, filtered
// (when shapes are given) to vectors that could host one of them.
inline std::vector<FaceVector> face_vector_candidates(int n, int g,
                                                      const std::vector<SearchShape>& shapes = {}) {
    require(n >= 3, "need n >= 3");
    int edges = n * (n - 1) / 2;
    int f = 2 - 2 * g - n + edges;
    std::vector<FaceVector> out;
    if (f <= 0) return out;
    int excess = 2 * edges - 3 * f;
    if (excess < 0) return out;

    // Partitions of the excess into at most f parts: part p makes one face of
    // length 3+p.
    std::vector<int> part;
    std::function<void(int, int)> rec = [&](int left, int maxpart) {
        if ((int)part.size() > f) return;
        if (left == 0) {
            FaceVector fv;
            fv.count[3] = f - (int)part.size();
            for (int p : part) ++fv.count[3 + p];
            if (fv.count[3] == 0) fv.count.erase(3);
            out.push_back(fv);
            return;
        }
        for (int p = std::min(left, maxpart); p >= 1; --p) {
            part.push_back(p);
            rec(left - p, p);
            part.pop_back();
        }
    };
    rec(excess, excess);

    if (!shapes.empty()) {
        std::vector<FaceVector> kept;
        for (auto& fv : out) {
            bool hosts = false;
            for (auto& shape : shapes) {
                // The shape must fit inside the vector.
                bool fits = true;
                for (auto& [len, c] : shape.lengths) {
                    auto it = fv.count.find(len);
                    if (it == fv.count.end() || it->second < c) fits = false;
                }
                if (!fits) continue;
                if (shape.kind == SearchShape::Patchwork) {
                    // Cover corners = n, and every nontriangular face must be
                    // part of the patchwork.
                    if (shape.total() != n) continue;
                    auto nt = fv.nontriangular();
                    auto snt = shape.lengths;
                    snt.erase(3);
                    if (nt != snt) continue;
                }
                hosts = true;
            }
            if (hosts) kept.push_back(fv);
        }
        out = kept;
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------

struct SearchFinding {
    std::string embedding;  // canonical .emb text
    std::string cover;      // .cov text (one face per line)
    std::string shape;      // which requested shape it satisfies
    FaceVector vector;
};

struct SearchOutcome {
    bool complete = false;
    std::uint64_t nodes = 0;
    std::map<FaceVector, std::uint64_t> embeddings_by_vector;  // leaves within admissible vectors
    std::vector<SearchFinding> findings;
};

namespace detail {

// A face-subset witness with the requested length multiset; patchworks need
// exactly-once coverage, covers at-least-once.
inline std::optional<std::vector<int>> find_shape_witness(const RotationSystem& rs,
                                                          const FaceSet& fs,
                                                          const SearchShape& shape) {
    std::vector<std::pair<int, int>> wanted(shape.lengths.begin(), shape.lengths.end());
    std::vector<int> chosen;
    std::vector<int> incidence(rs.vertex_count(), 0);

    std::function<bool(size_t, int, int)> rec = [&](size_t wi, int remaining, int from) -> bool {
        if (wi == wanted.size()) {
            for (int v = 0; v < rs.vertex_count(); ++v) {
                if (shape.kind == SearchShape::Patchwork && incidence[v] != 1) return false;
                if (shape.kind == SearchShape::Cover && incidence[v] == 0) return false;
            }
            if (shape.kind == SearchShape::Patchwork) {
                std::set<int> in(chosen.begin(), chosen.end());
                for (int f = 0; f < fs.f; ++f)
                    if (!in.count(f) && fs.faces[f].sides() != 3) return false;
            }
            return true;
        }
        auto [len, need] = wanted[wi];
        if (remaining == 0) return rec(wi + 1, wi + 1 < wanted.size() ? wanted[wi + 1].second : 0, 0);
        for (int f = from; f < fs.f; ++f) {
            if (fs.faces[f].sides() != len) continue;
            bool ok = true;
            for (int i = 0; i < len && ok; ++i) {
                int v = corner_vertex(rs, fs.faces[f], i);
                if (shape.kind == SearchShape::Patchwork && incidence[v] >= 1) ok = false;
            }
            if (!ok) continue;
            chosen.push_back(f);
            for (int i = 0; i < len; ++i) ++incidence[corner_vertex(rs, fs.faces[f], i)];
            if (rec(wi, remaining - 1, f + 1)) return true;
            for (int i = 0; i < len; ++i) --incidence[corner_vertex(rs, fs.faces[f], i)];
            chosen.pop_back();
        }
        return false;
    };
    if (wanted.empty()) return std::nullopt;
    if (rec(0, wanted[0].second, 0)) return chosen;
    return std::nullopt;
}

// -------------------------------------------------------------------------
// The successor-assignment DFS over a fixed simple graph.

struct SearchProblem {
    std::vector<std::vector<int>> adj;   // sorted neighbor lists
    std::vector<FaceVector> admissible;  // leaf face vectors (and pruning envelope)
    bool prune = true;
    // Freeze vertex 0's rotation to ascending neighbor order. Sound as a
    // symmetry reduction only when any cyclic order at vertex 0 is reachable
    // by relabeling, e.g. for complete graphs; leave off for general graphs.
    bool fix_vertex0 = true;
    // Called on admissible leaves; returns a finding to record, or nullopt.
    std::function<std::optional<SearchFinding>(const RotationSystem&, const FaceSet&,
                                               const FaceVector&)>
        accept;
    std::uint64_t stop_after_findings = 0;  // 0 = never stop early
};

class SuccessorSearch {
  public:
    explicit SuccessorSearch(const SearchProblem& prob) : prob_(prob) {
        int n = (int)prob.adj.size();
        std::map<std::pair<int, int>, int> edge_id;
        for (int u = 0; u < n; ++u)
            for (int v : prob.adj[u])
                if (u < v) {
                    edge_id[{u, v}] = (int)edges_.size();
                    edges_.emplace_back(u, v);
                }
        arcs_at_.resize(n);
        for (int e = 0; e < (int)edges_.size(); ++e) {
            arcs_at_[edges_[e].first].push_back(2 * e);
            arcs_at_[edges_[e].second].push_back(2 * e + 1);
        }
        max_len_ = 0;
        for (auto& fv : prob_.admissible)
            for (auto& [len, c] : fv.count) max_len_ = std::max(max_len_, len);
        reset();
    }

    int arc_count() const { return 2 * (int)edges_.size(); }
    int tail(int a) const { return (a & 1) ? edges_[a >> 1].second : edges_[a >> 1].first; }
    int head(int a) const { return (a & 1) ? edges_[a >> 1].first : edges_[a >> 1].second; }

    // Runs DFS below the given decision prefix with a node budget.
    // Returns false if the budget ran out before the subtree was exhausted.
    bool run(const std::vector<int>& prefix, std::uint64_t budget, SearchOutcome& out) {
        reset();
        nodes_ = 0;
        budget_ = ~std::uint64_t(0);
        out_ = &out;
        stopped_ = false;

        // Replay the prefix (not counted against the budget).
        for (int choice : prefix) {
            auto cands = candidates();
            require(choice >= 0 && choice < (int)cands.size(), "invalid checkpoint prefix");
            apply(cands[choice]);
            if (pruned()) fail("invalid checkpoint prefix: lands on a pruned state");
        }
        budget_ = budget;
        nodes_ = 0;
        bool complete = dfs();
        out.nodes += nodes_;
        out_ = nullptr;
        return complete && !stopped_;
    }

    // Expands the decision tree breadth-first until at least `target` leaves
    // or prefixes exist; prefixes are decision-index paths.
    std::vector<std::vector<int>> prefixes(int target) {
        std::vector<std::vector<int>> frontier{{}};
        bool grew = true;
        while ((int)frontier.size() < target && grew) {
            grew = false;
            std::vector<std::vector<int>> next;
            for (auto& p : frontier) {
                reset();
                bool dead = false;
                for (int choice : p) {
                    auto cands = candidates();
                    if (choice >= (int)cands.size()) { dead = true; break; }
                    apply(cands[choice]);
                    if (pruned()) { dead = true; break; }
                }
                if (dead) continue;
                if (done()) {
                    next.push_back(p);  // a leaf; keep as a trivial prefix
                    continue;
                }
                auto cands = candidates();
                for (int c = 0; c < (int)cands.size(); ++c) {
                    auto q = p;
                    q.push_back(c);
                    // Keep only children that survive their own application.
                    reset();
                    bool ok = true;
                    for (int choice : q) {
                        auto cs = candidates();
                        if (choice >= (int)cs.size()) { ok = false; break; }
                        apply(cs[choice]);
                        if (pruned()) { ok = false; break; }
                    }
                    if (ok) {
                        next.push_back(q);
                        grew = true;
                    }
                }
            }
            if (next.empty()) return {{}};
            frontier = std::move(next);
            if ((int)frontier.size() >= target) break;
        }
        return frontier;
    }

  private:
    // --- state ---
    const SearchProblem& prob_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> arcs_at_;
    int max_len_ = 0;

    std::vector<int> succ_, pred_, path_start_, path_end_, assigned_;
    std::vector<char> used_;
    int used_count_ = 0;
    int face_start_ = -1, cur_arc_ = -1, cur_len_ = 0;
    std::map<int, int> closed_;
    bool dead_ = false;

    struct UndoLink { int x, y, px, ey; };
    struct Undo {
        enum Type { Link, Use, Close, State } type;
        UndoLink link;
        int a;
        int len;
        int fs, ca, cl;
        bool dead;
    };
    std::vector<Undo> undo_;

    std::uint64_t nodes_ = 0, budget_ = 0;
    SearchOutcome* out_ = nullptr;
    bool stopped_ = false;

    void reset() {
        succ_.assign(arc_count(), -1);
        pred_.assign(arc_count(), -1);
        path_start_.resize(arc_count());
        path_end_.resize(arc_count());
        for (int a = 0; a < arc_count(); ++a) path_start_[a] = path_end_[a] = a;
        assigned_.assign(prob_.adj.size(), 0);
        used_.assign(arc_count(), 0);
        used_count_ = 0;
        closed_.clear();
        undo_.clear();
        dead_ = false;

        if (prob_.fix_vertex0) {
            // Freeze vertex 0's rotation: neighbors in ascending order.
            const auto& arcs0 = arcs_at_[0];
            for (size_t i = 0; i < arcs0.size(); ++i)
                raw_link(arcs0[i], arcs0[(i + 1) % arcs0.size()], false);
        }

        face_start_ = cur_arc_ = -1;
        cur_len_ = 0;
        start_next_face();
        advance();
    }

    void raw_link(int x, int y, bool log) {
        int px = path_start_[x], ey = path_end_[y];
        if (log) undo_.push_back({Undo::Link, {x, y, px, ey}, 0, 0, 0, 0, 0, false});
        succ_[x] = y;
        pred_[y] = x;
        path_end_[px] = ey;
        path_start_[ey] = px;
        ++assigned_[tail(x)];
    }

    void undo_link(const UndoLink& l) {
        succ_[l.x] = -1;
        pred_[l.y] = -1;
        path_end_[l.px] = l.x;
        path_start_[l.ey] = l.y;
        --assigned_[tail(l.x)];
    }

    bool link_ok(int x, int y) const {
        if (succ_[x] != -1 || pred_[y] != -1) return false;
        if (tail(x) != tail(y)) return false;
        if (path_start_[x] == y) {
            // Would close the rotation cycle at this vertex; allowed only when
            // it covers every arc.
            return assigned_[tail(x)] + 1 == (int)arcs_at_[tail(x)].size();
        }
        return true;
    }

    bool done() const { return used_count_ == arc_count() && cur_arc_ == -1; }
    bool pruned() const { return dead_; }

    // The slot awaiting a successor: opposite of the current walk arc.
    int pending_slot() const { return cur_arc_ ^ 1; }

    std::vector<int> candidates() {
        std::vector<int> cands;
        int t = pending_slot();
        for (int y : arcs_at_[tail(t)])
            if (link_ok(t, y)) cands.push_back(y);
        return cands;
    }

    void mark_state() {
        undo_.push_back({Undo::State, {}, 0, 0, face_start_, cur_arc_, cur_len_, dead_});
    }

    void use_arc(int a) {
        undo_.push_back({Undo::Use, {}, a, 0, 0, 0, 0, false});
        used_[a] = 1;
        ++used_count_;
        cur_arc_ = a;
        ++cur_len_;
    }

    void close_face() {
        undo_.push_back({Undo::Close, {}, 0, cur_len_, 0, 0, 0, false});
        ++closed_[cur_len_];
        if (prob_.prune && !feasible_closed()) dead_ = true;
    }

    bool feasible_closed() const {
        for (auto& fv : prob_.admissible) {
            bool ok = true;
            for (auto& [len, c] : closed_) {
                auto it = fv.count.find(len);
                if (it == fv.count.end() || it->second < c) {
                    ok = false;
                    break;
                }
            }
            if (ok) return true;
        }
        return false;
    }

    void start_next_face() {
        face_start_ = -1;
        for (int a = 0; a < arc_count(); ++a)
            if (!used_[a]) {
                face_start_ = a;
                break;
            }
        if (face_start_ >= 0) {
            cur_len_ = 0;
            use_arc(face_start_);
        } else {
            cur_arc_ = -1;  // every face traced and closed
            cur_len_ = 0;
        }
    }

    // Follows assigned successors until a decision is needed, a face closes,
    // or the state completes/prunes.
    void advance() {
        while (!dead_) {
            if (cur_arc_ == -1) return;  // everything closed
            int t = pending_slot();
            int next = succ_[t];
            if (next == -1) return;  // decision point
            if (next == face_start_) {
                close_face();
                if (dead_) return;
                start_next_face();
                continue;
            }
            if (used_[next]) {
                // Rejoining an arc of an earlier face without closing: the
                // permutation is inconsistent. Cannot happen: pred/used go
                // together.
                fail("internal: walk rejoined a used arc");
            }
            use_arc(next);
            if (prob_.prune && max_len_ > 0 && cur_len_ > max_len_) {
                dead_ = true;
                return;
            }
        }
    }

    void apply(int y) {
        mark_state();
        int t = pending_slot();
        raw_link(t, y, true);
        if (y == face_start_) {
            close_face();
            if (!dead_) start_next_face();
        } else {
            use_arc(y);
            if (prob_.prune && max_len_ > 0 && cur_len_ > max_len_) dead_ = true;
        }
        if (!dead_) advance();
    }

    void rollback(size_t watermark) {
        while (undo_.size() > watermark) {
            auto& u = undo_.back();
            switch (u.type) {
                case Undo::Link: undo_link(u.link); break;
                case Undo::Use:
                    used_[u.a] = 0;
                    --used_count_;
                    break;
                case Undo::Close:
                    if (--closed_[u.len] == 0) closed_.erase(u.len);
                    break;
                case Undo::State:
                    face_start_ = u.fs;
                    cur_arc_ = u.ca;
                    cur_len_ = u.cl;
                    dead_ = u.dead;
                    break;
            }
            undo_.pop_back();
        }
    }

    void leaf() {
        FaceVector fv;
        fv.count = closed_;
        bool admissible = false;
        for (auto& want : prob_.admissible) admissible |= want == fv;
        if (!admissible) return;

        // Materialize the rotation system (labels 0..n-1).
        int n = (int)prob_.adj.size();
        std::vector<std::string> labels(n);
        std::vector<std::vector<int>> rows(n);
        for (int v = 0; v < n; ++v) {
            labels[v] = std::to_string(v);
            int first = arcs_at_[v][0];
            int a = first;
            do {
                rows[v].push_back(a);
                a = succ_[a];
            } while (a != first);
        }
        auto rs = RotationSystem::build(labels, edges_, rows);
        ++out_->embeddings_by_vector[fv];
        if (prob_.accept) {
            auto fs = trace_faces(rs);
            if (auto finding = prob_.accept(rs, fs, fv)) {
                out_->findings.push_back(*finding);
                if (prob_.stop_after_findings &&
                    out_->findings.size() >= prob_.stop_after_findings)
                    stopped_ = true;
            }
        }
    }

    // Returns true if the subtree was fully explored within budget.
    bool dfs() {
        if (dead_) return true;
        if (done()) {
            leaf();
            return true;
        }
        auto cands = candidates();
        for (int y : cands) {
            if (stopped_) return true;
            if (nodes_ >= budget_) return false;
            ++nodes_;
            size_t watermark = undo_.size();
            apply(y);
            bool sub = dfs();
            rollback(watermark);
            if (!sub) return false;
        }
        return true;
    }
};

inline int env_thread_cap() {
    if (const char* env = std::getenv("PRISMATIC_THREADS")) {
        int cap = std::atoi(env);
        if (cap >= 1) return cap;
    }
    return (int)std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace detail

struct SearchSpec {
    int n = 0;
    int genus = 0;
    std::vector<SearchShape> shapes;
    std::uint64_t budget = 10'000'000;
    int threads = 0;             // 0 = hardware/PRISMATIC_THREADS
    std::string checkpoint;      // optional path
    bool audit = false;          // verify pruning soundness (tiny n only)

    std::string canonical() const {
        std::string s = "n=" + std::to_string(n) + " g=" + std::to_string(genus) + " shapes=";
        for (auto& sh : shapes) s += sh.str() + ";";
        s += " budget=" + std::to_string(budget);
        return s;
    }
    std::uint64_t hash() const {
        std::uint64_t h = 1469598103934665603ull;
        for (char c : canonical()) {
            h ^= (unsigned char)c;
            h *= 1099511628211ull;
        }
        return h;
    }
};

namespace detail {

constexpr int kPrefixTarget = 64;
constexpr std::uint64_t kSequentialBudgetThreshold = 10000;

struct CheckpointState {
    std::uint64_t spec_hash = 0;
    int prefix_count = 0;
    std::map<int, std::string> done;  // prefix index -> serialized result
};

// Field values travel on one whitespace-split checkpoint line, so newlines
// and spaces are escaped (tokens never contain ';' or '~').
inline std::string encode_lines(const std::string& text) {
    std::string out;
    for (char c : text) out += (c == '\n') ? ';' : (c == ' ' ? '~' : c);
    return out;
}
inline std::string decode_lines(const std::string& text) {
    std::string out;
    for (char c : text) out += (c == ';') ? '\n' : (c == '~' ? ' ' : c);
    return out;
}

inline std::string serialize_prefix_result(const SearchOutcome& res, bool complete) {
    std::ostringstream os;
    os << (complete ? "complete" : "exhausted") << " nodes " << res.nodes;
    for (auto& [fv, count] : res.embeddings_by_vector)
        os << " vec " << encode_lines(fv.str()) << " " << count;
    os << "\n";
    for (auto& f : res.findings)
        os << "finding " << encode_lines(f.shape) << " " << encode_lines(f.vector.str()) << " "
           << encode_lines(f.embedding) << " " << encode_lines(f.cover) << "\n";
    return os.str();
}

inline std::pair<SearchOutcome, bool> parse_prefix_result(const std::string& text) {
    SearchOutcome res;
    bool complete = false;
    std::istringstream in(text);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tok;
        ls >> tok;
        if (first) {
            complete = tok == "complete";
            std::string kw;
            ls >> kw >> res.nodes;
            while (ls >> kw) {
                require(kw == "vec", "corrupt checkpoint line: " + line);
                std::string vec;
                std::uint64_t count;
                ls >> vec >> count;
                FaceVector fv;
                std::istringstream vs(decode_lines(vec));
                std::string part;
                while (vs >> part) {
                    auto caret = part.find('^');
                    fv.count[std::stoi(part.substr(0, caret))] = std::stoi(part.substr(caret + 1));
                }
                res.embeddings_by_vector[fv] = count;
            }
            first = false;
            continue;
        }
        require(tok == "finding", "corrupt checkpoint line: " + line);
        SearchFinding f;
        std::string shape, vec, emb, cov;
        ls >> shape >> vec >> emb >> cov;
        f.shape = decode_lines(shape);
        std::istringstream vs(decode_lines(vec));
        std::string part;
        while (vs >> part) {
            auto caret = part.find('^');
            f.vector.count[std::stoi(part.substr(0, caret))] = std::stoi(part.substr(caret + 1));
        }
        f.embedding = decode_lines(emb);
        f.cover = decode_lines(cov);
        res.findings.push_back(f);
    }
    return {res, complete};
}

inline CheckpointState load_checkpoint(const std::string& path) {
    CheckpointState st;
    std::ifstream in(path);
    if (!in) return st;
    std::string line;
    require(bool(std::getline(in, line)) && line == "prismatic-checkpoint v1",
            "checkpoint unreadable: bad magic in " + path);
    require(bool(std::getline(in, line)) && line.rfind("spec ", 0) == 0, "checkpoint unreadable");
    st.spec_hash = std::stoull(line.substr(5));
    require(bool(std::getline(in, line)) && line.rfind("prefixes ", 0) == 0, "checkpoint unreadable");
    st.prefix_count = std::stoi(line.substr(9));
    while (std::getline(in, line)) {
        if (line.rfind("prefix ", 0) != 0) continue;
        int idx = std::stoi(line.substr(7));
        std::string block;
        auto colon = line.find(": ");
        require(colon != std::string::npos, "checkpoint unreadable");
        block = line.substr(colon + 2) + "\n";
        while (in.peek() == 'f') {
            std::getline(in, line);
            block += line + "\n";
        }
        st.done[idx] = block;
    }
    return st;
}

inline void save_checkpoint(const std::string& path, const SearchSpec& spec, int prefix_count,
                            const std::map<int, std::string>& done) {
    std::ofstream out(path, std::ios::trunc);
    require(bool(out), "cannot write checkpoint " + path);
    out << "prismatic-checkpoint v1\n";
    out << "spec " << spec.hash() << "\n";
    out << "prefixes " << prefix_count << "\n";
    for (auto& [idx, block] : done) {
        auto nl = block.find('\n');
        out << "prefix " << idx << ": " << block.substr(0, nl) << "\n"
            << block.substr(nl + 1);
    }
}

}  // namespace detail

// First triangular embedding of the given simple graph (vertex 0's rotation
// frozen), searched depth-first within the node budget. Labels are "0".."n-1".
inline std::optional<RotationSystem> find_triangular_embedding(
    const std::vector<std::vector<int>>& adj, std::uint64_t budget = 50'000'000) {
    int edges = 0;
    for (auto& row : adj) edges += (int)row.size();
    edges /= 2;
    if ((2 * edges) % 3 != 0) return std::nullopt;
    int chi = (int)adj.size() - edges + 2 * edges / 3;
    if ((2 - chi) % 2 != 0 || chi > 2) return std::nullopt;  // Euler parity infeasible
    FaceVector fv;
    fv.count[3] = 2 * edges / 3;
    detail::SearchProblem prob;
    prob.adj = adj;
    prob.admissible = {fv};
    prob.fix_vertex0 = false;  // general graphs carry no relabeling symmetry
    prob.stop_after_findings = 1;
    prob.accept = [](const RotationSystem& rs, const FaceSet&, const FaceVector& v)
        -> std::optional<SearchFinding> {
        SearchFinding f;
        f.embedding = rs.serialize();
        f.vector = v;
        return f;
    };
    detail::SuccessorSearch engine(prob);
    SearchOutcome out;
    engine.run({}, budget, out);
    if (out.findings.empty()) return std::nullopt;
    return RotationSystem::parse(out.findings[0].embedding);
}

// Exhaustive (or budgeted) search for embeddings of K_n at the target genus
// hosting one of the requested face-subset shapes. Every finding is
// re-validated through the public tracer and cover checker before it is
// reported.
inline SearchOutcome search_patchworks(const SearchSpec& spec) {
    require(spec.n >= 3, "search needs n >= 3");
    auto admissible = face_vector_candidates(spec.n, spec.genus, spec.shapes);

    detail::SearchProblem prob;
    prob.adj.resize(spec.n);
    for (int u = 0; u < spec.n; ++u)
        for (int v = 0; v < spec.n; ++v)
            if (u != v) prob.adj[u].push_back(v);
    prob.admissible = admissible;
    auto shapes = spec.shapes;
    prob.accept = [&shapes](const RotationSystem& rs, const FaceSet& fs,
                            const FaceVector& fv) -> std::optional<SearchFinding> {
        for (auto& shape : shapes) {
            auto witness = detail::find_shape_witness(rs, fs, shape);
            if (!witness) continue;
            // Independent re-validation through the public checkers.
            FacialCover cover{*witness};
            auto rep = check_cover(rs, fs, cover);
            require(shape.kind == SearchShape::Cover ? rep.is_cover : rep.is_patchwork,
                    "internal: witness failed re-validation");
            SearchFinding f;
            f.embedding = rs.serialize();
            for (int face : *witness) {
                auto toks = face_tokens(rs, fs.faces[face]);
                for (size_t i = 0; i < toks.size(); ++i) f.cover += (i ? " " : "") + toks[i];
                f.cover += "\n";
            }
            f.shape = shape.str();
            f.vector = fv;
            return f;
        }
        return std::nullopt;
    };

    SearchOutcome total;
    if (admissible.empty()) {
        total.complete = true;
        return total;
    }

    detail::SuccessorSearch engine(prob);

    // Audit mode: rerun without pruning and require identical results.
    if (spec.audit) {
        SearchOutcome pruned_out, full_out;
        bool ok1 = engine.run({}, spec.budget, pruned_out);
        detail::SearchProblem noprune = prob;
        noprune.prune = false;
        detail::SuccessorSearch full(noprune);
        bool ok2 = full.run({}, ~std::uint64_t(0), full_out);
        require(ok1 && ok2, "audit requires the search to complete within budget");
        require(pruned_out.embeddings_by_vector == full_out.embeddings_by_vector,
                "pruning audit failed: embedding counts differ");
        require(pruned_out.findings.size() == full_out.findings.size(),
                "pruning audit failed: findings differ");
        pruned_out.complete = true;
        return pruned_out;
    }

    // Small budgets run as one sequential DFS.
    if (spec.budget < detail::kSequentialBudgetThreshold) {
        total.complete = engine.run({}, spec.budget, total);
        return total;
    }

    auto prefixes = engine.prefixes(detail::kPrefixTarget);
    int P = (int)prefixes.size();
    std::uint64_t per = spec.budget / P, rem = spec.budget % P;

    detail::CheckpointState ck;
    if (!spec.checkpoint.empty()) {
        ck = detail::load_checkpoint(spec.checkpoint);
        if (ck.prefix_count != 0) {
            require(ck.spec_hash == spec.hash(),
                    "checkpoint was recorded for a different search spec");
            require(ck.prefix_count == P, "checkpoint prefix count mismatch");
        }
    }

    std::vector<std::string> results(P);
    std::vector<char> completed(P, 0);
    std::atomic<int> next{0};
    std::mutex ck_mutex;
    std::map<int, std::string> done = ck.done;

    int threads = spec.threads > 0 ? spec.threads : detail::env_thread_cap();
    threads = std::min(threads, detail::env_thread_cap());
    threads = std::max(1, std::min(threads, P));

    auto worker = [&]() {
        detail::SuccessorSearch local(prob);
        while (true) {
            int i = next.fetch_add(1);
            if (i >= P) return;
            std::uint64_t slice = per + (i < (int)rem ? 1 : 0);
            {
                std::lock_guard<std::mutex> lock(ck_mutex);
                if (auto it = done.find(i); it != done.end()) {
                    results[i] = it->second;
                    completed[i] = 1;
                    continue;
                }
            }
            SearchOutcome part;
            bool complete = local.run(prefixes[i], slice, part);
            std::string block = detail::serialize_prefix_result(part, complete);
            {
                std::lock_guard<std::mutex> lock(ck_mutex);
                results[i] = block;
                completed[i] = 1;
                done[i] = block;
                if (!spec.checkpoint.empty())
                    detail::save_checkpoint(spec.checkpoint, spec, P, done);
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    total.complete = true;
    for (int i = 0; i < P; ++i) {
        auto [part, complete] = detail::parse_prefix_result(results[i]);
        total.nodes += part.nodes;
        total.complete &= complete;
        for (auto& [fv, c] : part.embeddings_by_vector) total.embeddings_by_vector[fv] += c;
        for (auto& f : part.findings) total.findings.push_back(f);
    }
    return total;
}

}  // namespace prismatic
