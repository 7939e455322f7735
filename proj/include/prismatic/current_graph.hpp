// Current graphs over Z_m, circuit logs, the index-1/index-3 construction
// principles, and the derived-embedding machinery: rotation at vertex v is
// circuit [v mod j] with v added to every current, and each vortex letter's
// Hamiltonian face is subdivided to produce K_{m+l} - K_l.
#pragma once

#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "prismatic/face_tracing.hpp"
#include "prismatic/rotation_system.hpp"
#include "prismatic/surgery.hpp"

namespace prismatic {

struct CircuitEntry {
    bool is_letter = false;
    int current = 0;    // 0..m-1 when !is_letter
    char letter = 0;

    bool operator==(const CircuitEntry&) const = default;
};

struct CircuitLog {
    int modulus = 0;
    std::vector<std::vector<CircuitEntry>> circuits;

    int index() const { return (int)circuits.size(); }

    std::vector<char> letters() const {
        std::vector<char> out;
        for (auto& c : circuits)
            for (auto& e : c)
                if (e.is_letter && std::find(out.begin(), out.end(), e.letter) == out.end())
                    out.push_back(e.letter);
        return out;
    }
};

struct CurrentGraph {
    RotationSystem rs;
    int modulus = 0;
    std::vector<int> current;       // per arc, in 1..m-1
    std::map<int, char> vortex;     // vertex -> letter

    int excess(int v) const {
        long long s = 0;
        for (int a : rs.rotation(v)) s += current[a];
        return (int)(s % modulus);
    }
};

// --------------------------------------------------------------------------
// Log file format: "m=<int> index=<int>" header, then "circuit <i>: t1 t2 ..."
// with integer tokens mod m (negatives allowed) or single-letter vortex names.

inline CircuitLog parse_log(std::string_view text) {
    CircuitLog log;
    std::istringstream in{std::string(text)};
    std::string line;
    int declared_index = -1;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok.rfind("m=", 0) == 0) {
            log.modulus = std::stoi(tok.substr(2));
            require(log.modulus >= 2, "modulus must be at least 2");
            std::string idx;
            require(bool(ls >> idx) && idx.rfind("index=", 0) == 0,
                    "log header must be 'm=<int> index=<int>' (line " + std::to_string(lineno) + ")");
            declared_index = std::stoi(idx.substr(6));
            continue;
        }
        require(tok == "circuit", "unknown token '" + tok + "' (line " + std::to_string(lineno) + ")");
        require(log.modulus >= 2, "circuit before 'm=' header (line " + std::to_string(lineno) + ")");
        std::string num;
        ls >> num;
        require(!num.empty() && num.back() == ':',
                "expected 'circuit <i>:' (line " + std::to_string(lineno) + ")");
        require(std::stoi(num) == (int)log.circuits.size(),
                "circuits must be numbered consecutively from 0 (line " + std::to_string(lineno) + ")");
        log.circuits.emplace_back();
        while (ls >> tok) {
            CircuitEntry e;
            if ((tok[0] >= '0' && tok[0] <= '9') || tok[0] == '-' || tok[0] == '+') {
                long long v = std::stoll(tok);
                v %= log.modulus;
                if (v < 0) v += log.modulus;
                require(v != 0, "current 0 on an arc (line " + std::to_string(lineno) + ")");
                e.current = (int)v;
            } else {
                require(tok.size() == 1 && isalpha((unsigned char)tok[0]),
                        "unknown token '" + tok + "' (line " + std::to_string(lineno) + ")");
                e.is_letter = true;
                e.letter = tok[0];
            }
            log.circuits.back().push_back(e);
        }
        require(!log.circuits.back().empty(), "empty circuit (line " + std::to_string(lineno) + ")");
    }
    require(log.modulus >= 2, "missing 'm=' header");
    require(declared_index == log.index(),
            "declared index " + std::to_string(declared_index) + " but " +
                std::to_string(log.index()) + " circuits given");
    return log;
}

inline std::string print_log(const CircuitLog& log) {
    std::string out = "m=" + std::to_string(log.modulus) + " index=" + std::to_string(log.index()) + "\n";
    for (int i = 0; i < log.index(); ++i) {
        out += "circuit " + std::to_string(i) + ":";
        for (auto& e : log.circuits[i])
            out += " " + (e.is_letter ? std::string(1, e.letter) : std::to_string(e.current));
        out += "\n";
    }
    return out;
}

// --------------------------------------------------------------------------
// Current-graph file: "m=<int>" header, embedding rows whose neighbor tokens
// carry arc currents ("v: w[+5] u[-3]"), and "vortex <vertex> <letter>" lines.

inline CurrentGraph parse_current_graph(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    int modulus = 0;
    std::string emb_text;
    std::vector<std::pair<std::string, std::string>> vortex_lines;
    // (vertex token, position-in-row) -> current value
    std::map<std::pair<std::string, int>, long long> row_currents;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos && (h == 0 || isspace((unsigned char)line[h - 1])))
            line.erase(h);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok.rfind("m=", 0) == 0) {
            modulus = std::stoi(tok.substr(2));
            continue;
        }
        if (tok == "vortex") {
            std::string v, letter;
            require(bool(ls >> v >> letter) && letter.size() == 1,
                    "expected 'vortex <vertex> <letter>' (line " + std::to_string(lineno) + ")");
            vortex_lines.emplace_back(v, letter);
            continue;
        }
        require(tok.size() > 1 && tok.back() == ':',
                "malformed line " + std::to_string(lineno));
        std::string vertex = tok.substr(0, tok.size() - 1);
        emb_text += vertex + ":";
        int pos = 0;
        while (ls >> tok) {
            auto open = tok.find('[');
            require(open != std::string::npos && tok.back() == ']',
                    "neighbor token '" + tok + "' lacks a [current] (line " + std::to_string(lineno) + ")");
            std::string name = tok.substr(0, open);
            long long cur = std::stoll(tok.substr(open + 1, tok.size() - open - 2));
            emb_text += " " + name;
            row_currents[{vertex, pos++}] = cur;
        }
        emb_text += "\n";
    }
    require(modulus >= 2, "missing 'm=' header");

    CurrentGraph cg{RotationSystem::parse(emb_text), modulus, {}, {}};
    cg.current.assign(cg.rs.arc_count(), 0);
    for (int v = 0; v < cg.rs.vertex_count(); ++v) {
        const auto& row = cg.rs.rotation(v);
        for (int i = 0; i < (int)row.size(); ++i) {
            long long cur = row_currents.at({cg.rs.label(v), i});
            cur %= modulus;
            if (cur < 0) cur += modulus;
            require(cur != 0, "current 0 on an arc leaving '" + cg.rs.label(v) + "'");
            cg.current[row[i]] = (int)cur;
        }
    }
    for (int a = 0; a < cg.rs.arc_count(); a += 2)
        require((cg.current[a] + cg.current[a + 1]) % modulus == 0,
                "currents on edge " + cg.rs.describe_edge(arc_edge(a)) +
                    " are not antisymmetric");
    for (auto& [v, letter] : vortex_lines) {
        int idx = cg.rs.vertex(v);
        require(cg.excess(idx) != 0, "labeled vortex '" + v + "' has zero excess");
        for (auto& [w, l] : cg.vortex)
            require(l != letter[0], "vortex letter '" + letter + "' used twice");
        cg.vortex[idx] = letter[0];
    }
    return cg;
}

inline std::string print_current_graph(const CurrentGraph& cg) {
    std::string out = "m=" + std::to_string(cg.modulus) + "\n";
    for (int v : cg.rs.sorted_vertices()) {
        out += cg.rs.label(v) + ":";
        for (int a : cg.rs.rotation(v))
            out += " " + cg.rs.arc_token(a) + "[" + std::to_string(cg.current[a]) + "]";
        out += "\n";
    }
    for (auto& [v, letter] : cg.vortex)
        out += "vortex " + cg.rs.label(v) + " " + std::string(1, letter) + "\n";
    return out;
}

// --------------------------------------------------------------------------

// Logs of all faces of the current graph's embedding, vortex letters inserted
// where the boundary walk passes the labeled vertex. circuit_order, when
// given, maps circuit number -> face index in canonical face order.
inline CircuitLog trace_circuits(const CurrentGraph& cg, std::vector<int> circuit_order = {}) {
    auto fs = trace_faces(cg.rs);
    if (circuit_order.empty()) {
        circuit_order.resize(fs.f);
        std::iota(circuit_order.begin(), circuit_order.end(), 0);
    }
    require((int)circuit_order.size() == fs.f, "circuit order must list every face once");
    CircuitLog log;
    log.modulus = cg.modulus;
    for (int face : circuit_order) {
        require(face >= 0 && face < fs.f, "circuit order entry out of range");
        std::vector<CircuitEntry> circuit;
        for (int a : fs.faces[face].arcs) {
            circuit.push_back({false, cg.current[a], 0});
            if (auto it = cg.vortex.find(cg.rs.head(a)); it != cg.vortex.end())
                circuit.push_back({true, 0, it->second});
        }
        log.circuits.push_back(std::move(circuit));
    }
    return log;
}

struct CheckItem {
    std::string principle;
    bool checkable = true;
    bool pass = false;
    std::string detail;
};

struct CheckReport {
    std::vector<CheckItem> items;

    bool all_pass() const {
        for (auto& i : items)
            if (i.checkable && !i.pass) return false;
        return true;
    }
    const CheckItem& item(const std::string& principle) const {
        for (auto& i : items)
            if (i.principle == principle) return i;
        fail("no principle '" + principle + "' in report");
    }
};

namespace detail {

// A2/B2 core: every nonzero element of Z_m exactly once in the circuit.
inline CheckItem currents_once(const std::vector<CircuitEntry>& circuit, int m,
                               const std::string& name) {
    std::vector<int> count(m, 0);
    for (auto& e : circuit)
        if (!e.is_letter) ++count[e.current];
    std::string missing, repeated;
    for (int c = 1; c < m; ++c) {
        if (count[c] == 0) missing += (missing.empty() ? "" : " ") + std::to_string(c);
        if (count[c] > 1) repeated += (repeated.empty() ? "" : " ") + std::to_string(c);
    }
    if (missing.empty() && repeated.empty()) return {name, true, true, ""};
    std::string detail;
    if (!missing.empty()) detail += "missing {" + missing + "}";
    if (!repeated.empty()) detail += (detail.empty() ? "" : ", ") + ("repeated {" + repeated + "}");
    return {name, true, false, detail};
}

}  // namespace detail

// Principles A1-A4 for index-1 current graphs. A2 needs only the log; A1, A3,
// A4 need the structural graph and are reported not-checkable without it.
inline CheckReport check_index1(const CircuitLog& log, const CurrentGraph* cg = nullptr) {
    require(log.index() == 1, "check_index1 requires an index-1 log");
    CheckReport rep;
    int m = log.modulus;
    rep.items.push_back(detail::currents_once(log.circuits[0], m, "A2"));

    if (!cg) {
        rep.items.push_back({"A1", false, false, "structural current graph not supplied"});
        rep.items.push_back({"A3", false, false, "structural current graph not supplied"});
        rep.items.push_back({"A4", false, false, "structural current graph not supplied"});
        return rep;
    }
    require(cg->modulus == m, "log and current graph disagree on modulus");

    CheckItem a1{"A1", true, true, ""};
    for (int v = 0; v < cg->rs.vertex_count(); ++v) {
        int d = cg->rs.degree(v);
        if (d != 1 && d != 3) {
            a1.pass = false;
            a1.detail = "vertex '" + cg->rs.label(v) + "' has degree " + std::to_string(d);
            break;
        }
    }
    rep.items.push_back(a1);

    CheckItem a3{"A3", true, true, ""};
    CheckItem a4{"A4", true, true, ""};
    for (int v = 0; v < cg->rs.vertex_count(); ++v) {
        int d = cg->rs.degree(v), ex = cg->excess(v);
        if (d == 3 && ex != 0 && a3.pass) {
            a3.pass = false;
            a3.detail = "KCL fails at '" + cg->rs.label(v) + "' (excess " + std::to_string(ex) + ")";
        }
        if (d == 1 && std::gcd(ex, m) != 1 && a4.pass) {
            a4.pass = false;
            a4.detail = "excess " + std::to_string(ex) + " of '" + cg->rs.label(v) +
                        "' does not generate Z_" + std::to_string(m);
        }
    }
    rep.items.push_back(a3);
    rep.items.push_back(a4);

    CheckItem agree{"log", true, true, ""};
    auto traced = trace_circuits(*cg);
    auto canon = [](std::vector<CircuitEntry> c) {
        auto best = c;
        for (size_t k = 1; k < c.size(); ++k) {
            std::rotate(c.begin(), c.begin() + 1, c.end());
            // lexicographic on (is_letter, current, letter)
            auto key = [](const std::vector<CircuitEntry>& v) {
                std::vector<std::tuple<bool, int, char>> k2;
                for (auto& e : v) k2.emplace_back(e.is_letter, e.current, e.letter);
                return k2;
            };
            if (key(c) < key(best)) best = c;
        }
        return best;
    };
    if (canon(traced.circuits[0]) != canon(log.circuits[0])) {
        agree.pass = false;
        agree.detail = "supplied log is not the traced circuit of the current graph";
    }
    rep.items.push_back(agree);
    return rep;
}

// Principles B1-B4 for index-3 current graphs, under the given circuit
// numbering (canonical face order by default).
inline CheckReport check_index3(const CurrentGraph& cg, std::vector<int> circuit_order = {}) {
    auto fs = trace_faces(cg.rs);
    require(fs.f == 3, "check_index3 requires exactly 3 circuits, got " + std::to_string(fs.f));
    auto log = trace_circuits(cg, circuit_order);
    int m = cg.modulus;
    CheckReport rep;

    CheckItem b1{"B1", true, true, ""};
    for (int v = 0; v < cg.rs.vertex_count(); ++v)
        if (cg.rs.degree(v) != 3) {
            b1.pass = false;
            b1.detail = "vertex '" + cg.rs.label(v) + "' has degree " +
                        std::to_string(cg.rs.degree(v));
            break;
        }
    rep.items.push_back(b1);

    CheckItem b2{"B2", true, true, ""};
    for (int i = 0; i < 3 && b2.pass; ++i) {
        auto item = detail::currents_once(log.circuits[i], m, "B2");
        if (!item.pass) {
            b2.pass = false;
            b2.detail = "circuit [" + std::to_string(i) + "]: " + item.detail;
        }
    }
    rep.items.push_back(b2);

    // Face index (under the numbering) of each arc.
    std::vector<int> order = circuit_order;
    if (order.empty()) {
        order = {0, 1, 2};
    }
    std::vector<int> circuit_of_arc(cg.rs.arc_count(), -1);
    for (int i = 0; i < 3; ++i)
        for (int a : fs.faces[order[i]].arcs) circuit_of_arc[a] = i;

    CheckItem b3{"B3", true, true, ""};
    int target = std::gcd(3, m);
    for (int v = 0; v < cg.rs.vertex_count() && b3.pass; ++v) {
        int ex = cg.excess(v);
        if (ex == 0) continue;  // not a vortex
        std::set<int> visiting;
        for (int a : cg.rs.rotation(v)) visiting.insert(circuit_of_arc[a]);
        if ((int)visiting.size() != 3) {
            b3.pass = false;
            b3.detail = "vortex '" + cg.rs.label(v) + "' is not incident with every circuit";
        } else if (std::gcd(ex, m) != target) {
            b3.pass = false;
            b3.detail = "excess " + std::to_string(ex) + " of vortex '" + cg.rs.label(v) +
                        "' generates <" + std::to_string(std::gcd(ex, m)) + "> of Z_" +
                        std::to_string(m) + ", not <3>";
        }
    }
    rep.items.push_back(b3);

    CheckItem b4{"B4", true, true, ""};
    for (int e = 0; e < cg.rs.edge_count() && b4.pass; ++e) {
        int i = circuit_of_arc[2 * e], j = circuit_of_arc[2 * e + 1];
        if (((j - i) % 3 + 3) % 3 != cg.current[2 * e] % 3) {
            b4.pass = false;
            b4.detail = "arc " + cg.rs.describe_edge(e) + " with current " +
                        std::to_string(cg.current[2 * e]) + " runs from circuit [" +
                        std::to_string(i) + "] to [" + std::to_string(j) + "]";
        }
    }
    rep.items.push_back(b4);
    return rep;
}

// Tries all numberings of the three circuits and returns one satisfying B1-B4.
inline std::optional<std::vector<int>> find_b4_numbering(const CurrentGraph& cg) {
    std::vector<int> order{0, 1, 2};
    std::sort(order.begin(), order.end());
    do {
        if (check_index3(cg, order).all_pass()) return order;
    } while (std::next_permutation(order.begin(), order.end()));
    return std::nullopt;
}

// --------------------------------------------------------------------------

// The derived embedding on vertex set Z_m (letters skipped): the rotation at
// vertex v is circuit [v mod j] with v added to each current.
inline RotationSystem derive(const CircuitLog& log) {
    int m = log.modulus, j = log.index();
    require(j >= 1, "empty log");
    std::vector<std::pair<std::string, std::vector<std::string>>> rows;
    for (int v = 0; v < m; ++v) {
        std::vector<std::string> nbrs;
        std::set<int> seen;
        for (auto& e : log.circuits[v % j]) {
            if (e.is_letter) continue;
            int w = (v + e.current) % m;
            require(seen.insert(w).second,
                    "log induces parallel edges at vertex " + std::to_string(v));
            nbrs.push_back(std::to_string(w));
        }
        rows.emplace_back(std::to_string(v), nbrs);
    }
    return RotationSystem::from_neighbor_lists(rows);
}

struct AttachResult {
    RotationSystem rs;
    std::map<char, int> face_of_letter;  // letter -> face index in the pre-attach trace
};

// Subdivides each vortex letter's Hamiltonian face with a vertex named by the
// letter. The face for a letter seen between currents c1, c2 in circuit [i] is
// the one through the corner (i+c1, i+c2) at vertex i.
inline AttachResult attach_vortices(const RotationSystem& derived, const CircuitLog& log) {
    int m = log.modulus, j = log.index();
    auto fs = trace_faces(derived);

    std::map<char, std::pair<int, int>> corner_of_letter;  // letter -> (prev, next) at vertex i
    std::map<char, int> circuit_of_letter;
    for (int i = 0; i < j; ++i) {
        const auto& c = log.circuits[i];
        int k = (int)c.size();
        for (int p = 0; p < k; ++p) {
            if (!c[p].is_letter) continue;
            if (corner_of_letter.count(c[p].letter)) continue;  // first occurrence wins
            int before = (p + k - 1) % k, after = (p + 1) % k;
            require(!c[before].is_letter && !c[after].is_letter,
                    "adjacent vortex letters in circuit [" + std::to_string(i) + "]");
            corner_of_letter[c[p].letter] = {c[before].current, c[after].current};
            circuit_of_letter[c[p].letter] = i;
        }
    }

    int hamiltonian = 0;
    for (auto& fw : fs.faces)
        if (fw.sides() == m && face_is_simple(derived, fw)) ++hamiltonian;
    require(hamiltonian == (int)corner_of_letter.size(),
            std::to_string(hamiltonian) + " Hamiltonian faces but " +
                std::to_string(corner_of_letter.size()) + " vortex letters");

    std::map<char, int> face_of_letter;
    std::set<int> used;
    for (auto& [letter, corner] : corner_of_letter) {
        int i = circuit_of_letter[letter];
        int vi = derived.vertex(std::to_string(i));
        int from = derived.vertex(std::to_string((i + corner.first) % m));
        int to = derived.vertex(std::to_string((i + corner.second) % m));
        int in_arc = -1;
        for (int a : derived.rotation(from))
            if (derived.head(a) == vi) in_arc = a;
        require(in_arc >= 0, "internal: derived corner arc missing");
        require(derived.head(derived.next_in_face(in_arc)) == to,
                "internal: corner does not continue to the expected vertex");
        auto [face, pos] = locate_arc(fs, in_arc);
        require(fs.faces[face].sides() == m && face_is_simple(derived, fs.faces[face]),
                "face for vortex '" + std::string(1, letter) + "' is not Hamiltonian");
        require(used.insert(face).second,
                "ambiguous matching: two vortex letters map to one face");
        face_of_letter[letter] = face;
    }

    RotationSystem out = derived;
    for (auto& [letter, face] : face_of_letter)
        out = subdivide_face(out, fs.faces[face], std::string(1, letter));
    return {std::move(out), std::move(face_of_letter)};
}

}  // namespace prismatic
