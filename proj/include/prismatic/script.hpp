// Serializable surgery scripts. One step per line:
//   flip a b[#k] | addface F i j | addhandle F1 i F2 j | del a b[#k]
//   | subdivide F name | split w F | contract a b[#k]
// Face references F are indices into the canonical face order of the
// embedding as it stands before the step. run_script checks each op's
// (v,e,f,genus) delta against a from-scratch trace after every step.
#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "prismatic/face_tracing.hpp"
#include "prismatic/rotation_system.hpp"
#include "prismatic/surgery.hpp"

namespace prismatic {

struct ScriptStep {
    enum Op { Flip, AddFace, AddHandle, Del, Subdivide, Split, Contract } op;
    std::string a, b;  // vertex tokens (flip/del/contract); split's w in a; subdivide's name in b
    int copy = 1;
    int face1 = -1, corner1 = -1;
    int face2 = -1, corner2 = -1;

    std::string str() const {
        std::ostringstream os;
        auto edge = [&] {
            os << " " << a << " " << b;
            if (copy != 1) os << "#" << copy;
        };
        switch (op) {
            case Flip: os << "flip"; edge(); break;
            case Del: os << "del"; edge(); break;
            case Contract: os << "contract"; edge(); break;
            case AddFace: os << "addface " << face1 << " " << corner1 << " " << corner2; break;
            case AddHandle:
                os << "addhandle " << face1 << " " << corner1 << " " << face2 << " " << corner2;
                break;
            case Subdivide: os << "subdivide " << face1 << " " << b; break;
            case Split: os << "split " << a << " " << face1; break;
        }
        return os.str();
    }
};

struct TransformationScript {
    std::vector<ScriptStep> steps;
};

inline TransformationScript parse_script(std::string_view text) {
    TransformationScript script;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#');
            h != std::string::npos && (h == 0 || isspace((unsigned char)line[h - 1])))
            line.erase(h);
        std::istringstream ls(line);
        std::string op;
        if (!(ls >> op)) continue;
        ScriptStep st;
        auto parse_edge = [&] {
            require(bool(ls >> st.a >> st.b), "step needs two vertices (line " +
                                                  std::to_string(lineno) + ")");
            auto [name, copy] = detail::split_copy_suffix(st.b);
            st.b = name;
            st.copy = copy;
        };
        if (op == "flip") {
            st.op = ScriptStep::Flip;
            parse_edge();
        } else if (op == "del") {
            st.op = ScriptStep::Del;
            parse_edge();
        } else if (op == "contract") {
            st.op = ScriptStep::Contract;
            parse_edge();
        } else if (op == "addface") {
            st.op = ScriptStep::AddFace;
            require(bool(ls >> st.face1 >> st.corner1 >> st.corner2),
                    "addface needs F i j (line " + std::to_string(lineno) + ")");
        } else if (op == "addhandle") {
            st.op = ScriptStep::AddHandle;
            require(bool(ls >> st.face1 >> st.corner1 >> st.face2 >> st.corner2),
                    "addhandle needs F1 i F2 j (line " + std::to_string(lineno) + ")");
        } else if (op == "subdivide") {
            st.op = ScriptStep::Subdivide;
            require(bool(ls >> st.face1 >> st.b),
                    "subdivide needs F name (line " + std::to_string(lineno) + ")");
        } else if (op == "split") {
            st.op = ScriptStep::Split;
            require(bool(ls >> st.a >> st.face1),
                    "split needs w F (line " + std::to_string(lineno) + ")");
        } else {
            fail("unknown script op '" + op + "' (line " + std::to_string(lineno) + ")");
        }
        script.steps.push_back(st);
    }
    return script;
}

inline std::string print_script(const TransformationScript& script) {
    std::string out;
    for (auto& st : script.steps) out += st.str() + "\n";
    return out;
}

struct AuditRow {
    std::string step;
    int v = 0, e = 0, f = 0, genus = 0;
};

struct RunResult {
    RotationSystem rs;
    std::vector<AuditRow> audit;  // row 0 is the input state
};

inline RunResult run_script(const RotationSystem& start, const TransformationScript& script) {
    RunResult out{start, {}};
    auto fs = trace_faces(start);
    out.audit.push_back({"input", fs.v, fs.e, fs.f, fs.genus});
    for (size_t k = 0; k < script.steps.size(); ++k) {
        const auto& st = script.steps[k];
        int dv = 0, de = 0, df = 0, dg = 0;
        try {
            switch (st.op) {
                case ScriptStep::Flip: {
                    out.rs = flip_edge(out.rs, st.a, st.b, st.copy);
                    break;
                }
                case ScriptStep::Del: {
                    int e = resolve_edge(out.rs, st.a, st.b, st.copy);
                    auto walk = face_walk_from(out.rs, 2 * e);
                    bool same =
                        std::find(walk.begin(), walk.end(), 2 * e + 1) != walk.end();
                    de = -1;
                    df = same ? 1 : -1;
                    dg = same ? -1 : 0;
                    out.rs = delete_edge(out.rs, e);
                    break;
                }
                case ScriptStep::Contract: {
                    dv = -1;
                    de = -1;
                    out.rs = contract_edge(out.rs, st.a, st.b, st.copy);
                    break;
                }
                case ScriptStep::AddFace: {
                    require(st.face1 >= 0 && st.face1 < fs.f, "face index out of range");
                    de = 1;
                    df = 1;
                    out.rs = add_edge_in_face(out.rs, fs.faces[st.face1], st.corner1, st.corner2);
                    break;
                }
                case ScriptStep::AddHandle: {
                    require(st.face1 >= 0 && st.face1 < fs.f && st.face2 >= 0 && st.face2 < fs.f,
                            "face index out of range");
                    de = 1;
                    df = -1;
                    dg = 1;
                    out.rs = add_edge_across_faces(out.rs, fs.faces[st.face1], st.corner1,
                                                   fs.faces[st.face2], st.corner2);
                    break;
                }
                case ScriptStep::Subdivide: {
                    require(st.face1 >= 0 && st.face1 < fs.f, "face index out of range");
                    int sides = fs.faces[st.face1].sides();
                    dv = 1;
                    de = sides;
                    df = sides - 1;
                    out.rs = subdivide_face(out.rs, fs.faces[st.face1], st.b);
                    break;
                }
                case ScriptStep::Split: {
                    require(st.face1 >= 0 && st.face1 < fs.f, "face index out of range");
                    const auto& hex = fs.faces[st.face1];
                    bool w_on_face = false;
                    for (int i = 0; i < hex.sides(); ++i)
                        w_on_face |= out.rs.label(corner_vertex(out.rs, hex, i)) == st.a;
                    require(w_on_face, "vertex '" + st.a + "' is not on the split face");
                    dv = 1;
                    de = 0;
                    df = 1;
                    dg = -1;
                    out.rs = split_vertex(out.rs, hex).rs;
                    break;
                }
            }
        } catch (const Error& err) {
            std::string state = "v=" + std::to_string(fs.v) + " e=" + std::to_string(fs.e) +
                                " f=" + std::to_string(fs.f) + " genus=" + std::to_string(fs.genus);
            fail("step " + std::to_string(k + 1) + " (" + st.str().substr(st.str().find_first_not_of(' ')) +
                 ") failed: " + err.what() + " [state before: " + state + "]");
        }
        auto now = trace_faces(out.rs);
        bool flip_like = st.op == ScriptStep::Flip;
        if (!flip_like) {
            require(now.v == fs.v + dv && now.e == fs.e + de && now.f == fs.f + df &&
                        now.genus == fs.genus + dg,
                    "step " + std::to_string(k + 1) + " audit failed: got (" +
                        std::to_string(now.v) + "," + std::to_string(now.e) + "," +
                        std::to_string(now.f) + "," + std::to_string(now.genus) + ")");
        } else {
            require(now.v == fs.v && now.e == fs.e && now.f == fs.f && now.genus == fs.genus,
                    "flip audit failed at step " + std::to_string(k + 1));
        }
        fs = now;
        out.audit.push_back({st.str(), fs.v, fs.e, fs.f, fs.genus});
    }
    return out;
}

}  // namespace prismatic
