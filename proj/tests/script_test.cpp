#include <gtest/gtest.h>

#include <map>

#include "prismatic/script.hpp"
#include "test_support.hpp"

using namespace prismatic;
namespace ts = testsupport;

TEST(ParseScript, RoundTrip) {
    std::string text =
        "flip a b\n"
        "addface 3 0 2\n"
        "addhandle 1 0 2 1\n"
        "del a b#2\n"
        "subdivide 0 z\n"
        "split w 4\n"
        "contract a b\n";
    auto script = parse_script(text);
    ASSERT_EQ(script.steps.size(), 7u);
    EXPECT_EQ(print_script(script), text);
    EXPECT_EQ(script.steps[3].copy, 2);
    EXPECT_EQ(script.steps[5].a, "w");
    EXPECT_THROW(parse_script("warp a b\n"), Error);
    EXPECT_THROW(parse_script("addface 1 2\n"), Error);
}

TEST(RunScript, EmptyIsIdentity) {
    auto rs = ts::k4_planar();
    auto out = run_script(rs, {});
    EXPECT_EQ(out.rs.serialize(), rs.serialize());
    ASSERT_EQ(out.audit.size(), 1u);
    EXPECT_EQ(out.audit[0].genus, 0);
}

TEST(RunScript, FlipTwiceIsIdentity) {
    auto rs = ts::k4_planar();
    // flip (a,b) creates (c,d)#2; flipping that back restores the embedding.
    auto out = run_script(rs, parse_script("flip a b\nflip c d#2\n"));
    EXPECT_EQ(out.rs.serialize(), rs.serialize());
    ASSERT_EQ(out.audit.size(), 3u);
    for (auto& row : out.audit) {
        EXPECT_EQ(row.genus, 0);
        EXPECT_EQ(row.f, 4);
    }
}

TEST(RunScript, AuditTracksDeltas) {
    auto rs = ts::k3();
    auto out = run_script(rs, parse_script("subdivide 0 z\naddhandle 0 0 1 0\n"));
    ASSERT_EQ(out.audit.size(), 3u);
    EXPECT_EQ(out.audit[0].v, 3);
    EXPECT_EQ(out.audit[1].v, 4);
    EXPECT_EQ(out.audit[1].genus, 0);
    EXPECT_EQ(out.audit[1].f, 4);
    EXPECT_EQ(out.audit[2].genus, 1);
    EXPECT_EQ(out.audit[2].f, 3);
}

TEST(RunScript, SplitStepWorks) {
    // Build the one-hexagon instance from the octahedron, then split via script.
    auto oct = RotationSystem::parse(
        "u: 1 4 3 2\nv: 1 2 3 4\n1: u 2 v 4\n2: u 3 v 1\n3: u 4 v 2\n4: u 1 v 3\n");
    auto fs = trace_faces(oct);
    int fu = -1, fv = -1;
    for (int i = 0; i < fs.f && fu < 0; ++i) {
        auto ti = face_tokens(oct, fs.faces[i]);
        if (!std::count(ti.begin(), ti.end(), "u")) continue;
        for (int j = 0; j < fs.f; ++j) {
            auto tj = face_tokens(oct, fs.faces[j]);
            if (!std::count(tj.begin(), tj.end(), "v")) continue;
            bool disjoint = true;
            for (auto& t : ti)
                if (t != "u" && std::count(tj.begin(), tj.end(), t)) disjoint = false;
            if (disjoint) {
                fu = i;
                fv = j;
                break;
            }
        }
    }
    ASSERT_GE(fv, 0);
    int cu = -1, cv = -1;
    for (int i = 0; i < 3; ++i) {
        if (oct.label(corner_vertex(oct, fs.faces[fu], i)) == "u") cu = i;
        if (oct.label(corner_vertex(oct, fs.faces[fv], i)) == "v") cv = i;
    }
    std::string text = "addhandle " + std::to_string(fu) + " " + std::to_string(cu) + " " +
                       std::to_string(fv) + " " + std::to_string(cv) + "\ncontract u v\n";
    auto out = run_script(oct, parse_script(text));
    auto fh = trace_faces(out.rs);
    ASSERT_EQ(fh.faces.back().sides(), 6);
    int hex_index = fh.f - 1;
    std::map<std::string, int> counts;
    for (auto& t : face_tokens(out.rs, fh.faces.back())) ++counts[t];
    std::string w;
    for (auto& [t, c] : counts)
        if (c == 2) w = t;
    ASSERT_FALSE(w.empty());
    auto split_out =
        run_script(out.rs, parse_script("split " + w + " " + std::to_string(hex_index) + "\n"));
    EXPECT_TRUE(trace_faces(split_out.rs).all_triangular());
    EXPECT_EQ(split_out.audit.back().genus, 0);
}

TEST(RunScript, FirstFailingStepReported) {
    auto rs = ts::k3();
    try {
        run_script(rs, parse_script("flip a b\n"));  // K3's edges are not flippable
        FAIL();
    } catch (const Error& e) {
        std::string msg = e.what();
        EXPECT_NE(msg.find("step 1"), std::string::npos);
        EXPECT_NE(msg.find("state before"), std::string::npos);
    }
}

TEST(RunScript, BadFaceIndexReported) {
    auto rs = ts::k3();
    EXPECT_THROW(run_script(rs, parse_script("subdivide 9 z\n")), Error);
}
