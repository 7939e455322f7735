#include <gtest/gtest.h>

#include <random>
#include <set>

#include "prismatic/current_graph.hpp"
#include "prismatic/prism.hpp"
#include "test_support.hpp"

using namespace prismatic;
namespace ts = testsupport;

namespace {

RotationSystem k22_minus_k3() {
    auto log = parse_log(ts::kFig2Log);
    return attach_vortices(derive(log), log).rs;
}

FacialCover single_face_cover(int f) { return FacialCover{{f}}; }

FacialCover first_triple_cover(const RotationSystem& rs, const FaceSet& fs) {
    for (int a = 0; a < fs.f; ++a)
        for (int b = a + 1; b < fs.f; ++b)
            for (int c = b + 1; c < fs.f; ++c)
                if (is_facial_cover(rs, fs, FacialCover{{a, b, c}})) return FacialCover{{a, b, c}};
    return {};
}

}  // namespace

TEST(GenusFormula, SpecValues) {
    EXPECT_EQ(prism_lower_bound(5), 1);
    EXPECT_EQ(prism_genus_formula(5), 2);
    EXPECT_EQ(prism_lower_bound(9), 7);
    EXPECT_EQ(prism_genus_formula(9), 8);
    EXPECT_EQ(prism_genus_formula(2), 0);
    EXPECT_EQ(prism_genus_formula(3), 0);
    EXPECT_EQ(prism_genus_formula(4), 1);
    EXPECT_EQ(prism_genus_formula(21), 57);  // 19*18/6, no ceiling needed
    EXPECT_EQ(prism_genus_formula(8), 5);
    EXPECT_THROW(prism_genus_formula(1), Error);
}

TEST(Covers, K3SingleFaceIsPatchwork) {
    auto rs = ts::k3();
    auto fs = trace_faces(rs);
    auto rep = check_cover(rs, fs, single_face_cover(0));
    EXPECT_TRUE(rep.is_cover);
    EXPECT_TRUE(rep.is_patchwork);
}

TEST(Covers, K7TriangleTriplesCoverButNeverPatchwork) {
    auto rs = ts::k7_torus();
    auto fs = trace_faces(rs);
    int covers = 0, patchworks = 0;
    for (int a = 0; a < fs.f; ++a)
        for (int b = a + 1; b < fs.f; ++b)
            for (int c = b + 1; c < fs.f; ++c) {
                auto rep = check_cover(rs, fs, FacialCover{{a, b, c}});
                covers += rep.is_cover;
                patchworks += rep.is_patchwork;
            }
    EXPECT_GT(covers, 0);      // triples covering all 7 vertices exist
    EXPECT_EQ(patchworks, 0);  // 9 incidences over 7 vertices force a repeat
}

TEST(Covers, PatchworkForcesExactIncidenceArithmetic) {
    // Pigeonhole: a patchwork's cover faces carry exactly n corners in total,
    // so cover side-sums exceeding n (e.g. three quads over K9) always fail.
    std::mt19937 rng(19);
    for (int iter = 0; iter < 200; ++iter) {
        auto rs = ts::random_rotation_system(rng);
        auto fs = trace_faces(rs);
        std::vector<int> subset;
        for (int f = 0; f < fs.f; ++f)
            if (rng() % 2) subset.push_back(f);
        if (subset.empty()) continue;
        int sides = 0;
        for (int f : subset) sides += fs.faces[f].sides();
        auto rep = check_cover(rs, fs, FacialCover{subset});
        if (rep.is_patchwork) EXPECT_EQ(sides, rs.vertex_count());
        if (sides != rs.vertex_count()) EXPECT_FALSE(rep.is_patchwork);
    }
}

TEST(Covers, UncoveredWitness) {
    auto rs = ts::k4_planar();
    auto fs = trace_faces(rs);
    auto rep = check_cover(rs, fs, single_face_cover(0));
    EXPECT_FALSE(rep.is_cover);
    EXPECT_NE(rep.witness.find("not covered"), std::string::npos);
}

TEST(BuildPrism, K3SphereSingleFace) {
    auto rs = ts::k3();
    auto fs = trace_faces(rs);
    auto prism = build_prism(rs, fs, single_face_cover(0));
    EXPECT_EQ(prism.vertex_count(), 6);
    EXPECT_EQ(prism.edge_count(), 9);
    auto pf = trace_faces(prism);
    EXPECT_EQ(pf.genus, 0);  // 2*0 + 1 - 1
    EXPECT_EQ(pf.f, 5);
    auto hist = pf.length_histogram();
    EXPECT_EQ(hist[3], 2);
    EXPECT_EQ(hist[4], 3);
}

TEST(BuildPrism, K4OverlappingCoverGivesGenusOne) {
    auto rs = ts::k4_planar();
    auto fs = trace_faces(rs);
    auto prism = build_prism(rs, fs, FacialCover{{0, 1}});
    auto pf = trace_faces(prism);
    EXPECT_EQ(pf.genus, 1);  // 2*0 + 2 - 1
    auto rep = check_snug(prism);
    EXPECT_FALSE(rep.snug);
    EXPECT_FALSE(rep.witness.empty());
    // The overlap vertex kept its matching edge on the first tube, leaving a
    // larger, non-quadrilateral face along the other.
    bool has_big_matching_face = false;
    for (int f : rep.matching_face_indices)
        has_big_matching_face |= rep.faces.faces[f].sides() > 4;
    EXPECT_TRUE(has_big_matching_face);
}

TEST(BuildPrism, K7TorusThreeTriangleCover) {
    auto rs = ts::k7_torus();
    auto fs = trace_faces(rs);
    auto cover = first_triple_cover(rs, fs);
    ASSERT_EQ(cover.size(), 3);
    auto pf = trace_faces(build_prism(rs, fs, cover));
    EXPECT_EQ(pf.genus, 4);                                    // 2*1 + 3 - 1
    EXPECT_EQ(pf.genus, 2 * (((7 - 2) * (7 - 3) + 11) / 12));  // Cor. 4: 2*ceil(20/12)
}

TEST(BuildPrism, K19WithHamiltonianFaceCover) {
    auto rs = k22_minus_k3();
    for (auto s : {"x", "y", "z"}) rs = delete_vertex(rs, s);
    EXPECT_EQ(rs.vertex_count(), 19);
    auto fs = trace_faces(rs);
    EXPECT_EQ(fs.genus, 28);
    int ham = -1, count19 = 0;
    for (int f = 0; f < fs.f; ++f)
        if (fs.faces[f].sides() == 19) {
            ham = f;
            ++count19;
            EXPECT_TRUE(face_is_simple(rs, fs.faces[f]));  // incident with all 19 vertices
        }
    EXPECT_EQ(count19, 3);
    ASSERT_GE(ham, 0);
    auto prism = build_prism(rs, fs, single_face_cover(ham));
    EXPECT_EQ(trace_faces(prism).genus, 56);  // 2*28 + 1 - 1
}

TEST(BuildPrism, MatchingEdgeInvariants) {
    for (int which = 0; which < 2; ++which) {
        RotationSystem rs = which == 0 ? ts::k3() : ts::k7_torus();
        auto fs = trace_faces(rs);
        FacialCover cover = which == 0 ? single_face_cover(0) : first_triple_cover(rs, fs);
        ASSERT_GT(cover.size(), 0);
        auto rep = check_snug(build_prism(rs, fs, cover));
        EXPECT_EQ((int)rep.matching_edges.size(), rs.vertex_count());
        std::set<int> matching(rep.matching_edges.begin(), rep.matching_edges.end());
        for (int f : rep.matching_face_indices) {
            const auto& fw = rep.faces.faces[f];
            int k = fw.sides();
            std::vector<bool> is_matching(k);
            int count = 0;
            for (int i = 0; i < k; ++i) {
                is_matching[i] = matching.count(arc_edge(fw.arcs[i])) != 0;
                count += is_matching[i];
            }
            EXPECT_GE(count, 2);
            for (int i = 0; i < k; ++i)
                if (is_matching[i]) EXPECT_FALSE(is_matching[(i + 1) % k]);  // nonconsecutive
        }
    }
}

TEST(BuildPrism, ErrorsOnBadCovers) {
    auto rs = ts::k4_planar();
    auto fs = trace_faces(rs);
    EXPECT_THROW(build_prism(rs, fs, FacialCover{{7}}), Error);  // index out of range
    EXPECT_THROW(build_prism(rs, fs, FacialCover{{0}}), Error);  // vertex uncovered
    // Degenerate: some face carries no matching edge once every vertex is matched.
    auto k7 = ts::k7_torus();
    auto f7 = trace_faces(k7);
    std::vector<int> all;
    for (int f = 0; f < f7.f; ++f) all.push_back(f);
    EXPECT_THROW(build_prism(k7, f7, FacialCover{all}), Error);
    // Not a complete graph.
    auto path = RotationSystem::parse("a: b\nb: a c\nc: b\n");
    EXPECT_THROW(build_prism(path, trace_faces(path), single_face_cover(0)), Error);
}

TEST(CheckSnug, K3PrismIsSnug) {
    auto rs = ts::k3();
    auto fs = trace_faces(rs);
    auto rep = check_snug(build_prism(rs, fs, single_face_cover(0)));
    EXPECT_TRUE(rep.snug);
    EXPECT_EQ(rep.n, 3);
    EXPECT_EQ(rep.genus, 0);
    EXPECT_EQ(rep.face_count, (2 * 9 - 3) / 3);
}

TEST(CheckSnug, RejectsNonPrism) {
    EXPECT_THROW(check_snug(ts::k4_planar()), Error);
    EXPECT_THROW(check_snug(ts::k7_torus()), Error);
}

TEST(CheckSnug, K2PrismFourCycle) {
    auto rs = RotationSystem::parse("a: b d\nb: c a\nc: d b\nd: a c\n");
    auto rep = check_snug(rs);
    EXPECT_EQ(rep.n, 2);
    EXPECT_TRUE(rep.snug);
    EXPECT_EQ(rep.genus, 0);
    EXPECT_EQ(rep.face_count, 2);
}

TEST(Slice, K3RoundTrip) {
    auto rs = ts::k3();
    auto fs = trace_faces(rs);
    auto prism = build_prism(rs, fs, single_face_cover(0));
    auto sliced = slice(prism);
    EXPECT_EQ(sliced.side[0].serialize(), rs.serialize());
    EXPECT_EQ(sliced.patchwork[0].size(), 1);
    EXPECT_EQ(sliced.patchwork[1].size(), 1);
    auto rebuilt = build_prism(sliced.side[0], sliced.faces[0], sliced.patchwork[0]);
    EXPECT_EQ(trace_faces(rebuilt).genus, trace_faces(prism).genus);
}

TEST(Slice, RefusesNonSnug) {
    auto rs = ts::k4_planar();
    auto fs = trace_faces(rs);
    EXPECT_THROW(slice(build_prism(rs, fs, FacialCover{{0, 1}})), Error);
}

TEST(SplitComplete, RecognizesConstructedInstance) {
    // K5 on {1..5} plus u ~ {1,2} and v ~ {3,4,5}; rotations are arbitrary,
    // split-completeness is a graph property.
    std::vector<std::pair<std::string, std::vector<std::string>>> rows = {
        {"1", {"2", "3", "4", "5", "u"}}, {"2", {"1", "3", "4", "5", "u"}},
        {"3", {"1", "2", "4", "5", "v"}}, {"4", {"1", "2", "3", "5", "v"}},
        {"5", {"1", "2", "3", "4", "v"}}, {"u", {"1", "2"}},
        {"v", {"3", "4", "5"}}};
    auto rep = split_complete_check(RotationSystem::from_neighbor_lists(rows));
    EXPECT_TRUE(rep.ok);
    EXPECT_EQ(rep.u, "u");
    EXPECT_EQ(rep.v, "v");
}

TEST(SplitComplete, K22MinusK3IsNot) {
    EXPECT_FALSE(split_complete_check(k22_minus_k3()).ok);  // three specials, not two
}

TEST(SplitComplete, OctahedronIsNot) {
    auto rs = RotationSystem::parse(
        "u: 1 4 3 2\nv: 1 2 3 4\n1: u 2 v 4\n2: u 3 v 1\n3: u 4 v 2\n4: u 1 v 3\n");
    EXPECT_FALSE(split_complete_check(rs).ok);  // N(u) and N(v) overlap
}

TEST(DeleteUv, ErrorPaths) {
    EXPECT_THROW(delete_uv(k22_minus_k3()), Error);  // triangular but not split-complete
    std::vector<std::pair<std::string, std::vector<std::string>>> rows = {
        {"1", {"2", "3", "4", "5", "u"}}, {"2", {"1", "3", "4", "5", "u"}},
        {"3", {"1", "2", "4", "5", "v"}}, {"4", {"1", "2", "3", "5", "v"}},
        {"5", {"1", "2", "3", "4", "v"}}, {"u", {"1", "2"}},
        {"v", {"3", "4", "5"}}};
    // Split-complete but not embedded triangularly.
    EXPECT_THROW(delete_uv(RotationSystem::from_neighbor_lists(rows)), Error);
}
