#include <gtest/gtest.h>

#include <random>

#include "prismatic/rotation_system.hpp"
#include "test_support.hpp"

using namespace prismatic;
namespace ts = testsupport;

TEST(TokenOrder, NumericAware) {
    EXPECT_TRUE(token_less("2", "10"));
    EXPECT_TRUE(token_less("0", "0'"));
    EXPECT_TRUE(token_less("2'", "10'"));
    EXPECT_TRUE(token_less("18", "x"));
    EXPECT_TRUE(token_less("x", "x'"));
    EXPECT_FALSE(token_less("x", "18"));
}

TEST(Parse, SmallestCompleteRotationSystem) {
    auto rs = RotationSystem::parse("a: b c\nb: c a\nc: a b");
    EXPECT_EQ(rs.vertex_count(), 3);
    EXPECT_EQ(rs.edge_count(), 3);
    EXPECT_TRUE(rs.adjacent(rs.vertex("a"), rs.vertex("b")));
}

TEST(Parse, DuplicateVertexRejected) {
    EXPECT_THROW(
        {
            try {
                RotationSystem::parse("a: b\nb: a\na: b");
            } catch (const Error& e) {
                EXPECT_NE(std::string(e.what()).find("duplicate vertex"), std::string::npos);
                throw;
            }
        },
        Error);
}

TEST(Parse, DanglingEndRejected) {
    EXPECT_THROW(RotationSystem::parse("a: b b\nb: a"), Error);     // a lists b twice, one back-ref
    EXPECT_THROW(RotationSystem::parse("a: b c\nb: a\nc: a\nd:"), Error);  // d isolated -> disconnected
    EXPECT_THROW(RotationSystem::parse("a: q\nq missing colon"), Error);
}

TEST(Parse, CommentsAndBlankLines) {
    auto rs = RotationSystem::parse("# header\n\na: b c   # inline\nb: c a\nc: a b\n");
    EXPECT_EQ(rs.vertex_count(), 3);
}

TEST(Parse, ParallelEdgesAndLoops) {
    // Two vertices, two parallel edges; theta-like bigon structure.
    auto rs = RotationSystem::parse("a: b b#2\nb: a a#2\n");
    EXPECT_EQ(rs.edge_count(), 2);
    EXPECT_EQ(rs.degree(0), 2);

    // A loop at a plus one ordinary edge.
    auto loopy = RotationSystem::parse("a: a#1 a#1 b\nb: a\n");
    EXPECT_EQ(loopy.edge_count(), 2);
    EXPECT_EQ(loopy.degree(loopy.vertex("a")), 3);
}

TEST(Parse, LineNumberInErrors) {
    try {
        RotationSystem::parse("a: b\nnonsense");
        FAIL() << "expected parse error";
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
    }
}

TEST(Serialize, CanonicalVertexOrderAndRotationStart) {
    auto rs = RotationSystem::parse("b: c a\nc: a b\na: c b\n");
    std::string out = rs.serialize();
    EXPECT_EQ(out, "a: b c\nb: a c\nc: a b\n");  // sorted vertices, least-token rotation start
}

TEST(Serialize, RoundTripIsNormalization) {
    std::mt19937 rng(20240817);
    for (int iter = 0; iter < 300; ++iter) {
        auto rs = ts::random_rotation_system(rng);
        std::string canon = rs.serialize();
        auto reparsed = RotationSystem::parse(canon);
        EXPECT_EQ(reparsed.serialize(), canon);

        // Cosmetic perturbations (line shuffle, cyclic rotation of each line)
        // must not change the canonical form.
        std::vector<std::string> lines;
        std::istringstream in(canon);
        std::string line;
        while (std::getline(in, line)) lines.push_back(line);
        std::shuffle(lines.begin(), lines.end(), rng);
        std::string perturbed;
        for (auto& l : lines) {
            auto colon = l.find(':');
            std::istringstream ls(l.substr(colon + 1));
            std::vector<std::string> toks;
            std::string t;
            while (ls >> t) toks.push_back(t);
            if (!toks.empty())
                std::rotate(toks.begin(), toks.begin() + rng() % toks.size(), toks.end());
            perturbed += l.substr(0, colon + 1);
            for (auto& tok : toks) perturbed += " " + tok;
            perturbed += "\n";
        }
        EXPECT_EQ(RotationSystem::parse(perturbed).serialize(), canon);
    }
}

TEST(Build, RejectsDoublePlacement) {
    // Arc 0 placed twice.
    EXPECT_THROW(RotationSystem::build({"a", "b"}, {{0, 1}}, {{0, 0}, {1}}), Error);
    // Arc in the wrong rotation.
    EXPECT_THROW(RotationSystem::build({"a", "b"}, {{0, 1}}, {{1}, {0}}), Error);
    // Disconnected.
    EXPECT_THROW(RotationSystem::build({"a", "b", "c", "d"}, {{0, 1}, {2, 3}},
                                       {{0}, {1}, {2}, {3}}),
                 Error);
}

TEST(Arcs, SuccessorPredecessorInverse) {
    auto rs = ts::k7_torus();
    for (int a = 0; a < rs.arc_count(); ++a) {
        EXPECT_EQ(rs.predecessor(rs.successor(a)), a);
        EXPECT_EQ(opposite(opposite(a)), a);
        EXPECT_EQ(rs.tail(opposite(a)), rs.head(a));
    }
}
