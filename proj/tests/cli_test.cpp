#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <fstream>

#include "prismatic/surgery.hpp"
#include "test_support.hpp"

namespace {

struct CliResult {
    int exit_code;
    std::string out;
};

CliResult run_cli(const std::string& args) {
    std::string cmd = std::string(PRISMATIC_CLI_PATH) + " " + args + " 2>&1";
    std::array<char, 4096> buf;
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    EXPECT_NE(pipe, nullptr);
    while (fgets(buf.data(), buf.size(), pipe)) out += buf.data();
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

std::string tmp_path(const std::string& name) {
    return std::string(::testing::TempDir()) + name;
}

}  // namespace

TEST(Cli, FormulaReportsBoundGenusException) {
    auto res = run_cli("formula 9");
    EXPECT_EQ(res.exit_code, 0);
    EXPECT_NE(res.out.find("8"), std::string::npos);
    EXPECT_NE(res.out.find("7"), std::string::npos);
    EXPECT_NE(res.out.find("exceptional"), std::string::npos);

    auto json = run_cli("formula 21 --json");
    EXPECT_EQ(json.exit_code, 0);
    EXPECT_NE(json.out.find("\"genus\": 57"), std::string::npos);
    EXPECT_NE(json.out.find("\"exception\": false"), std::string::npos);

    EXPECT_EQ(run_cli("formula 1").exit_code, 1);
}

TEST(Cli, TraceAndDerive) {
    auto res = run_cli("trace " + testsupport::data_path("k3.emb"));
    EXPECT_EQ(res.exit_code, 0);
    EXPECT_NE(res.out.find("genus=0"), std::string::npos);

    auto faces = run_cli("trace " + testsupport::data_path("k3.emb") + " --faces");
    EXPECT_NE(faces.out.find("face: a b c"), std::string::npos);

    auto out_path = tmp_path("k22.emb");
    auto derived = run_cli("derive " + testsupport::data_path("fig2.log") + " --attach -o " + out_path);
    EXPECT_EQ(derived.exit_code, 0);
    EXPECT_NE(derived.out.find("genus=28"), std::string::npos);
    EXPECT_NE(derived.out.find("triangular"), std::string::npos);

    auto reread = run_cli("trace " + out_path);
    EXPECT_EQ(reread.exit_code, 0);
    EXPECT_NE(reread.out.find("v=22 e=228 f=152 genus=28"), std::string::npos);
}

TEST(Cli, CheckCurrentLogAndGraph) {
    EXPECT_EQ(run_cli("check-current " + testsupport::data_path("fig2.log")).exit_code, 0);
    EXPECT_EQ(run_cli("check-current " + testsupport::data_path("star7.cgr")).exit_code, 0);
    EXPECT_EQ(run_cli("check-current " + testsupport::data_path("theta3.cgr")).exit_code, 0);

    // A broken log fails A2 and exits 2.
    auto bad_path = tmp_path("bad.log");
    std::ofstream(bad_path) << "m=19 index=1\ncircuit 0: 15 4 11 5 14 6 16 18 1 17 10 13 8 12 2 3 9\n";
    auto res = run_cli("check-current " + bad_path);
    EXPECT_EQ(res.exit_code, 2);
    EXPECT_NE(res.out.find("A2: FAIL"), std::string::npos);
}

TEST(Cli, PrismSnugSliceRoundTrip) {
    auto prism_path = tmp_path("k3prism.emb");
    auto built = run_cli("prism " + testsupport::data_path("k3.emb") + " --cover 0 -o " + prism_path);
    EXPECT_EQ(built.exit_code, 0);
    EXPECT_NE(built.out.find("snug"), std::string::npos);

    EXPECT_EQ(run_cli("snug " + prism_path).exit_code, 0);

    auto side0 = tmp_path("side0.emb");
    auto cov0 = tmp_path("side0.cov");
    auto sliced = run_cli("slice " + prism_path + " --out0 " + side0 + " --cov0 " + cov0);
    EXPECT_EQ(sliced.exit_code, 0);

    // Rebuild from the sliced files through the CLI cover-file path.
    auto rebuilt = tmp_path("rebuilt.emb");
    auto again = run_cli("prism " + side0 + " --cover-file " + cov0 + " -o " + rebuilt);
    EXPECT_EQ(again.exit_code, 0);
    EXPECT_EQ(run_cli("snug " + rebuilt).exit_code, 0);
}

TEST(Cli, NonSnugExitsTwoWithWitness) {
    auto prism_path = tmp_path("k4prism.emb");
    EXPECT_EQ(run_cli("prism " + testsupport::data_path("k4.emb") + " --cover 0,1 -o " + prism_path)
                  .exit_code,
              0);
    auto res = run_cli("snug " + prism_path);
    EXPECT_EQ(res.exit_code, 2);
    EXPECT_NE(res.out.find("not snug"), std::string::npos);
}

TEST(Cli, SplitOnHexInstance) {
    // Build the octahedron-derived one-hexagon instance and split it via CLI.
    using namespace prismatic;
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
    int cu = -1, cv = -1;
    for (int i = 0; i < 3; ++i) {
        if (oct.label(corner_vertex(oct, fs.faces[fu], i)) == "u") cu = i;
        if (oct.label(corner_vertex(oct, fs.faces[fv], i)) == "v") cv = i;
    }
    auto bridged = add_edge_across_faces(oct, fs.faces[fu], cu, fs.faces[fv], cv);
    auto hexed = contract_edge(bridged, resolve_edge(bridged, "u", "v"));
    auto hex_path = tmp_path("hex.emb");
    std::ofstream(hex_path) << hexed.serialize();

    auto split_path = tmp_path("split.emb");
    auto res = run_cli("split " + hex_path + " -o " + split_path);
    EXPECT_EQ(res.exit_code, 0);
    EXPECT_NE(res.out.find("genus 1 -> 0"), std::string::npos);

    // A triangular embedding is not splittable: exit 2.
    EXPECT_EQ(run_cli("split " + testsupport::data_path("k3.emb")).exit_code, 2);
}

TEST(Cli, TransformAuditsScript) {
    auto script_path = tmp_path("script.tsf");
    std::ofstream(script_path) << "subdivide 0 z\naddhandle 0 0 1 0\n";
    auto res = run_cli("transform " + testsupport::data_path("k3.emb") + " " + script_path);
    EXPECT_EQ(res.exit_code, 0);
    EXPECT_NE(res.out.find("genus=1"), std::string::npos);

    std::ofstream(script_path) << "flip a b\n";
    EXPECT_EQ(run_cli("transform " + testsupport::data_path("k3.emb") + " " + script_path).exit_code,
              1);
}

TEST(Cli, SplitCompletePrismPipeline) {
    // data/khat9.emb is a searched triangular split-complete embedding; the
    // Cor.-10 route gives a snug K8 x K2 of genus 5 = formula(8).
    auto prism_path = tmp_path("k8prism.emb");
    auto res = run_cli("prism " + testsupport::data_path("khat9.emb") + " --split-complete -o " +
                       prism_path);
    EXPECT_EQ(res.exit_code, 0);
    EXPECT_NE(res.out.find("genus 5 = 2*2 + 2 - 1"), std::string::npos);
    EXPECT_NE(res.out.find("snug"), std::string::npos);
    EXPECT_EQ(run_cli("snug " + prism_path).exit_code, 0);
}

TEST(Cli, CompleteC9Exhausts) {
    auto k10_path = tmp_path("k10.emb");
    auto derived = run_cli("derive " + testsupport::data_path("star7.log") + " --attach -o " + k10_path);
    EXPECT_EQ(derived.exit_code, 0);
    auto res = run_cli("complete-c9 " + k10_path + " --budget 50");
    EXPECT_EQ(res.exit_code, 2);
    EXPECT_NE(res.out.find("exhausted"), std::string::npos);
}

TEST(Cli, SearchFindingsAndExitCodes) {
    auto prefix = tmp_path("finding_");
    auto res = run_cli("search --n 4 --genus 0 --shapes cover:3,3 --budget 100000 --out-prefix " +
                       prefix);
    EXPECT_EQ(res.exit_code, 0);
    EXPECT_NE(res.out.find("complete"), std::string::npos);
    std::ifstream emb(prefix + "0.emb");
    EXPECT_TRUE(bool(emb));

    EXPECT_EQ(run_cli("search --n 5 --genus 1 --budget 0").exit_code, 2);
}

TEST(Cli, ReportsAreByteIdentical) {
    auto a = run_cli("derive " + testsupport::data_path("fig2.log") + " --attach --json");
    auto b = run_cli("derive " + testsupport::data_path("fig2.log") + " --attach --json");
    EXPECT_EQ(a.exit_code, 0);
    EXPECT_EQ(a.out, b.out);
}

TEST(Cli, InputErrorsExitOne) {
    EXPECT_EQ(run_cli("trace /nonexistent/file.emb").exit_code, 1);
    EXPECT_NE(run_cli("frobnicate").exit_code, 0);
}
