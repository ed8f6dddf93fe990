#include <gtest/gtest.h>

#include "json.hpp"

#include "fixtures.hpp"
#include "infoaccess/cli.hpp"

using infoaccess::run_cli;
namespace fs = std::filesystem;

namespace {

fs::path write_graph(const fs::path& dir, const std::string& name, const std::string& text) {
    const fs::path p = dir / name;
    fixtures::write_file(p, text);
    return p;
}

nlohmann::json read_json(const fs::path& p) { return nlohmann::json::parse(fixtures::read_file(p)); }

const char* kPath5 = "0 1\n1 2\n2 3\n3 4\n";

}  // namespace

TEST(Cli, OracleTriangle) {
    const auto dir = fixtures::scratch_dir("cli_oracle");
    const auto in = write_graph(dir, "tri.txt", "0 1\n1 2\n0 2\n");
    ASSERT_EQ(run_cli({"oracle", "--input", in.string(), "--alpha", "0.5", "--output-dir",
                       (dir / "out").string()}),
              0);
    EXPECT_EQ(fixtures::read_file(dir / "out" / "access.csv"),
              "i,j,p\n0,1,0.625000\n0,2,0.625000\n1,2,0.625000\n");
    EXPECT_TRUE(fs::exists(dir / "out" / "manifest.json"));
}

TEST(Cli, OddBudgetForPairStrategyIsAConfigError) {
    const auto dir = fixtures::scratch_dir("cli_odd");
    const auto in = write_graph(dir, "p.txt", kPath5);
    testing::internal::CaptureStderr();
    const int code = run_cli({"augment", "--input", in.string(), "--alpha", "0.4", "--k", "3",
                              "--heuristic", "bc-both", "--output-dir", dir.string()});
    const std::string err = testing::internal::GetCapturedStderr();
    EXPECT_EQ(code, 2);
    EXPECT_NE(err.find("--k"), std::string::npos);
    EXPECT_NE(err.find("even"), std::string::npos);
}

TEST(Cli, ValidationNamesTheField) {
    const auto dir = fixtures::scratch_dir("cli_validate");
    const auto in = write_graph(dir, "p.txt", kPath5);
    testing::internal::CaptureStderr();
    EXPECT_EQ(run_cli({"estimate", "--input", in.string(), "--alpha", "1.5", "--output-dir",
                       dir.string()}),
              2);
    EXPECT_NE(testing::internal::GetCapturedStderr().find("--alpha"), std::string::npos);
    testing::internal::CaptureStderr();
    EXPECT_EQ(run_cli({"augment", "--input", in.string(), "--alpha", "0.4", "--heuristic", "best",
                       "--output-dir", dir.string()}),
              2);
    EXPECT_NE(testing::internal::GetCapturedStderr().find("--heuristic"), std::string::npos);
    testing::internal::CaptureStderr();
    EXPECT_EQ(run_cli({"estimate", "--alpha", "0.4", "--output-dir", dir.string()}), 2);
    EXPECT_NE(testing::internal::GetCapturedStderr().find("--input"), std::string::npos);
}

TEST(Cli, RuntimeErrorsExitOne) {
    const auto dir = fixtures::scratch_dir("cli_runtime");
    testing::internal::CaptureStderr();
    EXPECT_EQ(run_cli({"estimate", "--input", (dir / "missing.txt").string(), "--alpha", "0.4",
                       "--output-dir", dir.string()}),
              1);
    const auto big = write_graph(dir, "k7.txt",
                                 "0 1\n0 2\n0 3\n0 4\n0 5\n0 6\n1 2\n1 3\n1 4\n1 5\n1 6\n2 3\n2 4\n"
                                 "2 5\n2 6\n3 4\n3 5\n3 6\n4 5\n4 6\n5 6\n");
    EXPECT_EQ(run_cli({"oracle", "--input", big.string(), "--alpha", "0.4", "--output-dir",
                       dir.string()}),
              1);
    testing::internal::GetCapturedStderr();
}

TEST(Cli, AugmentWritesLayoutAndManifest) {
    const auto dir = fixtures::scratch_dir("cli_augment");
    const auto in = write_graph(dir, "p.txt", kPath5);
    const auto out = dir / "run";
    ASSERT_EQ(run_cli({"augment", "--input", in.string(), "--alpha", "0.4", "--k", "4",
                       "--heuristic", "bc-chord", "--samples", "500", "--seed", "7",
                       "--eval-every", "3", "--output-dir", out.string()}),
              0);
    for (const char* f : {"manifest.json", "trace.csv", "augmented.edges", "metrics_k0.json",
                          "metrics_k3.json", "metrics_k4.json"}) {
        EXPECT_TRUE(fs::exists(out / f)) << f;
    }
    const auto manifest = read_json(out / "manifest.json");
    EXPECT_EQ(manifest.at("config").at("heuristic"), "bc-chord");
    EXPECT_EQ(manifest.at("config").at("k"), 4);
    EXPECT_EQ(manifest.at("config").at("seed"), 7);
    EXPECT_EQ(manifest.at("input").at("sha256").get<std::string>().size(), 64u);
    EXPECT_EQ(manifest.at("version"), infoaccess::kToolVersion);
    const auto m4 = read_json(out / "metrics_k4.json");
    EXPECT_EQ(m4.at("edges"), 8);
}

TEST(Cli, ManifestHashTracksInputBytes) {
    const auto dir = fixtures::scratch_dir("cli_hash");
    const auto a = write_graph(dir, "a.txt", kPath5);
    const auto b = write_graph(dir, "b.txt", std::string(kPath5) + "# trailing comment\n");
    ASSERT_EQ(run_cli({"estimate", "-i", a.string(), "-a", "0.4", "-R", "50", "-o",
                       (dir / "a").string()}),
              0);
    ASSERT_EQ(run_cli({"estimate", "-i", a.string(), "-a", "0.4", "-R", "50", "-o",
                       (dir / "a2").string()}),
              0);
    ASSERT_EQ(run_cli({"estimate", "-i", b.string(), "-a", "0.4", "-R", "50", "-o",
                       (dir / "b").string()}),
              0);
    auto hash = [&](const char* sub) {
        return read_json(dir / sub / "manifest.json").at("input").at("sha256").get<std::string>();
    };
    EXPECT_EQ(hash("a"), hash("a2"));
    EXPECT_NE(hash("a"), hash("b"));
    EXPECT_EQ(fixtures::read_file(dir / "a" / "access.csv"),
              fixtures::read_file(dir / "b" / "access.csv"));
}

TEST(Cli, AlphaListMakesOneDirectoryPerValue) {
    const auto dir = fixtures::scratch_dir("cli_alphas");
    const auto in = write_graph(dir, "p.txt", kPath5);
    ASSERT_EQ(run_cli({"estimate", "-i", in.string(), "--alpha", "0.2,0.6", "-R", "40", "-o",
                       dir.string()}),
              0);
    EXPECT_TRUE(fs::exists(dir / "alpha_0.2" / "access.csv"));
    EXPECT_TRUE(fs::exists(dir / "alpha_0.6" / "advantage.csv"));
}

TEST(Cli, EvaluateFromStoredEstimateMatchesGraph) {
    const auto dir = fixtures::scratch_dir("cli_eval");
    const auto in = write_graph(dir, "p.txt", kPath5);
    ASSERT_EQ(run_cli({"estimate", "-i", in.string(), "-a", "0.4", "-R", "300", "-o",
                       (dir / "est").string(), "--binary"}),
              0);
    ASSERT_EQ(run_cli({"evaluate", "--estimate", (dir / "est" / "access.bin").string(), "-o",
                       (dir / "from_bin").string()}),
              0);
    ASSERT_EQ(run_cli({"evaluate", "-i", in.string(), "-a", "0.4", "-R", "300", "-o",
                       (dir / "from_graph").string()}),
              0);
    const auto a = read_json(dir / "from_bin" / "metrics_k0.json");
    const auto b = read_json(dir / "from_graph" / "metrics_k0.json");
    EXPECT_EQ(a.at("welfare"), b.at("welfare"));
    EXPECT_EQ(a.at("gaps"), b.at("gaps"));
}

TEST(Cli, EvaluateCompareWritesDeltas) {
    const auto dir = fixtures::scratch_dir("cli_compare");
    const auto in = write_graph(dir, "p.txt", kPath5);
    ASSERT_EQ(run_cli({"augment", "-i", in.string(), "-a", "0.4", "-R", "300", "--k", "2",
                       "--heuristic", "diam-both", "-o", (dir / "run").string()}),
              0);
    ASSERT_EQ(run_cli({"evaluate", "--before", (dir / "run" / "metrics_k0.json").string(),
                       "--after", (dir / "run" / "metrics_k2.json").string(), "-o",
                       (dir / "cmp").string()}),
              0);
    const auto cmp = read_json(dir / "cmp" / "comparison.json");
    EXPECT_GE(cmp.at("deltas").at("welfare").at("change").get<double>(), 0.0);
}

TEST(Cli, ConfigFileIsOverriddenByFlags) {
    const auto dir = fixtures::scratch_dir("cli_config");
    const auto in = write_graph(dir, "p.txt", kPath5);
    const auto conf = dir / "run.toml";
    fixtures::write_file(conf, "[augment]\nalpha = 0.3\nk = 2\nheuristic = \"rand\"\nsamples = 64\n");
    ASSERT_EQ(run_cli({"--config", conf.string(), "augment", "-i", in.string(), "--k", "4", "-o",
                       dir.string()}),
              0);
    const auto manifest = read_json(dir / "manifest.json");
    EXPECT_EQ(manifest.at("config").at("k"), 4);
    EXPECT_EQ(manifest.at("config").at("heuristic"), "rand");
    EXPECT_EQ(manifest.at("config").at("samples"), 64);
}

TEST(Cli, StabilityAndControl) {
    const auto dir = fixtures::scratch_dir("cli_stab");
    const auto in = write_graph(dir, "p.txt", "0 1\n1 2\n");
    ASSERT_EQ(run_cli({"stability", "-i", in.string(), "-a", "0.5", "-R", "100", "--reps", "3",
                       "-o", (dir / "s").string()}),
              0);
    EXPECT_TRUE(read_json(dir / "s" / "stability.json").contains("max_deviation"));
    testing::internal::CaptureStderr();
    ASSERT_EQ(run_cli({"control", "-i", in.string(), "-a", "0.5", "-R", "2000", "-o",
                       (dir / "c").string(), "--nodes", "1"}),
              0);
    EXPECT_NE(testing::internal::GetCapturedStderr().find("warning"), std::string::npos);
    const std::string csv = fixtures::read_file(dir / "c" / "advantage.csv");
    EXPECT_NE(csv.find("\n1,"), std::string::npos);
    EXPECT_NE(csv.find(",1.000000\n"), std::string::npos);
}
