#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "qmlbench/config.hpp"
#include "qmlbench/pipeline.hpp"

using namespace qmlbench;
namespace fs = std::filesystem;

namespace {

const std::string kCli = QMLBENCH_CLI_PATH;

int run_cli(const std::string& args) {
    const std::string cmd = kCli + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name)
        : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string str() const { return path.string(); }
};

}  // namespace

TEST_CASE("cli exit codes") {
    TempDir dir("qmlb_cli_exit");
    SECTION("success is 0") {
        REQUIRE(run_cli("prepare --synthetic --n-per-class 10 --seed 1 --out " +
                        dir.str()) == 0);
    }
    SECTION("a missing csv path exits 2") {
        REQUIRE(run_cli("prepare --data /no/such/file.csv --out " + dir.str()) ==
                2);
    }
    SECTION("an unknown feature map exits 2") {
        REQUIRE(run_cli("train --featuremap bogus --out " + dir.str()) == 2);
    }
    SECTION("an unknown model exits 2") {
        REQUIRE(run_cli("train --model forest --out " + dir.str()) == 2);
    }
    SECTION("an unknown flag exits 2") {
        REQUIRE(run_cli("prepare --frobnicate") == 2);
    }
    SECTION("training without a prepared dataset exits 2") {
        REQUIRE(run_cli("train --model qsvc --out " + dir.str() +
                        "/never_prepared") == 2);
    }
    SECTION("no subcommand exits 2, help exits 0") {
        REQUIRE(run_cli("") == 2);
        REQUIRE(run_cli("--help") == 0);
    }
}

TEST_CASE("cli artifacts") {
    TempDir dir("qmlb_cli_artifacts");
    const std::string common =
        " --synthetic --n-per-class 12 --seed 5 --out " + dir.str();
    REQUIRE(run_cli("prepare" + common) == 0);

    SECTION("prepare writes the four dataset artifacts") {
        for (const std::string name :
             {"encoded.csv", "split.csv", "pca.json", "correlation.csv"}) {
            REQUIRE(fs::exists(dir.path / name));
        }
    }
    SECTION("variational training writes a bounded loss curve") {
        REQUIRE(run_cli("train --model vqc --featuremap z --maxiter 15" +
                        common) == 0);
        REQUIRE(fs::exists(dir.path / "model.json"));
        REQUIRE(fs::exists(dir.path / "report.json"));
        const std::string body =
            read_text_file((dir.path / "loss.csv").string());
        std::size_t lines = 0;
        for (char c : body) lines += c == '\n' ? 1 : 0;
        REQUIRE(lines >= 2);
        REQUIRE(lines <= 16);  // header + at most maxiter rows
    }
    SECTION("qsvc training emits no loss curve") {
        REQUIRE(run_cli("train --model qsvc --featuremap z" + common) == 0);
        REQUIRE(fs::exists(dir.path / "model.json"));
        REQUIRE_FALSE(fs::exists(dir.path / "loss.csv"));
    }
    SECTION("benchmark writes the table and per-cell artifacts") {
        REQUIRE(run_cli("benchmark --maxiter 10" + common) == 0);
        REQUIRE(fs::exists(dir.path / "benchmark.txt"));
        REQUIRE(fs::exists(dir.path / "benchmark.json"));
        REQUIRE(fs::exists(dir.path / "qsvc_z_report.json"));
        REQUIRE(fs::exists(dir.path / "vqc_zz_loss.csv"));
        REQUIRE_FALSE(fs::exists(dir.path / "qsvc_z_loss.csv"));
        const json j = read_json_file((dir.path / "benchmark.json").string());
        REQUIRE(j.at("cells").size() == 12);
    }
    SECTION("kernel dumps a square Gram CSV over all rows") {
        REQUIRE(run_cli("kernel --featuremap z --seed 5 --out " + dir.str()) ==
                0);
        const KernelMatrix gram =
            read_kernel_csv((dir.path / "kernel.csv").string());
        REQUIRE(gram.n == 24);
        for (std::size_t i = 0; i < gram.n; ++i) {
            REQUIRE(gram.at(i, i) == Catch::Approx(1.0).margin(1e-9));
        }
    }
}

TEST_CASE("config file and flag precedence") {
    TempDir dir("qmlb_cli_config");
    RunConfig file_config;
    file_config.source = "synthetic";
    file_config.n_per_class = 9;
    file_config.seed = 42;
    file_config.out_dir = dir.str() + "/from_file";
    const std::string cfg_path = (dir.path / "run.json").string();
    save_config(cfg_path, file_config);

    SECTION("the config file supplies values") {
        REQUIRE(run_cli("prepare --config " + cfg_path) == 0);
        const PreparedTable t = load_prepared(dir.str() + "/from_file");
        REQUIRE(t.x_all.size() == 18);
    }
    SECTION("flags override the file") {
        REQUIRE(run_cli("prepare --config " + cfg_path +
                        " --n-per-class 6 --out " + dir.str() + "/override") ==
                0);
        const PreparedTable t = load_prepared(dir.str() + "/override");
        REQUIRE(t.x_all.size() == 12);
    }
    SECTION("a malformed config exits 2") {
        write_text_file((dir.path / "bad.json").string(), "{not json");
        REQUIRE(run_cli("prepare --config " + (dir.path / "bad.json").string()) ==
                2);
    }
}
