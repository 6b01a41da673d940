#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "dtn_tradesim.h"

namespace fs = std::filesystem;

TEST_SUITE("c-api") {
  TEST_CASE("config handle lifecycle and error codes") {
    dtn_config* config = nullptr;
    REQUIRE(dtn_config_create(&config) == DTN_OK);
    CHECK(dtn_config_set(config, "runs", "2") == DTN_OK);
    CHECK(dtn_config_set(config, "packet_count", "-1") == DTN_ERR_CONFIG);
    CHECK(std::string(dtn_last_error()).find("packet_count") != std::string::npos);
    CHECK(dtn_config_set(config, "nonsense", "1") == DTN_ERR_CONFIG);
    CHECK(dtn_config_load_file(config, "/nonexistent/dtn.cfg") == DTN_ERR_CONFIG);
    CHECK(dtn_config_validate(config) == DTN_OK);
    CHECK(std::string(dtn_last_error()).empty());

    size_t needed = 0;
    CHECK(dtn_config_describe(config, nullptr, 0, &needed) == DTN_OK);
    std::string text(needed, '\0');
    CHECK(dtn_config_describe(config, text.data(), text.size(), &needed) == DTN_OK);
    CHECK(text.find("run_count=2") != std::string::npos);

    char tiny[4];
    CHECK(dtn_config_describe(config, tiny, sizeof tiny, &needed) == DTN_OK);
    CHECK(std::string(tiny).size() == 3);

    CHECK(dtn_config_set(nullptr, "runs", "1") == DTN_ERR_USAGE);
    CHECK(dtn_config_create(nullptr) == DTN_ERR_USAGE);
    dtn_config_destroy(config);
    dtn_config_destroy(nullptr);
  }

  TEST_CASE("study through the C API") {
    dtn_config* config = nullptr;
    REQUIRE(dtn_config_create(&config) == DTN_OK);
    dtn_config_set(config, "runs", "2");
    dtn_config_set(config, "packets", "40");
    dtn_config_set(config, "seed", "77");

    dtn_study* study = nullptr;
    REQUIRE(dtn_study_run(config, &study) == DTN_OK);
    CHECK(dtn_study_run_count(study) == 2);

    double tt = 0.0;
    CHECK(dtn_study_metric_mean(study, DTN_DISTANCE_DIJKSTRA, DTN_METRIC_TRANSMISSION_TIME,
                                &tt) == DTN_OK);
    CHECK(tt > 1.1767);
    CHECK(dtn_study_metric_mean(study, static_cast<dtn_protocol>(9),
                                DTN_METRIC_PERCENT_ERROR, &tt) == DTN_ERR_USAGE);

    dtn_protocol order[3];
    CHECK(dtn_study_ranking(study, 1, order) == DTN_OK);
    double best = 0.0, worst = 0.0;
    dtn_study_mavf(study, order[0], 1, &best);
    dtn_study_mavf(study, order[2], 1, &worst);
    CHECK(best >= worst);

    const fs::path dir = fs::temp_directory_path() / "dtn_capi_out";
    fs::remove_all(dir);
    CHECK(dtn_study_write(study, dir.c_str()) == DTN_OK);
    CHECK(fs::exists(dir / "manifest.txt"));
    CHECK(dtn_study_write(study, "/proc/dtn_cannot_write_here") == DTN_ERR_IO);

    CHECK(dtn_study_warning(study, 99) == nullptr);
    dtn_study_destroy(study);
    dtn_config_destroy(config);
  }

  TEST_CASE("invalid config fails study creation") {
    dtn_config* config = nullptr;
    REQUIRE(dtn_config_create(&config) == DTN_OK);
    dtn_config_set(config, "min_coord_km", "1e9");
    dtn_study* study = nullptr;
    CHECK(dtn_study_run(config, &study) == DTN_ERR_CONFIG);
    CHECK(study == nullptr);
    dtn_config_destroy(config);
  }
}

namespace {

int run_cli(const std::string& args) {
  const std::string cmd = std::string(DTN_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("exit codes") {
    const fs::path dir = fs::temp_directory_path() / "dtn_cli";
    fs::remove_all(dir);
    fs::create_directories(dir);
    std::ofstream(dir / "ok.cfg") << "runs=2\npackets=30\n";
    std::ofstream(dir / "bad.cfg") << "packets=-1\n";
    std::ofstream(dir / "unknown.cfg") << "colour=blue\n";
    std::ofstream(dir / "blocker") << "x";

    CHECK(run_cli("validate --config " + (dir / "ok.cfg").string()) == 0);
    CHECK(run_cli("validate --config " + (dir / "bad.cfg").string()) == 1);
    CHECK(run_cli("validate --config " + (dir / "unknown.cfg").string()) == 1);
    CHECK(run_cli("run --config " + (dir / "ok.cfg").string() + " --runs 0") == 1);
    CHECK(run_cli("run --bogus-flag") == 1);
    CHECK(run_cli("run --config " + (dir / "ok.cfg").string() + " --out " +
                  (dir / "blocker" / "x").string()) == 3);
  }

  TEST_CASE("flags override the file and reruns are byte-identical") {
    const fs::path dir = fs::temp_directory_path() / "dtn_cli_det";
    fs::remove_all(dir);
    fs::create_directories(dir);
    std::ofstream(dir / "study.cfg") << "runs=5\npackets=25\nseed=3\n";
    const std::string base = "run --config " + (dir / "study.cfg").string() + " --runs 2";
    REQUIRE(run_cli(base + " --out " + (dir / "a").string()) == 0);
    REQUIRE(run_cli(base + " --out " + (dir / "b").string()) == 0);
    CHECK(slurp(dir / "a" / "manifest.txt").find("run_count=2") != std::string::npos);
    CHECK(fs::exists(dir / "a" / "network_run1_nodes.csv"));
    CHECK_FALSE(fs::exists(dir / "a" / "network_run2_nodes.csv"));
    for (const auto& entry : fs::directory_iterator(dir / "a")) {
      CHECK(slurp(entry.path()) == slurp(dir / "b" / entry.path().filename()));
    }
  }
}
