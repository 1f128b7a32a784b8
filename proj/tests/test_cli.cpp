#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(SHEARLYAP_BIN) + " " + args + " 2>/dev/null";
    Run r;
    FILE* f = popen(cmd.c_str(), "r");
    REQUIRE(f != nullptr);
    char buf[4096];
    std::size_t n = 0;
    while ((n = fread(buf, 1, sizeof buf, f)) > 0) r.out.append(buf, n);
    const int status = pclose(f);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string run_stderr(const std::string& args) {
    const std::string cmd = std::string(SHEARLYAP_BIN) + " " + args + " 2>&1 >/dev/null";
    std::string out;
    FILE* f = popen(cmd.c_str(), "r");
    char buf[4096];
    std::size_t n = 0;
    while ((n = fread(buf, 1, sizeof buf, f)) > 0) out.append(buf, n);
    pclose(f);
    return out;
}

nlohmann::json run_json(const std::string& args) {
    const Run r = run(args + " --format json");
    REQUIRE(r.code == 0);
    return nlohmann::json::parse(r.out);
}

std::vector<std::vector<std::string>> parse_csv(const std::string& s) {
    std::vector<std::vector<std::string>> rows(1);
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const char c = s[i];
        if (quoted) {
            if (c == '"' && i + 1 < s.size() && s[i + 1] == '"') {
                field += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            rows.back().push_back(field);
            field.clear();
        } else if (c == '\r' && i + 1 < s.size() && s[i + 1] == '\n') {
            rows.back().push_back(field);
            field.clear();
            rows.emplace_back();
            ++i;
        } else {
            field += c;
        }
    }
    if (rows.back().empty()) rows.pop_back();
    return rows;
}

void check_metadata(const nlohmann::json& j) {
    CHECK(j["schema"] == "shearlyap/1");
    for (const char* key : {"tool_version", "command", "seed", "series_config", "timestamp"}) {
        CHECK(j["metadata"].contains(key));
    }
    REQUIRE(j["records"].is_array());
    for (const auto& r : j["records"]) {
        CHECK(r["kind"].is_string());
        CHECK(r["payload"].is_object());
    }
}

}  // namespace

TEST_CASE("bounds json") {
    const auto j = run_json("bounds --alpha 1 --beta 1");
    check_metadata(j);
    REQUIRE(j["records"].size() == 8);
    const auto& env = j["records"][3]["payload"];
    CHECK(env["norm"] == "envelope");
    CHECK(env["family"] == "global");
    CHECK(env["lower"].get<double>() == doctest::Approx(0.3688682).epsilon(1e-6));
    CHECK(env["upper_x4"].get<double>() == doctest::Approx(4 * 0.4027733).epsilon(1e-6));
    CHECK(env["lower_norm"] == "L1");

    const auto q = run_json("bounds --alpha 1 --beta 1 --q 2 --family global --norms Linf");
    REQUIRE(q["records"].size() == 2);
    CHECK(q["records"][0]["payload"]["q"] == 2.0);
    CHECK(q["records"][0]["payload"]["exponent"] == "gle");
}

TEST_CASE("exit codes") {
    const Run bad = run("bounds --alpha 0.5 --beta 3");
    CHECK(bad.code == 2);
    CHECK(run_stderr("bounds --alpha 0.5 --beta 3").find("alpha must be >= 1 or < -2") != std::string::npos);
    CHECK(run("bounds --alpha -3 --beta 1").code == 2);
    CHECK(run("bounds --alpha 1").code == 1);
    CHECK(run("nonsense").code == 1);
    CHECK(run("gle-exact --alpha 1 --beta 1 --q 7").code == 2);
    CHECK(run("standard-bound --alpha 1 --beta 1 --k 30 --mode exhaustive").code == 2);
    // A tail tolerance below the truncation error cannot be met at A = 8.
    CHECK(run("bounds --alpha 1 --beta 1 --max-index 8 --tail-tol 1e-30").code == 3);
    CHECK(run("--help").code == 0);
}

TEST_CASE("mc") {
    const auto j = run_json("mc --alpha 1 --beta 1 --steps 1e5 --ensembles 4 --seed 7");
    check_metadata(j);
    const auto& p = j["records"][0]["payload"];
    CHECK(p["n_steps"] == 100000);
    CHECK(p["mean"].get<double>() == doctest::Approx(0.396).epsilon(0.02));
    CHECK(j["metadata"]["seed"] == 7);
    // Same seed, same digits.
    const auto k = run_json("mc --alpha 1 --beta 1 --steps 1e5 --ensembles 4 --seed 7");
    CHECK(k["records"][0]["payload"]["mean"] == p["mean"]);

    const auto z = run_json("mc --alpha 1 --beta 1 --q 0");
    CHECK(z["records"][0]["payload"]["mean"] == 0.0);
    const auto o = run_json("mc --alpha 1 --beta 1 --oracle --steps 1e5 --ensembles 2");
    CHECK(o["records"][0]["kind"] == "BlockStats");
    CHECK(o["records"][0]["payload"]["mean_block_len"].get<double>() == doctest::Approx(4.0).epsilon(0.02));
}

TEST_CASE("gle-exact and entropy") {
    const auto j = run_json("gle-exact --alpha 1 --beta 1 --q 1:5:1");
    REQUIRE(j["records"].size() == 5);
    CHECK(j["records"][0]["payload"]["lower_arg_int"] == 5);
    CHECK(j["records"][0]["payload"]["upper_arg_int"] == 7);
    CHECK(j["records"][4]["payload"]["upper_arg_int"] == 2578567);
    const auto e = run_json("entropy --alpha 2 --beta 3");
    CHECK(e["records"][0]["payload"]["lower_x4"].get<double>() == doctest::Approx(std::log(25.0)));
}

TEST_CASE("sweeps in long csv") {
    const Run r = run("sweep --mode lyap-bounds --alpha 1:3:1 --family global --format csv");
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() > 1);
    const auto& h = rows[0];
    CHECK(h[0] == "kind");
    for (const auto& row : rows) CHECK(row.size() == h.size());
    // 3 alphas x (3 norms x 2 sides + 2 explicit relaxation rows).
    CHECK(rows.size() == 1 + 3 * 8);

    const Run n = run("sweep --mode neg-bounds --alpha=-3:-4:-1 --format csv");
    REQUIRE(n.code == 0);
    CHECK(parse_csv(n.out).size() == 1 + 2 * (6 + 4));

    const Run g = run("sweep --mode gle --alpha 1 --q=-1:1:1 --family global --format csv");
    REQUIRE(g.code == 0);
    const auto grows = parse_csv(g.out);
    // 3 q values x 6 bound rows, plus 2 exact rows at q = 1.
    CHECK(grows.size() == 1 + 3 * 6 + 2);

    const Run e = run("sweep --mode errors --alpha 1 --family global --mc-steps 1e4 --mc-ensembles 2 --format csv");
    REQUIRE(e.code == 0);
    CHECK(e.out.find("lower_error") != std::string::npos);
    CHECK(run("sweep --mode nope").code == 2);
}

TEST_CASE("output file, env directory and config") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "shearlyap_cli_test";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const std::string env = "SHEARLYAP_OUTPUT_DIR=" + dir.string() + " ";
    const std::string cmd = "sh -c '" + env + SHEARLYAP_BIN +
                            " entropy --alpha 1 --beta 1 --format csv --output ent.csv'";
    REQUIRE(std::system(cmd.c_str()) == 0);
    CHECK(fs::exists(dir / "ent.csv"));
    CHECK(fs::exists(dir / "ent.csv.meta.json"));
    std::ifstream meta(dir / "ent.csv.meta.json");
    const auto m = nlohmann::json::parse(meta);
    CHECK(m["command"] == "entropy");

    const fs::path cfg = dir / "series.cfg";
    std::ofstream(cfg) << "max_index = 19\ncheck_tail = false\n";
    const auto j = run_json("--config " + cfg.string() + " bounds --alpha 1 --beta 1 --family global");
    CHECK(j["metadata"]["series_config"]["max_index"] == 19);
    CHECK(j["metadata"]["series_config"]["check_tail"] == false);
    const auto k = run_json("--config " + cfg.string() + " bounds --alpha 1 --beta 1 --max-index 40");
    CHECK(k["metadata"]["series_config"]["max_index"] == 40);
    fs::remove_all(dir);
}

TEST_CASE("golden table") {
    const Run r = run("table1 --no-mc --format csv");
    REQUIRE(r.code == 0);
    std::ifstream in(std::string(SHEARLYAP_GOLDEN_DIR) + "/table1.csv");
    REQUIRE(in);
    std::stringstream ss;
    ss << in.rdbuf();
    const auto want = parse_csv(ss.str());
    const auto got = parse_csv(r.out);
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
        REQUIRE(got[i].size() == want[i].size());
        for (std::size_t c = 0; c < got[i].size(); ++c) {
            char* end = nullptr;
            const double w = std::strtod(want[i][c].c_str(), &end);
            if (i > 0 && !want[i][c].empty() && *end == '\0') {
                CHECK(std::stod(got[i][c]) == doctest::Approx(w).epsilon(1e-9));
            } else {
                CHECK(got[i][c] == want[i][c]);
            }
        }
    }
}
