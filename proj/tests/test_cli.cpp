#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

int run(const std::string& args) {
    const std::string cmd = std::string(SWEEPCLI_PATH) + " " + args;
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string golden(const std::string& name) {
    return read_file(std::string(GOLDEN_DIR) + "/" + name);
}

std::string tmp_path(const std::string& name) {
    return std::string("cli_out_") + name;
}

// Data rows only: header and '#' comment lines skipped.
std::vector<std::vector<double>> csv_rows(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::stringstream ss(text);
    std::string line;
    bool header_seen = false;
    while (std::getline(ss, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        std::vector<double> row;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

TEST_CASE("critical matches the golden output") {
    const std::string out = tmp_path("critical.txt");
    REQUIRE(run("critical --R0 100 --r 10 --VT 1 --out " + out) == 0);
    CHECK(read_file(out) == golden("critical_text.txt"));
}

TEST_CASE("critical csv format") {
    const std::string out = tmp_path("critical.csv");
    REQUIRE(run("critical --R0 100 --r 10 --VT 1 --format csv --out " + out) == 0);
    const std::string text = read_file(out);
    CHECK(text == golden("critical_csv.csv"));
    CHECK(text.rfind("# schema=1\n", 0) == 0);
}

TEST_CASE("critical usage errors") {
    CHECK(run("critical --R0 100 --r 10 2>/dev/null") == 2);
    CHECK(run("critical 2>/dev/null") == 2);
    CHECK(run("bogus 2>/dev/null") == 2);
}

TEST_CASE("schedule golden outputs") {
    const std::string drift = tmp_path("schedule_drifting.csv");
    REQUIRE(run("schedule --R0 100 --r 10 --VT 1 --deltaV 1 --protocol drifting --out " +
                drift) == 0);
    CHECK(read_file(drift) == golden("schedule_drifting.csv"));

    const std::string improved = tmp_path("schedule_improved.csv");
    REQUIRE(run("schedule --R0 100 --r 10 --VT 1 --deltaV 1 --protocol improved --out " +
                improved) == 0);
    CHECK(read_file(improved) == golden("schedule_improved.csv"));
}

TEST_CASE("schedule rejects below-critical speeds") {
    CHECK(run("schedule --R0 100 --r 10 --VT 1 --Vs 30 --protocol drifting "
              "2>/dev/null") == 3);
    CHECK(run("schedule --R0 100 --r 10 --VT 1 --deltaV 0 --protocol drifting "
              "2>/dev/null") == 2);
}

TEST_CASE("study alpha sweep") {
    const std::string out = tmp_path("study_alpha.csv");
    REQUIRE(run("study --R0 100 --r 10 --VT 1 --alpha 2:100:1 --protocol drifting "
                "--out " + out) == 0);
    const auto rows = csv_rows(read_file(out));
    REQUIRE(rows.size() == 99);
    double prev_n = -1.0;
    double prev_t = -1.0;
    for (const auto& row : rows) {
        REQUIRE(row.size() == 3);
        CHECK(row[1] >= prev_n);
        CHECK(row[2] >= prev_t - 1e-9);
        prev_n = row[1];
        prev_t = row[2];
    }
}

TEST_CASE("study deltaV sweep") {
    const std::string out = tmp_path("study_dv.csv");
    REQUIRE(run("study --R0 100 --r 10 --VT 1 --deltaV 0.5:10:0.5 --protocol improved "
                "--out " + out) == 0);
    const auto rows = csv_rows(read_file(out));
    REQUIRE(rows.size() == 20);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(rows[i][1] <= rows[i - 1][1]);  // N nonincreasing
        CHECK(rows[i][3] <= rows[i - 1][3] + 1e-9);
    }
}

TEST_CASE("study fig14 comparison") {
    const std::string out = tmp_path("study_fig14.csv");
    REQUIRE(run("study --R0 100 --r 10 --VT 1 --deltaV 0.5:10:0.5 --fig14 --out " +
                out) == 0);
    const auto rows = csv_rows(read_file(out));
    REQUIRE(rows.size() == 20);
    for (const auto& row : rows) CHECK(row[2] < row[1]);  // improved < drifting
}

TEST_CASE("study single-point and bad ranges") {
    const std::string out = tmp_path("study_single.csv");
    REQUIRE(run("study --R0 100 --r 10 --VT 1 --deltaV 1 --protocol drifting --out " +
                out) == 0);
    CHECK(csv_rows(read_file(out)).size() == 1);
    CHECK(run("study --R0 100 --r 10 --VT 1 --deltaV 10:1:0.5 --protocol drifting "
              "2>/dev/null") == 2);
    CHECK(run("study --R0 100 --r 10 --VT 1 --protocol drifting 2>/dev/null") == 2);
}

TEST_CASE("config file mirrors flags and flags override") {
    const std::string cfg = tmp_path("critical.cfg");
    {
        std::ofstream out(cfg);
        out << "R0=100\nr=10\nVT=2\n";
    }
    const std::string out = tmp_path("critical_cfg.txt");
    REQUIRE(run("critical --config " + cfg + " --VT 1 --out " + out) == 0);
    CHECK(read_file(out) == golden("critical_text.txt"));
}

TEST_CASE("simulate reports dt bound violations") {
    CHECK(run("simulate --R0 10 --r 2 --VT 1 --deltaV 1 --protocol drifting "
              "--cell-size 0.2 --dt 1 --horizon 10 2>/dev/null") == 2);
}
