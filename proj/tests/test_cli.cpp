#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <json.hpp>

// End-to-end checks of the installed binary.  The test runner exports
// SUPRA_BIN with the path to the freshly built executable.

namespace fs = std::filesystem;

namespace {

std::string binary() {
    const char* b = std::getenv("SUPRA_BIN");
    return b ? std::string(b) : std::string();
}

int run(const std::string& args) {
    const int status = std::system((binary() + " " + args).c_str());
    REQUIRE(status != -1);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -2;
}

fs::path scratch(const std::string& name) {
    return fs::temp_directory_path() / ("supra_cli_" + name);
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p);
    REQUIRE(f.good());
    std::ostringstream out;
    out << f.rdbuf();
    return out.str();
}

struct Csv {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

Csv parse_csv(const std::string& text) {
    Csv csv;
    std::istringstream in(text);
    std::string line;
    REQUIRE(std::getline(in, line));
    std::istringstream h(line);
    std::string cell;
    while (std::getline(h, cell, ',')) csv.header.push_back(cell);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream r(line);
        std::vector<double> row;
        while (std::getline(r, cell, ',')) row.push_back(std::stod(cell));
        csv.rows.push_back(row);
    }
    return csv;
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("simulate a chain and conserve the total rate") {
    REQUIRE_FALSE(binary().empty());
    const auto out = scratch("chain.csv");
    fs::remove(out);
    CHECK(run("simulate --d 1 --m 64 --alpha 0 --A 1 --k0a 3 --delta-omega0 0 --output " +
              out.string()) == 0);
    const Csv csv = parse_csv(slurp(out));
    CHECK(csv.header ==
          std::vector<std::string>{"index", "re_E", "im_E", "gamma", "delta"});
    REQUIRE(csv.rows.size() == 64);
    double total = 0.0;
    for (const auto& row : csv.rows) total += row[3];
    CHECK(std::abs(total - 64.0) < 1e-6);
    // rates arrive sorted, brightest first
    CHECK(csv.rows.front()[3] >= csv.rows.back()[3]);
    fs::remove(out);
}

TEST_CASE("simulate the small-volume limit") {
    const auto out = scratch("dicke.csv");
    CHECK(run("simulate --dicke --n 16 --output " + out.string()) == 0);
    const Csv csv = parse_csv(slurp(out));
    REQUIRE(csv.rows.size() == 16);
    CHECK(std::abs(csv.rows.front()[3] - 16.0) < 1e-9); // one bright mode at N gamma0
    for (size_t i = 1; i < csv.rows.size(); ++i) CHECK(std::abs(csv.rows[i][3]) < 1e-9);
    fs::remove(out);
}

TEST_CASE("dispersion table shape") {
    const auto out = scratch("disp.csv");
    CHECK(run("dispersion --d 1 --m 8 --k0a 3 --points 5 --k-min 0.9 --k-max 1.1 --output " +
              out.string()) == 0);
    const Csv csv = parse_csv(slurp(out));
    CHECK(csv.header == std::vector<std::string>{"k", "xi", "chi_hat", "shift_hat", "chi",
                                                 "shift", "re_I", "im_I"});
    REQUIRE(csv.rows.size() == 5);
    CHECK(csv.rows.front()[0] == 0.9);
    CHECK(csv.rows.back()[0] == 1.1);
    // chi_hat is 1 at the resonance row (normalized to the lattice's own peak)
    CHECK(std::abs(csv.rows[2][0] - 1.0) < 1e-12);
    CHECK(std::abs(csv.rows[2][2] - 1.0) < 1e-12);
    fs::remove(out);
}

TEST_CASE("analytic table shape") {
    const auto out = scratch("analytic.csv");
    CHECK(run("analytic --d 1 --N 10000 --k0a 3 --points 5 --xi-max 3.1415926535 --output " +
              out.string()) == 0);
    const Csv csv = parse_csv(slurp(out));
    REQUIRE(csv.rows.size() == 5);
    // middle row is the resonance: chi_hat = 1 and the shift nearly vanishes
    CHECK(std::abs(csv.rows[2][2] - 1.0) < 1e-3);
    CHECK(std::abs(csv.rows[2][3]) < 1e-3);
    fs::remove(out);
}

TEST_CASE("design emits a config that reproduces itself") {
    const auto out = scratch("design.json");
    CHECK(run("design --gamma 100 --delta 0 --d 1 --alpha 0 --A 1 --k0a 3 --output " +
              out.string()) == 0);
    const auto doc = nlohmann::json::parse(slurp(out));
    CHECK(doc.at("schema_version").get<int>() == 1);
    CHECK(doc.at("solution").at("N").get<long>() == 198);
    CHECK(doc.at("solution").at("m").get<long>() == 198);
    CHECK(std::abs(doc.at("solution").at("k").get<double>() - 1.0) < 1e-12);

    // feed the emitted file straight back in as --config
    const auto out2 = scratch("design2.json");
    CHECK(run("design --config " + out.string() + " --output " + out2.string()) == 0);
    const auto doc2 = nlohmann::json::parse(slurp(out2));
    CHECK(doc2.at("solution") == doc.at("solution"));

    // explicit flags override the file
    const auto out3 = scratch("design3.json");
    CHECK(run("design --config " + out.string() + " --gamma 50 --output " + out3.string()) ==
          0);
    const auto doc3 = nlohmann::json::parse(slurp(out3));
    CHECK(doc3.at("config").at("gamma").get<double>() == 50.0);
    CHECK(doc3.at("solution").at("N").get<long>() == 98);

    fs::remove(out);
    fs::remove(out2);
    fs::remove(out3);
}

TEST_CASE("exit codes") {
    const auto out = scratch("never.csv");
    fs::remove(out);

    // invalid input: odd side
    CHECK(run("simulate --d 1 --m 7 --output " + out.string()) == 2);
    CHECK_FALSE(fs::exists(out));

    // malformed JSON config
    const auto cfg = scratch("broken.json");
    std::ofstream(cfg) << "{ this is not json";
    CHECK(run("simulate --config " + cfg.string() + " --output " + out.string()) == 2);
    CHECK_FALSE(fs::exists(out));
    fs::remove(cfg);

    // config with the wrong type
    const auto cfg2 = scratch("wrongtype.json");
    std::ofstream(cfg2) << R"({"m": "sixty-four"})";
    CHECK(run("simulate --config " + cfg2.string() + " --output " + out.string()) == 2);
    CHECK_FALSE(fs::exists(out));
    fs::remove(cfg2);

    // unknown flag
    CHECK(run("simulate --does-not-exist 1") == 2);

    // infeasible design target
    CHECK(run("design --gamma 0.5 --output " + out.string()) == 4);
    CHECK_FALSE(fs::exists(out));
    CHECK(run("design --gamma 50 --alpha 0 --free k0a --N 100 --output " + out.string()) ==
          4);
    CHECK_FALSE(fs::exists(out));

    // help is a success path
    CHECK(run("--help > /dev/null") == 0);
    CHECK(run("design --help > /dev/null") == 0);
}

TEST_CASE("validate runs the cheap suites and reports") {
    const auto out = scratch("validate.json");
    CHECK(run("validate --suite trace --seed 7 --output " + out.string()) == 0);
    const auto doc = nlohmann::json::parse(slurp(out));
    CHECK(doc.at("schema_version").get<int>() == 1);
    CHECK(doc.at("all_pass").get<bool>());
    REQUIRE(doc.at("checks").size() == 1);
    CHECK(doc.at("checks")[0].at("name").get<std::string>() == "trace-conservation");
    CHECK(doc.at("checks")[0].at("pass").get<bool>());
    CHECK(doc.at("checks")[0].at("value").get<double>() <=
          doc.at("checks")[0].at("tolerance").get<double>());
    fs::remove(out);

    // determinism: the same seed reproduces the same figure of merit
    const auto out2 = scratch("validate2.json");
    CHECK(run("validate --suite trace --seed 7 --output " + out2.string()) == 0);
    const auto doc2 = nlohmann::json::parse(slurp(out2));
    CHECK(doc2.at("checks")[0].at("value").get<double>() ==
          doc.at("checks")[0].at("value").get<double>());
    fs::remove(out2);

    CHECK(run("validate --suite nosuchsuite") == 2);
}

TEST_CASE("stdout is the default sink") {
    const auto out = scratch("stdout.csv");
    CHECK(run("simulate --dicke --n 4 > " + out.string()) == 0);
    const Csv csv = parse_csv(slurp(out));
    CHECK(csv.rows.size() == 4);
    fs::remove(out);
}

} // TEST_SUITE
