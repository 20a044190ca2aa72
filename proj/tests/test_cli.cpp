#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"

#include "ddfrot/cli.hpp"
#include "ddfrot/dmt.hpp"

namespace fs = std::filesystem;
using ddfrot::cli::format_sig10;
using ddfrot::cli::parse_double_list;
using ddfrot::cli::parse_size_list;

namespace {

std::string tmp_path(const std::string& name) {
    fs::create_directories("cli_tmp");
    return (fs::path("cli_tmp") / name).string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

int run_cli(const std::vector<std::string>& args) { return ddfrot::cli::run(args); }

}  // namespace

TEST_CASE("numeric list parsing") {
    CHECK(parse_double_list("1,2.5,3") == std::vector<double>{1.0, 2.5, 3.0});
    const auto range = parse_double_list("0:40:5");
    REQUIRE(range.size() == 9);
    CHECK(range.front() == 0.0);
    CHECK(range.back() == 40.0);
    CHECK(parse_double_list("0:1:0.01").size() == 101);
    CHECK(parse_double_list("10:0:-5") == std::vector<double>{10.0, 5.0, 0.0});
    CHECK(parse_double_list("7") == std::vector<double>{7.0});
    CHECK(parse_double_list("1,3:5:1") == std::vector<double>{1.0, 3.0, 4.0, 5.0});

    CHECK_THROWS_AS(parse_double_list(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_double_list("a"), std::invalid_argument);
    CHECK_THROWS_AS(parse_double_list("1:2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_double_list("1:2:0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_double_list("1:2:-1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_double_list("1,,2"), std::invalid_argument);

    CHECK(parse_size_list("1,2") == std::vector<std::size_t>{1, 2});
    CHECK(parse_size_list("2:8:2") == std::vector<std::size_t>{2, 4, 6, 8});
    CHECK(parse_size_list("8:2:-3") == std::vector<std::size_t>{8, 5, 2});
    CHECK_THROWS_AS(parse_size_list("1.5"), std::invalid_argument);
    CHECK_THROWS_AS(parse_size_list("-1"), std::invalid_argument);
}

TEST_CASE("float formatting") {
    CHECK(format_sig10(0.25) == "0.25");
    CHECK(format_sig10(1.0) == "1");
    CHECK(format_sig10(0.1) == "0.1");
    CHECK(format_sig10(8.0 / 9.0) == "0.8888888889");
    CHECK(format_sig10(0.0) == "0");
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run_cli({}) == 2);
    CHECK(run_cli({"bogus"}) == 2);
    CHECK(run_cli({"outage", "--nope", "1"}) == 2);
    CHECK(run_cli({"--help"}) == 0);
    // Missing required seed / output / snr grid.
    CHECK(run_cli({"outage", "--snr-db", "0", "--output", tmp_path("x.csv")}) == 2);
    CHECK(run_cli({"outage", "--snr-db", "0", "--seed", "1"}) == 2);
    CHECK(run_cli({"outage", "--seed", "1", "--output", tmp_path("x.csv")}) == 2);
    // Bad values.
    CHECK(run_cli({"outage", "--snr-db", "0", "--seed", "1", "--trials", "0", "--output",
                   tmp_path("x.csv")}) == 2);
    CHECK(run_cli({"outage", "--snr-db", "0", "--seed", "1", "--ordering", "shuffled",
                   "--output", tmp_path("x.csv")}) == 2);
    CHECK(run_cli({"outage", "--snr-db", "0", "--seed", "1", "--isolated", "2", "--output",
                   tmp_path("x.csv")}) == 2);
    CHECK(run_cli({"outage", "--snr-db", "0", "--seed", "1", "--block", "3", "--frame", "8",
                   "--output", tmp_path("x.csv")}) == 2);
    CHECK(run_cli({"rate", "--bits", "0"}) == 2);
    CHECK(run_cli({"dmt", "--grid", "0:2:0.5", "--output", tmp_path("x.csv")}) == 2);
    CHECK(run_cli({"dmt", "--frames", "1", "--output", tmp_path("x.csv")}) == 2);
}

TEST_CASE("io errors exit with 1") {
    CHECK(run_cli({"outage", "--snr-db", "0", "--seed", "1", "--trials", "50", "--output",
                   "/nonexistent_dir_ddfrot/out.csv"}) == 1);
}

TEST_CASE("outage csv shape and thread invariance") {
    const std::string a = tmp_path("a.csv");
    const std::string b = tmp_path("b.csv");
    const std::vector<std::string> base = {
        "outage",  "--relays", "1",  "--rotations", "2",        "--frame", "8",
        "--block", "1",        "--rate", "1",       "--snr-db", "0,10",    "--trials",
        "2000",    "--seed",   "42"};
    auto args_a = base;
    args_a.insert(args_a.end(), {"--threads", "1", "--output", a});
    auto args_b = base;
    args_b.insert(args_b.end(), {"--threads", "3", "--output", b});
    REQUIRE(run_cli(args_a) == 0);
    REQUIRE(run_cli(args_b) == 0);

    const std::string csv_a = slurp(a);
    const std::string csv_b = slurp(b);
    CHECK(csv_a == csv_b);

    std::istringstream lines(csv_a);
    std::string header;
    std::getline(lines, header);
    CHECK(header ==
          "snr_db,rate_bpcu,n_relays,n_rotations,block_len,isolated,trials,failures,"
          "outage_prob,ci_low,ci_high");
    std::string row;
    int rows = 0;
    while (std::getline(lines, row)) {
        if (!row.empty()) {
            ++rows;
        }
    }
    CHECK(rows == 2);
    CHECK(csv_a.substr(csv_a.size() - 1) == "\n");
    CHECK(csv_a.find("\n0,1,1,2,1,0,2000,") != std::string::npos);
    CHECK(csv_a.find("\n10,1,1,2,1,0,2000,") != std::string::npos);
}

TEST_CASE("manifest reruns reproduce the csv") {
    const std::string a = tmp_path("m.csv");
    REQUIRE(run_cli({"outage", "--relays", "1", "--rotations", "2", "--frame", "8", "--block",
                     "1", "--rate", "1", "--snr-db", "0,5", "--trials", "1500", "--seed", "7",
                     "--threads", "1", "--output", a}) == 0);
    const std::string manifest = slurp(a + ".manifest");
    CHECK(manifest.find("subcommand=outage\n") != std::string::npos);
    CHECK(manifest.find("\nseed=7\n") != std::string::npos);
    CHECK(manifest.find("\nsnr-db=0,5\n") != std::string::npos);
    CHECK(manifest.find("started-utc=") != std::string::npos);
    CHECK(manifest.find("finished-utc=") != std::string::npos);

    const std::string c = tmp_path("m2.csv");
    REQUIRE(run_cli({"outage", "--config", a + ".manifest", "--threads", "2", "--output", c}) ==
            0);
    CHECK(slurp(c) == slurp(a));

    // Command line beats the config file.
    const std::string d = tmp_path("m3.csv");
    REQUIRE(run_cli({"outage", "--config", a + ".manifest", "--seed", "8", "--output", d}) == 0);
    CHECK(slurp(d + ".manifest").find("\nseed=8\n") != std::string::npos);
    CHECK(slurp(d) != slurp(a));
}

TEST_CASE("config rejects unknown keys and wrong subcommands") {
    const std::string cfg = tmp_path("bad.conf");
    {
        std::ofstream out(cfg);
        out << "bogus=1\n";
    }
    CHECK(run_cli({"outage", "--config", cfg, "--seed", "1", "--snr-db", "0", "--output",
                   tmp_path("x.csv")}) == 2);

    const std::string a = tmp_path("sub.csv");
    REQUIRE(run_cli({"outage", "--snr-db", "0", "--trials", "50", "--seed", "1", "--output",
                     a}) == 0);
    CHECK(run_cli({"dmt", "--config", a + ".manifest", "--output", tmp_path("y.csv")}) == 2);

    CHECK(run_cli({"outage", "--config", tmp_path("missing.conf"), "--seed", "1", "--snr-db",
                   "0", "--output", tmp_path("x.csv")}) == 2);
}

TEST_CASE("rate subcommand emits exact fractions") {
    const std::string out = tmp_path("rate.csv");
    REQUIRE(run_cli({"rate", "--bits", "2", "--blocks", "1,4,8", "--relays", "3", "--output",
                     out}) == 0);
    CHECK(slurp(out) ==
          "bits_per_symbol,block_len,n_relays,useful_rate\n"
          "2,1,3,0.5\n"
          "2,4,3,0.8\n"
          "2,8,3,0.8888888889\n");
}

TEST_CASE("dmt subcommand matches the library") {
    const std::string out = tmp_path("dmt.csv");
    REQUIRE(run_cli({"dmt", "--relays", "1", "--frames", "16,64", "--grid", "0:1:0.5",
                     "--output", out}) == 0);
    std::ostringstream want;
    want << "multiplexing,d_optimal,d_bound_T16,d_bound_T64\n";
    for (const double r : {0.0, 0.5, 1.0}) {
        want << format_sig10(r) << ',' << format_sig10(ddfrot::dmt_ddf_optimal(1, r)) << ','
             << format_sig10(ddfrot::dmt_lower_bound_single_relay(16, r)) << ','
             << format_sig10(ddfrot::dmt_lower_bound_single_relay(64, r)) << '\n';
    }
    CHECK(slurp(out) == want.str());
    CHECK(fs::exists(out + ".manifest"));
}

TEST_CASE("oracle subcommand passes") {
    CHECK(run_cli({"oracle", "--threads", "1"}) == 0);
}
