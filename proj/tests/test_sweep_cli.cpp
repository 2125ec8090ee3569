#include "subalign/cli.hpp"
#include "subalign/json_io.hpp"
#include "subalign/sweep.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace subalign;
using nlohmann::json;

namespace {

struct CliRun {
    int exit_code;
    std::string out;
    std::string err;
};

CliRun cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_command(args, out, err);
    return CliRun{code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& content) {
    const std::string path = "/tmp/" + name;
    std::ofstream file(path);
    file << content;
    return path;
}

} // namespace

TEST_CASE("gen emits deterministic instance JSON") {
    const CliRun a = cli({"gen", "--k", "3", "--l", "2", "--bits", "8", "--seed", "7"});
    const CliRun b = cli({"gen", "--k", "3", "--l", "2", "--bits", "8", "--seed", "7"});
    CHECK(a.exit_code == kExitOk);
    CHECK(a.out == b.out);
    const json j = json::parse(a.out);
    CHECK(j.at("k") == 3);
    CHECK(j.at("h").size() == 3);
}

TEST_CASE("gen rejects unsupported user counts") {
    const CliRun run = cli({"gen", "--k", "2", "--l", "2", "--seed", "1"});
    CHECK(run.exit_code == kExitInput);
    CHECK(run.err.find("unsupported") != std::string::npos);
}

TEST_CASE("end-to-end gen, scheme, verify, analyze flow") {
    const CliRun gen = cli({"gen", "--k", "4", "--l", "8", "--seed", "3",
                            "--out", "/tmp/subalign_inst.json"});
    REQUIRE(gen.exit_code == kExitOk);
    const CliRun scheme = cli({"scheme", "--kind", "orthogonal", "--k", "4", "--l", "8",
                               "--d", "2", "--out", "/tmp/subalign_scheme.json"});
    REQUIRE(scheme.exit_code == kExitOk);

    const CliRun verify =
        cli({"verify", "/tmp/subalign_inst.json", "/tmp/subalign_scheme.json"});
    CHECK(verify.exit_code == kExitOk);
    const json report = json::parse(verify.out);
    CHECK(report.at("feasible") == true);
    CHECK(report.at("dof") == "1");

    const CliRun widths =
        cli({"analyze", "widths", "/tmp/subalign_inst.json", "/tmp/subalign_scheme.json"});
    CHECK(widths.exit_code == kExitOk);
    CHECK(json::parse(widths.out).size() == 6);

    const CliRun sparsity =
        cli({"analyze", "sparsity", "/tmp/subalign_inst.json", "/tmp/subalign_scheme.json"});
    CHECK(sparsity.exit_code == kExitOk);

    std::remove("/tmp/subalign_inst.json");
    std::remove("/tmp/subalign_scheme.json");
}

TEST_CASE("verify exits 3 on infeasible schemes") {
    cli({"gen", "--k", "3", "--l", "2", "--seed", "3", "--out", "/tmp/subalign_i2.json"});
    // a full-space scheme cannot decode
    Scheme full;
    full.k = 3;
    full.l = 2;
    full.t = 1;
    full.subspaces.assign(3, Subspace::full(2));
    save_json_file("/tmp/subalign_s2.json", scheme_to_json(full));
    const CliRun verify = cli({"verify", "/tmp/subalign_i2.json", "/tmp/subalign_s2.json"});
    CHECK(verify.exit_code == kExitVerification);
    CHECK(json::parse(verify.out).at("feasible") == false);
    std::remove("/tmp/subalign_i2.json");
    std::remove("/tmp/subalign_s2.json");
}

TEST_CASE("search scheme subcommand reports trials") {
    const CliRun found = cli({"scheme", "--kind", "search", "--k", "3", "--l", "3",
                              "--seed", "5", "--d", "1"});
    CHECK(found.exit_code == kExitOk);
    CHECK(json::parse(found.out).contains("bases"));

    const CliRun none = cli({"scheme", "--kind", "search", "--k", "3", "--l", "1",
                             "--seed", "5", "--d", "1", "--restarts", "4"});
    CHECK(none.exit_code == kExitVerification);
    CHECK(json::parse(none.out).at("found") == false);
}

TEST_CASE("bounds subcommand") {
    const CliRun run = cli({"bounds", "--k", "3", "--l", "1"});
    CHECK(run.exit_code == kExitOk);
    const json j = json::parse(run.out);
    CHECK(j.at("eq1").at("lo") == "1");
    CHECK(j.at("eq1").at("exact") == true);

    const CliRun bad = cli({"bounds", "--k", "3", "--l", "1", "--eps", "0/1"});
    CHECK(bad.exit_code == kExitInput);
}

TEST_CASE("walk subcommand emits a replayable op sequence") {
    const CliRun run = cli({"walk", "--k", "4", "--l", "6", "--seed", "9", "--d", "3",
                            "--thresholds", "9/2"});
    CHECK(run.exit_code == kExitOk);
    const json j = json::parse(run.out);
    CHECK(j.contains("op_sequence"));
    CHECK(j.at("n_tilde").get<std::size_t>() <= 1);

    const CliRun bad = cli({"walk", "--k", "3", "--l", "6", "--seed", "9", "--d", "2"});
    CHECK(bad.exit_code == kExitInput); // empty family at K=3
}

TEST_CASE("sweep produces deterministic CSV independent of parallelism") {
    const std::string config = write_temp("subalign_sweep.json", R"({
        "k": [3], "l": [4], "t": [1], "bits": [16], "d": [1],
        "seeds": [1, 2, 3], "scheme_kinds": ["orthogonal", "search"],
        "restarts": 8, "parallel": 1
    })");
    const CliRun serial = cli({"sweep", "--config", config});
    const CliRun again = cli({"sweep", "--config", config});
    const CliRun parallel = cli({"sweep", "--config", config, "--parallel", "3"});
    CHECK(serial.exit_code == kExitOk);
    CHECK(serial.out == again.out);
    CHECK(serial.out == parallel.out);

    std::istringstream lines(serial.out);
    std::string header;
    std::getline(lines, header);
    CHECK(header == sweep_csv_header());
    std::size_t rows = 0;
    for (std::string line; std::getline(lines, line);) {
        ++rows;
        CHECK(line.find(",true,") != std::string::npos); // every row feasible here
    }
    CHECK(rows == 6);
    std::remove(config.c_str());
}

TEST_CASE("sweep rows record per-point failures without aborting") {
    // orthogonal needs k*d <= t*l; k=5, l=2 cannot fit
    const std::string config = write_temp("subalign_sweep_err.json", R"({
        "k": [5], "l": [2], "d": [1], "seeds": [1],
        "scheme_kinds": ["orthogonal"]
    })");
    const CliRun run = cli({"sweep", "--config", config});
    CHECK(run.exit_code == kExitOk);
    CHECK(run.out.find("exceeds") != std::string::npos);
    std::remove(config.c_str());

    // an empty grid axis gives a header-only CSV
    const std::string empty_grid = write_temp("subalign_sweep_empty.json", R"({
        "k": [3], "l": [4], "d": [1], "seeds": [1], "scheme_kinds": []
    })");
    const CliRun empty = cli({"sweep", "--config", empty_grid});
    CHECK(empty.exit_code == kExitOk);
    CHECK(empty.out == sweep_csv_header() + "\n");
    std::remove(empty_grid.c_str());
}

TEST_CASE("shipped default sweep config matches the built-in grid") {
    const SweepConfig file = SweepConfig::from_json(
        load_json_file(std::string(SUBALIGN_SOURCE_DIR) + "/configs/default_sweep.json"));
    const SweepConfig builtin = default_sweep_config();
    CHECK(file.ks == builtin.ks);
    CHECK(file.ls == builtin.ls);
    CHECK(file.ts == builtin.ts);
    CHECK(file.ds == builtin.ds);
    CHECK(file.bits == builtin.bits);
    CHECK(file.seeds == builtin.seeds);
    CHECK(file.scheme_kinds == builtin.scheme_kinds);
    CHECK(file.restarts == builtin.restarts);
}

TEST_CASE("shipped chain pattern achieves the exact three-user value") {
    const std::string pattern = std::string(SUBALIGN_SOURCE_DIR) + "/configs/chain_k3_l3.json";
    const ChannelInstance inst = ChannelInstance::sample(3, 3, 1, 16, 12);
    const Scheme scheme = build_chain_scheme(inst, load_json_file(pattern));
    const VerifyReport report = verify_decoding(inst, scheme);
    CHECK(report.feasible);
    CHECK(report.dof == make_rational(4, 3));
}

TEST_CASE("unknown flags exit with the input code") {
    CHECK(cli({"bounds", "--nope", "1"}).exit_code == kExitInput);
    CHECK(cli({}).exit_code == kExitInput);
    CHECK(cli({"--help"}).exit_code == kExitOk);
}
