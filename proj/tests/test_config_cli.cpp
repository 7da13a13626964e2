#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fermionic/config.hpp"

namespace {

using namespace fermionic;
namespace fs = std::filesystem;

ExperimentConfig parse_text(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

fs::path temp_file(const std::string& stem) {
    static int counter = 0;
    return fs::temp_directory_path() /
           ("fermionic_" + std::to_string(::getpid()) + "_" + std::to_string(counter++) + "_" +
            stem);
}

fs::path write_temp(const std::string& stem, const std::string& contents) {
    const fs::path p = temp_file(stem);
    std::ofstream out(p, std::ios::binary);
    out << contents;
    return p;
}

std::string cli_path() {
    const char* cli = std::getenv("FERMIONIC_CLI");
    REQUIRE(cli != nullptr);
    return cli;
}

int run_cli(const std::string& args) {
    const fs::path log = temp_file("cli.log");
    const std::string cmd = cli_path() + " " + args + " >" + log.string() + " 2>&1";
    const int rc = std::system(cmd.c_str());
    REQUIRE(rc != -1);
    REQUIRE(WIFEXITED(rc));
    return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// header map + rows of doubles
struct Csv {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    double at(std::size_t row, const std::string& column) const {
        for (std::size_t c = 0; c < header.size(); ++c)
            if (header[c] == column) return rows.at(row).at(c);
        FAIL("missing CSV column " + column);
        return 0.0;
    }
};

Csv read_csv(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    Csv csv;
    std::string line;
    REQUIRE(std::getline(in, line));
    std::stringstream hs(line);
    std::string cell;
    while (std::getline(hs, cell, ',')) csv.header.push_back(cell);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream rs(line);
        while (std::getline(rs, cell, ',')) row.push_back(std::stod(cell));
        csv.rows.push_back(std::move(row));
    }
    return csv;
}

const std::string kRotationConfig =
    "dim 2\n"
    "metric identity\n"
    "mode classical\n"
    "rate paper\n"
    "hamiltonian\n"
    "2 1 2 -1\n"
    "end\n"
    "observable\n"
    "1 1 1\n"
    "end\n"
    "time 0 6.283185307179586 1024\n";

}  // namespace

TEST_CASE("config parsing") {
    const ExperimentConfig cfg = parse_text(
        "# comment\n"
        "dim 3\n"
        "metric rows\n"
        "2 1 0\n"
        "1 2 0\n"
        "0 0 1\n"
        "mode quantum\n"
        "rate matched\n"
        "hbar 0.5\n"
        "seed 42\n"
        "time 0 1 8\n"
        "hamiltonian\n"
        "2 1 2 1.5   # inline comment\n"
        "3 1 2 3 0.25\n"
        "end\n"
        "observable\n"
        "1 1 1\n"
        "end\n");
    CHECK(cfg.dim == 3);
    CHECK(!cfg.metric_identity);
    CHECK(cfg.metric().g(0, 1) == 1.0);
    CHECK(cfg.mode == Mode::quantum);
    CHECK(cfg.rate == RateConvention::classical_match);
    CHECK(cfg.hbar == 0.5);
    CHECK(cfg.seed == 42);
    CHECK(cfg.steps == 8);
    REQUIRE(cfg.hamiltonian.size() == 2);
    CHECK(cfg.hamiltonian_multivector().coeff({1, 2}) == 1.5);
    CHECK(cfg.observables.size() == 1);
}

TEST_CASE("duplicate blades are summed on parse") {
    const ExperimentConfig cfg = parse_text(
        "dim 2\n"
        "observable\n"
        "1 1 0.25\n"
        "1 2 1\n"
        "1 1 0.5\n"
        "end\n");
    REQUIRE(cfg.observables.at(0).size() == 2);
    CHECK(cfg.observable_multivector(0).coeff({1}) == 0.75);
}

TEST_CASE("parse, serialize, parse is the identity") {
    const std::string texts[] = {
        kRotationConfig,
        "dim 4\nmetric rows\n2 0 0 0\n0 3 0 0\n0 0 4 0\n0 0 0 5\n"
        "mode quantum\nrate matched\nhbar 0.125\nseed 7\ntime -1 2.5 64\n"
        "hamiltonian\n2 1 2 -0.5\n3 2 3 4 1\nend\n"
        "observable\n0 3.25\nend\n"
        "observable\n2 1 3 1\nend\n",
    };
    for (const auto& text : texts) {
        const ExperimentConfig once = parse_text(text);
        const ExperimentConfig twice = parse_text(serialize_config(once));
        CHECK(once == twice);
        CHECK(serialize_config(once) == serialize_config(twice));
    }
}

TEST_CASE("parse errors carry line numbers") {
    auto line_of = [](const std::string& text) {
        try {
            parse_text(text);
        } catch (const ConfigParseError& e) {
            return e.line;
        }
        return -1;
    };
    CHECK(line_of("dim 0\n") == 1);
    CHECK(line_of("dim 2\nmetric bogus\n") == 2);
    CHECK(line_of("dim 2\n\n# c\nwhat 1\n") == 4);
    CHECK(line_of("dim 2\nobservable\n1 5 1\nend\n") == 3);   // index out of range
    CHECK(line_of("dim 3\nobservable\n2 2 1 1\nend\n") == 3); // not ascending
    CHECK(line_of("dim 2\ntime 1 0 4\n") == 2);               // t1 <= t0
    CHECK(line_of("dim 2\nhamiltonian\n2 1 2 1\n") == 3);     // unterminated block
}

TEST_CASE("cli: check-identities") {
    CHECK(run_cli("check-identities --dim 3 --trials 50 --seed 1 --tol 1e-9") == 0);
    CHECK(run_cli("check-identities --dim 0") == 2);

    const fs::path gram = write_temp("gram.txt", "2 1 0\n1 2 0\n0 0 1\n");
    CHECK(run_cli("check-identities --dim 3 --metric " + gram.string() +
                  " --trials 50 --seed 2 --tol 1e-9") == 0);
}

TEST_CASE("cli: evolve produces a deterministic trajectory") {
    const fs::path cfg = write_temp("rot.cfg", kRotationConfig);
    const fs::path out1 = temp_file("rot1.csv");
    const fs::path out2 = temp_file("rot2.csv");
    REQUIRE(run_cli("evolve " + cfg.string() + " " + out1.string()) == 0);
    REQUIRE(run_cli("evolve " + cfg.string() + " " + out2.string()) == 0);
    const std::string bytes = slurp(out1);
    CHECK(bytes == slurp(out2));
    CHECK(!bytes.empty());
    CHECK(bytes.find("\r") == std::string::npos);  // LF only

    // a full rotation at 1024 steps comes back to e1 within 1e-9
    const Csv csv = read_csv(out1);
    REQUIRE(csv.rows.size() == 1025);
    CHECK(std::abs(csv.at(csv.rows.size() - 1, "e1") - 1.0) <= 1e-9);
    CHECK(std::abs(csv.at(csv.rows.size() - 1, "norm") - 1.0) <= 1e-9);
    CHECK(csv.at(0, "i") == 0.0);
    CHECK(csv.at(0, "int") == 0.0);
}

TEST_CASE("cli: quantum evolution at the paper rate makes half a turn over a full period") {
    std::string text = kRotationConfig;
    const auto pos = text.find("mode classical");
    text.replace(pos, std::string("mode classical").size(), "mode quantum");
    const fs::path cfg = write_temp("rotq.cfg", text);
    const fs::path out = temp_file("rotq.csv");
    REQUIRE(run_cli("evolve " + cfg.string() + " " + out.string()) == 0);
    const Csv csv = read_csv(out);
    CHECK(std::abs(csv.at(csv.rows.size() - 1, "e1") + 1.0) <= 1e-6);
}

TEST_CASE("cli: evolve exit codes") {
    // classical mode rejects a grade-3 hamiltonian term
    const fs::path bad_mode = write_temp("bad_mode.cfg",
                                         "dim 3\nmode classical\n"
                                         "hamiltonian\n2 1 2 1\n3 1 2 3 0.5\nend\n"
                                         "observable\n1 1 1\nend\n"
                                         "time 0 1 8\n");
    const fs::path out = temp_file("out.csv");
    CHECK(run_cli("evolve " + bad_mode.string() + " " + out.string()) == 1);

    // quantum mode rejects hermitian elements (grade 4)
    const fs::path bad_herm = write_temp("bad_herm.cfg",
                                         "dim 4\nmode quantum\n"
                                         "hamiltonian\n4 1 2 3 4 1\nend\n"
                                         "observable\n1 1 1\nend\n"
                                         "time 0 1 8\n");
    CHECK(run_cli("evolve " + bad_herm.string() + " " + out.string()) == 1);

    // parse failures and missing files exit 2
    const fs::path bad_syntax = write_temp("bad_syntax.cfg", "dim 2\nfrequency 3\n");
    CHECK(run_cli("evolve " + bad_syntax.string() + " " + out.string()) == 2);
    CHECK(run_cli("evolve /nonexistent.cfg " + out.string()) == 2);
}

TEST_CASE("cli: deform residuals") {
    // vectors admit a single contraction: first residual is exactly hbar,
    // the first-order one vanishes
    const fs::path cfg = write_temp("deform_vec.cfg",
                                    "dim 2\nmetric identity\n"
                                    "observable\n1 1 1\nend\n"
                                    "observable\n1 1 1\nend\n");
    const fs::path out = temp_file("deform_vec.csv");
    REQUIRE(run_cli("deform " + cfg.string() + " " + out.string() + " --hbars 0,0.5,1") == 0);
    const Csv csv = read_csv(out);
    REQUIRE(csv.rows.size() == 3);
    CHECK(csv.at(0, "residual_wedge") == 0.0);
    CHECK(csv.at(0, "residual_first_order") == 0.0);
    CHECK(csv.at(1, "residual_wedge") == 0.5);
    CHECK(csv.at(1, "residual_first_order") == 0.0);
    CHECK(csv.at(2, "residual_wedge") == 1.0);
    CHECK(csv.at(2, "residual_first_order") == 0.0);

    // A = B = e12: the first-order residual is exactly hbar^2, so a decade in
    // hbar is two decades in the residual
    const fs::path cfg2 = write_temp("deform_e12.cfg",
                                     "dim 2\nmetric identity\n"
                                     "observable\n2 1 2 1\nend\n"
                                     "observable\n2 1 2 1\nend\n");
    const fs::path out2 = temp_file("deform_e12.csv");
    REQUIRE(run_cli("deform " + cfg2.string() + " " + out2.string() +
                    " --hbars 0.1,0.01,0.001") == 0);
    const Csv csv2 = read_csv(out2);
    const double r0 = csv2.at(0, "residual_first_order");
    const double r1 = csv2.at(1, "residual_first_order");
    const double r2 = csv2.at(2, "residual_first_order");
    CHECK(r0 / r1 == Catch::Approx(100.0).epsilon(1e-9));
    CHECK(r1 / r2 == Catch::Approx(100.0).epsilon(1e-9));

    // a single observable block is not enough
    const fs::path cfg3 = write_temp("deform_one.cfg",
                                     "dim 2\nobservable\n1 1 1\nend\n");
    CHECK(run_cli("deform " + cfg3.string() + " " + out2.string() + " --hbars 1") == 2);
}

TEST_CASE("cli: oracle-compare") {
    CHECK(run_cli("oracle-compare --dim 3") == 0);
    CHECK(run_cli("oracle-compare --dim 9") == 2);
}
