#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "commands.hpp"
#include "functions.hpp"

using namespace symdom;
using namespace symdom::cli;
namespace fs = std::filesystem;

namespace {

RunConfig config(const std::string& command) {
    RunConfig c;
    c.command = command;
    return c;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch_dir() {
    fs::path d = fs::temp_directory_path() / ("symdom_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
}

int run_cli(const std::string& args) {
    std::string cmd = std::string(SYMDOM_CLI) + " " + args + " >/dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

double column_max(const Report& r, std::size_t col) {
    double m = 0.0;
    for (const auto& row : r.rows) m = std::max(m, row[col]);
    return m;
}

}  // namespace

TEST_CASE("parameter parsing") {
    ParsedWeight w = parse_weight("beta=0.5,gamma=1");
    CHECK(w.beta_gamma);
    CHECK(w.ball().beta == 0.5);
    CHECK(w.ball().gamma == 1.0);
    ParsedWeight k = parse_weight("k1=0.25,k2=1,k3=0");
    CHECK_FALSE(k.beta_gamma);
    CHECK(k.curved().kappa1 == 0.25);
    CHECK_THROWS_AS(parse_weight("k1=0,beta=1"), Error);
    CHECK_THROWS_AS(parse_weight("delta=1"), Error);
    CHECK_THROWS_AS(parse_weight("beta"), Error);
    CHECK_THROWS_AS(parse_weight("beta=1x"), Error);

    DomainParams2 d = parse_domain("0.25,1,2");
    CHECK(d.a == 0.25);
    CHECK(d.c == 2.0);
    CHECK_THROWS_AS(parse_domain("0,1"), Error);
    CHECK_THROWS_AS(parse_domain("1,1,0"), Error);
    try {
        parse_domain("1,1,0");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("0 ≤ 𝔞 < 𝔟") != std::string::npos);
        CHECK(exit_code_for(e) == ConfigError);
    }
    CHECK(parse_point3("0.1,0.2,0.3")[2] == 0.3);
}

TEST_CASE("gram command") {
    RunConfig c = config("gram");
    c.domain = "0,1,1";
    c.nmax = 8;
    Report r = run_command(c);
    CHECK(r.pass);
    CHECK(r.rows.size() == 9);
    CHECK(column_max(r, 2) <= 1e-9);
    CHECK(column_max(r, 3) <= 1e-9);
    CHECK(r.columns == std::vector<std::string>{"n", "count", "max_offdiag", "max_diag_dev"});
    CHECK(r.rows[4][1] == 3.0);

    c.nmax = 0;
    Report z = run_command(c);
    REQUIRE(z.rows.size() == 1);
    CHECK(z.rows[0][3] <= 1e-12);

    c.dim = 3;
    c.nmax = 4;
    c.weight = "beta=0.5,gamma=0";
    CHECK(run_command(c).pass);
    c.weight = "k1=0,k2=0,k3=0";
    CHECK_THROWS_AS(run_command(c), Error);
    c.dim = 4;
    CHECK_THROWS_AS(run_command(c), Error);
}

TEST_CASE("eigen, kernel and mapcheck commands") {
    RunConfig c = config("eigen");
    c.domain = "0,1,0";
    c.nmax = 6;
    Report e = run_command(c);
    CHECK(e.pass);
    CHECK(e.rows[3][1] == doctest::Approx(-3 * (3 + 2.0)));
    CHECK(column_max(e, 2) <= 1e-8);

    c.command = "kernel";
    c.domain = "0,1,0.5";
    c.weight = "beta=0.5,gamma=0.5";
    c.nmax = 5;
    c.samples = 5;
    Report k = run_command(c);
    CHECK(k.pass);
    CHECK(k.summary["closed_form"] == true);

    c.dim = 3;
    c.weight = "beta=1,gamma=0";
    c.nmax = 3;
    Report k3 = run_command(c);
    CHECK(k3.pass);
    CHECK(k3.summary["closed_form"] == false);

    c.command = "mapcheck";
    c.dim = 2;
    c.domain = "0.25,1,2";
    c.samples = 1000;
    c.seed = 7;
    Report m = run_command(c);
    CHECK(m.pass);
    CHECK(column_max(m, 2) <= 1e-13);
}

TEST_CASE("project and converge commands") {
    RunConfig c = config("project");
    c.domain = "0,1,1";
    c.nmax = 4;
    c.f = "builtin:poly";
    Report p = run_command(c);
    CHECK(p.pass);
    for (const auto& row : p.rows)
        if (row[0] > 2) CHECK(std::abs(row[4]) <= 1e-10);

    c.command = "converge";
    c.f = "builtin:expcos";
    c.domain = "0,1,0.5";
    c.nmax = 16;
    Report v = run_command(c);
    CHECK(v.pass);
    CHECK(v.rows.size() == 17);
    for (std::size_t i = 1; i < v.rows.size(); ++i) CHECK(v.rows[i][1] < v.rows[i - 1][1]);
    CHECK(v.summary["final_l2_error"].get<double>() <= 1e-8);
    CHECK(v.summary["decay_order"].get<double>() >= 4);

    c.f = "builtin:one";
    c.nmax = 3;
    CHECK_FALSE(run_command(c).pass);
    c.f = "builtin:nope";
    CHECK_THROWS_AS(run_command(c), Error);
}

TEST_CASE("tabulated functions") {
    fs::path dir = scratch_dir();
    RunConfig c = config("project");
    c.domain = "0,1,0.5";
    c.nmax = 4;
    c.emit_grid = (dir / "grid.csv").string();
    Report ref = run_command(c);

    std::ifstream grid(c.emit_grid);
    std::ofstream table(dir / "table.csv");
    std::string line;
    std::getline(grid, line);
    CHECK(line.rfind("# symdom", 0) == 0);
    std::getline(grid, line);
    CHECK(line == "u,v,weight");
    table << "u,v,value\n";
    while (std::getline(grid, line)) {
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream row(line);
        double u, v, w;
        row >> u >> v >> w;
        table << format_number(u) << ',' << format_number(v) << ',' << format_number(std::exp(u) * std::cos(v * v))
              << '\n';
    }
    table.close();

    RunConfig t = c;
    t.emit_grid.clear();
    t.f = "table:" + (dir / "table.csv").string();
    Report tab = run_command(t);
    REQUIRE(tab.rows.size() == ref.rows.size());
    for (std::size_t i = 0; i < tab.rows.size(); ++i) CHECK(tab.rows[i][4] == doctest::Approx(ref.rows[i][4]).epsilon(1e-14));

    std::ofstream bad(dir / "bad.csv");
    bad << "0.5,0.5,1\n";
    bad.close();
    t.f = "table:" + (dir / "bad.csv").string();
    CHECK_THROWS_AS(run_command(t), Error);
    t.f = "table:" + (dir / "missing.csv").string();
    CHECK_THROWS_AS(run_command(t), Error);
    fs::remove_all(dir);
}

TEST_CASE("localize command") {
    RunConfig c = config("localize");
    c.nmax = 16;
    c.samples = 3000;
    Report r = run_command(c);
    CHECK(r.pass);
    CHECK(r.rows.size() == 10);
    CHECK(r.rows[0][3] == 1.0);
    CHECK(r.summary["decay_ratio"].get<double>() >= 1e2);
    c.weight = "beta=1,gamma=0";
    CHECK_THROWS_AS(run_command(c), Error);
    c.weight = "beta=0,gamma=0";
    c.bins = 0;
    CHECK_THROWS_AS(run_command(c), Error);
}

TEST_CASE("report formats") {
    CHECK(format_number(0.1) == "0.10000000000000001");
    CHECK(format_number(2.0) == "2");
    CHECK(format_number(std::nan("")) == "nan");
    CHECK(format_number(-INFINITY) == "-inf");

    Report r;
    r.command = "demo";
    r.columns = {"a", "b"};
    r.rows = {{1.0, 0.5}, {2.0, NAN}};
    r.summary = {{"x", 1}};
    std::string csv = to_csv(r);
    CHECK(csv == "# symdom " SYMDOM_VERSION "\na,b\n1,0.5\n2,nan\n");
    CHECK(csv.find('\r') == std::string::npos);

    auto j = nlohmann::json::parse(to_json(r));
    CHECK(j["version"] == SYMDOM_VERSION);
    CHECK(j["command"] == "demo");
    CHECK(j["pass"] == true);
    CHECK(j["rows"][1][1] == "nan");
    CHECK(j["columns"].size() == 2);
}

TEST_CASE("determinism and atomic writes") {
    RunConfig c = config("mapcheck");
    c.samples = 500;
    c.seed = 11;
    CHECK(to_csv(run_command(c)) == to_csv(run_command(c)));
    c.command = "kernel";
    c.nmax = 3;
    c.samples = 4;
    CHECK(to_json(run_command(c)) == to_json(run_command(c)));

    fs::path dir = scratch_dir();
    fs::path out = dir / "report.csv";
    write_atomic(out.string(), "first\n");
    write_atomic(out.string(), "second\n");
    CHECK(slurp(out) == "second\n");
    CHECK_FALSE(fs::exists(dir / "report.csv.tmp"));
    CHECK_THROWS_AS(write_atomic((dir / "no" / "such" / "dir.csv").string(), "x"), Error);
    fs::remove_all(dir);
}

TEST_CASE("executable exit codes") {
    fs::path dir = scratch_dir();
    CHECK(run_cli("gram --domain 0,1,1 --weight beta=0,gamma=0 --nmax 8") == Pass);
    CHECK(run_cli("gram --domain 1,1,0") == ConfigError);
    CHECK(run_cli("gram --domain 0,1") == ConfigError);
    CHECK(run_cli("gram --format xml") == ConfigError);
    CHECK(run_cli("") == ConfigError);
    CHECK(run_cli("converge --f builtin:one --nmax 3") == ToleranceBreach);
    CHECK(run_cli("--version") == Pass);

    fs::path a = dir / "a.csv", b = dir / "b.csv";
    CHECK(run_cli("mapcheck --domain 0.25,1,2 --samples 1000 --seed 7 --out " + a.string()) == Pass);
    CHECK(run_cli("mapcheck --domain 0.25,1,2 --samples 1000 --seed 7 --out " + b.string()) == Pass);
    CHECK(slurp(a) == slurp(b));
    CHECK(slurp(a).rfind("# symdom", 0) == 0);

    std::ofstream cfg(dir / "run.ini");
    cfg << "domain=0,1,0.5\nnmax=4\nformat=json\n";
    cfg.close();
    fs::path j = dir / "c.json";
    CHECK(run_cli("gram --config " + (dir / "run.ini").string() + " --out " + j.string()) == Pass);
    auto doc = nlohmann::json::parse(slurp(j));
    CHECK(doc["config"]["domain"] == "0,1,0.5");
    CHECK(doc["rows"].size() == 5);
    fs::remove_all(dir);
}
