#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "robin/io.hpp"

namespace fs = std::filesystem;

namespace {

const std::string cli = ROBIN_CLI;
const std::string data_dir = ROBIN_TEST_DATA;

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args)
{
    Run r;
    const std::string cmd = cli + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    for (std::size_t n; (n = fread(buf, 1, sizeof buf, pipe)) > 0;) r.out.append(buf, n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / "robin_cli_test";
    fs::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST_CASE("validate")
{
    const Run disk = run("validate --builtin disk");
    CHECK(disk.code == 0);
    CHECK(disk.out.find("no corners, γ_max = 1") != std::string::npos);
    CHECK(disk.out.find("all hypotheses hold") != std::string::npos);

    CHECK(run("validate --domain " + data_dir + "/disk.json").code == 0);
    CHECK(run("validate --domain " + data_dir + "/two_disks.json").code == 0);

    const Run l = run("validate --domain " + data_dir + "/l_shape.json");
    CHECK(l.code == 1);
    CHECK(l.out.find("convex corner") != std::string::npos);

    const Run bad = run("validate --domain " + data_dir + "/malformed.json");
    CHECK(bad.code == 2);
    CHECK(bad.out.find("malformed.json:3:") != std::string::npos);
    const Run unknown = run("validate --domain " + data_dir + "/unknown_key.json");
    CHECK(unknown.code == 2);
    CHECK(unknown.out.find("$.arcs[0].colour") != std::string::npos);

    const fs::path report = scratch("report.json");
    CHECK(run("validate --builtin ellipse --out " + report.string()).code == 0);
    const auto j = nlohmann::json::parse(slurp(report));
    CHECK(j.at("passed") == true);
    CHECK(j.at("loop_areas")[0].get<double>() == doctest::Approx(2.0 * 3.141592653589793).epsilon(1e-9));
}

TEST_CASE("bracket")
{
    const Run r = run("bracket --builtin disk --beta 100");
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    const double exact = -10100.50252544812;
    CHECK(j.at("lower").get<double>() <= exact);
    CHECK(exact <= j.at("upper").get<double>());
    CHECK(j.at("mode") == "sharp");
    CHECK(j.at("arcs")[0].at("M") == 5);

    const Run low = run("bracket --builtin disk --beta 1");
    CHECK(low.code == 1);
    CHECK(low.out.find("3K+1+4/(3a)") != std::string::npos);

    CHECK(run("bracket --builtin disk --beta 100 --mode paper").code == 1);
    const Run closed = run("bracket --builtin disk --beta 300 --mode paper");
    REQUIRE(closed.code == 0);
    const auto p = nlohmann::json::parse(closed.out);
    CHECK(p.at("mode") == "closed-form");
    CHECK(p.at("beta_a").is_number());
    CHECK(p.at("lower").get<double>() <= p.at("upper").get<double>());

    CHECK(run("bracket --builtin disk --beta 100 --mode fancy").code == 2);
    CHECK(run("bracket --builtin disk").code == 2);
    CHECK(run("bracket --builtin disk --beta 100 --a 0.5").code == 1);
    CHECK(run("bracket --builtin disk --beta 100 --a 0.03 --trace-rule elementary").code == 0);

    const fs::path csv = scratch("append.csv");
    fs::remove(csv);
    CHECK(run("bracket --builtin disk --beta 100 --append-csv " + csv.string()).code == 0);
    CHECK(run("bracket --builtin disk --beta 200 --append-csv " + csv.string()).code == 0);
    std::istringstream in(slurp(csv));
    const auto rows = robin::read_csv(in);
    REQUIRE(rows.size() == 2);
    CHECK(rows[1].beta == 200.0);
}

TEST_CASE("sweep, fit and plot")
{
    const fs::path csv = scratch("sweep.csv");
    const fs::path fit = scratch("fit.json");
    const fs::path svg = scratch("sweep.svg");
    const Run r = run("sweep --builtin disk --beta-range 20:320:10 --methods bracket,bessel --out " + csv.string() +
                      " --fit-out " + fit.string() + " --plot " + svg.string());
    REQUIRE(r.code == 0);
    std::istringstream in(slurp(csv));
    const auto rows = robin::read_csv(in);
    CHECK(rows.size() == 20);
    for (const auto& row : rows) CHECK(row.ok);

    const auto f = nlohmann::json::parse(slurp(fit));
    CHECK(f.at("fits").at("bessel").at("c2").get<double>() == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(f.at("fits").at("bessel").at("c1").get<double>() == doctest::Approx(1.0).epsilon(5e-2));

    const std::string plot = slurp(svg);
    CHECK(plot.find("<svg") != std::string::npos);
    CHECK(plot.find("bracket width") != std::string::npos);

    const Run refit = run("fit --csv " + csv.string() + " --gamma-max 1");
    REQUIRE(refit.code == 0);
    CHECK(nlohmann::json::parse(refit.out).at("fits").at("bessel").at("c2").get<double>() ==
          doctest::Approx(1.0).epsilon(1e-3));

    CHECK(run("sweep --builtin disk --beta-range 320:20:10").code == 2);
    CHECK(run("sweep --builtin disk --beta-range 20:320").code == 2);
    CHECK(run("sweep --builtin disk --beta 20 --methods fd").code == 2);
    CHECK(run("fit --csv " + (data_dir + "/missing.csv")).code != 0);
}

TEST_CASE("sweep output is reproducible")
{
    const Run a = run("sweep --builtin disk --beta 50 --beta 500 --methods bracket --no-header");
    const Run b = run("sweep --builtin disk --beta 50 --beta 500 --methods bracket --no-header --serial");
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.rfind("beta,lower,upper", 0) == 0);
    const Run h = run("sweep --builtin disk --beta 50 --methods bracket");
    CHECK(h.out.rfind("# robin-bracket sweep, generated ", 0) == 0);
}

TEST_CASE("disk-exact and usage")
{
    const Run r = run("disk-exact --beta 100");
    CHECK(r.code == 0);
    CHECK(r.out.find("-10100.50252544812") != std::string::npos);
    CHECK(run("disk-exact --beta 100 --radius -1").code != 0);
    CHECK(run("").code == 2);
    CHECK(run("frobnicate").code == 2);
    CHECK(run("--help").code == 0);
}
