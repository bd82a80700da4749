#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct Run {
    int status = -1;
    std::string out;
};

Run run(const std::string& args, const fs::path& dir)
{
    fs::create_directories(dir);
    const fs::path log = dir / "stdout.txt";
    const std::string cmd = "cd '" + dir.string() + "' && '" YMH_CLI "' " + args + " > '"
                            + log.string() + "' 2>&1";
    const int raw = std::system(cmd.c_str());
    Run r;
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    std::ifstream in(log);
    std::stringstream ss;
    ss << in.rdbuf();
    r.out = ss.str();
    return r;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::vector<double>> csv_rows(const fs::path& p)
{
    std::vector<std::vector<double>> rows;
    std::ifstream in(p);
    std::string line;
    bool header = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        if (!header) {
            header = true;
            continue;
        }
        std::vector<double> row;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ','))
            row.push_back(std::stod(cell));
        rows.push_back(row);
    }
    return rows;
}

fs::path scratch(const std::string& name)
{
    const fs::path p = fs::path(YMH_SCRATCH) / name;
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

} // namespace

TEST_CASE("curvature reports the critical vacuum")
{
    const auto dir = scratch("curvature");
    const auto r = run("curvature --E 10 --g 1", dir);
    REQUIRE(r.status == 0);
    const auto pos = r.out.find("v_c=");
    REQUIRE(pos != std::string::npos);
    const double vc = std::stod(r.out.substr(pos + 4));
    CHECK(std::abs(vc - std::pow(10.0 / 6.0, 0.25)) < 1e-12);
    CHECK(std::abs(vc - 1.1362) < 1e-4);
}

TEST_CASE("exit codes")
{
    const auto dir = scratch("exit");
    CHECK(run("curvature --g -1", dir).status == 2);
    CHECK(run("poincare --v 0 --seeds builtin", dir).status == 2);
    CHECK(run("--no-such-flag curvature", dir).status == 2);
    CHECK(run("poincare --seeds does_not_exist.txt", dir).status == 2);
    CHECK(run("spectrum --n-levels 100 --max-dim 50", dir).status == 3);
    CHECK(run("spectrum --n-levels 10 --out short", dir).status == 0);
    CHECK(run("pspacing --spectra short/spectrum_v1_ee.csv", dir).status == 4);
}

TEST_CASE("poincare: axis seed stays at the origin and output is deterministic")
{
    const auto dir = scratch("poincare");
    {
        std::ofstream seeds(dir / "seeds.txt");
        seeds << "axis 0 0\nprobe 0.1 0.3\n";
    }
    const std::string args = "poincare --seeds seeds.txt --t-max 200 --n-crossings 20 --dump-trajectory ";
    REQUIRE(run(args + "--out a", dir).status == 0);
    REQUIRE(run(args + "--out b", dir).status == 0);

    const auto axis = csv_rows(dir / "a" / "poincare_v1_axis.csv");
    CHECK(axis.size() == 20);
    for (const auto& row : axis) {
        REQUIRE(row.size() == 3);
        CHECK(row[1] == 0.0);
        CHECK(row[2] == 0.0);
    }
    for (const char* f : {"poincare_v1_axis.csv", "poincare_v1_probe.csv", "trajectory_v1_probe.csv"})
        CHECK(slurp(dir / "a" / f) == slurp(dir / "b" / f));

    const auto traj = csv_rows(dir / "a" / "trajectory_v1_probe.csv");
    REQUIRE(!traj.empty());
    for (const auto& row : traj)
        CHECK(std::abs(row[5] - 10.0) < 1e-5);
}

TEST_CASE("the recorded config line reproduces a run")
{
    const auto dir = scratch("config");
    REQUIRE(run("poincare --v 1.2 --t-max 100 --n-crossings 10 --out first", dir).status == 0);
    const std::string text = slurp(dir / "first" / "poincare_v1.2_chaos_probe.csv");
    const auto start = text.find("# config ");
    REQUIRE(start != std::string::npos);
    const auto end = text.find('\n', start);
    std::stringstream fields(text.substr(start + 9, end - start - 9));
    std::ofstream cfg(dir / "run.cfg");
    std::string kv;
    while (fields >> kv)
        if (kv.rfind("command=", 0) != 0)
            cfg << kv << '\n';
    cfg.close();
    REQUIRE(run("poincare --config run.cfg --out second", dir).status == 0);
    for (const auto& e : fs::directory_iterator(dir / "first"))
        if (e.path().extension() == ".csv")
            CHECK(slurp(e.path()) == slurp(dir / "second" / e.path().filename()));
}

TEST_CASE("spectrum with the quartic term switched off is the oscillator ladder")
{
    const auto dir = scratch("ladder");
    REQUIRE(run("spectrum --v 1.1 --n-levels 12 --coupling-scale 0", dir).status == 0);
    const double w = std::sqrt(2.0) * 1.1;
    for (const char* block : {"ee", "oo", "eo", "oe"}) {
        const auto rows = csv_rows(dir / (std::string("spectrum_v1.1_") + block + ".csv"));
        REQUIRE(rows.size() == 12);
        for (const auto& row : rows) {
            const double n = row[1] / w;
            CHECK(std::abs(n - std::round(n)) < 1e-12);
        }
    }
    const std::string cert = slurp(dir / "certificate_v1.1.txt");
    CHECK(cert.find("ee.status=certified") != std::string::npos);
}

TEST_CASE("pipeline writes one summary row per v")
{
    const auto dir = scratch("pipeline");
    const auto r = run("pipeline --v-list 1,1.2 --n-levels 30 --digits 6 --exchange-diagnostic", dir);
    REQUIRE(r.status == 0);
    const auto rows = csv_rows(dir / "summary.csv");
    REQUIRE(rows.size() == 2);
    CHECK(rows[0][0] == 1.0);
    CHECK(rows[1][0] == 1.2);
    for (const auto& row : rows) {
        CHECK(row[1] >= 0.0);
        CHECK(row[1] <= 1.0);
        CHECK(row[2] > 0.0);
    }
    CHECK(csv_rows(dir / "summary_exchange.csv").size() == 2);

    const auto hist = csv_rows(dir / "pspacing_v1.csv");
    double integral = 0.0;
    for (const auto& row : hist)
        integral += row[1] * 0.25;
    CHECK(integral == doctest::Approx(1.0));
    REQUIRE(run("pspacing --spectra spectrum_v1_ee.csv,spectrum_v1_oo.csv,spectrum_v1_eo.csv,"
                "spectrum_v1_oe.csv --out again",
                dir)
                .status
            == 0);
    const std::string again = slurp(dir / "again" / "brody_files.txt");
    const std::string first = slurp(dir / "brody_v1.txt");
    auto q_line = [](const std::string& t) { return t.substr(t.find("brody_q="), t.find('\n', t.find("brody_q=")) - t.find("brody_q=")); };
    CHECK(q_line(again) == q_line(first));
}
