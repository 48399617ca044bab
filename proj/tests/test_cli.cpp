#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args) {
    const std::string command = std::string(SPECBOUND_CLI) + " " + args + " 2>/dev/null";
    Run result;
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buffer[4096];
    while (std::size_t got = fread(buffer, 1, sizeof buffer, pipe)) result.out.append(buffer, got);
    const int status = pclose(pipe);
    result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("specbound_cli_" + std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name, const std::string& body) const {
        const auto p = path / name;
        std::ofstream(p) << body;
        return p.string();
    }
    std::string operator/(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& p) {
    std::ifstream in(p);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST_CASE("gen and spectrum") {
    const auto gen = run("gen --family grid --size 3");
    CHECK(gen.code == 0);
    CHECK(gen.out.rfind("9 12\n", 0) == 0);

    TempDir tmp;
    const std::string graph = tmp.file("p2.txt", "2 1\n0 1\n");
    const auto spectrum = run("spectrum --graph " + graph);
    CHECK(spectrum.code == 0);
    CHECK(spectrum.out.rfind("index,eigenvalue\n", 0) == 0);
    CHECK(spectrum.out.find("\n2,2") != std::string::npos);
}

TEST_CASE("spread modes") {
    const auto eps = run("spread epsilon --family path --size 3 --r 2");
    REQUIRE(eps.code == 0);
    CHECK(nlohmann::json::parse(eps.out)["epsilon"].get<double>() == doctest::Approx(1.0 / (2.0 * std::sqrt(3.0))));

    const auto gap = run("spread gap --family path --size 3 --r 3");
    REQUIRE(gap.code == 0);
    const auto j = nlohmann::json::parse(gap.out);
    CHECK(j["dual_value"].get<double>() == doctest::Approx(std::sqrt(17.0) / 9.0).epsilon(1e-3));
    CHECK(j["gap"].get<double>() <= 1e-2);
    CHECK(j["mode"] == "exact");
    for (const char* key : {"r", "epsilon", "dual_value", "gap", "iterations", "mode"}) CHECK(j.contains(key));

    const auto dual = run("spread dual --family path --size 2 --r 2");
    REQUIRE(dual.code == 0);
    CHECK(nlohmann::json::parse(dual.out)["congestion"].get<double>() == doctest::Approx(2.0));

    const auto primal = run("spread primal --family complete --size 4 --r 2");
    REQUIRE(primal.code == 0);
    CHECK(nlohmann::json::parse(primal.out)["epsilon"].get<double>() == doctest::Approx(0.25).epsilon(1e-3));
}

TEST_CASE("flow modes") {
    TempDir tmp;
    const std::string graph = tmp.file("star.txt", "5 4\n0 1\n0 2\n0 3\n0 4\n");
    const std::string flow = tmp.file("flow.txt", "1 1 0 2\n1 3 0 4\n");
    const auto inter = run("flow inter --graph " + graph + " --flow " + flow);
    REQUIRE(inter.code == 0);
    CHECK(nlohmann::json::parse(inter.out)["intersection_number"].get<double>() == 2.0);

    const auto con = run("flow congestion --graph " + graph + " --flow " + flow);
    CHECK(nlohmann::json::parse(con.out)["congestion"].get<double>() == 8.0);

    const auto round = run("flow round --graph " + graph + " --flow " + flow + " --seed 4");
    CHECK(round.code == 0);

    const std::string mu = tmp.file("mu.txt", "1 1 2\n");
    const std::string wrong = tmp.file("mu_wrong.txt", "1 1 3\n");
    CHECK(run("flow check --graph " + graph + " --flow " + flow + " --distribution " + mu).code == 3);
    const std::string one = tmp.file("one.txt", "1 1 0 2\n");
    CHECK(run("flow check --graph " + graph + " --flow " + one + " --distribution " + mu).code == 0);
    CHECK(run("flow check --graph " + graph + " --flow " + one + " --distribution " + wrong).code == 3);

    const std::string constants = tmp.file("c.txt", "C1 = 1\nc0 = 1\n");
    const auto lower = run("flow lower --graph " + graph + " --distribution " + mu + " --constants " + constants +
                           " --overlap bruteforce");
    REQUIRE(lower.code == 0);
    const auto lj = nlohmann::json::parse(lower.out);
    CHECK(lj["c"].get<double>() == 243.0);
    CHECK(lj["overlap_lower"].get<double>() == 0.0);
    CHECK(lj["constants"].get<std::string>().find("C1") != std::string::npos);

    const std::string bad_path = tmp.file("bad.txt", "1 1 2\n");
    CHECK(run("flow inter --graph " + graph + " --flow " + bad_path).code == 1);
}

TEST_CASE("certify and verify") {
    TempDir tmp;
    const auto cert = run("certify --family grid --size 8 --k 2 --uniform-weights --exact --out " + (tmp / "c.json"));
    REQUIRE(cert.code == 0);
    const auto j = nlohmann::json::parse(slurp(tmp / "c.json"));
    for (const char* key : {"k", "r", "epsilon", "beta", "seed", "heavy_set", "sets", "vectors", "ratios",
                            "certified_bound", "exact_lambda_k", "flags"})
        CHECK(j.contains(key));
    CHECK(j["certified_bound"].get<double>() >= j["exact_lambda_k"].get<double>());

    const auto ok = run("verify --family grid --size 8 --exact --certificate " + (tmp / "c.json"));
    CHECK(ok.code == 0);
    CHECK(nlohmann::json::parse(ok.out)["ok"] == true);

    auto tampered = j;
    tampered["certified_bound"] = j["certified_bound"].get<double>() / 2.0;
    const std::string bad = tmp.file("bad.json", tampered.dump());
    CHECK(run("verify --family grid --size 8 --certificate " + bad).code == 3);
    CHECK(run("verify --family grid --size 9 --certificate " + (tmp / "c.json")).code == 1);
}

TEST_CASE("experiment writes csv and svg") {
    TempDir tmp;
    const std::string out = tmp / "report";
    const auto a = run("experiment --family grid --size 8 --k-min 2 --k-max 4 --uniform-weights --no-dual --out " + out);
    REQUIRE(a.code == 0);
    const std::string csv = slurp(out + "/results.csv");
    CHECK(csv.rfind("family,n,k,lambda_exact,cert_bound,epsilon,beta,dual_value,gap,flags\n", 0) == 0);
    CHECK(csv.find("\ngrid,64,2,") != std::string::npos);
    CHECK(fs::exists(out + "/scaling.svg"));

    const std::string again = tmp / "again";
    run("experiment --family grid --size 8 --k-min 2 --k-max 4 --uniform-weights --no-dual --out " + again);
    CHECK(slurp(again + "/results.csv") == csv);
}

TEST_CASE("exit codes") {
    CHECK(run("gen --family grid --size 0").code == 1);
    CHECK(run("gen --family hypercube --size 3").code == 1);
    CHECK(run("spread epsilon --family path --size 3 --r 9").code == 1);
    CHECK(run("spread sideways --family path --size 3 --r 2").code == 1);
    CHECK(run("certify --family grid --size 4 --k 2 --seeds 1,x").code == 1);
    CHECK(run("spectrum --graph /nonexistent/graph.txt").code == 1);
    CHECK(run("--no-such-flag").code == 1);

    TempDir tmp;
    const std::string mu = tmp.file("mu.txt", "1 0 1 2 3 4\n");
    CHECK(run("flow lower --family grid --size 9 --distribution " + mu + " --overlap bruteforce").code == 2);
    CHECK(run("flow lower --family grid --size 9 --distribution " + mu).code == 0);
}
