#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "moscal/cli.hpp"
#include "moscal/json_io.hpp"

using namespace moscal;

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_command(args, out, err);
    return {code, out.str(), err.str()};
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name, const std::string& content = "")
        : path("cli_test_" + name) {
        if (!content.empty()) {
            std::ofstream f(path);
            f << content;
        }
    }
    ~TempFile() { std::remove(path.c_str()); }
    std::string read() const {
        std::ifstream f(path);
        std::stringstream ss;
        ss << f.rdbuf();
        return ss.str();
    }
};

const char* kMinMinInstance =
    R"({"p":2,"min":[1,2],"max":[],"points":[{"id":"a","y":[1,4]},{"id":"b","y":[2,2]},{"id":"c","y":[4,1]}]})";

}  // namespace

TEST_CASE("bound prints the closed form") {
    RunResult r = run({"bound", "--family", "qnorm", "--q", "2", "-p", "4"});
    CHECK(r.code == 0);
    CHECK(r.out == "2\n");

    RunResult r1 = run({"bound", "--family", "qnorm", "--q", "1", "-p", "3"});
    CHECK(r1.out == "3\n");

    RunResult raug = run({"bound", "--family", "augtcheb", "--rho", "1", "-p", "3"});
    CHECK(raug.out == "2\n");
}

TEST_CASE("quality prints the minimal alpha") {
    TempFile inst("quality.json", kMinMinInstance);
    RunResult r = run({"quality", inst.path, "--subset", "b"});
    CHECK(r.code == 0);
    CHECK(r.out == "2\n");

    RunResult rj = run({"quality", inst.path, "--subset", "b", "--json"});
    CHECK(rj.code == 0);
    auto cert = certificate_from_json(nlohmann::json::parse(rj.out));
    CHECK(cert.value == 2.0);
}

TEST_CASE("validate reports domain errors with the module error name") {
    TempFile bad("bad.json", R"({"p":2,"min":[1,2],"max":[],"points":[{"id":"a","y":[0,2]}]})");
    RunResult r = run({"validate", bad.path});
    CHECK(r.code == 1);
    CHECK(r.err.find("NonPositiveComponent") != std::string::npos);

    TempFile good("good.json", kMinMinInstance);
    RunResult ok = run({"validate", good.path});
    CHECK(ok.code == 0);
    CHECK(ok.out == "ok: p=2 points=3\n");

    RunResult missing = run({"validate", "no_such_file.json"});
    CHECK(missing.code == 1);
    CHECK(missing.err.find("FileError") != std::string::npos);
}

TEST_CASE("usage errors exit with 2") {
    RunResult r = run({"bound", "--no-such-flag"});
    CHECK(r.code == 2);
    RunResult r2 = run({"frobnicate"});
    CHECK(r2.code == 2);
    RunResult r3 = run({"levelsup", "--family", "wsum", "--ybar", "1,1", "--sampled"});
    CHECK(r3.code == 2);  // --sampled without --seed
}

TEST_CASE("pareto prints the nondominated ids") {
    TempFile inst("pareto.json",
                  R"({"p":2,"min":[1,2],"max":[],"points":[{"id":"a","y":[1,3]},{"id":"b","y":[2,2]},{"id":"c","y":[3,1]},{"id":"d","y":[2.5,2.5]}]})");
    RunResult r = run({"pareto", inst.path});
    CHECK(r.code == 0);
    CHECK(r.out == "a\nb\nc\n");
}

TEST_CASE("supported sweeps a grid") {
    TempFile inst("supported.json",
                  R"({"p":2,"min":[1,2],"max":[],"points":[{"id":"a","y":[1,3]},{"id":"b","y":[2,2]},{"id":"c","y":[3,1]},{"id":"d","y":[2.5,2.5]}]})");
    RunResult r = run({"supported", inst.path, "--family", "wsum", "--grid", "100"});
    CHECK(r.code == 0);
    CHECK(r.out == "a\nb\nc\n");
}

TEST_CASE("levelsup closed form and sampled") {
    RunResult closed = run({"levelsup", "--family", "qnorm", "--q", "1", "--ybar", "1,3"});
    CHECK(closed.code == 0);
    CHECK(closed.out == "4\n");

    RunResult sampled = run({"levelsup", "--family", "wsum", "--ybar", "1,1", "--sampled",
                             "--budget", "2000", "--cap", "1e6", "--seed", "7", "--max", "2"});
    CHECK(sampled.code == 0);
    CHECK(sampled.out == "inf\n");
}

TEST_CASE("beta estimates the weighted bound") {
    RunResult r = run({"beta", "--family", "wsum", "-p", "2", "--seed", "5"});
    CHECK(r.code == 0);
    CHECK(r.out == "2\n");

    RunResult rmax = run({"beta", "--family", "wsum", "-p", "2", "--max", "2", "--seed", "5",
                          "--ray-budget", "500", "--ybar-budget", "4"});
    CHECK(rmax.code == 0);
    CHECK(rmax.out == "inf\n");
}

TEST_CASE("transform writes the flipped instance") {
    TempFile inst("transform_in.json", kMinMinInstance);
    TempFile out("transform_out.json");
    RunResult r = run({"transform", inst.path, "--gamma", "1,2", "-o", out.path});
    CHECK(r.code == 0);
    Instance flipped = instance_from_json(nlohmann::json::parse(out.read()));
    CHECK(flipped.decomposition().pure_max());
    CHECK(flipped[0].image == PointImage({1, 0.25}));

    // round-trip closure: every emitted instance is accepted downstream
    RunResult validated = run({"validate", out.path});
    CHECK(validated.code == 0);
    RunResult front = run({"pareto", out.path});
    CHECK(front.code == 0);
    CHECK(front.out == "a\nb\nc\n");  // dominance is preserved by the flip

    // flipping back restores the original decomposition
    TempFile back("transform_back.json");
    RunResult r2 = run({"transform", out.path, "--gamma", "1,2", "-o", back.path});
    CHECK(r2.code == 0);
    Instance restored = instance_from_json(nlohmann::json::parse(back.read()));
    CHECK(restored.decomposition().pure_min());
}

TEST_CASE("adversary emits certificates that reload") {
    TempFile out("adversary_out.json");
    RunResult r = run({"adversary", "finite", "--count", "2", "-p", "2", "--alpha", "3", "-o",
                       out.path});
    CHECK(r.code == 0);
    AdversarialCertificate cert =
        adversarial_from_json(nlohmann::json::parse(out.read()));
    CHECK(cert.instance.size() == 3);
    CHECK(cert.kind == AdversaryKind::FiniteScalarization);

    TempFile out2("adversary_out2.json");
    RunResult r2 = run({"adversary", "normmin", "--family", "qnorm", "--q", "1", "-p", "2",
                        "--eps", "0.5", "-o", out2.path});
    CHECK(r2.code == 0);

    TempFile out3("adversary_out3.json");
    RunResult r3 = run({"adversary", "mixedmax", "-k", "1", "-p", "2", "--alpha", "2", "-o",
                        out3.path});
    CHECK(r3.code == 0);
    CHECK(r3.out.find("quality=3") != std::string::npos);
}

TEST_CASE("sweep and plotdata are deterministic") {
    TempFile csv1("sweep1.csv"), csv2("sweep2.csv");
    std::vector<std::string> args = {"sweep",  "--family", "wsum", "--pmin", "2",
                                     "--pmax", "3",        "--trials", "4",  "--grid",
                                     "16",     "--seed",   "11",   "-o",     csv1.path};
    RunResult r1 = run(args);
    CHECK(r1.code == 0);
    args.back() = csv2.path;
    RunResult r2 = run(args);
    CHECK(r2.code == 0);
    CHECK(csv1.read() == csv2.read());
    CHECK(csv1.read().rfind("trial,p,decomposition,family,grid_m,min_alpha,closed_form_bound,seed",
                            0) == 0);

    // sweep without a seed is a usage error
    RunResult noseed = run({"sweep", "--family", "wsum", "--trials", "2", "-o", "x.csv"});
    CHECK(noseed.code == 2);

    TempFile dat("plot.dat");
    RunResult rp = run({"plotdata", csv1.path, "-o", dat.path});
    CHECK(rp.code == 0);
    std::string content = dat.read();
    CHECK(content.rfind("# trial p grid_m min_alpha closed_form_bound", 0) == 0);
    // four data rows plus header
    CHECK(std::count(content.begin(), content.end(), '\n') == 5);
}

TEST_CASE("run report captures outputs") {
    TempFile report("report.json");
    RunResult r = run({"--report", report.path, "bound", "--family", "qnorm", "--q", "2",
                       "-p", "4"});
    CHECK(r.code == 0);
    nlohmann::json j = nlohmann::json::parse(report.read());
    CHECK(j["outputs"]["stdout"] == "2\n");
    CHECK(j["command"].get<std::string>().rfind("moscal", 0) == 0);
    CHECK(j.contains("timing_seconds"));
}
