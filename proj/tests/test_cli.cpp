#include <doctest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dext/json_io.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kEx1 = "--n 2 --d 2 --M 'P(0,1)+P(2,1)'";
const std::string kEx2 = "--n 3 --d 2 --M 'P(0,1)+P(0,2)+P(3,1)'";

struct Run {
    int code = -1;
    std::string out;
};

// Runs the CLI with the given arguments, capturing stdout (stderr dropped).
Run run(const std::string& args) {
    const std::string cmd = std::string(DEXT_CLI) + " " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("dext_cli_test_" + std::to_string(getpid())) / name;
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

dext::Json json_file(const fs::path& p) { return dext::Json::parse(slurp(p)); }

std::string golden(const std::string& f) { return std::string(DEXT_GOLDEN_DIR) + "/" + f; }
std::string presentation(const std::string& f) { return std::string(DEXT_DATA_DIR) + "/presentations/" + f; }

}  // namespace

TEST_CASE("build writes the object table and AR quiver") {
    for (auto [nd, count] : {std::pair{"--n 2 --d 2", 8}, std::pair{"--n 3 --d 2", 15}, std::pair{"--n 2 --d 1", 5}}) {
        const fs::path dir = scratch("build");
        const Run r = run(std::string("build ") + nd + " --out-dir " + dir.string());
        CHECK(r.code == 0);
        CHECK(json_file(dir / "objects.json").size() == static_cast<std::size_t>(count));
        CHECK(slurp(dir / "ar.dot").rfind("digraph", 0) == 0);
    }
    const fs::path dir = scratch("build_golden");
    CHECK(run("build --n 2 --d 2 --golden-ar " + golden("ar_2_2.json")).code == 0);
    CHECK(run("build --n 3 --d 2 --golden-ar " + golden("ar_3_2.json")).code == 0);
    CHECK(run("build --n 3 --d 2 --golden-ar " + golden("ar_2_2.json")).code == 1);
}

TEST_CASE("output is byte-identical across runs") {
    const fs::path a = scratch("det_a"), b = scratch("det_b");
    for (const auto& cmd : {"build", "quotient", "lambda", "verify"}) {
        CHECK(run(std::string(cmd) + " " + kEx2 + " --out-dir " + a.string()).code == 0);
        CHECK(run(std::string(cmd) + " " + kEx2 + " --out-dir " + b.string()).code == 0);
    }
    std::size_t files = 0;
    for (const auto& e : fs::directory_iterator(a)) {
        CHECK(slurp(e.path()) == slurp(b / e.path().filename()));
        ++files;
    }
    CHECK(files == 6);
}

TEST_CASE("quotient: golden figures, non-cluster-tilting guard") {
    const fs::path dir = scratch("quotient");
    CHECK(run("quotient " + kEx1 + " --out-dir " + dir.string() + " --golden-quotient " +
              golden("quotient_ar_2_2.json"))
              .code == 0);
    CHECK(json_file(dir / "homs.json").size() == 36);
    CHECK(run("quotient " + kEx2 + " --golden-quotient " + golden("quotient_ar_3_2.json")).code == 0);
    // A corrupted golden file is reported as a verification failure.
    dext::Json bad = json_file(golden("quotient_ar_2_2.json"));
    bad["arrows"].erase(bad["arrows"].begin());
    std::ofstream(dir / "bad.json") << bad.dump();
    CHECK(run("quotient " + kEx1 + " --golden-quotient " + (dir / "bad.json").string()).code == 1);
    // Non-cluster-tilting M is refused unless forced.
    CHECK(run("quotient --n 2 --d 2 --M 'P(0,1)'").code == 2);
    CHECK(run("quotient --n 2 --d 2 --M 'P(0,1)' --force").code == 0);
    CHECK(run("ct-check --n 2 --d 2 --M 'P(0,1)'").code == 1);
    CHECK(run("ct-check " + kEx1).code == 0);
}

TEST_CASE("lambda matches the presentations") {
    const fs::path dir = scratch("lambda");
    CHECK(run("lambda " + kEx1 + " --out-dir " + dir.string() + " --presentation " + presentation("cycle2.toml"))
              .code == 0);
    const dext::Json j = json_file(dir / "lambda.json");
    CHECK(j["frobenius"] == true);
    CHECK(j["comparison"]["isomorphic"] == true);
    CHECK(run("lambda " + kEx2 + " --presentation " + presentation("a1_cycle.toml")).code == 0);
    CHECK(run("lambda " + kEx2 + " --presentation " + presentation("cycle2.toml")).code == 1);
}

TEST_CASE("verify and selfinj verdicts") {
    const fs::path dir = scratch("verify");
    CHECK(run("verify " + kEx1 + " --out-dir " + dir.string() + " --brute-force 3").code == 0);
    dext::Json r = json_file(dir / "verify_report.json");
    CHECK(r["pass"] == true);
    CHECK(r["frobenius"] == true);
    CHECK(r["checks"]["essential_surjectivity"]["detail"]["found"] == 6);
    CHECK(run("verify " + kEx2 + " --out-dir " + dir.string()).code == 0);
    r = json_file(dir / "verify_report.json");
    CHECK(r["frobenius"] == false);
    CHECK(r["checks"]["bridge"]["detail"]["pairs"].size() == 144);
    CHECK(run("selfinj " + kEx1).code == 0);
    const Run s = run("selfinj " + kEx2 + " --format json");
    CHECK(s.code == 0);
    CHECK(dext::Json::parse(s.out)["positive"] == false);
    CHECK(run("dem " + kEx2).code == 0);
}

TEST_CASE("the same tables over F_2") {
    const fs::path q = scratch("field_q"), f2 = scratch("field_f2");
    CHECK(run("quotient " + kEx2 + " --out-dir " + q.string()).code == 0);
    CHECK(run("quotient " + kEx2 + " --field Fp:2 --out-dir " + f2.string()).code == 0);
    CHECK(slurp(q / "homs.json") == slurp(f2 / "homs.json"));
    CHECK(slurp(q / "quotient_ar.dot") == slurp(f2 / "quotient_ar.dot"));
    CHECK(run("verify " + kEx2 + " --field Fp:2").code == 0);
    CHECK(run("build --n 2 --d 2 --field Fp:4").code == 2);
}

TEST_CASE("config file, with flags taking precedence") {
    const fs::path dir = scratch("config");
    std::ofstream(dir / "c.toml") << "n = 3\nd = 2\nM = \"P(0,1)+P(0,2)+P(3,1)\"\nformat = \"json\"\n";
    const Run a = run("lambda --config " + (dir / "c.toml").string());
    CHECK(a.code == 0);
    CHECK(dext::Json::parse(a.out)["frobenius"] == false);
    const Run b = run("lambda --config " + (dir / "c.toml").string() + " --n 2 --M 'P(0,1)+P(2,1)'");
    CHECK(b.code == 0);
    CHECK(dext::Json::parse(b.out)["frobenius"] == true);
}

TEST_CASE("usage errors") {
    CHECK(run("").code == 2);
    CHECK(run("build").code == 2);
    CHECK(run("build --n 2 --d 2 --bogus").code == 2);
    CHECK(run("quotient --n 2 --d 2").code == 2);
    CHECK(run("quotient --n 2 --d 2 --M 'P(9,9)'").code == 2);
    CHECK(run("build --n 2 --d 2 --format xml").code == 2);
    CHECK(run("--help").code == 0);
}
