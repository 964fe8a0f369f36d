// Integration tests that drive the built jsr binary end to end.
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <string>

#include <json.hpp>

#include "jsr/extremal.hpp"
#include "jsr/io.hpp"
#include "jsr/shady.hpp"

namespace {

std::string g_binary;
const char* kDir = "/tmp/jsr_cli_test";

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    const std::string out_path = std::string(kDir) + "/stdout.txt";
    const std::string cmd = g_binary + " " + args + " > " + out_path + " 2>&1";
    const int raw = std::system(cmd.c_str());
    RunResult r;
    r.code = WEXITSTATUS(raw);
    try {
        r.out = jsr::read_file(out_path);
    } catch (...) {
    }
    return r;
}

std::string path_of(const std::string& name) { return std::string(kDir) + "/" + name; }

nlohmann::json load_json(const std::string& path) {
    return nlohmann::json::parse(jsr::read_file(path));
}

}  // namespace

TEST_CASE("estimate on the worked pair") {
    jsr::save_matrix_set(path_of("pair.json"), jsr::example_pair());
    const RunResult r =
        run("estimate --input " + path_of("pair.json") + " --depth 5 --report " +
            path_of("est.json"));
    CHECK(r.code == 0);
    CHECK(r.out.find("lower 2.424515") != std::string::npos);
    const auto rep = load_json(path_of("est.json"));
    CHECK(rep["outputs"]["lower"].get<double>() == doctest::Approx(2.4245159848).epsilon(1e-4));
    CHECK(rep["outputs"]["complete"] == 1.0);
    CHECK(rep["inputs"].size() == 1);
}

TEST_CASE("missing file exits 1") {
    const RunResult r = run("estimate --input " + path_of("missing.json"));
    CHECK(r.code == 1);
}

TEST_CASE("unknown flag exits 1 with usage") {
    const RunResult r = run("estimate --no-such-flag");
    CHECK(r.code == 1);
}

TEST_CASE("ragged matrix exits 1 naming the pointer") {
    jsr::write_file(path_of("ragged.json"), R"({"dim": 2, "matrices": [[[1, 2], [3]]]})");
    const RunResult r = run("estimate --input " + path_of("ragged.json"));
    CHECK(r.code == 1);
    CHECK(r.out.find("/matrices/0/1") != std::string::npos);
}

TEST_CASE("extremal then auerbach then john pipeline") {
    jsr::save_matrix_set(path_of("pair.json"), jsr::example_pair());
    RunResult r = run("extremal --input " + path_of("pair.json") +
                      " --word 0,1,0,0,1 --out " + path_of("ball.json") + " --report " +
                      path_of("ext.json"));
    CHECK(r.code == 0);
    const auto ext = load_json(path_of("ext.json"));
    CHECK(ext["certified"]["extremal"]["certified"] == true);
    CHECK(ext["outputs"]["vertex_count"] == 12.0);

    r = run("estimate --input " + path_of("pair.json") + " --depth 5 --ball " +
            path_of("ball.json"));
    CHECK(r.code == 0);
    CHECK(r.out.find("upper 2.424515") != std::string::npos);

    r = run("auerbach --ball " + path_of("ball.json") + " --out " + path_of("T.json") +
            " --report " + path_of("auer.json"));
    CHECK(r.code == 0);
    CHECK(load_json(path_of("auer.json"))["certified"]["auerbach"]["certified"] == true);

    r = run("john --ball " + path_of("ball.json") + " --out " + path_of("TJ.json") +
            " --report " + path_of("john.json"));
    CHECK(r.code == 0);
    CHECK(load_json(path_of("john.json"))["certified"]["john"]["certified"] == true);

    r = run("render --ball " + path_of("ball.json") + " --out " + path_of("ball.svg") +
            " --overlay-cube --overlay-cross");
    CHECK(r.code == 0);
    CHECK(jsr::read_file(path_of("ball.svg")).find("<svg") == 0);

    // wireframe of the 3d catalog ball carries its 30 edges
    r = run("shady icosahedron --grid-level 0 --refine 0 --out " + path_of("ico.json"));
    CHECK(r.code == 0);
    r = run("render --ball " + path_of("ico.json") + " --out " + path_of("ico.svg"));
    CHECK(r.code == 0);
    const std::string wire = jsr::read_file(path_of("ico.svg"));
    size_t lines = 0;
    for (size_t at = wire.find("<line"); at != std::string::npos; at = wire.find("<line", at + 1))
        ++lines;
    CHECK(lines == 30);
}

TEST_CASE("normalize writes certified output") {
    jsr::save_matrix_set(path_of("pair.json"), jsr::example_pair());
    const RunResult r =
        run("normalize --input " + path_of("pair.json") + " --depth 5 --out " +
            path_of("norm.json") + " --report " + path_of("nrep.json"));
    CHECK(r.code == 0);
    const auto rep = load_json(path_of("nrep.json"));
    CHECK(rep["certified"]["entry-bound"]["certified"] == true);
    CHECK(rep["outputs"]["max_entry"].get<double>() <=
          rep["outputs"]["rho_upper"].get<double>() * (1.0 + 1e-9));
    const jsr::MatrixSet out = jsr::load_matrix_set(path_of("norm.json"));
    CHECK(out.dim() == 2);
}

TEST_CASE("shady icosahedron and witness") {
    RunResult r = run("shady icosahedron --grid-level 2 --refine 1 --out " +
                      path_of("ico.json") + " --report " + path_of("shady.json"));
    CHECK(r.code == 0);
    const auto rep = load_json(path_of("shady.json"));
    CHECK(rep["outputs"]["value"].get<double>() >= 1.01);
    CHECK(rep["certified"]["catalog"]["certified"] == true);
    CHECK(rep["certified"]["shadiness-estimate"]["certified"] == false);

    jsr::save_matrix_set(path_of("tailored.json"), jsr::icosahedron_tailored_set());
    jsr::save_matrix(path_of("eye.json"), jsr::Matrix::identity(3));
    r = run("shady witness --set " + path_of("tailored.json") + " --transform " +
            path_of("eye.json") + " --J 1,2 --report " + path_of("wit.json"));
    CHECK(r.code == 0);
    CHECK(load_json(path_of("wit.json"))["outputs"]["alpha"].get<double>() >= 1.01);

    r = run("shady estimate --ball " + path_of("ico.json") +
            " --grid-level 1 --refine 0 --report " + path_of("se.json"));
    CHECK(r.code == 0);
    CHECK(load_json(path_of("se.json"))["outputs"]["value"].get<double>() >= 1.01);
}

TEST_CASE("submatrix-bound single pattern") {
    jsr::save_matrix_set(path_of("tailored.json"), jsr::icosahedron_tailored_set());
    RunResult r = run("shady icosahedron --grid-level 0 --refine 0 --out " + path_of("ico.json"));
    CHECK(r.code == 0);
    r = run("submatrix-bound --set " + path_of("tailored.json") + " --ball " +
            path_of("ico.json") + " --J 1,2 --depth 3 --report " + path_of("sub.json"));
    CHECK(r.code == 0);
    const auto rep = load_json(path_of("sub.json"));
    CHECK(rep["outputs"]["satisfied"] == 1.0);
    CHECK(rep["outputs"]["upper"].get<double>() <= 4.0 / 3.0 + 1e-6);
}

TEST_CASE("hollowize pipeline") {
    jsr::save_matrix_set(path_of("pair.json"), jsr::example_pair());
    const RunResult r = run("hollowize --input " + path_of("pair.json") +
                            " --tol 1e-8 --depth 5 --out " + path_of("hollow.json") +
                            " --report " + path_of("hrep.json"));
    CHECK(r.code == 0);
    const auto rep = load_json(path_of("hrep.json"));
    CHECK(rep["certified"]["hollow"]["certified"] == true);
    CHECK(rep["outputs"]["trace_a"] == 2.0);
    CHECK(rep["outputs"]["trace_b"] == 0.0);
}

TEST_CASE("reports are deterministic modulo wall time") {
    jsr::save_matrix_set(path_of("pair.json"), jsr::example_pair());
    auto strip = [](const std::string& path) {
        auto j = load_json(path);
        j.erase("wall_time");
        return j.dump();
    };
    RunResult r = run("estimate --input " + path_of("pair.json") + " --depth 5 --seed 3 "
                      "--report " + path_of("r1.json"));
    CHECK(r.code == 0);
    r = run("estimate --input " + path_of("pair.json") + " --depth 5 --seed 3 --report " +
            path_of("r2.json"));
    CHECK(r.code == 0);
    CHECK(strip(path_of("r1.json")) == strip(path_of("r2.json")));
}

TEST_CASE("strict mode flags partial results") {
    jsr::save_matrix_set(path_of("pair.json"), jsr::example_pair());
    // a plain run under default budget is complete, so strict passes
    const RunResult ok = run("--strict estimate --input " + path_of("pair.json") + " --depth 5");
    CHECK(ok.code == 0);
}

TEST_CASE("thread cap does not change reported numbers") {
    jsr::save_matrix_set(path_of("pair.json"), jsr::example_pair());
    auto strip = [](const std::string& path) {
        auto j = load_json(path);
        j.erase("wall_time");
        return j.dump();
    };
    RunResult r = run("estimate --input " + path_of("pair.json") + " --depth 6 --report " +
                      path_of("t1.json"));
    CHECK(r.code == 0);
    const std::string saved_bin = g_binary;
    g_binary = "JSR_THREADS=3 " + saved_bin;
    r = run("estimate --input " + path_of("pair.json") + " --depth 6 --report " +
            path_of("t3.json"));
    g_binary = saved_bin;
    CHECK(r.code == 0);
    CHECK(strip(path_of("t1.json")) == strip(path_of("t3.json")));
}

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: test_cli <path-to-jsr-binary>\n");
        return 1;
    }
    g_binary = argv[1];
    if (std::system((std::string("mkdir -p ") + kDir).c_str()) != 0) return 1;
    doctest::Context ctx;
    ctx.applyCommandLine(argc - 1, argv + 1);
    return ctx.run();
}
