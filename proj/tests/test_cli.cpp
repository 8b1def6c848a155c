#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "../tools/cli.hpp"

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "maslov");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = maslov::cli::run(int(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(MASLOV_TEST_DATA) + "/" + name; }

std::filesystem::path scratch_dir() {
    auto p = std::filesystem::temp_directory_path() / "maslov_test_cli";
    std::filesystem::create_directories(p);
    return p;
}

}  // namespace

TEST_CASE("usage errors exit with 2") {
    CHECK(run({}).code == 2);
    CHECK(run({"bogus"}).code == 2);
    CHECK(run({"shortest-path", data("graph.txt"), "--jobs", "0"}).code == 2);
    CHECK(run({"newton", data("triangle.json"), "--directions"}).code == 2);
    const auto help = run({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("semiring-check") != std::string::npos);
}

TEST_CASE("shortest-path") {
    for (const char* method : {"jacobi", "gauss-seidel"}) {
        const auto r = run({"shortest-path", data("graph.txt"), "--source", "A", "--method", method});
        CHECK(r.code == 0);
        CHECK(r.out == "node,distance\nA,0\nB,1\nC,3\n");
    }
    CHECK(run({"shortest-path", data("graph.txt"), "--source", "Z"}).code == 1);
    CHECK(run({"shortest-path", data("missing.txt"), "--source", "A"}).code == 1);

    const auto bad = scratch_dir() / "bad_graph.txt";
    std::ofstream(bad) << "A B 1\n\nB C x\n";
    const auto r = run({"shortest-path", bad.string(), "--source", "A"});
    CHECK(r.code == 1);
    CHECK(r.err.find("line 3") != std::string::npos);
}

TEST_CASE("semiring-check") {
    const auto r = run({"semiring-check", "--semiring", "subtropical", "--h", "0.5", "--trials", "200"});
    CHECK(r.code == 0);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "semiring,law,trials,violations,max_error");
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        CHECK(line.find(",200,0,") != std::string::npos);
    }
    CHECK(rows == 11);
    CHECK(run({"semiring-check", "--semiring", "tropical"}).code == 2);
}

TEST_CASE("dequantize") {
    const auto r = run({"dequantize", data("one_plus_x.json"), "--x", "1", "--h", "1,0.1"});
    CHECK(r.code == 0);
    // h log(1 + e^{1/h}) at h = 1 and 0.1, then the tropical limit max(0, 1)
    CHECK(r.out == "h,value\n1,1.31326168752\n0.1,1.00000453989\n0,1\n");
}

TEST_CASE("newton and minkowski") {
    const auto hull = run({"newton", data("triangle.json")});
    const auto sub = run({"newton", data("triangle.json"), "--via", "subdifferential"});
    CHECK(hull.code == 0);
    CHECK(hull.out == "{\"dim\":2,\"vertices\":[[0,0],[0,3],[2,1]]}\n");
    CHECK(sub.out == hull.out);
    const auto m = run({"minkowski", data("simplex.json"), data("segment.json")});
    CHECK(m.out == "{\"dim\":2,\"vertices\":[[0,0],[0,1],[1,0],[2,2],[3,1]]}\n");
    CHECK(run({"minkowski", data("simplex.json"), data("segment.json"), "--op", "mul"}).out == m.out);
    CHECK(run({"minkowski", data("simplex.json"), data("segment.json"), "--op", "xor"}).code == 2);

    const auto bad = scratch_dir() / "bad.json";
    std::ofstream(bad) << "{\"dim\": 2,\n \"terms\": [\n oops]}\n";
    const auto r = run({"newton", bad.string()});
    CHECK(r.code == 1);
    CHECK(r.err.find("line 3") != std::string::npos);
}

TEST_CASE("legendre") {
    const auto r = run({"legendre", data("half_parabola.csv"), "--xi-lower", "-1", "--xi-upper", "1", "--xi-points",
                        "5", "--mode", "fenchel"});
    CHECK(r.code == 0);
    CHECK(r.out == "1,-1,1,5\n0.5\n0.125\n0\n0.125\n0.5\n");
}

TEST_CASE("tropical-curve and fractal-dim") {
    const auto t = run({"tropical-curve", data("line.json")});
    CHECK(t.code == 0);
    const auto j = nlohmann::json::parse(t.out);
    CHECK(j["vertices"].size() == 1);
    CHECK(j["rays"].size() == 3);

    const auto f = run({"fractal-dim", "--generator", "segment 10", "--s", "8,14,7"});
    CHECK(f.code == 0);
    const auto fj = nlohmann::json::parse(f.out);
    CHECK(fj["slope"] == 0);
    CHECK(fj["resolution_warning"] == true);
    CHECK(fj["series"].size() == 7);
    CHECK(run({"fractal-dim", "--generator", "koch 3"}).code == 1);
    CHECK(run({"fractal-dim", "--s", "1,7,3"}).code != 0);
}

TEST_CASE("--out honours the output directory variable") {
    const auto dir = scratch_dir();
    ::setenv("MASLOV_OUTPUT_DIR", dir.string().c_str(), 1);
    std::filesystem::remove(dir / "sp.csv");
    const auto r = run({"shortest-path", data("graph.txt"), "--source", "A", "--out", "sp.csv"});
    ::unsetenv("MASLOV_OUTPUT_DIR");
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(dir / "sp.csv");
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == "node,distance\nA,0\nB,1\nC,3\n");
}

TEST_CASE("selftests pass") {
    for (const char* cmd : {"semiring-check", "shortest-path", "legendre", "hj-evolve", "newton", "fractal-dim", "amoeba"}) {
        INFO(cmd);
        const auto r = run({cmd, "--selftest"});
        CHECK(r.code == 0);
        CHECK(r.out.find("FAIL") == std::string::npos);
    }
}
