#include <doctest.h>

#include "helpers.hpp"

#include <json.hpp>

#include <array>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sys/wait.h>

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args) {
    std::string cmd = std::string(ACYL_CLI) + " " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf;
    size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string data(const std::string& rel) { return data_path(rel); }

std::string temp_file(const std::string& name, const std::string& text) {
    std::string path = std::string(ACYL_TMP_DIR) + "/" + name;
    std::ofstream(path) << text;
    return path;
}

}  // namespace

TEST_CASE("lattice subcommands") {
    Run r = run("lattice profile " + data("burkhardt.gram"));
    CHECK(r.code == 0);
    CHECK(r.out.find("signature   (1,15)") != std::string::npos);

    r = run("lattice profile " + temp_file("empty.gram", "0\n") + " --json");
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["rank"] == 0);

    r = run("lattice profile 'sum(rescale(A(2),-1), rescale(U,3), rescale(U,3))' --json");
    CHECK(r.code == 0);
    nlohmann::json j = nlohmann::json::parse(r.out);
    CHECK(j["disc"] == nlohmann::json::array({3, 3, 3, 3, 3}));
    CHECK(j["signature"] == nlohmann::json::array({2, 0, 4}));

    std::string a = temp_file("a.gram", "2\n16 48\n48 136\n"), b = temp_file("b.gram", "2\n8 0\n0 -16\n");
    r = run("lattice isometric " + a + " " + b + " --bound 5 --json");
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["isometric"] == true);

    r = run("lattice snf " + temp_file("m.mat", "2 3\n2 4 4\n-6 6 12\n") + " --json");
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["invariant_factors"] == nlohmann::json::array({2, 6}));

    r = run("lattice complement --ambient U --sub " + temp_file("s.mat", "1 2\n1 1\n") + " --json");
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["gram"] == nlohmann::json::parse("[[-2]]"));

    r = run("lattice represent " + temp_file("p.gram", "2\n2 1\n1 2\n") + " --value 2 --bound 1 --json");
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["vectors"].size() == 6);  // roots of A2

    CHECK(run("lattice profile " + temp_file("bad.gram", "2\n1 2\n3 4\n")).code == 1);
    CHECK(run("lattice profile does-not-exist.gram").code == 1);
    CHECK(run("lattice").code == 1);
}

TEST_CASE("block subcommand") {
    Run r = run("block " + data("blocks/example_7_3.json"));
    CHECK(r.code == 0);
    CHECK(r.out.find("H2(Z)       Z^3") != std::string::npos);
    CHECK(r.out.find("H3(Z)       Z^50") != std::string::npos);

    r = run("block " + data("blocks/example_7_3.json") + " --json");
    CHECK(r.code == 0);
    nlohmann::json j = nlohmann::json::parse(r.out);
    CHECK(j["h2_Z"] == 3);
    CHECK(j["b3_Z"] == 50);
    CHECK(j["e"] == 9);
    // byte-for-byte deterministic
    CHECK(run("block " + data("blocks/example_7_3.json") + " --json").out == r.out);

    r = run("block --table fano-rank1 --json");
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out).size() == 17);

    // (c2 + c1^2).A = 24 + 4 fails for this descriptor
    std::ifstream in(data("blocks/example_7_3.json"));
    nlohmann::json d = nlohmann::json::parse(in);
    d["c2c1sq"] = {16, 30};
    CHECK(run("block " + temp_file("bad_block.json", d.dump())).code == 2);
    d["c2c1sq"] = {16, 28};
    d["colour"] = "red";
    CHECK(run("block " + temp_file("bad_key.json", d.dump())).code == 1);
    CHECK(run("block " + temp_file("bad_json.json", "{")).code == 1);
}

TEST_CASE("toric subcommands") {
    Run r = run("toric profile " + data("polytopes/p1942.txt") + " --json");
    CHECK(r.code == 0);
    nlohmann::json j = nlohmann::json::parse(r.out);
    CHECK(j["terminal"] == true);
    CHECK(j["nodes"] == 9);
    CHECK(j["rho_Y"] == 10);
    CHECK(j["degree"] == 22);
    CHECK(j["defect"] == 9);

    r = run("toric resolutions " + data("polytopes/p1942.txt") + " --classes --json");
    CHECK(r.code == 0);
    j = nlohmann::json::parse(r.out);
    CHECK(j["projective"] == 512);
    CHECK(j["classes"] == 84);

    r = run("toric profile " + data("polytopes/simplex.txt") + " --json");
    j = nlohmann::json::parse(r.out);
    CHECK(j["nodes"] == 0);
    CHECK(j["degree"] == 64);

    r = run("toric resolutions " + data("polytopes/quadric_cone.txt") + " --certificates --json");
    CHECK(r.code == 0);
    j = nlohmann::json::parse(r.out);
    REQUIRE(j["certificates"].size() == 2);
    CHECK(j["certificates"][0]["heights"].size() == 5);

    r = run("toric fan-invariants " + data("polytopes/p1942.txt") + " --choice 101010101 --json");
    CHECK(r.code == 0);
    j = nlohmann::json::parse(r.out);
    CHECK(j["antiK_cubed"] == 22);
    CHECK(j["rigid"] == true);
    CHECK(run("toric fan-invariants " + data("polytopes/p1942.txt") + " --choice 10").code == 1);
    CHECK(run("toric fan-invariants " + data("polytopes/cube.txt") + " --choice ''").code == 2);

    // the stored toric descriptors come from this command
    r = run("toric descriptor " + data("polytopes/p1942.txt") + " --choice 000000000 --pencil boundary --name example_7_11");
    CHECK(r.code == 0);
    std::ifstream in(data("blocks/example_7_11.json"));
    CHECK(nlohmann::json::parse(r.out) == nlohmann::json::parse(in));

    // batch: one bad record does not stop the others
    std::string text;
    for (const char* f : {"polytopes/simplex.txt", "polytopes/cube.txt", "polytopes/quadric_cone.txt"}) {
        std::ifstream p(data(f));
        text += std::string(std::istreambuf_iterator<char>(p), {});
    }
    std::string batch = temp_file("batch.txt", text);
    r = run("toric profile " + batch + " --json");
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out).size() == 3);
    r = run("toric resolutions " + batch + " --json");
    CHECK(r.code == 2);
    j = nlohmann::json::parse(r.out);
    REQUIRE(j.size() == 3);
    CHECK(j[0]["result"]["projective"] == 1);
    CHECK(j[1].contains("error"));
    CHECK(j[2]["result"]["projective"] == 2);
}
