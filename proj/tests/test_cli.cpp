#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

// End-to-end tests of the CLI binary (path in GERMLAB_BIN).

namespace {

std::string bin() {
    const char* b = std::getenv("GERMLAB_BIN");
    REQUIRE_MESSAGE(b != nullptr, "GERMLAB_BIN must point at the germlab binary");
    return b;
}

int run(const std::string& args) {
    int rc = std::system((bin() + " " + args + " > /dev/null 2>&1").c_str());
    return WEXITSTATUS(rc);
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    REQUIRE(out.good());
    out << text;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const char* kGermOne = R"({
  "truncation": 12,
  "polynomial": true,
  "coord1": [
    {"coeff": "1", "z_pow": 1, "w_pow": 0},
    {"coeff": "1", "z_pow": 1, "w_pow": 1},
    {"coeff": "-1/2", "z_pow": 3, "w_pow": 0}
  ],
  "coord2": [
    {"coeff": "1", "z_pow": 0, "w_pow": 1},
    {"coeff": "-1", "z_pow": 1, "w_pow": 1}
  ]
})";

const char* kFuchsian = R"({
  "truncation": 10,
  "coord1": [
    {"coeff": "1", "z_pow": 1, "w_pow": 0},
    {"coeff": "1", "z_pow": 0, "w_pow": 2}
  ],
  "coord2": [{"coeff": "1", "z_pow": 0, "w_pow": 1}]
})";

const char* kGermS5 = R"({
  "truncation": 12,
  "coord1": [
    {"coeff": "1", "z_pow": 1, "w_pow": 0},
    {"coeff": "-1/2", "z_pow": 3, "w_pow": 0}
  ],
  "coord2": [
    {"coeff": "1", "z_pow": 0, "w_pow": 1},
    {"coeff": "-3", "z_pow": 2, "w_pow": 1},
    {"coeff": "1", "z_pow": 0, "w_pow": 2},
    {"coeff": "1", "z_pow": 5, "w_pow": 0}
  ]
})";

}  // namespace

TEST_CASE("classify exit codes follow the verdict") {
    write_file("cli_g1.json", kGermOne);
    write_file("cli_fuchs.json", kFuchsian);
    CHECK(run("classify cli_g1.json") == 0);
    CHECK(run("classify cli_fuchs.json") == 2);

    write_file("cli_id.json",
               R"({"truncation": 8, "coord1": [{"coeff":"1","z_pow":1,"w_pow":0}],
                   "coord2": [{"coeff":"1","z_pow":0,"w_pow":1}]})");
    CHECK(run("classify cli_id.json") == 1);

    write_file("cli_bad.json",
               R"({"truncation": 8, "coord1": [{"coeff":"1","z_pow":1,"w_pow":0},
                   {"coeff":"1","z_pow":0,"w_pow":1}],
                   "coord2": [{"coeff":"1","z_pow":0,"w_pow":1}]})");
    CHECK(run("classify cli_bad.json") == 1);  // linear part not the identity
}

TEST_CASE("reports round-trip through JSON") {
    write_file("cli_g1.json", kGermOne);
    CHECK(run("classify cli_g1.json --out cli_report.json") == 0);
    std::string text = slurp("cli_report.json");
    nlohmann::ordered_json parsed = nlohmann::ordered_json::parse(text);
    CHECK(parsed.dump(2) + "\n" == text);
    CHECK(parsed["classification"]["theorem_a"]["status"] == "applies");
    CHECK(parsed["classification"]["s"]["kind"] == "infinite");
}

TEST_CASE("normalize emits the rescaling data") {
    write_file("cli_s5.json", kGermS5);
    CHECK(run("normalize cli_s5.json --out cli_norm.json") == 0);
    auto j = nlohmann::ordered_json::parse(slurp("cli_norm.json"));
    CHECK(j["normal_form"]["a"] == "-1/2");
    CHECK(j["normal_form"]["b"] == "-3");
    CHECK(j["normal_form"]["c"] == "1");
    CHECK(j["rescaled"]["beta"]["re"].get<std::string>().substr(0, 2) == "3.");
    CHECK(j["rescaled"]["Delta"]["re"].get<std::string>().substr(0, 2) == "2.");
    CHECK(j["rescaled"]["a2"]["re"].get<std::string>().substr(0, 2) == "1.");  // 1e3
    CHECK(std::stod(j["beta_hat"]["re"].get<std::string>()) == doctest::Approx(1.95));

    // lambda = 0 for the S == 0 germ
    write_file("cli_g1.json", kGermOne);
    CHECK(run("normalize cli_g1.json --out cli_norm2.json") == 0);
    auto j2 = nlohmann::ordered_json::parse(slurp("cli_norm2.json"));
    CHECK(j2["rescaled"]["lambda"]["re"] == "0");
    CHECK(j2["normal_form"]["s_infinite"] == true);

    // failing germ exits 2 and names the missing condition
    write_file("cli_fuchs.json", kFuchsian);
    CHECK(run("normalize cli_fuchs.json --out cli_norm3.json") == 2);
    auto j3 = nlohmann::ordered_json::parse(slurp("cli_norm3.json"));
    CHECK(j3["normal_form"].is_null());
    CHECK(j3["error"].get<std::string>().find("condition") != std::string::npos);
}

TEST_CASE("conjugate evaluates the sigma thresholds") {
    write_file("cli_s5.json", kGermS5);
    // psi = (z, w + z^4): sigma = 3 above every threshold for (1,2,2,4)
    write_file("cli_psi.json",
               R"({"truncation": 12, "coord1": [{"coeff":"1","z_pow":1,"w_pow":0}],
                   "coord2": [{"coeff":"1","z_pow":0,"w_pow":1},
                              {"coeff":"1","z_pow":4,"w_pow":0}]})");
    CHECK(run("conjugate cli_s5.json --psi cli_psi.json --out cli_conj.json") == 0);
    auto j = nlohmann::ordered_json::parse(slurp("cli_conj.json"));
    CHECK(j["prop_c"]["sigma"] == "3");
    CHECK(j["prop_c"]["ok"] == true);
    CHECK(j["prop_c"]["t"]["threshold_met"] == true);
    CHECK(j["prop_c"]["s"]["threshold_met"] == true);
    CHECK(j["prop_c"]["s"]["after"]["value"] == 4);
}

TEST_CASE("iterate writes the documented CSV") {
    write_file("cli_g1.json", kGermOne);
    CHECK(run("iterate cli_g1.json --z 0.05 --w 1e-5 --steps 500 --decimate 50 "
              "--out-csv cli_orbit.csv --out cli_iter.json") == 0);
    std::string csv = slurp("cli_orbit.csv");
    CHECK(csv.rfind("n,re_z,im_z,abs_z,abs_w,abs_w_over_z\n", 0) == 0);
    int rows = 0;
    for (char c : csv)
        if (c == '\n') ++rows;
    CHECK(rows == 1 + 11);  // header + steps 0,50,...,500
    auto j = nlohmann::ordered_json::parse(slurp("cli_iter.json"));
    CHECK(j["steps_completed"] == 500);
    CHECK(j["diverged"] == false);
}

TEST_CASE("verify is byte-deterministic across thread counts") {
    write_file("cli_g1.json", kGermOne);
    std::string args =
        " verify cli_g1.json --samples 12 --steps 400 --rate-steps 20000 --seed 5 --out ";
    int rc1 = std::system(("GERMLAB_THREADS=1 " + bin() + args + "cli_v1.json > /dev/null").c_str());
    int rc2 = std::system(("GERMLAB_THREADS=3 " + bin() + args + "cli_v2.json > /dev/null").c_str());
    CHECK(WEXITSTATUS(rc1) == 0);
    CHECK(WEXITSTATUS(rc2) == 0);
    CHECK(slurp("cli_v1.json") == slurp("cli_v2.json"));
}

TEST_CASE("verify refuses non-applicable germs before sampling") {
    write_file("cli_fuchs.json", kFuchsian);
    CHECK(run("verify cli_fuchs.json") == 2);
}
