#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

namespace fs = std::filesystem;

const fs::path& workdir() {
    static const fs::path d = [] {
        auto p = fs::temp_directory_path() / "nmwork_cli_test";
        fs::create_directories(p);
        return p;
    }();
    return d;
}

int nmwork(const std::string& args) {
    const std::string cmd = std::string(NMWORK_BINARY) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string out(const char* name) { return (workdir() / name).string(); }

std::string first_line(const std::string& path) {
    std::ifstream f(path);
    std::string l;
    std::getline(f, l);
    return l;
}

} // namespace

TEST(Cli, PresetRunWritesCsvAndManifest) {
    ASSERT_EQ(nmwork("run --preset fig2b --out " + out("b.csv")), 0);
    EXPECT_EQ(first_line(out("b.csv")),
              "t,H_S,H_Q,H_SQ,cond_entropy,coherent_info,mutual_info,w_ex_kTln2,cp_divisible,p_divisible");
    EXPECT_TRUE(fs::exists(out("b.csv") + ".manifest.json"));
}

TEST(Cli, ExplicitModelWithTemperature) {
    ASSERT_EQ(nmwork("run --model ising --field 0.5 --coupling 0.2 --spins 100 --exchange 1 --t-max 5 "
                     "--steps 30 --scenario system --temperature 4 --out " + out("i.csv")),
              0);
    EXPECT_TRUE(first_line(out("i.csv")).ends_with(",w_ex_J"));
    ASSERT_EQ(nmwork("run --model pbg --detuning -0.5 --beta 2 --t-max 3 --steps 10 --out " + out("p.csv")), 0);
    EXPECT_TRUE(first_line(out("p.csv")).ends_with(",g_abs"));
}

TEST(Cli, InvalidParametersExitOne) {
    EXPECT_EQ(nmwork("run --model pauli --steps 1 --out " + out("x.csv")), 1);
    EXPECT_EQ(nmwork("run --model ising --spins 3 --out " + out("x.csv")), 1);
    EXPECT_EQ(nmwork("run --model pauli --omega -2 --out " + out("x.csv")), 1);
    EXPECT_EQ(nmwork("run --model heisenberg --out " + out("x.csv")), 1);
    EXPECT_EQ(nmwork("run --preset fig2a"), 1); // --out missing
    EXPECT_EQ(nmwork("run --out " + out("x.csv")), 1);
    EXPECT_EQ(nmwork("run --model pbg --detuning -1.8898815748423097 --out " + out("x.csv")), 1);
}

TEST(Cli, ModelViolationExitTwo) {
    // t = pi/4 lands on the divergence of the tan rate
    EXPECT_EQ(nmwork("run --model pauli --rate3 tan --omega 2 --t-max 1.5707963267948966 --steps 3 --out " +
                     out("x.csv")),
              2);
    EXPECT_EQ(nmwork("run --preset fig4 --pbg-pole-weight-scale 1.2 --out " + out("x.csv")), 2);
}

TEST(Cli, IoFailureExitThree) {
    EXPECT_EQ(nmwork("run --preset fig2a --out /nonexistent-dir/x.csv"), 3);
}

TEST(Cli, VerifyPassesAndDetectsCorruption) {
    EXPECT_EQ(nmwork("verify --report " + out("report.json")), 0);
    std::ifstream f(out("report.json"));
    std::string body((std::istreambuf_iterator<char>(f)), {});
    EXPECT_NE(body.find("\"passed\": true"), std::string::npos);
    EXPECT_EQ(nmwork("verify --pbg-pole-weight-scale 1.5 --report " + out("bad.json")), 2);
}
