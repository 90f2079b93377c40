#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
    std::string cmd = std::string(CLI_BIN) + " " + args + " > /dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

struct TmpDir {
    fs::path path;
    explicit TmpDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TmpDir() { fs::remove_all(path); }
    std::string str() const { return path.string(); }
};

} // namespace

TEST_CASE("profile command writes its artifacts and manifest") {
    TmpDir d("degfront_cli_profile");
    int rc = run("profile --alpha 1 --beta 0 --c 1 --h 0.05 --out " + d.str());
    CHECK(rc == 0);
    for (const char* f : {"profile.csv", "profile.json", "hypotheses.json", "manifest.json"})
        CHECK(fs::exists(d.path / f));
    std::string manifest = slurp(d.path / "manifest.json");
    CHECK(manifest.find("profile.csv") != std::string::npos);
    CHECK(manifest.find("\"version\"") != std::string::npos);
    // CSV is CRLF-terminated with the expected header
    std::string csv = slurp(d.path / "profile.csv");
    CHECK(csv.rfind("x,phi,phi_x\r\n", 0) == 0);
}

TEST_CASE("sub-threshold speed exits 2") {
    TmpDir d("degfront_cli_nofront");
    CHECK(run("profile --alpha 1 --beta 0 --c 0.5 --out " + d.str()) == 2);
}

TEST_CASE("hypothesis violation exits 3") {
    TmpDir d("degfront_cli_hypo");
    CHECK(run("profile --alpha 0 --beta 1 --c 1 --out " + d.str()) == 3);
}

TEST_CASE("cstar command") {
    TmpDir d("degfront_cli_cstar");
    CHECK(run("cstar --alpha 1 --beta 0 --tol 1e-3 --out " + d.str()) == 0);
    std::string j = slurp(d.path / "cstar.json");
    CHECK(j.find("0.707") != std::string::npos);
}

TEST_CASE("spectrum command is deterministic byte-for-byte") {
    TmpDir d1("degfront_cli_spec1");
    TmpDir d2("degfront_cli_spec2");
    std::string base = "spectrum --alpha 1 --beta 0 --c 1 --h 0.4 --Xm 30 --Xp 30 --a 1.309";
    CHECK(run(base + " --out " + d1.str()) == 0);
    CHECK(run(base + " --out " + d2.str()) == 0);
    CHECK(slurp(d1.path / "spectrum.json") == slurp(d2.path / "spectrum.json"));
    CHECK(slurp(d1.path / "eigenvalues.csv") == slurp(d2.path / "eigenvalues.csv"));
    CHECK(slurp(d1.path / "spectrum.json").find("\"Stable\"") != std::string::npos);
}

TEST_CASE("spectrum fan-out across a worker pool") {
    TmpDir d("degfront_cli_sweep");
    int rc = run("spectrum --alpha 1 --beta 0 --c 1 --h 0.4 --Xm 30 --Xp 30 "
                 "--a-list 0,1.309 --jobs 2 --out " +
                 d.str());
    CHECK(rc == 0);
    CHECK(fs::exists(d.path / "spectrum_a0.json"));
    CHECK(fs::exists(d.path / "spectrum_a1.json"));
    CHECK(slurp(d.path / "spectrum_a0.json").find("\"Unstable\"") != std::string::npos);
    CHECK(slurp(d.path / "spectrum_a1.json").find("\"Stable\"") != std::string::npos);
}

TEST_CASE("failed-weight regime reports UnstableInAllWeights") {
    TmpDir d("degfront_cli_failweight");
    int rc = run("spectrum --alpha 1 --beta 0.1 --c 0.73 --h 0.1 --out " + d.str());
    CHECK(rc == 0);
    CHECK(slurp(d.path / "spectrum.json").find("UnstableInAllWeights") != std::string::npos);
}

TEST_CASE("weight-plan command") {
    TmpDir d("degfront_cli_wp");
    CHECK(run("weight-plan --alpha 1 --beta 0 --c 1 --out " + d.str()) == 0);
    std::string j = slurp(d.path / "weight_plan.json");
    CHECK(j.find("\"empty\": false") != std::string::npos);
}

TEST_CASE("energy command at lambda 0") {
    TmpDir d("degfront_cli_energy");
    CHECK(run("energy --alpha 1 --beta 0 --c 1 --h 0.05 --lambda 0 --out " + d.str()) == 0);
    std::string j = slurp(d.path / "energy.json");
    CHECK(j.find("relative_residual") != std::string::npos);
    CHECK(j.find("kernel_cv") != std::string::npos);
    CHECK(fs::exists(d.path / "energy_fields.csv"));
}

TEST_CASE("borders and tail-audit and reg-sweep commands") {
    TmpDir d("degfront_cli_misc");
    CHECK(run("borders --alpha 1 --beta 0 --c 1 --a 1.0 --eps 0.01 --knum 101 --out " +
              d.str()) == 0);
    CHECK(fs::exists(d.path / "borders.csv"));

    CHECK(run("tail-audit --alpha 1 --beta 0 --c 1 --h 0.05 --a 0 --out " + d.str()) == 0);
    CHECK(fs::exists(d.path / "tail_audit.json"));

    CHECK(run("reg-sweep --alpha 1 --beta 0 --c 1 --h 0.4 --Xm 30 --Xp 30 --a 1.309 "
              "--eps 1e-1,1e-2,1e-3 --out " +
              d.str()) == 0);
    CHECK(fs::exists(d.path / "reg_sweep.json"));
    CHECK(fs::exists(d.path / "reg_sweep.csv"));
}

TEST_CASE("config file fills defaults and flags win") {
    TmpDir d("degfront_cli_config");
    fs::path cfg = d.path / "cfg.json";
    {
        std::ofstream os(cfg);
        os << R"({"alpha": 1.0, "beta": 0.0, "c": 0.5, "h": 0.05, "out": ")" << d.str()
           << R"("})";
    }
    // config alone: c = 0.5 has no front -> exit 2
    CHECK(run("profile --config " + cfg.string()) == 2);
    // flag overrides the config speed
    CHECK(run("profile --config " + cfg.string() + " --c 1") == 0);
}
