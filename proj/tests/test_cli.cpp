// End-to-end tests of the sonarsim binary through a shell.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

namespace fs = std::filesystem;

struct CliFixture {
    fs::path dir;

    CliFixture() {
        dir = fs::temp_directory_path() / "sonarsim_cli_test";
        fs::remove_all(dir);
        fs::create_directories(dir);
        std::ofstream scene(dir / "wall.scn");
        scene << "materials:\n"
                 "  - reflectivity: 0.9\n"
                 "objects:\n"
                 "  - primitive: plane\n"
                 "    size: [60, 60]\n"
                 "    position: [8, 0, 0]\n"
                 "    rotation_deg: [0, -90, 0]\n"
                 "    material: 0\n";
    }
    ~CliFixture() { fs::remove_all(dir); }

    std::string file(const std::string& name) const { return (dir / name).string(); }

    int run(const std::string& args) const {
        const std::string cmd = std::string(SONARSIM_CLI_PATH) + " " + args + " > " +
                                file("stdout.txt") + " 2> " + file("stderr.txt");
        const int status = std::system(cmd.c_str());
        return WEXITSTATUS(status);
    }

    std::string stdout_text() const {
        std::ifstream in(file("stdout.txt"));
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    std::vector<char> bytes(const std::string& name) const {
        std::ifstream in(file(name), std::ios::binary);
        return std::vector<char>(std::istreambuf_iterator<char>(in),
                                 std::istreambuf_iterator<char>());
    }
};

}  // namespace

TEST_CASE("render writes the frame and image files") {
    CliFixture fx;
    const int status =
        fx.run("render --scene " + fx.file("wall.scn") + " --device fls --beams 64" +
               " --bins 200 --seed 3 --out " + fx.file("a.sf") + " --image " +
               fx.file("a.pgm"));
    CHECK(status == 0);
    CHECK(fs::exists(fx.file("a.sf")));
    CHECK(fs::exists(fx.file("a.pgm")));
    // The effective configuration is echoed for reproducibility.
    const std::string out = fx.stdout_text();
    CHECK(out.find("beams: 64") != std::string::npos);
    CHECK(out.find("seed: 3") != std::string::npos);
}

TEST_CASE("render twice with the same seed is byte-identical") {
    CliFixture fx;
    const std::string base = "render --scene " + fx.file("wall.scn") +
                             " --beams 32 --bins 100 --seed 7 ";
    REQUIRE(fx.run(base + "--out " + fx.file("r1.sf") + " --image " + fx.file("r1.pgm")) == 0);
    REQUIRE(fx.run(base + "--out " + fx.file("r2.sf") + " --image " + fx.file("r2.pgm")) == 0);
    CHECK(fx.bytes("r1.sf") == fx.bytes("r2.sf"));
    CHECK(fx.bytes("r1.pgm") == fx.bytes("r2.pgm"));
}

TEST_CASE("shader dump produces the two graymaps") {
    CliFixture fx;
    const int status = fx.run("render --scene " + fx.file("wall.scn") +
                              " --dump-shader --out " + fx.file("d.sf") + " --image " +
                              fx.file("d.pgm"));
    CHECK(status == 0);
    CHECK(fs::exists(fx.file("d_distance.pgm")));
    CHECK(fs::exists(fx.file("d_intensity.pgm")));
}

TEST_CASE("render honors the 16-bit image depth") {
    CliFixture fx;
    const int status = fx.run("render --scene " + fx.file("wall.scn") +
                              " --bits 16 --out " + fx.file("w16.sf") + " --image " +
                              fx.file("w16.pgm"));
    CHECK(status == 0);
    std::ifstream in(fx.file("w16.pgm"), std::ios::binary);
    std::string magic, dims, maxval;
    std::getline(in, magic);
    std::getline(in, dims);
    std::getline(in, maxval);
    CHECK(magic == "P5");
    CHECK(maxval == "65535");
}

TEST_CASE("missing scene file fails with the path in the message") {
    CliFixture fx;
    const int status = fx.run("render --scene " + fx.file("absent.scn"));
    CHECK(status == 2);
    std::ifstream err(fx.file("stderr.txt"));
    std::stringstream ss;
    ss << err.rdbuf();
    CHECK(ss.str().find("absent.scn") != std::string::npos);
}

TEST_CASE("invalid scene content fails with the validation exit code") {
    CliFixture fx;
    std::ofstream bad(fx.file("bad.scn"));
    bad << "materials:\n  - reflectivity: 2.0\nobjects:\n  - primitive: box\n";
    bad.close();
    CHECK(fx.run("render --scene " + fx.file("bad.scn")) == 3);
}

TEST_CASE("scan rejects non-MSIS devices") {
    CliFixture fx;
    CHECK(fx.run("scan --scene " + fx.file("wall.scn") + " --device fls") == 1);
}

TEST_CASE("scan covers the revolution at the requested step") {
    CliFixture fx;
    const int status =
        fx.run("scan --scene " + fx.file("wall.scn") +
               " --device msis --bins 50 --fov-az 3 --fov-el 20 --step-deg 18 --seed 1" +
               " --no-secondary --out " + fx.file("scan.sf") + " --image " +
               fx.file("scan.pgm"));
    CHECK(status == 0);
    const std::string out = fx.stdout_text();
    CHECK(out.find("(20 beams)") != std::string::npos);  // 360 / 18
}

TEST_CASE("bench emits one row per configuration") {
    CliFixture fx;
    const int status = fx.run("bench --preset paper-fls --samples 2 --seed 9 --out " +
                              fx.file("bench.txt"));
    CHECK(status == 0);
    std::ifstream report(fx.file("bench.txt"));
    std::string line;
    int rows = 0;
    while (std::getline(report, line)) {
        if (!line.empty() && line[0] != '#') ++rows;
    }
    CHECK(rows == 8);
}

TEST_CASE("bench ablation includes the counters") {
    CliFixture fx;
    const int status = fx.run("bench --preset paper-msis --samples 1 --ablation");
    CHECK(status == 0);
    const std::string out = fx.stdout_text();
    CHECK(out.find("selective_triangle_tests") != std::string::npos);
    CHECK(out.find("brute_force_triangle_tests") != std::string::npos);
}

TEST_CASE("compare of a frame with itself returns four ones") {
    CliFixture fx;
    REQUIRE(fx.run("render --scene " + fx.file("wall.scn") +
                   " --beams 200 --bins 200 --seed 5 --out " + fx.file("c.sf") +
                   " --image " + fx.file("c.pgm")) == 0);
    const int status = fx.run("compare " + fx.file("c.sf") + " " + fx.file("c.sf"));
    CHECK(status == 0);
    const std::string out = fx.stdout_text();
    CHECK(out.find("mse_similarity: 1") != std::string::npos);
    CHECK(out.find("psnr_similarity: 1") != std::string::npos);
    CHECK(out.find("ssim: 1") != std::string::npos);
    CHECK(out.find("ms_ssim: 1") != std::string::npos);
}

TEST_CASE("compare of noisy vs clean render scores strictly inside (0, 1)") {
    CliFixture fx;
    const std::string base = "render --scene " + fx.file("wall.scn") +
                             " --beams 200 --bins 200 ";
    REQUIRE(fx.run(base + "--seed 5 --out " + fx.file("noisy.sf") + " --image " +
                   fx.file("noisy.pgm")) == 0);
    REQUIRE(fx.run(base + "--no-noise --out " + fx.file("clean.sf") + " --image " +
                   fx.file("clean.pgm")) == 0);
    REQUIRE(fx.run("compare " + fx.file("noisy.sf") + " " + fx.file("clean.sf")) == 0);
    const std::string out = fx.stdout_text();
    double ms_ssim_value = -1.0;
    std::istringstream lines(out);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.rfind("ms_ssim:", 0) == 0) {
            ms_ssim_value = std::stod(line.substr(8));
        }
    }
    CHECK(ms_ssim_value > 0.0);
    CHECK(ms_ssim_value < 1.0);
}

TEST_CASE("compare rejects mismatched dimensions") {
    CliFixture fx;
    REQUIRE(fx.run("render --scene " + fx.file("wall.scn") +
                   " --beams 32 --bins 100 --out " + fx.file("m1.sf") + " --image " +
                   fx.file("m1.pgm")) == 0);
    REQUIRE(fx.run("render --scene " + fx.file("wall.scn") +
                   " --beams 32 --bins 120 --out " + fx.file("m2.sf") + " --image " +
                   fx.file("m2.pgm")) == 0);
    CHECK(fx.run("compare " + fx.file("m1.sf") + " " + fx.file("m2.sf")) != 0);
}

TEST_CASE("usage errors exit with code 1") {
    CliFixture fx;
    CHECK(fx.run("frobnicate") == 1);
    CHECK(fx.run("bench --preset nonsense") == 1);
}
