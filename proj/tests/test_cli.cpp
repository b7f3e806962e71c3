#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "oracles.hpp"
#include "commands.hpp"
#include "run_config.hpp"
#include "surfcap/capacitance.hpp"
#include "surfcap/equilibrium.hpp"
#include "surfcap/errors.hpp"
#include "surfcap/screening.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace surfcap;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string config(const char* name) { return std::string(SURFCAP_SOURCE_DIR) + "/configs/" + name; }

fs::path scratch_dir() {
    const fs::path dir = fs::temp_directory_path() / "surfcap_test_cli";
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream(p, std::ios::binary) << text;
}

} // namespace

TEST_SUITE("equilibrium") {
    TEST_CASE("reduced demo config reproduces the oracle") {
        const auto r = run_cli({"--config", config("demo_reduced.json"), "equilibrium", "--V0", "1"});
        REQUIRE(r.code == 0);
        const auto j = json::parse(r.out);
        for (const char* key : {"sigma0", "sigma1", "V1", "d1", "V0", "residual_neutrality"})
            CHECK(j.contains(key));
        const double want = oracle::bisect_sigma0(1.0, 1.0, 0.5, 1.0 / 12.0, 1.0, 1.0);
        CHECK(j["sigma0"].get<double>() == doctest::Approx(want).epsilon(1e-11));
    }

    TEST_CASE("csv format") {
        const auto r = run_cli({"--config", config("demo_reduced.json"), "--format", "csv", "equilibrium", "--V0", "1"});
        REQUIRE(r.code == 0);
        CHECK(r.out.rfind("sigma0,sigma1,V1,d1,V0,residual_neutrality", 0) == 0);
    }

    TEST_CASE("SI config") {
        const auto r = run_cli({"--config", config("si_surface_states.json"), "equilibrium", "--V0", "1"});
        REQUIRE(r.code == 0);
        const auto j = json::parse(r.out);
        CHECK(j["capacitance"]["d_offset"].get<double>() > 0.0);
    }

    TEST_CASE("V0 <= 0 is a usage error") {
        const auto r = run_cli({"--config", config("demo_reduced.json"), "equilibrium", "--V0", "0"});
        CHECK(r.code == 2);
        const auto e = json::parse(r.err);
        CHECK(e["error"]["kind"] == "usage");
    }

    TEST_CASE("solver failure exits 1 with error JSON") {
        const auto dir = scratch_dir();
        write_file(dir / "accum.json",
                   R"({"material":{"units":"reduced","n_d":1,"n_s":10,"E_F":-2,"kappa":12},"plate":{"d0_nm":1}})");
        const auto r = run_cli({"--config", (dir / "accum.json").string(), "equilibrium", "--V0", "1"});
        CHECK(r.code == 1);
        CHECK(json::parse(r.err)["error"]["kind"] == "depletion_violation");
    }

    TEST_CASE("missing config and bad config") {
        CHECK(run_cli({"equilibrium", "--V0", "1"}).code == 2);
        const auto dir = scratch_dir();
        write_file(dir / "bad.json", "{ not json");
        CHECK(run_cli({"--config", (dir / "bad.json").string(), "equilibrium", "--V0", "1"}).code == 2);
        write_file(dir / "tol.json",
                   R"({"material":{"units":"reduced","n_d":1,"n_s":1,"E_F":0.5,"kappa":12},"plate":{"d0_nm":1},"tolerances":{"root_tol":0.1}})");
        CHECK(run_cli({"--config", (dir / "tol.json").string(), "equilibrium", "--V0", "1"}).code == 2);
    }
}

TEST_SUITE("curve") {
    std::vector<std::vector<double>> parse_rows(const std::string& csv) {
        std::istringstream in(csv);
        std::string line;
        std::vector<std::vector<double>> rows;
        bool header = false;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            if (!header) {
                CHECK(line == "d0,c_total,d_offset,inv_c_total");
                header = true;
                continue;
            }
            std::vector<double> row;
            std::stringstream ss(line);
            std::string f;
            while (std::getline(ss, f, ',')) row.push_back(std::stod(f));
            rows.push_back(row);
        }
        return rows;
    }

    TEST_CASE("fixed V1: constant offset and measured-distance identity") {
        const auto r = run_cli({"--config", config("demo_reduced.json"), "curve", "--d0-min", "0.01",
                                "--d0-max", "100", "--n-points", "9", "--fixed-V1", "0.25"});
        REQUIRE(r.code == 0);
        const auto rows = parse_rows(r.out);
        REQUIRE(rows.size() == 9);
        for (const auto& row : rows) {
            CHECK(oracle::rel_err(row[2], rows[0][2]) < 1e-12);
            CHECK(row[3] - row[0] == doctest::Approx(row[2]).epsilon(1e-9));
        }
    }

    TEST_CASE("fixed V0 sweep agrees with the finite-difference oracle") {
        const auto r = run_cli({"--config", config("demo_reduced.json"), "curve", "--d0-min", "0.1",
                                "--d0-max", "10", "--n-points", "7", "--V0", "1"});
        REQUIRE(r.code == 0);
        const auto params = cli::load_run_config(config("demo_reduced.json")).material.value();
        for (const auto& row : parse_rows(r.out)) {
            const double fd = finite_difference_capacitance(1.0, params, PlateConfig::make(row[0]), 1e-6);
            CHECK(oracle::rel_err(row[1], fd) < 1e-5);
        }
    }

    TEST_CASE("usage errors") {
        CHECK(run_cli({"--config", config("demo_reduced.json"), "curve", "--d0-min", "1", "--d0-max", "0.5",
                       "--n-points", "5", "--V0", "1"}).code == 2);
        CHECK(run_cli({"--config", config("demo_reduced.json"), "curve", "--d0-min", "1", "--d0-max", "5",
                       "--n-points", "5"}).code == 2);
        CHECK(run_cli({"--config", config("demo_reduced.json"), "curve", "--d0-min", "1", "--d0-max", "5",
                       "--n-points", "1", "--V0", "1"}).code == 2);
    }

    TEST_CASE("flat-band points are annotated, not fatal") {
        const auto r = run_cli({"--config", config("demo_reduced.json"), "curve", "--d0-min", "0.1",
                                "--d0-max", "1", "--n-points", "3", "--fixed-V1", "0"});
        CHECK(r.code == 1);
        CHECK(r.out.find("# d0=0.1 failed") != std::string::npos);
    }
}

TEST_SUITE("debye") {
    TEST_CASE("presets") {
        const auto si = json::parse(run_cli({"debye", "--preset", "Si-intrinsic"}).out);
        CHECK(si["debye_length_um"].get<double>() >= 16.0);
        CHECK(si["debye_length_um"].get<double>() <= 36.0);
        CHECK(si["carrier_density_per_cm3"].get<double>() == 1.45e10);
        const auto ge = json::parse(run_cli({"debye", "--preset", "Ge-intrinsic"}).out);
        CHECK(ge["debye_length_um"].get<double>() >= 0.47);
        CHECK(ge["debye_length_um"].get<double>() <= 1.05);
    }

    TEST_CASE("shipped presets file matches the built-in table") {
        const auto cfg = cli::load_run_config(config("presets.json"));
        for (const auto& p : builtin_screening_presets()) {
            const auto& f = cfg.presets.at(p.name);
            CHECK(f.temperature == p.inputs.temperature);
            CHECK(f.carrier_density == p.inputs.carrier_density);
            CHECK(f.kappa == p.inputs.kappa);
            CHECK(f.two_carrier == p.inputs.two_carrier);
        }
    }

    TEST_CASE("explicit inputs match debye_length") {
        const auto r = run_cli({"debye", "--temperature", "300", "--carrier-density", "1e12", "--kappa", "12",
                                "--plates", "2"});
        REQUIRE(r.code == 0);
        const auto j = json::parse(r.out);
        const double lam = debye_length({300.0, 1e12, 12.0, false});
        CHECK(j["debye_length_nm"].get<double>() == doctest::Approx(lam).epsilon(1e-11));
        CHECK(j["offset_total_nm"].get<double>() == doctest::Approx(debye_offset(lam, 12.0, 2)).epsilon(1e-11));
    }

    TEST_CASE("validation") {
        CHECK(run_cli({"debye"}).code == 2);
        CHECK(run_cli({"debye", "--preset", "nope"}).code == 2);
        CHECK(run_cli({"debye", "--temperature", "-1", "--carrier-density", "1e12", "--kappa", "12"}).code == 2);
    }
}

TEST_SUITE("synth and fit") {
    TEST_CASE("synth is deterministic per seed and fit recovers the truth") {
        const auto dir = scratch_dir();
        const auto a = dir / "a.csv", b = dir / "b.csv";
        REQUIRE(run_cli({"--output", a.string(), "synth", "--seed", "5"}).code == 0);
        REQUIRE(run_cli({"--output", b.string(), "synth", "--seed", "5"}).code == 0);
        CHECK(slurp(a) == slurp(b));
        REQUIRE(run_cli({"--output", b.string(), "synth", "--seed", "6"}).code == 0);
        CHECK(slurp(a) != slurp(b));

        const auto r = run_cli({"fit", a.string(), "--residuals", (dir / "res.csv").string()});
        REQUIRE(r.code == 0);
        const auto j = json::parse(r.out);
        for (const char* key : {"model", "covariance", "rms_residual", "converged", "n_iterations", "warnings"})
            CHECK(j.contains(key));
        CHECK(j["converged"].get<bool>());
        CHECK(std::abs(j["model"]["b"].get<double>() - 62.0) < 5.0);
        CHECK(j["metadata"]["truth_b_nm"] == "62");
        CHECK(r.err.find("offset b = ") != std::string::npos);
        CHECK(slurp(dir / "res.csv").rfind("stage_nm,capacitance_pF,model_pF,residual_pF\n", 0) == 0);
    }

    TEST_CASE("shipped 62 nm dataset") {
        const auto r = run_cli({"fit", std::string(SURFCAP_SOURCE_DIR) + "/data/synthetic_62nm.csv"});
        REQUIRE(r.code == 0);
        const auto j = json::parse(r.out);
        const double b = j["model"]["b"].get<double>();
        const double se = j["standard_errors"]["b"].get<double>();
        CHECK(std::abs(b - 62.0) < 3.0 * se);
        CHECK(se < 5.0);
    }

    TEST_CASE("noiseless dataset interpolates") {
        const auto dir = scratch_dir();
        const auto a = dir / "clean.csv";
        REQUIRE(run_cli({"--output", a.string(), "synth", "--noise-frac", "0", "--c-stray-pF", "2"}).code == 0);
        const auto j = json::parse(run_cli({"fit", a.string()}).out);
        CHECK(j["converged"].get<bool>());
        // Limited only by the 12-digit CSV values.
        CHECK(j["rms_residual"].get<double>() < 1e-7 * 14280.0);
        CHECK(j["model"]["b"].get<double>() == doctest::Approx(62.0).epsilon(1e-9));
    }

    TEST_CASE("sphere geometry and roughness") {
        const auto dir = scratch_dir();
        const auto a = dir / "sphere.csv";
        REQUIRE(run_cli({"--output", a.string(), "synth", "--geometry", "sphere", "--radius-nm", "1e7",
                         "--b-nm", "100", "--noise-frac", "0"}).code == 0);
        const auto r = run_cli({"fit", a.string(), "--roughness-nm", "3"});
        REQUIRE(r.code == 0);
        const auto j = json::parse(r.out);
        CHECK(j["geometry"]["type"] == "sphere_plate");
        CHECK(j["model"]["b"].get<double>() == doctest::Approx(100.0).epsilon(1e-6));
        CHECK(j["fit_metadata"]["roughness_nm"] == "3");
    }

    TEST_CASE("parse errors exit 2 and name the line") {
        const auto dir = scratch_dir();
        write_file(dir / "nohdr.csv", "0,100\n10,90\n20,80\n30,70\n");
        const auto r = run_cli({"fit", (dir / "nohdr.csv").string(), "--geometry", "parallel", "--area-nm2", "1e14"});
        CHECK(r.code == 2);
        const auto e = json::parse(r.err);
        CHECK(e["error"]["kind"] == "parse");
        CHECK(e["error"]["line"] == 1);
    }

    TEST_CASE("geometry is required") {
        const auto dir = scratch_dir();
        write_file(dir / "nogeom.csv", "stage_nm,capacitance_pF\n0,100\n10,90\n20,80\n30,70\n");
        CHECK(run_cli({"fit", (dir / "nogeom.csv").string()}).code == 2);
        CHECK(run_cli({"fit", (dir / "nogeom.csv").string(), "--geometry", "sphere"}).code == 2);
        CHECK(run_cli({"fit", (dir / "nogeom.csv").string(), "--fix", "bogus", "--geometry", "parallel",
                       "--area-nm2", "1e14"}).code == 2);
    }
}

TEST_SUITE("correct") {
    TEST_CASE("single row, metal offset") {
        const auto dir = scratch_dir();
        write_file(dir / "f.csv", "d_nm,force_arb\n100,2.5\n");
        const auto r = run_cli({"correct", (dir / "f.csv").string(), "--offset-nm", "0.2"});
        REQUIRE(r.code == 0);
        CHECK(r.out == "d_nm,force_arb,correction_frac\n99.8,2.5,0.008\n");
    }

    TEST_CASE("zero offset leaves rows unchanged") {
        const auto dir = scratch_dir();
        write_file(dir / "f0.csv", "d_nm,force_arb\n100,2.5\n250,0.125\n");
        const auto r = run_cli({"correct", (dir / "f0.csv").string(), "--offset-nm", "0"});
        REQUIRE(r.code == 0);
        CHECK(r.out == "d_nm,force_arb,correction_frac\n100,2.5,0\n250,0.125,0\n");
    }

    TEST_CASE("shipped demo: exact minus linear within the Taylor bound") {
        const std::string demo = std::string(SURFCAP_SOURCE_DIR) + "/data/casimir_demo.csv";
        const auto lin = run_cli({"correct", demo, "--offset-nm", "0.2", "--mode", "linear"});
        const auto ex = run_cli({"correct", demo, "--offset-nm", "0.2", "--mode", "exact"});
        REQUIRE(lin.code == 0);
        REQUIRE(ex.code == 0);
        std::istringstream a(lin.out), b(ex.out);
        std::string la, lb;
        std::getline(a, la);
        std::getline(b, lb);
        int rows = 0;
        while (std::getline(a, la) && std::getline(b, lb)) {
            const double d = std::stod(la.substr(0, la.find(','))) + 0.2;
            const double fl = std::stod(la.substr(la.rfind(',') + 1));
            const double fe = std::stod(lb.substr(lb.rfind(',') + 1));
            const double x = 0.2 / d;
            CHECK(fe - fl >= 0.0);
            CHECK(fe - fl <= 10.0 * x * x / std::pow(1.0 - x, 6) + 1e-11);
            ++rows;
        }
        CHECK(rows > 5);
    }

    TEST_CASE("row errors are reported with indices") {
        const auto dir = scratch_dir();
        write_file(dir / "f1.csv", "d_nm,force_arb\n100,1\n50,2\n700,3\n");
        const auto r = run_cli({"correct", (dir / "f1.csv").string(), "--offset-nm", "600", "--mode", "exact"});
        CHECK(r.code == 1);
        CHECK(r.out.rfind("d_nm,force_arb,correction_frac\n", 0) == 0);
        const auto e = json::parse(r.err.substr(r.err.find('{')));
        CHECK(e["error"]["kind"] == "row_errors");
        CHECK(e["error"]["rows"].size() == 2);
    }
}

TEST_CASE("unknown subcommand and help") {
    CHECK(run_cli({"frobnicate"}).code == 2);
    CHECK(run_cli({}).code == 2);
    CHECK(run_cli({"--help"}).code == 0);
}
