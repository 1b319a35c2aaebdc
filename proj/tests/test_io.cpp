#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <sys/wait.h>

#include "lienard/errors.hpp"
#include "lienard/melnikov.hpp"
#include "lienard/presets.hpp"
#include "lienard/serialize.hpp"
#include "lienard/tolerances.hpp"
#include "lienard/verify.hpp"
#include "support/random_systems.hpp"

using namespace lienard;

namespace {

int run_cli(const std::string& args, std::string* stdout_text = nullptr) {
  const auto out = std::filesystem::temp_directory_path() / "lienard_cli_test.out";
  const std::string cmd = std::string(LIENARD_CLI) + " " + args + " > " + out.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  if (stdout_text) {
    std::ifstream in(out);
    std::stringstream ss;
    ss << in.rdbuf();
    *stdout_text = ss.str();
  }
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("ring json") {
  const RingElem r = RingElem::monomial(mpq_class(-3, 8), 1, -2) + RingElem(5);
  CHECK(ring_from_json(to_json(r)) == r);
  CHECK(ring_from_json(json::parse(R"("7/21")")) == RingElem(mpq_class(1, 3)));
  CHECK(ring_from_json(json(3)) == RingElem(3));
  CHECK(ring_from_json(json(0.1)) == RingElem::from_double(0.1));
  CHECK(ring_from_json(json::parse(R"([{"q": "1", "e": 3, "p": 0}])")) == RingElem::monomial(2, 1, 0));
  CHECK(to_json(RingElem::monomial(mpq_class(1, 2), 0, 0)).dump() == R"([{"e":0,"p":0,"q":"1/2"}])");
  CHECK_THROWS_AS(ring_from_json(json::parse(R"("1/0")")), Error);
  CHECK_THROWS_AS(ring_from_json(json::parse(R"({"q": 1})")), Error);
  CHECK_THROWS_AS(ring_from_json(json::parse(R"([{"e": 1}])")), Error);
}

TEST_CASE("half-power polynomial json") {
  HalfPowerPoly p;
  p.add(1, RingElem::sqrt2());
  p.add(4, RingElem::monomial(-2, 0, 1));
  CHECK(hp_from_json(to_json(p)) == p);
  CHECK_THROWS_AS(hp_from_json(json::parse(R"({"x": 1})")), Error);
  CHECK_THROWS_AS(hp_from_json(json::parse(R"({"-1": 1})")), Error);
}

TEST_CASE("system json round trip is byte identical") {
  for (const auto& name : preset_names()) {
    const LienardSystem sys = load_preset(name);
    const std::string once = to_json(sys).dump(2);
    const std::string twice = to_json(system_from_json(json::parse(once))).dump(2);
    CHECK(once == twice);
    CHECK(system_from_json(json::parse(once)) == sys);
  }
  std::mt19937_64 rng(71);
  for (int it = 0; it < 50; ++it) {
    const LienardSystem sys = testing::random_system(rng, it % 2 ? SwitchCase::SwitchX : SwitchCase::SwitchY, {});
    const std::string once = to_json(sys).dump();
    CHECK(to_json(system_from_json(json::parse(once))).dump() == once);
  }
}

TEST_CASE("system json validation") {
  json doc = to_json(load_preset("example1"));
  doc["a0"].erase(0);
  CHECK_THROWS_AS(system_from_json(doc), Error);
  json bad_case = to_json(load_preset("example1"));
  bad_case["case"] = "Z";
  CHECK_THROWS_AS(system_from_json(bad_case), Error);
  json missing = to_json(load_preset("example1"));
  missing.erase("n");
  CHECK_THROWS_AS(system_from_json(missing), Error);
  json floats = to_json(load_preset("example1"));
  floats["c"][0] = 0.25;
  CHECK(system_from_json(floats).c[0] == RingElem(mpq_class(1, 4)));
}

TEST_CASE("presets") {
  const auto names = preset_names();
  for (const char* want : {"example1", "example2", "remark-eqMM", "remark-pw-cubic", "remark-smooth-cubic"})
    CHECK(std::find(names.begin(), names.end(), want) != names.end());
  const LienardSystem ex1 = load_preset("example1");
  CHECK(ex1.a0[3] == RingElem(1));
  CHECK(ex1.a1[0] == RingElem::monomial(-25, 0, -1));
  CHECK(ex1.a1[2] == RingElem::monomial(-10, 0, -1));
  CHECK(ex1.b0[3] == RingElem(mpq_class(-1, 4)));
  CHECK(ex1.b1[0] == RingElem::monomial(3, 1, 0));
  CHECK(ex1.b1[2] == RingElem::monomial(mpq_class(105, 16), 1, 0));
  CHECK(ex1.c[2] == RingElem::monomial(mpq_class(3, 8), 1, 0));
  const LienardSystem ex2 = load_preset("example2");
  CHECK(ex2.a0[1] == RingElem::monomial(357, 1, 0));
  CHECK(ex2.a0[3] == RingElem::monomial(mpq_class(-93653, 260), 1, 0));
  CHECK(ex2.c[3] == RingElem(mpq_class(-4133, 7616)));
  CHECK_THROWS_AS(load_preset("nope"), Error);
}

TEST_CASE("tolerance overrides") {
  const Tolerances t = Tolerances::parse("oracle_rel=1e-6; rk_tol = 1e-12");
  CHECK(t.oracle_rel == 1e-6);
  CHECK(t.rk_tol == 1e-12);
  CHECK(t.vanish_abs == Tolerances{}.vanish_abs);
  CHECK(Tolerances::parse(t.to_string()).oracle_rel == 1e-6);
  CHECK_THROWS_AS(Tolerances::parse("bogus=1"), Error);
  CHECK_THROWS_AS(Tolerances::parse("oracle_rel=-1"), Error);
  CHECK_THROWS_AS(Tolerances::parse("oracle_rel"), Error);
  setenv("LIENARD_TOLERANCES", "cycle_rel=0.2", 1);
  CHECK(Tolerances::from_env().cycle_rel == 0.2);
  unsetenv("LIENARD_TOLERANCES");
  CHECK(Tolerances::from_env().cycle_rel == Tolerances{}.cycle_rel);
}

TEST_CASE("verify chain") {
  const VerifyReport ok = verify_system(load_preset("example1"));
  CHECK(ok.pass);
  REQUIRE(ok.roots);
  CHECK(ok.roots->certified_count() == 4);

  const VerifyReport ex2 = verify_system(load_preset("example2"));
  CHECK(ex2.pass);
  REQUIRE(ex2.roots);
  MESSAGE("second example: " << ex2.roots->certified_count() << " certified positive zero(s) of M1");

  // corrupted closed form: the first mismatch names its term
  const LienardSystem sys = load_preset("example1");
  IntegralTerms bad = closed_form_terms(sys);
  bad.I[3] = *bad.I[3] + HalfPowerPoly::term(1, RingElem(mpq_class(1, 1000)));
  VerifyOptions opts;
  opts.closed_form_override = bad;
  const VerifyReport fail = verify_system(sys, opts);
  CHECK_FALSE(fail.pass);
  CHECK(fail.first_failing_term == "I3");
  REQUIRE(fail.first_failure);
  CHECK(fail.rows[*fail.first_failure].stage == "oracle");
}

TEST_CASE("command line") {
  std::string out;
  CHECK(run_cli("melnikov --system example1", &out) == 0);
  const json doc = json::parse(out);
  CHECK(hp_from_json(doc.at("M1")) == *assemble(load_preset("example1")).M1);
  CHECK(doc.at("zero_bound").at("M1") == 4);

  CHECK(run_cli("melnikov --system remark-smooth-cubic", &out) == 0);
  CHECK(json::parse(out).at("M0_text") == "(-2*pi)*h + (1/3*pi)*h^2");

  const auto dir = std::filesystem::temp_directory_path() / "lienard_cli_out";
  std::filesystem::remove_all(dir);
  CHECK(run_cli("--out " + dir.string() + " roots --system example1") == 0);
  CHECK(std::filesystem::exists(dir / "roots.csv"));
  CHECK(run_cli("--out " + dir.string() + " oracle --system example2 --h-grid 0.5,1") == 0);
  std::ifstream csv(dir / "oracle.csv");
  std::string header;
  std::getline(csv, header);
  CHECK(header == "case,h,index,oracle_value,closedform_value,abs_err,rel_err");

  CHECK(run_cli("--out " + dir.string() + " simulate --system remark-smooth-cubic --r0 1.5") == 0);
  std::ifstream traj(dir / "trajectory.csv");
  std::getline(traj, header);
  CHECK(header == "t,x,y,side");

  CHECK(run_cli("design --case Y --m 3 --n 3 --targets 1,4,9,16", &out) == 0);
  CHECK(json::parse(out).at("pass") == true);
  CHECK(run_cli("design --case Y --m 3 --n 3") == 0);
  CHECK(run_cli("verify --system example1") == 0);

  // validation errors exit with 2
  CHECK(run_cli("design --case Y --m 3 --n 3 --targets 1,2,3,4,5") == 2);
  CHECK(run_cli("melnikov --system does-not-exist") == 2);
  CHECK(run_cli("melnikov --bogus") == 2);
  CHECK(run_cli("--precision quad melnikov --system example1") == 2);
  CHECK(run_cli("roots --system remark-pw-cubic --which M1") == 2);

  CHECK(run_cli("roots --system example1 --which M0") == 2);

  // numerical failures exit with 3
  setenv("LIENARD_TOLERANCES", "oracle_rel=1e-30", 1);
  CHECK(run_cli("verify --system example2") == 3);
  unsetenv("LIENARD_TOLERANCES");

  // config files supply defaults
  const auto cfg = std::filesystem::temp_directory_path() / "lienard_cli_config.json";
  std::ofstream(cfg) << R"({"system": "example1", "h_grid": [4.0], "tolerances": "oracle_rel=1e-7"})";
  CHECK(run_cli("--config " + cfg.string() + " melnikov", &out) == 0);
  CHECK(json::parse(out).at("grid").size() == 1);
  std::ofstream(cfg) << R"({"system": "example1", "h_grid": "oops"})";
  CHECK(run_cli("--config " + cfg.string() + " melnikov") == 2);
}
