#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "oscsemi/serialize.hpp"

using namespace osc;

namespace {

std::string cli_path() {
  const char* p = std::getenv("OSCSEMI_CLI");
  REQUIRE(p != nullptr);
  return p;
}

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd = cli_path() + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  std::array<char, 4096> buf;
  size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string write_iso_form(const std::string& name, double lambda) {
  const std::string path = "/tmp/" + name;
  const Json j = form_to_json(SymMatrix(lambda * Matrix::Identity(2, 2)));
  std::ofstream(path) << j.dump();
  return path;
}

}  // namespace

TEST_CASE("trace_norm_command_and_exit_codes") {
  const std::string two = write_iso_form("cli_iso2.json", 2.0);
  const RunResult ok = run("trace-norm --form " + two);
  CHECK(ok.exit_code == 0);
  const Json j = Json::parse(ok.out);
  CHECK(j.at("value").get<double>() == doctest::Approx(0.5).epsilon(1e-12));

  // the quantum-degenerate wall is a domain error
  const std::string one = write_iso_form("cli_iso1.json", 1.0);
  CHECK(run("trace-norm --form " + one).exit_code == 2);

  // usage errors
  CHECK(run("trace-norm").exit_code == 1);
  CHECK(run("no-such-command").exit_code != 0);
}

TEST_CASE("classify_command") {
  const std::string half = write_iso_form("cli_half.json", 0.5);
  const RunResult r = run("classify --matrix " + half);
  CHECK(r.exit_code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j.at("flags").at("sym_p_qnd").get<bool>());
  CHECK(j.at("flags").at("real").get<bool>());
  CHECK(j.at("witnesses").contains("qnd_witness"));
}

TEST_CASE("compose_output_reparses_bit_exact") {
  const std::string a = write_iso_form("cli_a.json", 0.4);
  const std::string b = write_iso_form("cli_b.json", 0.7);
  const RunResult r = run("compose --g1 " + a + " --g2 " + b);
  CHECK(r.exit_code == 0);
  const Json j = Json::parse(r.out);
  const GaussianOp g = gaussian_from_json(j);
  const Json again = Json::parse(gaussian_to_json(g).dump());
  CHECK(gaussian_from_json(again).scale == g.scale);
  CHECK((gaussian_from_json(again).form.mat().array() == g.form.mat().array())
            .all());
}

TEST_CASE("davies_region_csv") {
  const RunResult r =
      run("--format csv davies --psi 0.7854 --rect 0,3,-3,3 --res 20");
  CHECK(r.exit_code == 0);
  CHECK(r.out.rfind("re_z,im_z,label", 0) == 0);
  CHECK(r.out.find("interior") != std::string::npos);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 401);  // header + 400
}

TEST_CASE("cordes_and_cv_commands") {
  const RunResult r = run("cordes --d 1 --s 1");
  CHECK(r.exit_code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j.at("closed_bound").get<double>() ==
        doctest::Approx((1.0 + M_PI) / (2.0 * M_PI)).epsilon(1e-12));
  CHECK(j.at("tight_bound").get<double>() <=
        j.at("closed_bound").get<double>() + 1e-9);

  const RunResult cv = run("cv-check --lambda 1 --constant 0.3");
  CHECK(cv.exit_code == 0);
  const Json jc = Json::parse(cv.out);
  CHECK(jc.at("lhs").get<double>() == doctest::Approx(0.5));
  CHECK(jc.at("holds").get<bool>());
}

TEST_CASE("propagate_and_metaplectic_commands") {
  const std::string h = write_iso_form("cli_h.json", 1.0);
  const RunResult r = run("propagate --h " + h + " --z 0.5 0");
  CHECK(r.exit_code == 0);
  const GaussianOp g = gaussian_from_json(Json::parse(r.out));
  CHECK(std::abs(g.form.mat()(0, 0) - std::tanh(0.5)) < 1e-10);

  CHECK(run("propagate --h " + h + " --z -1 0").exit_code == 2);
  const RunResult m = run("metaplectic --h " + h + " --t 0.3");
  CHECK(m.exit_code == 0);
}
