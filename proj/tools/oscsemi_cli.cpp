#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "oscsemi/cordes.hpp"
#include "oscsemi/diamond.hpp"
#include "oscsemi/gaussops.hpp"
#include "oscsemi/hamflow.hpp"
#include "oscsemi/oracle.hpp"
#include "oscsemi/serialize.hpp"
#include "oscsemi/spmap.hpp"
#include "oscsemi/symclass.hpp"
#include "oscsemi/verify.hpp"

namespace {

using osc::Json;

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("cannot open " + path);
  Json j;
  in >> j;
  return j;
}

osc::Matrix load_matrix(const std::string& path) {
  return osc::matrix_from_json(load_json(path));
}

osc::SymMatrix load_form(const std::string& path) {
  return osc::form_from_json(load_json(path));
}

// Gaussian operator files carry {"scale", "form"}; a bare matrix document is
// read as a unit-scale operator.
osc::GaussianOp load_gaussian(const std::string& path) {
  const Json j = load_json(path);
  if (j.contains("form")) return osc::gaussian_from_json(j);
  return osc::GaussianOp(osc::Complex{1.0, 0.0}, osc::form_from_json(j));
}

struct Rect {
  double re0 = 0, re1 = 1, im0 = 0, im1 = 1;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"oscillator-semigroup toolkit"};
  // long-only help so that subcommands can take a --h hamiltonian option
  app.set_help_flag("--help", "print help and exit");
  app.require_subcommand(1);

  double tol = osc::kClassifyTol;
  if (const char* env = std::getenv("OSC_DEFAULT_TOL")) tol = std::atof(env);
  app.add_option("--tol", tol, "membership / classification tolerance");
  int trunc_n = 60;
  app.add_option("--trunc-N", trunc_n, "oscillator-basis truncation");
  int quad_nodes = 0;
  app.add_option("--quad-nodes", quad_nodes, "quadrature nodes per axis");
  std::string format = "json";
  app.add_option("--format", format, "json or csv (grid outputs)")
      ->check(CLI::IsMember({"json", "csv"}));
  std::uint64_t seed = 20260823;
  app.add_option("--seed", seed, "seed for randomized verification");

  std::string matrix_path, a_path, b_path, g_path, h_path;
  std::string kind = "sym";
  std::vector<double> z_arg, rect_arg;
  double psi = 0, t_arg = 1, s_param = 1, lambda = 1, constant = 0;
  int d_param = 1, res = 200, mixture_k = 64;
  bool with_numeric = false;
  int verify_scale = 1;

  auto* c_classify = app.add_subcommand("classify", "set membership report");
  c_classify->add_option("--matrix", matrix_path)->required();
  c_classify->add_option("--kind", kind)
      ->check(CLI::IsMember({"sym", "sp", "sp-alg"}));

  auto* c_diamond = app.add_subcommand("diamond", "compose two exponents");
  c_diamond->add_option("--a", a_path)->required();
  c_diamond->add_option("--b", b_path)->required();

  auto* c_compose = app.add_subcommand("compose", "operator product");
  c_compose->add_option("--g1", a_path)->required();
  c_compose->add_option("--g2", b_path)->required();

  auto* c_kernel = app.add_subcommand("kernel", "integral kernel");
  c_kernel->add_option("--g", g_path)->required();
  auto* c_trace = app.add_subcommand("trace", "closed-form trace");
  c_trace->add_option("--g", g_path)->required();
  auto* c_trnorm = app.add_subcommand("trace-norm", "closed-form trace norm");
  c_trnorm->add_option("--form,--g", g_path)->required();
  auto* c_opnorm = app.add_subcommand("op-norm", "closed-form operator norm");
  c_opnorm->add_option("--form,--g", g_path)->required();
  auto* c_abs = app.add_subcommand("abs", "absolute value operator");
  c_abs->add_option("--g", g_path)->required();
  auto* c_polar = app.add_subcommand("polar", "polar decomposition");
  c_polar->add_option("--g", g_path)->required();

  auto* c_spto = app.add_subcommand("sp-to", "form to symplectic matrix");
  c_spto->add_option("--form", g_path)->required();
  auto* c_spfrom = app.add_subcommand("sp-from", "symplectic matrix to form");
  c_spfrom->add_option("--matrix", matrix_path)->required();
  auto* c_sppolar = app.add_subcommand("sp-polar", "Sp_++ polar split");
  c_sppolar->add_option("--matrix", matrix_path)->required();

  auto* c_prop = app.add_subcommand("propagate", "semigroup element at z");
  c_prop->add_option("--h", h_path)->required();
  c_prop->add_option("--z", z_arg, "re im")->expected(2)->required();
  auto* c_domain = app.add_subcommand("domain", "membership of z");
  c_domain->add_option("--h", h_path)->required();
  c_domain->add_option("--z", z_arg, "re im")->expected(2)->required();

  auto* c_davies = app.add_subcommand("davies", "rotated-oscillator region");
  c_davies->add_option("--psi", psi)->required();
  c_davies->add_option("--z", z_arg, "re im")->expected(2);
  c_davies->add_option("--rect", rect_arg, "re0 re1 im0 im1")->expected(4)->delimiter(',');
  c_davies->add_option("--res", res);

  auto* c_region = app.add_subcommand("region", "sample holomorphic domain");
  c_region->add_option("--h", h_path)->required();
  c_region->add_option("--rect", rect_arg)->expected(4)->delimiter(',')->required();
  c_region->add_option("--res", res);

  auto* c_meta = app.add_subcommand("metaplectic", "unitary group element");
  c_meta->add_option("--h", h_path)->required();
  c_meta->add_option("--t", t_arg)->required();

  auto* c_cordes = app.add_subcommand("cordes", "bound chain for Op(P_s)");
  c_cordes->add_option("--d", d_param);
  c_cordes->add_option("--s", s_param);
  c_cordes->add_option("--mixture-K", mixture_k);
  c_cordes->add_flag("--numeric", with_numeric, "also measure Tr|Op(P_s)|");

  auto* c_cv = app.add_subcommand("cv-check", "boundedness inequality demo");
  c_cv->add_option("--lambda", lambda)->required();
  c_cv->add_option("--constant", constant, "reuse a precomputed c_{1,1}");

  auto* c_verify = app.add_subcommand("verify", "run the invariant suite");
  c_verify->add_option("--scale", verify_scale, "sample-count multiplier");

  // map every CLI11 parse failure onto the documented usage exit code 1
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  std::string out;
  int exit_code = 0;
  try {
    Json j;
    if (c_classify->parsed()) {
      if (kind == "sym")
        j = osc::report_to_json(osc::classify_sym(load_form(matrix_path), tol));
      else if (kind == "sp")
        j = osc::report_to_json(osc::classify_sp(load_matrix(matrix_path), tol));
      else
        j = osc::report_to_json(
            osc::classify_sp_alg(load_matrix(matrix_path), tol));
    } else if (c_diamond->parsed()) {
      j = osc::form_to_json(osc::diamond(load_form(a_path), load_form(b_path)));
    } else if (c_compose->parsed()) {
      const osc::ComposeResult r =
          osc::compose(load_gaussian(a_path), load_gaussian(b_path));
      j = osc::gaussian_to_json(r.op);
      j["sign_certain"] = r.sign_certain;
    } else if (c_kernel->parsed()) {
      j = osc::kernel_to_json(osc::gaussian_kernel(load_gaussian(g_path)));
    } else if (c_trace->parsed()) {
      j["value"] = osc::complex_to_json(osc::trace(load_gaussian(g_path)));
    } else if (c_trnorm->parsed()) {
      j["value"] = osc::trace_norm(load_gaussian(g_path));
    } else if (c_opnorm->parsed()) {
      j["value"] = osc::op_norm(load_gaussian(g_path));
    } else if (c_abs->parsed()) {
      j = osc::gaussian_to_json(osc::abs_op(load_gaussian(g_path)));
    } else if (c_polar->parsed()) {
      const osc::PolarResult r = osc::polar(load_gaussian(g_path));
      j["unitary"] = osc::gaussian_to_json(r.unitary);
      j["positive"] = osc::gaussian_to_json(r.positive);
    } else if (c_spto->parsed()) {
      j = osc::matrix_to_json(osc::to_symplectic(load_form(g_path)));
    } else if (c_spfrom->parsed()) {
      j = osc::form_to_json(osc::from_symplectic(load_matrix(matrix_path)));
    } else if (c_sppolar->parsed()) {
      const osc::SpPolar r = osc::sp_polar(load_matrix(matrix_path));
      j["real_factor"] = osc::matrix_to_json(r.real_factor);
      j["positive_factor"] = osc::matrix_to_json(r.positive_factor);
    } else if (c_prop->parsed() || c_domain->parsed()) {
      const osc::QuadHamiltonian h{load_form(h_path)};
      const osc::Complex z{z_arg[0], z_arg[1]};
      if (c_prop->parsed())
        j = osc::gaussian_to_json(osc::propagator(h, z));
      else
        j["label"] = osc::region_label_name(osc::domain_member(h, z, tol));
    } else if (c_davies->parsed()) {
      if (!rect_arg.empty()) {
        const osc::DomainSample s = osc::sample_region_davies(
            psi, rect_arg[0], rect_arg[1], rect_arg[2], rect_arg[3], res, tol);
        if (format == "csv") out = osc::region_to_csv(s);
        else j = osc::region_to_json(s);
      } else if (!z_arg.empty()) {
        j["label"] = osc::region_label_name(
            osc::davies_member(psi, {z_arg[0], z_arg[1]}, tol));
      } else {
        throw CLI::ValidationError("davies: need --z or --rect");
      }
    } else if (c_region->parsed()) {
      const osc::QuadHamiltonian h{load_form(h_path)};
      const osc::DomainSample s = osc::sample_region(
          h, rect_arg[0], rect_arg[1], rect_arg[2], rect_arg[3], res, tol);
      if (format == "csv") out = osc::region_to_csv(s);
      else j = osc::region_to_json(s);
    } else if (c_meta->parsed()) {
      j = osc::gaussian_to_json(
          osc::metaplectic_form(osc::QuadHamiltonian{load_form(h_path)}, t_arg));
    } else if (c_cordes->parsed()) {
      const osc::CordesParams p{d_param, s_param};
      j["closed_bound"] = osc::closed_bound(p);
      j["tight_bound"] = osc::tight_bound(p);
      if (with_numeric) {
        const osc::NumericConstant nc =
            osc::numeric_constant(p, mixture_k, trunc_n > 8 ? trunc_n : 100);
        j["numeric_constant"] = {{"value", nc.value},
                                 {"delta_quad", nc.delta_quad},
                                 {"delta_trunc", nc.delta_trunc}};
      }
    } else if (c_cv->parsed()) {
      const osc::CvCheck r = osc::cv_check_gaussian(lambda, constant);
      j = {{"lhs", r.lhs}, {"rhs", r.rhs}, {"holds", r.holds}};
    } else if (c_verify->parsed()) {
      const osc::VerifyReport report = osc::run_verify(seed, verify_scale);
      out = osc::format_report(report);
      if (!report.all_pass()) exit_code = 3;
    }
    if (out.empty()) out = j.dump(2) + "\n";
  } catch (const osc::OscError& e) {
    std::cerr << e.what() << "\n";
    return osc::is_domain_error(e.kind()) ? 2 : 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 3;
  }
  std::cout << out;
  return exit_code;
}
