#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "oscsemi/cordes.hpp"
#include "oscsemi/diamond.hpp"
#include "oscsemi/gaussops.hpp"
#include "oscsemi/hamflow.hpp"
#include "oscsemi/oracle.hpp"
#include "oscsemi/spmap.hpp"
#include "oscsemi/symclass.hpp"
#include "oscsemi/verify.hpp"

namespace py = pybind11;
using namespace osc;

PYBIND11_MODULE(_oscsemi, m) {
  m.doc() = "oscillator-semigroup toolkit core";

  static py::exception<OscError> exc(m, "OscError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const OscError& e) {
      exc(e.what());
    }
  });

  py::class_<SymMatrix>(m, "SymMatrix")
      .def(py::init<const Matrix&>())
      .def_property_readonly("mat", &SymMatrix::mat)
      .def_property_readonly("half_dim", &SymMatrix::half_dim)
      .def("is_real", &SymMatrix::is_real, py::arg("tol") = kClassifyTol)
      .def("__neg__", &SymMatrix::operator-)
      .def("conjugate", &SymMatrix::conjugate);

  py::class_<GaussianOp>(m, "GaussianOp")
      .def(py::init<Complex, SymMatrix>(), py::arg("scale"), py::arg("form"))
      .def_readwrite("scale", &GaussianOp::scale)
      .def_readwrite("form", &GaussianOp::form)
      .def_property_readonly("half_dim", &GaussianOp::half_dim);

  py::class_<ClassificationReport>(m, "ClassificationReport")
      .def_readonly("flags", &ClassificationReport::flags)
      .def_readonly("witnesses", &ClassificationReport::witnesses)
      .def_readonly("tol", &ClassificationReport::tol);

  py::class_<KernelGaussian>(m, "KernelGaussian")
      .def_readonly("prefactor", &KernelGaussian::prefactor)
      .def_readonly("quad_xx", &KernelGaussian::quad_xx)
      .def_readonly("quad_xy", &KernelGaussian::quad_xy)
      .def_readonly("quad_yy", &KernelGaussian::quad_yy)
      .def("full", &KernelGaussian::full)
      .def("eval", &KernelGaussian::eval);

  py::class_<ComposeResult>(m, "ComposeResult")
      .def_readonly("op", &ComposeResult::op)
      .def_readonly("sign_certain", &ComposeResult::sign_certain);

  py::class_<PolarResult>(m, "PolarResult")
      .def_readonly("unitary", &PolarResult::unitary)
      .def_readonly("positive", &PolarResult::positive);

  py::class_<WilliamsonSpectrum>(m, "WilliamsonSpectrum")
      .def_readonly("lambdas", &WilliamsonSpectrum::lambdas);

  m.def("classify_sym", &classify_sym, py::arg("a"),
        py::arg("tol") = kClassifyTol);
  m.def("classify_sp", &classify_sp, py::arg("r"),
        py::arg("tol") = kClassifyTol);
  m.def("classify_sp_alg", &classify_sp_alg, py::arg("d"),
        py::arg("tol") = kClassifyTol);

  m.def("diamond", &diamond);
  m.def("diamond_route", &diamond_route);
  m.def("compose", &compose);
  m.def("compose_principal", &compose_principal);
  m.def("adjoint", &adjoint);
  m.def("is_positive", &is_positive, py::arg("g"),
        py::arg("tol") = kClassifyTol);
  m.def("gaussian_kernel", &gaussian_kernel);
  m.def("trace", &trace);
  m.def("abs_form", &abs_form);
  m.def("abs_op", &abs_op);
  m.def("polar", &polar);
  m.def("williamson_spectrum", &williamson_spectrum);
  m.def("trace_norm", &trace_norm);
  m.def("op_norm", &op_norm);
  m.def("degenerate_1dof", &degenerate_1dof, py::arg("a_coef"),
        py::arg("b_coef"), py::arg("scale") = Complex{1.0, 0.0});
  m.def("vacuum_expectation", &vacuum_expectation);

  m.def("to_symplectic", &to_symplectic);
  m.def("from_symplectic", &from_symplectic);

  py::class_<QuadHamiltonian>(m, "QuadHamiltonian")
      .def(py::init<SymMatrix>())
      .def_property_readonly("generator", &QuadHamiltonian::generator)
      .def("flow", &QuadHamiltonian::flow);
  m.def("propagator", &propagator);
  m.def("metaplectic_form", &metaplectic_form);
  m.def("davies_member",
        [](double psi, Complex z, double tol) {
          return std::string(region_label_name(davies_member(psi, z, tol)));
        },
        py::arg("psi"), py::arg("z"), py::arg("tol") = kClassifyTol);
  m.def("domain_member",
        [](const QuadHamiltonian& h, Complex z, double tol) {
          return std::string(region_label_name(domain_member(h, z, tol)));
        },
        py::arg("h"), py::arg("z"), py::arg("tol") = kClassifyTol);

  py::class_<HermiteMatrix>(m, "HermiteMatrix")
      .def_readonly("trunc", &HermiteMatrix::trunc)
      .def_readonly("entries", &HermiteMatrix::entries)
      .def_readonly("tail_witness", &HermiteMatrix::tail_witness);
  py::class_<QuadratureSpec>(m, "QuadratureSpec")
      .def(py::init<>())
      .def_readwrite("nodes", &QuadratureSpec::nodes)
      .def_readwrite("scaling", &QuadratureSpec::scaling);
  m.def("hermite_matrix", &hermite_matrix, py::arg("g"), py::arg("trunc"),
        py::arg("quad") = QuadratureSpec{});
  py::class_<NumericFunctionals>(m, "NumericFunctionals")
      .def_readonly("trace", &NumericFunctionals::trace)
      .def_readonly("trace_norm", &NumericFunctionals::trace_norm)
      .def_readonly("op_norm", &NumericFunctionals::op_norm)
      .def_readonly("eigenvalues", &NumericFunctionals::eigenvalues)
      .def_readonly("singular_values", &NumericFunctionals::singular_values);
  m.def("numeric_functionals", &numeric_functionals);

  py::class_<CordesParams>(m, "CordesParams")
      .def(py::init([](int d, double s) { return CordesParams{d, s}; }),
           py::arg("d") = 1, py::arg("s") = 1.0)
      .def_readwrite("d", &CordesParams::d)
      .def_readwrite("s", &CordesParams::s);
  m.def("psi_s", &psi_s);
  m.def("closed_bound", &closed_bound);
  m.def("tight_bound", &tight_bound);
  py::class_<NumericConstant>(m, "NumericConstant")
      .def_readonly("value", &NumericConstant::value)
      .def_readonly("delta_quad", &NumericConstant::delta_quad)
      .def_readonly("delta_trunc", &NumericConstant::delta_trunc);
  m.def("numeric_constant", &numeric_constant, py::arg("params"),
        py::arg("mixture_nodes") = 64, py::arg("trunc") = 140);
  py::class_<CvCheck>(m, "CvCheck")
      .def_readonly("lhs", &CvCheck::lhs)
      .def_readonly("rhs", &CvCheck::rhs)
      .def_readonly("holds", &CvCheck::holds);
  m.def("cv_check_gaussian", &cv_check_gaussian, py::arg("lambda_"),
        py::arg("constant") = 0.0);

  py::class_<InvariantResult>(m, "InvariantResult")
      .def_readonly("name", &InvariantResult::name)
      .def_readonly("measured", &InvariantResult::measured)
      .def_readonly("tol", &InvariantResult::tol)
      .def_readonly("pass_", &InvariantResult::pass);
  py::class_<VerifyReport>(m, "VerifyReport")
      .def_readonly("results", &VerifyReport::results)
      .def("all_pass", &VerifyReport::all_pass);
  m.def("run_verify", &run_verify, py::arg("seed") = 0,
        py::arg("scale") = 1);
}
