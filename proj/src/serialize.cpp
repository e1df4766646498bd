#include "oscsemi/serialize.hpp"

#include <sstream>

namespace osc {

namespace {

Json real_rows(const RealMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

RealMatrix rows_to_real(const Json& rows, Eigen::Index n) {
  if (!rows.is_array() || (Eigen::Index)rows.size() != n)
    throw std::invalid_argument("matrix document: ragged or mis-sized array");
  RealMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Json& row = rows[i];
    if (!row.is_array() || (Eigen::Index)row.size() != n)
      throw std::invalid_argument("matrix document: ragged or mis-sized array");
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = row[j].get<double>();
  }
  return m;
}

}  // namespace

Json complex_to_json(Complex z) {
  return Json{{"re", z.real()}, {"im", z.imag()}};
}

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  return Complex(j.at("re").get<double>(),
                 j.value("im", 0.0));
}

Json matrix_to_json(const Matrix& m) {
  Json j;
  j["d"] = m.rows() / 2;
  j["re"] = real_rows(m.real());
  if (m.imag().cwiseAbs().maxCoeff() != 0.0) j["im"] = real_rows(m.imag());
  return j;
}

Matrix matrix_from_json(const Json& j) {
  const Eigen::Index d = j.at("d").get<Eigen::Index>();
  if (d < 1) throw std::invalid_argument("matrix document: d must be >= 1");
  const Eigen::Index n = 2 * d;
  Matrix m = rows_to_real(j.at("re"), n).cast<Complex>();
  if (j.contains("im")) m += kI * rows_to_real(j.at("im"), n).cast<Complex>();
  return m;
}

Json form_to_json(const SymMatrix& a) { return matrix_to_json(a.mat()); }

SymMatrix form_from_json(const Json& j) {
  return SymMatrix(matrix_from_json(j));
}

Json gaussian_to_json(const GaussianOp& g) {
  return Json{{"scale", complex_to_json(g.scale)},
              {"form", form_to_json(g.form)}};
}

GaussianOp gaussian_from_json(const Json& j) {
  return GaussianOp(complex_from_json(j.at("scale")),
                    form_from_json(j.at("form")));
}

Json kernel_to_json(const KernelGaussian& k) {
  return Json{{"prefactor", complex_to_json(k.prefactor)},
              {"quad_full", matrix_to_json(k.full())}};
}

Json report_to_json(const ClassificationReport& rep) {
  Json flags = Json::object(), wit = Json::object();
  for (const auto& [name, value] : rep.flags) flags[name] = value;
  for (const auto& [name, value] : rep.witnesses) wit[name] = value;
  return Json{{"tol", rep.tol}, {"flags", flags}, {"witnesses", wit}};
}

Json region_to_json(const DomainSample& s) {
  Json points = Json::array();
  for (size_t i = 0; i < s.grid.size(); ++i)
    points.push_back(Json{{"re_z", s.grid[i].real()},
                          {"im_z", s.grid[i].imag()},
                          {"label", region_label_name(s.labels[i])}});
  return Json{{"points", std::move(points)}};
}

std::string region_to_csv(const DomainSample& s) {
  std::ostringstream out;
  out.precision(17);
  out << "re_z,im_z,label\n";
  for (size_t i = 0; i < s.grid.size(); ++i)
    out << s.grid[i].real() << ',' << s.grid[i].imag() << ','
        << region_label_name(s.labels[i]) << '\n';
  return out.str();
}

}  // namespace osc
