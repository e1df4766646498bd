#pragma once

#include <json.hpp>
#include <string>

#include "oscsemi/gaussops.hpp"
#include "oscsemi/hamflow.hpp"
#include "oscsemi/symclass.hpp"
#include "oscsemi/types.hpp"

namespace osc {

using Json = nlohmann::json;

// Matrices travel as {"d": n, "re": [[...]], "im": [[...]]} with "im"
// optional; complex scalars as {"re": x, "im": y}. Doubles print in
// shortest-round-trip form, so emit -> parse is bit-exact.

Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j);

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

// Form inputs are symmetrized on load.
Json form_to_json(const SymMatrix& a);
SymMatrix form_from_json(const Json& j);

Json gaussian_to_json(const GaussianOp& g);
GaussianOp gaussian_from_json(const Json& j);

Json kernel_to_json(const KernelGaussian& k);
Json report_to_json(const ClassificationReport& rep);

Json region_to_json(const DomainSample& s);
std::string region_to_csv(const DomainSample& s);

}  // namespace osc
