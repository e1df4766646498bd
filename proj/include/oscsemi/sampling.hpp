#pragma once

#include <random>

#include "oscsemi/types.hpp"

namespace osc {

// Seeded generators for randomized property checks. All forms come out
// well-scaled (entries O(1)) so the fixed tolerances stay meaningful.

using Rng = std::mt19937_64;

RealMatrix random_real_symmetric(Rng& rng, Eigen::Index n, double scale = 1.0);
RealMatrix random_spd(Rng& rng, Eigen::Index n);
Matrix random_complex_symmetric(Rng& rng, Eigen::Index n, double scale = 1.0);

// exp of a random real Hamiltonian generator; spread controls its size.
RealMatrix random_symplectic(Rng& rng, Eigen::Index d, double spread = 0.6);

// Complex symmetric with strictly positive-definite real part.
SymMatrix sample_sym_pp(Rng& rng, Eigen::Index d);
// Same, resampled until comfortably quantum-nondegenerate.
SymMatrix sample_sym_pp_qnd(Rng& rng, Eigen::Index d);

// Real form S^T diag(lambda, lambda) S with S symplectic: prescribed
// symplectic eigenvalues.
SymMatrix sample_real_form(Rng& rng, Eigen::Index d, const RealVector& lambdas);
// Real positive form with all symplectic eigenvalues in (0, 1).
SymMatrix sample_sym_p_qnd(Rng& rng, Eigen::Index d);

// Lie-algebra elements, one per membership class of classify_sp_alg.
Matrix sample_sp_alg(Rng& rng, Eigen::Index d);
Matrix sample_sp_alg_pp(Rng& rng, Eigen::Index d);
Matrix sample_sp_alg_h(Rng& rng, Eigen::Index d);
Matrix sample_sp_alg_p(Rng& rng, Eigen::Index d);

}  // namespace osc
