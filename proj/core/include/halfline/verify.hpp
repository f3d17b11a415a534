// Randomised batteries for the index identities and the subspace calculus.
#ifndef HALFLINE_VERIFY_HPP
#define HALFLINE_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "halfline/calderon.hpp"
#include "halfline/evolution.hpp"
#include "halfline/indices.hpp"
#include "halfline/rng.hpp"
#include "halfline/spectral.hpp"
#include "halfline/subspace.hpp"

namespace halfline {

struct VerifyOptions {
  std::vector<int> dims = {2, 4, 6, 8, 12};
  int draws = 100;
  std::uint64_t seed = 1;
  double coupling = 0.0;  // bump strength of the drawn coefficient paths
  int steps = 512;        // integrator resolution for coupled draws
};

struct VerifySummary {
  std::string theorem;
  int draws = 0;
  int failures = 0;
  double max_residual = 0.0;
  std::vector<std::string> notes;  // capped descriptions of failing draws
  bool ok() const { return failures == 0; }
};

// projection onto the matrices anticommuting with gamma (gamma^2 = -1)
Matrix gamma_anticommuting_part(const Matrix& x, const Matrix& gamma);
// projections with respect to an involution
Matrix alpha_commuting_part(const Matrix& x, const Matrix& alpha);
Matrix alpha_anticommuting_part(const Matrix& x, const Matrix& alpha);

Subspace random_subspace(int dim, int k, Rng& rng);

// Sine squared bump on [0, r] added to the boundary operator together with a
// potential of the same shape. Respects a supersymmetry when d carries one.
CoefficientPath random_coupled_path(const DiracData& d, double coupling, double r,
                                    std::uint64_t seed);

VerifySummary verify_windgen(const VerifyOptions& opt);
VerifySummary verify_agranovich_dynin(const VerifyOptions& opt);
VerifySummary verify_duality(const VerifyOptions& opt);
VerifySummary verify_adjoint_sum(const VerifyOptions& opt);
VerifySummary verify_cobordism(const VerifyOptions& opt);
VerifySummary verify_bojarski(const VerifyOptions& opt);
VerifySummary verify_splitting(const VerifyOptions& opt);
VerifySummary verify_susy(const VerifyOptions& opt);
VerifySummary verify_appendix(const VerifyOptions& opt);
VerifySummary verify_trace_bounds(int sections, std::uint64_t seed);

std::vector<VerifySummary> verify_all(const VerifyOptions& opt);

}  // namespace halfline

#endif
