#pragma once

#include <functional>
#include <iosfwd>
#include <string>

#include "gsamp/chebyshev.hpp"
#include "gsamp/recovery.hpp"

namespace gsamp {

// Frequency/vertex sampling equivalence on a bipartite graph with |V1| = |V2| = K.
//
// All vectors and matrices use the caller's vertex order. The paired basis is
// u_i = [p_i; q_i]/sqrt2 and u_{K+i} = [p_i; -q_i]/sqrt2 (V1 rows, V2 rows)
// from the SVD B = P diag(sigma) Q^T of the normalized off-diagonal block,
// so lambda_i = 1 - sigma_i ascends over the first half and
// lambda_{K+i} = 2 - lambda_i.
struct BipartiteSystem {
  Graph graph;
  Bipartition parts;
  VariationOperator op;          // symmetric normalized Laplacian
  SpectralBasis basis_b;         // paired, FrequencyOrder::BipartitePaired
  VariationOperator reduced_op;  // Kron reduction onto V1 (rows follow parts.v1)
  SpectralBasis basis_reduced;   // orthonormal eigenvectors p_i, eigenvalues 1 - sigma_i^2
  Matrix theorem1_transform;     // P / sqrt2: maps D_samp U_B^T to the V1 selector
  double theorem1_residual = 0.0;

  Index size() const { return graph.size(); }
  Index half() const { return graph.size() / 2; }
  SamplingConfig sampling() const { return SamplingConfig::from_ratio(graph.size(), 2); }
};

inline constexpr double kPairingTolerance = 1e-8;

BipartiteSystem build_system(const Graph& g);

// max |T D_samp U_B^T - I_V1|.
double theorem1_residual(const BipartiteSystem& sys);

// max |T * frequency_sample(basis_b, s, x) - I_V1 G x| with G = apply_filter(s).
double verify_corollary1(const BipartiteSystem& sys, const SpectralFilter& s, const Vector& x);

// W'(lambda_i) = W(lambda_i) H(lambda_{i mod K}).
SpectralFilter build_wprime(const SpectralFilter& w, const Vector& h);

// Zeroes the V2 entries.
Vector mask_v1(const BipartiteSystem& sys, const Vector& x);

// x~ = 2 W' I_V1^T I_V1 G x. The factor 2 is the gain of the [I I]
// folding that the vertex mask realizes.
Vector vertex_pipeline(const BipartiteSystem& sys, const SpectralFilter& g, const SpectralFilter& wprime,
                       const Vector& x);

// U W' upsample(D_samp G U^T x): the same system built from frequency_sample/reconstruct.
Vector frequency_pipeline(const BipartiteSystem& sys, const SpectralFilter& g, const SpectralFilter& wprime,
                          const Vector& x);

inline constexpr double kBipartiteSpectrumBound = 2.0;

// Vertex pipeline with both filters realized as order-P Chebyshev polynomials
// on [0, 2]; no eigenvectors are touched.
Vector vertex_pipeline_chebyshev(const BipartiteSystem& sys, const ChebyshevFilter& g, const ChebyshevFilter& wprime,
                                 const Vector& x, bool parallel = true);
Vector vertex_pipeline_chebyshev(const BipartiteSystem& sys, const std::function<double(double)>& g_resp,
                                 const std::function<double(double)>& wprime_resp, const Vector& x, int order,
                                 bool parallel = true);

// Continuous W' response for the unconstrained DS design with S = g_bl(K):
// a(lambda) / a(min(lambda, 2 - lambda)).
std::function<double(double)> one_branch_wprime_response(std::function<double(double)> a);

// W' of the unconstrained DS design for (g_bl(K), a).
SpectralFilter one_branch_wprime(const BipartiteSystem& sys, const SpectralFilter& a);

// x = W' I_V1^T d, with W' applied exactly.
Vector one_branch_signal(const BipartiteSystem& sys, const SpectralFilter& wprime, const Vector& d);

struct OneBranchResult {
  Vector original;
  SampledSpectrum encoded;
  Vector decoded;
};

// x = one_branch_signal(one_branch_wprime(a), d). Encode with S = g_bl(K); decode in the vertex
// domain from the encoded spectrum.
OneBranchResult one_branch_roundtrip(const BipartiteSystem& sys, const SpectralFilter& a, const Vector& d);

// Same signal model, but sampling and reconstruction both use order-P
// Chebyshev approximations of g_bl and W'. `encoded` holds the spectrum
// equivalent of the vertex samples.
OneBranchResult one_branch_roundtrip_chebyshev(const BipartiteSystem& sys, const SpectralFilter& a,
                                               const Vector& d, int order);

// Encoded payload: a header (N, K, generator descriptor) and K spectrum values.
struct OneBranchPayload {
  Index n = 0;
  Index k = 0;
  std::string generator;
  Vector values;
};
void write_payload(std::ostream& out, const OneBranchPayload& p);
OneBranchPayload read_payload(std::istream& in);

}  // namespace gsamp
