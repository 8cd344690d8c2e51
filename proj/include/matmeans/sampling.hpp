#pragma once
// Seeded instance generators. Every draw is a pure function of a SeedPath;
// there is no global generator state, so trials can run on any thread in any
// order and still reproduce bit for bit.

#include <cstdint>
#include <random>
#include <utility>

#include "matmeans/means.hpp"

namespace matmeans {

struct SeedPath {
  std::uint64_t master_seed = 0;
  std::uint64_t trial_index = 0;
  /// Separates independent families drawn for the same trial (one per certifier).
  std::uint64_t stream = 0;
};

/// Deterministic generator derived from a SeedPath via splitmix64. Uniform and
/// normal variates are computed here rather than through <random>
/// distributions, whose output is implementation-defined.
class Rng {
 public:
  explicit Rng(SeedPath path);

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double log_uniform(double lo, double hi);
  double normal();
  cplx complex_normal();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

enum class SpectrumDistribution { LogUniform, Uniform, Clustered };

struct SpectrumSpec {
  std::size_t dim = 1;
  double min_eig = 1.0;
  double max_eig = 1.0;
  SpectrumDistribution distribution = SpectrumDistribution::LogUniform;
};

/// Orthonormalised complex Gaussian matrix with a positive real diagonal in
/// the R factor. ||UU* - I||_F <= 1e-12 * dim.
ComplexMatrix random_unitary(std::size_t dim, Rng& rng);
ComplexMatrix random_unitary(std::size_t dim, SeedPath seed);

/// Eigenvalues in [min_eig, max_eig]; the extremes are always included when
/// dim >= 2 so the requested condition number is attained.
std::vector<double> random_spectrum(const SpectrumSpec& spec, Rng& rng);

SpdMatrix random_spd(const SpectrumSpec& spec, Rng& rng);
SpdMatrix random_spd(const SpectrumSpec& spec, SeedPath seed);

/// A, B with mI <= A <= B <= MI, each order verified with tol = 0 before
/// returning. m == M gives A = B = mI exactly. Throws
/// Error{ConstructionFailure} after 10 unsuccessful attempts.
std::pair<SpdMatrix, SpdMatrix> random_ordered_pair(std::size_t dim, double m, double M, Rng& rng);
std::pair<SpdMatrix, SpdMatrix> random_ordered_pair(std::size_t dim, double m, double M, SeedPath seed);

/// U diag(s) V* with s log-uniform in [cap^-1/2, cap^1/2].
ComplexMatrix random_invertible(std::size_t dim, double cond_cap, Rng& rng);
ComplexMatrix random_invertible(std::size_t dim, double cond_cap, SeedPath seed);

/// Constraint set for sample_params. Weights are drawn in [weight_sep, 1 - weight_sep].
struct ParamRules {
  bool v_le_tau = false;   // tau - v >= weight_sep
  bool v_le_half = false;  // v <= 1/2
  bool a_lt_b = false;     // b - a >= pair_sep * b
  bool a_gt_b = false;     // a - b >= pair_sep * a
  bool distinct = false;   // |a - b| >= pair_sep * max(a, b)
  double lambda_max = 1.0; // lambda uniform in [1, lambda_max]
  double weight_sep = 0.05;
  double pair_sep = 0.1;
  double pair_range = 100.0;  // a, b log-uniform in [1/sqrt(range), sqrt(range)]
};

struct ParamSample {
  MeanParams params;
  ScalarPair pair;
};

ParamSample sample_params(const ParamRules& rules, Rng& rng);
ParamSample sample_params(const ParamRules& rules, SeedPath seed);

}  // namespace matmeans
