#pragma once
// One verification routine per inequality. Each evaluates both sides in
// floating point and reports signed margins (>= 0 means the inequality holds
// in that direction) against a tolerance scaled to the magnitude of the
// quantities being compared.
//
// Preconditions that the caller controls (weight ordering, argument
// ordering, parameter ranges) throw matmeans::Error. Inputs the inequality
// itself excludes (a == b, singular differences) produce a report with
// degenerate = true instead.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "matmeans/linalg.hpp"
#include "matmeans/means.hpp"

namespace matmeans {

enum class Inequality {
  ScalarMeanChain,
  MatrixMeanChain,
  DifferenceRatio,
  DifferenceRatioLimits,
  HalfWeightDifference,
  ReciprocalSandwich,
  OneSidedBounds,
  WeightFactorSharpness,
  LoewnerDifferenceRatio,
  LoewnerHalfWeight,
  LoewnerBoundedDifference,
  HsDifferenceRatio,
  HsMeanChain,
  HsHalfWeight,
  DetPowerOrder,
  MinkowskiProduct,
  PowerDifference,
  DetRootDifference,
  DetDifference,
  DetHalfWeight,
};

/// Stable short tag used on the command line and in reports ("thm21", ...).
std::string_view tag(Inequality id) noexcept;
std::optional<Inequality> parse_tag(std::string_view tag) noexcept;

/// The 18 certifiers run by `verify`; the two limit probes are excluded.
std::span<const Inequality> verifiable_inequalities() noexcept;

struct Margin {
  std::string name;
  double value;
};

struct CertificateReport {
  Inequality id;
  bool holds = true;
  bool degenerate = false;
  std::vector<Margin> margins;
  double tol_used = 0.0;
  std::optional<nlohmann::json> witness;  // present whenever holds is false
  std::string note;

  /// Smallest margin, or NaN if there are none.
  double min_margin() const noexcept;
};

nlohmann::json to_json(const CertificateReport& r);
nlohmann::json to_json(const ComplexMatrix& m);

struct CheckOptions {
  /// Multiplies every tolerance; 1 gives tol = 1e-9 * scale.
  double tolerance_scale = 1.0;
  const MeanSet* means = &standard_means();
};

/// Hypothesis 0 < mI <= A <= B <= MI of the bounded-difference inequality.
struct BoundsHypothesis {
  double m;
  double M;
};

/// The four order checks 0 < mI, mI <= A, A <= B, B <= MI, in that order.
struct HypothesisCheck {
  std::string name;
  OrderVerdict verdict;
};
std::vector<HypothesisCheck> check_bounds_hypothesis(const SpdMatrix& a, const SpdMatrix& b,
                                                     BoundsHypothesis h, double tol);

// ---- scalar ------------------------------------------------------------

/// H_v <= G_v <= A_v.
CertificateReport check_scalar_mean_chain(ScalarPair p, double v, const CheckOptions& opts = {});

/// (v/tau)^l < (A_v^l - H_v^l)/(A_tau^l - H_tau^l) < ((1-v)/(1-tau))^l for a != b,
/// 0 < v < tau < 1, l >= 1.
///
/// The strict inequality is only demanded (margins > 0, not just >= -tol)
/// when the instance is bounded away from degeneracy: |a-b| >= 0.1*max(a,b),
/// v and tau in [0.1, 0.9] and tau - v >= 0.05.
CertificateReport check_difference_ratio(ScalarPair p, double v, double tau, double lambda,
                                         const CheckOptions& opts = {});

/// Evaluates the ratio at a = b*eps (limit ((1-v)/(1-tau))^l) and a = b/eps
/// (limit (v/tau)^l). Margins are the absolute gaps to the limits; holds when
/// both gap sequences are non-increasing as eps decreases. eps >= 1e-12.
CertificateReport probe_difference_ratio_limits(double v, double tau, double lambda, double b,
                                                std::span<const double> eps_list,
                                                const CheckOptions& opts = {});

/// The tau = 1/2 specialisation for l = 1 (squared = false) or l = 2:
///   (2 min(v,1-v))^l (A^l - H^l) <= A_v^l - H_v^l <= (2 max(v,1-v))^l (A^l - H^l)
CertificateReport check_half_weight_difference(ScalarPair p, double v, bool squared,
                                               const CheckOptions& opts = {});

/// Second-order convexity sandwich for f(x) = 1/x on [a, b]:
///   v(1-v)/2 (b-a)^2 * 2/b^3 <= v/a + (1-v)/b - 1/(va + (1-v)b) <= v(1-v)/2 (b-a)^2 * 2/a^3
CertificateReport check_reciprocal_sandwich(ScalarPair p, double v, const CheckOptions& opts = {});

/// v(1-v)(1-a/b)^2 a <= A_v - H_v <= v(1-v)(1-b/a)^2 b for a < b.
CertificateReport check_one_sided_bounds(ScalarPair p, double v, const CheckOptions& opts = {});

/// g_v(t) = (A_v(1,t) - H_v(1,t)) / (1-t)^2 for each t > 1. Margins are
/// |g_v(t) - v(1-v)|; holds when every g_v(t) lies in [v(1-v)/t, v(1-v)] and
/// the gaps shrink as t decreases to 1.
CertificateReport probe_weight_factor_sharpness(double v, std::span<const double> t_list,
                                                const CheckOptions& opts = {});

/// (prod(a_i + b_i))^(1/n) >= (prod a_i)^(1/n) + (prod b_i)^(1/n).
CertificateReport check_minkowski_product(std::span<const double> a, std::span<const double> b,
                                          const CheckOptions& opts = {});

/// a^l - b^l >= (a - b)^l for a > b > 0, l >= 1.
CertificateReport check_power_difference(double a, double b, double lambda, const CheckOptions& opts = {});

// ---- Loewner order -----------------------------------------------------

/// A !_v B <= A #_v B <= A nabla_v B.
CertificateReport check_matrix_mean_chain(const SpdMatrix& a, const SpdMatrix& b, double v,
                                          const CheckOptions& opts = {});

/// With D_w = A nabla_w B - A !_w B and 0 < v <= tau < 1:
///   (v/tau) D_tau <= D_v <= ((1-v)/(1-tau)) D_tau
CertificateReport check_loewner_difference_ratio(const SpdMatrix& a, const SpdMatrix& b, double v, double tau,
                                                 const CheckOptions& opts = {});

/// tau = 1/2 case, 0 < v <= 1/2: 2v D_half <= D_v <= 2(1-v) D_half.
CertificateReport check_loewner_half_weight(const SpdMatrix& a, const SpdMatrix& b, double v,
                                            const CheckOptions& opts = {});

/// D_v <= v(1-v)(1-M/m)^2 B under 0 < mI <= A <= B <= MI. Throws
/// Error{HypothesisViolated} naming the first failing order check.
CertificateReport check_loewner_bounded_difference(const SpdMatrix& a, const SpdMatrix& b, double v,
                                                   BoundsHypothesis h, const CheckOptions& opts = {});

// ---- Hilbert-Schmidt norm ----------------------------------------------

/// (v/tau)^2 <= (|AX_v|^2 - |HX_v|^2) / (|AX_tau|^2 - |HX_tau|^2) <= ((1-v)/(1-tau))^2
/// where AX_w = wAX + (1-w)XB and HX_w = [wX^-1A^-1 + (1-w)B^-1X^-1]^-1.
/// A non-positive denominator beyond tolerance is reported as a violation.
CertificateReport check_hs_difference_ratio(const SpdMatrix& a, const SpdMatrix& b, const ComplexMatrix& x,
                                            double v, double tau, const CheckOptions& opts = {});

/// |vAX + (1-v)XB|^2 >= |A^v X B^(1-v)|^2 >= |HX_v|^2.
CertificateReport check_hs_mean_chain(const SpdMatrix& a, const SpdMatrix& b, const ComplexMatrix& x, double v,
                                      const CheckOptions& opts = {});

/// 0 < v <= 1/2: 4v^2 N_half <= N_v <= 4(1-v)^2 N_half with N_w = |AX_w|^2 - |HX_w|^2.
CertificateReport check_hs_half_weight(const SpdMatrix& a, const SpdMatrix& b, const ComplexMatrix& x, double v,
                                       const CheckOptions& opts = {});

// ---- determinants ------------------------------------------------------

/// det(A !_v B)^l <= det(A nabla_v B)^l.
CertificateReport check_det_power_order(const SpdMatrix& a, const SpdMatrix& b, double v, double lambda,
                                        const CheckOptions& opts = {});

/// (v/tau)^l det(D_tau)^(l/n) <= det(A nabla_v B)^(l/n) - det(A !_v B)^(l/n).
/// Degenerate when the smallest eigenvalue of D_tau is <= 1e-10 |A nabla_tau B|_F.
CertificateReport check_det_root_difference(const SpdMatrix& a, const SpdMatrix& b, double v, double tau,
                                            double lambda, const CheckOptions& opts = {});

/// det(A !_v B) + (v/tau)^n det(D_tau) <= det(A nabla_v B).
CertificateReport check_det_difference(const SpdMatrix& a, const SpdMatrix& b, double v, double tau,
                                       const CheckOptions& opts = {});

/// 0 <= v <= 1/2: det(A !_v B) + (2v)^n det(D_half) <= det(A nabla_v B).
CertificateReport check_det_half_weight(const SpdMatrix& a, const SpdMatrix& b, double v,
                                        const CheckOptions& opts = {});

}  // namespace matmeans
