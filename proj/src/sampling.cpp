#include "matmeans/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "matmeans/error.hpp"
#include "matmeans/kernels.hpp"
#include "matmeans/linalg.hpp"

namespace matmeans {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t mix(SeedPath p) {
  std::uint64_t h = splitmix64(p.master_seed);
  h = splitmix64(h ^ p.stream);
  return splitmix64(h ^ p.trial_index);
}

constexpr double kRelativeBand = 1e-3;
constexpr int kMaxAttempts = 10;

}  // namespace

Rng::Rng(SeedPath path) : engine_(mix(path)) {}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::log_uniform(double lo, double hi) {
  if (lo == hi) return lo;
  return std::exp(uniform(std::log(lo), std::log(hi)));
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 == 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double phi = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(phi);
  has_spare_ = true;
  return r * std::cos(phi);
}

cplx Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

ComplexMatrix random_unitary(std::size_t dim, Rng& rng) {
  if (dim == 0) throw Error(ErrorKind::InvalidArgument, "dim must be >= 1");
  const auto& k = kernels::active();
  // Rows of q are the columns of U; two Gram-Schmidt passes keep the
  // orthogonality defect at rounding level.
  ComplexMatrix q(dim);
  for (auto& z : q.entries()) z = rng.complex_normal();
  for (std::size_t j = 0; j < dim; ++j) {
    cplx* col = q.row(j).data();
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t i = 0; i < j; ++i) {
        const cplx* prev = q.row(i).data();
        k.caxpy(-k.dotc(prev, col, dim), prev, col, dim);
      }
      const double nrm = std::sqrt(k.sum_abs2(col, dim));
      for (std::size_t r = 0; r < dim; ++r) col[r] /= nrm;
    }
  }
  ComplexMatrix u(dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) u(r, c) = q(c, r);
  return u;
}

ComplexMatrix random_unitary(std::size_t dim, SeedPath seed) {
  Rng rng(seed);
  return random_unitary(dim, rng);
}

std::vector<double> random_spectrum(const SpectrumSpec& spec, Rng& rng) {
  if (spec.dim == 0 || !(spec.min_eig > 0.0) || !(spec.max_eig >= spec.min_eig) || !std::isfinite(spec.max_eig)) {
    throw Error(ErrorKind::InvalidArgument, "invalid spectrum spec");
  }
  const double lo = spec.min_eig;
  const double hi = spec.max_eig;
  std::vector<double> ev(spec.dim);
  switch (spec.distribution) {
    case SpectrumDistribution::LogUniform:
      for (double& x : ev) x = rng.log_uniform(lo, hi);
      break;
    case SpectrumDistribution::Uniform:
      for (double& x : ev) x = rng.uniform(lo, hi);
      break;
    case SpectrumDistribution::Clustered: {
      const double c1 = rng.log_uniform(lo, hi);
      const double c2 = rng.log_uniform(lo, hi);
      for (double& x : ev) {
        const double c = rng.uniform() < 0.5 ? c1 : c2;
        x = std::clamp(c * (1.0 + 1e-6 * rng.uniform(-1.0, 1.0)), lo, hi);
      }
      break;
    }
  }
  if (spec.dim >= 2 && spec.distribution != SpectrumDistribution::Clustered) {
    ev[0] = hi;
    ev[1] = lo;
  }
  return ev;
}

SpdMatrix random_spd(const SpectrumSpec& spec, Rng& rng) {
  auto ev = random_spectrum(spec, rng);
  return SpdMatrix::from_spectrum(random_unitary(spec.dim, rng), std::move(ev));
}

SpdMatrix random_spd(const SpectrumSpec& spec, SeedPath seed) {
  Rng rng(seed);
  return random_spd(spec, rng);
}

std::pair<SpdMatrix, SpdMatrix> random_ordered_pair(std::size_t dim, double m, double M, Rng& rng) {
  if (dim == 0 || !(m > 0.0) || !(M >= m) || !std::isfinite(M)) {
    throw Error(ErrorKind::InvalidArgument, "requires dim >= 1 and 0 < m <= M");
  }
  if (m == M) {
    const std::vector<double> d(dim, m);
    const SpdMatrix a = SpdMatrix::diagonal(d);
    return {a, a};
  }
  const HermitianMatrix lower = HermitianMatrix::diagonal(std::vector<double>(dim, m));
  const HermitianMatrix upper = HermitianMatrix::diagonal(std::vector<double>(dim, M));
  const double band = kRelativeBand * (M - m);

  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    SpectrumSpec spec{dim, m + band, M - band, SpectrumDistribution::Uniform};
    std::vector<double> ev_b = random_spectrum(spec, rng);
    const SpdMatrix b = SpdMatrix::from_spectrum(random_unitary(dim, rng), std::move(ev_b));

    // Delta strictly positive definite with ||Delta||_2 < lambda_min(B) - m.
    const double gap = b.min_eig() - m;
    if (!(gap > 0.0)) continue;
    std::vector<double> ev_d(dim);
    for (double& x : ev_d) x = gap * rng.uniform(0.05, 0.95);
    const SpdMatrix delta = SpdMatrix::from_spectrum(random_unitary(dim, rng), std::move(ev_d));
    const HermitianMatrix a_h = b.hermitian() - delta.hermitian();

    try {
      SpdMatrix a(a_h);
      if (loewner_leq(lower, a, 0.0).holds && loewner_leq(a, b, 0.0).holds && loewner_leq(b, upper, 0.0).holds) {
        return {std::move(a), b};
      }
    } catch (const Error&) {
    }
  }
  throw Error(ErrorKind::ConstructionFailure, "ordered pair not found in " + std::to_string(kMaxAttempts) +
                                                  " attempts for m=" + std::to_string(m) +
                                                  ", M=" + std::to_string(M));
}

std::pair<SpdMatrix, SpdMatrix> random_ordered_pair(std::size_t dim, double m, double M, SeedPath seed) {
  Rng rng(seed);
  return random_ordered_pair(dim, m, M, rng);
}

ComplexMatrix random_invertible(std::size_t dim, double cond_cap, Rng& rng) {
  if (!(cond_cap >= 1.0) || !std::isfinite(cond_cap)) throw Error(ErrorKind::InvalidArgument, "cond_cap must be >= 1");
  const double half = std::sqrt(cond_cap);
  ComplexMatrix u = random_unitary(dim, rng);
  const ComplexMatrix v = random_unitary(dim, rng);
  for (std::size_t c = 0; c < dim; ++c) {
    const double s = rng.log_uniform(1.0 / half, half);
    for (std::size_t r = 0; r < dim; ++r) u(r, c) *= s;
  }
  return u * v.adjoint();
}

ComplexMatrix random_invertible(std::size_t dim, double cond_cap, SeedPath seed) {
  Rng rng(seed);
  return random_invertible(dim, cond_cap, rng);
}

ParamSample sample_params(const ParamRules& rules, Rng& rng) {
  if ((rules.a_lt_b && rules.a_gt_b) || !(rules.lambda_max >= 1.0) || !(rules.weight_sep > 0.0) ||
      !(rules.weight_sep < 0.25) || !(rules.pair_sep >= 0.0 && rules.pair_sep < 1.0) || !(rules.pair_range > 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "inconsistent parameter rules");
  }
  const double w = rules.weight_sep;
  ParamSample s{};
  const double v_hi = rules.v_le_half ? 0.5 : 1.0 - w;
  if (rules.v_le_tau) {
    s.params.v = rng.uniform(w, std::min(v_hi, 1.0 - 2.0 * w));
    s.params.tau = rng.uniform(s.params.v + w, 1.0 - w);
  } else {
    s.params.v = rng.uniform(w, v_hi);
    s.params.tau = rng.uniform(w, 1.0 - w);
  }
  s.params.lambda = rules.lambda_max == 1.0 ? 1.0 : rng.uniform(1.0, rules.lambda_max);

  const double r = std::sqrt(rules.pair_range);
  const double sep = rules.pair_sep;
  for (;;) {
    double a = rng.log_uniform(1.0 / r, r);
    double b = rng.log_uniform(1.0 / r, r);
    if ((rules.a_lt_b && a > b) || (rules.a_gt_b && a < b)) std::swap(a, b);
    const double big = std::max(a, b);
    const bool separated = std::abs(a - b) >= sep * big && a != b;
    if ((rules.a_lt_b || rules.a_gt_b || rules.distinct) && !separated) continue;
    s.pair = {a, b};
    return s;
  }
}

ParamSample sample_params(const ParamRules& rules, SeedPath seed) {
  Rng rng(seed);
  return sample_params(rules, rng);
}

}  // namespace matmeans
