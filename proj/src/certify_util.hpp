#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "matmeans/certifiers.hpp"
#include "matmeans/error.hpp"

namespace matmeans::detail {

inline constexpr double kBaseTol = 1e-9;
// Strict scalar inequalities skip pairs closer than this (relative).
inline constexpr double kDegenerateRel = 1e-8;

inline double tolerance(const CheckOptions& opts, double scale) { return kBaseTol * opts.tolerance_scale * scale; }

inline CertificateReport finish(Inequality id, std::vector<Margin> margins, double tol,
                                const std::function<nlohmann::json()>& witness, bool strict = false) {
  CertificateReport r{id};
  r.margins = std::move(margins);
  r.tol_used = tol;
  for (const auto& m : r.margins) {
    if (!(m.value >= -tol) || (strict && !(m.value > 0.0))) r.holds = false;
  }
  if (!r.holds) r.witness = witness();
  return r;
}

inline CertificateReport degenerate(Inequality id, std::string note) {
  CertificateReport r{id};
  r.holds = true;
  r.degenerate = true;
  r.note = std::move(note);
  return r;
}

inline void require(bool ok, ErrorKind kind, const std::string& what) {
  if (!ok) throw Error(kind, what);
}

inline void require_open_weight(double v, const char* name) {
  require(v > 0.0 && v < 1.0, ErrorKind::InvalidArgument, std::string(name) + " must lie in (0,1)");
}

inline void require_lambda(double lambda) {
  require(lambda >= 1.0 && lambda < 1e6, ErrorKind::InvalidArgument, "lambda must be >= 1");
}

}  // namespace matmeans::detail
