#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <utility>

#include "matmeans/certifiers.hpp"

namespace matmeans {

namespace {

constexpr std::array<std::pair<Inequality, std::string_view>, 20> kTags{{
    {Inequality::ScalarMeanChain, "scalar_agh"},
    {Inequality::MatrixMeanChain, "matrix_agh"},
    {Inequality::DifferenceRatio, "thm21"},
    {Inequality::DifferenceRatioLimits, "thm21_limits"},
    {Inequality::HalfWeightDifference, "rem21"},
    {Inequality::ReciprocalSandwich, "lemma21"},
    {Inequality::OneSidedBounds, "thm22"},
    {Inequality::WeightFactorSharpness, "thm22_sharpness"},
    {Inequality::LoewnerDifferenceRatio, "thm31"},
    {Inequality::LoewnerHalfWeight, "cor31"},
    {Inequality::LoewnerBoundedDifference, "thm32"},
    {Inequality::HsDifferenceRatio, "thm41"},
    {Inequality::HsMeanChain, "cor41"},
    {Inequality::HsHalfWeight, "cor42"},
    {Inequality::DetPowerOrder, "prop51"},
    {Inequality::MinkowskiProduct, "lemma51"},
    {Inequality::PowerDifference, "lemma52"},
    {Inequality::DetRootDifference, "thm51"},
    {Inequality::DetDifference, "cor51"},
    {Inequality::DetHalfWeight, "cor52"},
}};

constexpr std::array<Inequality, 18> kVerifiable{
    Inequality::ScalarMeanChain,        Inequality::MatrixMeanChain,   Inequality::DifferenceRatio,
    Inequality::HalfWeightDifference,   Inequality::ReciprocalSandwich, Inequality::OneSidedBounds,
    Inequality::LoewnerDifferenceRatio, Inequality::LoewnerHalfWeight, Inequality::LoewnerBoundedDifference,
    Inequality::HsDifferenceRatio,      Inequality::HsMeanChain,       Inequality::HsHalfWeight,
    Inequality::DetPowerOrder,          Inequality::MinkowskiProduct,  Inequality::PowerDifference,
    Inequality::DetRootDifference,      Inequality::DetDifference,     Inequality::DetHalfWeight,
};

}  // namespace

std::string_view tag(Inequality id) noexcept {
  for (const auto& [k, t] : kTags)
    if (k == id) return t;
  return "unknown";
}

std::optional<Inequality> parse_tag(std::string_view t) noexcept {
  for (const auto& [k, s] : kTags)
    if (s == t) return k;
  return std::nullopt;
}

std::span<const Inequality> verifiable_inequalities() noexcept { return kVerifiable; }

double CertificateReport::min_margin() const noexcept {
  if (margins.empty()) return std::numeric_limits<double>::quiet_NaN();
  double m = margins.front().value;
  for (const auto& x : margins) m = std::min(m, x.value);
  return m;
}

nlohmann::json to_json(const ComplexMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (const cplx z : m.row(i)) row.push_back({z.real(), z.imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json to_json(const CertificateReport& r) {
  nlohmann::json j;
  j["inequality_id"] = tag(r.id);
  j["holds"] = r.holds;
  j["degenerate"] = r.degenerate;
  j["tol"] = r.tol_used;
  nlohmann::json margins = nlohmann::json::object();
  for (const auto& m : r.margins) margins[m.name] = m.value;
  j["margins"] = std::move(margins);
  if (!r.note.empty()) j["note"] = r.note;
  if (r.witness) j["witness"] = *r.witness;
  return j;
}

}  // namespace matmeans
