#ifndef REDFORM_JSON_IO_HPP
#define REDFORM_JSON_IO_HPP

#include <json.hpp>

#include "redform/basis.hpp"
#include "redform/theorems.hpp"

namespace redform {

using Json = nlohmann::ordered_json;

// { "precision": p, "coeffs": [[exponent, "num/den"], ...] }, exponents
// ascending, rationals as lowest-terms strings.
inline Json series_to_json(const LaurentSeries& f) {
  if (f.precision() >= LaurentSeries::kInfPrec)
    throw Error("series_to_json: refusing to serialize unbounded precision");
  Json coeffs = Json::array();
  for (const auto& [e, c] : f.terms()) coeffs.push_back(Json::array({e, c.str()}));
  return Json{{"precision", f.precision()}, {"coeffs", std::move(coeffs)}};
}

inline LaurentSeries series_from_json(const Json& j) {
  std::vector<LaurentSeries::Term> terms;
  for (const auto& item : j.at("coeffs")) {
    terms.emplace_back(item.at(0).get<std::int64_t>(),
                       Rational::parse(item.at(1).get<std::string>()));
  }
  return LaurentSeries(std::move(terms), j.at("precision").get<std::int64_t>());
}

inline Json report_to_json(const VerificationReport& rep) {
  Json witnesses = Json::array();
  for (const auto& w : rep.witnesses)
    witnesses.push_back(Json{{"n", w.n}, {"value", w.value.str()}});
  Json out{{"check", rep.check}, {"pass", rep.pass}, {"witnesses", std::move(witnesses)}};
  if (!rep.detail.empty()) out["detail"] = rep.detail;
  return out;
}

inline Json case_report_to_json(const CaseReport& rep) {
  Json out{{"which", which_name(rep.c.which)},
           {"N", rep.c.N},
           {"k", rep.c.k},
           {"m", rep.c.m},
           {"t", rep.c.t},
           {"ell", rep.c.ell},
           {"n", rep.c.n},
           {"d", rep.c.d},
           {"status", rep.status == CaseReport::Status::Pass
                          ? "pass"
                          : rep.status == CaseReport::Status::Fail ? "fail" : "skipped"}};
  if (rep.status != CaseReport::Status::Skipped) {
    out["lhs"] = rep.lhs.str();
    out["rhs"] = rep.rhs.str();
  }
  if (rep.modulus) out["modulus"] = rep.modulus->get_str();
  if (!rep.note.empty()) out["note"] = rep.note;
  return out;
}

inline Json form_to_json(const ReducedForm& rf) {
  return Json{{"m", rf.m}, {"s", rf.s.str()}, {"series", series_to_json(*rf.series)}};
}

}  // namespace redform

#endif
