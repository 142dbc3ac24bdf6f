// Command-line front end: reduced bases, Hecke images, coefficient tables,
// integrality certificates, and identity/congruence verification sweeps.
// All output is deterministic; rationals are printed as exact strings.

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>

#include "redform/json_io.hpp"

namespace {

using namespace redform;

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitHypothesisUnverified = 3;

std::int64_t default_prec() {
  if (const char* env = std::getenv("REDFORM_PREC")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return v;
  }
  return 100;
}

void print_series_text(std::ostream& os, const LaurentSeries& s) { os << s.str(24) << "\n"; }

int cmd_basis(std::int64_t N, std::int64_t k, std::int64_t pole_bound, std::int64_t prec,
              bool text) {
  BasisBuilder builder(SpaceParams::plus(N, k));
  builder.build(pole_bound, prec);
  Json forms = Json::array();
  std::vector<std::int64_t> pivots = builder.pool_pivots();
  std::sort(pivots.begin(), pivots.end(), std::greater<>());
  for (std::int64_t m : pivots) {
    if (m < pole_bound || m > 0) continue;
    ReducedForm rf = builder.form(m, prec);
    rf.series = std::make_shared<const LaurentSeries>(rf.series->truncated(prec));
    if (text) {
      std::cout << "F_" << m << " = s(" << m << ") f_" << m << ",  s = " << rf.s.str() << "\n  ";
      print_series_text(std::cout, *rf.series);
    } else {
      forms.push_back(form_to_json(rf));
    }
  }
  if (!text) {
    Json cert;
    try {
      IntegralityCertificate ic = basis_certificate(builder);
      cert = Json{{"pass", ic.pass},
                  {"m_eps", ic.m_eps ? Json(*ic.m_eps) : Json("none")},
                  {"checklist", ic.checklist}};
    } catch (const Error& e) {
      cert = Json{{"pass", nullptr}, {"note", e.what()}};
    }
    Json out{{"N", N},
             {"k", k},
             {"pole_bound", pole_bound},
             {"precision", prec},
             {"integrality_certificate", std::move(cert)},
             {"forms", std::move(forms)}};
    std::cout << out.dump(2) << "\n";
  }
  return kExitOk;
}

int cmd_form(std::int64_t N, std::int64_t k, std::int64_t m, std::int64_t prec, bool text) {
  BasisBuilder builder(SpaceParams::plus(N, k));
  ReducedForm rf = builder.form(m, prec);
  rf.series = std::make_shared<const LaurentSeries>(rf.series->truncated(prec));
  if (text) {
    print_series_text(std::cout, *rf.series);
  } else {
    std::cout << form_to_json(rf).dump(2) << "\n";
  }
  return kExitOk;
}

int cmd_hecke(std::int64_t N, std::int64_t k, std::int64_t m, std::int64_t t,
              std::int64_t prec, bool text) {
  BasisBuilder builder(SpaceParams::plus(N, k));
  LaurentSeries image = builder.hecke_image(m, t, prec);
  if (text) {
    print_series_text(std::cout, image);
  } else {
    Json out{{"N", N}, {"k", k}, {"m", m}, {"t", t}, {"series", series_to_json(image)}};
    std::cout << out.dump(2) << "\n";
  }
  return kExitOk;
}

int cmd_coeff_table(std::int64_t N, std::int64_t k, std::int64_t m, std::int64_t t,
                    std::int64_t d_max, bool text) {
  BasisBuilder builder(SpaceParams::plus(N, k));
  const SpaceParams& params = builder.params();
  Json rows = Json::array();
  for (std::int64_t d = 0; d <= d_max; ++d) {
    if (!epsilon_support(d, params)) continue;
    const Rational v = builder.b_coefficient(m, t, d);
    if (text) {
      std::cout << "B_" << t << "(" << m << ", " << d << ") = " << v.str() << "\n";
    } else {
      rows.push_back(Json{{"d", d}, {"value", v.str()}});
    }
  }
  if (!text) {
    Json out{{"N", N}, {"k", k}, {"m", m}, {"t", t}, {"coefficients", std::move(rows)}};
    std::cout << out.dump(2) << "\n";
  }
  return kExitOk;
}

int cmd_certify(std::int64_t N, std::int64_t k, std::int64_t prec) {
  BasisBuilder builder(SpaceParams::plus(N, k));
  IntegralityCertificate cert = basis_certificate(builder, prec);
  Json per_form = Json::array();
  for (const auto& rep : cert.per_form) per_form.push_back(report_to_json(rep));
  Json out{{"N", N},
           {"k", k},
           {"m_eps", cert.m_eps ? Json(*cert.m_eps) : Json("none")},
           {"checklist", cert.checklist},
           {"pass", cert.pass},
           {"per_form", std::move(per_form)}};
  std::cout << out.dump(2) << "\n";
  return cert.pass ? kExitOk : kExitVerificationFailure;
}

int emit_reports(const std::vector<CaseReport>& reports) {
  Json arr = Json::array();
  bool any_fail = false;
  for (const auto& rep : reports) {
    any_fail = any_fail || rep.status == CaseReport::Status::Fail;
    arr.push_back(case_report_to_json(rep));
  }
  std::size_t passed = 0, skipped = 0;
  for (const auto& rep : reports) {
    passed += rep.status == CaseReport::Status::Pass;
    skipped += rep.status == CaseReport::Status::Skipped;
  }
  Json out{{"cases", reports.size()}, {"passed", passed}, {"skipped", skipped},
           {"reports", std::move(arr)}};
  std::cout << out.dump(2) << "\n";
  return any_fail ? kExitVerificationFailure : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact reduced-form bases, half-integral-weight Hecke operators, and "
               "coefficient congruence verification"};
  app.require_subcommand(1);

  std::int64_t N = 7, k = 1, m = -3, t = 1, ell = 5, d_window = 30, d_max = 30;
  std::int64_t prec = default_prec(), pole_bound = -28;
  std::int64_t budget = 22000, pole_budget = 700, prop44_window = 30;
  unsigned n = 1, n_max = 2;
  std::string which_s = "prop44", output = "json";
  std::vector<std::int64_t> t_list{1}, ell_list{3, 5}, m_list{-1};

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--N", N, "level (odd, square-free)")->required();
    cmd->add_option("--k", k, "weight numerator (odd)")->required();
    cmd->add_option("--output", output, "json|text")->check(CLI::IsMember({"json", "text"}));
  };

  auto* basis = app.add_subcommand("basis", "reduced-form basis for the pole range");
  add_common(basis);
  basis->add_option("--pole-bound", pole_bound, "deepest principal exponent (<= 0)");
  basis->add_option("--prec", prec, "q-expansion precision (exclusive)");

  auto* form = app.add_subcommand("form", "single reduced form F_m");
  add_common(form);
  form->add_option("--m", m, "principal exponent")->required();
  form->add_option("--prec", prec, "q-expansion precision (exclusive)");

  auto* hecke = app.add_subcommand("hecke", "F_m | T(t^2)");
  add_common(hecke);
  hecke->add_option("--m", m)->required();
  hecke->add_option("--t", t, "operator parameter, gcd(t,4N)=1")->required();
  hecke->add_option("--prec", prec, "output precision");

  auto* table = app.add_subcommand("coeff-table", "B_t(m, d) for supported d");
  add_common(table);
  table->add_option("--m", m)->required();
  table->add_option("--t", t);
  table->add_option("--d-max", d_max);

  auto* certify = app.add_subcommand("certify", "finite integrality certificate for the basis");
  add_common(certify);
  certify->add_option("--prec", prec, "extra precision hint");

  auto* verify = app.add_subcommand("verify", "verify one identity/congruence family");
  add_common(verify);
  verify->add_option("--which", which_s,
                     "prop44|thm14i|thm14ii|thm14iii|cor15a|cor15b|lem45i|lem45ii|lem45iii|eq4")
      ->required();
  verify->add_option("--m", m)->required();
  verify->add_option("--t", t);
  verify->add_option("--ell", ell)->required();
  verify->add_option("--n", n);
  verify->add_option("--d-window", d_window);
  verify->add_option("--budget", budget, "input-precision budget");
  verify->add_option("--pole-budget", pole_budget);

  auto* sweep = app.add_subcommand("sweep", "aggregate verification over parameter ranges");
  add_common(sweep);
  sweep->add_option("--m-list", m_list, "principal exponents");
  sweep->add_option("--t-list", t_list);
  sweep->add_option("--ell-list", ell_list);
  sweep->add_option("--n-max", n_max);
  sweep->add_option("--d-window", d_window);
  sweep->add_option("--prop44-window", prop44_window);
  sweep->add_option("--budget", budget, "input-precision budget");
  sweep->add_option("--pole-budget", pole_budget);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  const bool text = output == "text";
  try {
    try {
      SpaceParams::plus(N, k);  // validate the (N, k) pair up front
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
    if (basis->parsed()) return cmd_basis(N, k, pole_bound, prec, text);
    if (form->parsed()) return cmd_form(N, k, m, prec, text);
    if (hecke->parsed()) return cmd_hecke(N, k, m, t, prec, text);
    if (table->parsed()) return cmd_coeff_table(N, k, m, t, d_max, text);
    if (certify->parsed()) return cmd_certify(N, k, prec);
    if (verify->parsed()) {
      const auto w = which_from_name(which_s);
      if (!w) throw UsageError("unknown --which value: " + which_s);
      BasisBuilder builder(SpaceParams::plus(N, k));
      TheoremVerifier ver(builder, budget, pole_budget);
      std::vector<CaseReport> reports;
      if (*w == Which::Prop44) {
        reports.push_back(ver.verify_prop44(m, t, ell, n, prop44_window));
      } else if (*w == Which::Eq4) {
        reports = ver.verify_eq4(m, t, ell, n, d_window);
      } else {
        reports = ver.verify_clause(*w, m, t, ell, n, d_window);
      }
      return emit_reports(reports);
    }
    if (sweep->parsed()) {
      BasisBuilder builder(SpaceParams::plus(N, k));
      TheoremVerifier ver(builder, budget, pole_budget);
      SweepSpec spec;
      spec.clauses = {Which::Prop44, Which::Thm14i, Which::Thm14ii, Which::Thm14iii,
                      Which::Cor15a, Which::Cor15b, Which::Lem45i, Which::Lem45ii,
                      Which::Lem45iii, Which::Eq4};
      spec.ms = m_list;
      spec.ts = t_list;
      spec.ells = ell_list;
      spec.n_max = n_max;
      spec.d_window = d_window;
      spec.prop44_window = prop44_window;
      return emit_reports(run_sweep(ver, spec));
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const HypothesisUnverified& e) {
    std::cerr << "hypothesis unverified: " << e.what() << "\n";
    return kExitHypothesisUnverified;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerificationFailure;
  }
  return kExitUsage;
}
