#include "offshell/verify.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "json.hpp"
#include "offshell/bessel.hpp"
#include "offshell/error.hpp"
#include "offshell/fields.hpp"
#include "offshell/greens.hpp"
#include "offshell/kgroute.hpp"
#include "offshell/oracle.hpp"
#include "offshell/records.hpp"

namespace offshell {

namespace {

using ojson = nlohmann::ordered_json;

// Wall time per check, kept out of every serialised form.
class Stopwatch {
 public:
  double lap() {
    const auto now = std::chrono::steady_clock::now();
    const double s = std::chrono::duration<double>(now - last_).count();
    last_ = now;
    return s;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

void add(SuiteReport& rep, Stopwatch& sw, Check c) {
  c.seconds = sw.lap();
  rep.checks.push_back(std::move(c));
}

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

Check make_check(std::string name, std::string criterion, double measured, double tol, bool ok,
                 std::string detail) {
  Check c;
  c.name = std::move(name);
  c.criterion = std::move(criterion);
  c.measured = measured;
  c.tolerance = tol;
  c.passed = ok;
  c.detail = std::move(detail);
  return c;
}

Check diagnostic(std::string name, double measured, double tol, bool ok, std::string detail) {
  Check c = make_check(std::move(name), "", measured, tol, ok, std::move(detail));
  c.diagnostic = true;
  return c;
}

// a log-spaced in [1e-2, 1e2], |b|/a log-spaced in [1e-3, 0.999] and shuffled
// against a by a fixed stride.
std::vector<std::pair<double, double>> ab_pairs(std::size_t n, bool elliptic) {
  std::vector<std::pair<double, double>> out;
  const double dn = static_cast<double>(std::max<std::size_t>(2, n) - 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = std::pow(10.0, -2.0 + 4.0 * static_cast<double>(i) / dn);
    const std::size_t k = (i * 7) % n;
    const double rho = std::pow(10.0, -3.0 + (3.0 + std::log10(0.999)) * static_cast<double>(k) / dn);
    const double sign = (i % 2 == 0) ? 1.0 : -1.0;
    out.emplace_back(a, sign * (elliptic ? a * rho : a / rho));
  }
  return out;
}

struct Samples {
  std::vector<Event5> timelike;
  std::vector<Event5> outside;  // SPACELIKE4 or MIXED
};

Samples sample_events(const VerifyConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> ut(-6.0, 6.0);
  std::uniform_real_distribution<double> ur(0.0, 6.0);
  Samples s;
  std::size_t mixed = 0;
  while (s.timelike.size() < cfg.n_random || s.outside.size() < cfg.n_random || mixed < cfg.n_random / 4) {
    const Event5 e(ut(rng), ur(rng), ut(rng));
    switch (classify(e)) {
      case Region5::Timelike5:
        if (s.timelike.size() < cfg.n_random) s.timelike.push_back(e);
        break;
      case Region5::Mixed:
        if (s.outside.size() < cfg.n_random + cfg.n_random / 4) {
          s.outside.push_back(e);
          ++mixed;
        }
        break;
      case Region5::Spacelike4:
        if (s.outside.size() < cfg.n_random) s.outside.push_back(e);
        break;
      default:
        break;
    }
  }
  return s;
}

double canonical_abs_scale(const TestFunction& phi, const QuadSpec& q) {
  auto h = [&](double t, double r, double tau) { return std::abs(phi.radial_flux(t, r, tau)); };
  return pair_cone_kernel(0.0, h, phi.support(), q).value / kPi;
}

SuiteReport run_identities(const VerifyConfig& cfg) {
  SuiteReport rep;
  rep.suite = "identities";
  Stopwatch sw;
  const auto ell = ab_pairs(cfg.n_pairs, true);
  const auto hyp = ab_pairs(cfg.n_pairs, false);
  double worst = 0.0;
  for (auto [a, b] : ell) {
    const double ref = kPi / std::sqrt(a * a - b * b);
    worst = std::max(worst, std::abs(i_closed(a, b) + i_closed(a, -b) - ref) / ref);
  }
  add(rep, sw, make_check("I(a,b) + I(a,-b) = pi/sqrt(a^2-b^2)", "1", worst, 1e-12, worst <= 1e-12,
                                  std::to_string(ell.size()) + " pairs with a^2 > b^2"));
  worst = 0.0;
  for (auto [a, b] : hyp) {
    worst = std::max(worst, std::abs(i_closed(a, b) + i_closed(a, -b)) / std::abs(i_closed(a, b)));
  }
  add(rep, sw, make_check("I(a,b) + I(a,-b) = 0", "1", worst, 1e-12, worst <= 1e-12,
                                  std::to_string(hyp.size()) + " pairs with b^2 > a^2"));
  worst = 0.0;
  double printed_gap = 0.0;
  std::size_t n = 0;
  for (const auto* set : {&ell, &hyp}) {
    for (auto [a, b] : *set) {
      const auto r = i_quadrature(a, b, cfg.quad);
      const double c = i_closed(a, b);
      worst = std::max(worst, std::abs(r.value - c) / std::max(1e-8, r.abs_err));
      if (set == &hyp) printed_gap = std::max(printed_gap, std::abs(i_closed_as_printed(a, b) - c) / std::abs(c));
      ++n;
    }
  }
  add(rep, sw, make_check("I_quadrature vs I_closed", "1", worst, 1.0, worst <= 1.0,
                                  "max |quad - closed| / max(1e-8, reported error) over " + std::to_string(n) +
                                      " pairs"));
  add(rep, sw, diagnostic("logarithmic branch as printed vs quadrature", printed_gap, 0.0,
                                  printed_gap > 0.1,
                                  "the printed b^2 > a^2 branch carries an extra -1/a; relative gap shown"));

  worst = 0.0;
  std::string det;
  for (double x : {0.5, 1.0, 2.0, 5.0, 10.0}) {
    const auto r = bessel_identity_integral(x, cfg.quad);
    const double d = std::abs(r.value - 0.5 * kPi * bessel_j0(x));
    worst = std::max(worst, d);
    det += "krho=" + num(x) + ":" + num(d) + " ";
  }
  add(rep, sw, make_check("Abel-regularised J0 identity", "2", worst, 1e-6, worst <= 1e-6, det));

  worst = 0.0;
  for (double k : {0.0, 0.3, 1.0, 2.5}) {
    for (double k5 : {-1.5, 0.0, 0.7}) {
      if (k == 0.0 && k5 == 0.0) continue;
      for (double t : {-3.0, -0.4, 0.0, 1.0, 2.2}) {
        const auto r = k0_principal_quadrature(k, k5, t, cfg.quad);
        worst = std::max(worst, std::abs(r.value - k0_principal_residues(k, k5, t)));
      }
    }
  }
  add(rep, sw, diagnostic("k0 principal value: residues vs quadrature", worst, 1e-8, worst <= 1e-8,
                                  "closed form pi sin(omega |t|)/omega is even in t"));
  rep.findings.push_back({"k0_pv_at_k1_t1", k0_principal_residues(1.0, 0.0, 1.0),
                          "principal value at k=1, k5=0, t=1 equals +pi sin(1)"});
  return rep;
}

std::vector<double> pairing_values(const std::vector<std::pair<std::string, TestFunction>>& suite,
                                   PairingResult (*fn)(const TestFunction&, const QuadSpec&),
                                   const QuadSpec& q, std::vector<double>* errs = nullptr) {
  std::vector<double> v;
  for (const auto& [label, phi] : suite) {
    const auto r = fn(phi, q);
    v.push_back(r.value);
    if (errs) errs->push_back(r.abs_err);
  }
  return v;
}

// Two-term least squares y = p x1 + s x2; returns (p, s, relative residual).
std::array<double, 3> fit_two(const std::vector<double>& x1, const std::vector<double>& x2,
                              const std::vector<double>& y) {
  double a11 = 0, a12 = 0, a22 = 0, b1 = 0, b2 = 0, yy = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    a11 += x1[i] * x1[i];
    a12 += x1[i] * x2[i];
    a22 += x2[i] * x2[i];
    b1 += x1[i] * y[i];
    b2 += x2[i] * y[i];
    yy += y[i] * y[i];
  }
  const double det = a11 * a22 - a12 * a12;
  const double p = (b1 * a22 - b2 * a12) / det;
  const double s = (a11 * b2 - a12 * b1) / det;
  double rr = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double d = y[i] - p * x1[i] - s * x2[i];
    rr += d * d;
  }
  return {p, s, yy > 0 ? std::sqrt(rr / yy) : 0.0};
}

SuiteReport run_routes(const VerifyConfig& cfg) {
  SuiteReport rep;
  rep.suite = "routes";
  Stopwatch sw;
  const Samples s = sample_events(cfg);
  double worst = 0.0;
  for (const auto& e : s.timelike) {
    const double c = eval_canonical(e);
    worst = std::max(worst, std::abs(eval_k5_route(e) - c) / std::abs(c));
  }
  add(rep, sw, make_check("K5_ROUTE = CANONICAL inside the 5D cone", "3", worst, 1e-12, worst <= 1e-12,
                                  std::to_string(s.timelike.size()) + " random TIMELIKE5 points"));
  std::size_t nonzero = 0;
  double g_worst = 0.0;
  std::size_t with_tau = 0;
  for (const auto& e : s.outside) {
    if (eval_k5_route(e) != 0.0) ++nonzero;
    if (e.tau() == 0.0) continue;
    const G1G2 g = eval_g1_g2(e);
    ++with_tau;
    if (g.g1 != 0.0) g_worst = std::max(g_worst, std::abs(g.g1 + g.g2) / std::abs(g.g1));
  }
  add(rep, sw, make_check("K5_ROUTE = 0 outside the 5D cone", "3", static_cast<double>(nonzero), 0.0,
                                  nonzero == 0,
                                  std::to_string(s.outside.size()) + " random SPACELIKE4/MIXED points"));
  add(rep, sw, make_check("g1 = -g2 outside the 5D cone", "3", g_worst, 1e-12, g_worst <= 1e-12,
                                  std::to_string(with_tau) + " points with tau != 0"));

  std::size_t differ = 0;
  for (const auto& e : s.timelike) {
    const double c = eval_canonical(e);
    if (std::abs(eval_oh_published(e) - c) > 0.1 * std::abs(c)) ++differ;
  }
  const double frac = static_cast<double>(differ) / static_cast<double>(s.timelike.size());
  Check oh = make_check("OH_PUBLISHED differs from CANONICAL by > 10%", "4a", frac, 0.9, frac >= 0.9,
                        "fraction of TIMELIKE5 points; OH_PUBLISHED is flagged known-erroneous");
  oh.expected_fail = true;
  add(rep, sw, oh);

  const auto suite = standard_suite();
  std::vector<double> cerr;
  const auto C = pairing_values(suite, &pair_canonical, cfg.quad, &cerr);
  const auto L = pairing_values(suite, &pair_lh_published, cfg.quad);
  std::vector<double> D;
  for (const auto& [label, phi] : suite) D.push_back(pair_lightcone_delta(phi).value);
  std::vector<double> diff(C.size());
  for (std::size_t i = 0; i < C.size(); ++i) diff[i] = L[i] - C[i];
  const auto [lam, res] = fit_one(D, diff);
  add(rep, sw, make_check("LH_PUBLISHED - CANONICAL = c <delta delta, phi>", "4b", res, 0.05, res < 0.05,
                                  "single-coefficient fit over " + std::to_string(suite.size()) +
                                      " test functions; c = " + num(lam) + ", printed candidates -1/4pi = " +
                                      num(-0.25 / kPi) + " and +1/4pi = " + num(0.25 / kPi)));
  const auto two = fit_two(D, C, diff);
  rep.findings.push_back({"lh_published_minus_canonical.delta_coefficient", lam,
                          "single-coefficient fit against the light-cone pairing"});
  rep.findings.push_back({"lh_published_minus_canonical.two_term.delta_coefficient", two[0],
                          "fit diff = p <delta delta, phi> + s <CANONICAL, phi>"});
  rep.findings.push_back({"lh_published_minus_canonical.two_term.canonical_coefficient", two[1],
                          "the smooth parts differ by this multiple of CANONICAL"});
  rep.findings.push_back({"lh_published_minus_canonical.two_term.residual", two[2], ""});

  double kg_worst = 0.0;
  std::vector<double> pr_minus_rw;
  std::string det;
  for (std::size_t i = 0; i < suite.size(); ++i) {
    const auto rw = pair_m_integration(suite[i].second, KGForm::Rewritten, cfg.quad);
    const auto pr = pair_m_integration(suite[i].second, KGForm::Printed, cfg.quad);
    const double bound = std::max(1e-2 * std::abs(C[i]), rw.abs_err + cerr[i]);
    const double ratio = std::abs(rw.value - C[i]) / (bound > 0 ? bound : 1e-300);
    kg_worst = std::max(kg_worst, ratio);
    pr_minus_rw.push_back(pr.value - rw.value);
    det += suite[i].first + ":" + num(ratio) + " ";
  }
  add(rep, sw, make_check("m-integrated REWRITTEN = CANONICAL", "5", kg_worst, 1.0, kg_worst <= 1.0,
                                  "|diff| / max(1e-2 |C|, combined error): " + det));
  const auto [kl, kres] = fit_one(D, pr_minus_rw);
  add(rep, sw, make_check("PRINTED - REWRITTEN = c <delta delta, phi>", "5", kres, 0.05, kres < 0.05,
                                  "c = " + num(kl) + " (1/4pi = " + num(0.25 / kPi) + ")"));
  rep.findings.push_back({"kg_printed_minus_rewritten.delta_coefficient", kl,
                          "light-cone coefficient carried by the printed Klein-Gordon form"});
  return rep;
}

SuiteReport run_oracle(const VerifyConfig& cfg) {
  SuiteReport rep;
  rep.suite = "oracle";
  Stopwatch sw;
  const auto suite = standard_suite();
  std::vector<double> C, F, D, N, ferr, cerr;
  for (const auto& [label, phi] : suite) {
    const auto c = pair_canonical(phi, cfg.quad);
    const auto f = fourier_pairing(phi, Signature::o41(), cfg.quad);
    C.push_back(c.value);
    cerr.push_back(c.abs_err);
    F.push_back(f.value);
    ferr.push_back(f.abs_err);
    D.push_back(pair_lightcone_delta(phi).value);
    N.push_back(canonical_abs_scale(phi, cfg.quad));
  }
  double worst = 0.0;
  double spacelike = 0.0;
  std::string det;
  for (std::size_t i = 0; i < suite.size(); ++i) {
    const double tol = std::max(2e-3 * N[i], ferr[i] + cerr[i]);
    const double ratio = tol > 0 ? std::abs(F[i] - C[i]) / tol : 0.0;
    det += suite[i].first + ":" + num(ratio) + " ";
    if (suite[i].first == "spacelike4-shell") {
      spacelike = std::abs(F[i]);
    } else {
      worst = std::max(worst, ratio);
    }
  }
  add(rep, sw, make_check("Fourier oracle = CANONICAL", "6", worst, 1.0, worst <= 1.0,
                                  "|F - C| / max(2e-3 <|CANONICAL|, phi>, combined error): " + det));
  add(rep, sw, make_check("Fourier oracle vanishes for spacelike support", "6", spacelike, cfg.quad.tol,
                                  spacelike <= cfg.quad.tol, "absolute value"));

  const auto [kappa, kres] = fit_one(C, F);
  std::vector<double> rest(F.size());
  for (std::size_t i = 0; i < F.size(); ++i) rest[i] = F[i] - kappa * C[i];
  double lam = 0.0;
  {
    double num_ = 0.0, den = 0.0;
    for (std::size_t i = 0; i < D.size(); ++i) {
      num_ += D[i] * rest[i];
      den += D[i] * D[i];
    }
    lam = den > 0 ? num_ / den : 0.0;
  }
  add(rep, sw, diagnostic("oracle normalization relative to CANONICAL", kappa, 0.0, true,
                                  "fit F = kappa C, relative residual " + num(kres)));
  struct Candidate {
    const char* name;
    double coeff;  // as a multiple of CANONICAL
  };
  const Candidate cands[] = {{"CANONICAL, +1/(2 pi^2) d/d(r^2)", 1.0},
                             {"LH_PRINCIPAL, -1/(2 pi^2) d/d(x^2)", -1.0},
                             {"LH_PUBLISHED, -1/(4 pi^2) d/d(r^2)", -0.5}};
  const Candidate* best = &cands[0];
  for (const auto& c : cands) {
    if (std::abs(c.coeff - kappa) < std::abs(best->coeff - kappa)) best = &c;
  }
  rep.findings.push_back({"oracle.normalization_vs_canonical", kappa,
                          std::string("the Fourier integral supports the coefficient of ") + best->name});
  rep.findings.push_back({"oracle.normalization_fit_residual", kres, ""});
  rep.findings.push_back({"oracle.lightcone_coefficient", lam,
                          "coefficient of <delta(t^2 - r^2) delta(tau), phi> left after the smooth fit"});
  rep.findings.push_back({"oracle.fundamental_solution_factor", -kappa,
                          "box g = delta is solved by this multiple of CANONICAL; the oracle itself solves box g = -delta"});

  const auto& phi0 = suite.front().second;
  const auto f1 = fourier_pairing(phi0.reflected_t_tau(), Signature::o41(), cfg.quad);
  const double refl = std::abs(f1.value - F.front());
  add(rep, sw, diagnostic("oracle invariant under (t, tau) -> (-t, -tau)", refl,
                                  ferr.front() + f1.abs_err + 1e-12,
                                  refl <= ferr.front() + f1.abs_err + 1e-12, ""));
  return rep;
}

SuiteReport run_pde(const VerifyConfig& cfg) {
  SuiteReport rep;
  rep.suite = "pde";
  Stopwatch sw;
  CurrentModel j;
  j.sigma_r = j.sigma_t = j.sigma_tau = cfg.pde_sigma;
  const double h = cfg.pde_extent / static_cast<double>(cfg.pde_n);
  const GridSpec g1 = GridSpec::around(j, cfg.pde_n, h);
  QuadSpec q2 = cfg.quad;
  q2.grid *= 2;
  const GridSpec g2 = GridSpec::around(j, 2 * cfg.pde_n, 0.5 * h);

  const FieldGrid a1 = convolve_retarded(j, g1, cfg.quad);
  const ResidualResult r1 = residual(a1, j);
  add(rep, sw, make_check("retarded kernel: box a = j", "7", r1.rel_l2, cfg.pde_tol,
                                  r1.rel_l2 <= cfg.pde_tol,
                                  std::to_string(cfg.pde_n) + "^3 grid, relative L2; max-norm " +
                                      num(r1.pointwise_max) + ", stencil estimate " + num(r1.truncation)));
  std::size_t nonzero = 0;
  std::size_t rows = 0;
  for (std::size_t k = 0; k < g1.n_tau; ++k) {
    if (a1.tau(k) >= j.tau_lo()) continue;
    ++rows;
    for (std::size_t it = 0; it < g1.n_t; ++it) {
      for (std::size_t ir = 0; ir < g1.n_r; ++ir) {
        if (a1.at(it, ir, k) != 0.0) ++nonzero;
      }
    }
  }
  add(rep, sw, make_check("retarded field vanishes before the source", "7", static_cast<double>(nonzero),
                                  0.0, nonzero == 0 && rows > 0,
                                  std::to_string(rows) + " tau rows below the source support"));

  const KernelSpec half{KernelKind::Even, 0.5};
  const FieldGrid e1 = convolve(j, g1, cfg.quad, half);
  const ResidualResult s1 = residual(e1, j);
  add(rep, sw, diagnostic("even kernel x 1/2: box a = j", s1.rel_l2, cfg.pde_tol, s1.rel_l2 <= cfg.pde_tol,
                                  std::to_string(cfg.pde_n) + "^3 grid"));
  if (cfg.pde_refine) {
    const FieldGrid a2 = convolve_retarded(j, g2, q2);
    const ResidualResult r2 = residual(a2, j);
    const double ratio = r1.rel_l2 / r2.rel_l2;
    add(rep, sw, make_check("retarded kernel: refinement gain", "7", ratio, 3.0, ratio >= 3.0,
                                    "rel_l2 " + num(r1.rel_l2) + " -> " + num(r2.rel_l2) + " at " +
                                        std::to_string(2 * cfg.pde_n) + "^3"));
    const FieldGrid e2 = convolve(j, g2, q2, half);
    const ResidualResult s2 = residual(e2, j);
    const double sratio = s1.rel_l2 / s2.rel_l2;
    add(rep, sw, diagnostic("even kernel x 1/2: refinement gain", sratio, 3.0, sratio >= 3.0,
                                    "rel_l2 " + num(s1.rel_l2) + " -> " + num(s2.rel_l2)));
  }
  rep.findings.push_back({"pde.retarded_rel_l2", r1.rel_l2, "2 theta(tau) CANONICAL"});
  rep.findings.push_back({"pde.even_half_rel_l2", s1.rel_l2, "CANONICAL / 2, time-symmetric"});
  return rep;
}

ojson quad_json(const QuadSpec& q) {
  ojson o;
  o["eps_seq"] = q.eps_seq;
  o["k_max"] = q.k_max;
  o["grid"] = q.grid;
  o["tol"] = q.tol;
  o["max_evals"] = q.max_evals;
  return o;
}

}  // namespace

std::pair<double, double> fit_one(const std::vector<double>& x, const std::vector<double>& y) {
  double xy = 0.0, xx = 0.0, yy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    xy += x[i] * y[i];
    xx += x[i] * x[i];
    yy += y[i] * y[i];
  }
  const double c = xx > 0 ? xy / xx : 0.0;
  double rr = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) rr += (y[i] - c * x[i]) * (y[i] - c * x[i]);
  return {c, yy > 0 ? std::sqrt(rr / yy) : 0.0};
}

std::vector<std::pair<std::string, TestFunction>> standard_suite() {
  return {
      {"timelike5", TestFunction::gaussian(Event5(3.0, 0.0, 0.0), 0.5)},
      {"mixed", TestFunction::gaussian(Event5(2.0, 0.0, 3.0), 0.4)},
      {"spacelike4-shell", TestFunction::gaussian(Event5(0.0, 3.0, 0.5), 0.35)},
      {"cone4-shell", TestFunction::gaussian(Event5(3.0, 3.0, 0.0), 0.35)},
      {"cone5", TestFunction::gaussian(Event5(2.0, 0.0, 2.0), 0.4)},
      {"cone4-past-shell", TestFunction::gaussian(Event5(-2.5, 3.0, 0.2), 0.35)},
  };
}

std::string VerifyConfig::to_json() const {
  ojson o;
  o["seed"] = seed;
  o["n_random"] = n_random;
  o["n_pairs"] = n_pairs;
  o["quad"] = quad_json(quad);
  o["pde_n"] = pde_n;
  o["pde_extent"] = pde_extent;
  o["pde_sigma"] = pde_sigma;
  o["pde_tol"] = pde_tol;
  o["pde_refine"] = pde_refine;
  return o.dump();
}

VerifyConfig VerifyConfig::from_json(std::string_view text) {
  VerifyConfig c;
  try {
    const auto j = nlohmann::json::parse(text.begin(), text.end());
    if (!j.is_object()) throw Error(ErrorCode::InvalidArgument, "config must be a JSON object");
    c.seed = j.value("seed", c.seed);
    c.n_random = j.value("n_random", c.n_random);
    c.n_pairs = j.value("n_pairs", c.n_pairs);
    c.pde_n = j.value("pde_n", c.pde_n);
    c.pde_extent = j.value("pde_extent", c.pde_extent);
    c.pde_sigma = j.value("pde_sigma", c.pde_sigma);
    c.pde_tol = j.value("pde_tol", c.pde_tol);
    c.pde_refine = j.value("pde_refine", c.pde_refine);
    if (j.contains("quad")) {
      const auto& q = j.at("quad");
      c.quad.eps_seq = q.value("eps_seq", c.quad.eps_seq);
      c.quad.k_max = q.value("k_max", c.quad.k_max);
      c.quad.grid = q.value("grid", c.quad.grid);
      c.quad.tol = q.value("tol", c.quad.tol);
      c.quad.max_evals = q.value("max_evals", c.quad.max_evals);
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("bad verify config: ") + e.what());
  }
  c.quad.validate();
  if (c.n_random < 1 || c.n_pairs < 2 || c.pde_n < 9 || !(c.pde_extent > 0) || !(c.pde_sigma > 0) ||
      !(c.pde_tol > 0)) {
    throw Error(ErrorCode::InvalidArgument, "verify config values out of range");
  }
  return c;
}

bool SuiteReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.diagnostic || c.passed; });
}

std::string SuiteReport::to_json(const VerifyConfig& cfg) const {
  ojson o;
  const std::string cj = cfg.to_json();
  o["suite"] = suite;
  o["version"] = std::string(version());
  o["config_hash"] = config_hash(cj);
  o["config"] = ojson::parse(cj);
  o["passed"] = passed();
  auto arr = ojson::array();
  for (const auto& c : checks) {
    ojson x;
    x["name"] = c.name;
    x["criterion"] = c.criterion;
    x["passed"] = c.passed;
    x["expected_fail"] = c.expected_fail;
    x["diagnostic"] = c.diagnostic;
    x["measured"] = c.measured;
    x["tolerance"] = c.tolerance;
    x["detail"] = c.detail;
    arr.push_back(std::move(x));
  }
  o["checks"] = std::move(arr);
  auto fa = ojson::array();
  for (const auto& f : findings) {
    ojson x;
    x["key"] = f.key;
    x["value"] = f.value;
    x["text"] = f.text;
    fa.push_back(std::move(x));
  }
  o["findings"] = std::move(fa);
  return o.dump(2) + "\n";
}

std::string SuiteReport::table() const {
  std::ostringstream os;
  os << "suite " << suite << "\n";
  for (const auto& c : checks) {
    const char* tag = c.diagnostic ? (c.passed ? "info" : "INFO") : (c.passed ? "PASS" : "FAIL");
    os << "  " << tag << (c.expected_fail ? " (expected-fail form)" : "") << "  [" << (c.criterion.empty() ? "-" : c.criterion)
       << "] " << c.name << "  measured=" << num(c.measured) << " tol=" << num(c.tolerance);
    if (!c.detail.empty()) os << "  " << c.detail;
    os << "\n";
  }
  for (const auto& f : findings) {
    os << "  finding " << f.key << " = " << num(f.value);
    if (!f.text.empty()) os << "  (" << f.text << ")";
    os << "\n";
  }
  os << "  => " << (passed() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

std::vector<std::string> suite_names() { return {"identities", "routes", "oracle", "pde"}; }

SuiteReport run_suite(std::string_view name, const VerifyConfig& cfg) {
  if (name == "identities") return run_identities(cfg);
  if (name == "routes") return run_routes(cfg);
  if (name == "oracle") return run_oracle(cfg);
  if (name == "pde") return run_pde(cfg);
  throw Error(ErrorCode::InvalidArgument, "unknown suite '" + std::string(name) + "'");
}

}  // namespace offshell
