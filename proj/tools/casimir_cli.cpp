// casimir_cli: batch front end for the two-sphere classical Casimir library.
//
// Subcommands
//   energy       Phi_D, Phi_Delta, Phi_total (optionally a force proxy)
//   capacitance  c11, c22, c12, det C and the determinant identity residual
//   expand       short-distance expansion coefficients and values
//   verify       brute-force oracle cross-checks (exit 5 on failure)
//   sweep        Cartesian geometry grids streamed as CSV/JSON
//
// Exit codes: 0 success, 2 usage / invalid input, 3 degenerate geometry,
// 4 series non-convergence, 5 verification failure, 1 unexpected error.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "casimir/asymptotics.hpp"
#include "casimir/errors.hpp"
#include "casimir/geometry.hpp"
#include "casimir/monopole.hpp"
#include "casimir/oracle.hpp"
#include "casimir/scalar.hpp"
#include "casimir/series.hpp"
#include "casimir/specfun.hpp"
#include "casimir/version.hpp"

namespace {

using namespace casimir;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

enum class Rep { auto_rep, roundtrip, multipole, closed_form, asymptotic };
enum class Format { text, json, csv };

struct RunConfig {
  double tol = kDefaultTol;
  std::int64_t max_terms = kDefaultMaxTerms;
  Rep rep = Rep::auto_rep;
  Format format = Format::text;
  std::string out_path;
  bool force = false;
};

// ---------------------------------------------------------------------------
// Deterministic formatting: every float is rendered with %.17g so identical
// configs produce byte-identical output.

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return std::string(buf);
}

std::string json_num(double x) {
  if (!std::isfinite(x)) return "null";  // JSON has no inf/nan literals
  return fmt(x);
}

const char* json_bool(bool b) { return b ? "true" : "false"; }

const char* rep_name(Rep r) {
  switch (r) {
    case Rep::auto_rep: return "auto";
    case Rep::roundtrip: return "roundtrip";
    case Rep::multipole: return "multipole";
    case Rep::closed_form: return "closed_form";
    case Rep::asymptotic: return "asymptotic";
  }
  return "?";
}

Rep rep_from_string(const std::string& s) {
  if (s == "auto") return Rep::auto_rep;
  if (s == "roundtrip") return Rep::roundtrip;
  if (s == "multipole") return Rep::multipole;
  if (s == "closed_form") return Rep::closed_form;
  if (s == "asymptotic") return Rep::asymptotic;
  throw invalid_input("unknown representation: " + s);
}

Format format_from_string(const std::string& s) {
  if (s == "text") return Format::text;
  if (s == "json") return Format::json;
  if (s == "csv") return Format::csv;
  throw invalid_input("unknown format: " + s);
}

std::string provenance_json(const RunConfig& cfg, Rep resolved,
                            std::int64_t terms) {
  std::string out = "{\"tolerance\": " + json_num(cfg.tol) +
                    ", \"max_terms\": " + std::to_string(cfg.max_terms) +
                    ", \"representation\": \"" + rep_name(resolved) + "\"" +
                    ", \"terms\": " + std::to_string(terms) +
                    ", \"version\": \"" + kVersion + "\"}";
  return out;
}

// ---------------------------------------------------------------------------
// Geometry plumbing

struct PointSpec {
  bool has_spheres = false;
  SphereGeometry sphere;  // valid when has_spheres
  double mu = 0.0;        // valid otherwise
  double u = 0.0;
};

struct ResolvedPoint {
  GeometryDerived geom;
  std::optional<SphereGeometry> sphere;  // absent only for u = 0 input
};

ResolvedPoint resolve_point(const PointSpec& p) {
  ResolvedPoint out;
  if (p.has_spheres) {
    out.geom = derive_parameters(p.sphere);
    out.sphere = p.sphere;
  } else {
    out.geom = geometry_from_mu(p.mu, p.u);
    if (p.u > 0.0) out.sphere = sphere_geometry_from_mu(p.mu, p.u);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Shared per-point evaluation (energy, capacitance, sweep)

struct PointRow {
  double R1 = kNaN, R2 = kNaN, L = kNaN;
  double mu = 0.0, u = 0.0, Z = 0.0;
  double phi_D = 0.0, phi_delta = 0.0, phi_total = 0.0;
  double c11 = kNaN, c22 = kNaN, c12 = kNaN;
  Rep rep = Rep::roundtrip;
  std::int64_t terms = 0;
  double est_err = 0.0;
  bool mu_warning = false;
  bool has_force = false;
  double force = kNaN;
};

Rep resolve_rep(Rep requested, double mu) {
  if (requested != Rep::auto_rep) return requested;
  if (mu < 0.02) return Rep::asymptotic;
  if (mu < 1.0) return Rep::roundtrip;
  return Rep::multipole;
}

struct EnergyParts {
  double phi_D = 0.0, phi_delta = 0.0, phi_total = 0.0;
  std::int64_t terms = 0;
  double est_err = 0.0;
  bool mu_warning = false;
};

EnergyParts energy_parts(const GeometryDerived& geom, Rep rep,
                         const RunConfig& cfg) {
  EnergyParts out;
  switch (rep) {
    case Rep::asymptotic: {
      const double phiD2 = dirichlet_short_distance(geom.mu, 2);
      const double phiD3 = dirichlet_short_distance(geom.mu, 3);
      const DeltaExpansion de = delta_short_distance(geom, geom.mu);
      out.phi_D = phiD2;
      out.phi_delta = de.mercator;
      out.phi_total = phiD2 + de.mercator;
      out.terms = 0;
      // Truncation proxy: Mercator rearrangement gap plus the next
      // Dirichlet expansion order.
      out.est_err = std::abs(de.pre_mercator - de.mercator) +
                    std::abs(phiD3 - phiD2);
      out.mu_warning = de.mu_warning;
      break;
    }
    case Rep::closed_form: {
      const SeriesResult tot =
          free_energy_total_zform(geom, cfg.tol, cfg.max_terms);
      const SeriesResult pd =
          dirichlet_free_energy_multipole(geom, cfg.tol, cfg.max_terms);
      const SeriesResult dd = monopole_delta(geom, cfg.tol, cfg.max_terms);
      out.phi_D = pd.value;
      out.phi_delta = dd.value;
      out.phi_total = tot.value;
      out.terms = tot.terms_used + pd.terms_used + dd.terms_used;
      out.est_err = std::abs(pd.value + dd.value - tot.value);
      break;
    }
    default: {
      const SeriesResult pd =
          (rep == Rep::roundtrip)
              ? dirichlet_free_energy_roundtrip(geom, cfg.tol, cfg.max_terms)
              : dirichlet_free_energy_multipole(geom, cfg.tol, cfg.max_terms);
      const SeriesResult dd = monopole_delta(geom, cfg.tol, cfg.max_terms);
      const SeriesResult z =
          free_energy_total_zform(geom, cfg.tol, cfg.max_terms);
      out.phi_D = pd.value;
      out.phi_delta = dd.value;
      out.phi_total = pd.value + dd.value;
      out.terms = pd.terms_used + dd.terms_used;
      out.est_err = std::abs(out.phi_total - z.value);
      break;
    }
  }
  return out;
}

PointRow evaluate_point(const ResolvedPoint& pt, const RunConfig& cfg) {
  PointRow row;
  row.mu = pt.geom.mu;
  row.u = pt.geom.u;
  row.Z = pt.geom.Z;
  if (pt.sphere) {
    row.R1 = pt.sphere->R1;
    row.R2 = pt.sphere->R2;
    row.L = pt.sphere->L;
  }
  row.rep = resolve_rep(cfg.rep, pt.geom.mu);

  const EnergyParts e = energy_parts(pt.geom, row.rep, cfg);
  row.phi_D = e.phi_D;
  row.phi_delta = e.phi_delta;
  row.phi_total = e.phi_total;
  row.terms = e.terms;
  row.est_err = e.est_err;
  row.mu_warning = e.mu_warning;

  if (pt.sphere) {
    const CapacitanceMatrix C =
        capacitance_matrix(*pt.sphere, cfg.tol, cfg.max_terms);
    row.c11 = C.c11;
    row.c22 = C.c22;
    row.c12 = C.c12;
  }

  if (cfg.force) {
    if (!pt.sphere) {
      throw invalid_input(
          "force proxy needs finite radii: give --R1/--R2/--L or u > 0");
    }
    // Centered difference with relative step ~ cbrt(machine epsilon).
    const double h =
        std::cbrt(std::numeric_limits<double>::epsilon()) * pt.sphere->L;
    auto phi_at = [&](double L) {
      SphereGeometry s{pt.sphere->R1, pt.sphere->R2, L};
      const GeometryDerived g = derive_parameters(s);
      return energy_parts(g, resolve_rep(cfg.rep, g.mu), cfg).phi_total;
    };
    row.force =
        -(phi_at(pt.sphere->L + h) - phi_at(pt.sphere->L - h)) / (2.0 * h);
    row.has_force = true;
  }
  return row;
}

// ---------------------------------------------------------------------------
// Row serialization

std::string csv_header(bool with_force) {
  std::string h =
      "R1,R2,L,mu,u,Z,phi_D,phi_delta,phi_total,c11,c22,c12,rep,terms,est_err";
  if (with_force) h += ",force";
  return h + "\n";
}

std::string csv_row(const PointRow& r) {
  std::string line = fmt(r.R1) + "," + fmt(r.R2) + "," + fmt(r.L) + "," +
                     fmt(r.mu) + "," + fmt(r.u) + "," + fmt(r.Z) + "," +
                     fmt(r.phi_D) + "," + fmt(r.phi_delta) + "," +
                     fmt(r.phi_total) + "," + fmt(r.c11) + "," + fmt(r.c22) +
                     "," + fmt(r.c12) + "," + rep_name(r.rep) + "," +
                     std::to_string(r.terms) + "," + fmt(r.est_err);
  if (r.has_force) line += "," + fmt(r.force);
  return line + "\n";
}

std::string geometry_json(const PointRow& r) {
  return std::string("{\"R1\": ") + json_num(r.R1) +
         ", \"R2\": " + json_num(r.R2) + ", \"L\": " + json_num(r.L) +
         ", \"mu\": " + json_num(r.mu) + ", \"u\": " + json_num(r.u) +
         ", \"Z\": " + json_num(r.Z) + "}";
}

std::string row_json(const PointRow& r) {
  std::string s = "{\"R1\": " + json_num(r.R1) +
                  ", \"R2\": " + json_num(r.R2) +
                  ", \"L\": " + json_num(r.L) + ", \"mu\": " + json_num(r.mu) +
                  ", \"u\": " + json_num(r.u) + ", \"Z\": " + json_num(r.Z) +
                  ", \"phi_D\": " + json_num(r.phi_D) +
                  ", \"phi_delta\": " + json_num(r.phi_delta) +
                  ", \"phi_total\": " + json_num(r.phi_total) +
                  ", \"c11\": " + json_num(r.c11) +
                  ", \"c22\": " + json_num(r.c22) +
                  ", \"c12\": " + json_num(r.c12) + ", \"rep\": \"" +
                  rep_name(r.rep) + "\", \"terms\": " + std::to_string(r.terms) +
                  ", \"est_err\": " + json_num(r.est_err);
  if (r.has_force) s += ", \"force\": " + json_num(r.force);
  return s + "}";
}

void text_line(std::ostream& os, const char* key, const std::string& value) {
  os << key << " = " << value << "\n";
}

// ---------------------------------------------------------------------------
// Output sink

class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::out | std::ios::trunc);
      if (!file_) throw invalid_input("cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

// ---------------------------------------------------------------------------
// energy / capacitance

int run_energy(const PointSpec& spec, const RunConfig& cfg) {
  const ResolvedPoint pt = resolve_point(spec);
  const PointRow row = evaluate_point(pt, cfg);
  Sink sink(cfg.out_path);
  std::ostream& os = sink.stream();

  switch (cfg.format) {
    case Format::csv:
      os << csv_header(row.has_force) << csv_row(row);
      break;
    case Format::json: {
      os << "{\"command\": \"energy\", \"geometry\": " << geometry_json(row)
         << ", \"results\": {\"phi_D\": " << json_num(row.phi_D)
         << ", \"phi_delta\": " << json_num(row.phi_delta)
         << ", \"phi_total\": " << json_num(row.phi_total)
         << ", \"c11\": " << json_num(row.c11)
         << ", \"c22\": " << json_num(row.c22)
         << ", \"c12\": " << json_num(row.c12)
         << ", \"est_err\": " << json_num(row.est_err);
      if (row.has_force) os << ", \"force\": " << json_num(row.force);
      os << "}, \"mu_warning\": " << json_bool(row.mu_warning)
         << ", \"provenance\": " << provenance_json(cfg, row.rep, row.terms)
         << "}\n";
      break;
    }
    case Format::text: {
      text_line(os, "command", "energy");
      text_line(os, "R1", fmt(row.R1));
      text_line(os, "R2", fmt(row.R2));
      text_line(os, "L", fmt(row.L));
      text_line(os, "mu", fmt(row.mu));
      text_line(os, "u", fmt(row.u));
      text_line(os, "Z", fmt(row.Z));
      text_line(os, "phi_D", fmt(row.phi_D));
      text_line(os, "phi_delta", fmt(row.phi_delta));
      text_line(os, "phi_total", fmt(row.phi_total));
      text_line(os, "c11", fmt(row.c11));
      text_line(os, "c22", fmt(row.c22));
      text_line(os, "c12", fmt(row.c12));
      if (row.has_force) text_line(os, "force", fmt(row.force));
      text_line(os, "rep", rep_name(row.rep));
      text_line(os, "terms", std::to_string(row.terms));
      text_line(os, "est_err", fmt(row.est_err));
      text_line(os, "mu_warning", row.mu_warning ? "true" : "false");
      text_line(os, "version", kVersion);
      break;
    }
  }
  return 0;
}

int run_capacitance(const PointSpec& spec, const RunConfig& cfg) {
  const ResolvedPoint pt = resolve_point(spec);
  if (!pt.sphere) {
    throw invalid_input(
        "capacitance needs finite radii: give --R1/--R2/--L or u > 0");
  }
  const PointRow row = evaluate_point(pt, cfg);
  const double det = row.c11 * row.c22 - row.c12 * row.c12;
  // Determinant identity: det C = R1 R2 exp(Phi_Delta).
  const double det_identity_residual =
      std::abs(det - row.R1 * row.R2 * std::exp(row.phi_delta));

  Sink sink(cfg.out_path);
  std::ostream& os = sink.stream();
  switch (cfg.format) {
    case Format::csv:
      os << csv_header(row.has_force) << csv_row(row);
      break;
    case Format::json:
      os << "{\"command\": \"capacitance\", \"geometry\": "
         << geometry_json(row)
         << ", \"results\": {\"c11\": " << json_num(row.c11)
         << ", \"c22\": " << json_num(row.c22)
         << ", \"c12\": " << json_num(row.c12)
         << ", \"det_C\": " << json_num(det)
         << ", \"phi_delta\": " << json_num(row.phi_delta)
         << ", \"det_identity_residual\": " << json_num(det_identity_residual)
         << "}, \"provenance\": " << provenance_json(cfg, row.rep, row.terms)
         << "}\n";
      break;
    case Format::text:
      text_line(os, "command", "capacitance");
      text_line(os, "R1", fmt(row.R1));
      text_line(os, "R2", fmt(row.R2));
      text_line(os, "L", fmt(row.L));
      text_line(os, "mu", fmt(row.mu));
      text_line(os, "u", fmt(row.u));
      text_line(os, "c11", fmt(row.c11));
      text_line(os, "c22", fmt(row.c22));
      text_line(os, "c12", fmt(row.c12));
      text_line(os, "det_C", fmt(det));
      text_line(os, "phi_delta", fmt(row.phi_delta));
      text_line(os, "det_identity_residual", fmt(det_identity_residual));
      text_line(os, "version", kVersion);
      break;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// expand

int run_expand(const PointSpec& spec, const RunConfig& cfg) {
  const ResolvedPoint pt = resolve_point(spec);
  const GeometryDerived& geom = pt.geom;
  const ExpansionCoefficients ed = epsilon_delta(geom.u);
  const DeltaExpansion de = delta_short_distance(geom, geom.mu);
  const double phiD = dirichlet_short_distance(geom.mu, 2);
  const double phiD_next = dirichlet_short_distance(geom.mu, 3);
  const double est_err =
      std::abs(de.pre_mercator - de.mercator) + std::abs(phiD_next - phiD);
  const GammaConstants gc = gamma_constants();

  Sink sink(cfg.out_path);
  std::ostream& os = sink.stream();
  switch (cfg.format) {
    case Format::csv:
      os << "u,mu,eps0,del0,eps1,del1,eps2,del2,phi_D_expansion,"
            "phi_delta_pre_mercator,phi_delta_mercator,est_err,mu_warning\n"
         << fmt(geom.u) << "," << fmt(geom.mu) << "," << fmt(ed.eps[0]) << ","
         << fmt(ed.del[0]) << "," << fmt(ed.eps[1]) << "," << fmt(ed.del[1])
         << "," << fmt(ed.eps[2]) << "," << fmt(ed.del[2]) << "," << fmt(phiD)
         << "," << fmt(de.pre_mercator) << "," << fmt(de.mercator) << ","
         << fmt(est_err) << "," << (de.mu_warning ? "true" : "false") << "\n";
      break;
    case Format::json:
      os << "{\"command\": \"expand\", \"geometry\": {\"mu\": "
         << json_num(geom.mu) << ", \"u\": " << json_num(geom.u)
         << "}, \"coefficients\": {\"eps0\": " << json_num(ed.eps[0])
         << ", \"del0\": " << json_num(ed.del[0])
         << ", \"eps1\": " << json_num(ed.eps[1])
         << ", \"del1\": " << json_num(ed.del[1])
         << ", \"eps2\": " << json_num(ed.eps[2])
         << ", \"del2\": " << json_num(ed.del[2])
         << "}, \"gamma_constants\": {\"gamma1\": " << json_num(gc.gamma1)
         << ", \"gamma2\": " << json_num(gc.gamma2)
         << ", \"gamma3\": " << json_num(gc.gamma3)
         << ", \"gamma4\": " << json_num(gc.gamma4)
         << "}, \"results\": {\"phi_D_expansion\": " << json_num(phiD)
         << ", \"phi_delta_pre_mercator\": " << json_num(de.pre_mercator)
         << ", \"phi_delta_mercator\": " << json_num(de.mercator)
         << ", \"phi_total_expansion\": " << json_num(phiD + de.mercator)
         << ", \"est_err\": " << json_num(est_err)
         << "}, \"mu_warning\": " << json_bool(de.mu_warning)
         << ", \"provenance\": "
         << provenance_json(cfg, Rep::asymptotic, 0) << "}\n";
      break;
    case Format::text:
      text_line(os, "command", "expand");
      text_line(os, "mu", fmt(geom.mu));
      text_line(os, "u", fmt(geom.u));
      text_line(os, "eps0", fmt(ed.eps[0]));
      text_line(os, "del0", fmt(ed.del[0]));
      text_line(os, "eps1", fmt(ed.eps[1]));
      text_line(os, "del1", fmt(ed.del[1]));
      text_line(os, "eps2", fmt(ed.eps[2]));
      text_line(os, "del2", fmt(ed.del[2]));
      text_line(os, "gamma1", fmt(gc.gamma1));
      text_line(os, "gamma2", fmt(gc.gamma2));
      text_line(os, "gamma3", fmt(gc.gamma3));
      text_line(os, "gamma4", fmt(gc.gamma4));
      text_line(os, "phi_D_expansion", fmt(phiD));
      text_line(os, "phi_delta_pre_mercator", fmt(de.pre_mercator));
      text_line(os, "phi_delta_mercator", fmt(de.mercator));
      text_line(os, "phi_total_expansion", fmt(phiD + de.mercator));
      text_line(os, "est_err", fmt(est_err));
      text_line(os, "mu_warning", de.mu_warning ? "true" : "false");
      text_line(os, "version", kVersion);
      break;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyCheck {
  std::string name;
  double value = 0.0;
  double gate = 0.0;
  bool pass = false;
};

int run_verify(const PointSpec& spec, const RunConfig& cfg) {
  const ResolvedPoint pt = resolve_point(spec);
  const GeometryDerived& geom = pt.geom;
  if (!(geom.rho2 > 0.0)) {
    throw invalid_input("verify needs two finite spheres (u > 0)");
  }

  std::vector<VerifyCheck> checks;

  // 1. Cut-set enumeration vs recursion, r <= 6 (absolute difference; the
  //    round trips themselves are O(rho1 rho2)^r <= 1).
  double worst_er = 0.0;
  std::vector<double> delta_rec(7, 0.0);
  for (int r = 1; r <= 6; ++r) {
    const double de = delta_r_enumeration(r, geom);
    const double dr = delta_r_recursion(r, geom);
    delta_rec[static_cast<std::size_t>(r)] = dr;
    worst_er = std::max(worst_er, std::abs(de - dr));
  }
  checks.push_back({"enumeration_vs_recursion", worst_er, 1e-12,
                    worst_er <= 1e-12});

  // 2. Cyclic determinant closed form vs dense LU, r <= 8, both classes.
  double worst_cyc = 0.0;
  for (int r = 1; r <= 8; ++r) {
    for (SignClass sc : {SignClass::plus, SignClass::minus}) {
      const double closed = dirichlet_cyclic_determinant(r, sc, geom);
      const double dense = cyclic_matrix_determinant(r, sc, geom);
      const double scale = std::max(std::abs(closed), 1e-300);
      worst_cyc = std::max(worst_cyc, std::abs(closed - dense) / scale);
    }
  }
  checks.push_back({"cyclic_determinant", worst_cyc, 1e-10,
                    worst_cyc <= 1e-10});

  // 3. Path-block determinant vs Chebyshev closed forms, n <= 20.
  double worst_block = 0.0;
  for (int n = 1; n <= 20; ++n) {
    const std::vector<int> plus(static_cast<std::size_t>(n - 1), 1);
    for (int color = 1; color <= 2; ++color) {
      const double direct = block_determinant_direct(n, color, plus, geom);
      double closed;
      const double rr = geom.rho1 * geom.rho2;
      if (n % 2 == 1) {
        const int k = (n - 1) / 2;
        closed = std::pow(rr, k) * chebyshev_U(k, geom);
      } else {
        const int k = n / 2;
        const double ratio = (color == 1) ? geom.alpha : geom.beta;
        closed = std::pow(rr, k) *
                 (chebyshev_U(k, geom) + ratio * chebyshev_U(k - 1, geom));
      }
      const double scale = std::max(std::abs(closed), 1e-300);
      worst_block = std::max(worst_block, std::abs(direct - closed) / scale);
    }
  }
  checks.push_back({"block_determinant", worst_block, 1e-11,
                    worst_block <= 1e-11});

  // 4. Generating-function derivative identity.
  const double gen = generating_function_max_residual(geom);
  checks.push_back({"generating_function", gen, 1e-12, gen <= 1e-12});

  // Informational: truncated Mercator partial sums against the closed
  // monopole correction. Convergence is geometric in exp(-mu), so for
  // moderate mu the r <= 6 truncation gap dominates; it is reported but
  // never gated.
  KahanSum partial;
  for (int r = 1; r <= 6; ++r) {
    partial.add(-delta_rec[static_cast<std::size_t>(r)] / r);
  }
  const SeriesResult closed_delta =
      monopole_delta(geom, cfg.tol, cfg.max_terms);
  const double partial_gap = std::abs(partial.value() - closed_delta.value);

  bool all_pass = true;
  for (const auto& c : checks) all_pass = all_pass && c.pass;

  // Optional per-(r,k) dump.
  if (!cfg.out_path.empty()) {
    std::ofstream f(cfg.out_path, std::ios::out | std::ios::trunc);
    if (!f) throw invalid_input("cannot open output file: " + cfg.out_path);
    f << "r,k,count,enumeration_sum,recursion_equivalent,abs_diff\n";
    for (int r = 1; r <= 6; ++r) {
      for (const RKAggregate& a : per_k_aggregates(r, geom)) {
        f << a.r << "," << a.k << "," << a.count << ","
          << fmt(a.enumeration_sum) << "," << fmt(a.recursion_equivalent)
          << "," << fmt(std::abs(a.enumeration_sum - a.recursion_equivalent))
          << "\n";
      }
    }
  }

  std::ostream& os = std::cout;
  if (cfg.format == Format::json) {
    os << "{\"command\": \"verify\", \"geometry\": {\"mu\": "
       << json_num(geom.mu) << ", \"u\": " << json_num(geom.u)
       << "}, \"checks\": [";
    for (std::size_t i = 0; i < checks.size(); ++i) {
      if (i) os << ", ";
      os << "{\"name\": \"" << checks[i].name
         << "\", \"max_deviation\": " << json_num(checks[i].value)
         << ", \"gate\": " << json_num(checks[i].gate)
         << ", \"pass\": " << json_bool(checks[i].pass) << "}";
    }
    os << "], \"partial_sum_r6\": {\"value\": " << json_num(partial.value())
       << ", \"closed_form\": " << json_num(closed_delta.value)
       << ", \"gap\": " << json_num(partial_gap)
       << "}, \"verdict\": \"" << (all_pass ? "pass" : "fail")
       << "\", \"provenance\": "
       << provenance_json(cfg, Rep::closed_form, closed_delta.terms_used)
       << "}\n";
  } else if (cfg.format == Format::csv) {
    os << "check,max_deviation,gate,pass\n";
    for (const auto& c : checks) {
      os << c.name << "," << fmt(c.value) << "," << fmt(c.gate) << ","
         << (c.pass ? "true" : "false") << "\n";
    }
  } else {
    text_line(os, "command", "verify");
    text_line(os, "mu", fmt(geom.mu));
    text_line(os, "u", fmt(geom.u));
    for (const auto& c : checks) {
      os << c.name << ": max deviation = " << fmt(c.value)
         << " (gate " << fmt(c.gate) << ") "
         << (c.pass ? "PASS" : "FAIL") << "\n";
    }
    os << "partial sums r<=6: " << fmt(partial.value())
       << " vs closed form " << fmt(closed_delta.value)
       << " (gap " << fmt(partial_gap)
       << ", informational: truncated series)\n";
    text_line(os, "verdict", all_pass ? "pass" : "fail");
  }
  return all_pass ? 0 : 5;
}

// ---------------------------------------------------------------------------
// sweep

struct GridAxis {
  std::string name;
  std::vector<double> values;
};

double parse_double(const std::string& s) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw invalid_input("grid: cannot parse number: '" + s + "'");
  }
  if (pos != s.size()) {
    throw invalid_input("grid: trailing characters in number: '" + s + "'");
  }
  if (!std::isfinite(v)) throw invalid_input("grid: values must be finite");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t p = s.find(sep, start);
    if (p == std::string::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, p - start));
    start = p + 1;
  }
}

std::vector<GridAxis> parse_grid(const std::string& spec) {
  if (spec.empty()) throw invalid_input("sweep requires --grid");
  std::vector<GridAxis> axes;
  for (const std::string& part : split(spec, ';')) {
    const std::size_t eq = part.find('=');
    if (eq == std::string::npos) {
      throw invalid_input("grid: expected name=values in '" + part + "'");
    }
    GridAxis axis;
    axis.name = part.substr(0, eq);
    const std::string rest = part.substr(eq + 1);
    if (axis.name != "R1" && axis.name != "R2" && axis.name != "L" &&
        axis.name != "mu" && axis.name != "u") {
      throw invalid_input("grid: unknown axis '" + axis.name +
                          "' (use R1, R2, L, mu, u)");
    }
    for (const auto& prev : axes) {
      if (prev.name == axis.name) {
        throw invalid_input("grid: axis '" + axis.name + "' given twice");
      }
    }
    if (rest.find(':') != std::string::npos) {
      const auto f = split(rest, ':');
      if (f.size() != 3) {
        throw invalid_input("grid: range must be start:stop:count in '" +
                            rest + "'");
      }
      const double start = parse_double(f[0]);
      const double stop = parse_double(f[1]);
      const double count_d = parse_double(f[2]);
      const int count = static_cast<int>(count_d);
      if (count < 1 || count_d != count) {
        throw invalid_input("grid: count must be a positive integer");
      }
      if (count == 1) {
        axis.values.push_back(start);
      } else {
        for (int i = 0; i < count; ++i) {
          axis.values.push_back(start +
                                (stop - start) * i / (count - 1));
        }
      }
    } else {
      for (const std::string& v : split(rest, ',')) {
        axis.values.push_back(parse_double(v));
      }
    }
    if (axis.values.empty()) {
      throw invalid_input("grid: axis '" + axis.name + "' has no values");
    }
    axes.push_back(std::move(axis));
  }

  // Exactly one geometry style.
  bool has_sphere_axis = false, has_mu_axis = false;
  for (const auto& a : axes) {
    if (a.name == "mu" || a.name == "u") has_mu_axis = true;
    else has_sphere_axis = true;
  }
  if (has_sphere_axis && has_mu_axis) {
    throw invalid_input("grid: mix of {R1,R2,L} and {mu,u} axes");
  }
  auto has = [&](const char* n) {
    return std::any_of(axes.begin(), axes.end(),
                       [&](const GridAxis& a) { return a.name == n; });
  };
  if (has_mu_axis) {
    if (!has("mu") || !has("u")) {
      throw invalid_input("grid: mu-style sweeps need both mu and u axes");
    }
  } else {
    if (!has("R1") || !has("R2") || !has("L")) {
      throw invalid_input("grid: sphere-style sweeps need R1, R2 and L axes");
    }
  }

  std::size_t total = 1;
  for (const auto& a : axes) total *= a.values.size();
  if (total > 1000000) {
    throw invalid_input("grid: more than 1e6 points requested");
  }
  return axes;
}

int run_sweep(const std::string& grid, const RunConfig& cfg) {
  const std::vector<GridAxis> axes = parse_grid(grid);
  const bool mu_style = (axes[0].name == "mu" || axes[0].name == "u");

  Sink sink(cfg.out_path);
  std::ostream& os = sink.stream();

  const bool json = cfg.format == Format::json;
  if (json) {
    os << "{\"command\": \"sweep\", \"rows\": [";
  } else {
    os << csv_header(cfg.force);
  }

  // Row-major iteration, last axis fastest; the row order is part of the
  // output contract.
  std::vector<std::size_t> idx(axes.size(), 0);
  bool first = true;
  std::int64_t total_terms = 0;
  while (true) {
    PointSpec spec;
    if (mu_style) {
      for (std::size_t a = 0; a < axes.size(); ++a) {
        const double v = axes[a].values[idx[a]];
        if (axes[a].name == "mu") spec.mu = v;
        else spec.u = v;
      }
      spec.has_spheres = false;
    } else {
      spec.has_spheres = true;
      for (std::size_t a = 0; a < axes.size(); ++a) {
        const double v = axes[a].values[idx[a]];
        if (axes[a].name == "R1") spec.sphere.R1 = v;
        else if (axes[a].name == "R2") spec.sphere.R2 = v;
        else spec.sphere.L = v;
      }
    }
    const PointRow row = evaluate_point(resolve_point(spec), cfg);
    total_terms += row.terms;
    if (json) {
      if (!first) os << ", ";
      os << row_json(row);
    } else {
      os << csv_row(row);
    }
    first = false;

    // Increment the mixed-radix odometer.
    std::size_t a = axes.size();
    while (a > 0) {
      --a;
      if (++idx[a] < axes[a].values.size()) break;
      idx[a] = 0;
      if (a == 0) {
        if (json) {
          os << "], \"provenance\": "
             << provenance_json(cfg, cfg.rep, total_terms) << "}\n";
        }
        return 0;
      }
    }
  }
}

}  // namespace

// ---------------------------------------------------------------------------

int main(int argc, char** argv) {
  CLI::App app{
      "Classical (high-temperature) Casimir free energy of two Drude "
      "spheres: exact series evaluation, capacitance matrix, asymptotics "
      "and brute-force verification.\n"
      "Geometry is given either as --R1 --R2 --L (one common length unit) "
      "or as --mu --u (dimensionless; lengths are then reported in units "
      "with R1+R2 = 1; u = 0 is the sphere-plane limit)."};
  app.require_subcommand(1);

  RunConfig cfg;
  PointSpec spec;
  std::string rep_str = "auto";
  std::string format_str = "text";
  std::string grid;
  double R1 = 0, R2 = 0, L = 0, mu = 0, u = -1;

  auto add_common = [&](CLI::App* sub, bool with_rep) {
    sub->add_option("--tol", cfg.tol,
                    "relative series tolerance (in [1e-15, 1e-3])")
        ->check(CLI::Range(1e-15, 1e-3))
        ->capture_default_str();
    sub->add_option("--max-terms", cfg.max_terms,
                    "series term cap before declaring non-convergence")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    if (with_rep) {
      sub->add_option("--rep", rep_str,
                      "representation: auto, roundtrip, multipole, "
                      "closed_form, asymptotic (auto: asymptotic for "
                      "mu < 0.02, roundtrip for mu < 1, else multipole)")
          ->check(CLI::IsMember({"auto", "roundtrip", "multipole",
                                 "closed_form", "asymptotic"}))
          ->capture_default_str();
    }
    sub->add_option("--format", format_str, "output format: text, json, csv")
        ->check(CLI::IsMember({"text", "json", "csv"}))
        ->capture_default_str();
    sub->add_option("--out", cfg.out_path, "write the report to a file");
  };
  auto add_geometry = [&](CLI::App* sub) {
    sub->add_option("--R1", R1, "radius of sphere 1");
    sub->add_option("--R2", R2, "radius of sphere 2");
    sub->add_option("--L", L, "surface-to-surface distance");
    sub->add_option("--mu", mu, "bispherical separation parameter (> 0)");
    sub->add_option("--u", u, "radius combination R1 R2/(R1+R2)^2 in [0, 1/4]");
  };

  CLI::App* energy = app.add_subcommand(
      "energy", "free energy Phi_D, Phi_Delta, Phi_total (in units kT/2)");
  add_geometry(energy);
  add_common(energy, true);
  energy->add_flag("--force", cfg.force,
                   "also report the force proxy -dPhi/dL "
                   "(central difference, step ~ cbrt(eps)*L)");

  CLI::App* capacitance = app.add_subcommand(
      "capacitance", "two-sphere capacitance matrix and det C identity");
  add_geometry(capacitance);
  add_common(capacitance, true);

  CLI::App* expand = app.add_subcommand(
      "expand", "short-distance expansion coefficients and values");
  add_geometry(expand);
  add_common(expand, false);

  CLI::App* verify = app.add_subcommand(
      "verify",
      "cross-check closed forms against brute-force oracles (exit 5 on "
      "failure); --out dumps the per-(r,k) aggregation table");
  add_geometry(verify);
  add_common(verify, false);

  CLI::App* sweep = app.add_subcommand(
      "sweep", "evaluate a geometry grid; rows stream in grid order");
  sweep->add_option(
      "--grid", grid,
      "axes as name=values separated by ';'. values: comma list or "
      "start:stop:count. use axes {mu,u} or {R1,R2,L}, e.g. "
      "\"mu=0.05:5:25;u=0,0.1,0.25\"");
  add_common(sweep, true);
  sweep->add_flag("--force", cfg.force, "append a force column (-dPhi/dL)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    cfg.rep = rep_from_string(rep_str);
    cfg.format = format_from_string(format_str);

    CLI::App* sub = app.get_subcommands().front();
    if (sub != sweep) {
      const bool style_spheres = sub->count("--R1") || sub->count("--R2") ||
                                 sub->count("--L");
      const bool style_mu = sub->count("--mu") || sub->count("--u");
      if (style_spheres == style_mu) {
        throw invalid_input(
            "give exactly one geometry style: --R1/--R2/--L or --mu/--u");
      }
      if (style_spheres) {
        if (!(sub->count("--R1") && sub->count("--R2") && sub->count("--L"))) {
          throw invalid_input("sphere style needs all of --R1, --R2, --L");
        }
        spec.has_spheres = true;
        spec.sphere = SphereGeometry{R1, R2, L};
      } else {
        if (!(sub->count("--mu") && sub->count("--u"))) {
          throw invalid_input("dimensionless style needs both --mu and --u");
        }
        spec.has_spheres = false;
        spec.mu = mu;
        spec.u = u;
      }
    }

    if (sub == energy) return run_energy(spec, cfg);
    if (sub == capacitance) return run_capacitance(spec, cfg);
    if (sub == expand) return run_expand(spec, cfg);
    if (sub == verify) return run_verify(spec, cfg);
    return run_sweep(grid, cfg);
  } catch (const invalid_input& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const degenerate_geometry& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const series_stalled& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const verification_failure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 1;
  }
}
