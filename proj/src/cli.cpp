#include "symbidisc/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "symbidisc/bidisc.hpp"
#include "symbidisc/cara.hpp"
#include "symbidisc/errors.hpp"
#include "symbidisc/hereditary.hpp"
#include "symbidisc/hereditary_io.hpp"
#include "symbidisc/kernels.hpp"
#include "symbidisc/sampling.hpp"
#include "symbidisc/selftest.hpp"

namespace symbidisc {

namespace {

using nlohmann::json;

enum Exit { kOk = 0, kFailure = 1, kParse = 2, kDomain = 3, kCommutation = 4 };

double parse_real(const std::string& text) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw InvalidInput("not a number: '" + text + "'");
  }
  if (used != text.size() || !std::isfinite(v)) throw InvalidInput("not a finite number: '" + text + "'");
  return v;
}

std::vector<double> parse_reals(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) out.push_back(parse_real(part));
  if (out.empty()) throw InvalidInput("empty numeric list");
  return out;
}

/// "re,im" or "re".
Complex parse_complex(const std::string& text) {
  const auto v = parse_reals(text);
  if (v.size() > 2) throw InvalidInput("complex literal must be 're,im': '" + text + "'");
  return {v[0], v.size() == 2 ? v[1] : 0.0};
}

GPoint parse_gpoint(const std::vector<std::string>& sp) {
  if (sp.size() != 2) throw InvalidInput("a point of G needs two complex literals: s p");
  return GPoint(parse_complex(sp[0]), parse_complex(sp[1]));
}

/// Inline JSON when the argument starts with '{' or '[', otherwise a file path.
std::string json_argument(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) return arg;
  std::ifstream in(arg);
  if (!in) throw InvalidInput("cannot read '" + arg + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// folds -0 into 0 so that printed output does not depend on the sign of zero
double clean(double v) { return v == 0.0 ? 0.0 : v; }

json cjson(Complex z) { return json::array({clean(z.real()), clean(z.imag())}); }

json gjson(const GPoint& g) { return {{"s", cjson(g.s())}, {"p", cjson(g.p())}}; }

std::string csv_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", clean(v));
  return buf;
}

// ------------------------------------------------------------------ distance

struct SearchFlags {
  SearchConfig config;
  void attach(CLI::App* cmd) {
    cmd->add_option("--samples", config.samples, "Uniform samples on T")->capture_default_str();
    cmd->add_option("--refine-tol", config.refine_tolerance, "Golden-section bracket width")
        ->capture_default_str();
    cmd->add_option("--cluster-radius", config.cluster_radius, "Arc radius merging maximizers")
        ->capture_default_str();
  }
  void validate() const {
    if (config.samples < 8) throw InvalidInput("--samples must be at least 8");
    if (!(config.refine_tolerance > 0) || !(config.cluster_radius > 0)) {
      throw InvalidInput("tolerances must be positive");
    }
  }
};

json distance_report(const GPoint& x, const GPoint& y, const SearchConfig& config) {
  const ExtremalResult r = cara_distance(x, y, config);
  json maximizers = json::array();
  double agreement = 0;
  for (const auto& w : r.maximizers) {
    maximizers.push_back(cjson(w.value()));
    agreement = std::max(agreement, std::abs(objective(x, y, w) - objective_via_magic(x, y, w)));
  }
  json report{{"command", "distance"},
              {"x", gjson(x)},
              {"y", gjson(y)},
              {"distance", r.distance},
              {"unique", r.unique},
              {"constant", r.constant},
              {"maximizers", maximizers},
              {"samples", r.samples_used},
              {"residuals",
               {{"formula_agreement", agreement}, {"refined_tolerance", r.refined_tolerance}}}};
  if (!(x == y)) {
    const ExtremalMagic em = extremal_magic(x, y, config);
    report["extremal"] = {{"omega", cjson(em.omega.value())},
                          {"moebius",
                           {{"rotation", cjson(em.m.rotation().value())},
                            {"center", cjson(em.m.center().value())}}},
                          {"image_x", cjson(em.m.apply(phi(em.omega, x)))},
                          {"image_y", cjson(em.m.apply(phi(em.omega, y)))}};
  }
  return report;
}

// ---------------------------------------------------------------------- scan

std::vector<GPoint> scan_grid(const std::vector<std::string>& royal_args,
                              const std::vector<std::string>& flat_args,
                              const std::vector<std::string>& box_args,
                              const std::vector<std::string>& point_args) {
  std::vector<Complex> s_values, p_values;
  auto push = [&](Complex s, Complex p) {
    s_values.push_back(s);
    p_values.push_back(p);
  };
  auto linspace = [](double lo, double hi, double count, int k) {
    return count <= 1 ? lo : lo + (hi - lo) * k / (count - 1);
  };
  auto count_of = [](double c) {
    if (c < 1 || c != std::floor(c) || c > 1e6) throw InvalidInput("grid counts must be positive integers");
    return static_cast<int>(c);
  };
  for (const auto& item : royal_args) {
    const auto v = parse_reals(item);
    if (v.size() != 3) throw InvalidInput("--royal expects lo,hi,n");
    const int n = count_of(v[2]);
    for (int k = 0; k < n; ++k) {
      const double l = linspace(v[0], v[1], n, k);
      push(2.0 * l, l * l);
    }
  }
  for (const auto& item : flat_args) {
    const auto v = parse_reals(item);
    if (v.size() != 5) throw InvalidInput("--flat expects beta_re,beta_im,lo,hi,n");
    const Complex beta(v[0], v[1]);
    if (!DiscPoint::admits(beta)) throw DomainError("--flat: beta is not in D", std::abs(beta));
    const int n = count_of(v[4]);
    for (int k = 0; k < n; ++k) {
      const double l = linspace(v[2], v[3], n, k);
      push(beta * l + std::conj(beta), l);
    }
  }
  for (const auto& item : box_args) {
    const auto v = parse_reals(item);
    if (v.size() != 6) throw InvalidInput("--box expects s_lo,s_hi,ns,p_lo,p_hi,np");
    const int ns = count_of(v[2]), np = count_of(v[5]);
    for (int i = 0; i < ns; ++i)
      for (int j = 0; j < np; ++j) push(linspace(v[0], v[1], ns, i), linspace(v[3], v[4], np, j));
  }
  for (const auto& item : point_args) {
    const auto v = parse_reals(item);
    if (v.size() != 4) throw InvalidInput("--point expects s_re,s_im,p_re,p_im");
    push({v[0], v[1]}, {v[2], v[3]});
  }
  std::vector<GPoint> out;
  for (std::size_t i = 0; i < s_values.size(); ++i)
    if (contains(s_values[i], p_values[i])) out.push_back(GPoint(s_values[i], p_values[i]));
  return out;
}

// -------------------------------------------------------------- automorphism

json automorphism_report(const Moebius& m, const std::optional<GPoint>& point,
                         const std::optional<DiscPoint>& royal_lambda,
                         const std::optional<DiscPoint>& flat_beta) {
  const GAutomorphism a(m);
  json report{{"command", "automorphism"},
              {"moebius", {{"rotation", cjson(m.rotation().value())}, {"center", cjson(m.center().value())}}}};
  if (point) {
    const GPoint image = a(*point);
    const GPoint back = a.inverse()(image);
    report["input"] = gjson(*point);
    report["image"] = gjson(image);
    report["royal_defect"] = {{"input", royal_defect(*point)}, {"image", royal_defect(image)}};
    report["inverse_residual"] =
        std::max(std::abs(back.s() - point->s()), std::abs(back.p() - point->p()));
  }
  if (royal_lambda) {
    const GPoint image = a(royal(*royal_lambda));
    const Complex lambda = m.apply(royal_lambda->value());
    report["royal"] = {{"input", gjson(royal(*royal_lambda))},
                       {"image", gjson(image)},
                       {"image_lambda", cjson(lambda)},
                       {"royal_defect", royal_defect(image)}};
  }
  if (flat_beta) {
    // image of F_beta, identified through one of its points and confirmed on others
    const GPoint anchor = a(flat_point(*flat_beta, DiscPoint()));
    const FlatParameters fp = flat_through(anchor);
    double spread = 0;
    for (int k = 0; k < 16; ++k) {
      const DiscPoint lambda(std::polar(0.8, 2 * M_PI * k / 16));
      const GPoint image = a(flat_point(*flat_beta, lambda));
      const FlatParameters other = flat_through(image);
      spread = std::max(spread, std::abs(other.beta.value() - fp.beta.value()));
    }
    report["flat"] = {{"beta", cjson(flat_beta->value())},
                      {"image_beta", cjson(fp.beta.value())},
                      {"residual", spread}};
  }
  return report;
}

// ------------------------------------------------------------------ geodesic

json geodesic_pair(const GPoint& x, const GPoint& y, DiscPoint l1, DiscPoint l2,
                   const SearchConfig& config) {
  const ExtremalResult r = cara_distance(x, y, config);
  double lo = 2, hi = -1;
  for (int k = 0; k < 256; ++k) {
    const double v = objective(x, y, CirclePoint::from_angle(2 * M_PI * k / 256));
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return {{"x", gjson(x)},
          {"y", gjson(y)},
          {"distance", r.distance},
          {"rho", rho(l1, l2)},
          {"isometry_residual", std::abs(r.distance - rho(l1, l2))},
          {"objective_spread", hi - lo}};
}

// -------------------------------------------------------------------- kernel

json kernel_verdict(const GramMatrix& g, double tol) {
  const PsdVerdict v = is_psd(g, tol);
  json report{{"psd", v.psd}, {"min_eig", v.min_eig}, {"max_eig", v.max_eig}, {"size", g.entries.rows()}};
  if (v.psd) {
    const auto factors = gram_factor(g);
    report["rank"] = numeric_rank(g);
    report["factor_columns"] = factors.empty() ? 0 : factors.front().size();
    report["factor_residual"] = factor_residual(g, factors);
  }
  return report;
}

int print_json(std::ostream& out, const json& j) {
  out << j.dump(2) << '\n';
  return kOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Geometry of the symmetrised bidisc: Caratheodory distance, automorphisms, "
               "geodesics, hereditary calculus and kernel tests."};
  app.require_subcommand(1);
  app.set_version_flag("--version", "symbidisc 0.1.0");

  // distance
  auto* distance = app.add_subcommand("distance", "Caratheodory distance between two points of G");
  std::vector<std::string> dx, dy;
  std::string dformat = "json";
  SearchFlags dsearch;
  distance->add_option("--x", dx, "First point as s p (each 're,im')")->expected(2)->required();
  distance->add_option("--y", dy, "Second point as s p")->expected(2)->required();
  distance->add_option("--format", dformat)->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  dsearch.attach(distance);

  // scan
  auto* scan = app.add_subcommand("scan", "Distance from a fixed point over a grid of G");
  std::vector<std::string> sx, royal_args, flat_args, box_args, point_args;
  std::string sformat = "csv";
  SearchFlags ssearch;
  scan->add_option("--x", sx, "Fixed point as s p")->expected(2)->required();
  scan->add_option("--royal", royal_args, "Royal points (2l, l^2), l real: lo,hi,n");
  scan->add_option("--flat", flat_args, "Flat points (b l + conj b, l), l real: b_re,b_im,lo,hi,n");
  scan->add_option("--box", box_args, "Real (s, p) box: s_lo,s_hi,ns,p_lo,p_hi,np");
  scan->add_option("--point", point_args, "Single point: s_re,s_im,p_re,p_im");
  scan->add_option("--format", sformat)->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  ssearch.attach(scan);

  // automorphism
  auto* autom = app.add_subcommand("automorphism", "Apply tau(m) for m(z) = w (z - a) / (1 - conj(a) z)");
  std::vector<std::string> am, apoint;
  std::string aroyal, aflat;
  autom->add_option("--m", am, "Rotation w and centre a, as 're,im' 're,im'")->expected(2)->required();
  autom->add_option("--point", apoint, "Point s p")->expected(2);
  autom->add_option("--royal", aroyal, "Royal parameter lambda");
  autom->add_option("--flat", aflat, "Flat geodesic parameter beta");

  // geodesic
  auto* geodesic = app.add_subcommand("geodesic", "Flat and royal geodesics");
  std::vector<std::string> gpoint, glambda;
  std::string gkind, gbeta = "0,0";
  SearchFlags gsearch;
  geodesic->add_option("--point", gpoint, "Point s p: report its flat geodesic")->expected(2);
  geodesic->add_option("--kind", gkind, "royal or flat")->check(CLI::IsMember({"royal", "flat"}));
  geodesic->add_option("--beta", gbeta, "Flat geodesic parameter")->capture_default_str();
  geodesic->add_option("--lambda", glambda, "One or two disc parameters")->expected(1, 2);
  gsearch.attach(geodesic);

  // hered
  auto* hered = app.add_subcommand("hered", "Positivity of h(T) for a commuting tuple");
  std::string hpoly, htuple;
  double htol = 1e-10, hcommute = 1e-10;
  hered->add_option("--poly", hpoly, "Hereditary polynomial JSON (inline or file)")->required();
  hered->add_option("--tuple", htuple, "Commuting tuple JSON (inline or file)")->required();
  hered->add_option("--tol", htol, "Positivity tolerance")->capture_default_str();
  hered->add_option("--commute-tol", hcommute, "Commutation tolerance")->capture_default_str();

  // kernel
  auto* kernel = app.add_subcommand("kernel", "Finite-sample psd kernel tests");
  std::string kmatrix, komega = "1,0";
  bool kextremal = false;
  int kpoints = 8;
  double ktol = 1e-10;
  std::uint64_t kseed = 42;
  kernel->add_option("--matrix", kmatrix, "Hermitian matrix JSON (inline or file)");
  kernel->add_flag("--extremal", kextremal, "Random extremal-form quotient kernel");
  kernel->add_option("--omega", komega, "omega for --extremal")->capture_default_str();
  kernel->add_option("--points", kpoints, "Sample points for --extremal")->capture_default_str();
  kernel->add_option("--tol", ktol, "psd tolerance")->capture_default_str();
  kernel->add_option("--seed", kseed)->capture_default_str();

  // selftest
  auto* selftest = app.add_subcommand("selftest", "Seeded sweep over every library invariant");
  SelftestOptions sopts;
  std::string slevel = "quick";
  selftest->add_option("--seed", sopts.seed)->capture_default_str();
  selftest->add_option("--level", slevel)->check(CLI::IsMember({"quick", "full"}))->capture_default_str();
  selftest->add_flag("--inject-phi-sign-fault", sopts.inject_phi_sign_fault,
                     "Negative control: corrupt Phi in the royal-collapse check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kParse;
  }

  try {
    if (distance->parsed()) {
      dsearch.validate();
      const GPoint x = parse_gpoint(dx), y = parse_gpoint(dy);
      const json r = distance_report(x, y, dsearch.config);
      if (dformat == "json") return print_json(out, r);
      out << "distance,unique,constant,omega_re,omega_im\n";
      for (const auto& w : r["maximizers"]) {
        out << csv_number(r["distance"].get<double>()) << ',' << (r["unique"].get<bool>() ? 1 : 0)
            << ',' << (r["constant"].get<bool>() ? 1 : 0) << ',' << csv_number(w[0].get<double>())
            << ',' << csv_number(w[1].get<double>()) << '\n';
      }
      return kOk;
    }

    if (scan->parsed()) {
      ssearch.validate();
      const GPoint x = parse_gpoint(sx);
      const std::vector<GPoint> grid = scan_grid(royal_args, flat_args, box_args, point_args);
      if (grid.empty()) throw InvalidInput("scan: grid is empty after filtering by membership in G");
      json rows = json::array();
      if (sformat == "csv") out << "s_re,s_im,p_re,p_im,distance,omega_star_arg,unique\n";
      for (const auto& g : grid) {
        const ExtremalResult r = cara_distance(x, g, ssearch.config);
        const double arg = r.maximizers.front().arg();
        if (sformat == "csv") {
          out << csv_number(g.s().real()) << ',' << csv_number(g.s().imag()) << ','
              << csv_number(g.p().real()) << ',' << csv_number(g.p().imag()) << ','
              << csv_number(r.distance) << ',' << csv_number(arg) << ',' << (r.unique ? 1 : 0)
              << '\n';
        } else {
          rows.push_back({{"point", gjson(g)}, {"distance", r.distance}, {"omega_star_arg", arg},
                          {"unique", r.unique}});
        }
      }
      if (sformat == "json") print_json(out, {{"command", "scan"}, {"x", gjson(x)}, {"rows", rows}});
      return kOk;
    }

    if (autom->parsed()) {
      const Complex w = parse_complex(am[0]);
      if (std::abs(std::abs(w) - 1.0) > 1e-12) throw InvalidInput("--m: rotation must lie on T");
      const Moebius m(CirclePoint(w), DiscPoint(parse_complex(am[1])));
      std::optional<GPoint> point;
      std::optional<DiscPoint> lambda, beta;
      if (!apoint.empty()) point = parse_gpoint(apoint);
      if (!aroyal.empty()) lambda = DiscPoint(parse_complex(aroyal));
      if (!aflat.empty()) beta = DiscPoint(parse_complex(aflat));
      if (!point && !lambda && !beta) throw InvalidInput("automorphism: give --point, --royal or --flat");
      return print_json(out, automorphism_report(m, point, lambda, beta));
    }

    if (geodesic->parsed()) {
      gsearch.validate();
      if (!gpoint.empty()) {
        const GPoint g = parse_gpoint(gpoint);
        const FlatParameters fp = flat_through(g);
        const GPoint back = flat_point(fp.beta, fp.lambda);
        const DiscPoint meet = flat_royal_meet(fp.beta);
        const Complex b = fp.beta.value(), l = meet.value();
        return print_json(
            out, {{"command", "geodesic"},
                  {"point", gjson(g)},
                  {"beta", cjson(b)},
                  {"lambda", cjson(fp.lambda.value())},
                  {"roundtrip_residual",
                   std::max(std::abs(back.s() - g.s()), std::abs(back.p() - g.p()))},
                  {"royal_meet",
                   {{"lambda", cjson(l)},
                    {"point", gjson(royal(meet))},
                    {"residual", std::abs(b * l * l + std::conj(b) - 2.0 * l)}}}});
      }
      if (gkind.empty() || glambda.empty()) {
        throw InvalidInput("geodesic: give --point, or --kind with --lambda");
      }
      const DiscPoint beta(parse_complex(gbeta));
      auto on_geodesic = [&](DiscPoint l) { return gkind == "royal" ? royal(l) : flat_point(beta, l); };
      const DiscPoint l1(parse_complex(glambda[0]));
      json report{{"command", "geodesic"}, {"kind", gkind}};
      if (gkind == "flat") report["beta"] = cjson(beta.value());
      if (glambda.size() == 1) {
        report["point"] = gjson(on_geodesic(l1));
      } else {
        const DiscPoint l2(parse_complex(glambda[1]));
        report["pair"] = geodesic_pair(on_geodesic(l1), on_geodesic(l2), l1, l2, gsearch.config);
      }
      return print_json(out, report);
    }

    if (hered->parsed()) {
      const HereditaryPolynomial h = parse_hereditary_json(json_argument(hpoly));
      std::vector<ComplexMatrix> matrices = parse_tuple_json(json_argument(htuple));
      if (static_cast<int>(matrices.size()) != h.dim()) {
        throw InvalidInput("hered: tuple length does not match the polynomial dimension");
      }
      const CommutingTuple t = CommutingTuple::make(std::move(matrices), hcommute);
      const PositivityResult r = positivity(h, t, htol);
      json spectrum = json::array();
      for (const auto& joint : t.joint_spectrum()) {
        json point = json::array();
        for (const auto& z : joint) point.push_back(cjson(z));
        spectrum.push_back(point);
      }
      return print_json(out, {{"command", "hered"},
                              {"psd", r.psd},
                              {"min_eig", r.min_eig},
                              {"hermitian_residual", r.hermitian_residual},
                              {"commutation_residual", t.commutation_residual()},
                              {"joint_spectrum", spectrum}});
    }

    if (kernel->parsed()) {
      if (kmatrix.empty() == !kextremal) throw InvalidInput("kernel: give exactly one of --matrix or --extremal");
      if (!kmatrix.empty()) {
        const ComplexMatrix k = parse_matrix_json(json_argument(kmatrix));
        if (k.rows() != k.cols()) throw InvalidInput("kernel: matrix must be square");
        if ((k - k.adjoint()).cwiseAbs().maxCoeff() > 1e-10) throw InvalidInput("kernel: matrix is not Hermitian");
        json report = kernel_verdict(gram_from_matrix(k), ktol);
        report["command"] = "kernel";
        return print_json(out, report);
      }
      if (kpoints < 1 || kpoints > kMaxMatrixDim) throw InvalidInput("kernel: --points must lie in [1, 32]");
      Sampler rng(kseed);
      const CirclePoint omega(parse_complex(komega));
      const Polynomial f = rng.polynomial(2, 2);
      std::vector<GPoint> pts;
      for (int k = 0; k < kpoints; ++k) pts.push_back(rng.gpoint());
      const QuotientVerdict v = extremal_quotient_check(f, omega, pts);
      return print_json(out, {{"command", "kernel"},
                              {"kind", "extremal_quotient"},
                              {"seed", kseed},
                              {"omega", cjson(omega.value())},
                              {"points", kpoints},
                              {"psd", v.psd},
                              {"rank", v.rank},
                              {"min_eig", v.min_eig}});
    }

    if (selftest->parsed()) {
      sopts.level = slevel == "full" ? SelftestLevel::full : SelftestLevel::quick;
      const SelftestReport report = run_selftest(sopts);
      out << format_report(report, sopts);
      return report.all_passed() ? kOk : kFailure;
    }
  } catch (const CommutationError& e) {
    err << "error: " << e.what() << "\ncommutation_residual=" << csv_number(e.residual()) << '\n';
    return kCommutation;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    if (e.modulus()) err << "root_modulus=" << csv_number(*e.modulus()) << '\n';
    return kDomain;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return kParse;
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << '\n';
    return kParse;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kFailure;
}

}  // namespace symbidisc
