#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ctbp/verify.hpp"

namespace ctbp::cli {

using nlohmann::json;

enum Exit { kOk = 0, kInputError = 2, kDegenerate = 3, kVerifyFailed = 4 };

inline int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidInput:
    case ErrorKind::ChartUndefined:
    case ErrorKind::CollisionInput:
      return kInputError;
    default:
      return kDegenerate;
  }
}

inline std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x == 0 ? 0.0 : x);
  return buf;
}

inline std::string fmt3(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

inline std::vector<double> parse_list(const std::string& s, size_t n, const char* what) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(parse_rational(item)));
  if (out.size() != n)
    throw Error(ErrorKind::InvalidInput, std::string(what) + " expects " + std::to_string(n) + " comma-separated numbers");
  return out;
}

inline MassTriple parse_masses(const std::string& s) {
  auto v = parse_list(s, 3, "--m");
  MassTriple m{v[0], v[1], v[2]};
  m.validate();
  return m;
}

/// "min1:max1:n1,min2:max2:n2".
inline GridSpec parse_grid(const std::string& s) {
  auto axis = [](const std::string& part) {
    std::vector<std::string> f;
    std::stringstream ss(part);
    std::string item;
    while (std::getline(ss, item, ':')) f.push_back(item);
    if (f.size() != 3) throw Error(ErrorKind::InvalidInput, "--grid axis must be min:max:n");
    GridAxis a{to_double(parse_rational(f[0])), to_double(parse_rational(f[1])), 0};
    Rational n = parse_rational(f[2]);
    if (n.get_den() != 1 || n < 1 || n > 100000) throw Error(ErrorKind::InvalidInput, "--grid steps must be an integer >= 1");
    a.n = static_cast<int>(n.get_num().get_si());
    if (!(a.min <= a.max)) throw Error(ErrorKind::InvalidInput, "--grid needs min <= max");
    return a;
  };
  auto comma = s.find(',');
  if (comma == std::string::npos) throw Error(ErrorKind::InvalidInput, "--grid needs two axes");
  return {axis(s.substr(0, comma)), axis(s.substr(comma + 1))};
}

struct SystemArgs {
  std::string m = "1,1,1";
  std::string alpha;
  std::string beta;
  bool gravitational = false;
};

inline void add_system_options(CLI::App* sub, SystemArgs& a) {
  sub->add_option("--m", a.m, "masses m1,m2,m3");
  auto* oa = sub->add_option("--alpha", a.alpha, "couplings a1,a2,a3");
  auto* ob = sub->add_option("--beta", a.beta, "reduced couplings b1,b2 (a3 = 1)");
  auto* og = sub->add_flag("--gravitational", a.gravitational, "a_i = m_j m_k");
  oa->excludes(ob)->excludes(og);
  ob->excludes(og);
}

inline CouplingTriple resolve_couplings(const SystemArgs& a, const MassTriple& m) {
  if (a.gravitational) return gravitational(m);
  if (!a.alpha.empty()) {
    auto v = parse_list(a.alpha, 3, "--alpha");
    return {v[0], v[1], v[2]};
  }
  if (!a.beta.empty()) {
    auto v = parse_list(a.beta, 2, "--beta");
    return {v[0], v[1], 1.0};
  }
  throw Error(ErrorKind::InvalidInput, "one of --alpha, --beta, --gravitational is required");
}

inline json vec_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

inline json cc_json(const CentralConfigResult& cc) {
  json pos = json::array();
  for (const auto& q : cc.config.q) pos.push_back(vec_json(q));
  return {{"kind", cc.kind == CcKind::Collinear ? "Collinear" : "NonCollinear"},
          {"positions", pos},
          {"distances", {{"r12", cc.r12}, {"r13", cc.r13}, {"r23", cc.r23}}},
          {"lambda", cc.lambda},
          {"V", cc.V},
          {"I", cc.I},
          {"residual", cc.residual}};
}

// ---------------------------------------------------------------------------

inline int cmd_roots(const SystemArgs& sa, double tol, bool floating, std::ostream& out) {
  const MassTriple m = parse_masses(sa.m);
  const CouplingTriple a = resolve_couplings(sa, m);
  auto f = build_quintic(a, m);
  IsolationOptions opt;
  if (floating) opt.mode = Arithmetic::Floating;
  auto rl = isolate_real_roots(f, opt);
  json j;
  j["masses"] = {m.m1, m.m2, m.m3};
  j["alpha"] = {a.a1, a.a2, a.a3};
  json coeffs = json::array();
  for (int k = 5; k >= 0; --k) coeffs.push_back(f.coeff(k));
  j["coefficients"] = coeffs;
  j["enclosure_width"] = rl.enclosure_width;
  RootCounts n{0, 0, 0};
  json roots = json::array();
  for (const auto& r : rl.roots) {
    json jr{{"u", r.value},
            {"multiplicity", r.multiplicity},
            {"interval", std::string(to_string(r.interval))},
            {"enclosure", {r.lo, r.hi}}};
    if (r.multiplicity == 1) {
      ++n[static_cast<size_t>(r.interval)];
      auto eff = collinear_couplings(r.value, a);
      auto cc = collinear_cc(r.value, a, m, 1.0, tol);
      jr["cc_couplings"] = {eff.a1, eff.a2, eff.a3};
      jr["central_configuration"] = cc_json(cc);
      jr["potential_sign"] = cc.V > 0 ? 1 : (cc.V < 0 ? -1 : 0);
      if (a.a3 != 0) jr["reduced_potential"] = reduced_potential(r.value, {a.a1 / a.a3, a.a2 / a.a3});
    }
    roots.push_back(jr);
  }
  j["roots"] = roots;
  bool multiple = false;
  for (const auto& r : rl.roots) multiple = multiple || r.multiplicity > 1;
  j["on_discriminant"] = multiple;
  j["triple"] = {n[0], n[1], n[2]};
  const int id = multiple ? 0 : region_id(n);
  j["region"] = id ? json(id) : json(nullptr);
  out << j.dump(2) << "\n";
  return kOk;
}

// ---------------------------------------------------------------------------
// SVG

inline const std::array<const char*, 14>& region_palette() {
  // Index 0 is Boundary; 1..13 follow the canonical region ids.
  static const std::array<const char*, 14> p = {"#000000", "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                                "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22",
                                                "#17becf", "#aec7e8", "#ffbb78", "#98df8a"};
  return p;
}

struct SvgScene {
  double x0, x1, y0, y1;  // beta window
  int width = 640, height = 640;

  double px(double b1) const { return (b1 - x0) / (x1 - x0) * width; }
  double py(double b2) const { return height - (b2 - y0) / (y1 - y0) * height; }
  bool inside(double b1, double b2) const { return b1 >= x0 && b1 <= x1 && b2 >= y0 && b2 <= y1; }
};

inline void svg_polyline(std::ostream& os, const SvgScene& s, const std::vector<BetaPoint>& pts, const char* stroke,
                         double w) {
  if (pts.size() < 2) return;
  os << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"" << fmt3(w) << "\" points=\"";
  for (size_t i = 0; i < pts.size(); ++i) os << (i ? " " : "") << fmt3(s.px(pts[i].b1)) << "," << fmt3(s.py(pts[i].b2));
  os << "\"/>\n";
}

inline void write_svg(std::ostream& os, const GridSpec& g, const MassTriple& m, const std::vector<RasterRow>& rows) {
  SvgScene s{g.b1.min, g.b1.max, g.b2.min, g.b2.max};
  if (s.x1 == s.x0) s.x1 = s.x0 + 1;
  if (s.y1 == s.y0) s.y1 = s.y0 + 1;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << s.width << "\" height=\"" << s.height
     << "\" viewBox=\"0 0 " << s.width << " " << s.height << "\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << s.width << "\" height=\"" << s.height << "\" fill=\"#ffffff\"/>\n";
  const double cw = g.b1.n > 1 ? s.width / double(g.b1.n - 1) : s.width;
  const double ch = g.b2.n > 1 ? s.height / double(g.b2.n - 1) : s.height;
  const auto& pal = region_palette();
  os << "<g id=\"cells\" shape-rendering=\"crispEdges\">\n";
  for (const auto& r : rows) {
    const int id = r.report.boundary ? 0 : r.report.region;
    const char* fill = (id >= 0 && id <= 13) ? pal[static_cast<size_t>(id)] : "#ffffff";
    os << "<rect x=\"" << fmt3(s.px(to_double(r.b1)) - cw / 2) << "\" y=\"" << fmt3(s.py(to_double(r.b2)) - ch / 2)
       << "\" width=\"" << fmt3(cw) << "\" height=\"" << fmt3(ch) << "\" fill=\"" << fill << "\"/>\n";
  }
  os << "</g>\n";
  // Axes.
  os << "<g id=\"axes\" stroke=\"#000000\" stroke-width=\"1.000\">\n";
  if (s.y0 <= 0 && s.y1 >= 0)
    os << "<line x1=\"0.000\" y1=\"" << fmt3(s.py(0)) << "\" x2=\"" << fmt3(s.width) << "\" y2=\"" << fmt3(s.py(0))
       << "\"/>\n";
  if (s.x0 <= 0 && s.x1 >= 0)
    os << "<line x1=\"" << fmt3(s.px(0)) << "\" y1=\"0.000\" x2=\"" << fmt3(s.px(0)) << "\" y2=\"" << fmt3(s.height)
       << "\"/>\n";
  os << "</g>\n";
  // Discriminant curve, split wherever it leaves the window.
  os << "<g id=\"gamma\">\n";
  const double pi = std::acos(-1.0);
  std::vector<BetaPoint> run;
  const int n = 6000;
  for (int i = 1; i < n; ++i) {
    const double u = std::tan(-pi / 2 + pi * i / n);
    auto gs = gamma_point(u, m);
    if (!gs.at_infinity && s.inside(gs.point.b1, gs.point.b2)) {
      run.push_back(gs.point);
    } else {
      svg_polyline(os, s, run, "#ffffff", 1.5);
      run.clear();
    }
  }
  svg_polyline(os, s, run, "#ffffff", 1.5);
  os << "</g>\n";
  // Zero-potential parabola b1 = -(t-1)^2/4, b2 = -(t+1)^2/4.
  os << "<g id=\"parabola\">\n";
  run.clear();
  for (int i = 0; i <= 2000; ++i) {
    const double t = -20 + 40.0 * i / 2000;
    BetaPoint p{-(t - 1) * (t - 1) / 4, -(t + 1) * (t + 1) / 4};
    if (s.inside(p.b1, p.b2)) {
      run.push_back(p);
    } else {
      svg_polyline(os, s, run, "#ff00ff", 1.0);
      run.clear();
    }
  }
  svg_polyline(os, s, run, "#ff00ff", 1.0);
  os << "</g>\n";
  // Cusps.
  os << "<g id=\"special-points\" fill=\"#ffff00\" stroke=\"#000000\">\n";
  auto sp = special_points(m);
  for (double eta : {sp.eta_minus, sp.eta_plus, sp.eta0}) {
    if (!std::isfinite(eta)) continue;
    auto gs = gamma_point(eta, m);
    if (!gs.at_infinity && s.inside(gs.point.b1, gs.point.b2))
      os << "<circle cx=\"" << fmt3(s.px(gs.point.b1)) << "\" cy=\"" << fmt3(s.py(gs.point.b2)) << "\" r=\"4.000\"/>\n";
  }
  os << "</g>\n";
  os << "</svg>\n";
}

inline int cmd_regions(const std::string& grid, const std::string& masses, const std::string& csv_path,
                       const std::string& svg_path, unsigned threads, std::ostream& out) {
  const MassTriple m = parse_masses(masses);
  const GridSpec g = parse_grid(grid);
  auto rows = raster_sweep(g, m, threads);
  std::ostringstream csv;
  csv << "beta1,beta2,n1,n2,n3,region,neg_u_count_i1,neg_u_count_i2,neg_u_count_i3\n";
  for (const auto& r : rows) {
    const auto& rep = r.report;
    csv << fmt17(to_double(r.b1)) << "," << fmt17(to_double(r.b2)) << ",";
    if (rep.boundary) {
      csv << ",,,B,,,\n";
      continue;
    }
    csv << rep.triple[0] << "," << rep.triple[1] << "," << rep.triple[2] << "," << rep.region << ","
        << rep.negative_u[0] << "," << rep.negative_u[1] << "," << rep.negative_u[2] << "\n";
  }
  if (!svg_path.empty()) {
    std::ofstream f(svg_path, std::ios::binary);
    if (!f) throw Error(ErrorKind::InvalidInput, "cannot write " + svg_path);
    write_svg(f, g, m, rows);
  }
  if (csv_path.empty()) {
    out << csv.str();
    return kOk;
  }
  std::ofstream f(csv_path, std::ios::binary);
  if (!f) throw Error(ErrorKind::InvalidInput, "cannot write " + csv_path);
  f << csv.str();
  std::set<int> labels;
  size_t boundary = 0;
  for (const auto& r : rows) {
    if (r.report.boundary)
      ++boundary;
    else
      labels.insert(r.report.region);
  }
  json j{{"cells", rows.size()}, {"boundary_cells", boundary}, {"regions", labels}};
  out << j.dump() << "\n";
  return kOk;
}

inline int cmd_curve(const std::string& masses, double mu, const std::string& range, int samples,
                     const std::string& csv_path, std::ostream& out) {
  MassTriple m = parse_masses(masses);
  if (mu != 0) {
    if (!(mu > 0)) throw Error(ErrorKind::InvalidInput, "--mu must be positive");
    m = {mu, mu, 1};
  }
  auto parts = range.find(':');
  if (parts == std::string::npos) throw Error(ErrorKind::InvalidInput, "--u-range must be lo:hi");
  const double lo = to_double(parse_rational(range.substr(0, parts)));
  const double hi = to_double(parse_rational(range.substr(parts + 1)));
  if (samples < 0) throw Error(ErrorKind::InvalidInput, "--samples must be >= 0");
  auto pts = trace_gamma(m, lo, hi, samples);
  std::ostringstream csv;
  csv << "u,beta1,beta2,branch,at_infinity\n";
  for (const auto& s : pts) {
    csv << fmt17(s.u) << ",";
    if (s.at_infinity)
      csv << ",";
    else
      csv << fmt17(s.point.b1) << "," << fmt17(s.point.b2);
    csv << "," << s.branch << "," << (s.at_infinity ? 1 : 0) << "\n";
  }
  if (csv_path.empty()) {
    out << csv.str();
  } else {
    std::ofstream f(csv_path, std::ios::binary);
    if (!f) throw Error(ErrorKind::InvalidInput, "cannot write " + csv_path);
    f << csv.str();
    out << json{{"samples", pts.size()}}.dump() << "\n";
  }
  return kOk;
}

/// |d(xi)| relative to sum |d_i||xi|^i.
inline double infinity_certificate(double xi, const MassTriple& m) {
  auto g = gamma_curve(m);
  return std::abs(g.d(xi)) / detail::abs_scale(g.d, xi);
}

/// |c'(eta)| relative to |c''(eta)|.
inline double cusp_certificate(double eta, const MassTriple& m) {
  auto a = gamma_taylor(eta, m, 2);
  return std::hypot(a[1][0], a[1][1]) / std::hypot(2 * a[2][0], 2 * a[2][1]);
}

inline int cmd_special_points(double mu, std::ostream& out) {
  if (!(mu > 0) || !std::isfinite(mu)) throw Error(ErrorKind::InvalidInput, "--mu must be positive");
  const MassTriple m{mu, mu, 1};
  auto sp = special_points(mu);
  json j;
  j["mu"] = mu;
  j["xi_minus"] = sp.xi_minus;
  j["xi_plus"] = sp.xi_plus;
  j["xi0"] = sp.xi0;
  j["eta_minus"] = sp.eta_minus;
  j["eta_plus"] = sp.eta_plus;
  j["eta0"] = sp.eta0;
  j["products"] = {{"xi", sp.xi_minus * sp.xi_plus}, {"eta", sp.eta_minus * sp.eta_plus}};
  j["ordering_holds"] = sp.xi_minus < sp.eta_minus && sp.eta_minus < sp.xi0 && sp.xi0 < sp.eta_plus &&
                        sp.eta_plus < sp.xi_plus && sp.xi_plus < sp.eta0;
  j["certificates"] = {{"g3_xi_minus", infinity_certificate(sp.xi_minus, m)},
                       {"g3_xi_plus", infinity_certificate(sp.xi_plus, m)},
                       {"g3_xi0", infinity_certificate(sp.xi0, m)},
                       {"dc_eta_minus", cusp_certificate(sp.eta_minus, m)},
                       {"dc_eta_plus", cusp_certificate(sp.eta_plus, m)},
                       {"dc_eta0", cusp_certificate(sp.eta0, m)}};
  json cusps = json::array();
  for (double eta : {sp.eta_minus, sp.eta_plus, sp.eta0}) {
    auto cf = cusp_local_form(eta, m);
    auto p = gamma_point(eta, m);
    cusps.push_back({{"eta", eta}, {"point", {p.point.b1, p.point.b2}}, {"gamma1", cf.gamma1}, {"gamma2", cf.gamma2}});
  }
  j["cusps"] = cusps;
  out << j.dump(2) << "\n";
  return kOk;
}

inline int cmd_releq(const SystemArgs& sa, const std::string& u_text, int root_index, bool noncollinear, double tol,
                     double rank_tol, std::ostream& out) {
  const MassTriple m = parse_masses(sa.m);
  const CouplingTriple a = resolve_couplings(sa, m);
  CentralConfigResult cc;
  PairCouplings g = pair_couplings(a);
  if (noncollinear) {
    const bool pos = g.g12 > 0 && g.g13 > 0 && g.g23 > 0;
    const bool neg = g.g12 < 0 && g.g13 < 0 && g.g23 < 0;
    if (!pos && !neg) throw Error(ErrorKind::NoSuchRoot, "couplings of mixed sign admit no non-collinear configuration");
    auto d = noncollinear_cc(g, m, pos ? 1.0 : -1.0);
    if (!d) throw Error(ErrorKind::NoSuchRoot, "triangle inequalities cannot be satisfied");
    // Gauge: rescale so that I = 1.
    const double I1 = moment_of_inertia(d->r12, d->r13, d->r23, m);
    const double s = 1 / std::sqrt(I1);
    auto c = embed_triangle(s * d->r12, s * d->r13, s * d->r23, m);
    cc = describe_cc(c, g, CcKind::NonCollinear, tol);
  } else {
    auto rl = isolate_real_roots(build_quintic(a, m));
    std::vector<Root> simple;
    for (const auto& r : rl.roots)
      if (r.multiplicity == 1) simple.push_back(r);
    const Root* pick = nullptr;
    if (!u_text.empty()) {
      const double u = to_double(parse_rational(u_text));
      for (const auto& r : simple)
        if (std::abs(r.value - u) <= 1e-6 * std::max(1.0, std::abs(u))) pick = &r;
    } else if (root_index >= 0 && static_cast<size_t>(root_index) < simple.size()) {
      pick = &simple[static_cast<size_t>(root_index)];
    }
    if (!pick) throw Error(ErrorKind::NoSuchRoot, "no simple root matches the request");
    g = pair_couplings(collinear_couplings(pick->value, a));
    cc = collinear_cc(pick->value, a, m, 1.0, tol);
  }
  if (!(cc.lambda > 0)) throw Error(ErrorKind::NonpositiveMultiplier, "relative equilibria need lambda > 0");
  auto pp = build_relative_equilibrium(cc.config, g, tol);
  auto iv = integral_map(pp, g);
  auto rk = jacobian_rank(pp, g, rank_tol);
  json j;
  j["central_configuration"] = cc_json(cc);
  j["couplings"] = {{"gamma12", g.g12}, {"gamma13", g.g13}, {"gamma23", g.g23}};
  json q = json::array(), p = json::array();
  for (size_t i = 0; i < 3; ++i) {
    q.push_back(vec_json(pp.config.q[i]));
    p.push_back(vec_json(pp.p[i]));
  }
  j["phase_point"] = {{"q", q}, {"p", p}};
  j["rotation"] = vec_json(rotation_vector(pp, g));
  j["integrals"] = {{"H", iv.H}, {"L", vec_json(iv.L)}, {"P", vec_json(iv.P)}, {"Q", vec_json(iv.Q)}};
  j["singular_values"] = rk.sigma;
  j["sigma_ratio"] = rk.ratio;
  j["rank"] = rk.rank;
  j["class"] = std::string(to_string(rk.cls));
  out << j.dump(2) << "\n";
  return kOk;
}

inline int cmd_verify(std::uint64_t seed, int iterations, bool as_json, std::ostream& out) {
  if (iterations < 0) throw Error(ErrorKind::InvalidInput, "--iterations must be >= 0");
  auto res = run_verification(seed, iterations);
  bool ok = true;
  json arr = json::array();
  for (const auto& r : res) {
    ok = ok && r.pass;
    if (as_json)
      arr.push_back({{"property", r.name}, {"pass", r.pass}, {"max_residual", r.max_residual}, {"samples", r.samples}});
    else
      out << r.name << " " << (r.pass ? "PASS" : "FAIL") << " max_residual=" << fmt17(r.max_residual)
          << " samples=" << r.samples << "\n";
  }
  if (as_json) out << json{{"seed", seed}, {"iterations", iterations}, {"pass", ok}, {"properties", arr}}.dump(2) << "\n";
  return ok ? kOk : kVerifyFailed;
}

// ---------------------------------------------------------------------------

/// Entry point shared by the executable and the tests.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Central configurations of the charged three-body problem"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  SystemArgs sys;
  double tol = 1e-9;
  bool json_flag = false;
  bool floating = false;
  auto* roots = app.add_subcommand("roots", "collinear central configurations of one system");
  add_system_options(roots, sys);
  roots->add_option("--tol", tol, "central-configuration residual tolerance")->check(CLI::PositiveNumber);
  roots->add_flag("--json", json_flag, "JSON output (default)");
  roots->add_flag("--floating", floating, "floating-point root isolation");

  std::string grid = "-4:4:101,-4:4:101", csv, svg;
  unsigned threads = 1;
  auto* regions = app.add_subcommand("regions", "classify a grid of reduced couplings");
  regions->add_option("--grid", grid, "min1:max1:n1,min2:max2:n2");
  regions->add_option("--m", sys.m, "masses m1,m2,m3");
  regions->add_option("--csv", csv, "CSV output path (stdout when absent)");
  regions->add_option("--svg", svg, "SVG output path");
  regions->add_option("--threads", threads, "worker threads")->check(CLI::Range(1u, 256u));

  double mu = 0;
  std::string u_range = "-5:5";
  int samples = 401;
  auto* curve = app.add_subcommand("curve", "sample the discriminant curve");
  curve->add_option("--m", sys.m, "masses m1,m2,m3");
  curve->add_option("--mu", mu, "masses (mu, mu, 1)");
  curve->add_option("--u-range", u_range, "lo:hi");
  curve->add_option("--samples", samples, "uniform samples before refinement");
  curve->add_option("--csv", csv, "CSV output path (stdout when absent)");

  double sp_mu = 0;
  auto* special = app.add_subcommand("special-points", "points at infinity and cusps for masses (mu, mu, 1)");
  special->add_option("--mu", sp_mu, "mass parameter")->required();
  special->add_flag("--json", json_flag, "JSON output (default)");

  std::string u_text;
  int root_index = 0;
  bool noncollinear = false;
  double rank_tol = 1e-9;
  auto* releq = app.add_subcommand("releq", "relative equilibrium and integral-map rank");
  add_system_options(releq, sys);
  releq->add_option("--u", u_text, "select the root nearest this value");
  releq->add_option("--root", root_index, "select the k-th simple root (0-based)");
  releq->add_flag("--noncollinear", noncollinear, "use the non-collinear configuration");
  releq->add_option("--tol", tol, "central-configuration residual tolerance")->check(CLI::PositiveNumber);
  releq->add_option("--rank-tol", rank_tol, "relative singular-value threshold")->check(CLI::PositiveNumber);
  releq->add_flag("--json", json_flag, "JSON output (default)");

  std::uint64_t seed = 20240601;
  int iterations = 200;
  auto* verify = app.add_subcommand("verify", "seeded property suites");
  verify->add_option("--seed", seed, "random seed");
  verify->add_option("--iterations", iterations, "samples per suite");
  verify->add_flag("--json", json_flag, "JSON report");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << json{{"error", "InvalidInput"}, {"message", e.what()}}.dump() << "\n";
    return kInputError;
  }

  try {
    if (*roots) return cmd_roots(sys, tol, floating, out);
    if (*regions) return cmd_regions(grid, sys.m, csv, svg, threads, out);
    if (*curve) return cmd_curve(sys.m, mu, u_range, samples, csv, out);
    if (*special) return cmd_special_points(sp_mu, out);
    if (*releq) return cmd_releq(sys, u_text, root_index, noncollinear, tol, rank_tol, out);
    if (*verify) return cmd_verify(seed, iterations, json_flag, out);
  } catch (const Error& e) {
    err << json{{"error", std::string(to_string(e.kind()))}, {"message", e.what()}}.dump() << "\n";
    return exit_code_for(e.kind());
  }
  return kInputError;
}

}  // namespace ctbp::cli
