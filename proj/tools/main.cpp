// Command-line front end: orbit inspection, theta-series scans, normalized
// quadratic sums, minimized constants, and the self-check suites.
//
// Exit codes: 0 success / all checks pass, 1 computation or verification
// failure, 2 usage error (bad flags or malformed values).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <theta_bounds/theta_bounds.hpp>

namespace tb = theta_bounds;

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// numeric fields accept either a rational "a/q" or a plain decimal
double parse_number(const std::string& s) {
  try {
    return tb::to_double(tb::parse_rational(s));
  } catch (const std::invalid_argument&) {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("malformed number: " + s);
    return v;
  }
}

tb::TorusPair parse_pair(const std::string& s) {
  std::size_t comma = s.find(',');
  if (comma == std::string::npos)
    throw std::invalid_argument("pair must look like a/q,b/q: " + s);
  return tb::make_torus_pair(tb::parse_rational(s.substr(0, comma)),
                             tb::parse_rational(s.substr(comma + 1)));
}

struct GridSpec {
  double lo = 0, hi = 1;
  std::size_t n = 2;
};

GridSpec parse_grid(const std::string& s) {
  GridSpec g;
  char trailing = 0;
  if (std::sscanf(s.c_str(), "%lf:%lf:%zu%c", &g.lo, &g.hi, &g.n, &trailing) != 3 ||
      g.n < 1)
    throw std::invalid_argument("grid must look like lo:hi:count: " + s);
  return g;
}

// one polyline per series over a shared x range, y autoscaled from the data
void write_svg(const std::string& path, const std::vector<double>& xs,
               const std::vector<std::pair<std::string, std::vector<double>>>& series) {
  const double W = 900, H = 480, ml = 70, mr = 20, mt = 20, mb = 40;
  double ymax = 1e-300;
  for (const auto& [label, ys] : series)
    for (double y : ys) ymax = std::fmax(ymax, y);
  double xmin = xs.front(), xmax = xs.back();
  if (xmax == xmin) xmax = xmin + 1;
  auto X = [&](double x) { return ml + (W - ml - mr) * (x - xmin) / (xmax - xmin); };
  auto Y = [&](double y) { return H - mb - (H - mt - mb) * (y / ymax); };
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                  "#ff7f0e", "#8c564b"};
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << W << " " << H
      << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr
      << "\" y2=\"" << H - mb << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\""
      << H - mb << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << ml << "\" y=\"" << H - mb + 24 << "\" font-size=\"13\">"
      << fmt17(xmin) << "</text>\n";
  out << "<text x=\"" << W - mr - 60 << "\" y=\"" << H - mb + 24
      << "\" font-size=\"13\">" << fmt17(xmax) << "</text>\n";
  out << "<text x=\"4\" y=\"" << mt + 8 << "\" font-size=\"13\">" << fmt17(ymax)
      << "</text>\n<text x=\"4\" y=\"" << H - mb << "\" font-size=\"13\">0</text>\n";
  std::size_t ci = 0;
  double ly = mt + 14;
  for (const auto& [label, ys] : series) {
    const char* color = palette[ci++ % 6];
    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.2\" points=\"";
    for (std::size_t i = 0; i < xs.size(); ++i)
      out << X(xs[i]) << "," << Y(ys[i]) << (i + 1 < xs.size() ? " " : "");
    out << "\"/>\n";
    out << "<text x=\"" << W - mr - 160 << "\" y=\"" << ly << "\" font-size=\"13\" fill=\""
        << color << "\">" << label << "</text>\n";
    ly += 16;
  }
  out << "</svg>\n";
}

nlohmann::json pair_json(const tb::TorusPair& p) {
  return {{"alpha", tb::to_string(p.alpha)}, {"beta", tb::to_string(p.beta)}};
}

int run_orbit(const std::string& alpha_s, const std::string& beta_s, bool as_json) {
  tb::Rational alpha = tb::parse_rational(alpha_s);
  tb::Rational beta = tb::parse_rational(beta_s);
  tb::OrbitRecord rec = tb::gamma_theta_orbit(tb::make_torus_pair(alpha, beta));
  tb::PairClass cls = tb::classify_pair(alpha, beta);
  if (as_json) {
    nlohmann::json j = {{"alpha", tb::to_string(rec.seed.alpha)},
                        {"beta", tb::to_string(rec.seed.beta)},
                        {"orbit_size", rec.points.size()},
                        {"m1", tb::to_string(rec.m1)},
                        {"m1_value", tb::to_double(rec.m1)},
                        {"good", cls.good},
                        {"reason", cls.reason},
                        {"meets_U", rec.U.size()},
                        {"meets_V_plus", rec.Vplus.size()},
                        {"meets_V_minus", rec.Vminus.size()}};
    if (cls.m) j["m"] = *cls.m;
    nlohmann::json pts = nlohmann::json::array();
    for (const tb::TorusPair& p : rec.points) pts.push_back(pair_json(p));
    j["points"] = std::move(pts);
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "seed: (" << tb::to_string(rec.seed.alpha) << ", "
            << tb::to_string(rec.seed.beta) << ")\n";
  std::cout << "orbit size: " << rec.points.size() << "\n";
  std::cout << "m1 = " << tb::to_string(rec.m1) << " (" << fmt17(tb::to_double(rec.m1))
            << ")\n";
  if (cls.good)
    std::cout << "classification: good (m = " << (cls.m ? *cls.m : 0) << ")\n";
  else
    std::cout << "classification: bad (" << cls.reason << ")\n";
  std::cout << "divergence-line hits: U=" << rec.U.size() << " V+=" << rec.Vplus.size()
            << " V-=" << rec.Vminus.size() << "\n";
  std::cout << "points:\n";
  for (const tb::TorusPair& p : rec.points)
    std::cout << "  (" << tb::to_string(p.alpha) << ", " << tb::to_string(p.beta)
              << ")\n";
  return 0;
}

int run_theta3(const std::string& alpha_s, const std::string& beta_s,
               const std::vector<double>& eps_list, const std::string& grid_s,
               const std::string& out_path, double tol) {
  if (eps_list.empty()) throw std::invalid_argument("need at least one --eps value");
  for (double e : eps_list)
    if (!(e > 0)) throw std::invalid_argument("every eps must be positive");
  double alpha = parse_number(alpha_s);
  double beta = parse_number(beta_s);
  GridSpec grid = parse_grid(grid_s);

  std::vector<double> xs(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i)
    xs[i] = grid.n == 1 ? grid.lo
                        : grid.lo + (grid.hi - grid.lo) * static_cast<double>(i) /
                                        static_cast<double>(grid.n - 1);

  const bool svg = out_path.size() > 4 && out_path.rfind(".svg") == out_path.size() - 4;
  std::vector<std::pair<std::string, std::vector<double>>> series;
  std::ostringstream csv;
  csv << "x,eps,re,im,modulus,scaled_modulus\n";
  for (double eps : eps_list) {
    std::vector<double> scaled(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) {
      std::complex<double> v =
          tb::theta3({alpha + beta * xs[i], 0.0}, {xs[i], eps}, tol);
      double mod = std::abs(v);
      scaled[i] = std::pow(eps, 0.25) * mod;
      csv << fmt17(xs[i]) << "," << fmt17(eps) << "," << fmt17(v.real()) << ","
          << fmt17(v.imag()) << "," << fmt17(mod) << "," << fmt17(scaled[i]) << "\n";
    }
    series.push_back({"eps=" + fmt17(eps), std::move(scaled)});
  }
  if (svg) {
    write_svg(out_path, xs, series);
  } else if (out_path.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open output file: " + out_path);
    out << csv.str();
  }
  return 0;
}

int run_weylsum(int N, double x, const std::vector<std::string>& alpha_s,
                const std::vector<std::string>& beta_s, const std::string& cutoff_name,
                int ramp_steps) {
  if (alpha_s.size() != beta_s.size())
    throw std::invalid_argument("--alpha-vec and --beta-vec must have equal length");
  std::vector<double> alpha, beta;
  for (const auto& s : alpha_s) alpha.push_back(parse_number(s));
  for (const auto& s : beta_s) beta.push_back(parse_number(s));
  const std::size_t k = alpha.size();

  tb::Cutoff f = tb::gaussian_cutoff(k);
  if (cutoff_name == "sharp" || cutoff_name == "ramp") {
    if (k != 1)
      throw std::invalid_argument("compact cutoffs are one-dimensional: pass k = 1");
    f = cutoff_name == "sharp" ? tb::sharp_indicator() : tb::smooth_ramp(ramp_steps);
  } else if (cutoff_name != "gaussian") {
    throw std::invalid_argument("unknown cutoff: " + cutoff_name);
  }

  std::complex<double> s = tb::weyl_sum(f, N, x, alpha, beta);
  double scale = std::pow(static_cast<double>(N), -static_cast<double>(k) / 2.0);
  std::cout << "S = " << fmt17(s.real()) << " + " << fmt17(s.imag()) << " i\n";
  std::cout << "|S| = " << fmt17(std::abs(s)) << "\n";
  std::cout << "N^{-k/2} |S| = " << fmt17(scale * std::abs(s)) << "\n";
  return 0;
}

int run_constant(int m, double beta, const std::string& target, double eta_max,
                 bool assume_long_sums) {
  tb::EtaMinimum r;
  if (target == "theta3") {
    r = tb::theta3_constant(m);
  } else if (target == "k1") {
    r = tb::implied_constant_k1(
        m, beta, eta_max, [](double eta) { return tb::kappa_gaussian_closed(eta); },
        assume_long_sums);
  } else {
    throw std::invalid_argument("unknown target: " + target);
  }
  std::cout << "eta_star   = " << fmt17(r.eta_star) << "\n";
  std::cout << "constant   = " << fmt17(r.constant) << "\n";
  std::cout << "good_pairs = " << tb::jordan_totient_J2(m) << "\n";
  return 0;
}

int run_verify(const std::string& suite, std::uint64_t seed, int qmax,
               const std::string& pair_s, std::size_t samples, int trials,
               bool as_json) {
  nlohmann::json rep;
  if (suite == "identity") {
    rep = tb::suite_identity(seed);
  } else if (suite == "invariance") {
    rep = tb::suite_invariance(seed);
  } else if (suite == "reduction") {
    rep = tb::suite_reduction(seed);
  } else if (suite == "classify") {
    rep = tb::suite_classify(qmax);
  } else if (suite == "kappa") {
    rep = tb::suite_kappa(seed, trials);
  } else if (suite == "sup") {
    rep = tb::suite_sup(parse_pair(pair_s.empty() ? "1/2,1/6" : pair_s), samples);
  } else if (suite == "growth") {
    rep = tb::suite_growth(parse_pair(pair_s.empty() ? "1/2,1/2" : pair_s));
  } else {
    throw std::invalid_argument("unknown suite: " + suite);
  }
  if (as_json) {
    std::cout << rep.dump(2) << "\n";
  } else {
    for (const auto& item : rep.at("items")) {
      bool ok = item.at("pass").get<bool>();
      std::cout << (ok ? "  ok   " : "  FAIL ") << item.at("name").get<std::string>()
                << "  observed=" << item.at("observed").dump()
                << " threshold=" << item.at("threshold").dump() << "\n";
    }
    const auto& s = rep.at("summary");
    std::cout << "suite " << rep.at("suite").get<std::string>() << ": "
              << (tb::report_all_pass(rep) ? "pass" : "FAIL") << " ("
              << s.at("passed").get<std::size_t>() << "/"
              << s.at("total").get<std::size_t>() << " items)\n";
  }
  return tb::report_all_pass(rep) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "quadratic exponential sums, theta moduli on the metaplectic quotient, "
      "and their explicit bounds"};
  app.require_subcommand(1);

  auto* orbit_cmd =
      app.add_subcommand("orbit", "finite symmetry orbit of a rational pair");
  std::string o_alpha, o_beta;
  bool o_json = false;
  orbit_cmd->add_option("--alpha", o_alpha, "alpha as a/q")->required();
  orbit_cmd->add_option("--beta", o_beta, "beta as b/q")->required();
  orbit_cmd->add_flag("--json", o_json, "emit JSON");

  auto* theta_cmd = app.add_subcommand(
      "theta3", "scan eps^{1/4} |theta(alpha + beta x; x + i eps)| over an x grid");
  std::string t_alpha, t_beta, t_grid = "0:1:101", t_out;
  std::vector<double> t_eps;
  double t_tol = 1e-10;
  theta_cmd->add_option("--alpha", t_alpha, "alpha (rational a/q or decimal)")
      ->required();
  theta_cmd->add_option("--beta", t_beta, "beta (rational a/q or decimal)")->required();
  theta_cmd->add_option("--eps", t_eps, "comma-separated eps scales")
      ->required()
      ->delimiter(',');
  theta_cmd->add_option("--x", t_grid, "x grid as lo:hi:count");
  theta_cmd->add_option("--out", t_out, "output path (.csv columns or .svg polylines)");
  theta_cmd->add_option("--tol", t_tol, "series tail tolerance");

  auto* weyl_cmd =
      app.add_subcommand("weylsum", "one quadratic exponential sum, any dimension");
  int w_N = 0;
  double w_x = 0;
  std::vector<std::string> w_alpha, w_beta;
  std::string w_cutoff = "gaussian";
  int w_ramp = 8;
  weyl_cmd->add_option("--N", w_N, "sum length")->required();
  weyl_cmd->add_option("--x", w_x, "modulus argument x")->required();
  weyl_cmd->add_option("--alpha-vec", w_alpha, "linear phases, comma-separated")
      ->required()
      ->delimiter(',');
  weyl_cmd->add_option("--beta-vec", w_beta, "quadratic shifts, comma-separated")
      ->required()
      ->delimiter(',');
  weyl_cmd->add_option("--cutoff", w_cutoff, "gaussian | sharp | ramp");
  weyl_cmd->add_option("--ramp-N", w_ramp, "ramp steepness (cutoff=ramp)");

  auto* const_cmd =
      app.add_subcommand("constant", "minimized explicit constant for a conductor");
  int c_m = 0;
  double c_beta = 0.0, c_eta_max = 4.0 / 3.0;
  std::string c_target = "theta3";
  bool c_assume = false;
  const_cmd->add_option("--m", c_m, "odd conductor")->required();
  const_cmd->add_option("--beta", c_beta, "shift entering the k1 objective");
  const_cmd->add_option("--target", c_target, "theta3 | k1");
  const_cmd->add_option("--eta-max", c_eta_max, "upper bracket for the k1 target");
  const_cmd->add_flag("--assume-long-sums", c_assume,
                      "drop the (1+beta^2)^{eta/2} factor (N >= |beta| regime)");

  auto* verify_cmd = app.add_subcommand("verify", "run a self-check suite");
  std::string v_suite, v_pair;
  std::uint64_t v_seed = tb::default_seed;
  int v_qmax = 8, v_trials = 50;
  std::size_t v_samples = 4000;
  bool v_json = false;
  verify_cmd
      ->add_option("--suite", v_suite,
                   "identity | invariance | reduction | classify | kappa | sup | growth")
      ->required();
  verify_cmd->add_option("--seed", v_seed, "RNG seed for randomized suites");
  verify_cmd->add_option("--qmax", v_qmax, "denominator bound (classify)");
  verify_cmd->add_option("--pair", v_pair, "rational pair a/q,b/q (sup, growth)");
  verify_cmd->add_option("--samples", v_samples, "x-grid samples per scale (sup)");
  verify_cmd->add_option("--trials", v_trials, "random shift trials (kappa)");
  verify_cmd->add_flag("--json", v_json, "emit the JSON report");

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
    if (app.got_subcommand(orbit_cmd)) return run_orbit(o_alpha, o_beta, o_json);
    if (app.got_subcommand(theta_cmd))
      return run_theta3(t_alpha, t_beta, t_eps, t_grid, t_out, t_tol);
    if (app.got_subcommand(weyl_cmd))
      return run_weylsum(w_N, w_x, w_alpha, w_beta, w_cutoff, w_ramp);
    if (app.got_subcommand(const_cmd))
      return run_constant(c_m, c_beta, c_target, c_eta_max, c_assume);
    if (app.got_subcommand(verify_cmd))
      return run_verify(v_suite, v_seed, v_qmax, v_pair, v_samples, v_trials, v_json);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
