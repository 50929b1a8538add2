// Command-line front end: enum, ford, approx, hurwitz, torus.
//
// Exit codes: 0 success, 1 internal certification failure (with a
// machine-readable diagnostic on stdout), 2 usage error.

#include "cusped/ford.hpp"
#include "cusped/json_io.hpp"
#include "cusped/torus.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace cusped;

void write_out(const std::string& out, const std::string& content) {
  if (out.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream f(out);
  if (!f) throw std::runtime_error("cannot open output file " + out);
  f << content;
}

std::complex<long double> parse_xi(const std::string& s) {
  // "0.37+0.21i", "-0.5-0.25i", "1.4142", "0.3i"
  std::string t = s;
  long double re = 0, im = 0;
  if (!t.empty() && t.back() == 'i') {
    t.pop_back();
    // Split at the last +/- that is not an exponent sign or leading.
    size_t split = std::string::npos;
    for (size_t i = t.size(); i-- > 1;) {
      if ((t[i] == '+' || t[i] == '-') && t[i - 1] != 'e' && t[i - 1] != 'E') {
        split = i;
        break;
      }
    }
    if (split == std::string::npos) {
      im = std::stold(t.empty() || t == "+" || t == "-" ? t + "1" : t);
    } else {
      re = std::stold(t.substr(0, split));
      std::string ims = t.substr(split);
      if (ims == "+" || ims == "-") ims += "1";
      im = std::stold(ims);
    }
  } else {
    re = std::stold(t);
  }
  return {re, im};
}

json config_json(const std::string& command, const json& params, int threads,
                 unsigned seed) {
  json cfg = params;
  cfg["command"] = command;
  cfg["threads"] = threads;
  cfg["seed"] = seed;
  return cfg;
}

std::string svg_ford(const GroupSpec& G, double c_max, const CutComplex& cx) {
  // Ford circles: horoball shadows at h = 1, radius 1/(2 N(c)), plus the
  // cut-locus skeleton and summits, drawn over [-1.5, 2.5]^2.
  std::ostringstream s;
  double scale = 150;  // maps [-1.5, 2.5] onto the 600px canvas
  auto X = [&](long double v) { return 225.0 + scale * (double)v; };
  auto Y = [&](long double v) { return 375.0 - scale * (double)v; };
  s << "<svg xmlns='http://www.w3.org/2000/svg' width='600' height='600' "
       "viewBox='0 0 600 600'>\n";
  Complexd mid = G.ring.d == 0 ? Complexd(0.5L, 0)
                               : (Complexd(1, 0) + G.ring.omega()) * 0.5L;
  for (const IsoSphere& sp :
       detail::spheres_near(G, detail::norm_cap(c_max), mid, 3.0L)) {
    long double r = 1.0L / (2.0L * (long double)sp.nq);
    s << "<circle cx='" << X(sp.center.real()) << "' cy='"
      << Y(sp.center.imag() + (G.ring.d == 0 ? r : 0.0L)) << "' r='"
      << (double)(scale * r) << "' fill='none' stroke='#4477aa'/>\n";
  }
  for (const CutCell& c : cx.cells) {
    s << "<polygon points='";
    for (const Complexd& v : c.footprint)
      s << X(v.real()) << "," << Y(v.imag()) << " ";
    s << "' fill='none' stroke='#cc3311'/>\n";
    s << "<circle cx='" << X(c.summit_z.real()) << "' cy='"
      << Y(c.summit_z.imag()) << "' r='3' fill='#228833'/>\n";
  }
  s << "</svg>\n";
  return s.str();
}

std::string svg_approx(const GroupSpec& G, Complexd xi, const ApproxResult& res) {
  std::ostringstream s;
  double scale = 400;
  auto X = [&](long double v) { return 300.0 + scale * (double)(v - xi.real()); };
  auto Y = [&](long double v) { return 300.0 - scale * (double)(v - xi.imag()); };
  s << "<svg xmlns='http://www.w3.org/2000/svg' width='600' height='600' "
       "viewBox='0 0 600 600'>\n";
  s << "<line x1='" << X(xi.real()) << "' y1='0' x2='" << X(xi.real())
    << "' y2='600' stroke='#000'/>\n";
  for (const ApproxStep& st : res.steps) {
    Complexd c = st.z.to_complex();
    long double r = 1.0L / (2.0L * (long double)st.z.q.norm());
    s << "<circle cx='" << X(c.real()) << "' cy='"
      << Y(c.imag() + (G.ring.d == 0 ? r : 0.0L)) << "' r='"
      << (double)(scale * r) << "' fill='none' stroke='#4477aa'/>\n";
  }
  s << "</svg>\n";
  return s.str();
}

// Sign-normalized display: values reported up to associates are printed
// with positive leading coordinate.
std::string display_associate(const QuadInt& v) {
  QuadInt w = v;
  if (w.x() < 0 || (w.x() == 0 && w.y() < 0)) w = -w;
  return w.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Diophantine approximation on cusped hyperbolic orbifolds"};
  app.require_subcommand(1);

  int ring = 0;
  double c_max = 3, trace_max = 6;  // defaults used where the flag is optional
  int word_len = 8, steps = 10, grid_n = 10;
  std::string xi_str = "0", emit = "json", out;
  double ell = 1.0, theta = M_PI;
  int threads = 1;
  unsigned seed = 0;

  app.add_option("--threads", threads, "worker threads (modules may ignore)");
  app.add_option("--seed", seed, "seed for randomized property-test commands");

  auto* c_enum = app.add_subcommand("enum", "double-coset representatives by |c|");
  c_enum->add_option("--ring", ring)->required();
  c_enum->add_option("--c-max", c_max)->required();
  c_enum->add_option("--emit", emit)->check(CLI::IsMember({"json", "csv"}));
  c_enum->add_option("--out", out);

  auto* c_ford = app.add_subcommand("ford", "Ford circles and cut-locus complex");
  c_ford->add_option("--ring", ring)->required();
  c_ford->add_option("--c-max", c_max)->required();
  c_ford->add_option("--emit", emit)->check(CLI::IsMember({"json", "svg"}));
  c_ford->add_option("--out", out);

  auto* c_approx = app.add_subcommand("approx", "good-approximation sequence");
  c_approx->add_option("--ring", ring)->required();
  c_approx->add_option("--xi", xi_str)->required();
  c_approx->add_option("--steps", steps)->required();
  c_approx->add_option("--emit", emit)->check(CLI::IsMember({"json", "svg"}));
  c_approx->add_option("--out", out);

  auto* c_hur = app.add_subcommand("hurwitz", "Hurwitz constant estimate");
  c_hur->add_option("--ring", ring)->required();
  c_hur->add_option("--c-max", c_max);
  c_hur->add_option("--trace-max", trace_max);
  c_hur->add_option("--word-len", word_len);
  c_hur->add_option("--emit", emit)->check(CLI::IsMember({"json"}));
  c_hur->add_option("--out", out);

  auto* c_torus = app.add_subcommand("torus", "punctured-torus moduli");
  c_torus->require_subcommand(1);
  auto* t_h2 = c_torus->add_subcommand("h2", "closed-form h'' and K");
  t_h2->add_option("--ell", ell)->required();
  t_h2->add_option("--theta", theta)->required();
  t_h2->add_option("--out", out);
  auto* t_or = c_torus->add_subcommand("oracle", "group-enumeration oracle");
  t_or->add_option("--ell", ell)->required();
  t_or->add_option("--theta", theta)->required();
  t_or->add_option("--word-len", word_len);
  t_or->add_option("--out", out);
  auto* t_grid = c_torus->add_subcommand("grid", "reduced-domain grid");
  t_grid->add_option("--n", grid_n);
  t_grid->add_option("--emit", emit)->check(CLI::IsMember({"csv"}));
  t_grid->add_option("--out", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  try {
    if (*c_enum) {
      if (!valid_ring_d(ring)) throw CLI::ValidationError("--ring", "invalid ring");
      GroupSpec G(ring);
      auto reps = enumerate_by_c(G, c_max);
      json cfg = config_json("enum", {{"ring", ring}, {"c_max", c_max}, {"emit", emit}},
                             threads, seed);
      if (emit == "json") {
        json rows = json::array();
        for (const CosetRep& r : reps) {
          Complexd ep = r.gamma.endpoint().to_complex();
          json row = to_json(r.gamma);
          row["depth"] = jreal(depth(r.gamma));
          row["endpoint_re"] = jreal((double)ep.real());
          row["endpoint_im"] = jreal((double)ep.imag());
          rows.push_back(row);
        }
        write_out(out, json{{"config", cfg}, {"rows", rows}}.dump(2) + "\n");
      } else {
        std::ostringstream s;
        s << "a,b,c,d,depth,endpoint_re,endpoint_im\n";
        for (const CosetRep& r : reps) {
          Complexd ep = r.gamma.endpoint().to_complex();
          s << r.gamma.a().str() << "," << r.gamma.b().str() << ","
            << r.gamma.c().str() << "," << r.gamma.d().str() << ","
            << real17(depth(r.gamma)) << "," << real17((double)ep.real()) << ","
            << real17((double)ep.imag()) << "\n";
        }
        write_out(out, s.str());
      }
    } else if (*c_ford) {
      if (!valid_ring_d(ring)) throw CLI::ValidationError("--ring", "invalid ring");
      GroupSpec G(ring);
      CutComplex cx = build_complex(G, c_max);
      json cfg = config_json("ford", {{"ring", ring}, {"c_max", c_max}, {"emit", emit}},
                             threads, seed);
      if (emit == "svg") {
        write_out(out, svg_ford(G, c_max, cx));
      } else {
        json cells = json::array();
        for (const CutCell& c : cx.cells) {
          json vs = json::array();
          for (const Complexd& v : c.footprint)
            vs.push_back(json{{"re", jreal((double)v.real())},
                              {"im", jreal((double)v.imag())}});
          cells.push_back(json{
              {"dominator", c.sphere.center_frac.str()},
              {"nq", c.sphere.nq.str()},
              {"vertices", vs},
              {"summit",
               json{{"re", jreal((double)c.summit_z.real())},
                    {"im", jreal((double)c.summit_z.imag())},
                    {"t", jreal((double)c.summit_t)},
                    {"apex", c.summit_is_apex}}}});
        }
        json dset = json::array();
        for (const BigInt& n : cx.depth_halves_sq)
          dset.push_back(real17(std::sqrt((double)(long double)n)));
        write_out(out, json{{"config", cfg},
                            {"cells", cells},
                            {"min_height", jreal((double)cx.min_height)},
                            {"depth_halves", dset}}
                               .dump(2) +
                           "\n");
      }
    } else if (*c_approx) {
      if (!valid_ring_d(ring)) throw CLI::ValidationError("--ring", "invalid ring");
      GroupSpec G(ring);
      Complexd xi = parse_xi(xi_str);
      ApproxResult res = good_sequence(G, xi, steps);
      json cfg = config_json(
          "approx", {{"ring", ring}, {"xi", xi_str}, {"steps", steps}, {"emit", emit}},
          threads, seed);
      if (emit == "svg") {
        write_out(out, svg_approx(G, xi, res));
      } else {
        json rows = json::array();
        for (const ApproxStep& s : res.steps) rows.push_back(to_json(s));
        write_out(out, json{{"config", cfg},
                            {"rows", rows},
                            {"terminated", res.terminated}}
                               .dump(2) +
                           "\n");
      }
    } else if (*c_hur) {
      if (!valid_ring_d(ring)) throw CLI::ValidationError("--ring", "invalid ring");
      GroupSpec G(ring);
      HurwitzResult hr = hurwitz_estimate(G, c_max, trace_max, word_len);
      json cfg = config_json("hurwitz",
                             {{"ring", ring},
                              {"c_max", c_max},
                              {"trace_max", trace_max},
                              {"word_len", word_len},
                              {"emit", emit}},
                             threads, seed);
      json j{{"config", cfg},
             {"K", jreal(hr.K_value)},
             {"inv_2K", jreal(hr.inv_2K)},
             {"K_lower_evidence", jreal(hr.K_lower_evidence)},
             {"achieving", json{{"tr", display_associate(hr.achieving.trace)},
                                {"c", display_associate(
                                          hr.achieving.best_witness.c())}}},
             {"certified", hr.achieving.certified},
             {"classes_examined", hr.classes_examined}};
      write_out(out, j.dump(2) + "\n");
    } else if (*t_h2) {
      FNPoint p = fn_reduce({ell, theta});
      json j{{"config",
              config_json("torus h2", {{"ell", ell}, {"theta", theta}}, threads, seed)},
             {"h2", jreal(torus_h2(p))},
             {"K", jreal(torus_K(p))}};
      write_out(out, j.dump(2) + "\n");
    } else if (*t_or) {
      FNPoint p = fn_reduce({ell, theta});
      TorusOracleResult r = torus_oracle(p, word_len);
      json j{{"config", config_json("torus oracle",
                                    {{"ell", ell}, {"theta", theta}, {"word_len", word_len}},
                                    threads, seed)},
             {"min_height", jreal(r.min_class_height)},
             {"log_min_height", jreal(std::log(r.min_class_height))},
             {"witness_word", r.witness_word},
             {"classes", r.classes}};
      write_out(out, j.dump(2) + "\n");
    } else if (*t_grid) {
      std::ostringstream s;
      s << "ell,theta,h2,K,f,t\n";
      double lmin = 0.3, lmax = torus_ell_max();
      for (int i = 0; i < grid_n; ++i) {
        double L = lmin + (lmax - lmin) * i / std::max(1, grid_n - 1);
        double tmin = torus_theta_min(L);
        for (int j = 0; j < grid_n; ++j) {
          double th = tmin + (M_PI - tmin) * j / std::max(1, grid_n - 1);
          FNPoint p{L, th};
          PentagonData pd = pentagon(p);
          s << real17(L) << "," << real17(th) << "," << real17(torus_h2(p))
            << "," << real17(torus_K(p)) << "," << real17(pd.f) << ","
            << real17(pd.t) << "\n";
        }
      }
      write_out(out, s.str());
    }
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cout << json{{"error", e.what()}}.dump() << "\n";
    return 1;
  }
  return 0;
}
