#include <chrono>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "milnorlab/analyzers.hpp"
#include "milnorlab/parse.hpp"
#include "milnorlab/report.hpp"
#include "milnorlab/svg.hpp"

using namespace milnorlab;

namespace {

constexpr const char* kVersion = "0.1.0";

struct Common {
  std::uint64_t seed = 42;
  double tol = 1e-12;
  std::size_t workers = 1;
  std::string out;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--seed", c.seed, "master RNG seed (reports are reproducible from it)");
  sub->add_option("--tol", c.tol, "absolute residual tolerance for raw solves");
  sub->add_option("--workers", c.workers, "worker threads (never affects report bytes)");
  sub->add_option("--out", c.out, "output path (stdout when omitted)");
}

SolveConfig solve_config(const Common& c) {
  SolveConfig cfg;
  cfg.tol_residual = c.tol;
  return cfg;
}

std::vector<double> parse_number_list(const std::string& text, const char* what) {
  std::vector<double> vals;
  std::stringstream ss(text);
  std::string item;
  std::size_t at = 0;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    bool ok = true;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      ok = false;
    }
    while (ok && used < item.size() && std::isspace(static_cast<unsigned char>(item[used])))
      ++used;
    if (!ok || used != item.size())
      throw ParseError(ParseErrorKind::SyntaxError, at,
                       std::string("bad number in ") + what + ": " + item);
    vals.push_back(v);
    at += item.size() + 1;
  }
  if (vals.empty())
    throw ParseError(ParseErrorKind::SyntaxError, 0, std::string(what) + " is empty");
  return vals;
}

std::string germ_display_name(const MapGerm& g, const std::string& path) {
  if (g.name) return *g.name;
  std::size_t slash = path.find_last_of('/');
  std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
  std::size_t dot = base.find_last_of('.');
  return dot == std::string::npos ? base : base.substr(0, dot);
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw Error("cannot write " + out);
  f << text;
}

void write_meta(JsonWriter& w, const char* command, const MapGerm& g, const std::string& path) {
  w.key("meta").begin_object();
  w.key("tool").value("milnorlab");
  w.key("version").value(kVersion);
  w.key("command").value(command);
  w.key("germ_name").value(germ_display_name(g, path));
  w.key("germ").value(format_germ(g));
  w.key("source_dim").value(g.source_dim());
  w.key("target_dim").value(g.target_dim());
  w.end_object();
}

// Assembles {meta, config, verdicts, point_clouds} in fixed order.
std::string make_report(const char* command, const MapGerm& g, const std::string& path,
                        const std::function<void(JsonWriter&)>& config,
                        const std::function<void(JsonWriter&)>& verdicts,
                        const std::function<void(JsonWriter&)>& clouds) {
  JsonWriter w;
  w.begin_object();
  write_meta(w, command, g, path);
  w.key("config").begin_object();
  config(w);
  w.end_object();
  w.key("verdicts").begin_object();
  verdicts(w);
  w.end_object();
  w.key("point_clouds").begin_object();
  clouds(w);
  w.end_object();
  w.end_object();
  return w.str() + "\n";
}

std::vector<std::vector<double>> witness_cloud(const TamenessVerdict& v, bool anchors) {
  std::vector<std::vector<double>> pts;
  for (const auto& wp : v.witnesses) pts.push_back(anchors ? wp.fiber_anchor : wp.x);
  return pts;
}

std::vector<SvgCloud> fiber_clouds(const FiberReport& rep, const std::string& prefix) {
  std::vector<SvgCloud> clouds(rep.clusters.size());
  for (std::size_t ci = 0; ci < rep.clusters.size(); ++ci)
    clouds[ci].label = prefix + "cluster_" + std::to_string(ci);
  for (std::size_t i = 0; i < rep.points.size(); ++i)
    clouds[rep.labels[i]].points.push_back(rep.points[i]);
  return clouds;
}

void write_fiber_clouds(JsonWriter& w, const FiberReport& rep, const std::string& prefix,
                        std::size_t dim) {
  for (const auto& c : fiber_clouds(rep, prefix)) {
    w.key(c.label);
    write_cloud(w, c.points, dim);
  }
}

std::vector<std::size_t> default_projection(std::size_t dim) {
  if (dim >= 3) return {0, 1, 2};
  return {0, 1};
}

int run_ideal(const std::string& path, const std::string& which, const std::string& out) {
  MapGerm g = load_germ(path);
  std::vector<std::pair<std::string, Ideal>> chosen;
  if (which == "singular" || which == "all") chosen.emplace_back("singular", singular_ideal(g));
  if (which == "milnor" || which == "all") chosen.emplace_back("milnor", milnor_ideal(g));
  if (which == "fiber" || which == "all") chosen.emplace_back("fiber", zero_fiber_ideal(g));
  if (chosen.empty())
    throw ParseError(ParseErrorKind::SyntaxError, 0,
                     "--which must be singular, milnor, fiber, or all");

  std::string text;
  for (const auto& [label, ideal] : chosen) {
    text += "name: " + germ_display_name(g, path) + "_" + label + "\n";
    if (ideal.whole_space) text += "# whole space: every generator below is zero\n";
    text += "vars:";
    for (const auto& v : ideal.vars) text += " " + v;
    text += "\n";
    for (const auto& gen : ideal.gens) text += "poly: " + gen.str(ideal.vars) + "\n";
    text += "\n";
  }
  emit(text, out);
  return 0;
}

int run_isv(const std::string& path, double r0, std::size_t seeds, const Common& c) {
  MapGerm g = load_germ(path);
  Thresholds th;
  Annulus region(r0 / 200.0, r0, g.source_dim());
  IsvReport rep = isolated_singular_value_check(g, region, solve_config(c),
                                                RngSpec{c.seed, 0}, th, seeds, c.workers);
  std::string json = make_report(
      "isv", g, path,
      [&](JsonWriter& w) {
        w.key("r0").value(r0);
        w.key("r_inner").value(r0 / 200.0);
        w.key("seeds").value(seeds);
        w.key("seed").value(c.seed);
        w.key("tol").value(c.tol);
        w.key("thresholds");
        write_thresholds(w, th);
      },
      [&](JsonWriter& w) {
        w.key("isv");
        write_isv(w, rep);
      },
      [&](JsonWriter& w) {
        w.key("violations");
        write_cloud(w, rep.violations, g.source_dim());
      });
  emit(json, c.out);
  return 0;
}

TamenessOptions tame_options(double r0, std::size_t stages, std::size_t seeds,
                             std::size_t restarts, std::size_t workers) {
  TamenessOptions opt;
  opt.r0 = r0;
  opt.stages = stages;
  opt.fibre_probe_seeds = seeds;
  opt.restarts = restarts;
  opt.workers = workers;
  return opt;
}

void write_tame_config(JsonWriter& w, const TamenessOptions& opt, const Common& c) {
  w.key("r0").value(opt.r0);
  w.key("stages").value(opt.stages);
  w.key("seeds").value(opt.fibre_probe_seeds);
  w.key("restarts").value(opt.restarts);
  w.key("check_isv").value(opt.check_isv);
  w.key("seed").value(c.seed);
  w.key("tol").value(c.tol);
  w.key("thresholds");
  write_thresholds(w, opt.thresholds);
}

int run_tame(const std::string& path, double r0, std::size_t stages, std::size_t seeds,
             std::size_t restarts, const Common& c) {
  MapGerm g = load_germ(path);
  TamenessOptions opt = tame_options(r0, stages, seeds, restarts, c.workers);
  TamenessVerdict v = tameness_scan(g, opt, solve_config(c), RngSpec{c.seed, 0});
  std::string json = make_report(
      "tame", g, path, [&](JsonWriter& w) { write_tame_config(w, opt, c); },
      [&](JsonWriter& w) {
        w.key("tameness");
        write_tameness(w, v);
      },
      [&](JsonWriter& w) {
        w.key("witnesses");
        write_cloud(w, witness_cloud(v, false), g.source_dim());
        w.key("anchors");
        write_cloud(w, witness_cloud(v, true), g.source_dim());
      });
  emit(json, c.out);
  return 0;
}

int run_fiber(const std::string& path, const std::string& target_text, double eps,
              std::size_t seeds, const Common& c) {
  MapGerm g = load_germ(path);
  std::vector<double> target = parse_number_list(target_text, "--target");
  if (target.size() != g.target_dim())
    throw ParseError(ParseErrorKind::SyntaxError, 0,
                     "--target needs " + std::to_string(g.target_dim()) + " components");
  Thresholds th;
  FiberReport rep =
      fiber_report(g, target, eps, seeds, solve_config(c), RngSpec{c.seed, 0}, th, c.workers);
  std::string json = make_report(
      "fiber", g, path,
      [&](JsonWriter& w) {
        w.key("target").values(target);
        w.key("eps").value(eps);
        w.key("seeds").value(seeds);
        w.key("seed").value(c.seed);
        w.key("tol").value(c.tol);
        w.key("thresholds");
        write_thresholds(w, th);
      },
      [&](JsonWriter& w) {
        w.key("fiber");
        write_fiber(w, rep);
      },
      [&](JsonWriter& w) { write_fiber_clouds(w, rep, "", g.source_dim()); });
  emit(json, c.out);
  return 0;
}

int run_image(const std::string& path, const std::string& eps_text, std::size_t seeds,
              std::size_t n_directions, const Common& c) {
  MapGerm g = load_germ(path);
  std::vector<double> eps = parse_number_list(eps_text, "--eps");
  if (eps.size() != 2 || !(eps[0] > eps[1]) || !(eps[1] > 0.0))
    throw ParseError(ParseErrorKind::SyntaxError, 0, "--eps needs two radii eps1 > eps2 > 0");
  std::vector<double> mags;
  for (double t = 1e-2; t > 0.5e-7; t /= 10.0) mags.push_back(t);
  auto dirs = default_directions(g.target_dim(), n_directions, RngSpec{c.seed, 1 << 16});
  ImageGermReport rep = image_germ_stability(g, dirs, mags, eps[0], eps[1], seeds,
                                             solve_config(c), RngSpec{c.seed, 0}, c.workers);
  std::string json = make_report(
      "image", g, path,
      [&](JsonWriter& w) {
        w.key("eps1").value(eps[0]);
        w.key("eps2").value(eps[1]);
        w.key("magnitudes").values(mags);
        w.key("directions").value(n_directions);
        w.key("seeds").value(seeds);
        w.key("seed").value(c.seed);
        w.key("tol").value(c.tol);
      },
      [&](JsonWriter& w) {
        w.key("image");
        write_image(w, rep);
      },
      [&](JsonWriter&) {});
  emit(json, c.out);
  return 0;
}

int run_compose(const std::string& outer_path, const std::string& inner_path, double r0,
                std::size_t stages, std::size_t seeds, const std::string& emit_germ,
                const Common& c) {
  MapGerm outer = load_germ(outer_path);
  MapGerm inner = load_germ(inner_path);
  Thresholds th;
  TamenessOptions opt = tame_options(r0, stages, 120, 6, c.workers);
  Annulus region(r0 / 20.0, r0, inner.source_dim());
  CompositionReport rep = composition_analysis(outer, inner, region, seeds, opt,
                                               solve_config(c), RngSpec{c.seed, 0}, th,
                                               c.workers);
  if (!emit_germ.empty()) {
    MapGerm named = rep.h;
    named.name = germ_display_name(outer, outer_path) + "_after_" +
                 germ_display_name(inner, inner_path);
    save_germ(named, emit_germ);
  }
  std::string json = make_report(
      "compose", rep.h, outer_path + "," + inner_path,
      [&](JsonWriter& w) {
        w.key("outer").value(format_germ(outer));
        w.key("inner").value(format_germ(inner));
        w.key("r0").value(r0);
        w.key("region_inner").value(r0 / 20.0);
        w.key("seeds").value(seeds);
        w.key("stages").value(stages);
        w.key("seed").value(c.seed);
        w.key("tol").value(c.tol);
        w.key("thresholds");
        write_thresholds(w, th);
      },
      [&](JsonWriter& w) {
        w.key("chain_rule_exact").value(rep.chain_rule_exact);
        w.key("inclusions").begin_array();
        for (const auto& chk : rep.inclusions) write_inclusion(w, chk);
        w.end_array();
        w.key("h_tameness");
        write_tameness(w, rep.h_verdict);
        w.key("f_tameness");
        write_tameness(w, rep.f_verdict);
      },
      [&](JsonWriter& w) {
        for (const auto& chk : rep.inclusions) {
          w.key(chk.name + "_violations");
          write_cloud(w, chk.violations, inner.source_dim());
        }
        w.key("h_witnesses");
        write_cloud(w, witness_cloud(rep.h_verdict, false), inner.source_dim());
        w.key("f_witnesses");
        write_cloud(w, witness_cloud(rep.f_verdict, false), inner.source_dim());
      });
  emit(json, c.out);
  return 0;
}

int run_product(const std::string& path, double delta, double eps, std::size_t seeds,
                const Common& c) {
  MapGerm g = load_germ(path);
  Thresholds th;
  ProductReport rep = product_structure_check(g, delta, eps, seeds, solve_config(c),
                                              RngSpec{c.seed, 0}, th, c.workers);
  std::string json = make_report(
      "product", g, path,
      [&](JsonWriter& w) {
        w.key("target").value(delta);
        w.key("eps").value(eps);
        w.key("seeds").value(seeds);
        w.key("seed").value(c.seed);
        w.key("tol").value(c.tol);
        w.key("thresholds");
        write_thresholds(w, th);
      },
      [&](JsonWriter& w) {
        w.key("product");
        write_product(w, rep);
      },
      [&](JsonWriter& w) {
        write_fiber_clouds(w, rep.full, "full_", g.source_dim());
        write_fiber_clouds(w, rep.reduced, "reduced_", g.source_dim());
      });
  emit(json, c.out);
  return 0;
}

int run_analyze(const std::string& path, double r0, std::size_t stages, std::size_t seeds,
                double eps, const Common& c) {
  MapGerm g = load_germ(path);
  Thresholds th;
  SolveConfig cfg = solve_config(c);
  const std::uint64_t phase = std::uint64_t(1) << 40;  // stream block per analyzer

  TamenessOptions opt = tame_options(r0, stages, 120, 6, c.workers);
  TamenessVerdict tame = tameness_scan(g, opt, cfg, RngSpec{c.seed, 0});

  std::vector<double> target(g.target_dim(), 0.0);
  target[0] = 1e-4;
  FiberReport fib = fiber_report(g, target, eps, seeds, cfg, RngSpec{c.seed, phase}, th,
                                 c.workers);

  std::vector<double> mags;
  for (double t = 1e-2; t > 0.5e-7; t /= 10.0) mags.push_back(t);
  auto dirs = default_directions(g.target_dim(), 8, RngSpec{c.seed, 2 * phase + 1});
  ImageGermReport img = image_germ_stability(g, dirs, mags, 0.1, 0.05, seeds / 4 + 1, cfg,
                                             RngSpec{c.seed, 2 * phase}, c.workers);

  Annulus eq_region(r0 * std::pow(2.0, -static_cast<double>(stages - 1)) / 2.0, r0,
                    g.source_dim());
  ViolationReport eq = milnor_zero_fiber_check(g, eq_region, seeds, cfg,
                                               RngSpec{c.seed, 3 * phase}, th, c.workers);

  ProductReport prod = product_structure_check(g, 1e-4, eps, seeds, cfg,
                                               RngSpec{c.seed, 4 * phase}, th, c.workers);

  std::string json = make_report(
      "analyze", g, path,
      [&](JsonWriter& w) {
        write_tame_config(w, opt, c);
        w.key("eps").value(eps);
        w.key("fiber_target").values(target);
        w.key("image_eps1").value(0.1);
        w.key("image_eps2").value(0.05);
        w.key("image_magnitudes").values(mags);
        w.key("image_directions").value(std::size_t(8));
        w.key("analyzer_seeds").value(seeds);
      },
      [&](JsonWriter& w) {
        w.key("tameness");
        write_tameness(w, tame);
        w.key("fiber");
        write_fiber(w, fib);
        w.key("image");
        write_image(w, img);
        w.key("milnor_zero_fiber");
        write_violation(w, eq);
        w.key("product");
        write_product(w, prod);
      },
      [&](JsonWriter& w) {
        write_fiber_clouds(w, fib, "", g.source_dim());
        w.key("witnesses");
        write_cloud(w, witness_cloud(tame, false), g.source_dim());
        w.key("anchors");
        write_cloud(w, witness_cloud(tame, true), g.source_dim());
      });

  std::vector<SvgCloud> clouds = fiber_clouds(fib, "");
  clouds.push_back({"witnesses", witness_cloud(tame, false)});
  clouds.push_back({"anchors", witness_cloud(tame, true)});
  std::string svg = render_scatter(clouds, default_projection(g.source_dim()));

  std::string base = c.out.empty() ? "report" : c.out;
  if (base.size() > 5 && base.substr(base.size() - 5) == ".json")
    base = base.substr(0, base.size() - 5);
  emit(json, base + ".json");
  emit(svg, base + ".svg");
  return 0;
}

int run_plot(const std::string& report_path, const std::string& projection_text,
             const std::string& out) {
  std::ifstream f(report_path, std::ios::binary);
  if (!f) throw ParseError(ParseErrorKind::SyntaxError, 0, "cannot read " + report_path);
  nlohmann::ordered_json doc;
  try {
    doc = nlohmann::ordered_json::parse(f);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(ParseErrorKind::SyntaxError, 0, std::string("bad report JSON: ") + e.what());
  }
  if (!doc.contains("point_clouds") || !doc["point_clouds"].is_object())
    throw ParseError(ParseErrorKind::SyntaxError, 0, "report has no point_clouds object");

  std::vector<SvgCloud> clouds;
  std::size_t dim = 2;
  for (const auto& [name, cloud] : doc["point_clouds"].items()) {
    SvgCloud c;
    c.label = name;
    std::size_t d = cloud.at("dim").get<std::size_t>();
    const auto& data = cloud.at("data");
    if (d == 0) continue;
    dim = std::max(dim, d);
    for (std::size_t i = 0; i + d <= data.size(); i += d) {
      std::vector<double> p(d);
      for (std::size_t j = 0; j < d; ++j) p[j] = data[i + j].get<double>();
      c.points.push_back(std::move(p));
    }
    clouds.push_back(std::move(c));
  }

  std::vector<std::size_t> projection;
  if (projection_text.empty()) {
    projection = default_projection(dim);
  } else {
    for (double v : parse_number_list(projection_text, "--projection")) {
      if (v < 0.0 || v != static_cast<double>(static_cast<std::size_t>(v)))
        throw ParseError(ParseErrorKind::SyntaxError, 0, "--projection needs integer indices");
      projection.push_back(static_cast<std::size_t>(v));
    }
    if (projection.size() != 2 && projection.size() != 3)
      throw ParseError(ParseErrorKind::SyntaxError, 0, "--projection needs 2 or 3 indices");
  }

  std::string svg;
  try {
    svg = render_scatter(clouds, projection);
  } catch (const Error& e) {
    throw ParseError(ParseErrorKind::SyntaxError, 0, e.what());
  }
  std::string target = out;
  if (target.empty()) {
    target = report_path;
    if (target.size() > 5 && target.substr(target.size() - 5) == ".json")
      target = target.substr(0, target.size() - 5);
    target += ".svg";
  }
  emit(svg, target);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"detect tameness and fibration structure of polynomial map germs"};
  app.require_subcommand(1);

  std::string germ_path, germ_path2, which = "all", target_text, eps_text = "0.1,0.05";
  std::string emit_germ, projection_text;
  double r0 = 0.1, eps = 0.5, delta = 1e-4;
  std::size_t restarts = 8, n_directions = 16;
  // Sample budgets and depths differ per subcommand; each option binds its own
  // default so an explicitly passed default value is not special-cased.
  std::size_t seeds_isv = 400, seeds_tame = 160, seeds_fiber = 800, seeds_image = 200;
  std::size_t seeds_compose = 400, seeds_product = 800, seeds_analyze = 300;
  std::size_t stages_tame = 6, stages_compose = 3, stages_analyze = 5;
  Common c;

  auto* ideal_cmd = app.add_subcommand("ideal", "emit singular/milnor/zero-fibre ideals");
  ideal_cmd->add_option("germ", germ_path, "germ file")->required();
  ideal_cmd->add_option("--which", which, "singular | milnor | fiber | all");
  ideal_cmd->add_option("--out", c.out, "output path (stdout when omitted)");

  auto* isv_cmd = app.add_subcommand("isv", "isolated singular value check");
  isv_cmd->add_option("germ", germ_path, "germ file")->required();
  isv_cmd->add_option("--r0", r0, "outer radius of the probed annulus");
  isv_cmd->add_option("--seeds", seeds_isv, "sample budget");
  add_common(isv_cmd, c);

  auto* tame_cmd = app.add_subcommand("tame", "tameness scan");
  tame_cmd->add_option("germ", germ_path, "germ file")->required();
  tame_cmd->add_option("--r0", r0, "radius of the first stage");
  tame_cmd->add_option("--stages", stages_tame, "number of halved-radius stages");
  tame_cmd->add_option("--seeds", seeds_tame, "fibre presence probe seeds per stage");
  tame_cmd->add_option("--restarts", restarts, "witness hunt restarts per stage");
  add_common(tame_cmd, c);

  auto* fiber_cmd = app.add_subcommand("fiber", "fibre report at a target value");
  fiber_cmd->add_option("germ", germ_path, "germ file")->required();
  fiber_cmd->add_option("--target", target_text, "target value, comma separated")->required();
  fiber_cmd->add_option("--eps", eps, "ball radius");
  fiber_cmd->add_option("--seeds", seeds_fiber, "sample budget");
  add_common(fiber_cmd, c);

  auto* image_cmd = app.add_subcommand("image", "image membership grid and stability");
  image_cmd->add_option("germ", germ_path, "germ file")->required();
  image_cmd->add_option("--eps", eps_text, "two ball radii eps1,eps2");
  image_cmd->add_option("--seeds", seeds_image, "sample budget per membership");
  image_cmd->add_option("--directions", n_directions, "number of probe directions");
  add_common(image_cmd, c);

  auto* compose_cmd = app.add_subcommand("compose", "composition analysis of two germs");
  compose_cmd->add_option("outer", germ_path, "outer germ file (applied second)")->required();
  compose_cmd->add_option("inner", germ_path2, "inner germ file (applied first)")->required();
  compose_cmd->add_option("--r0", r0, "outer radius of the sampling region");
  compose_cmd->add_option("--stages", stages_compose, "tameness stages for both verdicts");
  compose_cmd->add_option("--seeds", seeds_compose, "samples per inclusion check");
  compose_cmd->add_option("--emit-germ", emit_germ, "write the composed germ to this path");
  add_common(compose_cmd, c);

  auto* product_cmd = app.add_subcommand("product", "product structure probe");
  product_cmd->add_option("germ", germ_path, "germ file")->required();
  product_cmd->add_option("--target", delta, "offset along the positive first axis");
  product_cmd->add_option("--eps", eps, "ball radius");
  product_cmd->add_option("--seeds", seeds_product, "sample budget");
  add_common(product_cmd, c);

  auto* analyze_cmd = app.add_subcommand("analyze", "full battery with defaults");
  analyze_cmd->add_option("germ", germ_path, "germ file")->required();
  analyze_cmd->add_option("--r0", r0, "radius of the first tameness stage");
  analyze_cmd->add_option("--stages", stages_analyze, "tameness stages");
  analyze_cmd->add_option("--seeds", seeds_analyze, "sample budget per analyzer");
  analyze_cmd->add_option("--eps", eps, "fibre ball radius");
  add_common(analyze_cmd, c);

  auto* plot_cmd = app.add_subcommand("plot", "SVG scatter from a prior report");
  plot_cmd->add_option("report", germ_path, "report JSON path")->required();
  plot_cmd->add_option("--projection", projection_text, "2 or 3 coordinate indices");
  plot_cmd->add_option("--out", c.out, "SVG path (default: report base + .svg)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  auto started = std::chrono::steady_clock::now();
  int rc = 0;
  try {
    if (app.got_subcommand(ideal_cmd)) {
      rc = run_ideal(germ_path, which, c.out);
    } else if (app.got_subcommand(isv_cmd)) {
      rc = run_isv(germ_path, r0, seeds_isv, c);
    } else if (app.got_subcommand(tame_cmd)) {
      rc = run_tame(germ_path, r0, stages_tame, seeds_tame, restarts, c);
    } else if (app.got_subcommand(fiber_cmd)) {
      rc = run_fiber(germ_path, target_text, eps, seeds_fiber, c);
    } else if (app.got_subcommand(image_cmd)) {
      rc = run_image(germ_path, eps_text, seeds_image, n_directions, c);
    } else if (app.got_subcommand(compose_cmd)) {
      rc = run_compose(germ_path, germ_path2, r0, stages_compose, seeds_compose, emit_germ, c);
    } else if (app.got_subcommand(product_cmd)) {
      rc = run_product(germ_path, delta, eps, seeds_product, c);
    } else if (app.got_subcommand(analyze_cmd)) {
      rc = run_analyze(germ_path, r0, stages_analyze, seeds_analyze, eps, c);
    } else if (app.got_subcommand(plot_cmd)) {
      rc = run_plot(germ_path, projection_text, c.out);
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << " (position " << e.position << ")\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - started)
                     .count();
  std::cerr << "duration_ms=" << elapsed << "\n";
  return rc;
}
