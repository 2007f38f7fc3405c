// Command-line surface: every computation as a reproducible run emitting
// CSV/JSON tables or SVG figures.
//
//   specwell spectrum      --model well --lambda 10 --format csv
//   specwell branch-points --model well --parity even --n 5
//   specwell continue      --model well --parity even --level 1 --path "5,0;8,0"
//   specwell series        --model well --parity even --level 1 --K 30 --eval "10;20"
//   specwell scatter       --lambda-min 2.5 --lambda-max 3.5 --samples 500
//
// Exit codes: 0 success, 2 validation failure, 3 numeric failure,
// 4 branch-point collision. SPECWELL_TOL overrides the default tolerance.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "specwell/specwell.hpp"

namespace sw = specwell;

namespace {

struct RunConfig {
  std::string model = "well";
  std::string parity = "even";
  std::string format = "csv";
  std::string output;
  std::string center = "infinity";
  std::string mode = "poles";
  std::string path_spec;
  std::string eval_spec;
  bool closed = false;
  int level = 1;
  int n = 5;
  int K = 30;
  int samples = 500;
  int levels = 6;
  double lambda = 10.0;
  double g = 1.0;
  double lambda_min = 2.5;
  double lambda_max = 3.5;
  double radius = 0.0;
  double anchor = 0.0;
  double kmax = 10.0;
  double tol = sw::kResidualTol;
};

std::vector<sw::Complex> parse_waypoints(const std::string& s) {
  std::vector<sw::Complex> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (item.empty()) continue;
    auto comma = item.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("waypoint '" + item + "' is not re,im");
    double re = std::stod(item.substr(0, comma));
    double im = std::stod(item.substr(comma + 1));
    out.push_back({re, im});
  }
  if (out.size() < 2) throw std::invalid_argument("path needs at least two waypoints re,im;re,im");
  return out;
}

std::vector<sw::Complex> parse_eval_points(const std::string& s) {
  std::vector<sw::Complex> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ';'))
    if (!item.empty()) out.push_back({std::stod(item), 0.0});
  return out;
}

void emit(const RunConfig& cfg, const std::string& content) {
  if (cfg.output.empty())
    std::cout << content;
  else
    sw::atomic_write(cfg.output, content);
}

sw::Family family_of(const RunConfig& cfg) {
  if (cfg.model == "delta") return sw::Family::DeltaBarrier;
  return cfg.parity == "odd" ? sw::Family::OddWell : sw::Family::EvenWell;
}

int cmd_spectrum(const RunConfig& cfg) {
  if (cfg.model == "well") {
    auto table = sw::real_spectrum(cfg.lambda, cfg.tol);
    if (cfg.format == "svg") {
      sw::SvgPlot plot(640, 420);
      double xmax = cfg.lambda + 0.5;
      plot.set_view(0, xmax, 0, 1.08);
      std::vector<std::pair<double, double>> cosarc, sinarc, line;
      for (int i = 0; i <= 2000; ++i) {
        double phi = xmax * i / 2000.0;
        cosarc.push_back({phi, std::abs(std::cos(phi))});
        sinarc.push_back({phi, std::abs(std::sin(phi))});
        if (phi / cfg.lambda <= 1.08) line.push_back({phi, phi / cfg.lambda});
      }
      plot.polyline(cosarc, "#1f77b4");
      plot.polyline(sinarc, "#2ca02c");
      plot.polyline(line, "#d62728");
      for (const auto& lv : table.levels)
        plot.point(lv.phi.real(), lv.phi.real() / cfg.lambda,
                   lv.parity == sw::Parity::Even ? "#1f77b4" : "#2ca02c");
      plot.axes();
      plot.text(0.02 * xmax, 1.05, "|cos| (even), |sin| (odd), phi/lambda");
      emit(cfg, plot.str());
      return 0;
    }
    if (cfg.format == "json") {
      auto j = sw::json_document();
      j["model"] = "well";
      j["lambda"] = table.lambda;
      j["levels"] = nlohmann::json::array();
      for (const auto& lv : table.levels)
        j["levels"].push_back({{"index", lv.index},
                               {"parity", sw::parity_name(lv.parity)},
                               {"phi", sw::json_complex(lv.phi)},
                               {"energy", sw::json_complex(lv.energy)}});
      emit(cfg, j.dump(2) + "\n");
      return 0;
    }
    sw::CsvTable t;
    t.header = {"index", "parity", "phi", "energy"};
    for (const auto& lv : table.levels)
      t.add_row({static_cast<long>(lv.index), std::string(sw::parity_name(lv.parity)),
                 lv.phi.real(), lv.energy.real()});
    emit(cfg, t.str());
    return 0;
  }
  auto levels = sw::delta_spectrum(cfg.g, cfg.levels);
  if (cfg.format == "svg") {
    sw::SvgPlot plot(640, 420);
    double emax = levels.back().energy.real() * 1.05;
    plot.set_view(0, static_cast<double>(levels.size()) + 1.0, std::min(0.0, levels.front().energy.real()), emax);
    int i = 1;
    for (const auto& lv : levels) {
      plot.polyline({{i - 0.35, lv.energy.real()}, {i + 0.35, lv.energy.real()}},
                    lv.parity == sw::Parity::Even ? "#1f77b4" : "#2ca02c", 2.0);
      ++i;
    }
    plot.axes();
    plot.text(0.3, emax * 0.97, "levels at g=" + sw::fmt17(cfg.g) + " (blue even, green odd)");
    emit(cfg, plot.str());
    return 0;
  }
  if (cfg.format == "json") {
    auto j = sw::json_document();
    j["model"] = "delta";
    j["g"] = cfg.g;
    j["levels"] = nlohmann::json::array();
    for (const auto& lv : levels)
      j["levels"].push_back({{"index", lv.index},
                             {"parity", sw::parity_name(lv.parity)},
                             {"k", sw::json_complex(lv.k)},
                             {"energy", sw::json_complex(lv.energy)}});
    emit(cfg, j.dump(2) + "\n");
    return 0;
  }
  sw::CsvTable t;
  t.header = {"index", "parity", "k_re", "k_im", "energy_re", "energy_im"};
  for (const auto& lv : levels)
    t.add_row({static_cast<long>(lv.index), std::string(sw::parity_name(lv.parity)),
               lv.k.real(), lv.k.imag(), lv.energy.real(), lv.energy.imag()});
  emit(cfg, t.str());
  return 0;
}

int cmd_branch_points(const RunConfig& cfg) {
  std::vector<sw::BranchPoint> bps;
  if (cfg.model == "delta") {
    bps = sw::delta_branchpoints(cfg.n);
  } else if (cfg.parity == "even") {
    auto [l1, l1m] = sw::ground_branch_lambda();
    auto [s1, s1i] = sw::even_stationary_sigma();
    bps.push_back({l1, sw::BranchKind::SquareRoot, {s1, 0.0}, sw::Family::EvenWell, 1});
    bps.push_back({l1m, sw::BranchKind::SquareRoot, {s1i, 0.0}, sw::Family::EvenWell, 1});
    for (auto& bp : sw::even_pseudothresholds(cfg.n)) bps.push_back(bp);
  } else {
    bps = sw::odd_pseudothresholds(cfg.n);
  }
  auto residual_of = [&](const sw::BranchPoint& bp) {
    if (bp.family == sw::Family::DeltaBarrier) {
      sw::Complex g = bp.location, k = bp.generator;
      return std::abs(g * g + g + k * k);
    }
    // stationarity: |d lambda / d sigma| at the generator
    sw::Complex s = bp.generator;
    sw::Complex phi = -sw::Complex{0, 1} * std::log(s);
    return std::abs(sw::map_derivative(bp.family, phi) / (sw::Complex{0, 1} * s));
  };
  if (cfg.format == "json") {
    auto j = sw::json_document();
    j["model"] = cfg.model;
    if (cfg.model == "well") j["parity"] = cfg.parity;
    j["branch_points"] = nlohmann::json::array();
    for (const auto& bp : bps)
      j["branch_points"].push_back({{"index", bp.index},
                                    {"kind", bp.kind == sw::BranchKind::SquareRoot ? "square-root" : "logarithmic"},
                                    {"generator", sw::json_complex(bp.generator)},
                                    {"location", sw::json_complex(bp.location)},
                                    {"residual", residual_of(bp)}});
    emit(cfg, j.dump(2) + "\n");
    return 0;
  }
  sw::CsvTable t;
  t.header = {"index", "kind", "generator_re", "generator_im", "location_re", "location_im", "residual"};
  for (const auto& bp : bps)
    t.add_row({static_cast<long>(bp.index),
               std::string(bp.kind == sw::BranchKind::SquareRoot ? "square-root" : "logarithmic"),
               bp.generator.real(), bp.generator.imag(), bp.location.real(), bp.location.imag(),
               residual_of(bp)});
  emit(cfg, t.str());
  return 0;
}

int cmd_continue(const RunConfig& cfg) {
  auto fam = family_of(cfg);
  sw::ParamPath path;
  path.waypoints = parse_waypoints(cfg.path_spec);
  path.closed = cfg.closed;
  sw::Complex start_param = path.waypoints.front();
  if (std::abs(start_param.imag()) > 1e-12)
    throw std::invalid_argument("continue: the first waypoint anchors the level and must be real");
  sw::Complex start_internal = sw::level_anchor(fam, cfg.level, start_param.real());
  sw::ContinuationOptions opt;
  opt.residual_tol = cfg.tol;
  auto track = sw::continue_level(fam, start_param, start_internal, path, opt);
  int end_level = -1;
  try {
    if (std::abs(path.waypoints.back().imag()) < 1e-12)
      end_level = sw::identify_level(fam, path.waypoints.back().real(),
                                     track.samples.back().internal, cfg.level + 8);
  } catch (const std::exception&) {}
  if (cfg.format == "svg") {
    sw::SvgPlot plot(640, 420);
    double ex0 = 1e300, ex1 = -1e300, ey0 = 1e300, ey1 = -1e300;
    for (const auto& s : track.samples) {
      ex0 = std::min(ex0, s.energy.real()); ex1 = std::max(ex1, s.energy.real());
      ey0 = std::min(ey0, s.energy.imag()); ey1 = std::max(ey1, s.energy.imag());
    }
    double padx = 0.05 * std::max(1.0, ex1 - ex0), pady = 0.05 * std::max(1.0, ey1 - ey0);
    plot.set_view(ex0 - padx, ex1 + padx, ey0 - pady, ey1 + pady);
    std::vector<std::pair<double, double>> pts;
    for (const auto& s : track.samples) pts.push_back({s.energy.real(), s.energy.imag()});
    plot.polyline(pts, "#1f77b4");
    plot.point(pts.front().first, pts.front().second, "#2ca02c");
    plot.point(pts.back().first, pts.back().second, "#d62728");
    plot.axes();
    emit(cfg, plot.str());
    return 0;
  }
  if (cfg.format == "json") {
    auto j = sw::json_document();
    j["family"] = sw::family_name(fam);
    j["start_level"] = cfg.level;
    j["end_level"] = end_level;
    j["log_branch"] = track.log_branch;
    j["samples"] = nlohmann::json::array();
    for (const auto& s : track.samples)
      j["samples"].push_back({{"param", sw::json_complex(s.param)},
                              {"internal", sw::json_complex(s.internal)},
                              {"energy", sw::json_complex(s.energy)}});
    emit(cfg, j.dump(2) + "\n");
    return 0;
  }
  sw::CsvTable t;
  t.header = {"param_re", "param_im", "internal_re", "internal_im", "energy_re", "energy_im"};
  for (const auto& s : track.samples)
    t.add_row({s.param.real(), s.param.imag(), s.internal.real(), s.internal.imag(),
               s.energy.real(), s.energy.imag()});
  std::string out = t.str();
  out += "# start_level=" + std::to_string(cfg.level) + " end_level=" + std::to_string(end_level) +
         " log_branch=" + std::to_string(track.log_branch) + "\n";
  emit(cfg, out);
  return 0;
}

int cmd_series(const RunConfig& cfg) {
  auto fam = family_of(cfg);
  auto center = cfg.center == "origin" ? sw::SeriesCenter::Origin : sw::SeriesCenter::Infinity;
  double radius = cfg.radius;
  if (radius <= 0) {
    if (fam == sw::Family::DeltaBarrier) {
      auto exp = sw::delta_series(cfg.level, center, 1);
      radius = exp.contour_radius;
    } else {
      radius = 1.2 * sw::required_contour_radius(fam, cfg.level, center);
    }
  }
  std::vector<sw::Complex> eval = cfg.eval_spec.empty() ? std::vector<sw::Complex>{}
                                                        : parse_eval_points(cfg.eval_spec);
  sw::SeriesExpansion exp;
  sw::ConvergenceReport rep;
  if (eval.empty()) {
    exp = sw::series_coefficients(fam, cfg.level, cfg.K, radius, center);
    exp.estimated_radius = sw::radius_estimate(exp);
  } else {
    rep = sw::convergence_report(fam, cfg.level, cfg.K, eval, radius, center);
    exp = rep.expansion;
  }
  if (cfg.format == "svg") {
    if (eval.empty()) throw std::invalid_argument("series svg needs --eval points");
    sw::SvgPlot plot(640, 420);
    double lo = 0.0;
    for (const auto& r : rep.rows) lo = std::min(lo, std::log10(std::max(r.rel_error, 1e-18)));
    plot.set_view(0, cfg.K + 1.0, lo - 0.5, 2.0);
    std::size_t idx = 0;
    const char* colors[] = {"#1f77b4", "#2ca02c", "#d62728", "#9467bd"};
    for (std::size_t p = 0; p < rep.points.size(); ++p) {
      std::vector<std::pair<double, double>> pts;
      for (int k = 1; k <= cfg.K; ++k, ++idx)
        pts.push_back({static_cast<double>(k),
                       std::log10(std::max(rep.rows[idx].rel_error, 1e-18))});
      plot.polyline(pts, colors[p % 4]);
    }
    plot.axes();
    plot.text(1.0, 1.5, "log10 relative error vs truncation order");
    emit(cfg, plot.str());
    return 0;
  }
  if (cfg.format == "json") {
    auto j = sw::json_document();
    j["family"] = sw::family_name(fam);
    j["level"] = cfg.level;
    j["center"] = cfg.center;
    j["leading_term"] = exp.leading_term;
    j["contour_radius"] = exp.contour_radius;
    j["estimated_radius"] = exp.estimated_radius;
    j["coefficients"] = nlohmann::json::array();
    for (const auto& c : exp.coefficients) j["coefficients"].push_back(sw::json_complex(c));
    if (!eval.empty()) {
      j["convergence"] = nlohmann::json::array();
      std::size_t idx = 0;
      for (std::size_t p = 0; p < rep.points.size(); ++p) {
        nlohmann::json pj;
        pj["point"] = sw::json_complex(rep.points[p]);
        pj["diverging"] = static_cast<bool>(rep.diverging[p]);
        pj["final_rel_error"] = rep.rows[idx + static_cast<std::size_t>(cfg.K) - 1].rel_error;
        j["convergence"].push_back(pj);
        idx += static_cast<std::size_t>(cfg.K);
      }
    }
    emit(cfg, j.dump(2) + "\n");
    return 0;
  }
  sw::CsvTable t;
  t.header = {"family", "level", "center", "leading_term", "contour_radius",
              "estimated_radius", "k", "a_re", "a_im"};
  for (std::size_t k = 0; k < exp.coefficients.size(); ++k)
    t.add_row({std::string(sw::family_name(fam)), static_cast<long>(cfg.level),
               cfg.center, exp.leading_term, exp.contour_radius, exp.estimated_radius,
               static_cast<long>(k), exp.coefficients[k].real(), exp.coefficients[k].imag()});
  std::string out = t.str();
  if (!eval.empty()) {
    sw::CsvTable conv;
    conv.header = {"point_re", "point_im", "order", "rel_error", "diverging"};
    std::size_t idx = 0;
    for (std::size_t p = 0; p < rep.points.size(); ++p)
      for (int k = 1; k <= cfg.K; ++k, ++idx)
        conv.add_row({rep.rows[idx].point.real(), rep.rows[idx].point.imag(),
                      static_cast<long>(k), rep.rows[idx].rel_error,
                      static_cast<long>(rep.diverging[p] ? 1 : 0)});
    out += "\n" + conv.str();
  }
  emit(cfg, out);
  return 0;
}

int cmd_scatter(const RunConfig& cfg) {
  sw::Parity par = cfg.parity == "odd" ? sw::Parity::Odd : sw::Parity::Even;
  if (cfg.mode == "transmission") {
    sw::CsvTable t;
    t.header = {"k", "T2", "R2", "unitarity"};
    std::vector<std::pair<double, double>> pts;
    for (int i = 1; i <= cfg.samples; ++i) {
      double k = cfg.kmax * i / cfg.samples;
      auto sp = sw::coefficients({k, 0.0}, {cfg.lambda, 0.0});
      double T2 = std::norm(sp.T), R2 = std::norm(sp.R);
      t.add_row({k, T2, R2, T2 + R2});
      pts.push_back({k, T2});
    }
    if (cfg.format == "svg") {
      sw::SvgPlot plot(640, 420);
      plot.set_view(0, cfg.kmax, 0, 1.05);
      plot.polyline(pts, "#1f77b4");
      plot.axes();
      plot.text(0.05 * cfg.kmax, 1.02, "|T|^2 over real k, lambda=" + sw::fmt17(cfg.lambda));
      emit(cfg, plot.str());
      return 0;
    }
    if (cfg.format == "json") {
      auto j = sw::json_document();
      j["lambda"] = cfg.lambda;
      j["profile"] = nlohmann::json::array();
      for (int i = 1; i <= cfg.samples; ++i) {
        double k = cfg.kmax * i / cfg.samples;
        auto sp = sw::coefficients({k, 0.0}, {cfg.lambda, 0.0});
        j["profile"].push_back({{"k", k}, {"T2", std::norm(sp.T)}, {"R2", std::norm(sp.R)}});
      }
      emit(cfg, j.dump(2) + "\n");
      return 0;
    }
    emit(cfg, t.str());
    return 0;
  }
  auto tracks = sw::pole_sweep(par, cfg.lambda_min, cfg.lambda_max, cfg.samples, cfg.levels);
  if (cfg.format == "svg") {
    sw::SvgPlot plot(640, 420);
    double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
    for (const auto& tr : tracks)
      for (const auto& s : tr.samples) {
        x0 = std::min(x0, s.k.real()); x1 = std::max(x1, s.k.real());
        y0 = std::min(y0, s.k.imag()); y1 = std::max(y1, s.k.imag());
      }
    plot.set_view(x0 - 0.2, x1 + 0.2, y0 - 0.2, y1 + 0.2);
    const char* colors[] = {"#1f77b4", "#2ca02c", "#d62728", "#9467bd", "#8c564b"};
    int ci = 0;
    for (const auto& tr : tracks) {
      std::vector<std::pair<double, double>> pts;
      for (const auto& s : tr.samples) pts.push_back({s.k.real(), s.k.imag()});
      if (pts.size() >= 2) plot.polyline(pts, colors[ci++ % 5]);
    }
    plot.axes();
    plot.text(x0, y1 + 0.1, "pole trajectories in the k-plane");
    emit(cfg, plot.str());
    return 0;
  }
  if (cfg.format == "json") {
    auto j = sw::json_document();
    j["parity"] = cfg.parity;
    j["tracks"] = nlohmann::json::array();
    for (const auto& tr : tracks) {
      nlohmann::json tj;
      tj["level"] = tr.level_index;
      tj["samples"] = nlohmann::json::array();
      for (const auto& s : tr.samples)
        tj["samples"].push_back({{"lambda", s.lambda},
                                 {"k", sw::json_complex(s.k)},
                                 {"class", sw::pole_class_name(s.classification)}});
      j["tracks"].push_back(tj);
    }
    emit(cfg, j.dump(2) + "\n");
    return 0;
  }
  sw::CsvTable t;
  t.header = {"level", "lambda", "k_re", "k_im", "class"};
  for (const auto& tr : tracks)
    for (const auto& s : tr.samples)
      t.add_row({static_cast<long>(tr.level_index), s.lambda, s.k.real(), s.k.imag(),
                 std::string(sw::pole_class_name(s.classification))});
  emit(cfg, t.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"complex energy-level structure of the finite rectangular well and the delta-barrier well"};
  app.set_config("--config");
  app.require_subcommand(1);

  RunConfig cfg;
  if (const char* env = std::getenv("SPECWELL_TOL")) {
    try {
      cfg.tol = std::stod(env);
    } catch (const std::exception&) {
      std::cerr << "invalid SPECWELL_TOL\n";
      return 2;
    }
    if (!(cfg.tol > 0)) {
      std::cerr << "invalid SPECWELL_TOL\n";
      return 2;
    }
  }

  auto add_common = [&](CLI::App* c) {
    c->add_option("--format", cfg.format)->check(CLI::IsMember({"csv", "json", "svg"}));
    c->add_option("--output,-o", cfg.output);
  };

  auto* sp = app.add_subcommand("spectrum", "real bound spectrum at one parameter value");
  sp->add_option("--model", cfg.model)->check(CLI::IsMember({"well", "delta"}));
  sp->add_option("--lambda", cfg.lambda);
  sp->add_option("--g", cfg.g);
  sp->add_option("--levels", cfg.levels);
  add_common(sp);

  auto* bp = app.add_subcommand("branch-points", "branch points of the inverse level maps");
  bp->add_option("--model", cfg.model)->check(CLI::IsMember({"well", "delta"}));
  bp->add_option("--parity", cfg.parity)->check(CLI::IsMember({"even", "odd"}));
  bp->add_option("--n", cfg.n);
  add_common(bp);

  auto* co = app.add_subcommand("continue", "analytic continuation along a parameter path");
  co->add_option("--model", cfg.model)->check(CLI::IsMember({"well", "delta"}));
  co->add_option("--parity", cfg.parity)->check(CLI::IsMember({"even", "odd"}));
  co->add_option("--level", cfg.level);
  co->add_option("--path", cfg.path_spec)->required();
  co->add_flag("--closed", cfg.closed);
  add_common(co);

  auto* se = app.add_subcommand("series", "contour perturbation series for one level");
  se->add_option("--model", cfg.model)->check(CLI::IsMember({"well", "delta"}));
  se->add_option("--parity", cfg.parity)->check(CLI::IsMember({"even", "odd"}));
  se->add_option("--level", cfg.level);
  se->add_option("--center", cfg.center)->check(CLI::IsMember({"infinity", "origin"}));
  se->add_option("--K", cfg.K);
  se->add_option("--radius", cfg.radius);
  se->add_option("--eval", cfg.eval_spec);
  add_common(se);

  auto* sc = app.add_subcommand("scatter", "transmission poles and profiles");
  sc->add_option("--parity", cfg.parity)->check(CLI::IsMember({"even", "odd"}));
  sc->add_option("--mode", cfg.mode)->check(CLI::IsMember({"poles", "transmission"}));
  sc->add_option("--lambda-min", cfg.lambda_min);
  sc->add_option("--lambda-max", cfg.lambda_max);
  sc->add_option("--lambda", cfg.lambda);
  sc->add_option("--samples", cfg.samples);
  sc->add_option("--levels", cfg.levels);
  sc->add_option("--k-max", cfg.kmax);
  add_common(sc);

  CLI11_PARSE(app, argc, argv);

  try {
    if (sp->parsed()) return cmd_spectrum(cfg);
    if (bp->parsed()) return cmd_branch_points(cfg);
    if (co->parsed()) return cmd_continue(cfg);
    if (se->parsed()) return cmd_series(cfg);
    if (sc->parsed()) return cmd_scatter(cfg);
  } catch (const sw::BranchPointCollision& e) {
    std::cerr << "branch-point collision: " << e.what() << "\n";
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const sw::numeric_error& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
