#include "epr/report.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace epr {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const char* const kStatNames[] = {"eps_a",          "eps_b",     "sigma_a",
                                  "sigma_b",        "lhs_heisenberg",
                                  "lhs_ozawa",      "lhs_branciard"};

double stat_of(const TradeoffPoint& p, const char* name) {
  const std::string n = name;
  if (n == "eps_a") return p.eps_a;
  if (n == "eps_b") return p.eps_b;
  if (n == "sigma_a") return p.sigma_a;
  if (n == "sigma_b") return p.sigma_b;
  if (n == "lhs_heisenberg") return p.lhs_heisenberg;
  if (n == "lhs_ozawa") return p.lhs_ozawa;
  return p.lhs_branciard;
}

double stat_of(const TradeoffSpread& s, const char* name) {
  const std::string n = name;
  if (n == "eps_a") return s.eps_a;
  if (n == "eps_b") return s.eps_b;
  if (n == "sigma_a") return s.sigma_a;
  if (n == "sigma_b") return s.sigma_b;
  if (n == "lhs_heisenberg") return s.lhs_heisenberg;
  if (n == "lhs_ozawa") return s.lhs_ozawa;
  return s.lhs_branciard;
}

std::string scenario_basename(const std::string& scenario) {
  if (scenario == "error-free") return "error_free";
  if (scenario == "nonzero") return "nonzero_error";
  if (scenario == "mixed") return "mixed_state";
  if (scenario == "bounds") return "bounds";
  throw std::invalid_argument("unknown scenario name: " + scenario);
}

}  // namespace

std::string format_sci(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.8e", value);
  return buf;
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

const char* run_mode_name(RunMode mode) {
  switch (mode) {
    case RunMode::kAnalytic: return "analytic";
    case RunMode::kMonteCarlo: return "mc";
    case RunMode::kBoth: return "both";
  }
  throw std::invalid_argument("unknown run mode");
}

RunMode run_mode_from_name(const std::string& name) {
  if (name == "analytic") return RunMode::kAnalytic;
  if (name == "mc") return RunMode::kMonteCarlo;
  if (name == "both") return RunMode::kBoth;
  throw std::invalid_argument("unknown run mode: " + name);
}

std::vector<double> parse_grid_spec(const std::string& text) {
  const auto to_double = [](const std::string& field) {
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(field, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("not a number in grid spec: '" + field + "'");
    }
    if (used != field.size()) {
      throw std::invalid_argument("not a number in grid spec: '" + field + "'");
    }
    return value;
  };
  const auto split = [&](char sep) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream is(text);
    while (std::getline(is, field, sep)) fields.push_back(field);
    return fields;
  };
  if (text.find(':') != std::string::npos) {
    const std::vector<std::string> fields = split(':');
    if (fields.size() != 3) {
      throw std::invalid_argument("range grid spec must be start:step:stop");
    }
    return make_grid(to_double(fields[0]), to_double(fields[1]),
                     to_double(fields[2]));
  }
  std::vector<double> values;
  for (const std::string& field : split(',')) values.push_back(to_double(field));
  if (values.empty()) throw std::invalid_argument("empty grid spec");
  return values;
}

void CommandOptions::validate() const {
  scenario_basename(scenario);
  if (grid.empty()) throw std::invalid_argument("grid must be nonempty");
  if (scenario == "bounds") {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (!(grid[i] >= 0.0)) {
        throw std::invalid_argument("eps_a grid values must be >= 0");
      }
      if (i > 0 && !(grid[i] > grid[i - 1])) {
        throw std::invalid_argument("eps_a grid must be strictly increasing");
      }
    }
    return;
  }
  // Scan scenarios delegate the detailed grid checks to ScenarioConfig.
  ScenarioConfig config;
  config.spec = spec;
  config.n_shots = n_shots;
  config.seed = seed;
  config.mode = mode;
  config.repeats = repeats;
  if (scenario == "error-free") {
    config.scan = ErrorFreeScan{grid};
  } else if (scenario == "nonzero") {
    config.scan = NonzeroErrorScan{grid};
  } else {
    config.scan = MixedStateScan{grid};
  }
  config.validate();
}

std::string scan_csv(const ScenarioResult& result) {
  const bool with_mc = !result.points.empty() && result.points.front().mc.has_value();
  std::ostringstream os;
  os << result.parameter_name
     << ",eps_a,eps_b,sigma_a,sigma_b,c_ab,lhs_heisenberg,lhs_ozawa,lhs_branciard";
  if (with_mc) {
    for (const char* name : kStatNames) {
      os << ",mc_" << name << ",mc_spread_" << name;
    }
  }
  os << "\n";
  for (const ScenarioPoint& point : result.points) {
    const TradeoffPoint& a = point.analytic;
    os << format_sci(point.parameter) << ',' << format_sci(a.eps_a) << ','
       << format_sci(a.eps_b) << ',' << format_sci(a.sigma_a) << ','
       << format_sci(a.sigma_b) << ',' << format_sci(a.c_ab) << ','
       << format_sci(a.lhs_heisenberg) << ',' << format_sci(a.lhs_ozawa) << ','
       << format_sci(a.lhs_branciard);
    if (with_mc) {
      if (!point.mc || !point.mc_spread) {
        throw std::logic_error("scan_csv: Monte Carlo columns missing at a point");
      }
      for (const char* name : kStatNames) {
        os << ',' << format_sci(stat_of(*point.mc, name)) << ','
           << format_sci(stat_of(*point.mc_spread, name));
      }
    }
    os << "\n";
  }
  return os.str();
}

std::string bounds_curves_csv(const BoundsPlane& plane) {
  std::ostringstream os;
  os << "relation,sigma_variant,eps_a,eps_b\n";
  for (const LabeledBoundCurve& labeled : plane.curves) {
    for (std::size_t i = 0; i < labeled.curve.eps_a.size(); ++i) {
      os << labeled.relation << ',' << labeled.sigma_variant << ','
         << format_sci(labeled.curve.eps_a[i]) << ','
         << format_sci(labeled.curve.eps_b[i]) << "\n";
    }
  }
  return os.str();
}

std::string bounds_points_csv(const BoundsPlane& plane) {
  std::ostringstream os;
  os << "scenario,parameter,eps_a,eps_b\n";
  for (const OverlayPoint& p : plane.points) {
    os << p.scenario << ',' << format_sci(p.parameter) << ','
       << format_sci(p.eps_a) << ',' << format_sci(p.eps_b) << "\n";
  }
  return os.str();
}

std::string manifest_json(const CommandOptions& options,
                          const std::string& command_line,
                          const std::string& timestamp,
                          const std::vector<std::string>& output_names) {
  nlohmann::ordered_json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["timestamp"] = timestamp;
  j["command_line"] = command_line;
  j["scenario"] = options.scenario;
  nlohmann::ordered_json spec;
  if (options.spec.is_pure()) {
    spec["kind"] = "pure";
    spec["r"] = options.spec.r();
  } else {
    spec["kind"] = "impure";
    spec["squeezing_db"] = options.spec.squeezing_db();
    spec["antisqueezing_db"] = options.spec.antisqueezing_db();
  }
  j["spec"] = spec;
  nlohmann::ordered_json grid;
  grid["name"] = options.scenario == "error-free" ? "theta_deg"
                 : options.scenario == "bounds"   ? "eps_a"
                                                  : "transmission";
  grid["values"] = options.grid;
  j["grid"] = grid;
  j["n_shots"] = static_cast<std::int64_t>(options.n_shots);
  j["repeats"] = options.repeats;
  j["seed"] = options.seed;
  j["mode"] = run_mode_name(options.mode);
  j["svg"] = options.svg;
  j["outputs"] = output_names;
  return j.dump(2) + "\n";
}

CommandOptions options_from_manifest(const std::string& manifest_text) {
  const nlohmann::json j = nlohmann::json::parse(manifest_text);
  CommandOptions options;
  options.scenario = j.at("scenario").get<std::string>();
  const nlohmann::json& spec = j.at("spec");
  if (spec.at("kind").get<std::string>() == "pure") {
    options.spec = SqueezingSpec::pure(spec.at("r").get<double>());
  } else {
    options.spec = SqueezingSpec::impure(spec.at("squeezing_db").get<double>(),
                                         spec.at("antisqueezing_db").get<double>());
  }
  options.grid = j.at("grid").at("values").get<std::vector<double>>();
  options.n_shots = j.at("n_shots").get<std::int64_t>();
  options.repeats = j.at("repeats").get<int>();
  options.seed = j.at("seed").get<std::uint64_t>();
  options.mode = run_mode_from_name(j.at("mode").get<std::string>());
  options.svg = j.at("svg").get<bool>();
  options.validate();
  return options;
}

namespace {

// Minimal deterministic SVG plotting. All coordinates go through f2() so
// output bytes depend only on the input data.

std::string f2(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_text(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

struct PlotSeries {
  std::string label;  // empty = keep out of the legend
  std::string color;
  bool dashed = false;
  bool line = true;
  bool markers = false;
  std::vector<double> x, y;
  std::vector<double> bar;  // optional half-length of vertical error bars
};

struct PlotPanel {
  std::string title, x_label, y_label;
  std::vector<PlotSeries> series;
  double ref_y = kNaN;  // horizontal dashed reference line
  std::string ref_label;
  double y_autorange_cap = kNaN;  // values above it do not widen the range
};

std::vector<double> nice_ticks(double lo, double hi, int target) {
  const double raw = (hi - lo) / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = 10.0 * mag;
  for (double m : {1.0, 2.0, 2.5, 5.0}) {
    if (raw <= m * mag) {
      step = m * mag;
      break;
    }
  }
  std::vector<double> ticks;
  const long first = static_cast<long>(std::ceil(lo / step - 1e-9));
  for (long k = first; k * step <= hi + step * 1e-9; ++k) {
    ticks.push_back(k * step);
  }
  return ticks;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void include(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void widen_degenerate() {
    if (lo > hi) {
      lo = 0.0;
      hi = 1.0;
    } else if (lo == hi) {
      lo -= 1.0;
      hi += 1.0;
    }
  }
};

void render_panel(std::ostringstream& os, const PlotPanel& panel, int clip_id,
                  double ox, double oy, double width, double height) {
  Range xr, yr;
  for (const PlotSeries& s : panel.series) {
    for (double v : s.x) xr.include(v);
    for (std::size_t i = 0; i < s.y.size(); ++i) {
      const double v = s.y[i];
      if (std::isfinite(panel.y_autorange_cap) && v > panel.y_autorange_cap) continue;
      yr.include(v);
      if (i < s.bar.size()) {
        yr.include(v - s.bar[i]);
        yr.include(v + s.bar[i]);
      }
    }
  }
  if (std::isfinite(panel.ref_y)) yr.include(panel.ref_y);
  xr.widen_degenerate();
  yr.widen_degenerate();
  yr.lo = std::min(0.0, yr.lo);  // errors and LHS values sit on a zero baseline
  yr.hi += 0.08 * (yr.hi - yr.lo);

  const auto px = [&](double x) { return ox + (x - xr.lo) / (xr.hi - xr.lo) * width; };
  const auto py = [&](double y) {
    return oy + height - (y - yr.lo) / (yr.hi - yr.lo) * height;
  };

  os << "<clipPath id=\"panel" << clip_id << "\"><rect x=\"" << f2(ox) << "\" y=\""
     << f2(oy) << "\" width=\"" << f2(width) << "\" height=\"" << f2(height)
     << "\"/></clipPath>\n";

  // Grid lines and tick labels.
  os << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333333\">\n";
  for (double t : nice_ticks(xr.lo, xr.hi, 8)) {
    const double x = px(t);
    os << "<line x1=\"" << f2(x) << "\" y1=\"" << f2(oy) << "\" x2=\"" << f2(x)
       << "\" y2=\"" << f2(oy + height)
       << "\" stroke=\"#e0e0e0\" stroke-width=\"1\"/>\n";
    os << "<text x=\"" << f2(x) << "\" y=\"" << f2(oy + height + 16)
       << "\" text-anchor=\"middle\">" << tick_text(t) << "</text>\n";
  }
  for (double t : nice_ticks(yr.lo, yr.hi, 6)) {
    const double y = py(t);
    os << "<line x1=\"" << f2(ox) << "\" y1=\"" << f2(y) << "\" x2=\""
       << f2(ox + width) << "\" y2=\"" << f2(y)
       << "\" stroke=\"#e0e0e0\" stroke-width=\"1\"/>\n";
    os << "<text x=\"" << f2(ox - 6) << "\" y=\"" << f2(y + 4)
       << "\" text-anchor=\"end\">" << tick_text(t) << "</text>\n";
  }
  os << "</g>\n";

  if (std::isfinite(panel.ref_y)) {
    os << "<line x1=\"" << f2(ox) << "\" y1=\"" << f2(py(panel.ref_y)) << "\" x2=\""
       << f2(ox + width) << "\" y2=\"" << f2(py(panel.ref_y))
       << "\" stroke=\"#d62728\" stroke-width=\"1.5\" stroke-dasharray=\"4 4\"/>\n";
  }

  os << "<g clip-path=\"url(#panel" << clip_id << ")\">\n";
  for (const PlotSeries& s : panel.series) {
    if (s.line) {
      bool open = false;
      std::ostringstream d;
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (!std::isfinite(s.y[i])) {
          open = false;
          continue;
        }
        d << (open ? " L " : " M ") << f2(px(s.x[i])) << ' ' << f2(py(s.y[i]));
        open = true;
      }
      os << "<path d=\"" << d.str() << "\" fill=\"none\" stroke=\"" << s.color
         << "\" stroke-width=\"1.8\"";
      if (s.dashed) os << " stroke-dasharray=\"6 4\"";
      os << "/>\n";
    }
    for (std::size_t i = 0; i < s.x.size() && i < s.bar.size(); ++i) {
      if (!std::isfinite(s.y[i])) continue;
      const double x = px(s.x[i]);
      const double y1 = py(s.y[i] - s.bar[i]);
      const double y2 = py(s.y[i] + s.bar[i]);
      os << "<line x1=\"" << f2(x) << "\" y1=\"" << f2(y1) << "\" x2=\"" << f2(x)
         << "\" y2=\"" << f2(y2) << "\" stroke=\"" << s.color
         << "\" stroke-width=\"1\"/>\n";
      for (double yc : {y1, y2}) {
        os << "<line x1=\"" << f2(x - 3) << "\" y1=\"" << f2(yc) << "\" x2=\""
           << f2(x + 3) << "\" y2=\"" << f2(yc) << "\" stroke=\"" << s.color
           << "\" stroke-width=\"1\"/>\n";
      }
    }
    if (s.markers) {
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (!std::isfinite(s.y[i])) continue;
        os << "<circle cx=\"" << f2(px(s.x[i])) << "\" cy=\"" << f2(py(s.y[i]))
           << "\" r=\"3\" fill=\"" << s.color << "\"/>\n";
      }
    }
  }
  os << "</g>\n";

  // Frame, title, axis labels.
  os << "<rect x=\"" << f2(ox) << "\" y=\"" << f2(oy) << "\" width=\"" << f2(width)
     << "\" height=\"" << f2(height)
     << "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
  os << "<g font-family=\"sans-serif\" fill=\"#111111\">\n";
  os << "<text x=\"" << f2(ox + width / 2) << "\" y=\"" << f2(oy - 10)
     << "\" font-size=\"13\" font-weight=\"bold\" text-anchor=\"middle\">"
     << panel.title << "</text>\n";
  os << "<text x=\"" << f2(ox + width / 2) << "\" y=\"" << f2(oy + height + 34)
     << "\" font-size=\"12\" text-anchor=\"middle\">" << panel.x_label
     << "</text>\n";
  os << "<text transform=\"translate(" << f2(ox - 46) << ' '
     << f2(oy + height / 2)
     << ") rotate(-90)\" font-size=\"12\" text-anchor=\"middle\">" << panel.y_label
     << "</text>\n";
  os << "</g>\n";

  // Legend, top right inside the frame.
  std::vector<const PlotSeries*> entries;
  std::size_t longest = panel.ref_label.size();
  for (const PlotSeries& s : panel.series) {
    if (s.label.empty()) continue;
    entries.push_back(&s);
    longest = std::max(longest, s.label.size());
  }
  const bool with_ref = std::isfinite(panel.ref_y) && !panel.ref_label.empty();
  const std::size_t rows = entries.size() + (with_ref ? 1 : 0);
  if (rows > 0) {
    const double lw = 34 + 6.8 * static_cast<double>(longest);
    const double lh = 8 + 16.0 * static_cast<double>(rows);
    const double lx = ox + width - lw - 8;
    const double ly = oy + 8;
    os << "<rect x=\"" << f2(lx) << "\" y=\"" << f2(ly) << "\" width=\"" << f2(lw)
       << "\" height=\"" << f2(lh)
       << "\" fill=\"#ffffff\" fill-opacity=\"0.85\" stroke=\"#cccccc\"/>\n";
    os << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#111111\">\n";
    double ry = ly + 16;
    const auto swatch = [&](const std::string& color, bool dashed, bool line,
                            bool markers, const std::string& label) {
      if (line) {
        os << "<line x1=\"" << f2(lx + 6) << "\" y1=\"" << f2(ry - 4) << "\" x2=\""
           << f2(lx + 24) << "\" y2=\"" << f2(ry - 4) << "\" stroke=\"" << color
           << "\" stroke-width=\"1.8\"";
        if (dashed) os << " stroke-dasharray=\"6 4\"";
        os << "/>\n";
      }
      if (markers) {
        os << "<circle cx=\"" << f2(lx + 15) << "\" cy=\"" << f2(ry - 4)
           << "\" r=\"3\" fill=\"" << color << "\"/>\n";
      }
      os << "<text x=\"" << f2(lx + 28) << "\" y=\"" << f2(ry) << "\">" << label
         << "</text>\n";
      ry += 16;
    };
    for (const PlotSeries* s : entries) {
      swatch(s->color, s->dashed, s->line, s->markers, s->label);
    }
    if (with_ref) swatch("#d62728", true, true, false, panel.ref_label);
    os << "</g>\n";
  }
}

std::string render_figure(const std::vector<PlotPanel>& panels) {
  const double width = 760, panel_w = 620, panel_h = 250, ox = 86;
  const double top = 46, gap = 78;
  const double height = top + panels.size() * panel_h +
                        (panels.size() - 1) * gap + 58;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << f2(width)
     << "\" height=\"" << f2(height) << "\" viewBox=\"0 0 " << f2(width) << ' '
     << f2(height) << "\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << f2(width) << "\" height=\""
     << f2(height) << "\" fill=\"#ffffff\"/>\n";
  for (std::size_t i = 0; i < panels.size(); ++i) {
    render_panel(os, panels[i], static_cast<int>(i), ox,
                 top + i * (panel_h + gap), panel_w, panel_h);
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace

std::string scan_svg(const ScenarioResult& result) {
  const bool theta = result.parameter_name == "theta_deg";
  const std::string x_label =
      theta ? "Relative phase θ (degrees)" : "Transmission T";
  std::vector<double> xs;
  for (const ScenarioPoint& p : result.points) xs.push_back(p.parameter);
  const bool with_mc =
      !result.points.empty() && result.points.front().mc.has_value();

  const auto analytic_series = [&](const char* stat, const std::string& label,
                                   const std::string& color) {
    PlotSeries s{label, color};
    s.x = xs;
    for (const ScenarioPoint& p : result.points) {
      s.y.push_back(stat_of(p.analytic, stat));
    }
    return s;
  };
  const auto mc_series = [&](const char* stat, const std::string& color) {
    PlotSeries s{"", color};
    s.line = false;
    s.markers = true;
    s.x = xs;
    for (const ScenarioPoint& p : result.points) {
      s.y.push_back(stat_of(*p.mc, stat));
      s.bar.push_back(stat_of(*p.mc_spread, stat));
    }
    return s;
  };

  PlotPanel errors;
  errors.title = "Measurement errors";
  errors.x_label = x_label;
  errors.y_label = "RMS error";
  errors.series.push_back(analytic_series("eps_a", "ε(A)", "#1f77b4"));
  errors.series.push_back(analytic_series("eps_b", "ε(B)", "#ff7f0e"));
  if (with_mc) {
    errors.series.push_back(mc_series("eps_a", "#1f77b4"));
    errors.series.push_back(mc_series("eps_b", "#ff7f0e"));
    errors.series.back().label = "Monte Carlo";
  }

  PlotPanel lhs;
  lhs.title = "Error-tradeoff relations";
  lhs.x_label = x_label;
  lhs.y_label = "Left-hand side";
  lhs.ref_y = result.points.empty() ? 0.25 : result.points.front().analytic.c_ab;
  lhs.ref_label = "C_AB = 1/4";
  lhs.series.push_back(analytic_series("lhs_heisenberg", "Heisenberg", "#1f77b4"));
  lhs.series.push_back(analytic_series("lhs_ozawa", "Ozawa", "#ff7f0e"));
  lhs.series.push_back(analytic_series("lhs_branciard", "Branciard", "#2ca02c"));
  if (with_mc) {
    lhs.series.push_back(mc_series("lhs_heisenberg", "#1f77b4"));
    lhs.series.push_back(mc_series("lhs_ozawa", "#ff7f0e"));
    lhs.series.push_back(mc_series("lhs_branciard", "#2ca02c"));
  }

  return render_figure({errors, lhs});
}

std::string bounds_svg(const BoundsPlane& plane) {
  PlotPanel panel;
  panel.title = "Error-tradeoff lower bounds";
  panel.x_label = "ε(A)";
  panel.y_label = "ε(B)";

  double cap = 0.0;
  for (const LabeledBoundCurve& c : plane.curves) {
    if (c.relation == "heisenberg") continue;
    for (double v : c.curve.eps_b) cap = std::max(cap, v);
  }
  for (const OverlayPoint& p : plane.points) cap = std::max(cap, p.eps_b);
  panel.y_autorange_cap = 1.15 * cap;

  const auto curve_series = [&](const LabeledBoundCurve& c) {
    std::string label = c.relation == "heisenberg" ? "Heisenberg"
                        : c.relation == "ozawa"    ? "Ozawa"
                                                   : "Branciard";
    std::string color = c.relation == "heisenberg" ? "#1f77b4"
                        : c.relation == "ozawa"    ? "#ff7f0e"
                                                   : "#2ca02c";
    PlotSeries s{label, color};
    if (c.sigma_variant == "pure_equivalent") {
      s.label += " (pure equiv.)";
      s.dashed = true;
    }
    s.x = c.curve.eps_a;
    s.y = c.curve.eps_b;
    return s;
  };
  for (const LabeledBoundCurve& c : plane.curves) {
    panel.series.push_back(curve_series(c));
  }

  const auto point_series = [&](const std::string& scenario,
                                const std::string& label,
                                const std::string& color) {
    PlotSeries s{label, color};
    s.line = false;
    s.markers = true;
    for (const OverlayPoint& p : plane.points) {
      if (p.scenario != scenario) continue;
      s.x.push_back(p.eps_a);
      s.y.push_back(p.eps_b);
    }
    return s;
  };
  panel.series.push_back(
      point_series("error_free_theta0", "error-free, θ = 0", "#000000"));
  panel.series.push_back(
      point_series("nonzero_error", "nonzero-error scan", "#d62728"));
  panel.series.push_back(
      point_series("mixed_state", "mixed-state scan", "#9467bd"));

  return render_figure({panel});
}

std::vector<OutputFile> render_command(const CommandOptions& options,
                                       const std::string& command_line,
                                       const std::string& timestamp) {
  options.validate();
  const std::string base = scenario_basename(options.scenario);
  std::vector<OutputFile> files;

  if (options.scenario == "bounds") {
    const BoundsPlane plane = assemble_bounds_plane(options.spec, options.grid);
    files.push_back({base + "_curves.csv", bounds_curves_csv(plane)});
    files.push_back({base + "_points.csv", bounds_points_csv(plane)});
    if (options.svg) files.push_back({base + ".svg", bounds_svg(plane)});
  } else {
    ScenarioConfig config;
    config.spec = options.spec;
    config.n_shots = options.n_shots;
    config.seed = options.seed;
    config.mode = options.mode;
    config.repeats = options.repeats;
    if (options.scenario == "error-free") {
      config.scan = ErrorFreeScan{options.grid};
    } else if (options.scenario == "nonzero") {
      config.scan = NonzeroErrorScan{options.grid};
    } else {
      config.scan = MixedStateScan{options.grid};
    }
    const ScenarioResult result = run_scenario(config);
    files.push_back({base + ".csv", scan_csv(result)});
    if (options.svg) files.push_back({base + ".svg", scan_svg(result)});
  }

  std::vector<std::string> names;
  for (const OutputFile& f : files) names.push_back(f.name);
  files.push_back(
      {base + ".manifest.json",
       manifest_json(options, command_line, timestamp, names)});
  return files;
}

void write_files(const std::vector<OutputFile>& files, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  for (const OutputFile& f : files) {
    const std::filesystem::path path = std::filesystem::path(out_dir) / f.name;
    std::ofstream out(path, std::ios::binary);
    out.write(f.content.data(),
              static_cast<std::streamsize>(f.content.size()));
    if (!out) {
      throw std::runtime_error("cannot write " + path.string());
    }
  }
}

}  // namespace epr
