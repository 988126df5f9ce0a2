#include "harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "dense_oracle.hpp"
#include "rng.hpp"
#include "statmech.hpp"

namespace mipt {

namespace {

using nlohmann::ordered_json;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_num(const std::string& key, const std::string& value) {
  size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad number for '" + key + "'");
  }
  if (used != value.size())
    throw std::invalid_argument("config: bad number for '" + key + "'");
  return v;
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// ---------------------------------------------------------------- SVG ----

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> pts;
};

// Minimal scatter/line emitter; log10 axes drop nonpositive points.
std::string svg_plot(const std::vector<Series>& series, bool logx, bool logy,
                     const std::string& title) {
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c",
                                 "#9467bd", "#ff7f0e", "#8c564b"};
  const double w = 640, h = 480, m = 60;
  std::vector<Series> tr = series;
  double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
  for (auto& s : tr) {
    std::vector<std::pair<double, double>> keep;
    for (auto [x, y] : s.pts) {
      if (logx) {
        if (x <= 0) continue;
        x = std::log10(x);
      }
      if (logy) {
        if (y <= 0) continue;
        y = std::log10(y);
      }
      keep.push_back({x, y});
      x0 = std::min(x0, x), x1 = std::max(x1, x);
      y0 = std::min(y0, y), y1 = std::max(y1, y);
    }
    s.pts = keep;
  }
  if (x1 <= x0) x1 = x0 + 1;
  if (y1 <= y0) y1 = y0 + 1;
  auto px = [&](double x) { return m + (x - x0) / (x1 - x0) * (w - 2 * m); };
  auto py = [&](double y) { return h - m - (y - y0) / (y1 - y0) * (h - 2 * m); };
  std::ostringstream out;
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << w << "' height='"
      << h << "'>\n<rect width='100%' height='100%' fill='white'/>\n"
      << "<text x='" << w / 2 << "' y='24' text-anchor='middle'>" << title
      << (logx ? " [log x]" : "") << (logy ? " [log y]" : "") << "</text>\n"
      << "<line x1='" << m << "' y1='" << h - m << "' x2='" << w - m
      << "' y2='" << h - m << "' stroke='black'/>\n"
      << "<line x1='" << m << "' y1='" << m << "' x2='" << m << "' y2='"
      << h - m << "' stroke='black'/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double fx = x0 + (x1 - x0) * i / 4, fy = y0 + (y1 - y0) * i / 4;
    out << "<text x='" << px(fx) << "' y='" << h - m + 18
        << "' font-size='11' text-anchor='middle'>" << fmt17(fx).substr(0, 7)
        << "</text>\n<text x='" << m - 6 << "' y='" << py(fy) + 4
        << "' font-size='11' text-anchor='end'>" << fmt17(fy).substr(0, 7)
        << "</text>\n";
  }
  size_t ci = 0;
  for (const auto& s : tr) {
    const char* c = colors[ci % 6];
    out << "<polyline fill='none' stroke='" << c << "' points='";
    for (auto [x, y] : s.pts) out << px(x) << "," << py(y) << " ";
    out << "'/>\n";
    for (auto [x, y] : s.pts)
      out << "<circle cx='" << px(x) << "' cy='" << py(y) << "' r='3' fill='"
          << c << "'/>\n";
    out << "<text x='" << w - m + 4 << "' y='" << m + 16 * ci
        << "' font-size='12' fill='" << c << "'>" << s.label << "</text>\n";
    ++ci;
  }
  out << "</svg>\n";
  return out.str();
}

// ------------------------------------------------------------- helpers ----

double mean_value(const std::vector<RunRecord>& rs, size_t lx, double param,
                  const std::string& region = "") {
  double sum = 0;
  size_t n = 0;
  for (const auto& r : rs)
    if (r.lx == lx && r.param == param && (region.empty() || r.region == region)) {
      sum += r.value;
      ++n;
    }
  return n ? sum / n : 0.0;
}

ordered_json fit_json(const FitResult& f) {
  return ordered_json{{"kind", f.kind},
                      {"value", f.value},
                      {"stderr", f.stderr_},
                      {"window", f.window},
                      {"ok", f.ok}};
}

struct RunOutput {
  std::vector<RunRecord> records;
  std::vector<FitResult> fits;
  ordered_json extra;  // command-specific summary fields
  std::vector<Series> plot;
  bool plot_logx = false, plot_logy = false;
  std::string plot_title;
};

// ------------------------------------------------------------ commands ----

RunOutput do_graph_scan(const ExperimentConfig& c, bool clifford) {
  RunOutput out;
  const auto q = static_cast<uint32_t>(c.num("q", 2));
  const auto sizes = c.size_list("lx", 64);
  const auto ps = clifford ? c.grid("p", 1.0) : c.grid("px", 0.95);
  const auto samples = static_cast<size_t>(c.num("samples", 100));
  const auto seed = static_cast<uint64_t>(c.num("seed", 1));
  const auto t = static_cast<size_t>(c.num("t", 2));
  for (size_t lx : sizes) {
    for (double p : ps) {
      SimOptions o;
      o.model = clifford ? Model::kClifford : Model::kGraph;
      o.q = q;
      o.lattice = {lx, static_cast<size_t>(c.num("ly", static_cast<double>(lx)))};
      if (clifford)
        o.circuit = {t, p};
      else
        o.policy.p_x = p;
      const auto la = static_cast<size_t>(c.num("la", static_cast<double>(lx / 4)));
      auto rs = run_strip_entropy(o, {{0, la}}, samples, seed);
      out.records.insert(out.records.end(), rs.begin(), rs.end());
    }
  }
  if (sizes.size() >= 2 && ps.size() >= 2)
    out.fits.push_back(estimate_pc(out.records));
  for (size_t lx : sizes) {
    Series s{"Lx=" + std::to_string(lx), {}};
    for (double p : ps)
      s.pts.push_back({p, mean_value(out.records, lx, p) /
                              std::log(static_cast<double>(lx))});
    out.plot.push_back(std::move(s));
  }
  out.plot_title = clifford ? "S_A / ln Lx vs p" : "S_A / ln Lx vs p_x";
  return out;
}

RunOutput do_graph_critical(const ExperimentConfig& c) {
  RunOutput out;
  const auto q = static_cast<uint32_t>(c.num("q", 2));
  const auto lx = static_cast<size_t>(c.num("lx", 128));
  const double px = c.num("px", 0.95);
  const auto samples = static_cast<size_t>(c.num("samples", 100));
  const auto seed = static_cast<uint64_t>(c.num("seed", 1));
  SimOptions o;
  o.model = Model::kGraph;
  o.q = q;
  o.lattice = {lx, static_cast<size_t>(c.num("ly", static_cast<double>(lx)))};
  o.policy.p_x = px;
  std::vector<Interval> regions;
  for (size_t la = lx / 8; la <= lx / 2; la += std::max<size_t>(1, lx / 16))
    regions.push_back({0, la});
  out.records = run_strip_entropy(o, regions, samples, seed);
  out.fits.push_back(fit_alpha(out.records));
  Series s{"Lx=" + std::to_string(lx), {}};
  for (const auto& reg : regions) {
    const double chord = static_cast<double>(lx) / std::numbers::pi *
                         std::sin(std::numbers::pi *
                                  static_cast<double>(reg.length) /
                                  static_cast<double>(lx));
    s.pts.push_back({std::log(chord),
                     mean_value(out.records, lx, px,
                                std::to_string(reg.start) + ":" +
                                    std::to_string(reg.length))});
  }
  out.plot.push_back(std::move(s));
  out.plot_title = "S_A vs ln chord(L_A)";
  return out;
}

RunOutput do_mutual_info(const ExperimentConfig& c) {
  RunOutput out;
  const auto q = static_cast<uint32_t>(c.num("q", 2));
  const auto lx = static_cast<size_t>(c.num("lx", 128));
  const double px = c.num("px", 0.95);
  const auto samples = static_cast<size_t>(c.num("samples", 1000));
  const auto tuples = static_cast<size_t>(c.num("tuples", 1));
  const auto seed = static_cast<uint64_t>(c.num("seed", 1));
  SimOptions o;
  o.model = Model::kGraph;
  o.q = q;
  o.lattice = {lx, static_cast<size_t>(c.num("ly", static_cast<double>(lx)))};
  o.policy.p_x = px;
  out.records = run_mutual_info(o, samples, tuples, seed);
  out.fits.push_back(fit_delta(out.records));
  Series s{"I_AB", {}};
  for (const auto& r : out.records) {
    size_t xs[4];
    char sep;
    std::istringstream iss(r.region);
    if (iss >> xs[0] >> sep >> xs[1] >> sep >> xs[2] >> sep >> xs[3])
      s.pts.push_back({cross_ratio(xs[0], xs[1], xs[2], xs[3], lx), r.value});
  }
  out.plot.push_back(std::move(s));
  out.plot_logx = out.plot_logy = true;
  out.plot_title = "I_AB vs eta";
  return out;
}

RunOutput do_purify(const ExperimentConfig& c, bool clifford) {
  RunOutput out;
  const auto q = static_cast<uint32_t>(c.num("q", 2));
  const auto lx = static_cast<size_t>(c.num("lx", 64));
  const auto samples = static_cast<size_t>(c.num("samples", 100));
  const auto seed = static_cast<uint64_t>(c.num("seed", 1));
  SimOptions o;
  o.model = clifford ? Model::kClifford : Model::kGraph;
  o.q = q;
  o.geometry = GeometryKind::kCylinderTwoEdge;
  o.lattice.l_x = lx;
  o.lattice.periodic_x = c.num("obc", 0) == 0;
  if (clifford)
    o.circuit = {static_cast<size_t>(c.num("t", 2)), c.num("p", 1.0)};
  else
    o.policy.p_x = c.num("px", 0.95);
  std::vector<size_t> lys;
  const auto ly_min = static_cast<size_t>(c.num("ly_min", 3));
  const auto ly_max =
      static_cast<size_t>(c.num("ly_max", static_cast<double>(2 * lx)));
  const auto ly_step =
      static_cast<size_t>(c.num("ly_step", std::max(1.0, lx / 16.0)));
  if (ly_min < 3 || ly_max < ly_min || ly_step == 0)
    throw std::invalid_argument("purify: bad ly sweep");
  for (size_t ly = ly_min; ly <= ly_max; ly += ly_step) lys.push_back(ly);
  out.records = run_two_edge_purification(o, lys, samples, seed);
  out.fits.push_back(fit_lambda(out.records));
  Series s{"S_top", {}};
  for (size_t ly : lys) {
    double sum = 0;
    size_t n = 0;
    for (const auto& r : out.records)
      if (r.ly == ly) sum += r.value, ++n;
    if (n) s.pts.push_back({static_cast<double>(ly), sum / n});
  }
  out.plot.push_back(std::move(s));
  out.plot_logy = true;
  out.plot_title = "S_top vs Ly";
  return out;
}

RunOutput do_couplings(const ExperimentConfig& c) {
  RunOutput out;
  const double q = c.num("q", 2);
  const Couplings cp = effective_couplings(q);
  out.extra["weingarten_identity"] = weingarten2(PermSpin::kIdentity, q);
  out.extra["weingarten_swap"] = weingarten2(PermSpin::kSwap, q);
  out.extra["edge_weight_identity"] = edge_weight(PermSpin::kIdentity, q);
  out.extra["edge_weight_swap"] = edge_weight(PermSpin::kSwap, q);
  out.extra["j_vert"] = cp.j_vert;
  out.extra["j_horiz"] = cp.j_horiz;
  out.extra["j12"] = cp.j12;
  out.extra["j13"] = cp.j13;
  out.extra["j1234"] = cp.j1234;
  out.extra["all_orbits_positive"] = cp.all_orbits_positive;
  out.extra["residual"] = cp.residual;
  const char* names[] = {"j_vert", "j_horiz", "j12", "j13", "j1234"};
  const double vals[] = {cp.j_vert, cp.j_horiz, cp.j12, cp.j13, cp.j1234};
  for (int i = 0; i < 5; ++i)
    out.records.push_back({"statmech-rbim", static_cast<uint32_t>(q), 0, 0, q,
                           names[i], 0, 0, vals[i]});
  return out;
}

RunOutput do_rbim(const ExperimentConfig& c) {
  RunOutput out;
  const auto ls = c.size_list("l", 16);
  const auto ks = c.grid("k", 0.4407);
  const auto pbs = c.grid("pb", 1.0);
  if (ks.size() > 1 && pbs.size() > 1)
    throw std::invalid_argument("rbim-mc: scan only one of k, pb");
  const auto sweeps = static_cast<size_t>(c.num("sweeps", 5000));
  const auto seed = static_cast<uint64_t>(c.num("seed", 1));
  const std::string algo = c.str("algo", "metropolis");
  if (algo != "metropolis" && algo != "sw")
    throw std::invalid_argument("rbim-mc: algo must be metropolis or sw");
  for (size_t l : ls)
    for (double k : ks)
      for (double pb : pbs) {
        const RbimResult r = algo == "sw"
                                 ? run_rbim_mc_sw(l, k, pb, sweeps, seed)
                                 : run_rbim_mc(l, k, pb, sweeps, seed);
        const double param = pbs.size() > 1 ? pb : k;
        const char* names[] = {"m_abs", "m2", "m4", "binder"};
        const double vals[] = {r.mean_abs_m, r.m2, r.m4, r.binder};
        for (int i = 0; i < 4; ++i)
          out.records.push_back({"statmech-rbim", 2, l, l, param, names[i], 0,
                                 seed, vals[i]});
      }
  for (size_t l : ls) {
    Series s{"L=" + std::to_string(l), {}};
    for (const auto& r : out.records)
      if (r.lx == l && r.region == "binder") s.pts.push_back({r.param, r.value});
    out.plot.push_back(std::move(s));
  }
  out.plot_title = "Binder cumulant";
  return out;
}

// Small tableau-vs-dense differential: random CP gates and X/Z measurements,
// comparing every interval entropy (hidden `verify` subcommand).
RunOutput do_verify(const ExperimentConfig& c) {
  RunOutput out;
  const auto seed = static_cast<uint64_t>(c.num("seed", 1));
  size_t checks = 0;
  for (uint32_t q : {2u, 3u}) {
    const size_t n = q == 2 ? 8 : 5;
    for (uint64_t rep = 0; rep < 20; ++rep) {
      StabilizerTableau tab(q, 0, n);
      for (size_t i = 0; i < n; ++i) tab.append_plus_site();
      DenseState dense(q, n);
      for (uint64_t step = 0; step < 24; ++step) {
        const uint64_t kind = rng::below(3, seed, 90, q, rep, step, 0);
        const size_t i = rng::below(n, seed, 91, q, rep, step, 0);
        if (kind == 0) {
          const size_t j = (i + 1 + rng::below(n - 1, seed, 92, q, rep, step)) % n;
          const auto w = static_cast<uint32_t>(
              1 + rng::below(q - 1 ? q - 1 : 1, seed, 93, q, rep, step));
          tab.apply_cp(i, j, w);
          dense.apply_cp(i, j, w);
        } else {
          const bool x = kind == 1;
          tab.measure({i, x ? 1u : 0u, x ? 0u : 1u});
          dense.measure(i, x ? 1 : 0, x ? 0 : 1,
                        rng::unit(seed, 94, q, rep, step));
        }
        for (size_t len = 1; len < n; ++len) {
          std::vector<size_t> region(len);
          for (size_t s = 0; s < len; ++s) region[s] = s;
          const double dref = dense.entropy(region);
          if (std::llround(dref) !=
                  static_cast<long long>(tab.entropy(region)) ||
              std::fabs(dref - std::round(dref)) > 1e-8)
            throw std::runtime_error("verify: tableau/dense mismatch");
          ++checks;
        }
      }
    }
  }
  out.extra["verify_checks"] = checks;
  out.extra["verify_ok"] = true;
  return out;
}

}  // namespace

// ---------------------------------------------------------------- api ----

ExperimentConfig ExperimentConfig::parse(const std::string& text) {
  ExperimentConfig c;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: expected key=value, got '" + t + "'");
    const std::string key = trim(t.substr(0, eq));
    if (key.empty()) throw std::invalid_argument("config: empty key");
    c.kv[key] = trim(t.substr(eq + 1));
  }
  return c;
}

std::string ExperimentConfig::str(const std::string& key,
                                  const std::string& fallback) const {
  const auto it = kv.find(key);
  return it == kv.end() ? fallback : it->second;
}

double ExperimentConfig::num(const std::string& key, double fallback) const {
  const auto it = kv.find(key);
  return it == kv.end() ? fallback : to_num(key, it->second);
}

std::vector<double> ExperimentConfig::grid(const std::string& key,
                                           double fallback) const {
  if (has(key + "_min")) {
    const double lo = num(key + "_min", 0), hi = num(key + "_max", lo);
    const double step = num(key + "_step", 1);
    if (step <= 0 || hi < lo)
      throw std::invalid_argument("config: bad grid for '" + key + "'");
    std::vector<double> g;
    for (double v = lo; v <= hi + step * 1e-9; v += step) g.push_back(v);
    return g;
  }
  return {num(key, fallback)};
}

std::vector<size_t> ExperimentConfig::size_list(const std::string& key,
                                                size_t fallback) const {
  const auto it = kv.find(key);
  if (it == kv.end()) return {fallback};
  std::vector<size_t> out;
  std::istringstream in(it->second);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    const double v = to_num(key, trim(tok));
    if (v < 1 || v != std::floor(v))
      throw std::invalid_argument("config: bad size in '" + key + "'");
    out.push_back(static_cast<size_t>(v));
  }
  if (out.empty()) throw std::invalid_argument("config: empty list '" + key + "'");
  return out;
}

std::string csv_text(const std::vector<RunRecord>& records) {
  std::ostringstream out;
  out << "model,q,lx,ly,param,region,sample,seed,value\n";
  for (const auto& r : records)
    out << r.model << ',' << r.q << ',' << r.lx << ',' << r.ly << ','
        << fmt17(r.param) << ',' << r.region << ',' << r.sample << ','
        << r.seed << ',' << fmt17(r.value) << '\n';
  return out.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
}

const char* version_string() { return "miptsim-0.1.0-g0"; }

int run_config_text(const std::string& text, std::string& error) {
  RunOutput result;
  ExperimentConfig cfg;
  std::string command;
  try {
    cfg = ExperimentConfig::parse(text);
    command = cfg.str("command", "");
    if (command == "graph-scan")
      result = do_graph_scan(cfg, false);
    else if (command == "clifford-scan")
      result = do_graph_scan(cfg, true);
    else if (command == "graph-critical")
      result = do_graph_critical(cfg);
    else if (command == "mutual-info")
      result = do_mutual_info(cfg);
    else if (command == "purify")
      result = do_purify(cfg, false);
    else if (command == "clifford-purify")
      result = do_purify(cfg, true);
    else if (command == "couplings")
      result = do_couplings(cfg);
    else if (command == "rbim-mc")
      result = do_rbim(cfg);
    else if (command == "verify")
      result = do_verify(cfg);
    else
      throw std::invalid_argument("config: unknown command '" + command + "'");
  } catch (const std::exception& e) {
    error = e.what();
    return 2;
  }
  try {
    ordered_json summary;
    summary["version"] = version_string();
    summary["config"] = ordered_json::object();
    for (const auto& [k, v] : cfg.kv) summary["config"][k] = v;
    summary["fits"] = ordered_json::array();
    for (const auto& f : result.fits) summary["fits"].push_back(fit_json(f));
    for (auto& [k, v] : result.extra.items()) summary[k] = v;
    const std::string csv_path = cfg.str("out_csv", "");
    const std::string json_path = cfg.str("out_json", "");
    const std::string svg_path = cfg.str("out_svg", "");
    if (!csv_path.empty()) write_file(csv_path, csv_text(result.records));
    if (!json_path.empty()) write_file(json_path, summary.dump(2) + "\n");
    if (!svg_path.empty())
      write_file(svg_path, svg_plot(result.plot, result.plot_logx,
                                    result.plot_logy, result.plot_title));
    if (csv_path.empty() && json_path.empty()) {
      // No output files requested: print the summary for interactive use.
      std::fputs((summary.dump(2) + "\n").c_str(), stdout);
    }
  } catch (const std::exception& e) {
    error = e.what();
    return 2;
  }
  for (const auto& f : result.fits)
    if (!f.ok) {
      error = "fit '" + f.kind + "' failed";
      return 3;
    }
  return 0;
}

}  // namespace mipt
