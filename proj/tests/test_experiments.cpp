#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "experiments.hpp"

using namespace mipt;

namespace {

SimOptions graph_opts(size_t lx, size_t ly, double px) {
  SimOptions o;
  o.model = Model::kGraph;
  o.q = 2;
  o.lattice = {lx, ly};
  o.policy.p_x = px;
  return o;
}

SimOptions clifford_opts(size_t lx, size_t ly, size_t t, double p) {
  SimOptions o;
  o.model = Model::kClifford;
  o.q = 2;
  o.lattice = {lx, ly};
  o.circuit = {t, p};
  return o;
}

}  // namespace

TEST_CASE("p_x = 0: every interval has S_A = 2") {
  auto o = graph_opts(16, 8, 0.0);
  std::vector<Interval> regions;
  for (size_t la = 2; la + 2 <= 16; ++la) regions.push_back({3, la});
  const auto recs = run_strip_entropy(o, regions, 2, 11);
  for (const auto& r : recs) CHECK(r.value == 2.0);
}

TEST_CASE("streaming equals the full-lattice reference") {
  // Exhaustive small-instance differential suite over models, q, geometry.
  std::vector<Interval> regions = {{0, 2}, {1, 3}, {2, 4}, {0, 6}};
  for (double px : {0.0, 0.3, 0.7, 1.0}) {
    for (uint32_t q : {2u, 3u}) {
      for (size_t ly : {4ul, 7ul, 12ul}) {
        SimOptions o = graph_opts(8, ly, px);
        o.q = q;
        auto a = run_strip_entropy(o, regions, 3, 99);
        o.streaming = false;
        auto b = run_strip_entropy(o, regions, 3, 99);
        REQUIRE(a.size() == b.size());
        for (size_t k = 0; k < a.size(); ++k) {
          CAPTURE(px);
          CAPTURE(q);
          CAPTURE(ly);
          CHECK(a[k].value == b[k].value);
        }
      }
    }
  }
  for (double p : {0.0, 0.5, 1.0}) {
    for (size_t t : {1ul, 2ul}) {
      SimOptions o = clifford_opts(8, 10, t, p);
      auto a = run_strip_entropy(o, regions, 3, 7);
      o.streaming = false;
      auto b = run_strip_entropy(o, regions, 3, 7);
      for (size_t k = 0; k < a.size(); ++k) {
        CAPTURE(p);
        CAPTURE(t);
        CHECK(a[k].value == b[k].value);
      }
    }
  }
}

TEST_CASE("streaming equals reference for the two-edge geometry") {
  for (double px : {0.2, 0.9}) {
    SimOptions o = graph_opts(6, 8, px);
    o.geometry = GeometryKind::kCylinderTwoEdge;
    const auto a = simulate_boundary(o, 13, 1);
    o.streaming = false;
    const auto b = simulate_boundary(o, 13, 1);
    CHECK(a.tab.entropy(a.top) == b.tab.entropy(b.top));
    CHECK(a.tab.entropy(a.bottom) == b.tab.entropy(b.bottom));
  }
  SimOptions o = clifford_opts(6, 9, 2, 0.8);
  o.geometry = GeometryKind::kCylinderTwoEdge;
  const auto a = simulate_boundary(o, 14, 0);
  o.streaming = false;
  const auto b = simulate_boundary(o, 14, 0);
  CHECK(a.tab.entropy(a.top) == b.tab.entropy(b.top));
}

TEST_CASE("p_x = 1 shows exact periodic oscillation of S_A vs Ly") {
  // Fig. 3: at p_x = 1 the half-interval entropy oscillates periodically
  // in Ly instead of converging.
  // The period comes out as Lx (e.g. 4 2 2 4 2 0 0 2 repeating for Lx = 8).
  const size_t lx = 8;
  std::vector<double> vals;
  for (size_t ly = 2; ly <= 2 + 2 * lx + 3; ++ly) {
    auto o = graph_opts(lx, ly, 1.0);
    const auto recs = run_strip_entropy(o, {{0, lx / 2}}, 1, 5);
    vals.push_back(recs[0].value);
  }
  bool periodic = true;
  for (size_t k = 0; k + lx < vals.size(); ++k)
    if (vals[k] != vals[k + lx]) periodic = false;
  CHECK(periodic);
  CHECK(*std::max_element(vals.begin(), vals.end()) >
        *std::min_element(vals.begin(), vals.end()));
}

TEST_CASE("deep-phase ordering: mean S_A larger at p_x = 1 than p_x = 0") {
  // At p_x = 1 the depth dependence is exactly periodic (period Lx), so
  // "steady state" is taken as the average over one full period of Ly.
  const size_t lx = 12;
  double s0 = 0, s1 = 0;
  for (size_t ly = lx; ly < 2 * lx; ++ly) {
    s0 += run_strip_entropy(graph_opts(lx, ly, 0.0), {{0, lx / 2}}, 1, 3)[0].value;
    s1 += run_strip_entropy(graph_opts(lx, ly, 1.0), {{0, lx / 2}}, 1, 3)[0].value;
  }
  CHECK(s1 >= s0);
}

TEST_CASE("mutual information records are sane") {
  auto o = graph_opts(16, 16, 0.0);
  const auto recs = run_mutual_info(o, 3, 5, 21);
  CHECK(recs.size() == 15);
  for (const auto& r : recs) {
    CHECK(r.value >= 0.0);  // subadditivity
    size_t xs[4];
    char c;
    std::istringstream iss(r.region);
    iss >> xs[0] >> c >> xs[1] >> c >> xs[2] >> c >> xs[3];
    CHECK(xs[0] < xs[1]);
    CHECK(xs[1] < xs[2]);
    CHECK(xs[2] < xs[3]);
  }
  // Deep area-law phase with far-separated short intervals: I_AB = 0. The
  // p_x = 0 boundary state is a 1D ring graph state; pick disjoint,
  // non-adjacent intervals by hand.
  const auto b = simulate_boundary(o, 21, 0);
  const std::vector<size_t> a_sites = {b.top[1], b.top[2]};
  const std::vector<size_t> c_sites = {b.top[8], b.top[9]};
  std::vector<size_t> ac = a_sites;
  ac.insert(ac.end(), c_sites.begin(), c_sites.end());
  CHECK(b.tab.entropy(a_sites) + b.tab.entropy(c_sites) ==
        b.tab.entropy(ac));
}

TEST_CASE("cross ratio") {
  CHECK_THROWS_AS(cross_ratio(1, 1, 3, 5, 16), std::domain_error);
  // Equally spaced points on the ring: eta = 1/2.
  CHECK(cross_ratio(0, 4, 8, 12, 16) == doctest::Approx(0.5).epsilon(1e-12));
  // Translation invariance: chord distances depend only on differences.
  const double base = cross_ratio(1, 2, 6, 11, 16);
  for (size_t shift : {1ul, 3ul, 4ul})
    CHECK(cross_ratio(1 + shift, 2 + shift, 6 + shift, 11 + shift, 16) ==
          doctest::Approx(base).epsilon(1e-12));
  // x2 -> x1 limit is small.
  CHECK(cross_ratio(0, 1, 50, 100, 200) < 0.02);
}

TEST_CASE("two-edge purification: p_x = 0 gives S_top = 0") {
  auto o = graph_opts(8, 3, 0.0);
  const auto recs = run_two_edge_purification(o, {3, 5, 8}, 2, 17);
  for (const auto& r : recs) CHECK(r.value == 0.0);
}

TEST_CASE("fit_alpha recovers synthetic Eq.-8 data exactly") {
  const double alpha = 3.27;
  const size_t lx = 256;
  std::vector<RunRecord> recs;
  for (size_t la = lx / 8; la <= lx / 2; la += 8) {
    const double chord = lx / M_PI * std::sin(M_PI * la / lx);
    recs.push_back({"graph", 2, lx, lx, 0.95, "0:" + std::to_string(la), 0, 1,
                    2 * alpha * std::log(chord)});
  }
  const auto f = fit_alpha(recs);
  REQUIRE(f.ok);
  CHECK(f.value == doctest::Approx(alpha).epsilon(1e-12));
  CHECK(f.stderr_ < 1e-9);
  CHECK_FALSE(fit_alpha({}).ok);
}

TEST_CASE("fit_delta recovers a synthetic power law exactly") {
  const double delta = 1.33;
  std::vector<RunRecord> recs;
  const size_t lx = 1000;
  // One record per geometric bin inside one decade of eta.
  for (size_t k = 0; k < 8; ++k) {
    const size_t x2 = 2 + k;  // small separations -> small eta
    const double eta = cross_ratio(0, x2, 500, 501 + k, lx);
    recs.push_back({"graph", 2, lx, lx, 0.95,
                    "0:" + std::to_string(x2) + ":500:" + std::to_string(501 + k),
                    k, 1, std::pow(eta, delta)});
  }
  const auto f = fit_delta(recs);
  REQUIRE(f.ok);
  CHECK(f.value == doctest::Approx(delta).epsilon(1e-9));
  CHECK_FALSE(fit_delta({}).ok);
}

TEST_CASE("fit_lambda recovers a synthetic exponential exactly") {
  const double lambda = 0.22;
  std::vector<RunRecord> recs;
  for (size_t ly = 3; ly <= 14; ++ly)
    recs.push_back({"graph", 2, 64, ly, 0.95, "top", ly, 1,
                    7.5 * std::exp(-lambda * static_cast<double>(ly))});
  const auto f = fit_lambda(recs);
  REQUIRE(f.ok);
  CHECK(f.value == doctest::Approx(lambda).epsilon(1e-9));
  // Clifford convention: abscissa pi Ly / Lx.
  std::vector<RunRecord> crecs;
  for (size_t ly = 4; ly <= 40; ly += 4)
    crecs.push_back({"clifford", 2, 32, ly, 0.744, "top", ly, 1,
                     3.0 * std::exp(-0.22 * M_PI * ly / 32.0)});
  const auto cf = fit_lambda(crecs);
  REQUIRE(cf.ok);
  CHECK(cf.value == doctest::Approx(0.22).epsilon(1e-9));
  CHECK_FALSE(fit_lambda({}).ok);
}

TEST_CASE("estimate_pc finds an exact common crossing") {
  std::vector<RunRecord> recs;
  const double pc = 0.95;
  for (size_t lx : {32ul, 64ul, 128ul})
    for (double p = 0.90; p < 0.995; p += 0.01)
      // S_A/log(lx) = 1 + (p - pc) * log(lx): crossing exactly at pc.
      recs.push_back({"graph", 2, lx, lx, p, "0:8", 0, 1,
                      std::log(static_cast<double>(lx)) *
                          (1.0 + (p - pc) * std::log(static_cast<double>(lx)))});
  const auto f = estimate_pc(recs);
  REQUIRE(f.ok);
  CHECK(f.value == doctest::Approx(pc).epsilon(1e-9));
  CHECK_FALSE(estimate_pc({}).ok);
}

TEST_CASE("records are reproducible and labeled correctly") {
  auto o = graph_opts(8, 8, 0.5);
  const auto a = run_strip_entropy(o, {{0, 4}}, 4, 123);
  const auto b = run_strip_entropy(o, {{0, 4}}, 4, 123);
  REQUIRE(a.size() == b.size());
  for (size_t k = 0; k < a.size(); ++k) {
    CHECK(a[k].value == b[k].value);
    CHECK(a[k].model == "graph");
    CHECK(a[k].param == 0.5);
    CHECK(a[k].seed == 123);
    CHECK(a[k].value == std::floor(a[k].value));  // integer dits
  }
  const auto c = run_strip_entropy(o, {{0, 4}}, 4, 124);
  bool any_diff = false;
  for (size_t k = 0; k < a.size(); ++k) any_diff |= a[k].value != c[k].value;
  CHECK(any_diff);
}
