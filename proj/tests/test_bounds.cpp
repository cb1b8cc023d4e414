#include <doctest.h>

#include <cmath>
#include <vector>

#include "treeembed/bounds.hpp"

using namespace treeembed;

TEST_CASE("supermartingale_bound values") {
  CHECK(supermartingale_bound(18, 1.0 / 3) == doctest::Approx(0.51342).epsilon(1e-4));
  CHECK(supermartingale_bound(3, 1) == doctest::Approx(0.36788).epsilon(1e-4));
  // e^{-eps d / 18} with eps = 1/8, d = 144 and mu = (3/2) eps d
  CHECK(supermartingale_bound(1.5 * 144 / 8, 1.0 / 3) == doctest::Approx(std::exp(-144.0 / 8 / 18)));
  CHECK_THROWS(supermartingale_bound(1, 0));
  CHECK_THROWS(supermartingale_bound(1, 1.5));
  CHECK_THROWS(supermartingale_bound(0, 0.5));
}

TEST_CASE("supermartingale_bound is decreasing in mu and delta") {
  double prev = 1.0;
  for (double mu = 0.5; mu < 100; mu += 0.5) {
    const double b = supermartingale_bound(mu, 0.5);
    CHECK(b < prev);
    prev = b;
  }
  prev = 1.0;
  for (double delta = 0.05; delta <= 1.0; delta += 0.05) {
    const double b = supermartingale_bound(10, delta);
    CHECK(b < prev);
    prev = b;
  }
}

TEST_CASE("thresholds_c4") {
  auto a = thresholds_c4(102, 1.0 / 8);
  CHECK(a.max_tree_size == 1300);
  CHECK(a.max_tree_degree == 74);
  auto b = thresholds_c4(102, 1.0 / 16);
  CHECK(b.max_tree_size == 650);
  CHECK(b.max_tree_degree == 87);
  CHECK(b.occupancy_limit == doctest::Approx(2 * 102 / 16.0 + 2));
  CHECK(b.theorem_tag == "c4");
  CHECK_THROWS(thresholds_c4(20, 1.0 / 8));
  CHECK_THROWS(thresholds_c4(102, 0.2));
  CHECK_THROWS(thresholds_c4(102, 0.0));
}

TEST_CASE("thresholds_girth") {
  auto a = thresholds_girth(100, 3, 1.0 / 6);
  CHECK(a.max_tree_size == 41666);
  CHECK(a.max_tree_degree == 64);
  auto b = thresholds_girth(100, 2, 0.25);
  CHECK(b.max_tree_size == 625);
  CHECK(b.max_tree_degree == 48);
  CHECK_THROWS(thresholds_girth(100, 2, 0.3));
  CHECK_THROWS(thresholds_girth(100, 1, 0.1));
}

TEST_CASE("thresholds_kst") {
  auto a = thresholds_kst(256, 2, 2, false);
  CHECK(a.max_tree_size == 512);
  CHECK(a.max_tree_degree == 2);
  auto b = thresholds_kst(256, 2, 2, true);
  CHECK(b.max_tree_size == 512);
  CHECK(b.max_tree_degree == 1);
  CHECK(b.theorem_tag == "kst_strong");
  CHECK_THROWS(thresholds_kst(256, 1, 2, false));
}

TEST_CASE("threshold monotonicity in eps") {
  std::size_t size = 0, degree = SIZE_MAX;
  for (int i = 1; i <= 40; ++i) {
    const double eps = i / 320.0;  // up to 1/8
    const auto c = thresholds_c4(300, eps);
    CHECK(c.max_tree_size >= size);
    CHECK(c.max_tree_degree <= degree);
    size = c.max_tree_size;
    degree = c.max_tree_degree;
  }
  size = 0;
  degree = SIZE_MAX;
  for (int i = 1; i <= 40; ++i) {
    const double eps = i / 240.0;  // up to 1/6
    const auto g = thresholds_girth(300, 3, eps);
    CHECK(g.max_tree_size >= size);
    CHECK(g.max_tree_degree <= degree);
    size = g.max_tree_size;
    degree = g.max_tree_degree;
  }
  size = 0;
  for (int i = 1; i <= 20; ++i) {
    const auto p = thresholds_pseudo(1000, 5000, 3, i / 2000.0, 0.1);
    CHECK(p.max_tree_size >= size);
    size = p.max_tree_size;
  }
}

TEST_CASE("pseudo_params") {
  const auto a = pseudo_params(2, 1.0 / 32, 1.0 / 8);
  CHECK(a.feasible);
  CHECK(a.lhs == doctest::Approx(0.9786).epsilon(1e-3));
  CHECK(a.alpha == doctest::Approx(0.64645).epsilon(1e-4));
  CHECK_FALSE(pseudo_params(1, 0.3, 0.5).feasible);
  for (double delta : {1e-9, 1e-3, 0.1}) CHECK_FALSE(pseudo_params(2, 1.0 / 8, delta).feasible);
  CHECK_THROWS(thresholds_pseudo(100, 100, 2, 1.0 / 8, 0.01));
  const auto t = thresholds_pseudo(100, 1000, 2, 1.0 / 32, 1.0 / 8);
  CHECK(t.max_tree_size == 31);
  CHECK(t.max_tree_degree == 12);
  CHECK(t.occupancy_limit == doctest::Approx(50.0));
}

TEST_CASE("select_k") {
  CHECK(select_k(1'000'000, 1e-3) == 2);
  CHECK(select_k(10'000, 0.1) == 1);
  CHECK(select_k(10'000, 0.5) == 1);
  CHECK_THROWS(select_k(100, 0.6));
  CHECK_THROWS(select_k(100, 0.01));
}

TEST_CASE("select_k satisfies its window and is minimal") {
  for (std::size_t n : {1000u, 20000u, 1000000u})
    for (double p : {0.3, 0.05, 0.004, 0.0007}) {
      const double pn = p * static_cast<double>(n);
      if (pn < 2) continue;
      const double lo = 0.25 * std::pow(pn, -0.75), hi = 0.25 * std::pow(pn, 0.25);
      const std::size_t k = select_k(n, p);
      const double value = p * std::pow(pn, static_cast<double>(k) - 1);
      CHECK(value > lo);
      CHECK(value <= hi);
      for (std::size_t j = 1; j < k; ++j) {
        const double vj = p * std::pow(pn, static_cast<double>(j) - 1);
        CHECK_FALSE((vj > lo && vj <= hi));
      }
    }
}

TEST_CASE("empirical tail stays under the bound") {
  std::vector<double> means(200);
  for (std::size_t i = 0; i < means.size(); ++i) means[i] = 0.02 + 0.1 * static_cast<double>(i % 7) / 6;
  for (double delta : {0.25, 0.5, 1.0}) {
    const auto e = simulate_supermartingale_tail(means, delta, 20000, 5);
    CHECK(e.samples == 20000);
    CHECK(e.within(3.0));
  }
}

TEST_CASE("serial and parallel tail simulation agree") {
  const std::vector<double> means(50, 0.2);
  for (auto process : {TailProcess::independent, TailProcess::adaptive}) {
    const auto a = simulate_supermartingale_tail(means, 0.5, 5000, 13, process);
    const auto b = serial::simulate_supermartingale_tail(means, 0.5, 5000, 13, process);
    CHECK(a.exceedances == b.exceedances);
  }
  CHECK_THROWS(simulate_supermartingale_tail(std::vector<double>{1.5}, 0.5, 10, 0));
}
