#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "anderson/estimator.hpp"
#include "anderson/potential.hpp"

using namespace anderson;

TEST_CASE("grids") {
  const auto g = linspace(0.01, 3.99, 401);
  CHECK(g.size() == 401);
  CHECK(g.front() == 0.01);
  CHECK(g.back() == 3.99);
  CHECK(g[200] == doctest::Approx(2.0));
  const auto sp = special_energy_points(3);
  REQUIRE(sp.size() == 3);  // x = 2 appears once
  CHECK(sp[0] == doctest::Approx(1.0));
  CHECK(sp[2] == doctest::Approx(3.0));
  const auto dg = default_grid();
  CHECK(dg.size() > 401);
  CHECK(std::is_sorted(dg.begin(), dg.end()));
  CHECK(std::find(dg.begin(), dg.end(), beta_inverse(7)) != dg.end());
  CHECK_THROWS_AS(make_grid(10, 2.0, 1.0, 0), DomainError);
}

TEST_CASE("empirical IDS contract values") {
  const BernoulliParam p(0.3);
  const DisorderParam zeta(4.0);
  const std::vector<double> ends{-1.0, 9.0};
  const auto c = empirical_ids(p, zeta, 1000, ends, CountMode::Strict, Seed{1, 0});
  CHECK(c.values[0] == 0.0);
  CHECK(c.values[1] == 1.0);
  CHECK_FALSE(c.stderr_.has_value());
  const std::vector<double> outside{-2.0};
  CHECK_THROWS_AS(empirical_ids(p, zeta, 10, outside, CountMode::Strict, Seed{}), DomainError);
  CHECK_THROWS_AS(empirical_ids(p, zeta, 0, ends, CountMode::Strict, Seed{}), DomainError);
}

TEST_CASE("all-zero realization reproduces the free IDS") {
  // p tiny: the first 2000 draws contain no one for this seed.
  const BernoulliParam p(1e-9);
  const std::int64_t L = 2000;
  REQUIRE(sample_potential(p, L, Seed{4, 0}).ones() == 0);
  const auto xs = linspace(0.05, 3.95, 60);
  const auto c = empirical_ids(p, DisorderParam(4.0), L, xs, CountMode::Strict, Seed{4, 0});
  for (std::size_t i = 0; i < xs.size(); ++i) CHECK(std::abs(c.values[i] - free_ids(xs[i])) <= 2.0 / L);
}

TEST_CASE("monte carlo: reps = 1 equals a single realization and runs are deterministic") {
  const BernoulliParam p(0.3);
  const DisorderParam zeta(4.0);
  const auto xs = linspace(0.1, 3.9, 17);
  const auto a = monte_carlo_ids(p, zeta, 3000, 1, xs, CountMode::Strict, Seed{9, 0});
  const auto b = empirical_ids(p, zeta, 3000, xs, CountMode::Strict, Seed{9, 0});
  CHECK(a.values == b.values);
  CHECK_FALSE(a.stderr_.has_value());
  const auto c = monte_carlo_ids(p, zeta, 3000, 5, xs, CountMode::Strict, Seed{9, 0});
  const auto d = monte_carlo_ids(p, zeta, 3000, 5, xs, CountMode::Strict, Seed{9, 0});
  CHECK(c.values == d.values);
  CHECK(*c.stderr_ == *d.stderr_);
  CHECK(std::is_sorted(c.values.begin(), c.values.end()));
  CHECK_THROWS_AS(monte_carlo_ids(p, zeta, 3000, 0, xs, CountMode::Strict, Seed{}), DomainError);
}

TEST_CASE("stderr scales like 1/sqrt(reps)") {
  const BernoulliParam p(0.3);
  const std::vector<double> xs{0.7, 1.3, 2.4, 3.1};
  std::vector<double> lr, ls;
  for (std::int64_t reps : {4, 16, 64, 256}) {
    const auto c = monte_carlo_ids(p, DisorderParam(4.0), 2000, reps, xs, CountMode::Strict, Seed{12, 0});
    double mean_se = 0.0;
    for (double s : *c.stderr_) mean_se += s / xs.size();
    lr.push_back(std::log(static_cast<double>(reps)));
    ls.push_back(std::log(mean_se));
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < lr.size(); ++i) {
    mx += lr[i] / lr.size();
    my += ls[i] / ls.size();
  }
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < lr.size(); ++i) {
    sxy += (lr[i] - mx) * (ls[i] - my);
    sxx += (lr[i] - mx) * (lr[i] - mx);
  }
  CHECK(sxy / sxx == doctest::Approx(-0.5).epsilon(0.2));
}

TEST_CASE("strict and weak agree away from eigenvalues") {
  const auto xs = linspace(0.0137, 3.9871, 97);
  const auto s = monte_carlo_ids(BernoulliParam(0.4), DisorderParam(6.0), 4000, 3, xs, CountMode::Strict, Seed{2, 0});
  const auto w = monte_carlo_ids(BernoulliParam(0.4), DisorderParam(6.0), 4000, 3, xs, CountMode::Weak, Seed{2, 0});
  CHECK(s.values == w.values);
}

TEST_CASE("block IDS converges to the series") {
  const BernoulliParam half(0.5);
  const std::vector<double> two{2.0};
  const auto c = block_ids(half, SeriesVariant::CeilM1, 200000, two, Seed{21, 0});
  CHECK(std::abs(c.values[0] - 1.0 / 3.0) < 3.0 * c.stderr_at(0) + 1e-9);
  CHECK(c.stderr_at(0) > 0.0);
  CHECK(c.stderr_at(0) < 2e-3);

  const BernoulliParam p(0.3);
  for (auto v : {SeriesVariant::CeilM1, SeriesVariant::FloorM1, SeriesVariant::Ceil0, SeriesVariant::Floor0,
                 SeriesVariant::Neumann}) {
    const std::vector<double> xs{0.45, 1.7, 2.9};
    const auto b = block_ids(p, v, 200000, xs, Seed{22, 0});
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double series = bound_series(p, xs[i], {v});
      CHECK_MESSAGE(std::abs(b.values[i] - series) < 4.0 * b.stderr_at(i) + 1e-6,
                    to_string(v) << " x=" << xs[i]);
    }
  }

  // ET1 on block curves: the free spectrum is symmetric about 2, so on a
  // shared gap sample FLOOR_0 at x plus CEIL_M1 at 4-x is exactly sum(Y)/L_n.
  const std::vector<double> x1{1.3};
  const std::vector<double> x2{4.0 - 1.3};
  const auto f = block_ids(p, SeriesVariant::Floor0, 200000, x1, Seed{23, 0});
  const auto g = block_ids(p, SeriesVariant::CeilM1, 200000, x2, Seed{23, 0});
  const auto gaps = sample_gaps(p, 200000, Seed{23, 0});
  const double zeros = static_cast<double>(gaps.gap_sum()) / static_cast<double>(gaps.last_one());
  CHECK(f.values[0] + g.values[0] == doctest::Approx(zeros).epsilon(1e-14));
  CHECK(std::abs(zeros - 0.7) < 0.005);

  const auto single = block_ids(p, SeriesVariant::Floor0, 1, two, Seed{24, 0});
  CHECK(single.values[0] >= 0.0);
  CHECK(single.values[0] <= 1.0);
}

TEST_CASE("curve CSV") {
  const std::vector<double> xs{0.5, 2.0};
  const auto c = monte_carlo_ids(BernoulliParam(0.3), DisorderParam(4.0), 100, 2, xs, CountMode::Strict, Seed{1, 0});
  std::ostringstream os;
  write_curve_csv(os, c, {{"p", "0.3"}});
  const auto s = os.str();
  CHECK(s.rfind("# p=0.3\nenergy,value,stderr,p,zeta,L,reps,seed\n0.5,", 0) == 0);
  CHECK(std::count(s.begin(), s.end(), '\n') == 4);
}

TEST_CASE("size guard") {
  setenv("ANDERSON_IDS_MAX_SIZE", "100", 1);
  const std::vector<double> xs{1.0};
  CHECK_THROWS_AS(empirical_ids(BernoulliParam(0.3), DisorderParam(4.0), 101, xs, CountMode::Strict, Seed{}),
                  ResourceError);
  unsetenv("ANDERSON_IDS_MAX_SIZE");
}
