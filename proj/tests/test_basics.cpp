// Dates, number formatting, the random source, descriptive statistics and
// the dense linear algebra kernels.

#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numeric>
#include <set>

#include "scimetrics/date.hpp"
#include "scimetrics/error.hpp"
#include "scimetrics/format.hpp"
#include "scimetrics/linalg.hpp"
#include "scimetrics/rng.hpp"
#include "scimetrics/stats.hpp"

using namespace scim;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::internal;
}

}  // namespace

TEST_CASE("dates parse strictly and round-trip") {
  CHECK(format_date(parse_date("2004-02-29")) == "2004-02-29");
  CHECK(parse_date("2000-01-01") == make_date(2000, 1, 1));
  for (const char* bad : {"2003-02-29", "2000-13-01", "2000-1-01", "20000101", "", "2000-01-0x"})
    CHECK(code_of([&] { parse_date(bad); }) == ErrorCode::invalid_argument);
}

TEST_CASE("completed months between dates") {
  CHECK(months_between(parse_date("2000-01-15"), parse_date("2000-02-14")) == 0);
  CHECK(months_between(parse_date("2000-01-15"), parse_date("2000-02-15")) == 1);
  CHECK(months_between(parse_date("2000-01-15"), parse_date("2001-01-15")) == 12);
  CHECK(months_between(parse_date("2000-03-01"), parse_date("2000-01-15")) == -1);
  CHECK(months_between(parse_date("2000-01-31"), parse_date("2000-01-31")) == 0);
  CHECK(add_months(parse_date("2001-01-31"), 1) == parse_date("2001-02-28"));
  CHECK(whole_years_between(parse_date("2000-01-01"), parse_date("2001-01-01")) == 1);
  CHECK(whole_years_between(parse_date("2000-01-01"), parse_date("2000-12-31")) == 0);
}

TEST_CASE("month windows and date ranges") {
  const auto w = parse_month_window("0:6");
  CHECK(w.start == 0);
  CHECK(w.end == 6);
  CHECK(w.contains(5));
  CHECK_FALSE(w.contains(6));
  const auto open = parse_month_window("12:");
  CHECK(open.start == 12);
  CHECK_FALSE(open.end.has_value());
  CHECK(open.contains(500));
  CHECK(parse_month_window("3:3").degenerate());
  CHECK(code_of([] { parse_month_window("6"); }) == ErrorCode::invalid_argument);
  CHECK(code_of([] { parse_month_window("a:4"); }) == ErrorCode::invalid_argument);

  const auto r = parse_date_range("2001-01-01:2002-01-01");
  CHECK(r.contains(parse_date("2001-06-01")));
  CHECK_FALSE(r.contains(parse_date("2002-01-01")));
  CHECK(parse_date_range(":").unbounded());
}

TEST_CASE("nine significant digits everywhere") {
  CHECK(format9(0.1) == "0.1");
  CHECK(format9(1.0 / 3.0) == "0.333333333");
  CHECK(format9(123456789012.0) == "1.23456789e+11");
  CHECK(format9(std::nan("")) == "");
  CHECK(round9(1.0 / 3.0) == 0.333333333);
  CHECK(format_cell(std::nullopt) == "");
  CHECK(split("a,,b", ',') == std::vector<std::string>{"a", "", "b"});
  CHECK(trim("  x y \t") == "x y");
}

TEST_CASE("random source is reproducible per seed and stream") {
  Rng a(7), b(7), c(7, 1), e(8);
  std::vector<std::uint64_t> sa, sb, sc, se;
  for (int i = 0; i < 100; ++i) {
    sa.push_back(a.next());
    sb.push_back(b.next());
    sc.push_back(c.next());
    se.push_back(e.next());
  }
  CHECK(sa == sb);
  CHECK(sa != sc);
  CHECK(sa != se);
}

TEST_CASE("uniform and bounded draws stay in range") {
  Rng rng(1);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 20000; ++i) {
    const double u = rng.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    const auto k = rng.below(7);
    REQUIRE(k < 7);
    seen.insert(k);
  }
  CHECK(seen.size() == 7);
}

TEST_CASE("normal and Poisson moments match their parameters") {
  // Sample means must land within 5 standard errors of the truth.
  Rng rng(2024);
  const int n = 200000;
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = rng.normal();
    s += x;
    s2 += x * x;
  }
  CHECK(std::fabs(s / n) < 5.0 / std::sqrt(n));
  CHECK(std::fabs(s2 / n - 1.0) < 5.0 * std::sqrt(2.0 / n));

  for (double lambda : {0.5, 3.0, 29.0, 30.0, 120.0}) {
    double sum = 0.0, sum2 = 0.0;
    const int m = 100000;
    for (int i = 0; i < m; ++i) {
      const auto k = rng.poisson(lambda);
      REQUIRE(k >= 0);
      sum += static_cast<double>(k);
      sum2 += static_cast<double>(k) * static_cast<double>(k);
    }
    const double mean_k = sum / m;
    const double var_k = sum2 / m - mean_k * mean_k;
    CAPTURE(lambda);
    CHECK(std::fabs(mean_k - lambda) < 5.0 * std::sqrt(lambda / m));
    CHECK(std::fabs(var_k / lambda - 1.0) < 0.05);
  }
  CHECK(rng.poisson(0.0) == 0);
}

TEST_CASE("shuffle is a permutation") {
  Rng rng(3);
  std::vector<int> v(50);
  std::iota(v.begin(), v.end(), 0);
  auto w = v;
  rng.shuffle(std::span<int>(w));
  CHECK(w != v);
  std::sort(w.begin(), w.end());
  CHECK(w == v);
}

TEST_CASE("descriptive statistics on hand-checked data") {
  const std::vector<double> x = {2, 4, 4, 4, 5, 5, 7, 9};
  CHECK(mean(x) == doctest::Approx(5.0));
  CHECK(sample_sd(x) == doctest::Approx(std::sqrt(32.0 / 7.0)));
  CHECK(average_ranks(std::vector<double>{10, 20, 20, 30}) == std::vector<double>{1, 2.5, 2.5, 4});
  CHECK(average_ranks(std::vector<double>{3, 1, 2}) == std::vector<double>{3, 1, 2});
}

TEST_CASE("Pearson and Spearman") {
  const std::vector<double> x = {1, 2, 3, 4, 5};
  const std::vector<double> y = {2, 1, 4, 3, 5};
  // textbook value: cov = 8/4, var_x = var_y = 10/4
  CHECK(pearson(x, y) == doctest::Approx(0.8));
  const std::vector<double> cube = {1, 8, 27, 64, 125};
  CHECK(spearman(x, cube) == doctest::Approx(1.0));
  CHECK(pearson(x, cube) < 1.0);
  const std::vector<double> rev = {5, 4, 3, 2, 1};
  CHECK(spearman(x, rev) == doctest::Approx(-1.0));
  CHECK_THROWS_AS(pearson(std::vector<double>{1, 2}, std::vector<double>{1, 2}), Error);
  CHECK_THROWS_AS(pearson(x, std::vector<double>{1, 1, 1, 1, 1}), Error);
  CHECK_THROWS_AS(pearson(x, std::vector<double>{1, 2, 3}), Error);
}

TEST_CASE("standardize skips missing values and flags constant columns") {
  const std::vector<std::optional<double>> col = {1.0, std::nullopt, 3.0, 5.0};
  const auto st = standardize(col);
  CHECK_FALSE(st.constant);
  CHECK(st.mean == doctest::Approx(3.0));
  CHECK(st.sd == doctest::Approx(2.0));
  CHECK(*st.values[0] == doctest::Approx(-1.0));
  CHECK_FALSE(st.values[1].has_value());
  CHECK(*st.values[3] == doctest::Approx(1.0));
  CHECK(standardize(std::vector<std::optional<double>>{2.0, 2.0, std::nullopt}).constant);
  CHECK(standardize(std::vector<std::optional<double>>{2.0}).constant);
}

TEST_CASE("Cholesky solve agrees with Eigen on random SPD systems") {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.below(8);
    Eigen::MatrixXd b(n + 3, n);
    for (Eigen::Index i = 0; i < b.rows(); ++i)
      for (Eigen::Index j = 0; j < b.cols(); ++j) b(i, j) = rng.normal();
    const Eigen::MatrixXd spd = b.transpose() * b + 0.1 * Eigen::MatrixXd::Identity(n, n);
    Eigen::VectorXd rhs(n);
    for (std::size_t i = 0; i < n; ++i) rhs(i) = rng.normal();
    const Eigen::VectorXd expected = spd.llt().solve(rhs);

    Matrix a(n, n);
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n; ++i) {
      r[i] = rhs(i);
      for (std::size_t j = 0; j < n; ++j) a(i, j) = spd(i, j);
    }
    const auto x = solve_spd(a, r);
    for (std::size_t i = 0; i < n; ++i)
      REQUIRE(x[i] == doctest::Approx(expected(i)).epsilon(1e-9));
  }
}

TEST_CASE("Cholesky rejects indefinite matrices") {
  Matrix a(2, 2);
  a(0, 0) = 1;
  a(0, 1) = a(1, 0) = 2;
  a(1, 1) = 1;
  CHECK(code_of([&] { solve_spd(a, std::vector<double>{1, 1}); }) == ErrorCode::unprocessable);
}

TEST_CASE("Jacobi eigenpairs agree with Eigen") {
  Rng rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.below(8);
    Eigen::MatrixXd s(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j <= i; ++j) s(i, j) = s(j, i) = rng.normal();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> oracle(s);
    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = s(i, j);
    const auto ev = jacobi_eigen(a);
    REQUIRE(ev.values.size() == n);
    for (std::size_t k = 0; k < n; ++k) {
      // Eigen sorts ascending, ours descending
      REQUIRE(ev.values[k] == doctest::Approx(oracle.eigenvalues()(n - 1 - k)).epsilon(1e-8));
      Eigen::VectorXd v(n);
      for (std::size_t i = 0; i < n; ++i) v(i) = ev.vectors(i, k);
      REQUIRE((s * v - ev.values[k] * v).norm() < 1e-8 * (1.0 + s.norm()));
      REQUIRE(v.norm() == doctest::Approx(1.0));
    }
  }
}
