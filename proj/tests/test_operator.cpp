#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

#include "lsc/error.hpp"
#include "lsc/operator.hpp"
#include "oracles.hpp"

using namespace lsc;

TEST_CASE("three-point Laplacian") {
  auto op = assemble_laplacian(LatticeBox::interval(-1, 1));
  auto ev = oracle::dsyev(op.dense(), 3);
  CHECK(ev[0] == doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-15));
  CHECK(ev[1] == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(ev[2] == doctest::Approx(2.0 + std::sqrt(2.0)).epsilon(1e-15));
  CHECK(op.is_laplace_type());
  CHECK(op.kinetic() == 1.0);
}

TEST_CASE("apply matches the dense matrix in two dimensions") {
  LatticeBox box({-3, -2}, {4, 3});
  std::vector<double> w(box.size());
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (auto& x : w) x = u(rng);
  auto op = assemble(box, 0.7, w);
  auto a = op.dense();
  std::vector<double> x(box.size());
  for (auto& v : x) v = u(rng) - 0.5;
  auto y = op.apply(x);
  auto ys = op.apply(x, false);
  const std::size_t n = box.size();
  for (std::size_t i = 0; i < n; ++i) {
    double ref = 0.0;
    for (std::size_t j = 0; j < n; ++j) ref += a[i * n + j] * x[j];
    CHECK(y[i] == doctest::Approx(ref).epsilon(1e-14));
    CHECK(ys[i] == y[i]);
    for (std::size_t j = 0; j < n; ++j) CHECK(a[i * n + j] == a[j * n + i]);
  }
  CHECK(op.bandwidth() == box.stride(0));
}

TEST_CASE("boundary rows and dropped neighbours") {
  LatticeBox box({0, 0}, {2, 2});
  auto op = assemble_laplacian(box);
  auto rows = op.boundary_rows();
  auto dropped = op.dropped_neighbours();
  std::size_t centre = box.index(std::vector<long>{1, 1});
  CHECK_FALSE(rows[centre]);
  CHECK(dropped[centre] == 0);
  CHECK(dropped[0] == 2);
  CHECK(dropped[box.index(std::vector<long>{1, 0})] == 1);
  for (double p : op.potential_part()) CHECK(p == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("triplets are row-sorted and dump writes them") {
  auto op = assemble_Hkappa(0.3, LatticeBox::interval(-2, 2));
  auto t = op.triplets();
  CHECK(t.size() == 5 + 2 * 4);
  for (std::size_t i = 1; i < t.size(); ++i)
    CHECK((t[i - 1].row < t[i].row || (t[i - 1].row == t[i].row && t[i - 1].col < t[i].col)));
  const std::string path = "test_operator_dump.csv";
  op.dump(path);
  std::ifstream in(path);
  std::string header, line;
  std::getline(in, header);
  CHECK(header == "row,col,value");
  std::size_t rows = 0, r, c;
  double v = 0.0;
  while (std::getline(in, line)) {
    REQUIRE(std::sscanf(line.c_str(), "%zu,%zu,%lf", &r, &c, &v) == 3);
    CHECK(v == op.entry(r, c));
    ++rows;
  }
  CHECK(rows == t.size());
  std::remove(path.c_str());
}

TEST_CASE("H_kappa diagonal is 2 + κ⁴x²") {
  const double kappa = 0.2;
  auto op = assemble_Hkappa(kappa, LatticeBox::interval(-5, 5));
  for (long x = -5; x <= 5; ++x)
    CHECK(op.diagonal()[static_cast<std::size_t>(x + 5)] == doctest::Approx(2.0 + std::pow(kappa, 4) * x * x));
}

TEST_CASE("harmonic H_N is (N²/2) H_kappa") {
  for (double gamma : {-0.5, 0.0, 0.5}) {
    ScalingParams p(16, gamma, 1.0);
    LatticeBox box = LatticeBox::interval(-30, 30);
    auto hn = assemble_HN(potentials::harmonic({1.0}), p, box);
    auto hk = assemble_Hkappa(p.kappa(), box);
    const double s = 0.5 * 16.0 * 16.0;
    for (std::size_t i = 0; i < box.size(); ++i) {
      CHECK(hn.diagonal()[i] == doctest::Approx(s * hk.diagonal()[i]).epsilon(1e-13));
      if (i + 1 < box.size()) CHECK(hn.entry(i, i + 1) == doctest::Approx(s * hk.entry(i, i + 1)).epsilon(1e-15));
    }
  }
}

TEST_CASE("modified potential places the spike at ±⌊κ^{-(1+δ)}⌋") {
  ModifiedPotentialParams mp(0.05, 0.25);
  CHECK(mp.spike_location() == static_cast<long>(std::floor(std::pow(0.05, -1.25))));
  CHECK(mp.spike_value() == doctest::Approx(std::pow(0.05, -0.25)));
  long xs = mp.spike_location();
  auto op = assemble_modified(mp, LatticeBox::interval(-xs - 3, xs + 3));
  auto plain = assemble_Hkappa(0.05, LatticeBox::interval(-xs - 3, xs + 3));
  for (long x = -xs - 3; x <= xs + 3; ++x) {
    std::size_t i = static_cast<std::size_t>(x + xs + 3);
    if (std::abs(x) == xs)
      CHECK(op.diagonal()[i] == doctest::Approx(2.0 + mp.spike_value()));
    else
      CHECK(op.diagonal()[i] == plain.diagonal()[i]);
  }
  CHECK_THROWS_AS(ModifiedPotentialParams(0.05, 0.5), Error);
  CHECK_THROWS_AS(ModifiedPotentialParams(0.05, 0.0), Error);
  CHECK_THROWS_AS(assemble_modified(mp, LatticeBox::interval(-3, 3)), Error);
}

TEST_CASE("restriction is the principal submatrix") {
  auto op = assemble_Hkappa(0.1, LatticeBox::interval(-10, 10));
  auto sub = restrict_to(op, LatticeBox::interval(2, 6));
  REQUIRE(sub.size() == 5);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) CHECK(sub.entry(i, j) == op.entry(i + 12, j + 12));
  CHECK_THROWS_AS(restrict_to(op, LatticeBox::interval(5, 12)), Error);
}

TEST_CASE("norm bound dominates the spectrum") {
  auto op = assemble_HN(potentials::double_well(), ScalingParams(8, 0.0), LatticeBox::interval(-20, 20));
  auto ev = oracle::dsyev(op.dense(), static_cast<int>(op.size()));
  CHECK(op.norm_bound() >= std::max(std::abs(ev.front()), std::abs(ev.back())));
  auto t = op.tridiagonal();
  CHECK(t.diag.size() == 41);
  CHECK(t.off.size() == 40);
}
