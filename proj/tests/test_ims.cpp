#include <doctest.h>

#include <cmath>
#include <random>

#include "lsc/error.hpp"
#include "lsc/ims.hpp"
#include "oracles.hpp"

using namespace lsc;

namespace {

double dense_norm(const SymmetricLatticeOperator& a) {
  auto ev = oracle::dsyev(a.dense(), static_cast<int>(a.size()));
  return std::max(std::abs(ev.front()), std::abs(ev.back()));
}

}  // namespace

TEST_CASE("profile η") {
  CHECK(ims_profile(0.0) == 1.0);
  CHECK(ims_profile(1.0) == 1.0);
  CHECK(ims_profile(-1.5) == 0.5);
  CHECK(ims_profile(2.0) == 0.0);
  CHECK(ims_profile(7.0) == 0.0);
}

TEST_CASE("partition of unity in one and two dimensions") {
  LatticeBox b1 = LatticeBox::interval(-40, 40);
  auto eta = ims_partition({{-15.0}, {15.0}}, 10.0, b1);
  REQUIRE(eta.size() == 3);
  for (std::size_t i = 0; i < b1.size(); ++i) {
    double s = 0.0;
    for (const auto& e : eta) s += e[i] * e[i];
    CHECK(s == doctest::Approx(1.0).epsilon(1e-15));
  }
  CHECK(eta[1][b1.index(-15L)] == 1.0);
  CHECK(eta[0][b1.index(-15L)] == 0.0);

  LatticeBox b2 = LatticeBox::symmetric(2, 12);
  auto eta2 = ims_partition({{-5.0, 0.0}, {5.0, 0.0}}, 4.0, b2);
  for (std::size_t i = 0; i < b2.size(); ++i) {
    double s = 0.0;
    for (const auto& e : eta2) s += e[i] * e[i];
    CHECK(s == doctest::Approx(1.0).epsilon(1e-15));
  }
}

TEST_CASE("overlapping supports are rejected") {
  try {
    ims_partition({{-5.0}, {5.0}}, 6.0, LatticeBox::interval(-20, 20));
    FAIL("expected OverlappingSupports");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OverlappingSupports);
  }
}

TEST_CASE("IMS identity holds on random potentials") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    LatticeBox box = trial % 2 ? LatticeBox::interval(-60, 60) : LatticeBox::symmetric(2, 9);
    std::vector<double> w(box.size());
    for (auto& x : w) x = 10.0 * u(rng);
    auto H = assemble(box, 0.5 + u(rng), w);
    std::vector<Point> centres;
    if (box.dim() == 1)
      centres = {{-30.0 + 5 * u(rng)}, {25.0 + 5 * u(rng)}};
    else
      centres = {{-4.0, 0.0}, {4.0, 1.0}};
    auto eta = ims_partition(centres, box.dim() == 1 ? 12.0 : 3.5, box);
    CHECK(ims_identity_residual(H, eta) <= 1e-12);
  }
}

TEST_CASE("remainder agrees with ½Σ[η,[η,L]]") {
  LatticeBox box = LatticeBox::interval(-30, 30);
  auto L = assemble_laplacian(box);
  auto eta = ims_partition({{0.0}}, 9.0, box);
  auto rem = ims_remainder(L, eta);
  std::vector<SymmetricLatticeOperator> dc;
  for (const auto& e : eta) dc.push_back(double_commutator(L, e));
  for (std::size_t i = 0; i < box.size(); ++i)
    for (std::size_t j = i; j < std::min(i + 2, box.size()); ++j) {
      double s = 0.0;
      for (const auto& k : dc) s += 0.5 * k.entry(i, j);
      CHECK(rem.entry(i, j) == doctest::Approx(s).epsilon(1e-14).scale(1.0));
    }
}

TEST_CASE("double commutator entries and norm bounds") {
  LatticeBox box = LatticeBox::interval(-25, 25);
  auto L = assemble_laplacian(box);
  std::vector<double> eta(box.size());
  for (std::size_t i = 0; i < box.size(); ++i) eta[i] = ims_profile(2.0 * std::abs(box.coord(i, 0)) / 10.0);
  auto k = double_commutator(L, eta);
  auto dense_l = L.dense();
  const std::size_t n = box.size();
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(k.entry(i, i) == 0.0);
    if (i + 1 < n) {
      double d = eta[i] - eta[i + 1];
      CHECK(k.entry(i, i + 1) == doctest::Approx(dense_l[i * n + i + 1] * d * d));
    }
  }
  double c = max_step_variation(box, eta);
  CHECK(c == doctest::Approx(0.2));
  auto up = spectral_norm_upper(k);
  auto lo = spectral_norm_lower(k);
  CHECK(up.exact);
  double ref = dense_norm(k);
  CHECK(up.value >= ref * (1 - 1e-12));
  CHECK(up.value <= ref * (1 + 1e-12));
  CHECK(lo.value <= up.value);
  CHECK(up.value <= 2.0 * dense_norm(L) * c * c);
}

TEST_CASE("norm estimates in two dimensions bracket the dense value") {
  LatticeBox box = LatticeBox::symmetric(2, 6);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  std::vector<double> w(box.size());
  for (auto& x : w) x = u(rng);
  auto op = assemble(box, 1.0, w);
  double ref = dense_norm(op);
  auto up = spectral_norm_upper(op);
  auto lo = spectral_norm_lower(op);
  CHECK_FALSE(up.exact);
  CHECK(up.value >= ref);
  CHECK(lo.value <= ref * (1 + 1e-12));
  CHECK(lo.value >= 0.5 * ref);
}

TEST_CASE("laplace part removes the potential") {
  auto H = assemble(LatticeBox::interval(-5, 5), 2.0, std::vector<double>(11, 3.0));
  auto L = laplace_part(H);
  for (std::size_t i = 0; i < 11; ++i) CHECK(L.diagonal()[i] == doctest::Approx(4.0));
  CHECK(L.entry(0, 1) == H.entry(0, 1));
}

TEST_CASE("identity check rejects a broken partition") {
  auto H = assemble_laplacian(LatticeBox::interval(-5, 5));
  std::vector<std::vector<double>> eta{std::vector<double>(11, 0.5)};
  CHECK_THROWS_AS(ims_identity_residual(H, eta), Error);
}
