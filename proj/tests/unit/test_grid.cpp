#include <cmath>
#include <filesystem>
#include <random>

#include "doctest.h"
#include "strichartz/error.hpp"
#include "strichartz/fft.hpp"
#include "strichartz/grid.hpp"
#include "strichartz/state_io.hpp"

using namespace strichartz;

TEST_CASE("grid geometry") {
  const TensorGrid g(2, 1, {4.0, 2.0}, {16, 8});
  CHECK(g.size() == 128);
  CHECK(g.cell_volume() == doctest::Approx(0.5 * 0.5));
  CHECK(g.axis(0).coordinate(0) == -4.0);
  CHECK(g.axis(1).wavenumber(1) == doctest::Approx(2 * M_PI / 4.0));
  CHECK(g.axis(1).wavenumber(7) == doctest::Approx(-2 * M_PI / 4.0));
  std::vector<int> idx;
  g.unravel(8 * 3 + 5, idx);
  CHECK(idx == std::vector<int>{3, 5});
  CHECK(g.point(8 * 3 + 5)(1) == doctest::Approx(-2.0 + 5 * 0.5));
  CHECK_THROWS_AS(TensorGrid(1, 1, {1.0}, {12}), Error);
}

TEST_CASE("fft matches a direct DFT") {
  const int n = 16;
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  std::vector<std::complex<double>> a(n), ref(n);
  for (auto& z : a) z = {g(rng), g(rng)};
  for (int k = 0; k < n; ++k) {
    std::complex<double> s = 0;
    for (int j = 0; j < n; ++j) s += a[j] * std::polar(1.0, -2 * M_PI * j * k / n);
    ref[k] = s;
  }
  auto b = a;
  fft_inplace(b.data(), {n}, {0}, FftDirection::Forward);
  for (int k = 0; k < n; ++k) CHECK(std::abs(b[k] - ref[k]) < 1e-12);
  fft_inplace(b.data(), {n}, {0}, FftDirection::Backward);
  // Backward is unnormalized: divide by n to recover the input.
  for (int k = 0; k < n; ++k) CHECK(std::abs(b[k] / double(n) - a[k]) < 1e-12);
}

TEST_CASE("gaussian state is normalized with the prescribed moments") {
  const auto g = TensorGrid::uniform(1, 1, 20.0, 256);
  GaussianSpec spec;
  spec.center = Eigen::VectorXd::Constant(1, 1.5);
  spec.width = Eigen::VectorXd::Constant(1, 0.8);
  spec.momentum = Eigen::VectorXd::Constant(1, 2.0);
  const auto u = gaussian_state(g, spec);
  CHECK(u.norm() == doctest::Approx(1.0).epsilon(1e-12));
  double mean = 0, var = 0;
  for (int i = 0; i < 256; ++i) {
    const double x = g->axis(0).coordinate(i), w = std::norm(u.values()[i]) * g->cell_volume();
    mean += x * w;
    var += x * x * w;
  }
  var -= mean * mean;
  CHECK(mean == doctest::Approx(1.5).epsilon(1e-10));
  // |u|^2 ~ exp(-(x-c)^2/s^2) has variance s^2/2.
  CHECK(var == doctest::Approx(0.32).epsilon(1e-10));
  CHECK(boundary_mass(u) < 1e-20);
}

TEST_CASE("random field states are grid independent and seeded") {
  RandomFieldSpec spec;
  const auto a = random_field_state(TensorGrid::uniform(1, 1, 10.0, 128), spec, 42);
  const auto b = random_field_state(TensorGrid::uniform(1, 1, 10.0, 128), spec, 42);
  const auto c = random_field_state(TensorGrid::uniform(1, 1, 10.0, 128), spec, 43);
  CHECK(distance(a, b) == 0.0);
  CHECK(distance(a, c) > 1e-3);
  const auto fine = random_field_state(TensorGrid::uniform(1, 1, 10.0, 256), spec, 42);
  // Every other fine-grid sample coincides with the coarse one.
  for (int i = 0; i < 128; ++i) CHECK(std::abs(fine.values()[2 * i] - a.values()[i]) < 1e-10);
}

TEST_CASE("inner product and arithmetic") {
  const auto g = TensorGrid::uniform(2, 1, 5.0, 16);
  const auto u = gaussian_state(g);
  StateVector v = cplx(0.0, 2.0) * u;
  CHECK(std::abs(u.inner(v) - cplx(0.0, 2.0 * u.norm_squared())) < 1e-12);
  CHECK((v - u).norm_squared() == doctest::Approx(5.0 * u.norm_squared()));
  const auto other = gaussian_state(TensorGrid::uniform(2, 1, 5.0, 32));
  CHECK_THROWS_AS(u.require_compatible(other), Error);
}

TEST_CASE("binary snapshot round trip") {
  const auto g = TensorGrid::uniform(2, 1, 3.0, 8);
  const auto u = random_field_state(g, {}, 9);
  const auto path = std::filesystem::temp_directory_path() / "strichartz_roundtrip.bin";
  write_state_binary(path, u);
  const auto back = read_state_binary(path);
  CHECK(back.grid() == u.grid());
  CHECK(distance(back, u) == 0.0);
  std::filesystem::remove(path);
  CHECK(state_csv(u).find('\n') != std::string::npos);
}
