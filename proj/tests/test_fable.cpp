#include <doctest.h>

#include <bit>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "lapkit/assembly.hpp"
#include "lapkit/fable.hpp"
#include "lapkit/reorder.hpp"
#include "support.hpp"

using namespace lapkit;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> random_vector(std::mt19937& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-kPi, kPi);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

// Angle seen by control state c after the Gray walk: sum_k theta_hat[k] (-1)^{c . gray(k)}.
std::vector<double> gray_walk_angles(const std::vector<double>& theta_hat) {
  std::vector<double> out(theta_hat.size(), 0.0);
  for (std::size_t c = 0; c < out.size(); ++c) {
    for (std::size_t k = 0; k < out.size(); ++k) {
      const std::size_t g = k ^ (k >> 1);
      out[c] += (std::popcount(c & g) % 2 ? -1.0 : 1.0) * theta_hat[k];
    }
  }
  return out;
}

}  // namespace

TEST_CASE("angles of small matrices") {
  CHECK(matrix_to_angles(from_triplets(2, 2, {})) == std::vector<double>{kPi, kPi, kPi, kPi});
  CHECK(matrix_to_angles(identity_matrix(2)) == std::vector<double>{0.0, kPi, kPi, 0.0});
  const auto ones = from_triplets(2, 2, {{0, 0, 1}, {0, 1, 1}, {1, 0, 1}, {1, 1, 1}});
  CHECK(matrix_to_angles(ones) == std::vector<double>(4, 0.0));
  // Row-major: entry (0,1) lands at index 1.
  const auto th = matrix_to_angles(from_triplets(2, 2, {{0, 1, 0.5}}));
  CHECK(th[1] == doctest::Approx(2 * std::acos(0.5)));
  expect_error(ErrorCode::EntryOutOfRange, [] { matrix_to_angles(from_triplets(2, 2, {{0, 0, 1.5}})); });
  expect_error(ErrorCode::NonPowerOfTwo, [] { matrix_to_angles(identity_matrix(3)); });
}

TEST_CASE("transform of simple vectors") {
  std::vector<double> c(16, 0.7);
  gray_walsh_transform(c);
  CHECK(c[0] == doctest::Approx(0.7));
  for (std::size_t k = 1; k < c.size(); ++k) CHECK(c[k] == 0.0);

  std::vector<double> e0 = {1, 0, 0, 0};
  gray_walsh_transform(e0);
  for (double v : e0) CHECK(std::abs(v) == doctest::Approx(0.25));

  std::vector<double> bad(8, 1.0);
  expect_error(ErrorCode::BadLength, [&] { gray_walsh_transform(bad); });
}

TEST_CASE("transform solves the Gray-walk rotation system") {
  std::mt19937 rng(3);
  for (std::size_t n : {4u, 16u, 64u, 256u}) {
    const auto theta = random_vector(rng, n);
    auto hat = theta;
    gray_walsh_transform(hat);
    const auto back = gray_walk_angles(hat);
    for (std::size_t i = 0; i < n; ++i) CHECK(back[i] == doctest::Approx(theta[i]).epsilon(1e-12));
  }
}

TEST_CASE("inverse and linearity") {
  std::mt19937 rng(7);
  double worst = 0.0;
  for (std::size_t n = 4; n <= (1u << 12); n *= 4) {
    for (int rep = 0; rep < 20; ++rep) {
      const auto a = random_vector(rng, n);
      const auto b = random_vector(rng, n);
      auto ha = a, hb = b;
      gray_walsh_transform(ha);
      gray_walsh_transform(hb);
      std::vector<double> mix(n);
      for (std::size_t i = 0; i < n; ++i) mix[i] = 2.5 * a[i] - 0.5 * b[i];
      gray_walsh_transform(mix);
      for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(mix[i] - (2.5 * ha[i] - 0.5 * hb[i])));
      inverse_gray_walsh_transform(ha);
      for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(ha[i] - a[i]));
    }
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("rotation counts") {
  const auto zero = fable_stats(from_triplets(4, 4, {}));
  CHECK(zero.num_rotations == 1);
  CHECK(zero.total_qubits == 5);

  const auto sys = assemble_case(load_case(cases_path("l3d_4x8x8_channel.xml")));
  const auto orig = fable_stats(sys.matrix);
  CHECK(orig.n == 8);
  CHECK(orig.total_qubits == 17);
  CHECK(std::abs(orig.normalized_count - 0.25) <= 0.05);
  const auto re = fable_stats(permute_system(sys, shell_order(sys.lattice)).matrix);
  CHECK(std::abs(re.normalized_count - 1.0) <= 0.05);
  CHECK(fable_stats(sys.matrix).num_rotations == orig.num_rotations);
  CHECK(orig.normalized_count >= 0.0);
  CHECK(re.normalized_count <= 1.0);
}

TEST_CASE("uniform Repeat operators compress far below clustered Dirichlet ones") {
  AssemblyOptions o;
  o.allow_degenerate = true;
  for (int n : {16, 32, 64, 128}) {
    const auto rep = fable_stats(assemble_case(load_case(cases_path("l1d_" + std::to_string(n) + "_rr.xml")), o).matrix);
    const auto dir = fable_stats(assemble_case(load_case(cases_path("l1d_" + std::to_string(n) + "_dd.xml"))).matrix);
    CHECK(rep.normalized_count < dir.normalized_count);
  }
}
