#include <doctest.h>

#include <random>
#include <set>
#include <vector>

#include "lapkit/linalg.hpp"
#include "lapkit/reorder.hpp"
#include "support.hpp"

using namespace lapkit;

TEST_CASE("shell order on small grids") {
  CHECK(shell_order({2, 1, 1}, 1).pi == std::vector<Index>{0, 1});
  CHECK(shell_order({5, 1, 1}, 1).pi == std::vector<Index>{0, 1, 2, 3, 4});
  // (0,0) (1,0) (1,1) (0,1)
  CHECK(shell_order({2, 2, 1}, 2).pi == std::vector<Index>{0, 1, 3, 2});
}

TEST_CASE("shell order visits shells in increasing order") {
  for (const auto dims : {std::array<int, 3>{4, 8, 8}, std::array<int, 3>{7, 3, 1}, std::array<int, 3>{16, 16, 1}}) {
    const int dim = dims[2] > 1 ? 3 : 2;
    const auto perm = shell_order(dims, dim);
    CHECK(perm.is_bijection());
    const auto inv = perm.inverse();
    int last_shell = 0;
    for (Index r = 0; r < perm.size(); ++r) {
      const Index n = inv[r];
      const int i = static_cast<int>(n % dims[0]);
      const int j = static_cast<int>((n / dims[0]) % dims[1]);
      const int k = static_cast<int>(n / (static_cast<Index>(dims[0]) * dims[1]));
      const int s = std::max({i, j, k});
      CHECK(s >= last_shell);
      last_shell = s;
    }
  }
}

TEST_CASE("permutation operators") {
  const auto perm = shell_order({4, 4, 1}, 2);
  const auto P = perm.P();
  const auto Q = perm.Q();
  const auto PQ = permute_matrix(identity_matrix(16), perm);
  CHECK(PQ == identity_matrix(16));
  CHECK(transpose(P) == Q);
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<double> v(16);
  for (auto& x : v) x = u(rng);
  const auto pv = P.multiply(v);
  CHECK(pv == permute_vector(perm, v));
  CHECK(Q.multiply(pv) == v);
  CHECK(recover_solution(perm, permute_vector(perm, v)) == v);
}

TEST_CASE("recover_solution applies the stated bijection") {
  PermutationPair p;
  p.pi = {0, 1, 3, 2};
  const std::vector<double> phi = {10, 20, 30, 40};
  CHECK(recover_solution(p, phi) == std::vector<double>{10, 20, 40, 30});
  PermutationPair id;
  id.pi = {0, 1, 2};
  CHECK(recover_solution(id, std::vector<double>{1, 2, 3}) == std::vector<double>{1, 2, 3});
  expect_error(ErrorCode::SizeMismatch, [&] { recover_solution(id, std::vector<double>{1, 2}); });
}

TEST_CASE("permuted systems solve to the same field") {
  for (const char* file : {"l3d_4x8x8_channel.xml", "l2d_16x16_nnnn.xml"}) {
    const auto sys = assemble_case(load_case(cases_path(file)));
    const auto perm = shell_order(sys.lattice);
    const auto re = permute_system(sys, perm);
    CHECK(re.matrix.nnz() == sys.matrix.nnz());
    const auto phi = solve(sys);
    const auto back = recover_solution(perm, solve(re));
    for (std::size_t i = 0; i < phi.size(); ++i) CHECK(back[i] == doctest::Approx(phi[i]).epsilon(1e-10));

    PermutationPair id;
    id.pi.resize(sys.size());
    for (Index i = 0; i < sys.size(); ++i) id.pi[i] = i;
    CHECK(permute_system(sys, id).matrix == sys.matrix);

    PermutationPair inv;
    inv.pi = perm.inverse();
    CHECK(permute_system(re, inv).matrix == sys.matrix);
  }
}
