#include <doctest.h>

#include <Eigen/Dense>
#include <random>

#include "thetaframe/linalg.hpp"

using namespace thetaframe;

TEST_CASE("Jacobi eigenvalues of diagonal and small matrices") {
  Matrix d(3, 3);
  d(0, 0) = 9;
  d(1, 1) = 2;
  d(2, 2) = 4;
  const auto eig = symmetric_eigenvalues(d);
  CHECK(eig == std::vector<double>{2, 4, 9});

  // [[2,1],[1,2]] has eigenvalues 1 and 3
  const auto m = Matrix::from_rows({{2, 1}, {1, 2}});
  const auto e2 = symmetric_eigenvalues(m);
  CHECK(e2[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(e2[1] == doctest::Approx(3.0).epsilon(1e-14));

  CHECK_THROWS_AS(symmetric_eigenvalues(Matrix(2, 3)), std::invalid_argument);
}

TEST_CASE("Jacobi agrees with Eigen's self-adjoint solver") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> normal;
  for (std::size_t n = 1; n <= 8; ++n) {
    for (int trial = 0; trial < 10; ++trial) {
      Matrix g(n + 3, n);
      Eigen::MatrixXd ge(n + 3, n);
      for (std::size_t r = 0; r < n + 3; ++r)
        for (std::size_t c = 0; c < n; ++c) ge(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
            g(r, c) = normal(rng);
      const auto ours = symmetric_eigenvalues(g.gram());
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(ge.transpose() * ge);
      const auto& ref = solver.eigenvalues();
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(ours[i] == doctest::Approx(ref(static_cast<Eigen::Index>(i))).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("matrix helpers") {
  const auto a = Matrix::from_rows({{1, 2}, {3, 4}, {5, 6}});
  CHECK(a.multiply(std::vector<double>{1, 1}) == std::vector<double>{3, 7, 11});
  CHECK(a.transpose().rows() == 2);
  CHECK(a.transpose()(1, 2) == 6);
  CHECK(a.gram() == Matrix::from_rows({{35, 44}, {44, 56}}));
  CHECK_THROWS_AS(Matrix::from_rows({{1, 2}, {3}}), std::invalid_argument);
  CHECK_THROWS_AS(a.multiply(std::vector<double>{1}), std::invalid_argument);
}
