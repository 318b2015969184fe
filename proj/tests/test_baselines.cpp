#include "doctest.h"

#include "oracles.hpp"
#include "precog/baselines.hpp"
#include "precog/matgen.hpp"
#include "precog/spectral.hpp"

#include <cmath>

using namespace precog;
using namespace precog::baselines;

namespace {

// Doolittle LU without pivoting; the reference for ILU(0) on patterns that
// admit no fill-in.
std::pair<Matrix, Matrix> doolittle(const Matrix& a) {
  const auto n = a.rows();
  Matrix l = Matrix::Identity(n, n);
  Matrix u = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      double s = a(i, j);
      for (Eigen::Index k = 0; k < i; ++k) s -= l(i, k) * u(k, j);
      u(i, j) = s;
    }
    for (Eigen::Index j = i + 1; j < n; ++j) {
      double s = a(j, i);
      for (Eigen::Index k = 0; k < i; ++k) s -= l(j, k) * u(k, i);
      l(j, i) = s / u(i, i);
    }
  }
  return {l, u};
}

Matrix tridiagonal_spd(int n) {
  Matrix a = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    a(i, i) = 4.0 + 0.1 * i;
    if (i + 1 < n) a(i, i + 1) = a(i + 1, i) = -1.0 - 0.05 * i;
  }
  return a;
}

}  // namespace

TEST_CASE("dct matrix") {
  const double r = 1.0 / std::sqrt(2.0);
  Matrix want(2, 2);
  want << r, r, r, -r;
  CHECK((dct_matrix(2) - want).cwiseAbs().maxCoeff() <= 1e-15);
  for (int n : {1, 2, 3, 7, 16, 64, 255, 256}) {
    const Matrix c = dct_matrix(n);
    CHECK(orthonormality_defect(c) <= 1e-12);
    CHECK((c - oracle::dct_by_normalization(n)).cwiseAbs().maxCoeff() <= 1e-12);
  }
  CHECK(spectral::split_preconditioned_cond(matgen::ar1_autocorr(64, 0.9), dct_transform(64)) <= 3.0);
}

TEST_CASE("dft basis and split condition") {
  for (int n : {1, 2, 5, 64, 256}) {
    const Eigen::MatrixXcd f = dft_matrix(n);
    CHECK((f.adjoint() * f - Eigen::MatrixXcd::Identity(n, n)).norm() <= 1e-12);
  }
  CHECK(dft_split_cond(Matrix::Identity(8, 8)) == doctest::Approx(1.0));
  CHECK(dft_split_cond(3.5 * Matrix::Identity(5, 5)) == doctest::Approx(1.0));
  const double c = dft_split_cond(matgen::ar1_autocorr(64, 0.9));
  CHECK(c >= 10.0);
  CHECK(c <= 30.0);
}

TEST_CASE("jacobi") {
  Matrix d = Matrix::Zero(3, 3);
  d.diagonal() << 2, 7, 0.5;
  CHECK(preconditioned_cond(jacobi_precond(d), d) == doctest::Approx(1.0));
  CHECK(jacobi_precond(Matrix::Identity(4, 4)).payload == Matrix::Identity(4, 4));
  Matrix a(2, 2);
  a << 4, 1, 1, 2;
  Matrix want(2, 2);
  want << 1, 0.25, 0.5, 1;
  CHECK((apply_left(jacobi_precond(a), a) - want).cwiseAbs().maxCoeff() <= 1e-15);
  Matrix zero_diag = Matrix::Ones(2, 2);
  zero_diag(1, 1) = 0.0;
  CHECK_THROWS_AS(jacobi_precond(zero_diag), Error);
}

TEST_CASE("gauss-seidel") {
  Matrix low(3, 3);
  low << 2, 0, 0, 1, 3, 0, -1, 2, 5;
  const auto p = gauss_seidel_precond(low);
  CHECK(p.payload == low);
  CHECK(preconditioned_cond(p, low) == doctest::Approx(1.0));
  CHECK(gauss_seidel_precond(Matrix::Identity(3, 3)).payload == Matrix::Identity(3, 3));

  Matrix a(2, 2);
  a << 2, 1, 1, 2;
  const auto gs = gauss_seidel_precond(a);
  Matrix m(2, 2);
  m << 2, 0, 1, 2;
  CHECK(gs.payload == m);
  Matrix want(2, 2);
  want << 1, 0.5, 0, 0.75;
  CHECK((apply_left(gs, a) - want).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("sor and ssor") {
  std::mt19937_64 eng(3);
  const Matrix a = oracle::random_spd(6, eng);
  CHECK(sor_precond(a, 1.0).payload == gauss_seidel_precond(a).payload);
  for (double omega : {0.5, 1.0, 1.5, 1.9}) {
    CHECK(preconditioned_cond(sor_precond(Matrix::Identity(4, 4), omega), Matrix::Identity(4, 4)) ==
          doctest::Approx(1.0));
    CHECK(preconditioned_cond(ssor_precond(Matrix::Identity(4, 4), omega), Matrix::Identity(4, 4)) ==
          doctest::Approx(1.0));
    CHECK(asymmetry(ssor_precond(a, omega).payload) <= 1e-12);
  }
  CHECK_THROWS_AS(sor_precond(a, 0.0), Error);
  CHECK_THROWS_AS(ssor_precond(a, 2.0), Error);
}

TEST_CASE("ilu0") {
  std::mt19937_64 eng(4);
  const Matrix dense = oracle::random_spd(6, eng);
  const auto p = ilu0_precond(dense);
  const auto [l, u] = doolittle(dense);
  CHECK((*p.lower - l).cwiseAbs().maxCoeff() <= 1e-8);
  CHECK((*p.upper - u).cwiseAbs().maxCoeff() <= 1e-8);
  CHECK((apply_left(p, dense) - Matrix::Identity(6, 6)).cwiseAbs().maxCoeff() <= 1e-8);

  Matrix diag = Matrix::Zero(4, 4);
  diag.diagonal() << 3, -2, 5, 1;
  const auto pd = ilu0_precond(diag);
  CHECK(*pd.lower == Matrix::Identity(4, 4));
  CHECK(*pd.upper == diag);

  const Matrix tri = tridiagonal_spd(9);
  const auto pt = ilu0_precond(tri);
  const auto [lt, ut] = doolittle(tri);
  CHECK((*pt.lower - lt).cwiseAbs().maxCoeff() <= 1e-8);
  CHECK((*pt.upper - ut).cwiseAbs().maxCoeff() <= 1e-8);
  CHECK((apply_left(pt, tri) - Matrix::Identity(9, 9)).cwiseAbs().maxCoeff() <= 1e-8);

  // Sparse pattern with dropped fill: the factors keep A's pattern.
  const Matrix sparse = matgen::random_sparse_pd(10, 1.0 / 3.0, 2).a;
  const auto ps = ilu0_precond(sparse);
  const Matrix lu = *ps.lower + *ps.upper - Matrix::Identity(10, 10);
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j)
      if (sparse(i, j) == 0.0) CHECK(lu(i, j) == 0.0);

  Matrix breakdown(2, 2);
  breakdown << 1, 1, 1, 1;
  try {
    ilu0_precond(breakdown);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::IluBreakdown);
    CHECK(std::string(e.what()).find("index 2") != std::string::npos);
  }
}

TEST_CASE("every left preconditioner is exact on the identity") {
  const Matrix id = Matrix::Identity(7, 7);
  for (const auto& p : {jacobi_precond(id), gauss_seidel_precond(id), sor_precond(id), ssor_precond(id),
                        ilu0_precond(id)}) {
    CHECK(std::abs(preconditioned_cond(p, id) - 1.0) <= 1e-10);
  }
}

TEST_CASE("unitary split preconditioner") {
  const auto p = unitary_split(dct_transform(8), "dct");
  const Matrix r = matgen::ar1_autocorr(8, 0.6);
  CHECK(preconditioned_cond(p, r) == spectral::split_preconditioned_cond(r, dct_transform(8)));
  CHECK_THROWS_AS(unitary_split(2.0 * Matrix::Identity(3, 3), "bad"), Error);
  CHECK_THROWS_AS(apply_left(p, r), Error);
}

TEST_CASE("condition ratio") {
  CHECK(condition_ratio(5.0, 5.0) == 1.0);
  CHECK(condition_ratio(5.0, 5.0, true) == 0.0);
  CHECK(condition_ratio(361.0, 19.0) == doctest::Approx(19.0));
  CHECK(condition_ratio(1620.0, 491.94) == doctest::Approx(3.29).epsilon(0.002));
  CHECK_THROWS_AS(condition_ratio(0.0, 1.0), Error);
  CHECK_THROWS_AS(condition_ratio(1.0, -1.0), Error);
}
