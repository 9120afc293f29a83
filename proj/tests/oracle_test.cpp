#include <doctest.h>

#include <random>

#include "qpencil/oracle.hpp"
#include "qpencil/problems.hpp"

using namespace qpencil;

namespace {

// Independent route for positive-definite B: eigenvalues of the
// symmetrized standard problem B^{-1/2} A B^{-1/2}.
Eigen::VectorXd symmetrized_eigenvalues(const DenseMatrix& a,
                                        const DenseMatrix& b) {
  Eigen::SelfAdjointEigenSolver<DenseMatrix> bs(b);
  const Eigen::VectorXd inv_sqrt = bs.eigenvalues().cwiseSqrt().cwiseInverse();
  const DenseMatrix binv_half =
      bs.eigenvectors() * inv_sqrt.asDiagonal() * bs.eigenvectors().adjoint();
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(binv_half * a * binv_half);
  return es.eigenvalues();
}

DenseMatrix example2_a(double a1, double a2, double a3, double a4, double b) {
  DenseMatrix m = DenseMatrix::Zero(4, 4);
  m(0, 0) = a1;
  m(1, 1) = a2;
  m(2, 2) = a3;
  m(3, 3) = a4;
  m(0, 3) = m(3, 0) = b;
  m(1, 2) = m(2, 1) = b;
  return m;
}

}  // namespace

TEST_CASE("the regular-B example pencil has the published exact spectrum") {
  const Pencil p = dense_pencil(example_problem("example1"));
  const EigenpairSet eig = solve_pencil(p);
  REQUIRE(eig.pairs.size() == 4);
  CHECK(eig.b_rank == 4);
  const double expected[4] = {0.33162, 0.97204, 1.01575, 1.56765};
  for (int i = 0; i < 4; ++i) {
    CHECK(std::abs(eig.pairs[i].lambda - expected[i]) <= 1e-5);
  }
}

TEST_CASE("A = B = I collapses to eigenvalue one with full multiplicity") {
  const Pencil p{DenseMatrix::Identity(4, 4), DenseMatrix::Identity(4, 4)};
  const EigenpairSet eig = solve_pencil(p);
  REQUIRE(eig.pairs.size() == 4);
  for (const auto& pair : eig.pairs) {
    CHECK(pair.lambda == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(pair.multiplicity == 4);
  }
}

TEST_CASE("the 8x8 example pencil has the published lowest two eigenvalues") {
  const Pencil p = dense_pencil(example_problem("example3"));
  const EigenpairSet eig = solve_pencil(p);
  REQUIRE(eig.pairs.size() == 8);
  CHECK(std::abs(eig.pairs[0].lambda - 0.212465) <= 1e-5);
  CHECK(std::abs(eig.pairs[1].lambda - 0.394698) <= 1e-5);
}

TEST_CASE("every returned pair satisfies the pencil residual bound") {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> gauss;
  for (int rep = 0; rep < 10; ++rep) {
    const int n = 4 + 2 * (rep % 3);
    DenseMatrix a(n, n), b(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        a(i, j) = Complex(gauss(rng), gauss(rng));
        b(i, j) = Complex(gauss(rng), gauss(rng));
      }
    }
    a = (0.5 * (a + a.adjoint().eval())).eval();
    b = (0.5 * (b + b.adjoint().eval())).eval();
    b = (b * b.adjoint() / static_cast<double>(n) +
         0.1 * DenseMatrix::Identity(n, n)).eval();  // positive definite
    const Pencil p{a, b};
    const EigenpairSet eig = solve_pencil(p);
    const double na = a.norm(), nb = b.norm();
    for (const auto& pair : eig.pairs) {
      const double resid =
          (a * pair.vector - pair.lambda * b * pair.vector).norm();
      CHECK(resid <= 1e-8 * (na + std::abs(pair.lambda) * nb));
    }
  }
}

TEST_CASE("regular-B spectra agree with the symmetrized standard problem") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> gauss;
  for (int rep = 0; rep < 8; ++rep) {
    const int n = 4;
    DenseMatrix a(n, n), b(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        a(i, j) = Complex(gauss(rng), gauss(rng));
        b(i, j) = Complex(gauss(rng), gauss(rng));
      }
    }
    a = (0.5 * (a + a.adjoint().eval())).eval();
    b = (b * b.adjoint() / static_cast<double>(n) +
         0.3 * DenseMatrix::Identity(n, n)).eval();
    const EigenpairSet eig = solve_pencil(Pencil{a, b});
    const Eigen::VectorXd ref = symmetrized_eigenvalues(a, b);
    REQUIRE(static_cast<int>(eig.pairs.size()) == n);
    for (int i = 0; i < n; ++i) {
      CHECK(std::abs(eig.pairs[i].lambda - ref(i)) <= 1e-9);
    }
  }
}

TEST_CASE("closed form reproduces the published singular-B eigenpair") {
  // Pull a1..a4 and b from the dense form of the published operators
  // rather than hardcoding them.
  const Pencil p = dense_pencil(example_problem("example2"));
  const double a1 = p.a(0, 0).real(), a2 = p.a(1, 1).real();
  const double a3 = p.a(2, 2).real(), a4 = p.a(3, 3).real();
  const double b = p.a(0, 3).real();
  const ClosedFormResult res = example2_closed_form(a1, a2, a3, a4, b);
  CHECK(res.lambda == doctest::Approx(0.15).epsilon(1e-12));
  CHECK(std::abs(res.vector(0)) <= 1e-12);
  CHECK(res.vector(1).real() == doctest::Approx(0.125).epsilon(1e-12));
  CHECK(res.vector(2).real() == doctest::Approx(0.125).epsilon(1e-12));
  CHECK(res.vector(3).real() == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("closed form at b = 0 degenerates to the triple-product ratio") {
  const double a1 = 1.7, a2 = 0.9, a3 = 1.3, a4 = 0.4;
  const ClosedFormResult res = example2_closed_form(a1, a2, a3, a4, 0.0);
  const double q = a1 * a2 * a3 + a1 * a2 * a4 + a1 * a3 * a4 + a2 * a3 * a4;
  CHECK(res.lambda == doctest::Approx(a1 * a2 * a3 * a4 / q).epsilon(1e-14));
}

TEST_CASE("closed form throws when Q vanishes") {
  // a1 = a2 = a3 = a4 = b makes every Q term cancel.
  CHECK_THROWS_AS(example2_closed_form(1.0, 1.0, 1.0, 1.0, 1.0),
                  UndefinedClosedFormError);
}

TEST_CASE("closed form agrees with solve_pencil on random instances") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> diag(0.3, 2.0);
  std::uniform_real_distribution<double> off(0.05, 0.25);
  DenseMatrix ones = DenseMatrix::Ones(4, 4);
  int checked = 0;
  for (int rep = 0; rep < 1000; ++rep) {
    const double a1 = diag(rng), a2 = diag(rng), a3 = diag(rng),
                 a4 = diag(rng), b = off(rng);
    const ClosedFormResult cf = example2_closed_form(a1, a2, a3, a4, b);
    const EigenpairSet eig =
        solve_pencil(Pencil{example2_a(a1, a2, a3, a4, b), ones});
    REQUIRE(eig.pairs.size() == 1);  // rank-one B: a single eigenvalue
    CHECK(std::abs(eig.pairs[0].lambda - cf.lambda) <= 1e-9);
    ++checked;
  }
  CHECK(checked == 1000);
}

TEST_CASE("rank-one B caps the finite spectrum at one eigenvalue") {
  const Pencil p = dense_pencil(example_problem("example2"));
  const EigenpairSet eig = solve_pencil(p);
  CHECK(eig.b_rank == 1);
  CHECK(eig.pairs.size() == 1);
  CHECK(eig.pairs[0].lambda == doctest::Approx(0.15).epsilon(1e-9));
}

TEST_CASE("a pencil with identically vanishing determinant is degenerate") {
  DenseMatrix a = DenseMatrix::Zero(2, 2);
  DenseMatrix b = DenseMatrix::Zero(2, 2);
  a(0, 0) = 1.0;
  b(0, 0) = 1.0;  // shared null vector e_1
  CHECK_THROWS_AS(solve_pencil(Pencil{a, b}), DegeneratePencilError);
}

TEST_CASE("fidelity trivials and the published ground-state fidelity") {
  Eigen::VectorXcd u(2), v(2);
  u << 1, 0;
  v << 0, 1;
  CHECK(fidelity(u, u) == doctest::Approx(1.0));
  CHECK(fidelity(u, v) == doctest::Approx(0.0));
  CHECK_THROWS_AS(fidelity(u, Eigen::VectorXcd::Zero(2)), ConfigError);

  Eigen::VectorXcd method(4), exact(4);
  method << 0.228442, 0.044591, -0.032439, -1.340530;
  exact << 0.229362, 0.0, 0.0, -1.34168;
  CHECK(std::abs(fidelity(method, exact) - 0.998358) <= 1e-5);
}

TEST_CASE("b_normalize fixes the B-weighted norm to one") {
  const Pencil p2 = dense_pencil(example_problem("example2"));
  Eigen::VectorXcd phi(4);
  phi << 0.0, 0.125, 0.125, 0.75;  // already B-normalized: amplitude sum 1
  const Eigen::VectorXcd same = b_normalize(phi, p2.b);
  CHECK((same - phi).norm() <= 1e-12);

  const Pencil p1 = dense_pencil(example_problem("example1"));
  Eigen::VectorXcd psi(4);
  psi << 0.228442, 0.044591, -0.032439, -1.340530;
  const Eigen::VectorXcd bn = b_normalize(psi, p1.b);
  CHECK(std::abs((bn.adjoint() * p1.b * bn)(0).real() - 1.0) <= 1e-12);
  CHECK((bn - psi).cwiseAbs().maxCoeff() <= 2e-3);  // was near-normalized

  Eigen::VectorXcd unit(2);
  unit << 1, 0;
  const Eigen::VectorXcd id = b_normalize(unit, DenseMatrix::Identity(2, 2));
  CHECK((id - unit).norm() <= 1e-15);

  // Null-space vector of the all-ones B cannot be normalized.
  Eigen::VectorXcd nullvec(4);
  nullvec << 1, -1, 0, 0;
  CHECK_THROWS_AS(b_normalize(nullvec, p2.b), CannotBNormalizeError);
}

TEST_CASE("pencil validation rejects mismatched or non-Hermitian input") {
  DenseMatrix a = DenseMatrix::Identity(4, 4);
  DenseMatrix b = DenseMatrix::Identity(2, 2);
  CHECK_THROWS_AS(solve_pencil(Pencil{a, b}), InvalidDimensionError);
  DenseMatrix c = DenseMatrix::Zero(2, 2);
  c(0, 1) = 1.0;
  CHECK_THROWS_AS(solve_pencil(Pencil{c, DenseMatrix::Identity(2, 2)}),
                  NonHermitianError);
}
