#include <doctest.h>

#include <random>
#include <sstream>

#include "qpencil/pauli.hpp"

using namespace qpencil;

namespace {

// Brute-force trace oracle, independent of the decompose implementation:
// builds every word as an explicit Kronecker product.
DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

DenseMatrix brute_word(const std::string& word) {
  DenseMatrix out = DenseMatrix::Identity(1, 1);
  for (char c : word) {
    out = kron(out, DenseMatrix(pauli_matrix(c)));
  }
  return out;
}

DenseMatrix random_hermitian(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  DenseMatrix m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      m(i, j) = Complex(gauss(rng), gauss(rng));
    }
  }
  return 0.5 * (m + m.adjoint().eval());
}

std::vector<std::string> all_words(int m) {
  std::vector<std::string> words = {""};
  for (int q = 0; q < m; ++q) {
    std::vector<std::string> next;
    for (const auto& w : words) {
      for (char c : {'I', 'X', 'Y', 'Z'}) {
        next.push_back(w + c);
      }
    }
    words = std::move(next);
  }
  return words;
}

}  // namespace

TEST_CASE("decompose recovers the example-problem A operator") {
  DenseMatrix a = brute_word("II") + 0.4 * brute_word("ZI") +
                  0.4 * brute_word("IZ") + 0.2 * brute_word("XX");
  const PauliSum s = decompose(a);
  REQUIRE(s.size() == 4);
  CHECK(s.coeff("II") == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.coeff("ZI") == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(s.coeff("IZ") == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(s.coeff("XX") == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("decompose of the identity is a single II term") {
  const PauliSum s = decompose(DenseMatrix::Identity(4, 4));
  REQUIRE(s.size() == 1);
  CHECK(s.terms()[0].word == "II");
  CHECK(s.terms()[0].coeff == doctest::Approx(1.0));
}

TEST_CASE("decompose matches the brute-force trace oracle on a random 8x8") {
  std::mt19937_64 rng(42);
  const DenseMatrix h = random_hermitian(8, rng);
  const PauliSum s = decompose(h, 0.0);
  for (const auto& word : all_words(3)) {
    const double expected = (brute_word(word) * h).trace().real() / 8.0;
    CHECK(s.coeff(word) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("decompose rejects bad inputs") {
  CHECK_THROWS_AS(decompose(DenseMatrix::Identity(3, 3)),
                  InvalidDimensionError);
  DenseMatrix m = DenseMatrix::Zero(2, 2);
  m(0, 1) = 1.0;  // not Hermitian
  CHECK_THROWS_AS(decompose(m), NonHermitianError);
}

TEST_CASE("reconstruct of II + XX puts ones on both diagonals") {
  const PauliSum s(2, {{1.0, "II"}, {1.0, "XX"}});
  const DenseMatrix m = reconstruct(s);
  for (int i = 0; i < 4; ++i) {
    CHECK(m(i, i) == Complex(1.0, 0.0));
    CHECK(m(i, 3 - i) == Complex(1.0, 0.0));
  }
}

TEST_CASE("decompose(reconstruct) is the identity on the example-problem B") {
  const PauliSum b(2, {{1.0, "II"}, {0.3, "ZI"}, {0.4, "IZ"}, {0.2, "ZZ"}});
  const PauliSum round = decompose(reconstruct(b));
  REQUIRE(round.size() == b.size());
  for (const auto& t : b.terms()) {
    CHECK(round.coeff(t.word) == doctest::Approx(t.coeff).epsilon(1e-12));
  }
}

TEST_CASE("round trip on random Hermitians up to three qubits") {
  std::mt19937_64 rng(7);
  for (int m = 1; m <= 3; ++m) {
    for (int rep = 0; rep < 5; ++rep) {
      const DenseMatrix h = random_hermitian(1 << m, rng);
      const DenseMatrix back = reconstruct(decompose(h, 0.0));
      CHECK((back - h).cwiseAbs().maxCoeff() <= 1e-10);
    }
  }
}

TEST_CASE("random PauliSum round-trips through its dense form") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> coeff(-2.0, 2.0);
  std::uniform_real_distribution<double> pick(0.0, 1.0);
  std::vector<PauliTerm> terms;
  for (const auto& w : all_words(3)) {
    if (pick(rng) < 0.3) {
      terms.push_back(PauliTerm{coeff(rng), w});
    }
  }
  const PauliSum s(3, terms);
  const PauliSum round = decompose(reconstruct(s));
  REQUIRE(round.size() == s.size());
  for (const auto& t : s.terms()) {
    CHECK(round.coeff(t.word) == doctest::Approx(t.coeff).epsilon(1e-12));
  }
}

TEST_CASE("decompose is linear") {
  std::mt19937_64 rng(3);
  const DenseMatrix h1 = random_hermitian(4, rng);
  const DenseMatrix h2 = random_hermitian(4, rng);
  const double a = 0.7, b = -1.3;
  const PauliSum lhs = decompose(a * h1 + b * h2, 0.0);
  const PauliSum s1 = decompose(h1, 0.0);
  const PauliSum s2 = decompose(h2, 0.0);
  for (const auto& word : all_words(2)) {
    CHECK(lhs.coeff(word) ==
          doctest::Approx(a * s1.coeff(word) + b * s2.coeff(word))
              .epsilon(1e-10));
  }
}

TEST_CASE("combine reproduces the published Lambda coefficients") {
  const PauliSum a(2, {{1.0, "II"}, {0.4, "ZI"}, {0.4, "IZ"}, {0.2, "XX"}});
  const PauliSum b(2, {{1.0, "II"}, {0.3, "ZI"}, {0.4, "IZ"}, {0.2, "ZZ"}});
  for (double f : {0.0, 0.33, 1.0, -2.5}) {
    const PauliSum c = combine(a, b, f);
    CHECK(c.coeff("II") == doctest::Approx(1.0 - f));
    CHECK(c.coeff("ZI") == doctest::Approx(0.4 - 0.3 * f));
    CHECK(c.coeff("IZ") == doctest::Approx(0.4 * (1.0 - f)));
    CHECK(c.coeff("XX") == doctest::Approx(0.2));
    CHECK(c.coeff("ZZ") == doctest::Approx(-0.2 * f));
  }
}

TEST_CASE("combine with F = 0 returns A unchanged") {
  const PauliSum a(2, {{1.0, "II"}, {0.2, "XX"}});
  const PauliSum b(2, {{0.5, "ZZ"}});
  const PauliSum c = combine(a, b, 0.0);
  REQUIRE(c.size() == 2);
  CHECK(c.coeff("II") == doctest::Approx(1.0));
  CHECK(c.coeff("XX") == doctest::Approx(0.2));
}

TEST_CASE("combine cancels identical operators at F = 1") {
  const PauliSum a(2, {{1.0, "II"}, {0.25, "XY"}});
  CHECK(combine(a, a, 1.0).empty());
}

TEST_CASE("combine rejects mismatched registers") {
  CHECK_THROWS_AS(
      combine(PauliSum::identity(2), PauliSum::identity(3), 1.0),
      InvalidDimensionError);
}

TEST_CASE("terms below the drop tolerance are pruned") {
  const PauliSum s(2, {{1.0, "II"}, {1e-15, "XX"}});
  CHECK(s.size() == 1);
  const PauliSum keep(2, {{1.0, "II"}, {1e-15, "XX"}}, 0.0);
  CHECK(keep.size() == 2);
}

TEST_CASE("text serialization round-trips") {
  const PauliSum s(2, {{0.4, "ZI"}, {-0.25, "XY"}, {1.0, "II"}});
  const PauliSum back = pauli_sum_from_text(to_text(s));
  REQUIRE(back.size() == s.size());
  for (const auto& t : s.terms()) {
    CHECK(back.coeff(t.word) == doctest::Approx(t.coeff).epsilon(1e-15));
  }
}

TEST_CASE("text parser flags malformed lines and empty input") {
  std::istringstream bad("0.4 ZI\noops\n");
  CHECK_THROWS_AS(pauli_sum_from_text(bad), ConfigError);
  std::istringstream empty("# only a comment\n");
  CHECK_THROWS_AS(pauli_sum_from_text(empty), ConfigError);
  std::istringstream mixed("0.4 ZI\n0.3 XYZ\n");
  CHECK_THROWS_AS(pauli_sum_from_text(mixed), ConfigError);
}

TEST_CASE("words validate length and labels") {
  CHECK_THROWS_AS(PauliSum(2, {{1.0, "XYZ"}}), InvalidDimensionError);
  CHECK_THROWS_AS(PauliSum(2, {{1.0, "XQ"}}), ConfigError);
}
