#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "qpencil/errors.hpp"

namespace qpencil {

using Complex = std::complex<double>;
using DenseMatrix = Eigen::MatrixXcd;

inline constexpr double kDefaultDropTol = 1e-12;
inline constexpr double kHermiticityTol = 1e-10;

/// One real-weighted word of single-qubit Pauli labels. `word[q]` is the
/// label acting on qubit q, with qubit 0 the leftmost tensor factor
/// (most significant bit of the basis index).
struct PauliTerm {
  double coeff = 0.0;
  std::string word;  // characters from {I, X, Y, Z}

  int num_qubits() const { return static_cast<int>(word.size()); }
};

/// Hermitian operator as a merged sum of Pauli words. Terms are kept in
/// canonical form: unique words, sorted lexicographically (I < X < Y < Z),
/// coefficients above the drop tolerance.
class PauliSum {
 public:
  /// Empty single-qubit sum, for default-constructed holders.
  PauliSum() : num_qubits_(1) {}

  PauliSum(int num_qubits, std::vector<PauliTerm> terms,
           double drop_tol = kDefaultDropTol);

  static PauliSum zero(int num_qubits) { return PauliSum(num_qubits, {}); }
  static PauliSum identity(int num_qubits);

  int num_qubits() const { return num_qubits_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  const std::vector<PauliTerm>& terms() const { return terms_; }

  /// Coefficient of `word`, or 0 when absent.
  double coeff(std::string_view word) const;

  PauliSum scaled(double factor) const;

 private:
  int num_qubits_;
  std::vector<PauliTerm> terms_;
};

/// Dense 2x2 matrix of a single Pauli label.
Eigen::Matrix2cd pauli_matrix(char label);

/// Dense 2^m x 2^m realization of a Pauli word (tensor product, qubit 0
/// leftmost).
DenseMatrix pauli_word_matrix(std::string_view word);

/// Projects a dense Hermitian matrix onto the Pauli basis:
/// coeff(P) = trace(P H) / 2^m for every word P. Throws
/// InvalidDimensionError unless the dimension is a power of two and
/// NonHermitianError when max|H - H^dag| exceeds the tolerance.
PauliSum decompose(const DenseMatrix& h, double drop_tol = kDefaultDropTol);

/// Inverse of decompose: sum of coeff * dense(word).
DenseMatrix reconstruct(const PauliSum& s);

/// Canonical merged form of A - F*B.
PauliSum combine(const PauliSum& a, const PauliSum& b, double f,
                 double drop_tol = kDefaultDropTol);

/// Text form, one `<coeff> <word>` line per term.
std::string to_text(const PauliSum& s);
std::ostream& operator<<(std::ostream& os, const PauliSum& s);

/// Parses the line format produced by to_text. Blank lines and lines
/// starting with '#' are ignored.
PauliSum pauli_sum_from_text(std::istream& in);
PauliSum pauli_sum_from_text(const std::string& text);

}  // namespace qpencil
