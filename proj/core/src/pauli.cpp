#include "qpencil/pauli.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <sstream>

namespace qpencil {

namespace {

bool is_power_of_two(Eigen::Index n) { return n > 0 && (n & (n - 1)) == 0; }

int log2_exact(Eigen::Index n) {
  int m = 0;
  while ((Eigen::Index{1} << m) < n) ++m;
  return m;
}

void check_word(std::string_view word, int num_qubits) {
  if (static_cast<int>(word.size()) != num_qubits) {
    throw InvalidDimensionError("Pauli word '" + std::string(word) +
                                "' does not have length " +
                                std::to_string(num_qubits));
  }
  for (char c : word) {
    if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
      throw ConfigError("invalid Pauli label '" + std::string(1, c) +
                        "' in word '" + std::string(word) + "'");
    }
  }
}

// Column action of a Pauli word: P e_col = phase * e_row. Qubit 0 is the
// most significant bit of the index.
struct WordAction {
  Eigen::Index row;
  Complex phase;
};

WordAction word_column_action(std::string_view word, Eigen::Index col) {
  const int m = static_cast<int>(word.size());
  Eigen::Index row = col;
  Complex phase = 1.0;
  for (int q = 0; q < m; ++q) {
    const Eigen::Index mask = Eigen::Index{1} << (m - 1 - q);
    const bool bit = (col & mask) != 0;
    switch (word[q]) {
      case 'I':
        break;
      case 'X':
        row ^= mask;
        break;
      case 'Y':
        row ^= mask;
        phase *= bit ? Complex(0.0, -1.0) : Complex(0.0, 1.0);
        break;
      case 'Z':
        if (bit) phase = -phase;
        break;
    }
  }
  return {row, phase};
}

}  // namespace

PauliSum::PauliSum(int num_qubits, std::vector<PauliTerm> terms,
                   double drop_tol)
    : num_qubits_(num_qubits) {
  if (num_qubits < 1) {
    throw InvalidDimensionError("PauliSum needs at least one qubit");
  }
  std::map<std::string, double> merged;
  for (auto& t : terms) {
    check_word(t.word, num_qubits);
    merged[t.word] += t.coeff;
  }
  terms_.reserve(merged.size());
  for (auto& [word, coeff] : merged) {
    if (std::abs(coeff) >= drop_tol) {
      terms_.push_back(PauliTerm{coeff, word});
    }
  }
}

PauliSum PauliSum::identity(int num_qubits) {
  return PauliSum(num_qubits, {{1.0, std::string(num_qubits, 'I')}});
}

double PauliSum::coeff(std::string_view word) const {
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), word,
      [](const PauliTerm& t, std::string_view w) { return t.word < w; });
  if (it != terms_.end() && it->word == word) return it->coeff;
  return 0.0;
}

PauliSum PauliSum::scaled(double factor) const {
  std::vector<PauliTerm> t = terms_;
  for (auto& term : t) term.coeff *= factor;
  return PauliSum(num_qubits_, std::move(t));
}

Eigen::Matrix2cd pauli_matrix(char label) {
  Eigen::Matrix2cd m;
  switch (label) {
    case 'I':
      m << 1, 0, 0, 1;
      break;
    case 'X':
      m << 0, 1, 1, 0;
      break;
    case 'Y':
      m << 0, Complex(0, -1), Complex(0, 1), 0;
      break;
    case 'Z':
      m << 1, 0, 0, -1;
      break;
    default:
      throw ConfigError("invalid Pauli label '" + std::string(1, label) + "'");
  }
  return m;
}

DenseMatrix pauli_word_matrix(std::string_view word) {
  DenseMatrix out = DenseMatrix::Identity(1, 1);
  for (char c : word) {
    DenseMatrix next(out.rows() * 2, out.cols() * 2);
    const Eigen::Matrix2cd p = pauli_matrix(c);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        next.block(i * out.rows(), j * out.cols(), out.rows(), out.cols()) =
            p(i, j) * out;
      }
    }
    out = std::move(next);
  }
  return out;
}

PauliSum decompose(const DenseMatrix& h, double drop_tol) {
  if (h.rows() != h.cols() || !is_power_of_two(h.rows())) {
    throw InvalidDimensionError(
        "decompose needs a square matrix with power-of-two dimension, got " +
        std::to_string(h.rows()) + "x" + std::to_string(h.cols()));
  }
  const double herm = (h - h.adjoint()).cwiseAbs().maxCoeff();
  if (herm > kHermiticityTol) {
    throw NonHermitianError("matrix is not Hermitian: max|H - H^dag| = " +
                            std::to_string(herm));
  }
  const int m = log2_exact(h.rows());
  const Eigen::Index dim = h.rows();

  std::vector<PauliTerm> terms;
  std::string word(m, 'I');
  const char labels[4] = {'I', 'X', 'Y', 'Z'};
  const std::size_t total = std::size_t{1} << (2 * m);
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    for (int q = m - 1; q >= 0; --q) {
      word[q] = labels[c & 3];
      c >>= 2;
    }
    // trace(P H) = sum_col phase(col) * H(col, row(col))
    Complex tr = 0.0;
    for (Eigen::Index col = 0; col < dim; ++col) {
      const auto [row, phase] = word_column_action(word, col);
      tr += phase * h(col, row);
    }
    const double coeff = tr.real() / static_cast<double>(dim);
    if (std::abs(coeff) >= drop_tol) {
      terms.push_back(PauliTerm{coeff, word});
    }
  }
  return PauliSum(m, std::move(terms), drop_tol);
}

DenseMatrix reconstruct(const PauliSum& s) {
  const Eigen::Index dim = Eigen::Index{1} << s.num_qubits();
  DenseMatrix out = DenseMatrix::Zero(dim, dim);
  for (const auto& t : s.terms()) {
    for (Eigen::Index col = 0; col < dim; ++col) {
      const auto [row, phase] = word_column_action(t.word, col);
      out(row, col) += t.coeff * phase;
    }
  }
  return out;
}

PauliSum combine(const PauliSum& a, const PauliSum& b, double f,
                 double drop_tol) {
  if (a.num_qubits() != b.num_qubits()) {
    throw InvalidDimensionError("combine: qubit counts differ (" +
                                std::to_string(a.num_qubits()) + " vs " +
                                std::to_string(b.num_qubits()) + ")");
  }
  std::vector<PauliTerm> terms = a.terms();
  for (const auto& t : b.terms()) {
    terms.push_back(PauliTerm{-f * t.coeff, t.word});
  }
  return PauliSum(a.num_qubits(), std::move(terms), drop_tol);
}

std::string to_text(const PauliSum& s) {
  std::ostringstream os;
  os << s;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const PauliSum& s) {
  os.precision(17);
  for (const auto& t : s.terms()) {
    os << t.coeff << ' ' << t.word << '\n';
  }
  return os;
}

PauliSum pauli_sum_from_text(std::istream& in) {
  std::vector<PauliTerm> terms;
  int num_qubits = -1;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    double coeff;
    std::string word;
    if (!(ls >> coeff >> word)) {
      throw ConfigError("line " + std::to_string(lineno) +
                        ": expected '<coeff> <word>', got '" + line + "'");
    }
    if (num_qubits == -1) {
      num_qubits = static_cast<int>(word.size());
    } else if (static_cast<int>(word.size()) != num_qubits) {
      throw ConfigError("line " + std::to_string(lineno) +
                        ": word length differs from previous terms");
    }
    terms.push_back(PauliTerm{coeff, word});
  }
  if (num_qubits == -1) {
    throw ConfigError("no Pauli terms found in input");
  }
  return PauliSum(num_qubits, std::move(terms));
}

PauliSum pauli_sum_from_text(const std::string& text) {
  std::istringstream in(text);
  return pauli_sum_from_text(in);
}

}  // namespace qpencil
