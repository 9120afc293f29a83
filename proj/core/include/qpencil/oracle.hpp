#pragma once

#include <vector>

#include <Eigen/Dense>

#include "qpencil/pauli.hpp"

namespace qpencil {

/// Dense Hermitian pair defining the generalized eigenvalue problem
/// A v = lambda B v.
struct Pencil {
  DenseMatrix a;
  DenseMatrix b;
};

struct Eigenpair {
  double lambda = 0.0;
  Eigen::VectorXcd vector;  // unit 2-norm
  double b_norm = 0.0;      // v^dag B v (can be <= 0 for indefinite B)
  int multiplicity = 1;     // nullspace dimension of the cluster
};

struct EigenpairSet {
  std::vector<Eigenpair> pairs;  // ascending by lambda
  int b_rank = 0;
};

struct SolveOptions {
  double cluster_tol = 1e-9;     // eigenvalues closer than this merge
  double imag_tol = 1e-8;        // roots with |Im| above this are discarded
  double residual_scale = 1e-8;  // pairs must pass ||Av - l Bv|| <= s*(...)
};

/// All finite real eigenvalues of the pencil, via the characteristic
/// polynomial det(A - lambda B): determinant samples at Chebyshev nodes,
/// interpolation to monomial coefficients, companion-matrix roots, then
/// Rayleigh-quotient refinement and nullspace extraction per root. Handles
/// singular B (the polynomial degree drops to at most rank B). Throws
/// DegeneratePencilError when det(A - lambda B) vanishes identically.
EigenpairSet solve_pencil(const Pencil& pencil, const SolveOptions& opts = {});

struct ClosedFormResult {
  double lambda = 0.0;
  Eigen::Vector4cd vector;  // amplitudes over |00>,|01>,|10>,|11>
};

/// The single finite eigenpair of the 4x4 pencil with A =
/// antidiag-coupled diag(a1..a4) and B the all-ones matrix. Throws
/// UndefinedClosedFormError when the denominator Q vanishes.
ClosedFormResult example2_closed_form(double a1, double a2, double a3,
                                      double a4, double b);

/// |<u|v>|^2 after unit-normalizing both vectors.
double fidelity(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v);

/// v / sqrt(v^dag B v); throws CannotBNormalizeError when the B-norm is
/// not positive.
Eigen::VectorXcd b_normalize(const Eigen::VectorXcd& v, const DenseMatrix& b);

/// Flips the global sign/phase so the largest-magnitude component is real
/// and positive. Handy when comparing states defined up to a phase.
Eigen::VectorXcd canonical_phase(const Eigen::VectorXcd& v);

}  // namespace qpencil
