#include "qpencil/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qpencil {

namespace {

void check_pencil(const Pencil& p) {
  if (p.a.rows() != p.a.cols() || p.b.rows() != p.b.cols() ||
      p.a.rows() != p.b.rows()) {
    throw InvalidDimensionError("pencil matrices must be square and equal");
  }
  const double ha = (p.a - p.a.adjoint()).cwiseAbs().maxCoeff();
  const double hb = (p.b - p.b.adjoint()).cwiseAbs().maxCoeff();
  if (ha > kHermiticityTol || hb > kHermiticityTol) {
    throw NonHermitianError("pencil matrices are not Hermitian");
  }
}

// det(A - t B) via partial-pivot LU. Stable enough at desk scale once the
// pencil has been Frobenius-balanced.
double det_at(const DenseMatrix& a, const DenseMatrix& b, double t) {
  const DenseMatrix m = a - t * b;
  return m.partialPivLu().determinant().real();
}

// Monomial coefficients (ascending) of det(A - t B) by interpolation at
// n+1 Chebyshev nodes on [-radius, radius].
Eigen::VectorXd interpolate_charpoly(const DenseMatrix& a,
                                     const DenseMatrix& b, double radius) {
  const Eigen::Index n = a.rows();
  const Eigen::Index npts = n + 1;
  Eigen::VectorXd nodes(npts), values(npts);
  for (Eigen::Index k = 0; k < npts; ++k) {
    const double ang =
        std::numbers::pi * (2.0 * static_cast<double>(k) + 1.0) /
        (2.0 * static_cast<double>(npts));
    nodes(k) = radius * std::cos(ang);
    values(k) = det_at(a, b, nodes(k));
  }
  Eigen::MatrixXd vand(npts, npts);
  for (Eigen::Index r = 0; r < npts; ++r) {
    double p = 1.0;
    for (Eigen::Index c = 0; c < npts; ++c) {
      vand(r, c) = p;
      p *= nodes(r);
    }
  }
  return vand.colPivHouseholderQr().solve(values);
}

std::vector<double> companion_real_roots(const Eigen::VectorXd& coeffs,
                                         double imag_tol) {
  // coeffs ascending, leading coefficient nonzero. Roots with a small but
  // nonzero imaginary part are kept as real candidates: a real root of
  // multiplicity k smears into a complex cluster of radius ~eps^(1/k)
  // under the companion solve, and the Rayleigh refinement downstream
  // recovers the true value while the residual bound prunes anything that
  // was genuinely complex.
  const Eigen::Index deg = coeffs.size() - 1;
  if (deg == 0) return {};
  if (deg == 1) return {-coeffs(0) / coeffs(1)};
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(deg, deg);
  for (Eigen::Index i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < deg; ++i) {
    comp(i, deg - 1) = -coeffs(i) / coeffs(deg);
  }
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp);
  std::vector<double> roots;
  const double scale = 1.0 + es.eigenvalues().cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < deg; ++i) {
    const auto z = es.eigenvalues()(i);
    if (std::abs(z.imag()) <= std::max(imag_tol, 1e-3) * scale) {
      roots.push_back(z.real());
    }
  }
  return roots;
}

// Smallest-singular-vector of (A - t B) followed by a Rayleigh-quotient
// update. Quadratically accurate for Hermitian pencils, including at
// multiple eigenvalues.
double rayleigh_refine(const DenseMatrix& a, const DenseMatrix& b, double t,
                       int iterations = 3) {
  double lambda = t;
  for (int it = 0; it < iterations; ++it) {
    const DenseMatrix m = a - lambda * b;
    Eigen::JacobiSVD<DenseMatrix> svd(m, Eigen::ComputeFullV);
    const Eigen::VectorXcd v = svd.matrixV().col(m.cols() - 1);
    const double denom = (v.adjoint() * b * v)(0).real();
    if (std::abs(denom) < 1e-14) break;
    const double next = (v.adjoint() * a * v)(0).real() / denom;
    if (!std::isfinite(next)) break;
    lambda = next;
  }
  return lambda;
}

}  // namespace

EigenpairSet solve_pencil(const Pencil& pencil, const SolveOptions& opts) {
  check_pencil(pencil);
  const Eigen::Index n = pencil.a.rows();
  if (n > 1024) {
    throw InvalidDimensionError("solve_pencil is limited to dimension 1024");
  }

  const double norm_a = pencil.a.norm();
  const double norm_b = pencil.b.norm();

  EigenpairSet out;
  {
    Eigen::JacobiSVD<DenseMatrix> bsvd(pencil.b);
    const double smax = bsvd.singularValues()(0);
    out.b_rank = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (bsvd.singularValues()(i) > std::max(smax, 1.0) * 1e-12) {
        ++out.b_rank;
      }
    }
  }
  if (norm_b == 0.0) {
    throw DegeneratePencilError("B is identically zero");
  }

  // Frobenius balancing: work with (A/sa, B/sb); eigenvalues scale back by
  // sa/sb.
  const double sa = norm_a > 0 ? norm_a : 1.0;
  const double sb = norm_b;
  const DenseMatrix a = pencil.a / sa;
  const DenseMatrix b = pencil.b / sb;
  const double unscale = sa / sb;

  // Interpolate, enlarging the node span until all roots sit well inside.
  std::vector<double> roots;
  bool degenerate = false;
  for (double radius = 4.0; radius <= 4096.0; radius *= 4.0) {
    const Eigen::VectorXd coeffs = interpolate_charpoly(a, b, radius);
    const double cmax = coeffs.cwiseAbs().maxCoeff();
    if (cmax < 1e-13) {
      degenerate = true;
      break;
    }
    Eigen::Index deg = coeffs.size() - 1;
    while (deg > 0 && std::abs(coeffs(deg)) < 1e-12 * cmax) --deg;
    if (deg == 0) {
      // Nonzero constant: no finite eigenvalues.
      roots.clear();
      degenerate = false;
      break;
    }
    roots = companion_real_roots(coeffs.head(deg + 1), opts.imag_tol);
    double rmax = 0.0;
    for (double r : roots) rmax = std::max(rmax, std::abs(r));
    if (rmax <= 0.75 * radius) break;
  }
  if (degenerate) {
    throw DegeneratePencilError(
        "det(A - lambda B) vanishes identically; the pencil has no "
        "well-defined finite spectrum");
  }

  // Refine, cluster, and extract eigenvectors from nullspaces.
  for (double& r : roots) r = rayleigh_refine(a, b, r);
  std::sort(roots.begin(), roots.end());
  std::vector<double> clustered;
  for (double r : roots) {
    if (clustered.empty() ||
        std::abs(r - clustered.back()) > opts.cluster_tol * (1.0 + std::abs(r))) {
      clustered.push_back(r);
    }
  }

  for (double lam : clustered) {
    const DenseMatrix m = a - lam * b;
    Eigen::JacobiSVD<DenseMatrix> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double smax = std::max(sv(0), 1e-300);
    int nullity = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (sv(i) <= smax * 1e-10) ++nullity;
    }
    if (nullity == 0) nullity = 1;  // smallest singular vector still best
    for (int k = 0; k < nullity; ++k) {
      Eigenpair pair;
      pair.vector = svd.matrixV().col(n - 1 - k).normalized();
      pair.lambda = lam * unscale;
      pair.b_norm = (pair.vector.adjoint() * pencil.b * pair.vector)(0).real();
      pair.multiplicity = nullity;
      const double resid =
          (pencil.a * pair.vector - pair.lambda * pencil.b * pair.vector)
              .norm();
      if (resid <= opts.residual_scale *
                       (norm_a + std::abs(pair.lambda) * norm_b)) {
        out.pairs.push_back(std::move(pair));
      }
    }
  }
  std::sort(out.pairs.begin(), out.pairs.end(),
            [](const Eigenpair& x, const Eigenpair& y) {
              return x.lambda < y.lambda;
            });
  return out;
}

ClosedFormResult example2_closed_form(double a1, double a2, double a3,
                                      double a4, double b) {
  const double q = a1 * a2 * a3 + a1 * a2 * a4 + a1 * a3 * a4 + a2 * a3 * a4 -
                   2.0 * (a1 * a4 + a2 * a3) * b -
                   (a1 + a2 + a3 + a4) * b * b + 4.0 * b * b * b;
  const double scale = std::abs(a1 * a2 * a3) + std::abs(b) + 1.0;
  if (std::abs(q) < 1e-14 * scale) {
    throw UndefinedClosedFormError("closed form undefined: Q = 0");
  }
  ClosedFormResult res;
  res.lambda = (a1 * a2 * a3 * a4 - (a1 * a4 + a2 * a3) * b * b +
                b * b * b * b) /
               q;
  res.vector << (a4 - b) * (a2 * a3 - b * b), (a3 - b) * (a1 * a4 - b * b),
      (a2 - b) * (a1 * a4 - b * b), (a1 - b) * (a2 * a3 - b * b);
  res.vector /= q;
  return res;
}

double fidelity(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) {
  const double nu = u.norm();
  const double nv = v.norm();
  if (nu == 0.0 || nv == 0.0) {
    throw ConfigError("fidelity of a zero vector is undefined");
  }
  const Complex ip = u.dot(v);
  return std::norm(ip) / (nu * nu * nv * nv);
}

Eigen::VectorXcd b_normalize(const Eigen::VectorXcd& v, const DenseMatrix& b) {
  const double bn = (v.adjoint() * b * v)(0).real();
  if (bn <= 1e-14) {
    throw CannotBNormalizeError(
        "vector has nonpositive B-norm " + std::to_string(bn) +
        "; cannot impose <v|B|v> = 1");
  }
  return v / std::sqrt(bn);
}

Eigen::VectorXcd canonical_phase(const Eigen::VectorXcd& v) {
  Eigen::Index imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  const Complex z = v(imax);
  if (std::abs(z) == 0.0) return v;
  return v * (std::conj(z) / std::abs(z));
}

}  // namespace qpencil
