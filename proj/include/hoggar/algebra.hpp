// SPDX-License-Identifier: Apache-2.0
//
// Complex linear algebra primitives and Hadamard matrices.
//
// Index convention: an integer index j in [0, 2^n) corresponds to its
// MSB-first binary expansion (j_1, ..., j_n). Sylvester entries, qubit
// tensor ordering and the Z_2^3 labels used elsewhere all follow it.
#pragma once

#include <Eigen/Dense>

#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "hoggar/errors.hpp"

namespace hoggar {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Tolerance for matrix identities unless a caller overrides it.
inline constexpr double kDefaultTol = 1e-12;

/// Bounds-checked entry access.
inline Complex entry(const ComplexMatrix& m, Index r, Index c) {
  if (r < 0 || c < 0 || r >= m.rows() || c >= m.cols()) {
    throw InvalidArgument("matrix index (" + std::to_string(r) + "," + std::to_string(c) +
                          ") out of range for " + std::to_string(m.rows()) + "x" +
                          std::to_string(m.cols()));
  }
  return m(r, c);
}

/// Product with an explicit dimension check (Eigen only asserts in debug builds).
inline ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw InvalidArgument("product dimension mismatch: " + std::to_string(a.rows()) + "x" +
                          std::to_string(a.cols()) + " * " + std::to_string(b.rows()) + "x" +
                          std::to_string(b.cols()));
  }
  return a * b;
}

/// Largest entrywise modulus of a - b.
inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw InvalidArgument("shape mismatch in max_abs_diff");
  }
  return (a - b).cwiseAbs().maxCoeff();
}

/// |a><a| for a (not necessarily normalized) vector.
inline ComplexMatrix outer(const ComplexVector& a) { return a * a.adjoint(); }

/// Kronecker product, left factor is the most significant.
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

/// Rank-1 projector distance between the lines spanned by a and b:
/// max entrywise |P_a - P_b|. Independent of global phases.
inline double projector_distance(const ComplexVector& a, const ComplexVector& b) {
  const ComplexVector na = a.normalized();
  const ComplexVector nb = b.normalized();
  return max_abs_diff(outer(na), outer(nb));
}

/// Element of Z_2^3, stored MSB-first.
struct BinaryTriple {
  std::array<std::uint8_t, 3> bits{0, 0, 0};

  static BinaryTriple from_index(int idx) {
    if (idx < 0 || idx > 7) throw InvalidArgument("binary triple index out of range");
    return BinaryTriple{{static_cast<std::uint8_t>((idx >> 2) & 1),
                         static_cast<std::uint8_t>((idx >> 1) & 1),
                         static_cast<std::uint8_t>(idx & 1)}};
  }
  int index() const { return (bits[0] << 2) | (bits[1] << 1) | bits[2]; }

  friend BinaryTriple operator+(const BinaryTriple& a, const BinaryTriple& b) {
    return BinaryTriple{{static_cast<std::uint8_t>(a.bits[0] ^ b.bits[0]),
                         static_cast<std::uint8_t>(a.bits[1] ^ b.bits[1]),
                         static_cast<std::uint8_t>(a.bits[2] ^ b.bits[2])}};
  }
  friend bool operator==(const BinaryTriple&, const BinaryTriple&) = default;

  /// Mod-2 dot product.
  int dot(const BinaryTriple& o) const {
    return (bits[0] * o.bits[0] + bits[1] * o.bits[1] + bits[2] * o.bits[2]) & 1;
  }
};

/// Mod-2 dot product of the binary expansions of two indices.
inline int bit_dot(unsigned a, unsigned b) { return std::popcount(a & b) & 1; }

struct HadamardReport {
  bool is_hadamard = false;
  double max_deviation = 0.0;
};

/// Checks |h_ij| = 1 and H H^dagger = d I entrywise within tol.
inline HadamardReport is_hadamard(const ComplexMatrix& m, double tol = kDefaultTol) {
  if (m.rows() != m.cols()) throw InvalidArgument("is_hadamard: matrix is not square");
  const Index d = m.rows();
  HadamardReport rep;
  if (d == 0) return rep;
  double dev = 0.0;
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) dev = std::max(dev, std::abs(std::abs(m(i, j)) - 1.0));
  }
  const ComplexMatrix gram = m * m.adjoint();
  const ComplexMatrix target = static_cast<double>(d) * ComplexMatrix::Identity(d, d);
  dev = std::max(dev, max_abs_diff(gram, target));
  rep.max_deviation = dev;
  rep.is_hadamard = dev <= tol;
  return rep;
}

/// Square complex Hadamard matrix. Real matrices additionally keep their
/// exact +-1 signs so combinatorial counts never go through floating point.
class HadamardMatrix {
 public:
  /// Validates m. Entries within tol of +-1 are snapped to exactly +-1; if
  /// every entry snaps, the matrix is flagged real.
  static HadamardMatrix from_matrix(const ComplexMatrix& m, double tol = kDefaultTol) {
    const auto rep = is_hadamard(m, std::max(tol, 1e-12));
    if (m.rows() < 1 || !rep.is_hadamard) {
      throw InvalidArgument("not a Hadamard matrix (deviation " +
                            std::to_string(rep.max_deviation) + ")");
    }
    const Index d = m.rows();
    std::vector<int> signs(static_cast<std::size_t>(d * d));
    bool real = true;
    for (Index i = 0; i < d && real; ++i) {
      for (Index j = 0; j < d; ++j) {
        const Complex z = m(i, j);
        if (std::abs(z - 1.0) <= tol) {
          signs[static_cast<std::size_t>(i * d + j)] = 1;
        } else if (std::abs(z + 1.0) <= tol) {
          signs[static_cast<std::size_t>(i * d + j)] = -1;
        } else {
          real = false;
          break;
        }
      }
    }
    if (real) return from_signs(static_cast<int>(d), std::move(signs));
    HadamardMatrix h;
    h.matrix_ = m;
    return h;
  }

  /// Real Hadamard from row-major +-1 signs.
  static HadamardMatrix from_signs(int d, std::vector<int> signs) {
    if (d < 1 || signs.size() != static_cast<std::size_t>(d) * d) {
      throw InvalidArgument("from_signs: expected d*d signs");
    }
    ComplexMatrix m(d, d);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        const int s = signs[static_cast<std::size_t>(i * d + j)];
        if (s != 1 && s != -1) throw InvalidArgument("from_signs: entries must be +-1");
        m(i, j) = Complex(s, 0.0);
      }
    }
    if (!is_hadamard(m, 0.0).is_hadamard) throw InvalidArgument("from_signs: rows not orthogonal");
    HadamardMatrix h;
    h.matrix_ = std::move(m);
    h.signs_ = std::move(signs);
    return h;
  }

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const ComplexMatrix& matrix() const { return matrix_; }
  bool is_real() const { return !signs_.empty(); }
  const std::vector<int>& signs() const { return signs_; }

  /// Exact sign of a real Hadamard entry.
  int sign(int j, int k) const {
    if (!is_real()) throw Unsupported("sign() on a complex Hadamard matrix");
    if (j < 0 || k < 0 || j >= dim() || k >= dim()) throw InvalidArgument("sign index out of range");
    return signs_[static_cast<std::size_t>(j * dim() + k)];
  }
  Complex operator()(int j, int k) const { return entry(matrix_, j, k); }

  friend bool operator==(const HadamardMatrix& a, const HadamardMatrix& b) {
    return a.matrix_ == b.matrix_;
  }

 private:
  HadamardMatrix() = default;
  ComplexMatrix matrix_;
  std::vector<int> signs_;
};

/// 2^n x 2^n Sylvester matrix, entry (j,k) = (-1)^<j,k>.
inline HadamardMatrix sylvester_hadamard(int n) {
  if (n <= 0 || n > 4) throw InvalidArgument("sylvester_hadamard: exponent must be in 1..4");
  const int d = 1 << n;
  std::vector<int> signs(static_cast<std::size_t>(d * d));
  for (int j = 0; j < d; ++j) {
    for (int k = 0; k < d; ++k) {
      signs[static_cast<std::size_t>(j * d + k)] = bit_dot(j, k) ? -1 : 1;
    }
  }
  return HadamardMatrix::from_signs(d, std::move(signs));
}

/// d x d Fourier matrix, entry (j,k) = exp(2 pi i jk / d).
inline HadamardMatrix fourier_matrix(int d) {
  if (d <= 1) throw InvalidArgument("fourier_matrix: d must be >= 2");
  ComplexMatrix m(d, d);
  for (int j = 0; j < d; ++j) {
    for (int k = 0; k < d; ++k) {
      const int r = (j * k) % d;
      if (2 * r == d) {
        m(j, k) = Complex(-1.0, 0.0);
      } else if (r == 0) {
        m(j, k) = Complex(1.0, 0.0);
      } else {
        m(j, k) = std::polar(1.0, 2.0 * std::numbers::pi * r / d);
      }
    }
  }
  return HadamardMatrix::from_matrix(m, 1e-14);
}

/// H = diag(row_phases) * dephased * diag(col_phases), dephased has a
/// first row and column of ones.
struct DephasedForm {
  HadamardMatrix dephased;
  ComplexVector row_phases;
  ComplexVector col_phases;
};

inline DephasedForm dephase_decomposition(const HadamardMatrix& h) {
  const ComplexMatrix& m = h.matrix();
  const int d = h.dim();
  ComplexVector rows(d), cols(d);
  for (int j = 0; j < d; ++j) rows(j) = m(j, 0);
  for (int k = 0; k < d; ++k) cols(k) = std::conj(m(0, 0)) * m(0, k);
  ComplexMatrix out(d, d);
  for (int j = 0; j < d; ++j) {
    for (int k = 0; k < d; ++k) {
      out(j, k) = m(j, k) * std::conj(rows(j)) * std::conj(cols(k));
    }
  }
  // The first row and column are ones by construction; pin them exactly.
  for (int i = 0; i < d; ++i) {
    out(i, 0) = 1.0;
    out(0, i) = 1.0;
  }
  return DephasedForm{HadamardMatrix::from_matrix(out, 1e-10), rows, cols};
}

/// Canonical diagonal-equivalent form with first row and column all ones.
inline HadamardMatrix dephase(const HadamardMatrix& h) { return dephase_decomposition(h).dephased; }

}  // namespace hoggar
