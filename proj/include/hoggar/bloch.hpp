// SPDX-License-Identifier: Apache-2.0
//
// Generalized Bloch representation in the Gell-Mann basis. Coordinates are
// scaled by sqrt(d/(d-1)) so pure states lie on the unit sphere.
#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "hoggar/algebra.hpp"
#include "hoggar/designs.hpp"
#include "hoggar/sic.hpp"

namespace hoggar {

/// d^2 - 1 traceless Hermitian matrices, orthonormal under tr(A B).
/// Order: symmetric pairs (i<j), antisymmetric pairs (i<j), then diagonal.
struct HermitianBasis {
  int d = 0;
  std::vector<ComplexMatrix> elements;
  std::vector<bool> symmetric;
  std::vector<std::string> names;

  int size() const { return static_cast<int>(elements.size()); }
  int symmetric_count() const {
    int n = 0;
    for (bool s : symmetric) n += s ? 1 : 0;
    return n;
  }
};

inline HermitianBasis hermitian_basis(int d) {
  if (d < 2) throw InvalidArgument("hermitian_basis: d must be >= 2");
  HermitianBasis b;
  b.d = d;
  const double r = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      ComplexMatrix m = ComplexMatrix::Zero(d, d);
      m(i, j) = r;
      m(j, i) = r;
      b.elements.push_back(std::move(m));
      b.symmetric.push_back(true);
      b.names.push_back("S_" + std::to_string(i) + "_" + std::to_string(j));
    }
  }
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      ComplexMatrix m = ComplexMatrix::Zero(d, d);
      m(i, j) = Complex(0.0, -r);
      m(j, i) = Complex(0.0, r);
      b.elements.push_back(std::move(m));
      b.symmetric.push_back(false);
      b.names.push_back("A_" + std::to_string(i) + "_" + std::to_string(j));
    }
  }
  for (int l = 1; l < d; ++l) {
    ComplexMatrix m = ComplexMatrix::Zero(d, d);
    const double c = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
    for (int i = 0; i < l; ++i) m(i, i) = c;
    m(l, l) = -c * l;
    b.elements.push_back(std::move(m));
    b.symmetric.push_back(true);
    b.names.push_back("D_" + std::to_string(l));
  }
  return b;
}

using BlochVector = RealVector;

inline BlochVector bloch_vector(const ComplexMatrix& rho, const HermitianBasis& basis) {
  if (rho.rows() != basis.d || rho.cols() != basis.d) throw InvalidArgument("bloch_vector: dimension mismatch");
  const double scale = std::sqrt(static_cast<double>(basis.d) / (basis.d - 1));
  BlochVector out(basis.size());
  for (int a = 0; a < basis.size(); ++a) {
    // tr(rho B) with B Hermitian is sum_ij rho_ij conj(B_ij).
    out(a) = scale * rho.cwiseProduct(basis.elements[static_cast<std::size_t>(a)].conjugate()).sum().real();
  }
  return out;
}

/// Negates the antisymmetric coordinates.
inline BlochVector reflect(const BlochVector& x, const HermitianBasis& basis) {
  if (x.size() != basis.size()) throw InvalidArgument("reflect: length mismatch");
  BlochVector y = x;
  for (int a = 0; a < basis.size(); ++a) {
    if (!basis.symmetric[static_cast<std::size_t>(a)]) y(a) = -y(a);
  }
  return y;
}

inline std::vector<BlochVector> bloch_vectors(const StateSet& s, const HermitianBasis& basis) {
  if (s.dim() != basis.d) throw InvalidArgument("bloch_vectors: dimension mismatch");
  std::vector<BlochVector> out;
  out.reserve(static_cast<std::size_t>(s.size()));
  for (int i = 0; i < s.size(); ++i) out.push_back(bloch_vector(s.projector(i), basis));
  return out;
}

inline RealMatrix gram_matrix(const std::vector<BlochVector>& vs) {
  const auto n = static_cast<Index>(vs.size());
  RealMatrix g(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) g(i, j) = vs[static_cast<std::size_t>(i)].dot(vs[static_cast<std::size_t>(j)]);
  }
  return g;
}

struct SimplexReport {
  bool pass = false;
  double expected_inner = 0.0;
  double norm_deviation = 0.0;
  double inner_deviation = 0.0;
  double centroid_norm = 0.0;
  int worst_i = -1;
  int worst_j = -1;
};

inline SimplexReport simplex_check(const StateSet& s, const HermitianBasis& basis, double tol = kDefaultTol) {
  const int d = basis.d;
  if (s.size() != d * d) throw InvalidArgument("simplex_check: expected d^2 states");
  const auto vs = bloch_vectors(s, basis);
  SimplexReport rep;
  rep.expected_inner = -1.0 / (static_cast<double>(d) * d - 1);
  BlochVector sum = BlochVector::Zero(basis.size());
  for (std::size_t i = 0; i < vs.size(); ++i) {
    sum += vs[i];
    rep.norm_deviation = std::max(rep.norm_deviation, std::abs(vs[i].norm() - 1.0));
    for (std::size_t j = i + 1; j < vs.size(); ++j) {
      const double dev = std::abs(vs[i].dot(vs[j]) - rep.expected_inner);
      if (dev > rep.inner_deviation) {
        rep.inner_deviation = dev;
        rep.worst_i = static_cast<int>(i);
        rep.worst_j = static_cast<int>(j);
      }
    }
  }
  rep.centroid_norm = sum.norm();
  rep.pass = rep.norm_deviation <= tol && rep.inner_deviation <= tol && rep.centroid_norm <= tol;
  return rep;
}

struct ReflectionReport {
  bool pass = false;
  int symmetric_count = 0;
  double worst_deviation = 0.0;
  int worst_index = -1;
};

/// Checks B(S_vbar[i]) == reflect(B(S_v[i])) coordinatewise for every i.
inline ReflectionReport transpose_reflection_check(const StateSet& sv, const StateSet& svbar,
                                                   const HermitianBasis& basis, double tol = kDefaultTol) {
  if (sv.dim() != basis.d || svbar.dim() != basis.d) throw InvalidArgument("transpose_reflection_check: dimension mismatch");
  if (sv.size() != svbar.size()) throw InvalidArgument("transpose_reflection_check: set sizes differ");
  ReflectionReport rep;
  rep.symmetric_count = basis.symmetric_count();
  for (int i = 0; i < sv.size(); ++i) {
    const BlochVector a = reflect(bloch_vector(sv.projector(i), basis), basis);
    const BlochVector b = bloch_vector(svbar.projector(i), basis);
    const double dev = (a - b).cwiseAbs().maxCoeff();
    if (dev > rep.worst_deviation || rep.worst_index < 0) {
      rep.worst_deviation = dev;
      rep.worst_index = i;
    }
  }
  rep.pass = rep.worst_deviation <= tol;
  return rep;
}

/// Family overload. The basis must be the conjugation basis, so only
/// families over a real Hadamard matrix are accepted.
inline ReflectionReport transpose_reflection_check(const SicFamily& fv, const SicFamily& fvbar,
                                                   const HermitianBasis& basis, double tol = kDefaultTol) {
  if (!fv.hadamard().is_real() || !fvbar.hadamard().is_real()) {
    throw Unsupported("transpose_reflection_check: complex Hadamard source");
  }
  return transpose_reflection_check(StateSet::from_family(fv), StateSet::from_family(fvbar), basis, tol);
}

}  // namespace hoggar
