// SPDX-License-Identifier: Apache-2.0
//
// Hadamard-based SIC construction: H_jk(v) is row j of H with its k-th
// coordinate multiplied by v. Verification of the SIC property, overlap
// tables against the conjugate family, three-qubit Pauli covariance and
// the conjugation twin map.
#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "hoggar/algebra.hpp"

namespace hoggar {

struct ConstructionVector {
  int j = 0;
  int k = 0;
  ComplexVector coords;  // unnormalized
  double squared_norm = 0.0;

  ComplexVector normalized() const { return coords / std::sqrt(squared_norm); }
};

/// Whether (d, v) is one of the parameter choices known to give d^2
/// equiangular lines. Only advisory.
inline bool is_admissible(const HadamardMatrix& h, Complex v, double tol = 1e-9) {
  const double s3 = std::sqrt(3.0);
  std::vector<Complex> allowed;
  switch (h.dim()) {
    case 2:
      for (double outer : {1.0, -1.0}) {
        for (double a : {1.0, -1.0}) {
          for (double b : {1.0, -1.0}) {
            allowed.push_back(outer * (1.0 + a * s3) * Complex(1.0, b) / 2.0);
          }
        }
      }
      break;
    case 3:
      allowed = {Complex(0, 0), Complex(-2, 0), Complex(1, s3), Complex(1, -s3)};
      break;
    case 8:
      if (dephase(h).is_real()) allowed = {Complex(-1, 2), Complex(-1, -2)};
      break;
    default:
      break;
  }
  return std::any_of(allowed.begin(), allowed.end(),
                     [&](Complex a) { return std::abs(a - v) <= tol; });
}

/// d^2 construction vectors H_jk(v) with derived effects |phi><phi|/d.
class SicFamily {
 public:
  /// Assembles a family from explicit vectors (ordered j-major) and derives
  /// the effects. Used by both the constructor and deserialization.
  SicFamily(HadamardMatrix hadamard, Complex v, std::vector<ConstructionVector> vectors)
      : hadamard_(std::move(hadamard)), v_(v), vectors_(std::move(vectors)) {
    const int d = hadamard_.dim();
    if (vectors_.size() != static_cast<std::size_t>(d) * d) {
      throw InvalidArgument("SicFamily: expected d^2 vectors");
    }
    effects_.reserve(vectors_.size());
    for (auto& cv : vectors_) {
      if (cv.coords.size() != d) throw InvalidArgument("SicFamily: vector dimension mismatch");
      cv.squared_norm = cv.coords.squaredNorm();
      if (!(cv.squared_norm > 0.0)) throw InvalidArgument("SicFamily: zero construction vector");
      effects_.push_back(outer(cv.coords) / (cv.squared_norm * d));
    }
    admissible_ = is_admissible(hadamard_, v_);
  }

  int dim() const { return hadamard_.dim(); }
  int size() const { return static_cast<int>(vectors_.size()); }
  Complex v() const { return v_; }
  const HadamardMatrix& hadamard() const { return hadamard_; }
  bool admissible() const { return admissible_; }
  const std::vector<ConstructionVector>& vectors() const { return vectors_; }
  const std::vector<ComplexMatrix>& effects() const { return effects_; }

  int index(int j, int k) const { return j * dim() + k; }
  const ConstructionVector& vector(int j, int k) const {
    if (j < 0 || k < 0 || j >= dim() || k >= dim()) throw InvalidArgument("family index out of range");
    return vectors_[static_cast<std::size_t>(index(j, k))];
  }
  /// Normalized vector phi at flat index.
  ComplexVector state(int idx) const { return vectors_.at(static_cast<std::size_t>(idx)).normalized(); }

 private:
  HadamardMatrix hadamard_;
  Complex v_;
  std::vector<ConstructionVector> vectors_;
  std::vector<ComplexMatrix> effects_;
  bool admissible_ = false;
};

inline ComplexVector jw_vector(const HadamardMatrix& h, Complex v, int j, int k) {
  ComplexVector x = h.matrix().row(j).transpose();
  x(k) *= v;
  return x;
}

/// Builds H(v) = {H_jk(v)}. Any d >= 2 is accepted; admissibility is
/// reported on the family, not enforced.
inline SicFamily jw_vectors(const HadamardMatrix& h, Complex v) {
  const int d = h.dim();
  if (d < 2) throw InvalidArgument("jw_vectors: d must be >= 2");
  std::vector<ConstructionVector> vecs;
  vecs.reserve(static_cast<std::size_t>(d * d));
  for (int j = 0; j < d; ++j) {
    for (int k = 0; k < d; ++k) {
      ConstructionVector cv;
      cv.j = j;
      cv.k = k;
      cv.coords = jw_vector(h, v, j, k);
      vecs.push_back(std::move(cv));
    }
  }
  return SicFamily(h, v, std::move(vecs));
}

struct SicReport {
  bool is_sic = false;
  double overlap_value = 0.0;    // mean observed tr(Pi_i Pi_j), i != j
  double max_deviation = 0.0;    // worst of identity and overlap deviations
  double identity_deviation = 0.0;
  double overlap_deviation = 0.0;
};

/// Sum of effects = I and tr(Pi_i Pi_j) = 1/(d^2 (d+1)) for all i != j.
inline SicReport verify_sic(const SicFamily& fam, double tol = kDefaultTol) {
  if (fam.size() == 0) throw InvalidArgument("verify_sic: empty family");
  const int d = fam.dim();
  const int n = fam.size();
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (const auto& e : fam.effects()) sum += e;
  SicReport rep;
  rep.identity_deviation = max_abs_diff(sum, ComplexMatrix::Identity(d, d));

  const double target = 1.0 / (static_cast<double>(d) * d * (d + 1));
  std::vector<ComplexVector> phis;
  phis.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) phis.push_back(fam.state(i));
  double acc = 0.0;
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double hs = std::norm(phis[i].dot(phis[j])) / (static_cast<double>(d) * d);
      acc += hs;
      worst = std::max(worst, std::abs(hs - target));
    }
  }
  const double pairs = 0.5 * n * (n - 1);
  rep.overlap_value = pairs > 0 ? acc / pairs : 0.0;
  rep.overlap_deviation = worst;
  rep.max_deviation = std::max(rep.identity_deviation, worst);
  rep.is_sic = n == d * d && rep.max_deviation <= tol;
  return rep;
}

/// Hermitian product <b|a> = sum conj(b_l) a_l.
inline Complex hermitian_product(const ComplexVector& a, const ComplexVector& b) { return b.dot(a); }

struct OverlapTable {
  int m = 0;
  int n = 0;
  std::vector<double> values;  // indexed j*d + k

  /// Distinct values (within tol, ascending) with multiplicities.
  std::vector<std::pair<double, int>> distinct(double tol = 1e-9) const {
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::pair<double, int>> out;
    for (double x : sorted) {
      if (!out.empty() && std::abs(x - out.back().first) <= tol) {
        ++out.back().second;
      } else {
        out.emplace_back(x, 1);
      }
    }
    return out;
  }
};

/// T_(m,n) = (|H_jk(v) . H_mn(vbar)|^2)_(j,k) from raw unnormalized vectors.
inline OverlapTable overlap_table(const SicFamily& fam_v, const SicFamily& fam_vbar, int m, int n,
                                  double tol = 1e-12) {
  if (fam_v.dim() != fam_vbar.dim()) throw InvalidArgument("overlap_table: dimension mismatch");
  if (!(fam_v.hadamard() == fam_vbar.hadamard())) {
    throw InvalidArgument("overlap_table: families use different Hadamard matrices");
  }
  if (std::abs(fam_vbar.v() - std::conj(fam_v.v())) > tol) {
    throw InvalidArgument("overlap_table: parameters are not complex conjugates");
  }
  const int d = fam_v.dim();
  const ComplexVector& ref = fam_vbar.vector(m, n).coords;
  OverlapTable t;
  t.m = m;
  t.n = n;
  t.values.reserve(static_cast<std::size_t>(d * d));
  for (const auto& cv : fam_v.vectors()) t.values.push_back(std::norm(hermitian_product(cv.coords, ref)));
  return t;
}

/// Label (alpha, beta) in Z_2^3 x Z_2^3 of a three-qubit Pauli operator.
struct PauliLabel {
  BinaryTriple alpha;
  BinaryTriple beta;

  static PauliLabel from_index(int idx) {
    if (idx < 0 || idx > 63) throw InvalidArgument("Pauli label index out of range");
    return PauliLabel{BinaryTriple::from_index(idx >> 3), BinaryTriple::from_index(idx & 7)};
  }
  int index() const { return (alpha.index() << 3) | beta.index(); }
  friend PauliLabel operator+(const PauliLabel& a, const PauliLabel& b) {
    return PauliLabel{a.alpha + b.alpha, a.beta + b.beta};
  }
  friend bool operator==(const PauliLabel&, const PauliLabel&) = default;
};

/// sigma_Z^a1 sigma_X^b1 (x) sigma_Z^a2 sigma_X^b2 (x) sigma_Z^a3 sigma_X^b3,
/// first qubit most significant.
inline ComplexMatrix pauli_operator(const PauliLabel& label, int d = 8) {
  if (d != 8) throw Unsupported("pauli_operator: only three qubits (d = 8) are supported");
  ComplexMatrix x(2, 2), z(2, 2), id = ComplexMatrix::Identity(2, 2);
  x << 0, 1, 1, 0;
  z << 1, 0, 0, -1;
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (int q = 0; q < 3; ++q) {
    const ComplexMatrix zq = label.alpha.bits[q] ? z : id;
    const ComplexMatrix xq = label.beta.bits[q] ? x : id;
    out = kron(out, zq * xq);
  }
  return out;
}

struct CovarianceReport {
  bool covariant = false;
  double worst_deviation = 0.0;
};

/// For every label (alpha, beta) and every (iota, kappa), checks that
/// P H_(iota,kappa)(w) spans the same line as H_(iota+alpha, kappa+beta)(w).
inline CovarianceReport verify_covariance(const SicFamily& fam, double tol = kDefaultTol) {
  if (fam.dim() != 8) throw Unsupported("verify_covariance: requires d = 8");
  if (!(fam.hadamard() == sylvester_hadamard(3))) {
    throw Unsupported("verify_covariance: label action assumes the Sylvester source");
  }
  std::vector<ComplexMatrix> projectors;
  projectors.reserve(64);
  for (int i = 0; i < 64; ++i) projectors.push_back(outer(fam.state(i)));

  CovarianceReport rep;
  for (int l = 0; l < 64; ++l) {
    const ComplexMatrix p = pauli_operator(PauliLabel::from_index(l));
    for (int idx = 0; idx < 64; ++idx) {
      const ComplexVector moved = p * fam.state(idx);
      const int target = idx ^ l;  // (iota+alpha)*8 + (kappa+beta)
      rep.worst_deviation =
          std::max(rep.worst_deviation, max_abs_diff(outer(moved), projectors[static_cast<std::size_t>(target)]));
    }
  }
  rep.covariant = rep.worst_deviation <= tol;
  return rep;
}

/// Complex conjugation with respect to the basis e'_l = c'_l e_l in which the
/// source Hadamard is real (c' from dephasing). For real sources e' = e.
inline ComplexVector conjugate_in_basis(const ComplexVector& x, const ComplexVector& basis_phases) {
  ComplexVector out(x.size());
  for (Index l = 0; l < x.size(); ++l) {
    out(l) = basis_phases(l) * basis_phases(l) * std::conj(x(l));
  }
  return out;
}

/// Phases c'_l of the conjugation basis, or throws if H is not diagonally
/// equivalent to a real Hadamard matrix.
inline ComplexVector conjugation_basis(const HadamardMatrix& h) {
  const int d = h.dim();
  if (h.is_real()) return ComplexVector::Ones(d);
  auto form = dephase_decomposition(h);
  if (!form.dephased.is_real()) {
    throw Unsupported("conjugate_set: source Hadamard is not diagonally equivalent to a real one");
  }
  return form.col_phases;
}

/// Applies the antiunitary involution C to every vector. For real H the result
/// equals jw_vectors(H, conj(v)) exactly; otherwise up to a phase per row.
inline SicFamily conjugate_set(const SicFamily& fam) {
  const ComplexVector phases = conjugation_basis(fam.hadamard());
  std::vector<ConstructionVector> vecs;
  vecs.reserve(fam.vectors().size());
  for (const auto& cv : fam.vectors()) {
    ConstructionVector out = cv;
    out.coords = conjugate_in_basis(cv.coords, phases);
    vecs.push_back(std::move(out));
  }
  return SicFamily(fam.hadamard(), std::conj(fam.v()), std::move(vecs));
}

}  // namespace hoggar
