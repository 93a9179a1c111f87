// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "hoggar/sic.hpp"
#include "support.hpp"

namespace hoggar {
namespace {

using testing::hoggar;
using testing::kHoggarV;

TEST(Construction, HoggarFirstVector) {
  const auto fam = hoggar();
  const auto& cv = fam.vector(0, 0);
  EXPECT_EQ(cv.coords(0), kHoggarV);
  for (int l = 1; l < 8; ++l) EXPECT_EQ(cv.coords(l), Complex(1.0, 0.0));
  EXPECT_DOUBLE_EQ(cv.squared_norm, 12.0);
  EXPECT_EQ(fam.size(), 64);
  EXPECT_TRUE(fam.admissible());
}

TEST(Construction, UnitParameterRepeatsRows) {
  const auto fam = jw_vectors(sylvester_hadamard(3), 1.0);
  for (int j = 0; j < 8; ++j) {
    for (int k = 0; k < 8; ++k) {
      EXPECT_EQ(max_abs_diff(fam.vector(j, k).coords, sylvester_hadamard(3).matrix().row(j).transpose()), 0.0);
    }
  }
  EXPECT_FALSE(fam.admissible());
  EXPECT_FALSE(verify_sic(fam).is_sic);
}

TEST(Construction, QubitParameters) {
  for (Complex v : testing::qubit_parameters()) {
    const auto fam = testing::tetrahedral(v);
    EXPECT_TRUE(fam.admissible());
    EXPECT_EQ(fam.size(), 4);
    const auto rep = verify_sic(fam);
    EXPECT_TRUE(rep.is_sic) << v;
    for (int i = 0; i < 4; ++i) {
      for (int j = i + 1; j < 4; ++j) EXPECT_NEAR(std::norm(fam.state(i).dot(fam.state(j))), 1.0 / 3.0, 1e-12);
    }
  }
}

TEST(Construction, QutritParameters) {
  for (Complex v : testing::qutrit_parameters()) {
    const auto fam = jw_vectors(fourier_matrix(3), v);
    EXPECT_TRUE(fam.admissible());
    const auto rep = verify_sic(fam);
    EXPECT_LT(rep.overlap_deviation, 1e-12) << v;
    EXPECT_TRUE(rep.is_sic) << v;
  }
}

TEST(VerifySic, HoggarPair) {
  for (Complex v : {kHoggarV, std::conj(kHoggarV)}) {
    const auto rep = verify_sic(hoggar(v));
    EXPECT_TRUE(rep.is_sic);
    EXPECT_NEAR(rep.overlap_value, 1.0 / 576.0, 1e-15);
    EXPECT_LT(rep.identity_deviation, 1e-12);
  }
}

TEST(VerifySic, WrongParameterFailsClearly) {
  const auto rep = verify_sic(hoggar(2.0));
  EXPECT_FALSE(rep.is_sic);
  EXPECT_GT(rep.max_deviation, 0.01);
}

TEST(VerifySic, EmptyFamilyThrows) {
  EXPECT_THROW(SicFamily(sylvester_hadamard(1), 1.0, {}), InvalidArgument);
}

// Closed-form numerator of <H_mn(vbar) | H_jk(v)> for a real Hadamard matrix,
// evaluated from integer signs.
Complex closed_form(const HadamardMatrix& h, Complex v, int j, int k, int m, int n) {
  const int d = h.dim();
  const int s1 = h.sign(j, n) * h.sign(m, n);
  const int s2 = h.sign(j, k) * h.sign(m, k);
  const int s3 = h.sign(j, k) * h.sign(m, n);
  return double(j == m ? d : 0) + (v - 1.0) * double(s1 + s2) + (k == n ? (v - 1.0) * (v - 1.0) * double(s3) : 0.0);
}

TEST(Overlaps, FourCasesMatchClosedForm) {
  const auto h = sylvester_hadamard(3);
  const auto fv = hoggar();
  const auto fb = hoggar(std::conj(kHoggarV));
  int cases[4] = {0, 0, 0, 0};
  for (int j = 0; j < 8; ++j) {
    for (int k = 0; k < 8; ++k) {
      for (int m = 0; m < 8; ++m) {
        for (int n = 0; n < 8; ++n) {
          const Complex raw = hermitian_product(fv.vector(j, k).coords, fb.vector(m, n).coords);
          const Complex expect = closed_form(h, kHoggarV, j, k, m, n);
          EXPECT_LT(std::abs(raw - expect), 1e-10);
          const double mag = std::norm(expect);
          EXPECT_TRUE(std::abs(mag) < 1e-12 || std::abs(mag - 32.0) < 1e-12);
          ++cases[(j == m) * 2 + (k == n)];
        }
      }
    }
  }
  EXPECT_EQ(cases[3], 64);
  EXPECT_EQ(cases[0], 64 * 49);
}

TEST(Overlaps, SameIndexValue) {
  // |d + v^2 - 1|^2 with v^2 = -3-4i
  const auto t = overlap_table(hoggar(), hoggar(std::conj(kHoggarV)), 3, 5);
  EXPECT_NEAR(t.values[3 * 8 + 5], 32.0, 1e-12);
}

TEST(Overlaps, TwoValuedLawEveryTable) {
  const auto fv = hoggar();
  const auto fb = hoggar(std::conj(kHoggarV));
  for (int m = 0; m < 8; ++m) {
    for (int n = 0; n < 8; ++n) {
      const auto dist = overlap_table(fv, fb, m, n).distinct(1e-9);
      ASSERT_EQ(dist.size(), 2u);
      EXPECT_NEAR(dist[0].first, 0.0, 1e-20);
      EXPECT_EQ(dist[0].second, 28);
      EXPECT_NEAR(dist[1].first, 32.0, 1e-12);
      EXPECT_EQ(dist[1].second, 36);
    }
  }
}

TEST(Overlaps, QubitTablesHaveOneZero) {
  for (Complex v : testing::qubit_parameters()) {
    const auto fv = testing::tetrahedral(v);
    const auto fb = testing::tetrahedral(std::conj(v));
    for (int m = 0; m < 2; ++m) {
      for (int n = 0; n < 2; ++n) {
        const auto dist = overlap_table(fv, fb, m, n).distinct(1e-9);
        ASSERT_EQ(dist.size(), 2u);
        EXPECT_LT(dist[0].first, 1e-20);
        EXPECT_EQ(dist[0].second, 1);
        EXPECT_EQ(dist[1].second, 3);
      }
    }
  }
}

TEST(Overlaps, RejectsNonTwins) {
  EXPECT_THROW(overlap_table(hoggar(), hoggar(), 0, 0), InvalidArgument);
  EXPECT_THROW(overlap_table(hoggar(), testing::tetrahedral(), 0, 0), InvalidArgument);
}

TEST(Overlaps, DiagonalEquivalenceReduction) {
  std::mt19937_64 rng(11);
  const auto base = overlap_table(hoggar(), hoggar(std::conj(kHoggarV)), 0, 0);
  for (int trial = 0; trial < 5; ++trial) {
    const ComplexVector a = testing::random_phases(8, rng);
    const ComplexVector b = testing::random_phases(8, rng);
    const auto h = HadamardMatrix::from_matrix(a.asDiagonal() * sylvester_hadamard(3).matrix() * b.asDiagonal());
    const auto fv = jw_vectors(h, kHoggarV);
    const auto fb = jw_vectors(h, std::conj(kHoggarV));
    EXPECT_TRUE(fv.admissible());
    for (int m = 0; m < 8; ++m) {
      for (int n = 0; n < 8; ++n) {
        const auto t = overlap_table(fv, fb, m, n);
        const auto ref = overlap_table(hoggar(), hoggar(std::conj(kHoggarV)), m, n);
        for (std::size_t i = 0; i < t.values.size(); ++i) {
          EXPECT_NEAR(std::sqrt(t.values[i]), std::sqrt(ref.values[i]), 1e-10);
        }
      }
    }
    EXPECT_TRUE(verify_sic(fv).is_sic);
  }
  EXPECT_EQ(base.values.size(), 64u);
}

TEST(Pauli, Examples) {
  EXPECT_EQ(max_abs_diff(pauli_operator(PauliLabel::from_index(0)), ComplexMatrix::Identity(8, 8)), 0.0);
  const ComplexMatrix x = pauli_operator(PauliLabel::from_index(1));
  for (int r = 0; r < 8; ++r) {
    for (int c = 0; c < 8; ++c) EXPECT_EQ(x(r, c), Complex(c == (r ^ 1) ? 1.0 : 0.0, 0.0));
  }
  for (int l = 0; l < 64; ++l) {
    const auto lab = PauliLabel::from_index(l);
    const ComplexMatrix p = pauli_operator(lab);
    const double sign = lab.alpha.dot(lab.beta) ? -1.0 : 1.0;
    EXPECT_EQ(max_abs_diff(p * p, sign * ComplexMatrix::Identity(8, 8)), 0.0);
  }
  EXPECT_THROW(pauli_operator(PauliLabel::from_index(0), 4), Unsupported);
}

TEST(Pauli, CompositionIsProjectivelyAdditive) {
  for (int g = 0; g < 64; ++g) {
    for (int h = 0; h < 64; ++h) {
      const ComplexMatrix prod = pauli_operator(PauliLabel::from_index(h)) * pauli_operator(PauliLabel::from_index(g));
      const ComplexMatrix sum = pauli_operator(PauliLabel::from_index(g) + PauliLabel::from_index(h));
      // prod = c * sum with c = +-1
      const Complex c = (sum.adjoint() * prod).trace() / 8.0;
      EXPECT_NEAR(std::abs(c), 1.0, 1e-15);
      EXPECT_LT(max_abs_diff(prod, c * sum), 1e-15);
    }
  }
}

TEST(Covariance, TwinFamilies) {
  for (Complex v : {kHoggarV, std::conj(kHoggarV)}) {
    const auto rep = verify_covariance(hoggar(v));
    EXPECT_TRUE(rep.covariant);
    EXPECT_LT(rep.worst_deviation, 1e-12);
  }
}

TEST(Covariance, ComposedActionMatchesSumLabel) {
  const auto fam = hoggar();
  for (int g : {5, 17, 42}) {
    for (int h : {9, 33, 63}) {
      const ComplexMatrix p = pauli_operator(PauliLabel::from_index(h)) * pauli_operator(PauliLabel::from_index(g));
      for (int idx = 0; idx < 64; ++idx) {
        EXPECT_LT(projector_distance(p * fam.state(idx), fam.state(idx ^ g ^ h)), 1e-12);
      }
    }
  }
}

TEST(Covariance, Unsupported) {
  EXPECT_THROW(verify_covariance(testing::tetrahedral()), Unsupported);
  const auto f = HadamardMatrix::from_matrix(kron(fourier_matrix(2).matrix(),
                                                  kron(fourier_matrix(2).matrix(), fourier_matrix(2).matrix())));
  ComplexMatrix m = f.matrix();
  m.row(1).swap(m.row(2));
  EXPECT_THROW(verify_covariance(jw_vectors(HadamardMatrix::from_matrix(m), kHoggarV)), Unsupported);
}

TEST(Conjugation, HoggarTwinEntrywise) {
  const auto c = conjugate_set(hoggar());
  const auto b = hoggar(std::conj(kHoggarV));
  EXPECT_EQ(c.v(), std::conj(kHoggarV));
  for (int i = 0; i < 64; ++i) EXPECT_EQ(max_abs_diff(c.vectors()[i].coords, b.vectors()[i].coords), 0.0);
}

TEST(Conjugation, RealVectorFixed) {
  ComplexVector x(4);
  x << 1.0, -2.0, 0.5, 3.0;
  EXPECT_EQ(max_abs_diff(conjugate_in_basis(x, ComplexVector::Ones(4)), x), 0.0);
}

TEST(Conjugation, PreservesOverlapMagnitudes) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const ComplexVector c = testing::random_phases(5, rng);
    const ComplexVector x = testing::haar_state(5, rng);
    const ComplexVector y = testing::haar_state(5, rng);
    EXPECT_NEAR(std::abs(conjugate_in_basis(x, c).dot(conjugate_in_basis(y, c))), std::abs(x.dot(y)), 1e-14);
    EXPECT_LT(max_abs_diff(conjugate_in_basis(conjugate_in_basis(x, c), c), x), 1e-15);
  }
}

TEST(Conjugation, DiagonallyEquivalentSourceGivesTwinLines) {
  std::mt19937_64 rng(5);
  const ComplexVector a = testing::random_phases(8, rng);
  const ComplexVector b = testing::random_phases(8, rng);
  const auto h = HadamardMatrix::from_matrix(a.asDiagonal() * sylvester_hadamard(3).matrix() * b.asDiagonal());
  const auto c = conjugate_set(jw_vectors(h, kHoggarV));
  const auto ref = jw_vectors(h, std::conj(kHoggarV));
  for (int i = 0; i < 64; ++i) EXPECT_LT(projector_distance(c.state(i), ref.state(i)), 1e-12);
}

TEST(Conjugation, GenuinelyComplexSourceRejected) {
  EXPECT_THROW(conjugate_set(jw_vectors(fourier_matrix(3), 0.0)), Unsupported);
}

}  // namespace
}  // namespace hoggar
