// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "hoggar/algebra.hpp"
#include "hoggar/sic.hpp"

namespace hoggar::testing {

inline const Complex kHoggarV{-1.0, 2.0};

inline SicFamily hoggar(Complex v = kHoggarV) { return jw_vectors(sylvester_hadamard(3), v); }

/// The eight d = 2 parameters +-(1 +- sqrt3)(1 +- i)/2.
inline std::vector<Complex> qubit_parameters() {
  const double s3 = std::sqrt(3.0);
  std::vector<Complex> out;
  for (double o : {1.0, -1.0}) {
    for (double a : {1.0, -1.0}) {
      for (double b : {1.0, -1.0}) out.push_back(o * (1.0 + a * s3) * Complex(1.0, b) / 2.0);
    }
  }
  return out;
}

inline SicFamily tetrahedral(Complex v = qubit_parameters().front()) { return jw_vectors(sylvester_hadamard(1), v); }

inline std::vector<Complex> qutrit_parameters() {
  const double s3 = std::sqrt(3.0);
  return {Complex(0, 0), Complex(-2, 0), Complex(1, s3), Complex(1, -s3)};
}

/// Haar-random unit vector drawn independently of the library sampler.
inline ComplexVector haar_state(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  ComplexVector v(d);
  for (int i = 0; i < d; ++i) v(i) = Complex(n(rng), n(rng));
  return v.normalized();
}

/// Random full-rank density matrix G G^dagger / tr.
inline ComplexMatrix random_density(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  ComplexMatrix g(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) g(i, j) = Complex(n(rng), n(rng));
  }
  ComplexMatrix rho = g * g.adjoint();
  return rho / rho.trace().real();
}

inline ComplexVector random_phases(int d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 2.0 * 3.14159265358979323846);
  ComplexVector p(d);
  for (int i = 0; i < d; ++i) p(i) = std::polar(1.0, u(rng));
  return p;
}

}  // namespace hoggar::testing
