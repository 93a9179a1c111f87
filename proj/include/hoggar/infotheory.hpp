// SPDX-License-Identifier: Apache-2.0
//
// Measurement statistics and information quantities, in nats.
#pragma once

#include <cmath>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "hoggar/algebra.hpp"
#include "hoggar/sic.hpp"

namespace hoggar {

/// Probabilities below this count as zeros.
inline constexpr double kZeroThreshold = 1e-10;
/// Negative round-off down to this value is clamped to zero.
inline constexpr double kNegativeClamp = -1e-14;

/// -t ln t, with eta(0) = 0.
inline double eta(double t) { return t > 0.0 ? -t * std::log(t) : 0.0; }

/// General discrete POVM. Rank-one effects a a^dagger keep their factors so
/// pure-state probabilities are |<a|psi>|^2 without forming matrices.
class Povm {
 public:
  static Povm from_effects(std::vector<ComplexMatrix> effects, double tol = 1e-8) {
    Povm p;
    p.effects_ = std::move(effects);
    p.validate(tol);
    return p;
  }

  /// Effects a_j a_j^dagger.
  static Povm rank_one(std::vector<ComplexVector> factors, double tol = 1e-8) {
    Povm p;
    p.effects_.reserve(factors.size());
    for (const auto& a : factors) p.effects_.push_back(outer(a));
    p.factors_ = std::move(factors);
    p.validate(tol);
    return p;
  }

  static Povm from_family(const SicFamily& fam) {
    std::vector<ComplexVector> factors;
    factors.reserve(static_cast<std::size_t>(fam.size()));
    const double scale = 1.0 / std::sqrt(static_cast<double>(fam.dim()));
    for (int i = 0; i < fam.size(); ++i) factors.push_back(fam.state(i) * scale);
    return rank_one(std::move(factors));
  }

  static Povm computational_basis(int d) {
    std::vector<ComplexVector> factors;
    for (int i = 0; i < d; ++i) factors.push_back(ComplexVector::Unit(d, i));
    return rank_one(std::move(factors));
  }

  int dim() const { return static_cast<int>(effects_.front().rows()); }
  int size() const { return static_cast<int>(effects_.size()); }
  const std::vector<ComplexMatrix>& effects() const { return effects_; }
  bool rank_one_form() const { return !factors_.empty(); }
  const std::vector<ComplexVector>& factors() const { return factors_; }
  double identity_deviation() const { return identity_deviation_; }

  /// Pi_j psi.
  ComplexVector apply(int j, const ComplexVector& psi) const {
    if (rank_one_form()) {
      const auto& a = factors_[static_cast<std::size_t>(j)];
      return a * a.dot(psi);
    }
    return effects_[static_cast<std::size_t>(j)] * psi;
  }

  /// Unclamped pure-state probabilities <psi|Pi_j|psi>.
  std::vector<double> probabilities(const ComplexVector& psi) const {
    check_dim(psi.size());
    std::vector<double> p(static_cast<std::size_t>(size()));
    if (rank_one_form()) {
      for (int j = 0; j < size(); ++j) p[static_cast<std::size_t>(j)] = std::norm(factors_[static_cast<std::size_t>(j)].dot(psi));
    } else {
      for (int j = 0; j < size(); ++j) p[static_cast<std::size_t>(j)] = psi.dot(effects_[static_cast<std::size_t>(j)] * psi).real();
    }
    return p;
  }

  /// Unclamped tr(rho Pi_j).
  std::vector<double> probabilities(const ComplexMatrix& rho) const {
    check_dim(rho.rows());
    std::vector<double> p(static_cast<std::size_t>(size()));
    for (int j = 0; j < size(); ++j) {
      p[static_cast<std::size_t>(j)] = (rho * effects_[static_cast<std::size_t>(j)]).trace().real();
    }
    return p;
  }

  void check_dim(Index d) const {
    if (d != dim()) throw InvalidArgument("state dimension does not match the POVM");
  }

 private:
  Povm() = default;

  void validate(double tol) {
    if (effects_.empty()) throw InvalidArgument("POVM has no effects");
    const Index d = effects_.front().rows();
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    for (const auto& e : effects_) {
      if (e.rows() != d || e.cols() != d) throw InvalidArgument("POVM effects have mixed dimensions");
      sum += e;
    }
    identity_deviation_ = max_abs_diff(sum, ComplexMatrix::Identity(d, d));
    if (identity_deviation_ > tol) {
      throw InvalidPovm("effects do not sum to the identity (deviation " +
                        std::to_string(identity_deviation_) + ")");
    }
  }

  std::vector<ComplexMatrix> effects_;
  std::vector<ComplexVector> factors_;
  double identity_deviation_ = 0.0;
};

/// Pure state (kept as a vector) or density matrix.
class QuantumState {
 public:
  static QuantumState pure(const ComplexVector& psi) {
    const double n = psi.norm();
    if (!(n > 0.0)) throw InvalidArgument("pure state must be nonzero");
    QuantumState s;
    s.vector_ = psi / n;
    return s;
  }

  static QuantumState mixed(const ComplexMatrix& rho, double tol = 1e-10) {
    if (rho.rows() != rho.cols() || rho.rows() == 0) throw InvalidArgument("density matrix must be square");
    if (max_abs_diff(rho, rho.adjoint()) > tol) throw InvalidArgument("density matrix not Hermitian");
    if (std::abs(rho.trace() - 1.0) > tol) throw InvalidArgument("density matrix trace != 1");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho);
    if (es.eigenvalues().minCoeff() < -tol) throw InvalidArgument("density matrix not positive");
    QuantumState s;
    s.matrix_ = rho;
    return s;
  }

  bool is_pure() const { return vector_.has_value(); }
  int dim() const { return static_cast<int>(is_pure() ? vector_->size() : matrix_->rows()); }
  const ComplexVector& vector() const { return *vector_; }
  ComplexMatrix density() const { return is_pure() ? outer(*vector_) : *matrix_; }

 private:
  std::optional<ComplexVector> vector_;
  std::optional<ComplexMatrix> matrix_;
};

struct OutcomeDistribution {
  std::vector<double> probs;
  int zero_count = 0;

  /// Clamps tiny negatives, counts zeros and checks normalization.
  static OutcomeDistribution from_raw(std::vector<double> raw, double sum_tol = 1e-12) {
    OutcomeDistribution out;
    double sum = 0.0;
    for (double& p : raw) {
      if (p < 0.0) {
        if (p < kNegativeClamp) throw InvalidArgument("negative probability " + std::to_string(p));
        p = 0.0;
      }
      if (p < kZeroThreshold) ++out.zero_count;
      sum += p;
    }
    if (std::abs(sum - 1.0) > sum_tol) {
      throw InvalidArgument("probabilities sum to " + std::to_string(sum));
    }
    out.probs = std::move(raw);
    return out;
  }

  std::size_t size() const { return probs.size(); }
};

inline OutcomeDistribution outcome_distribution(const QuantumState& state, const Povm& povm) {
  return OutcomeDistribution::from_raw(state.is_pure() ? povm.probabilities(state.vector())
                                                       : povm.probabilities(state.density()));
}

inline OutcomeDistribution outcome_distribution(const ComplexVector& psi, const Povm& povm) {
  return outcome_distribution(QuantumState::pure(psi), povm);
}

/// sum_j eta(p_j); entries below the clamp are treated as zero.
inline double shannon_entropy(std::span<const double> p) {
  double h = 0.0;
  for (double x : p) h += eta(std::max(x, 0.0));
  return h;
}

inline double shannon_entropy(const OutcomeDistribution& d) { return shannon_entropy(d.probs); }

inline double index_of_coincidence(const OutcomeDistribution& d) {
  double s = 0.0;
  for (double p : d.probs) s += p * p;
  return s;
}

/// Entropy of the outcome distribution of a pure state.
inline double measurement_entropy(const ComplexVector& psi, const Povm& povm) {
  return shannon_entropy(povm.probabilities(psi.normalized()));
}

class Ensemble {
 public:
  Ensemble(std::vector<QuantumState> states, std::vector<double> weights)
      : states_(std::move(states)), weights_(std::move(weights)) {
    if (states_.empty() || states_.size() != weights_.size()) {
      throw InvalidArgument("ensemble needs one weight per state");
    }
    double sum = 0.0;
    for (double w : weights_) {
      if (w < 0.0) throw InvalidArgument("ensemble weights must be nonnegative");
      sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw InvalidArgument("ensemble weights must sum to 1");
    for (const auto& s : states_) {
      if (s.dim() != states_.front().dim()) throw InvalidArgument("ensemble states have mixed dimensions");
    }
  }

  /// Equal weights over pure states.
  static Ensemble uniform(const std::vector<ComplexVector>& psis) {
    std::vector<QuantumState> states;
    states.reserve(psis.size());
    for (const auto& p : psis) states.push_back(QuantumState::pure(p));
    const double w = psis.empty() ? 0.0 : 1.0 / static_cast<double>(psis.size());
    return Ensemble(std::move(states), std::vector<double>(psis.size(), w));
  }

  std::size_t size() const { return states_.size(); }
  int dim() const { return states_.front().dim(); }
  const std::vector<QuantumState>& states() const { return states_; }
  const std::vector<double>& weights() const { return weights_; }

  ComplexMatrix average_state() const {
    ComplexMatrix avg = ComplexMatrix::Zero(dim(), dim());
    for (std::size_t i = 0; i < size(); ++i) avg += weights_[i] * states_[i].density();
    return avg;
  }

 private:
  std::vector<QuantumState> states_;
  std::vector<double> weights_;
};

/// P_ij = p_i tr(tau_i Pi_j).
struct JointTable {
  RealMatrix P;
};

inline JointTable joint_table(const Ensemble& e, const Povm& povm) {
  povm.check_dim(e.dim());
  JointTable t;
  t.P.resize(static_cast<Index>(e.size()), povm.size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    const auto dist = outcome_distribution(e.states()[i], povm);
    for (int j = 0; j < povm.size(); ++j) {
      t.P(static_cast<Index>(i), j) = e.weights()[i] * dist.probs[static_cast<std::size_t>(j)];
    }
  }
  return t;
}

/// sum_i eta(sum_j P_ij) + sum_j eta(sum_i P_ij) - sum_ij eta(P_ij).
inline double mutual_information(const Ensemble& e, const Povm& povm) {
  const JointTable t = joint_table(e, povm);
  double rows = 0.0, cols = 0.0, all = 0.0;
  for (Index i = 0; i < t.P.rows(); ++i) rows += eta(t.P.row(i).sum());
  for (Index j = 0; j < t.P.cols(); ++j) cols += eta(t.P.col(j).sum());
  for (Index i = 0; i < t.P.rows(); ++i) {
    for (Index j = 0; j < t.P.cols(); ++j) all += eta(t.P(i, j));
  }
  const double val = rows + cols - all;
  return val < 0.0 && val >= -1e-12 ? 0.0 : val;
}

/// S(sum_i p_i Phi(tau_i)) - sum_i p_i S(Phi(tau_i)) for the quantum-classical
/// channel Phi(rho) = diag(tr(rho Pi_j)); the output is diagonal so S is the
/// Shannon entropy of the outcome vector.
inline double holevo_quantity(const Ensemble& e, const Povm& povm) {
  povm.check_dim(e.dim());
  std::vector<double> avg(static_cast<std::size_t>(povm.size()), 0.0);
  double conditional = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    const auto dist = outcome_distribution(e.states()[i], povm);
    conditional += e.weights()[i] * shannon_entropy(dist);
    for (std::size_t j = 0; j < avg.size(); ++j) avg[j] += e.weights()[i] * dist.probs[j];
  }
  const double val = shannon_entropy(avg) - conditional;
  return val < 0.0 && val >= -1e-12 ? 0.0 : val;
}

/// ln k - min H: upper bound on the informational power.
inline double power_from_min_entropy(int k, double min_entropy) {
  if (k < 1 || min_entropy < 0.0) throw InvalidArgument("power_from_min_entropy: k >= 1, minH >= 0");
  return std::log(static_cast<double>(k)) - min_entropy;
}

/// ln(d(d+1)/2): lower bound on the entropy of a SIC for pure inputs.
inline double sic_min_entropy_bound(int d) {
  if (d < 2) throw InvalidArgument("d must be >= 2");
  return std::log(d * (d + 1) / 2.0);
}

/// ln(2d/(d+1)) computed as ln(d^2) - sic_min_entropy_bound(d).
inline double sic_power_bound(int d) { return power_from_min_entropy(d * d, sic_min_entropy_bound(d)); }

/// Minimum-entropy distribution with index of coincidence r: 1/r entries
/// equal to r, padded with zeros to `length` (defaults to 1/r).
inline OutcomeDistribution ht_minimizer(double r, std::optional<int> length = std::nullopt) {
  if (!(r > 0.0) || r > 1.0) throw InvalidArgument("coincidence index must be in (0, 1]");
  const double inv = 1.0 / r;
  const double rounded = std::round(inv);
  if (std::abs(inv - rounded) > 1e-9) throw Unsupported("1/r is not an integer");
  const int count = static_cast<int>(rounded);
  const int len = length.value_or(count);
  if (len < count) throw InvalidArgument("length shorter than 1/r");
  std::vector<double> p(static_cast<std::size_t>(len), 0.0);
  for (int i = 0; i < count; ++i) p[static_cast<std::size_t>(i)] = 1.0 / count;
  return OutcomeDistribution::from_raw(std::move(p));
}

}  // namespace hoggar
