// SPDX-License-Identifier: Apache-2.0
//
// Numerical certification of minimum measurement entropy and
// informational power, independent of any closed form:
//
//  * min_entropy_search: multi-restart Riemannian gradient descent of
//    psi -> H(psi, Pi) on the unit sphere (modulo phase).
//  * capacity_search: Blahut-Arimoto on a pool of pure input states,
//    alternated with gradient ascent of the mutual information in each
//    retained state and generation of new candidate states. The result
//    is certified against ln k - min H.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <span>
#include <thread>
#include <vector>

#include "hoggar/algebra.hpp"
#include "hoggar/infotheory.hpp"

namespace hoggar {

struct OptimizerConfig {
  int restarts = 64;
  int max_iters = 5000;
  double step_init = 0.1;
  double grad_tol = 1e-9;
  double value_tol = 1e-14;
  std::uint64_t seed = 1;
  int jobs = 1;
  // capacity_search only
  double gap_tol = 1e-7;  // stop once certificate - achieved <= gap_tol
  int max_rounds = 100;

  void validate() const {
    if (restarts < 1 || max_iters < 1 || jobs < 1 || max_rounds < 1) {
      throw InvalidArgument("optimizer counts must be >= 1");
    }
    if (!(step_init > 0.0) || !(grad_tol > 0.0) || !(value_tol > 0.0) || !(gap_tol > 0.0)) {
      throw InvalidArgument("optimizer tolerances and step must be > 0");
    }
  }
};

/// Floor for probabilities inside log-derivatives.
inline constexpr double kGradientFloor = 1e-14;
inline constexpr double kArmijoC = 1e-4;

/// Pseudorandom stream owned by one (seed, index) pair.
inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t index, std::uint32_t tag = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32), tag};
  return std::mt19937_64(seq);
}

/// Haar-random unit vector: normalized i.i.d. standard complex Gaussians.
inline ComplexVector random_pure_state(int d, std::mt19937_64& stream) {
  if (d < 2) throw InvalidArgument("random_pure_state: d must be >= 2");
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexVector psi(d);
  for (int i = 0; i < d; ++i) {
    const double re = normal(stream);
    const double im = normal(stream);
    psi(i) = Complex(re, im);
  }
  return psi / psi.norm();
}

/// Runs fn(i) for i in [0, n) on up to `jobs` threads. Each index writes
/// only its own output slot, so results do not depend on scheduling.
template <typename Fn>
void parallel_for(int n, int jobs, Fn&& fn) {
  if (jobs <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  const int workers = std::min(jobs, n);
  std::vector<std::jthread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (int i = w; i < n; i += workers) fn(i);
    });
  }
}

namespace detail {

/// f(psi) = sum_j eta(p_j) + sum_j c_j p_j. With c = 0 this is the
/// measurement entropy; with c = ln q it is -D(p(psi) || q).
inline double objective(const Povm& povm, std::span<const double> costs, const ComplexVector& psi) {
  const auto p = povm.probabilities(psi);
  double f = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    const double x = std::max(p[j], 0.0);
    f += eta(x);
    if (!costs.empty()) f += costs[j] * x;
  }
  return f;
}

/// Riemannian gradient of objective(): ambient gradient projected off psi.
inline ComplexVector gradient(const Povm& povm, std::span<const double> costs, const ComplexVector& psi) {
  const auto p = povm.probabilities(psi);
  ComplexVector g = ComplexVector::Zero(psi.size());
  for (int j = 0; j < povm.size(); ++j) {
    const std::size_t ju = static_cast<std::size_t>(j);
    double slope = -std::log(std::max(p[ju], kGradientFloor)) - 1.0;
    if (!costs.empty()) slope += costs[ju];
    g += (2.0 * slope) * povm.apply(j, psi);
  }
  return g - psi * psi.dot(g);
}

struct DescentResult {
  ComplexVector state;
  double value = 0.0;
  double grad_norm = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Projected gradient descent on the sphere with Armijo backtracking
/// (factor 0.5) restarting from step_init every iteration.
inline DescentResult descend(const Povm& povm, std::span<const double> costs, ComplexVector psi,
                             const OptimizerConfig& cfg, int max_iters) {
  psi.normalize();
  DescentResult r;
  double f = objective(povm, costs, psi);
  for (r.iterations = 0; r.iterations < max_iters; ++r.iterations) {
    const ComplexVector g = gradient(povm, costs, psi);
    const double gn2 = g.squaredNorm();
    r.grad_norm = std::sqrt(gn2);
    if (r.grad_norm < cfg.grad_tol) {
      r.converged = true;
      break;
    }
    double t = cfg.step_init;
    ComplexVector next;
    double fn = f;
    bool accepted = false;
    while (t > 1e-20) {
      next = (psi - t * g).normalized();
      fn = objective(povm, costs, next);
      if (fn <= f - kArmijoC * t * gn2) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) {
      // no representable decrease left along -g
      r.converged = true;
      break;
    }
    const double change = f - fn;
    psi = std::move(next);
    f = fn;
    if (change < cfg.value_tol) {
      r.converged = true;
      ++r.iterations;
      r.grad_norm = gradient(povm, costs, psi).norm();
      break;
    }
  }
  r.state = std::move(psi);
  r.value = f;
  return r;
}

}  // namespace detail

/// Riemannian gradient of psi -> H(psi, Pi), tangent to the sphere and
/// orthogonal to the phase direction.
inline ComplexVector entropy_gradient(const ComplexVector& psi, const Povm& povm) {
  povm.check_dim(psi.size());
  return detail::gradient(povm, {}, psi);
}

struct StateSearchResult {
  double best_value = std::numeric_limits<double>::infinity();
  ComplexVector best_state;
  int best_restart = -1;
  int iterations_used = 0;
  bool converged = false;
  std::vector<double> restart_values;
  std::vector<ComplexVector> restart_states;
  std::vector<bool> restart_converged;

  /// Converged restarts whose value is within tol of the best one.
  std::vector<ComplexVector> minimizers(double tol) const {
    std::vector<ComplexVector> out;
    for (std::size_t i = 0; i < restart_values.size(); ++i) {
      if (restart_converged[i] && restart_values[i] <= best_value + tol) out.push_back(restart_states[i]);
    }
    return out;
  }
};

inline StateSearchResult min_entropy_search(const Povm& povm, const OptimizerConfig& cfg) {
  cfg.validate();
  const int d = povm.dim();
  std::vector<detail::DescentResult> runs(static_cast<std::size_t>(cfg.restarts));
  parallel_for(cfg.restarts, cfg.jobs, [&](int r) {
    auto stream = make_stream(cfg.seed, static_cast<std::uint64_t>(r));
    runs[static_cast<std::size_t>(r)] = detail::descend(povm, {}, random_pure_state(d, stream), cfg, cfg.max_iters);
  });

  StateSearchResult res;
  for (int r = 0; r < cfg.restarts; ++r) {
    auto& run = runs[static_cast<std::size_t>(r)];
    res.iterations_used += run.iterations;
    res.restart_values.push_back(run.value);
    res.restart_converged.push_back(run.converged);
    if (run.value < res.best_value) {
      res.best_value = run.value;
      res.best_restart = r;
    }
    res.restart_states.push_back(std::move(run.state));
  }
  res.best_state = res.restart_states[static_cast<std::size_t>(res.best_restart)];
  res.converged = res.restart_converged[static_cast<std::size_t>(res.best_restart)];
  return res;
}

struct BlahutArimotoResult {
  RealVector prior;
  RealVector output;  // prior * Q
  double capacity = 0.0;     // mutual information of `prior`
  double upper_bound = 0.0;  // max_i D(Q_i || output)
  int iterations = 0;
  bool converged = false;
  std::vector<double> history;  // mutual information per iteration
};

namespace detail {

inline double relative_entropy_row(const RealMatrix& q, Index i, const RealVector& out) {
  double s = 0.0;
  for (Index j = 0; j < q.cols(); ++j) {
    const double p = q(i, j);
    if (p > 0.0) s += p * std::log(p / out(j));
  }
  return s;
}

}  // namespace detail

/// Capacity of the discrete channel with row-stochastic matrix q (inputs x
/// outputs). Stops once the Arimoto upper bound is within tol of the
/// mutual information of the current prior.
inline BlahutArimotoResult blahut_arimoto(const RealMatrix& q, double tol = 1e-12, int max_iters = 100000,
                                          const RealVector* initial_prior = nullptr) {
  const Index m = q.rows();
  if (m == 0 || q.cols() == 0) throw InvalidArgument("blahut_arimoto: empty channel");
  for (Index i = 0; i < m; ++i) {
    if (q.row(i).minCoeff() < 0.0) throw InvalidArgument("blahut_arimoto: negative transition probability");
    if (std::abs(q.row(i).sum() - 1.0) > 1e-10) throw InvalidArgument("blahut_arimoto: row not stochastic");
  }
  BlahutArimotoResult r;
  if (initial_prior && initial_prior->size() == m) {
    r.prior = *initial_prior / initial_prior->sum();
  } else {
    r.prior = RealVector::Constant(m, 1.0 / static_cast<double>(m));
  }
  RealVector div(m);
  for (r.iterations = 0;; ++r.iterations) {
    r.output = q.transpose() * r.prior;
    for (Index i = 0; i < m; ++i) div(i) = detail::relative_entropy_row(q, i, r.output);
    r.capacity = r.prior.dot(div);
    r.upper_bound = div.maxCoeff();
    r.history.push_back(r.capacity);
    if (r.upper_bound - r.capacity <= tol) {
      r.converged = true;
      break;
    }
    if (r.iterations >= max_iters) break;
    const double shift = r.upper_bound;
    for (Index i = 0; i < m; ++i) r.prior(i) *= std::exp(div(i) - shift);
    r.prior /= r.prior.sum();
  }
  return r;
}

struct EnsembleSearchResult {
  double best_value = 0.0;  // mutual information of (best_states, best_weights)
  std::vector<ComplexVector> best_states;
  std::vector<double> best_weights;
  double min_entropy = 0.0;     // from the embedded min_entropy_search
  double certificate = 0.0;     // ln k - min_entropy
  double certificate_gap = 0.0; // certificate - best_value
  int iterations_used = 0;
  int rounds = 0;
  bool converged = false;
  std::vector<double> restart_values;  // min-entropy restart optima
  std::vector<double> round_values;    // capacity after each pool update

  Ensemble ensemble() const {
    std::vector<QuantumState> states;
    for (const auto& s : best_states) states.push_back(QuantumState::pure(s));
    return Ensemble(std::move(states), best_weights);
  }
};

namespace detail {

inline RealMatrix channel_matrix(const Povm& povm, const std::vector<ComplexVector>& pool) {
  RealMatrix q(static_cast<Index>(pool.size()), povm.size());
  for (std::size_t i = 0; i < pool.size(); ++i) {
    auto p = povm.probabilities(pool[i]);
    double s = 0.0;
    for (double& x : p) {
      x = std::max(x, 0.0);
      s += x;
    }
    for (std::size_t j = 0; j < p.size(); ++j) q(static_cast<Index>(i), static_cast<Index>(j)) = p[j] / s;
  }
  return q;
}

}  // namespace detail

/// Informational power search. Pool starts with 4 d^2 random states plus
/// perturbed entropy minimizers; each round runs Blahut-Arimoto, prunes
/// weights below 1e-9, ascends the mutual information in every retained
/// state, and adds new candidate states that beat the current capacity.
inline EnsembleSearchResult capacity_search(const Povm& povm, const OptimizerConfig& cfg) {
  cfg.validate();
  const int d = povm.dim();
  const int k = povm.size();
  constexpr double kPruneWeight = 1e-9;
  constexpr double kPerturbation = 1e-3;

  EnsembleSearchResult res;
  const StateSearchResult minres = min_entropy_search(povm, cfg);
  res.min_entropy = minres.best_value;
  res.certificate = power_from_min_entropy(k, std::max(minres.best_value, 0.0));
  res.restart_values = minres.restart_values;
  res.iterations_used = minres.iterations_used;

  auto stream = make_stream(cfg.seed, 0, /*tag=*/1);
  std::vector<ComplexVector> pool;
  for (int i = 0; i < 4 * d * d; ++i) pool.push_back(random_pure_state(d, stream));
  for (const auto& m : minres.minimizers(1e-8)) {
    pool.push_back((m + kPerturbation * random_pure_state(d, stream)).normalized());
  }

  const int candidates_per_round = std::max(cfg.restarts, 2 * d);
  const int polish_iters = std::min(cfg.max_iters, 200);
  RealVector warm;
  res.best_value = -1.0;
  for (res.rounds = 1; res.rounds <= cfg.max_rounds; ++res.rounds) {
    const RealMatrix q = detail::channel_matrix(povm, pool);
    // Weights only need to be as accurate as the remaining gap warrants.
    const double final_tol = std::min(cfg.gap_tol * 0.1, 1e-9);
    const double remaining = res.certificate - std::max(res.best_value, 0.0);
    const double ba_tol = std::max(final_tol, 1e-2 * remaining);
    const auto ba = blahut_arimoto(q, ba_tol, 50000, warm.size() == q.rows() ? &warm : nullptr);
    res.iterations_used += ba.iterations;

    std::vector<ComplexVector> kept;
    std::vector<double> weights;
    for (Index i = 0; i < q.rows(); ++i) {
      if (ba.prior(i) >= kPruneWeight) {
        kept.push_back(pool[static_cast<std::size_t>(i)]);
        weights.push_back(ba.prior(i));
      }
    }
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    for (double& w : weights) w /= total;
    std::vector<QuantumState> states;
    for (const auto& s : kept) states.push_back(QuantumState::pure(s));
    const double value = mutual_information(Ensemble(std::move(states), weights), povm);
    res.round_values.push_back(value);
    if (value > res.best_value) {
      res.best_value = value;
      res.best_states = kept;
      res.best_weights = weights;
    }
    if (res.certificate - res.best_value <= cfg.gap_tol) {
      res.converged = true;
      break;
    }

    // Gradient of I in state i is w_i * grad D(p(psi_i) || output).
    std::vector<double> costs(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) costs[static_cast<std::size_t>(j)] = std::log(std::max(ba.output(j), 1e-300));

    std::vector<ComplexVector> next(kept.size());
    parallel_for(static_cast<int>(kept.size()), cfg.jobs, [&](int i) {
      auto run = detail::descend(povm, costs, kept[static_cast<std::size_t>(i)], cfg, polish_iters);
      next[static_cast<std::size_t>(i)] = std::move(run.state);
    });
    warm = RealVector::Map(weights.data(), static_cast<Index>(weights.size()));

    std::vector<detail::DescentResult> fresh(static_cast<std::size_t>(candidates_per_round));
    parallel_for(candidates_per_round, cfg.jobs, [&](int c) {
      auto s = make_stream(cfg.seed, static_cast<std::uint64_t>(res.rounds) * 1000003u + c, /*tag=*/2);
      fresh[static_cast<std::size_t>(c)] = detail::descend(povm, costs, random_pure_state(d, s), cfg, cfg.max_iters);
    });
    std::vector<double> warm_extra;
    for (auto& f : fresh) {
      res.iterations_used += f.iterations;
      if (-f.value > value + cfg.gap_tol) {
        next.push_back(std::move(f.state));
        warm_extra.push_back(1.0 / static_cast<double>(next.size()));
      }
    }
    if (!warm_extra.empty()) {
      RealVector w(static_cast<Index>(next.size()));
      w.head(warm.size()) = warm;
      for (std::size_t e = 0; e < warm_extra.size(); ++e) w(warm.size() + static_cast<Index>(e)) = warm_extra[e];
      warm = w;
    }
    pool = std::move(next);
  }
  if (res.rounds > cfg.max_rounds) res.rounds = cfg.max_rounds;
  res.certificate_gap = res.certificate - res.best_value;
  return res;
}

}  // namespace hoggar
