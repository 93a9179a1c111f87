// SPDX-License-Identifier: Apache-2.0
//
// Projective t-design tests via frame potentials, and the combinatorics of
// the zero pattern between twin d = 8 families: blocks
//   B_(mu,nu) = {(iota,kappa) : <H_(mu,nu)(vbar) | H_(iota,kappa)(v)> = 0}
// over the point set Z_2^3 x Z_2^3. A point (iota, kappa) is encoded as
// the 6-bit integer 8*iota + kappa, so group addition is XOR.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "hoggar/algebra.hpp"
#include "hoggar/sic.hpp"

namespace hoggar {

/// Normalized pure states.
class StateSet {
 public:
  StateSet(int d, std::vector<ComplexVector> states) : d_(d) {
    if (states.empty()) throw InvalidArgument("StateSet: empty");
    states_.reserve(states.size());
    for (auto& s : states) {
      if (s.size() != d) throw InvalidArgument("StateSet: dimension mismatch");
      const double n = s.norm();
      if (!(n > 0.0)) throw InvalidArgument("StateSet: zero vector");
      states_.push_back(s / n);
    }
  }

  static StateSet from_family(const SicFamily& fam) {
    std::vector<ComplexVector> v;
    for (int i = 0; i < fam.size(); ++i) v.push_back(fam.state(i));
    return StateSet(fam.dim(), std::move(v));
  }

  int dim() const { return d_; }
  int size() const { return static_cast<int>(states_.size()); }
  const ComplexVector& state(int i) const { return states_.at(static_cast<std::size_t>(i)); }
  const std::vector<ComplexVector>& states() const { return states_; }
  ComplexMatrix projector(int i) const { return outer(state(i)); }

 private:
  int d_;
  std::vector<ComplexVector> states_;
};

/// (1/k^2) sum_{j,m} tr(rho_j rho_m)^t, diagonal terms included.
inline double frame_potential(const StateSet& s, int t) {
  if (t < 1) throw InvalidArgument("frame_potential: t must be >= 1");
  const int k = s.size();
  double acc = 0.0;
  for (int i = 0; i < k; ++i) {
    acc += 1.0;  // tr(rho_i^2)^t
    for (int j = i + 1; j < k; ++j) acc += 2.0 * std::pow(std::norm(s.state(i).dot(s.state(j))), t);
  }
  return acc / (static_cast<double>(k) * k);
}

/// Haar average of tr(rho sigma)^t over pure states: t! (d-1)! / (t+d-1)!.
inline double haar_moment(int d, int t) {
  if (d < 1 || t < 1) throw InvalidArgument("haar_moment: d, t must be >= 1");
  double val = 1.0;
  for (int i = 1; i <= t; ++i) val *= static_cast<double>(i) / (d - 1 + i);
  return val;
}

/// True iff the frame potential matches the Haar moment for all s <= t.
inline bool is_t_design(const StateSet& s, int t, double tol = kDefaultTol) {
  for (int order = 1; order <= t; ++order) {
    if (std::abs(frame_potential(s, order) - haar_moment(s.dim(), order)) > tol) return false;
  }
  return true;
}

inline constexpr int kDesignPoints = 64;

struct Block {
  BinaryTriple mu;
  BinaryTriple nu;
  std::vector<int> members;  // sorted point codes

  int label() const { return (mu.index() << 3) | nu.index(); }
};

struct DesignParams {
  int points = 0;
  int block_size = 0;
  int lambda = 0;
  friend bool operator==(const DesignParams&, const DesignParams&) = default;
};

/// Blocks over Sigma = Z_2^3 x Z_2^3, ordered by label.
struct ZeroBlockDesign {
  std::vector<Block> blocks;
  DesignParams params;

  const Block* find(int label) const {
    for (const auto& b : blocks) {
      if (b.label() == label) return &b;
    }
    return nullptr;
  }
};

inline int point_code(const BinaryTriple& iota, const BinaryTriple& kappa) {
  return (iota.index() << 3) | kappa.index();
}

inline std::size_t intersection_size(const std::vector<int>& a, const std::vector<int>& b) {
  std::size_t n = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

/// Extracts the zero blocks by numerical zero detection and measures
/// (points, block size, lambda). Throws NotADesign if either of the last
/// two is not constant.
inline ZeroBlockDesign zero_blocks(const SicFamily& fam_v, const SicFamily& fam_vbar, double threshold = 1e-10) {
  if (fam_v.dim() != 8 || fam_vbar.dim() != 8) throw Unsupported("zero_blocks: requires d = 8");
  const HadamardMatrix h3 = sylvester_hadamard(3);
  if (!(fam_v.hadamard() == h3) || !(fam_vbar.hadamard() == h3)) {
    throw Unsupported("zero_blocks: requires twin families over the Sylvester matrix");
  }
  if (std::abs(fam_vbar.v() - std::conj(fam_v.v())) > 1e-12) {
    throw InvalidArgument("zero_blocks: parameters are not complex conjugates");
  }
  ZeroBlockDesign design;
  for (int label = 0; label < kDesignPoints; ++label) {
    Block b;
    b.mu = BinaryTriple::from_index(label >> 3);
    b.nu = BinaryTriple::from_index(label & 7);
    const ComplexVector& ref = fam_vbar.vector(b.mu.index(), b.nu.index()).coords;
    for (int p = 0; p < kDesignPoints; ++p) {
      const auto& cv = fam_v.vector(p >> 3, p & 7);
      if (std::abs(hermitian_product(cv.coords, ref)) < threshold) b.members.push_back(p);
    }
    design.blocks.push_back(std::move(b));
  }

  design.params.points = kDesignPoints;
  const auto k = design.blocks.front().members.size();
  for (const auto& b : design.blocks) {
    if (b.members.size() != k) {
      throw NotADesign("zero_blocks: block sizes differ", design.blocks.front().label(), b.label());
    }
  }
  design.params.block_size = static_cast<int>(k);
  const auto lambda = intersection_size(design.blocks[0].members, design.blocks[1].members);
  for (std::size_t a = 0; a < design.blocks.size(); ++a) {
    for (std::size_t b = a + 1; b < design.blocks.size(); ++b) {
      if (intersection_size(design.blocks[a].members, design.blocks[b].members) != lambda) {
        throw NotADesign("zero_blocks: block intersections differ", design.blocks[a].label(),
                         design.blocks[b].label());
      }
    }
  }
  design.params.lambda = static_cast<int>(lambda);
  return design;
}

struct AxiomResult {
  std::string name;
  bool pass = true;
  std::string counterexample;
};

struct DesignReport {
  bool pass = true;
  std::vector<AxiomResult> axioms;
  std::string first_counterexample;
  int replication = -1;  // common number of blocks through a point, or -1

  void add(AxiomResult a) {
    if (!a.pass) {
      if (pass) first_counterexample = a.name + ": " + a.counterexample;
      pass = false;
    }
    axioms.push_back(std::move(a));
  }
};

/// Symmetric 2-design axioms on the blocks as given (params are compared
/// against the measured structure, not trusted).
inline DesignReport verify_symmetric_design(const ZeroBlockDesign& design) {
  DesignReport rep;
  const std::size_t nb = design.blocks.size();

  AxiomResult counts{"64 points and 64 blocks"};
  if (design.params.points != kDesignPoints || nb != kDesignPoints) {
    counts.pass = false;
    counts.counterexample = std::to_string(design.params.points) + " points, " + std::to_string(nb) + " blocks";
  }
  rep.add(counts);
  if (nb == 0) return rep;

  AxiomResult size{"uniform block size " + std::to_string(design.params.block_size)};
  for (const auto& b : design.blocks) {
    if (static_cast<int>(b.members.size()) != design.params.block_size) {
      size.pass = false;
      size.counterexample = "block " + std::to_string(b.label()) + " has " + std::to_string(b.members.size()) + " points";
      break;
    }
  }
  rep.add(size);

  std::array<int, kDesignPoints> replication{};
  std::vector<std::array<int, kDesignPoints>> pair(kDesignPoints);
  for (auto& row : pair) row.fill(0);
  for (const auto& b : design.blocks) {
    for (std::size_t i = 0; i < b.members.size(); ++i) {
      const int x = b.members[i];
      if (x < 0 || x >= kDesignPoints) continue;
      ++replication[static_cast<std::size_t>(x)];
      for (std::size_t j = i + 1; j < b.members.size(); ++j) {
        const int y = b.members[j];
        if (y < 0 || y >= kDesignPoints) continue;
        ++pair[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
        ++pair[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)];
      }
    }
  }

  AxiomResult rep_ax{"every point in " + std::to_string(design.params.block_size) + " blocks"};
  for (int x = 0; x < kDesignPoints; ++x) {
    if (replication[static_cast<std::size_t>(x)] != design.params.block_size) {
      rep_ax.pass = false;
      rep_ax.counterexample = "point " + std::to_string(x) + " lies in " +
                              std::to_string(replication[static_cast<std::size_t>(x)]) + " blocks";
      break;
    }
  }
  if (rep_ax.pass) rep.replication = design.params.block_size;
  rep.add(rep_ax);

  AxiomResult pairs{"every point pair in " + std::to_string(design.params.lambda) + " blocks"};
  for (int x = 0; x < kDesignPoints && pairs.pass; ++x) {
    for (int y = x + 1; y < kDesignPoints; ++y) {
      const int c = pair[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
      if (c != design.params.lambda) {
        pairs.pass = false;
        pairs.counterexample = "points " + std::to_string(x) + "," + std::to_string(y) + " share " + std::to_string(c);
        break;
      }
    }
  }
  rep.add(pairs);

  AxiomResult meets{"every block pair meets in " + std::to_string(design.params.lambda) + " points"};
  for (std::size_t a = 0; a < nb && meets.pass; ++a) {
    for (std::size_t b = a + 1; b < nb; ++b) {
      const auto c = intersection_size(design.blocks[a].members, design.blocks[b].members);
      if (static_cast<int>(c) != design.params.lambda) {
        meets.pass = false;
        meets.counterexample = "blocks " + std::to_string(design.blocks[a].label()) + "," +
                               std::to_string(design.blocks[b].label()) + " meet in " + std::to_string(c);
        break;
      }
    }
  }
  rep.add(meets);
  return rep;
}

struct DifferenceSetReport {
  bool pass = false;
  int size = 0;
  std::array<int, kDesignPoints> counts{};  // counts[delta], delta = 0 unused
};

/// Counts ordered pairs (x, y) in B x B with x + y = delta for every nonzero
/// delta in Sigma. A (64, 28, 12) difference set hits each delta 12 times.
inline DifferenceSetReport difference_set_check(const std::vector<int>& block) {
  DifferenceSetReport rep;
  rep.size = static_cast<int>(block.size());
  for (int x : block) {
    for (int y : block) {
      if (x < 0 || y < 0 || x >= kDesignPoints || y >= kDesignPoints) {
        throw InvalidArgument("difference_set_check: point outside Sigma");
      }
      ++rep.counts[static_cast<std::size_t>(x ^ y)];
    }
  }
  rep.pass = rep.size == 28;
  for (int delta = 1; delta < kDesignPoints; ++delta) {
    if (rep.counts[static_cast<std::size_t>(delta)] != 12) rep.pass = false;
  }
  return rep;
}

/// True iff every block B_(mu,nu) equals B_(0,0) + (mu, nu).
inline bool block_translation_check(const ZeroBlockDesign& design) {
  const Block* base = design.find(0);
  if (base == nullptr) return false;
  for (const auto& b : design.blocks) {
    std::vector<int> shifted;
    shifted.reserve(base->members.size());
    for (int x : base->members) shifted.push_back(x ^ b.label());
    std::sort(shifted.begin(), shifted.end());
    if (shifted != b.members) return false;
  }
  return true;
}

/// 64 x 64 incidence matrix, rows = blocks by label, columns = points.
inline std::vector<std::array<int, kDesignPoints>> incidence_matrix(const ZeroBlockDesign& design) {
  std::vector<std::array<int, kDesignPoints>> m(design.blocks.size());
  for (std::size_t i = 0; i < design.blocks.size(); ++i) {
    m[i].fill(0);
    for (int x : design.blocks[i].members) m[i][static_cast<std::size_t>(x)] = 1;
  }
  return m;
}

}  // namespace hoggar
