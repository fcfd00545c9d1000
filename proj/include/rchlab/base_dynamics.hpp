#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rchlab/circle.hpp"  // validation_error

namespace rchlab {

class BasePoint;

// The driving system (Omega, P, sigma): a measure-preserving transformation
// whose points carry two-sided symbol streams omega_n picking fibre maps.
class BaseSystem {
 public:
  enum class Kind { Bernoulli, FinitePermutation, Singleton };

  // Two-sided i.i.d. stream over {0..q-1}; probs[i] in (0,1), sum 1.
  static BaseSystem bernoulli(std::vector<double> probs);
  // Finite set {0..m-1}, sigma(i) = perm[i], sigma-invariant weights
  // (weight[perm[i]] = weight[i]); the symbol at time n is the point label.
  static BaseSystem finite_permutation(std::vector<int> perm,
                                       std::vector<double> weights);
  // One point, identity shift, symbol stream identically 0.
  static BaseSystem singleton();

  Kind kind() const { return kind_; }
  // Number of distinct symbols omega_0 can take.
  int alphabet_size() const;
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<int>& permutation() const;
  // Finite kinds only (FinitePermutation, Singleton).
  int point_count() const;

  // Bernoulli: the i.i.d. stream keyed by seed.  Finite kinds: a point drawn
  // by weight.  Identical seeds give identical points.
  BasePoint sample(std::uint64_t seed) const;
  // Finite kinds: the specific point i.
  BasePoint point(int i) const;

 private:
  Kind kind_ = Kind::Singleton;
  std::vector<double> weights_;
  std::vector<int> perm_;
  friend class BasePoint;
};

// Finitely many symbol constraints omega_{index} = symbol, distinct indices.
struct CylinderSet {
  std::vector<std::pair<std::int64_t, int>> constraints;
};

// P(omega satisfies c): product of the constrained symbols' probabilities.
// Bernoulli bases only; throws std::logic_error otherwise.
double cylinder_probability(const BaseSystem& sys, const CylinderSet& c);

class BasePoint {
 public:
  // Symbol omega_n for any integer n; negative indices reach the past.
  int symbol(std::int64_t n) const;
  // sigma^k omega, realized by reindexing: shifted(k).symbol(n) = symbol(n+k).
  // k must be >= 0 (the shift itself, not the stream, is one-sided).
  BasePoint shifted(std::int64_t k) const;
  bool member(const CylinderSet& c) const;

  const BaseSystem& system() const { return sys_; }
  std::uint64_t seed() const { return seed_; }
  std::int64_t offset() const { return offset_; }
  // The first `count` symbols omega_0, omega_1, ... as a digit string.
  std::string digest(int count = 16) const;

  // Diagnostic stream with symbol(n) = pattern[n mod pattern.size()]
  // (periodic in both directions); used to realize statements that quantify
  // over fixed symbol streams.
  static BasePoint with_periodic_symbols(const BaseSystem& sys,
                                         std::vector<int> pattern);

 private:
  friend class BaseSystem;
  BasePoint(BaseSystem sys, std::uint64_t seed) : sys_(std::move(sys)), seed_(seed) {}
  BaseSystem sys_;
  std::uint64_t seed_ = 0;
  std::int64_t offset_ = 0;
  std::vector<int> cycle_;    // finite kinds: the point's sigma-orbit labels
  std::vector<int> pattern_;  // periodic override when non-empty
};

// Stable per-index derivation of child seeds from a master seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

// Uniform double in [0,1) keyed by (seed, index); pure function.
double unit_from_seed(std::uint64_t seed, std::int64_t index);

}  // namespace rchlab
