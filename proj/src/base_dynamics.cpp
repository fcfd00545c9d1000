#include "rchlab/base_dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace rchlab {

namespace {

inline std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

int pick_weighted(const std::vector<double>& weights, double u) {
  double cum = 0.0;
  int last = static_cast<int>(weights.size()) - 1;
  for (int i = 0; i < last; ++i) {
    cum += weights[i];
    if (u < cum) return i;
  }
  return last;
}

std::int64_t pos_mod(std::int64_t n, std::int64_t m) {
  std::int64_t r = n % m;
  return r < 0 ? r + m : r;
}

void check_weights(const std::vector<double>& w, bool open_interval) {
  if (w.empty()) throw validation_error("need at least one weight");
  double sum = 0.0;
  for (double p : w) {
    if (!std::isfinite(p)) throw validation_error("weights must be finite");
    if (open_interval ? !(p > 0.0 && p < 1.0) : !(p >= 0.0))
      throw validation_error("weight out of range");
    sum += p;
  }
  if (std::fabs(sum - 1.0) > 1e-12)
    throw validation_error("weights must sum to 1");
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return mix64(mix64(master + 0x9E3779B97F4A7C15ull) ^
               mix64(index * 0xD1B54A32D192ED03ull + 0x8CB92BA72F3D8DD7ull));
}

double unit_from_seed(std::uint64_t seed, std::int64_t index) {
  std::uint64_t h = mix64(mix64(seed ^ 0x9E3779B97F4A7C15ull) +
                          static_cast<std::uint64_t>(index) *
                              0xD1B54A32D192ED03ull);
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

BaseSystem BaseSystem::bernoulli(std::vector<double> probs) {
  if (probs.size() < 2)
    throw validation_error("a symbol stream needs at least two symbols");
  check_weights(probs, /*open_interval=*/true);
  BaseSystem s;
  s.kind_ = Kind::Bernoulli;
  s.weights_ = std::move(probs);
  return s;
}

BaseSystem BaseSystem::finite_permutation(std::vector<int> perm,
                                          std::vector<double> weights) {
  int m = static_cast<int>(perm.size());
  if (m == 0 || weights.size() != perm.size())
    throw validation_error("permutation and weights must match and be non-empty");
  std::vector<bool> seen(perm.size(), false);
  for (int v : perm) {
    if (v < 0 || v >= m || seen[static_cast<std::size_t>(v)])
      throw validation_error("not a permutation of {0..m-1}");
    seen[static_cast<std::size_t>(v)] = true;
  }
  check_weights(weights, /*open_interval=*/false);
  for (int i = 0; i < m; ++i) {
    if (std::fabs(weights[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] -
                  weights[static_cast<std::size_t>(i)]) > 1e-12)
      throw validation_error("weights must be invariant under the permutation");
  }
  BaseSystem s;
  s.kind_ = Kind::FinitePermutation;
  s.weights_ = std::move(weights);
  s.perm_ = std::move(perm);
  return s;
}

BaseSystem BaseSystem::singleton() {
  BaseSystem s;
  s.kind_ = Kind::Singleton;
  s.weights_ = {1.0};
  s.perm_ = {0};
  return s;
}

int BaseSystem::alphabet_size() const {
  return static_cast<int>(weights_.size());
}

const std::vector<int>& BaseSystem::permutation() const {
  if (kind_ == Kind::Bernoulli)
    throw std::logic_error("symbol streams have no permutation");
  return perm_;
}

int BaseSystem::point_count() const {
  if (kind_ == Kind::Bernoulli)
    throw std::logic_error("a Bernoulli base has no finite point list");
  return static_cast<int>(weights_.size());
}

BasePoint BaseSystem::sample(std::uint64_t seed) const {
  BasePoint p(*this, seed);
  if (kind_ != Kind::Bernoulli) {
    int start = kind_ == Kind::Singleton
                    ? 0
                    : pick_weighted(weights_, unit_from_seed(seed, 0));
    int m = static_cast<int>(perm_.size());
    p.cycle_.push_back(start);
    for (int v = perm_[static_cast<std::size_t>(start)]; v != start;
         v = perm_[static_cast<std::size_t>(v)]) {
      p.cycle_.push_back(v);
      if (static_cast<int>(p.cycle_.size()) > m)
        throw std::logic_error("permutation orbit overflow");
    }
  }
  return p;
}

BasePoint BaseSystem::point(int i) const {
  if (kind_ == Kind::Bernoulli)
    throw std::logic_error("a Bernoulli base has no finite point list");
  if (i < 0 || i >= point_count())
    throw std::invalid_argument("point index out of range");
  BasePoint p(*this, static_cast<std::uint64_t>(i));
  p.cycle_.push_back(i);
  for (int v = perm_[static_cast<std::size_t>(i)]; v != i;
       v = perm_[static_cast<std::size_t>(v)])
    p.cycle_.push_back(v);
  return p;
}

double cylinder_probability(const BaseSystem& sys, const CylinderSet& c) {
  if (sys.kind() != BaseSystem::Kind::Bernoulli)
    throw std::logic_error("cylinder probabilities need an i.i.d. symbol stream");
  double p = 1.0;
  for (std::size_t i = 0; i < c.constraints.size(); ++i) {
    auto [idx, sym] = c.constraints[i];
    for (std::size_t j = 0; j < i; ++j)
      if (c.constraints[j].first == idx)
        throw validation_error("cylinder constraints must use distinct indices");
    if (sym < 0 || sym >= sys.alphabet_size())
      throw validation_error("cylinder symbol out of range");
    p *= sys.weights()[static_cast<std::size_t>(sym)];
  }
  return p;
}

int BasePoint::symbol(std::int64_t n) const {
  n += offset_;
  if (!pattern_.empty()) {
    auto m = static_cast<std::int64_t>(pattern_.size());
    return pattern_[static_cast<std::size_t>(pos_mod(n, m))];
  }
  switch (sys_.kind_) {
    case BaseSystem::Kind::Singleton:
      return 0;
    case BaseSystem::Kind::FinitePermutation: {
      auto m = static_cast<std::int64_t>(cycle_.size());
      return cycle_[static_cast<std::size_t>(pos_mod(n, m))];
    }
    case BaseSystem::Kind::Bernoulli:
    default:
      return pick_weighted(sys_.weights_, unit_from_seed(seed_, n));
  }
}

BasePoint BasePoint::shifted(std::int64_t k) const {
  if (k < 0)
    throw std::invalid_argument("the shift map runs forward; k must be >= 0");
  BasePoint p(*this);
  p.offset_ += k;
  return p;
}

bool BasePoint::member(const CylinderSet& c) const {
  for (auto [idx, sym] : c.constraints)
    if (symbol(idx) != sym) return false;
  return true;
}

std::string BasePoint::digest(int count) const {
  std::string out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    int s = symbol(i);
    out += s < 10 ? static_cast<char>('0' + s)
                  : s < 36 ? static_cast<char>('a' + s - 10) : '?';
  }
  return out;
}

BasePoint BasePoint::with_periodic_symbols(const BaseSystem& sys,
                                           std::vector<int> pattern) {
  if (pattern.empty()) throw validation_error("pattern must be non-empty");
  for (int s : pattern)
    if (s < 0 || s >= sys.alphabet_size())
      throw validation_error("pattern symbol out of range");
  BasePoint p(sys, 0);
  p.pattern_ = std::move(pattern);
  return p;
}

}  // namespace rchlab
