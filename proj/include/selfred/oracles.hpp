#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "selfred/counting.hpp"
#include "selfred/formula.hpp"

namespace selfred {

/// Invocation counter that survives copies of the owning oracle.
class CallCounter {
 public:
  CallCounter() = default;
  CallCounter(const CallCounter& other) : n_(other.value()) {}
  CallCounter& operator=(const CallCounter& other) {
    n_.store(other.value(), std::memory_order_relaxed);
    return *this;
  }

  void bump() const noexcept { n_.fetch_add(1, std::memory_order_relaxed); }
  std::uint64_t value() const noexcept { return n_.load(std::memory_order_relaxed); }
  void reset() noexcept { n_.store(0, std::memory_order_relaxed); }

 private:
  mutable std::atomic<std::uint64_t> n_{0};
};

/// c0 + c1 n + ... + cd n^d. Coefficients are stored signed so that a bad
/// bound can be represented and rejected by the consumer.
class PolynomialBound {
 public:
  PolynomialBound() = default;
  explicit PolynomialBound(std::vector<std::int64_t> coefficients)
      : coefficients_(std::move(coefficients)) {}

  /// All coefficients nonnegative, so the bound is nondecreasing on naturals.
  bool is_valid() const noexcept;
  BigCount operator()(const BigCount& n) const;
  std::span<const std::int64_t> coefficients() const noexcept { return coefficients_; }
  std::string to_string() const;

 private:
  std::vector<std::int64_t> coefficients_;
};

/// A two-argument choice function for SAT. Contract: returns one of its
/// arguments, and a satisfiable one whenever either argument is satisfiable.
class SelectorOracle {
 public:
  using ChooseFn = std::function<Formula(const Formula&, const Formula&)>;

  SelectorOracle(std::string name, ChooseFn choose)
      : name_(std::move(name)), choose_(std::move(choose)) {}

  Formula choose(const Formula& a, const Formula& b) const {
    calls_.bump();
    return choose_(a, b);
  }

  const std::string& name() const noexcept { return name_; }
  std::uint64_t calls() const noexcept { return calls_.value(); }
  void reset_calls() noexcept { calls_.reset(); }

 private:
  std::string name_;
  ChooseFn choose_;
  CallCounter calls_;
};

/// Image of every unsatisfiable formula in the collision-rich tally style.
inline constexpr std::string_view kNonTallyToken = "1";

/// True iff `s` is in {e, 0, 00, ...}.
bool is_tally(std::string_view s) noexcept;

/// A many-one reduction g from SAT to a tally set T:
/// F satisfiable <=> g(F) in T, with T a subset of {e, 0, 00, ...}.
class TallyReductionOracle {
 public:
  using MapFn = std::function<std::string(const Formula&)>;
  using MemberFn = std::function<bool(std::string_view)>;

  TallyReductionOracle(std::string name, MapFn map, MemberFn in_target)
      : name_(std::move(name)), map_(std::move(map)), in_target_(std::move(in_target)) {}

  std::string map(const Formula& f) const {
    calls_.bump();
    return map_(f);
  }

  /// Membership in T. Only for checking the contract; the deciders never
  /// look at T.
  bool target_contains(std::string_view image) const { return in_target_(image); }

  const std::string& name() const noexcept { return name_; }
  std::uint64_t calls() const noexcept { return calls_.value(); }
  void reset_calls() noexcept { calls_.reset(); }

 private:
  std::string name_;
  MapFn map_;
  MemberFn in_target_;
  CallCounter calls_;
};

/// A many-one reduction g from co-SAT to a sparse set S, with declared
/// census bound q (|S up to length n| <= q(n)) and image-length bound r
/// (|g(F)| <= r(|F|)).
class SparseCoReductionOracle {
 public:
  using MapFn = std::function<std::string(const Formula&)>;

  SparseCoReductionOracle(std::string name, MapFn map, std::vector<std::string> target,
                          PolynomialBound census, PolynomialBound image_length)
      : name_(std::move(name)),
        map_(std::move(map)),
        target_(std::move(target)),
        census_(std::move(census)),
        image_length_(std::move(image_length)) {}

  std::string map(const Formula& f) const {
    calls_.bump();
    return map_(f);
  }

  const PolynomialBound& census_bound() const noexcept { return census_; }
  const PolynomialBound& image_length_bound() const noexcept { return image_length_; }

  /// The (finite) set S, for contract checks only.
  const std::vector<std::string>& target() const noexcept { return target_; }
  bool target_contains(std::string_view image) const;

  const std::string& name() const noexcept { return name_; }
  std::uint64_t calls() const noexcept { return calls_.value(); }
  void reset_calls() noexcept { calls_.reset(); }

 private:
  std::string name_;
  MapFn map_;
  std::vector<std::string> target_;
  PolynomialBound census_;
  PolynomialBound image_length_;
  CallCounter calls_;
};

/// h(F): ascending, duplicate-free list of one or two naturals that
/// contains the model count of F.
class TwoEnumeratorOracle {
 public:
  using EnumerateFn = std::function<std::vector<BigCount>(const Formula&)>;

  TwoEnumeratorOracle(std::string name, EnumerateFn enumerate)
      : name_(std::move(name)), enumerate_(std::move(enumerate)) {}

  std::vector<BigCount> enumerate(const Formula& f) const {
    calls_.bump();
    return enumerate_(f);
  }

  const std::string& name() const noexcept { return name_; }
  std::uint64_t calls() const noexcept { return calls_.value(); }
  void reset_calls() noexcept { calls_.reset(); }

 private:
  std::string name_;
  EnumerateFn enumerate_;
  CallCounter calls_;
};

enum class TallyStyle { Canonical, CollisionRich, Spread };
enum class SparseStyle { Singleton, Scatter };
enum class EnumeratorStyle { ExactPlusOffset, Woeginger };

/// f(a, b) = a if a is satisfiable, else b if b is, else a.
SelectorOracle honest_selector(std::size_t limit = kDefaultBruteLimit);

/// Returns the satisfiable argument when exactly one is; otherwise a
/// seeded pseudo-random pick. f(a, a) = a.
SelectorOracle adversarial_selector(std::uint64_t seed, std::size_t limit = kDefaultBruteLimit);

/// canonical:      T = {00};  sat -> "00", unsat -> "0".
/// collision_rich: T = {0};   sat -> "0",  unsat -> "1".
/// spread:         T = even-length strings of 0s;
///                 sat -> 0^(2(|F| mod 8)), unsat -> 0^(2(|F| mod 8)+1).
TallyReductionOracle simulated_tally_reduction(TallyStyle style,
                                               std::size_t limit = kDefaultBruteLimit);

/// singleton: S = {"1"}, unsat -> "1", sat -> "0" + 16 hash bits;
///            q(n) = n + 1, r(n) = n + 16.
/// scatter:   S = 8 seeded strings "0" + 8 bits, unsat -> a hashed member,
///            sat -> "1" + 16 hash bits; q(n) = 2n + 2, r(n) = 17.
SparseCoReductionOracle simulated_sparse_coreduction(SparseStyle style, std::uint64_t seed = 0,
                                                     std::size_t limit = kDefaultBruteLimit);

/// exact_plus_offset: {c, c + d} with d in {-1, +1, c + 1} chosen by a
///                    seeded hash of F (d = +1 if c + d would be negative).
/// woeginger:         {0, 1} whenever c is 0 or 1, else exact_plus_offset.
/// Counts come from decomposed_count, so combiner formulas over more than
/// `limit` variables are fine as long as their operands are not.
TwoEnumeratorOracle honest_two_enumerator(EnumeratorStyle style, std::uint64_t seed = 0,
                                          std::size_t limit = kDefaultBruteLimit);

std::string_view to_string(TallyStyle style);
std::string_view to_string(SparseStyle style);
std::string_view to_string(EnumeratorStyle style);

}  // namespace selfred
