#include "selfred/oracles.hpp"

#include <algorithm>

#include "selfred/errors.hpp"
#include "stable_hash.hpp"

namespace selfred {

namespace {

std::string bits(std::uint64_t value, int width) {
  std::string out(static_cast<std::size_t>(width), '0');
  for (int i = 0; i < width; ++i) {
    if ((value >> (width - 1 - i)) & 1) out[static_cast<std::size_t>(i)] = '1';
  }
  return out;
}

}  // namespace

bool PolynomialBound::is_valid() const noexcept {
  return std::all_of(coefficients_.begin(), coefficients_.end(),
                     [](std::int64_t c) { return c >= 0; });
}

BigCount PolynomialBound::operator()(const BigCount& n) const {
  // Horner.
  BigCount acc = 0;
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) {
    acc = acc * n + BigCount(*it);
  }
  return acc;
}

std::string PolynomialBound::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < coefficients_.size(); ++i) {
    if (coefficients_[i] == 0 && coefficients_.size() > 1) continue;
    if (!out.empty()) out += " + ";
    out += std::to_string(coefficients_[i]);
    if (i == 1) out += "n";
    if (i > 1) out += "n^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

bool is_tally(std::string_view s) noexcept {
  return std::all_of(s.begin(), s.end(), [](char c) { return c == '0'; });
}

bool SparseCoReductionOracle::target_contains(std::string_view image) const {
  return std::find(target_.begin(), target_.end(), image) != target_.end();
}

SelectorOracle honest_selector(std::size_t limit) {
  return SelectorOracle("honest", [limit](const Formula& a, const Formula& b) {
    if (brute_force_sat(a, limit)) return a;
    if (brute_force_sat(b, limit)) return b;
    return a;
  });
}

SelectorOracle adversarial_selector(std::uint64_t seed, std::size_t limit) {
  return SelectorOracle("adversarial", [seed, limit](const Formula& a, const Formula& b) {
    if (a == b) return a;
    const bool sat_a = brute_force_sat(a, limit);
    const bool sat_b = brute_force_sat(b, limit);
    if (sat_a != sat_b) return sat_a ? a : b;
    const std::uint64_t h = detail::stable_hash(a.key() + '\n' + b.key(), seed);
    return (h & 1) ? b : a;
  });
}

TallyReductionOracle simulated_tally_reduction(TallyStyle style, std::size_t limit) {
  switch (style) {
    case TallyStyle::Canonical:
      return TallyReductionOracle(
          "canonical",
          [limit](const Formula& f) { return std::string(brute_force_sat(f, limit) ? "00" : "0"); },
          [](std::string_view s) { return s == "00"; });
    case TallyStyle::CollisionRich:
      return TallyReductionOracle(
          "collision_rich",
          [limit](const Formula& f) {
            return brute_force_sat(f, limit) ? std::string("0") : std::string(kNonTallyToken);
          },
          [](std::string_view s) { return s == "0"; });
    case TallyStyle::Spread:
      return TallyReductionOracle(
          "spread",
          [limit](const Formula& f) {
            constexpr std::size_t kBuckets = 8;
            const std::size_t base = 2 * (f.encoding_length() % kBuckets);
            return std::string(base + (brute_force_sat(f, limit) ? 0 : 1), '0');
          },
          [](std::string_view s) { return is_tally(s) && s.size() % 2 == 0; });
  }
  throw InvalidParams("unknown tally style");
}

SparseCoReductionOracle simulated_sparse_coreduction(SparseStyle style, std::uint64_t seed,
                                                     std::size_t limit) {
  switch (style) {
    case SparseStyle::Singleton:
      return SparseCoReductionOracle(
          "singleton",
          [limit, seed](const Formula& f) {
            if (!brute_force_sat(f, limit)) return std::string("1");
            return "0" + bits(detail::stable_hash(f.key(), seed), 16);
          },
          {"1"}, PolynomialBound({1, 1}), PolynomialBound({16, 1}));
    case SparseStyle::Scatter: {
      std::vector<std::string> members;
      for (std::uint64_t i = 0; i < 8; ++i) {
        std::string s = "0" + bits(detail::splitmix64(seed * 8 + i), 8);
        if (std::find(members.begin(), members.end(), s) == members.end()) members.push_back(s);
      }
      return SparseCoReductionOracle(
          "scatter",
          [limit, seed, members](const Formula& f) {
            const std::uint64_t h = detail::stable_hash(f.key(), seed);
            if (!brute_force_sat(f, limit)) return members[h % members.size()];
            return "1" + bits(h, 16);
          },
          members, PolynomialBound({2, 2}), PolynomialBound({17}));
    }
  }
  throw InvalidParams("unknown sparse style");
}

TwoEnumeratorOracle honest_two_enumerator(EnumeratorStyle style, std::uint64_t seed,
                                          std::size_t limit) {
  auto offset_pair = [seed](const Formula& f, const BigCount& c) {
    BigCount other;
    switch (detail::stable_hash(f.key(), seed) % 3) {
      case 0:
        other = c - 1;
        break;
      case 1:
        other = c + 1;
        break;
      default:
        other = 2 * c + 1;
        break;
    }
    if (other < 0) other = c + 1;
    std::vector<BigCount> out{c, other};
    std::sort(out.begin(), out.end());
    return out;
  };
  if (style == EnumeratorStyle::ExactPlusOffset) {
    return TwoEnumeratorOracle("exact_plus_offset", [limit, offset_pair](const Formula& f) {
      return offset_pair(f, decomposed_count(f, limit));
    });
  }
  return TwoEnumeratorOracle("woeginger", [limit, offset_pair](const Formula& f) {
    const BigCount c = decomposed_count(f, limit);
    if (c <= 1) return std::vector<BigCount>{0, 1};
    return offset_pair(f, c);
  });
}

std::string_view to_string(TallyStyle style) {
  switch (style) {
    case TallyStyle::Canonical:
      return "canonical";
    case TallyStyle::CollisionRich:
      return "collision_rich";
    case TallyStyle::Spread:
      return "spread";
  }
  return "?";
}

std::string_view to_string(SparseStyle style) {
  return style == SparseStyle::Singleton ? "singleton" : "scatter";
}

std::string_view to_string(EnumeratorStyle style) {
  return style == EnumeratorStyle::ExactPlusOffset ? "exact_plus_offset" : "woeginger";
}

}  // namespace selfred
