#include "kaprekar/core_map.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <string>

#include "kaprekar/errors.hpp"

namespace kaprekar {

namespace {

// Bases above this fall back to a comparison sort; the counting array lives
// on the stack.
constexpr unsigned kCountingSortMaxBase = 64;

void require_state(StateValue value, const Params& params) {
  if (!params.contains(value)) {
    throw DomainError("state " + std::to_string(value) + " outside [0, " +
                      std::to_string(params.state_count()) + ") for base " +
                      std::to_string(params.base()) + ", D=" + std::to_string(params.digits()));
  }
}

// Digit multiplicities; only valid for base <= kCountingSortMaxBase.
std::array<std::uint8_t, kCountingSortMaxBase> digit_counts(StateValue value,
                                                            const Params& params) {
  std::array<std::uint8_t, kCountingSortMaxBase> counts{};
  const StateValue base = params.base();
  for (unsigned i = 0; i < params.digits(); ++i) {
    ++counts[value % base];
    value /= base;
  }
  return counts;
}

}  // namespace

Params::Params(unsigned base, unsigned digits) : base_(base), digits_(digits), state_count_(1) {
  if (base < 2) {
    throw ConfigError("base must be >= 2, got " + std::to_string(base));
  }
  if (digits < 2) {
    throw ConfigError("digit length must be >= 2, got " + std::to_string(digits));
  }
  for (unsigned i = 0; i < digits; ++i) {
    if (state_count_ > std::numeric_limits<std::uint64_t>::max() / base) {
      throw ConfigError("base^digits exceeds 64-bit capacity for base " + std::to_string(base) +
                        ", D=" + std::to_string(digits));
    }
    state_count_ *= base;
  }
}

DigitTuple::DigitTuple(std::span<const Digit> digits) {
  if (digits.size() > kMaxDigits) {
    throw DomainError("digit tuple longer than " + std::to_string(kMaxDigits));
  }
  std::copy(digits.begin(), digits.end(), digits_.begin());
  size_ = digits.size();
}

bool operator==(const DigitTuple& a, const DigitTuple& b) noexcept {
  return std::equal(a.begin(), a.end(), b.begin(), b.end());
}

std::strong_ordering operator<=>(const DigitTuple& a, const DigitTuple& b) noexcept {
  return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
}

DigitTuple digits_of(StateValue value, const Params& params) {
  require_state(value, params);
  DigitTuple out;
  const unsigned n = params.digits();
  for (unsigned i = 0; i < n; ++i) {
    out.push_back(0);
  }
  for (unsigned i = n; i-- > 0;) {
    out[i] = static_cast<Digit>(value % params.base());
    value /= params.base();
  }
  return out;
}

StateValue value_of(std::span<const Digit> digits, const Params& params) {
  if (digits.size() != params.digits()) {
    throw DomainError("expected " + std::to_string(params.digits()) + " digits, got " +
                      std::to_string(digits.size()));
  }
  StateValue value = 0;
  for (Digit d : digits) {
    if (d >= params.base()) {
      throw DomainError("digit " + std::to_string(d) + " not below base " +
                        std::to_string(params.base()));
    }
    value = value * params.base() + d;
  }
  return value;
}

DigitTuple sorted_descending(StateValue value, const Params& params) {
  require_state(value, params);
  if (params.base() <= kCountingSortMaxBase) {
    const auto counts = digit_counts(value, params);
    DigitTuple out;
    for (unsigned d = params.base(); d-- > 0;) {
      for (unsigned k = 0; k < counts[d]; ++k) {
        out.push_back(d);
      }
    }
    return out;
  }
  DigitTuple out = digits_of(value, params);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

DescAsc desc_asc(StateValue value, const Params& params) {
  require_state(value, params);
  const StateValue base = params.base();
  DescAsc out{0, 0};
  if (params.base() <= kCountingSortMaxBase) {
    const auto counts = digit_counts(value, params);
    for (unsigned d = params.base(); d-- > 0;) {
      for (unsigned k = 0; k < counts[d]; ++k) {
        out.descending = out.descending * base + d;
      }
    }
    for (unsigned d = 0; d < params.base(); ++d) {
      for (unsigned k = 0; k < counts[d]; ++k) {
        out.ascending = out.ascending * base + d;
      }
    }
    return out;
  }
  const DigitTuple sorted = sorted_descending(value, params);
  for (Digit d : sorted) {
    out.descending = out.descending * base + d;
  }
  for (auto it = sorted.end(); it != sorted.begin();) {
    out.ascending = out.ascending * base + *--it;
  }
  return out;
}

StateValue kaprekar_step(StateValue value, const Params& params) {
  const auto [descending, ascending] = desc_asc(value, params);
  return descending - ascending;
}

bool is_trivial(StateValue value, const Params& params) {
  require_state(value, params);
  const StateValue base = params.base();
  const StateValue first = value % base;
  for (unsigned i = 1; i < params.digits(); ++i) {
    value /= base;
    if (value % base != first) {
      return false;
    }
  }
  return true;
}

}  // namespace kaprekar
