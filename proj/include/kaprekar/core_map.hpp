#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>

namespace kaprekar {

/// A state is a D-digit string in base B with leading zeros, stored as its
/// integer value.
using StateValue = std::uint64_t;
using Digit = std::uint32_t;

/// Largest digit count any admissible Params can have (base 2 tops out at 63).
inline constexpr std::size_t kMaxDigits = 64;

/// Base and digit length of a state space. Construction enforces
/// base >= 2, digits >= 2 and base^digits <= UINT64_MAX.
class Params {
 public:
  Params(unsigned base, unsigned digits);

  unsigned base() const noexcept { return base_; }
  unsigned digits() const noexcept { return digits_; }

  /// base^digits, the number of raw states including repdigits.
  std::uint64_t state_count() const noexcept { return state_count_; }
  /// |S_D| = base^digits - base.
  std::uint64_t nontrivial_count() const noexcept { return state_count_ - base_; }

  bool contains(StateValue value) const noexcept { return value < state_count_; }

  friend bool operator==(const Params&, const Params&) = default;

 private:
  unsigned base_;
  unsigned digits_;
  std::uint64_t state_count_;
};

/// Fixed-capacity digit tuple, most-significant digit first.
class DigitTuple {
 public:
  DigitTuple() = default;
  explicit DigitTuple(std::span<const Digit> digits);

  std::size_t size() const noexcept { return size_; }
  Digit operator[](std::size_t i) const noexcept { return digits_[i]; }
  Digit& operator[](std::size_t i) noexcept { return digits_[i]; }
  void push_back(Digit d) noexcept { digits_[size_++] = d; }

  const Digit* begin() const noexcept { return digits_.data(); }
  const Digit* end() const noexcept { return digits_.data() + size_; }
  Digit* begin() noexcept { return digits_.data(); }
  Digit* end() noexcept { return digits_.data() + size_; }
  std::span<const Digit> view() const noexcept { return {digits_.data(), size_}; }

  friend bool operator==(const DigitTuple& a, const DigitTuple& b) noexcept;
  friend std::strong_ordering operator<=>(const DigitTuple& a, const DigitTuple& b) noexcept;

 private:
  std::array<Digit, kMaxDigits> digits_{};
  std::size_t size_ = 0;
};

struct DescAsc {
  StateValue descending;
  StateValue ascending;
};

/// Positional digits of `value`, zero-padded to D. Throws DomainError when
/// value >= base^D.
DigitTuple digits_of(StateValue value, const Params& params);

/// Inverse of digits_of. Throws DomainError on a wrong length or a digit >= base.
StateValue value_of(std::span<const Digit> digits, const Params& params);

/// The digits of `value` sorted non-increasing.
DigitTuple sorted_descending(StateValue value, const Params& params);

/// Integers formed by the digits sorted non-increasing and non-decreasing.
DescAsc desc_asc(StateValue value, const Params& params);

/// One Kaprekar step, desc - asc. Repdigits map to 0.
StateValue kaprekar_step(StateValue value, const Params& params);

/// True iff every digit of `value` is the same.
bool is_trivial(StateValue value, const Params& params);

}  // namespace kaprekar
