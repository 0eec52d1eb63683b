#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace lsbmark {

/// Non-empty byte string that seeds pixel selection.
///
/// Text keys are taken as their UTF-8 bytes verbatim. A "hex:" prefix switches
/// to hexadecimal, so "hex:00ff" is the two bytes 0x00 0xFF. Hashing is
/// byte-sensitive: "abc" and "hex:616263" are the same key, "abc\n" is not.
class SecretKey {
 public:
  explicit SecretKey(std::vector<std::uint8_t> bytes);

  static SecretKey parse(std::string_view text);

  std::span<const std::uint8_t> bytes() const noexcept { return bytes_; }

  friend bool operator==(const SecretKey&, const SecretKey&) = default;

 private:
  std::vector<std::uint8_t> bytes_;
};

inline constexpr std::uint64_t kFnvOffsetBasis = 14695981039346656037ULL;
inline constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

/// FNV-1a 64 over the key bytes.
std::uint64_t seed_from_key(const SecretKey& key) noexcept;
std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes) noexcept;

/// One splitmix64 step: returns (output, next state).
constexpr std::pair<std::uint64_t, std::uint64_t> keyed_stream_next(
    std::uint64_t state) noexcept {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return {z ^ (z >> 31), state};
}

/// Stateful wrapper over keyed_stream_next.
class KeyStream {
 public:
  explicit constexpr KeyStream(std::uint64_t state) noexcept : state_(state) {}

  constexpr std::uint64_t next() noexcept {
    auto [value, state] = keyed_stream_next(state_);
    state_ = state;
    return value;
  }

  constexpr std::uint64_t state() const noexcept { return state_; }

 private:
  std::uint64_t state_;
};

/// Ordered, distinct host-pixel indices chosen by a key.
class SelectionPlan {
 public:
  SelectionPlan(std::size_t domain_size, std::vector<std::size_t> indices)
      : domain_size_(domain_size), indices_(std::move(indices)) {}

  std::size_t domain_size() const noexcept { return domain_size_; }
  std::size_t size() const noexcept { return indices_.size(); }
  std::span<const std::size_t> indices() const noexcept { return indices_; }
  std::size_t operator[](std::size_t i) const { return indices_[i]; }

  friend bool operator==(const SelectionPlan&, const SelectionPlan&) = default;

 private:
  std::size_t domain_size_;
  std::vector<std::size_t> indices_;
};

/// First `count` entries of a partial Fisher-Yates shuffle of [0, domain_size)
/// driven by splitmix64 seeded with the key hash. Step i swaps position i with
/// i + next() % (domain_size - i). Throws count_exceeds_domain if
/// count > domain_size.
///
/// Plans are prefix-consistent: the plan for a smaller count is a prefix of
/// the plan for a larger one under the same key and domain.
SelectionPlan derive_permutation(const SecretKey& key, std::size_t domain_size,
                                 std::size_t count);

}  // namespace lsbmark
