#include "lsbmark/keystream.hpp"

#include <numeric>
#include <string>
#include <unordered_map>

#include "lsbmark/error.hpp"

namespace lsbmark {
namespace {

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

// Sparse variant for count << domain_size: only displaced slots are stored.
// Produces exactly the same sequence as the dense array swap.
std::vector<std::size_t> sparse_shuffle(KeyStream stream, std::size_t n,
                                        std::size_t count) {
  std::unordered_map<std::size_t, std::size_t> displaced;
  displaced.reserve(count * 2);
  auto slot = [&](std::size_t i) {
    auto it = displaced.find(i);
    return it == displaced.end() ? i : it->second;
  };
  std::vector<std::size_t> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(stream.next() % (n - i));
    const std::size_t at_i = slot(i);
    const std::size_t at_j = slot(j);
    out[i] = at_j;
    displaced[j] = at_i;
  }
  return out;
}

std::vector<std::size_t> dense_shuffle(KeyStream stream, std::size_t n,
                                       std::size_t count) {
  std::vector<std::size_t> items(n);
  std::iota(items.begin(), items.end(), std::size_t{0});
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(stream.next() % (n - i));
    std::swap(items[i], items[j]);
  }
  items.resize(count);
  return items;
}

}  // namespace

SecretKey::SecretKey(std::vector<std::uint8_t> bytes) : bytes_(std::move(bytes)) {
  if (bytes_.empty()) {
    throw Error(Errc::invalid_key, "secret key must be at least one byte");
  }
}

SecretKey SecretKey::parse(std::string_view text) {
  constexpr std::string_view kHexPrefix = "hex:";
  if (text.starts_with(kHexPrefix)) {
    const std::string_view digits = text.substr(kHexPrefix.size());
    if (digits.empty() || digits.size() % 2 != 0) {
      throw Error(Errc::invalid_key,
                  "hex key needs an even, non-zero number of digits");
    }
    std::vector<std::uint8_t> bytes;
    bytes.reserve(digits.size() / 2);
    for (std::size_t i = 0; i < digits.size(); i += 2) {
      const int hi = hex_value(digits[i]);
      const int lo = hex_value(digits[i + 1]);
      if (hi < 0 || lo < 0) {
        throw Error(Errc::invalid_key,
                    "invalid hex digit in key near '" +
                        std::string(digits.substr(i, 2)) + "'");
      }
      bytes.push_back(static_cast<std::uint8_t>(hi << 4 | lo));
    }
    return SecretKey(std::move(bytes));
  }
  return SecretKey(std::vector<std::uint8_t>(text.begin(), text.end()));
}

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes) noexcept {
  std::uint64_t hash = kFnvOffsetBasis;
  for (std::uint8_t byte : bytes) {
    hash ^= byte;
    hash *= kFnvPrime;
  }
  return hash;
}

std::uint64_t seed_from_key(const SecretKey& key) noexcept {
  return fnv1a64(key.bytes());
}

SelectionPlan derive_permutation(const SecretKey& key, std::size_t domain_size,
                                 std::size_t count) {
  if (count > domain_size) {
    throw Error(Errc::count_exceeds_domain,
                "cannot select " + std::to_string(count) + " of " +
                    std::to_string(domain_size) + " pixels");
  }
  KeyStream stream(seed_from_key(key));
  auto indices = count * 16 < domain_size
                     ? sparse_shuffle(stream, domain_size, count)
                     : dense_shuffle(stream, domain_size, count);
  return SelectionPlan(domain_size, std::move(indices));
}

}  // namespace lsbmark
