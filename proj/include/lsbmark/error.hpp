#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lsbmark {

enum class Errc {
  file_not_found,
  unsupported_format,
  corrupt_data,
  io_failure,
  invalid_image,
  invalid_key,
  invalid_argument,
  count_exceeds_domain,
  watermark_too_large,
  empty_watermark,
  no_watermark_found,
  header_exceeds_capacity,
  reference_too_large,
  k_out_of_range,
  rectangle_out_of_bounds,
  dimension_mismatch,
  length_mismatch,
  empty_input,
  zero_variance,
  parse_error,
};

std::string_view to_string(Errc code) noexcept;

/// Every failure in the library surfaces as this exception; `code()` tells
/// the kinds apart so callers (the CLI, the Python module) can map them.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace lsbmark
