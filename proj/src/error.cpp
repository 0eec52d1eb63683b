#include "lsbmark/error.hpp"

namespace lsbmark {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::file_not_found: return "file-not-found";
    case Errc::unsupported_format: return "unsupported-format";
    case Errc::corrupt_data: return "corrupt-data";
    case Errc::io_failure: return "io-failure";
    case Errc::invalid_image: return "invalid-image";
    case Errc::invalid_key: return "invalid-key";
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::count_exceeds_domain: return "count-exceeds-domain";
    case Errc::watermark_too_large: return "watermark-too-large";
    case Errc::empty_watermark: return "empty-watermark";
    case Errc::no_watermark_found: return "no-watermark-found";
    case Errc::header_exceeds_capacity: return "header-dimensions-exceed-capacity";
    case Errc::reference_too_large: return "reference-too-large";
    case Errc::k_out_of_range: return "k-out-of-range";
    case Errc::rectangle_out_of_bounds: return "rectangle-out-of-bounds";
    case Errc::dimension_mismatch: return "dimension-mismatch";
    case Errc::length_mismatch: return "length-mismatch";
    case Errc::empty_input: return "empty-input";
    case Errc::zero_variance: return "zero-variance";
    case Errc::parse_error: return "parse-error";
  }
  return "unknown";
}

}  // namespace lsbmark
