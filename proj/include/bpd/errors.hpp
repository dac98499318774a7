#pragma once

#include <stdexcept>

namespace bpd {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct invalid_parameter : error {
  using error::error;
};

struct field_too_small : error {
  using error::error;
};

struct division_by_zero : error {
  using error::error;
};

struct insufficient_data : error {
  using error::error;
};

struct no_valid_lambda : error {
  using error::error;
};

struct unsupported_operation : error {
  using error::error;
};

// malformed descriptor / stripe / codeword files
struct format_error : error {
  using error::error;
};

}  // namespace bpd
