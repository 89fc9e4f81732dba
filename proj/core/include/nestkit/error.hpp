#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nestkit {

enum class ErrorCode {
  invalid_input,
  residue_out_of_range,
  undeclared_label,
  orbit_not_closed,
  nested_point_inside_block,
  infeasible_params,
  no_cyclic_sts,
  v_too_small,
  unknown_fixture,
  missing_ingredient,
  unsupported_case,
  illegal_reuse,
  not_strong,
  not_harmonious,
  contract_violation,
  malformed_file,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above. The
/// message is human readable; `blocks` lists offending block indices where
/// that is meaningful (NESTED_POINT_INSIDE_BLOCK).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::vector<std::size_t> blocks = {});

  ErrorCode code() const noexcept { return code_; }
  const std::vector<std::size_t>& blocks() const noexcept { return blocks_; }

 private:
  ErrorCode code_;
  std::vector<std::size_t> blocks_;
};

}  // namespace nestkit
