#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fjs {

enum class ErrorCode {
  syntax,
  dangling_arc,
  self_loop,
  duplicate_arc,
  duplicate_machine,
  empty_eligible_set,
  machine_out_of_range,
  non_positive_time,
  cycle,
  invalid_argument,
  malformed_assignment,
  malformed_selection,
  inadmissible,
  unknown_variable,
  non_integral,
  no_machine_selected,
  infeasible_point,
  precondition_violated,
  cap_exceeded,
};

std::string_view to_string(ErrorCode code);

class FjsError : public std::runtime_error {
 public:
  FjsError(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fjs
