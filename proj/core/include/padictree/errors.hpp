#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace padictree {

enum class Errc {
  PrecisionExhausted,
  DomainError,
  NonIntegral,
  NonIntegralExponent,
  UnboundedBelow,
  Unsupported,
  EmptyAttach,
  DepthMismatch,
  LabelMissing,
  NodeBudgetExceeded,
  ParameterOutsideDomain,
  PieceNotFound,
  InvalidDatum,
  NotNormal,
  DomainNotNonnegative,
  LevelCap,
  NotLeafless,
  ParseError,
};

std::string_view errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void raise(Errc code, const std::string& what);

}  // namespace padictree
