#include "padictree/errors.hpp"

namespace padictree {

std::string_view errc_name(Errc c) {
  switch (c) {
    case Errc::PrecisionExhausted: return "PrecisionExhausted";
    case Errc::DomainError: return "DomainError";
    case Errc::NonIntegral: return "NonIntegral";
    case Errc::NonIntegralExponent: return "NonIntegralExponent";
    case Errc::UnboundedBelow: return "UnboundedBelow";
    case Errc::Unsupported: return "Unsupported";
    case Errc::EmptyAttach: return "EmptyAttach";
    case Errc::DepthMismatch: return "DepthMismatch";
    case Errc::LabelMissing: return "LabelMissing";
    case Errc::NodeBudgetExceeded: return "NodeBudgetExceeded";
    case Errc::ParameterOutsideDomain: return "ParameterOutsideDomain";
    case Errc::PieceNotFound: return "PieceNotFound";
    case Errc::InvalidDatum: return "InvalidDatum";
    case Errc::NotNormal: return "NotNormal";
    case Errc::DomainNotNonnegative: return "DomainNotNonnegative";
    case Errc::LevelCap: return "LevelCap";
    case Errc::NotLeafless: return "NotLeafless";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

void raise(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace padictree
