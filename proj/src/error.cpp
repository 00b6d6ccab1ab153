#include "mwp/error.hpp"

namespace mwp {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::UnparseableAnswer: return "UnparseableAnswer";
    case Errc::ZeroDenominator: return "ZeroDenominator";
    case Errc::UnknownCharacter: return "UnknownCharacter";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::UnbalancedParentheses: return "UnbalancedParentheses";
    case Errc::PrefixUnderflow: return "PrefixUnderflow";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::ZeroToNegativePower: return "ZeroToNegativePower";
    case Errc::NumericOverflow: return "NumericOverflow";
    case Errc::NonFiniteResult: return "NonFiniteResult";
    case Errc::UnboundPlaceholder: return "UnboundPlaceholder";
    case Errc::AmbiguousLeaf: return "AmbiguousLeaf";
    case Errc::LeafNotFound: return "LeafNotFound";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::TooManyQuantities: return "TooManyQuantities";
    case Errc::ExternalConstant: return "ExternalConstant";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::InvalidInstance: return "InvalidInstance";
    case Errc::IoFailure: return "IoFailure";
    case Errc::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

}  // namespace mwp
