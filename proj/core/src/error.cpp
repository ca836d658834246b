#include "hinrisk/error.hpp"

namespace hinrisk {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::UnknownType: return "UnknownType";
    case Errc::DanglingEdge: return "DanglingEdge";
    case Errc::DuplicateId: return "DuplicateId";
    case Errc::TypeMismatch: return "TypeMismatch";
    case Errc::InvalidWindow: return "InvalidWindow";
    case Errc::UnknownNode: return "UnknownNode";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::IncompatibleEndpoint: return "IncompatibleEndpoint";
    case Errc::SingleClass: return "SingleClass";
    case Errc::NoLabeledNodes: return "NoLabeledNodes";
    case Errc::UnknownAttribute: return "UnknownAttribute";
    case Errc::MissingModel: return "MissingModel";
    case Errc::SeparationDetected: return "SeparationDetected";
    case Errc::SingularInformation: return "SingularInformation";
    case Errc::DegenerateLabels: return "DegenerateLabels";
    case Errc::EmptyWindow: return "EmptyWindow";
    case Errc::InfeasibleConfig: return "InfeasibleConfig";
    case Errc::ZeroDenominator: return "ZeroDenominator";
    case Errc::Usage: return "Usage";
    case Errc::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace hinrisk
