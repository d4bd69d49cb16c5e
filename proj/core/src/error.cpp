#include "dupin/error.hpp"

namespace dupin {

const char* to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotLightlike: return "NotLightlike";
    case ErrorCode::ParabolicComplex: return "ParabolicComplex";
    case ErrorCode::DegeneratePair: return "DegeneratePair";
    case ErrorCode::NoLinearRelation: return "NoLinearRelation";
    case ErrorCode::ContactViolation: return "ContactViolation";
    case ErrorCode::PointSphereArgument: return "PointSphereArgument";
    case ErrorCode::NonIntersecting: return "NonIntersecting";
    case ErrorCode::NoRealSpheres: return "NoRealSpheres";
    case ErrorCode::NotOnSphere: return "NotOnSphere";
    case ErrorCode::CoincidentPoints: return "CoincidentPoints";
    case ErrorCode::DegenerateSpan: return "DegenerateSpan";
    case ErrorCode::NoCommonSphere: return "NoCommonSphere";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::DegeneratePencil: return "DegeneratePencil";
    case ErrorCode::DegenerateTorus: return "DegenerateTorus";
    case ErrorCode::CircleFamily: return "CircleFamily";
    case ErrorCode::SingularParameter: return "SingularParameter";
    case ErrorCode::BaseParameter: return "BaseParameter";
    case ErrorCode::NotCurvatureCircle: return "NotCurvatureCircle";
    case ErrorCode::NonSpacelikeDerivative: return "NonSpacelikeDerivative";
    case ErrorCode::NotOrthogonal: return "NotOrthogonal";
    case ErrorCode::OutsideJStar: return "OutsideJStar";
    case ErrorCode::CircleNotOnSphere: return "CircleNotOnSphere";
    case ErrorCode::NoCommonCurvatureSphere: return "NoCommonCurvatureSphere";
    case ErrorCode::FourPointIntersection: return "FourPointIntersection";
    case ErrorCode::NotOnQuerSphere: return "NotOnQuerSphere";
    case ErrorCode::NotOrthogonalToBaseCircle: return "NotOrthogonalToBaseCircle";
    case ErrorCode::PointSphereComplexArgument: return "PointSphereComplexArgument";
    case ErrorCode::NullDirection: return "NullDirection";
    case ErrorCode::UnsupportedChart: return "UnsupportedChart";
    case ErrorCode::NoMidpointSphere: return "NoMidpointSphere";
    case ErrorCode::DoubleRoot: return "DoubleRoot";
    case ErrorCode::SameSphere: return "SameSphere";
    case ErrorCode::SingularBox: return "SingularBox";
    case ErrorCode::NotMLie: return "NotMLie";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(detail.empty() ? std::string(to_string(code))
                                        : std::string(to_string(code)) + ": " + detail),
      code_(code)
{
}

void fail(ErrorCode code, const std::string& detail)
{
    throw Error(code, detail);
}

} // namespace dupin
