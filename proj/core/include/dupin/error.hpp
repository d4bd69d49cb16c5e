#pragma once

#include <stdexcept>
#include <string>

namespace dupin {

enum class ErrorCode {
    InvalidArgument,
    NotLightlike,
    ParabolicComplex,
    DegeneratePair,
    NoLinearRelation,
    ContactViolation,
    PointSphereArgument,
    NonIntersecting,
    NoRealSpheres,
    NotOnSphere,
    CoincidentPoints,
    DegenerateSpan,
    NoCommonSphere,
    DegenerateInput,
    DegeneratePencil,
    DegenerateTorus,
    CircleFamily,
    SingularParameter,
    BaseParameter,
    NotCurvatureCircle,
    NonSpacelikeDerivative,
    NotOrthogonal,
    OutsideJStar,
    CircleNotOnSphere,
    NoCommonCurvatureSphere,
    FourPointIntersection,
    NotOnQuerSphere,
    NotOrthogonalToBaseCircle,
    PointSphereComplexArgument,
    NullDirection,
    UnsupportedChart,
    NoMidpointSphere,
    DoubleRoot,
    SameSphere,
    SingularBox,
    NotMLie,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& detail);

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& detail = {});

} // namespace dupin
