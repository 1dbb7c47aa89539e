#pragma once

#include <stdexcept>
#include <string>

namespace nks6 {

/// Base class for every contract violation raised by the library.
class GeometryError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

#define NKS6_DEFINE_ERROR(Name)                                   \
    class Name : public GeometryError                             \
    {                                                             \
    public:                                                       \
        explicit Name(const std::string& what)                    \
            : GeometryError(std::string(#Name ": ") + what)       \
        {                                                         \
        }                                                         \
    }

NKS6_DEFINE_ERROR(InvalidArgument);
NKS6_DEFINE_ERROR(LeibnizViolation);
NKS6_DEFINE_ERROR(DegenerateDirection);
NKS6_DEFINE_ERROR(AntipodalTransport);
NKS6_DEFINE_ERROR(NearPole);
NKS6_DEFINE_ERROR(OrientationMismatch);
NKS6_DEFINE_ERROR(NotThroughPoint);
NKS6_DEFINE_ERROR(DegreeOverflow);
NKS6_DEFINE_ERROR(DegenerateVolume);
NKS6_DEFINE_ERROR(Unstable);

#undef NKS6_DEFINE_ERROR

} // namespace nks6
