#pragma once

#include <stdexcept>
#include <string>

namespace fmankit {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define FMANKIT_ERROR(Name)                                    \
    struct Name : Error {                                      \
        explicit Name(const std::string& what) : Error(what) {} \
    }

FMANKIT_ERROR(NotAUnit);
FMANKIT_ERROR(NotInRing);
FMANKIT_ERROR(NotAssociative);
FMANKIT_ERROR(PreconditionFailed);
FMANKIT_ERROR(FrameDegenerate);
FMANKIT_ERROR(InvalidParameters);
FMANKIT_ERROR(UnknownFamily);
FMANKIT_ERROR(PoleAtPoint);
FMANKIT_ERROR(ParseError);

#undef FMANKIT_ERROR

}  // namespace fmankit
