#pragma once

#include <stdexcept>
#include <string>

namespace matings {

// One exception type per failure contract so callers (and the CLI exit-code
// mapping) can distinguish them.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidInput : Error {
    using Error::Error;
};

struct DegeneratePartition : InvalidInput {
    using InvalidInput::InvalidInput;
};

struct InvalidCharPair : InvalidInput {
    using InvalidInput::InvalidInput;
};

struct MalformedConfiguration : InvalidInput {
    using InvalidInput::InvalidInput;
};

struct NoCluster : Error {
    using Error::Error;
};

struct Obstructed : Error {
    using Error::Error;
};

struct NoConvergence : Error {
    using Error::Error;
};

struct DerivativeVanished : Error {
    using Error::Error;
};

struct SingularSystem : Error {
    using Error::Error;
};

struct BranchAmbiguity : Error {
    using Error::Error;
};

struct DegenerateImage : Error {
    using Error::Error;
};

struct RootFindingFailure : Error {
    using Error::Error;
};

struct UnboundedJob : InvalidInput {
    using InvalidInput::InvalidInput;
};

} // namespace matings
