#pragma once

#include <stdexcept>
#include <string>

namespace trophom {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad user input: unstable (g,n), malformed cycle notation, invalid graph file.
struct InvalidInput : Error {
    using Error::Error;
};

// A group (or orbit enumeration) grew past the configured cap.
struct CapExceeded : Error {
    using Error::Error;
};

// Internal cross-checks failed: nonzero d∘d, subdivision level disagreement.
struct ConsistencyError : Error {
    using Error::Error;
};

}  // namespace trophom
