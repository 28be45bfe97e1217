#pragma once

#include <stdexcept>
#include <string>

namespace perfcal {

// Input violates a documented invariant (bad manifest, markers, plan, log).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A processing step could not produce a result (too-short input, solver
// failure, uncovered window).
class ProcessingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace perfcal
