// error.hpp
// Exception hierarchy shared by the simulator, game engine and harnesses.

#pragma once

#include <stdexcept>
#include <string>

namespace qdating {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Register size outside the supported range.
class SizeError : public Error { using Error::Error; };
// Operands built for different register sizes.
class DimensionError : public Error { using Error::Error; };
// Index outside [0, N).
class IndexError : public Error { using Error::Error; };
// Amplitudes no longer normalized.
class StateError : public Error { using Error::Error; };
// Invalid run parameters (iteration bound, game settings, ...).
class ConfigError : public Error { using Error::Error; };
// Feature lookup misses.
class NotFoundError : public Error { using Error::Error; };
// Feature table violates its index/label uniqueness rules.
class MalformedTableError : public Error { using Error::Error; };
// Without-replacement proposer ran out of candidates.
class ExhaustedError : public Error { using Error::Error; };
// Sweep rows do not form a full Cartesian grid.
class ShapeError : public Error { using Error::Error; };

}  // namespace qdating
