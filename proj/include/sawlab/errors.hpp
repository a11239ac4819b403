#pragma once

#include <stdexcept>
#include <string>

namespace sawlab {

class SawError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A VertexId or EdgeRef that does not name an element of the family.
class InvalidVertex : public SawError {
 public:
  using SawError::SawError;
};

// Operation called outside its contract (e.g. avoided edge not incident to the root).
class PreconditionError : public SawError {
 public:
  using SawError::SawError;
};

// Unparseable family, vertex or edge text.
class SpecError : public SawError {
 public:
  using SawError::SawError;
};

}  // namespace sawlab
