#pragma once

#include <stdexcept>
#include <string>

namespace mmcp {

// Contract violations and unrecoverable conditions are exceptions; expected
// control-flow outcomes (e.g. "no improving candidate") use std::optional at
// the call site instead.

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Graph construction / input validation.
struct EmptyGraph : Error { using Error::Error; };
struct DisconnectedInput : Error { using Error::Error; };
struct NonpositiveWeight : Error { using Error::Error; };
struct VertexOutOfRange : Error { using Error::Error; };

// Spectral backend.
struct UnsupportedScale : Error { using Error::Error; };
struct EigenFailure : Error { using Error::Error; };

// Solvers.
struct TooLarge : Error { using Error::Error; };         // brute force size cap
struct InfeasibleCut : Error { using Error::Error; };    // operation requires a minimal cut
struct RepairFailed : Error { using Error::Error; };     // constraint repair exhausted its flip budget
struct NoCandidates : Error { using Error::Error; };     // graph admits no cut at all (n == 1)
struct InfeasibleShape : Error { using Error::Error; };  // generator cannot hit a connected bridgeless graph

// I/O.
struct ParseError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

}  // namespace mmcp
