#pragma once

#include <stdexcept>
#include <string>

namespace qhj {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// --- Schroedinger solver ---
struct InvalidGrid : Error { using Error::Error; };
struct NonFiniteSolution : Error { using Error::Error; };
struct BracketExhausted : Error { using Error::Error; };

// --- momentum fields ---
struct OutOfDomain : Error { using Error::Error; };
struct NonRealMomentum : Error { using Error::Error; };
struct NodeSingularity : Error { using Error::Error; };
struct BranchTrackingFailure : Error { using Error::Error; };

// --- higher-order dynamics ---
struct ZeroVelocity : Error { using Error::Error; };
struct VelocityCollapse : Error { using Error::Error; };
struct StepUnderflow : Error { using Error::Error; };
struct RegimeViolation : Error { using Error::Error; };
struct InsufficientSpan : Error { using Error::Error; };
struct NoRealRoot : Error { using Error::Error; };

// --- angular fields ---
struct NonRealResult : Error { using Error::Error; };
struct PoleSingularity : Error { using Error::Error; };

// --- diffraction / trajectories ---
struct ValidityViolation : Error { using Error::Error; };
struct QuadratureFailure : Error { using Error::Error; };
struct InsufficientFringes : Error { using Error::Error; };
struct TrajectoryCrossing : Error { using Error::Error; };

// --- CLI ---
struct ConfigError : Error { using Error::Error; };

}  // namespace qhj
