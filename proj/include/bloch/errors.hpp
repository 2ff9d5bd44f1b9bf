#pragma once

#include <stdexcept>
#include <string>

namespace bloch {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// group_harmonics
struct NotLatinSquare : Error { using Error::Error; };
struct NotAssociative : Error { using Error::Error; };
struct NoIdentity : Error { using Error::Error; };
struct NoInverse : Error { using Error::Error; };
struct NotIrreducible : Error { using Error::Error; };
struct EquivalentPair : Error { using Error::Error; };
struct IncompleteSet : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };

// covering_lattice
struct CocycleViolation : Error { using Error::Error; };
struct DisconnectedCover : Error { using Error::Error; };
struct InvalidEdge : Error { using Error::Error; };

// bloch_decomposition
struct IncompleteDual : Error { using Error::Error; };
struct NonPositiveTime : Error { using Error::Error; };
struct SpectralParameterInSpectrum : Error { using Error::Error; };
struct InvalidSpectralParameter : Error { using Error::Error; };

// torus_landau
struct DomainExceeded : Error { using Error::Error; };
struct PoleProximity : Error { using Error::Error; };
struct QuadratureNotConverged : Error { using Error::Error; };
struct TruncationNotConverged : Error { using Error::Error; };
struct GridTooCoarse : Error { using Error::Error; };

// cli
struct ConfigInvalid : Error { using Error::Error; };
struct ModelLoadError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

}  // namespace bloch
