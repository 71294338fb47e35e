#pragma once

#include <stdexcept>
#include <string>

namespace abring {

// Domain errors thrown by the scattering / eigensystem layers. All derive from
// Error so callers can catch the whole family or a specific condition.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// (eta - eta*) xi+ chi underflowed while the parameters are not classified
// Singular: the generic transfer-matrix formula is unusable this close to the
// removable singular surface.
struct DegenerateDivision : Error {
    using Error::Error;
};

// xi+ = 0: det M = xi-/xi+ is undefined.
struct DivisionByZero : Error {
    using Error::Error;
};

// The shared denominator of the closed-form amplitudes vanished: the scattering
// problem has no bounded solution at/too near the spectral singularity.
struct SingularTransmission : Error {
    using Error::Error;
};

// The lattice linear system for the direct amplitude solve is rank-deficient.
struct SingularSystem : Error {
    using Error::Error;
};

// Bethe-type state construction requested at (or numerically on) chi = 0,
// where the plane-wave eigenbasis collapses.
struct SingularConstruction : Error {
    using Error::Error;
};

// A critical point handed to the near-singularity expansion does not satisfy
// the singularity condition.
struct InvalidCriticalPoint : Error {
    using Error::Error;
};

}  // namespace abring
