#pragma once

#include <stdexcept>
#include <string>

namespace spinorlight {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Bad or inconsistent configuration (rejected before any math runs).
struct ConfigError : Error {
    using Error::Error;
};

// |sin S| fell below the configured guard; the control matrix is (nearly)
// singular and the closed forms blow up as 1/sin S.
struct PhaseSingular : Error {
    using Error::Error;
};

// Operation defined only at delta != 0 (e.g. the Compton length).
struct ZeroDetuning : Error {
    using Error::Error;
};

// Operation defined only at delta == 0 (the transparent-medium closed forms).
struct NonZeroDelta : Error {
    using Error::Error;
};

// A scattering denominator collapsed below representable magnitude.
struct DenominatorVanishes : Error {
    using Error::Error;
};

// Asymptotic formula requested outside its validity range (L*delta_eff/v0 < 5).
struct AsymptoticRegimeViolated : Error {
    using Error::Error;
};

// Explicit time step violates the advection stability bound.
struct CflViolation : Error {
    using Error::Error;
};

// The boundary-value reduction hit a singular 2x2 system (|M22| ~ 0).
struct SingularBoundarySystem : Error {
    using Error::Error;
};

// A sweep point failed; carries the row index so tables stay attributable.
struct SweepPointError : Error {
    SweepPointError(std::size_t index, const std::string& what)
        : Error("sweep point " + std::to_string(index) + ": " + what), index(index) {}
    std::size_t index;
};

} // namespace spinorlight
