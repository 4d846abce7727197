#pragma once
#include <stdexcept>
#include <string>

namespace dx3 {

/// Base class for all errors thrown by this library.
struct Dx3Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The conformal factor 1/(1 + lambda r^2) is singular at the requested radius.
struct MetricSingular : Dx3Error {
    using Dx3Error::Dx3Error;
};

/// Input lies outside the mathematical domain of the operation.
struct DomainError : Dx3Error {
    using Dx3Error::Dx3Error;
};

/// Operation is not defined for the motion regime of the given state.
struct RegimeError : Dx3Error {
    using Dx3Error::Dx3Error;
};

/// A phase-space point does not satisfy the energy constraint it was claimed to.
struct OffShell : Dx3Error {
    using Dx3Error::Dx3Error;
};

/// A turning-point or root search found no real solution.
struct NoRealRoots : Dx3Error {
    using Dx3Error::Dx3Error;
};

/// A trajectory ran into the guard band around a singular radius.
struct SingularityApproach : Dx3Error {
    using Dx3Error::Dx3Error;
};

/// The adaptive integrator could not proceed (step underflow or iteration cap).
struct StepFailure : Dx3Error {
    using Dx3Error::Dx3Error;
};

/// An event search exhausted its horizon without bracketing the event.
struct EventNotFound : Dx3Error {
    using Dx3Error::Dx3Error;
};

} // namespace dx3
