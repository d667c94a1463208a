#ifndef DAMPWAVE_ERRORS_HPP
#define DAMPWAVE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dampwave {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct InvalidParameter : Error {
    using Error::Error;
};

struct NonConvergence : Error {
    using Error::Error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

struct BoundViolation : Error {
    using Error::Error;
};

struct ConfigInvalid : Error {
    using Error::Error;
};

struct QuadratureOverflow : Error {
    using Error::Error;
};

struct InsufficientData : Error {
    using Error::Error;
};

struct SweepInconclusive : Error {
    using Error::Error;
};

// Thrown by the time stepper when the solution exceeds the sup-norm cap or
// turns non-finite. Carries the step time at which this happened.
struct BlowupDetected : Error {
    double time;
    explicit BlowupDetected(double t)
        : Error("blowup detected at t=" + std::to_string(t)), time(t) {}
};

struct MonitorFailure : Error {
    double time;
    double margin;
    MonitorFailure(const std::string& what, double t, double m)
        : Error(what + " (t=" + std::to_string(t) + ", margin=" + std::to_string(m) + ")"),
          time(t), margin(m) {}
};

struct InequalityViolation : Error {
    unsigned long long seed;
    double ratio;
    InequalityViolation(const std::string& what, unsigned long long s, double r)
        : Error(what + " (seed=" + std::to_string(s) + ", ratio=" + std::to_string(r) + ")"),
          seed(s), ratio(r) {}
};

} // namespace dampwave

#endif
