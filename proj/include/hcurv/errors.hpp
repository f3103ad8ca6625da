#pragma once

#include <stdexcept>
#include <string>

namespace hcurv {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Surface construction / validation failures.
struct NotPositiveRadius : Error { using Error::Error; };
struct SecondFormNotDefinite : Error { using Error::Error; };
struct NegativeCurvature : Error { using Error::Error; };

// Evaluation failures.
struct DegenerateFrame : Error { using Error::Error; };
struct PoleProximity : Error { using Error::Error; };
struct DegenerateMetric : Error { using Error::Error; };

// Jet arithmetic domain failures (sqrt/log of nonpositive value, zero divisor).
struct DomainError : Error { using Error::Error; };

// Grid construction failure.
struct GridTooCoarse : Error { using Error::Error; };

} // namespace hcurv
