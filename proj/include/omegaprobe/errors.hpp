#pragma once

#include <stdexcept>
#include <string>

namespace omegaprobe {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateCorner : Error { using Error::Error; };
struct CoincidentPoints : Error { using Error::Error; };
struct InvalidOmega : Error { using Error::Error; };
struct DegeneratePolygon : Error { using Error::Error; };
struct BudgetExceeded : Error { using Error::Error; };
struct NarrowVertexEncountered : Error { using Error::Error; };
struct OmegaMismatch : Error { using Error::Error; };
struct EpsilonViolated : Error { using Error::Error; };
struct InvalidParams : Error { using Error::Error; };
struct Infeasible : Error { using Error::Error; };

struct InconsistencyFound : Error {
    InconsistencyFound(int index, const std::string& why)
        : Error("inconsistent answer at probe " + std::to_string(index) + ": " + why), probe_index(index) {}
    int probe_index;
};

}  // namespace omegaprobe
