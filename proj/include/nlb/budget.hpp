#pragma once

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace nlb {

// Raised when an enumeration or LP would exceed its configured budget;
// results are exact or absent, never sampled.
struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

inline int64_t env_budget(const char* name, int64_t fallback) {
    if (const char* v = std::getenv(name)) {
        char* end = nullptr;
        long long parsed = std::strtoll(v, &end, 10);
        if (end && *end == '\0' && parsed > 0) return parsed;
    }
    return fallback;
}

// Deterministic-strategy enumeration cap (number of strategies).
inline int64_t enum_budget() { return env_budget("NLB_ENUM_BUDGET", 100000000); }

// Assignment-space cap for the total-variation LP (size of the global
// assignment space).
inline int64_t omega_budget() { return env_budget("NLB_OMEGA_BUDGET", 1000000); }

}  // namespace nlb
