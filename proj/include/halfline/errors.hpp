#pragma once

#include <stdexcept>
#include <string>

namespace halfline {

// Error taxonomy shared by all modules. Every failure mode that callers are
// expected to branch on gets its own type; everything else is a plain
// std::invalid_argument / std::runtime_error.

struct SingularSystem : std::runtime_error {
    explicit SingularSystem(const std::string& what) : std::runtime_error(what) {}
};

struct DomainMismatch : std::invalid_argument {
    explicit DomainMismatch(const std::string& what) : std::invalid_argument(what) {}
};

struct InvalidControl : std::invalid_argument {
    explicit InvalidControl(const std::string& what) : std::invalid_argument(what) {}
};

struct HorizonTooShort : std::invalid_argument {
    explicit HorizonTooShort(const std::string& what) : std::invalid_argument(what) {}
};

struct HorizonExceeded : std::invalid_argument {
    explicit HorizonExceeded(const std::string& what) : std::invalid_argument(what) {}
};

struct MismatchedTruncation : std::invalid_argument {
    explicit MismatchedTruncation(const std::string& what) : std::invalid_argument(what) {}
};

struct ConvergenceFailure : std::runtime_error {
    explicit ConvergenceFailure(const std::string& what) : std::runtime_error(what) {}
};

struct UnboundedSupport : std::invalid_argument {
    explicit UnboundedSupport(const std::string& what) : std::invalid_argument(what) {}
};

struct ZeroJostFunction : std::runtime_error {
    explicit ZeroJostFunction(const std::string& what) : std::runtime_error(what) {}
};

struct SearchGridTooCoarse : std::runtime_error {
    explicit SearchGridTooCoarse(const std::string& what) : std::runtime_error(what) {}
};

struct IncompleteData : std::invalid_argument {
    explicit IncompleteData(const std::string& what) : std::invalid_argument(what) {}
};

struct TailNotNegligible : std::runtime_error {
    explicit TailNotNegligible(const std::string& what) : std::runtime_error(what) {}
};

struct UnsupportedPreset : std::invalid_argument {
    explicit UnsupportedPreset(const std::string& what) : std::invalid_argument(what) {}
};

struct CFLViolation : std::invalid_argument {
    explicit CFLViolation(const std::string& what) : std::invalid_argument(what) {}
};

struct SupportViolation : std::invalid_argument {
    explicit SupportViolation(const std::string& what) : std::invalid_argument(what) {}
};

struct InsufficientDecay : std::runtime_error {
    explicit InsufficientDecay(const std::string& what) : std::runtime_error(what) {}
};

struct PhaseNotDecayed : std::invalid_argument {
    explicit PhaseNotDecayed(const std::string& what) : std::invalid_argument(what) {}
};

struct KernelUnavailable : std::invalid_argument {
    explicit KernelUnavailable(const std::string& what) : std::invalid_argument(what) {}
};

struct TruncationTooShort : std::invalid_argument {
    explicit TruncationTooShort(const std::string& what) : std::invalid_argument(what) {}
};

struct AllTracesVanish : std::runtime_error {
    explicit AllTracesVanish(const std::string& what) : std::runtime_error(what) {}
};

struct UnsupportedConversion : std::invalid_argument {
    explicit UnsupportedConversion(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace halfline
