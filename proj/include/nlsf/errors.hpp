#pragma once

#include <stdexcept>
#include <string>

namespace nlsf {

struct SingularGramian : std::runtime_error {
    explicit SingularGramian(const std::string& what) : std::runtime_error(what) {}
};

struct PoleEvaluation : std::runtime_error {
    explicit PoleEvaluation(const std::string& what) : std::runtime_error(what) {}
};

struct DegenerateParams : std::runtime_error {
    explicit DegenerateParams(const std::string& what) : std::runtime_error(what) {}
};

struct SeedTooLarge : std::runtime_error {
    explicit SeedTooLarge(const std::string& what) : std::runtime_error(what) {}
};

struct EdgeDecay : std::runtime_error {
    explicit EdgeDecay(const std::string& what) : std::runtime_error(what) {}
};

struct GridMismatch : std::runtime_error {
    explicit GridMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct CFLViolation : std::runtime_error {
    explicit CFLViolation(const std::string& what) : std::runtime_error(what) {}
};

struct BoundaryContamination : std::runtime_error {
    explicit BoundaryContamination(const std::string& what) : std::runtime_error(what) {}
};

struct NotAnEigenfunction : std::runtime_error {
    explicit NotAnEigenfunction(const std::string& what) : std::runtime_error(what) {}
};

struct NotAnEigenvalue : std::runtime_error {
    explicit NotAnEigenvalue(const std::string& what) : std::runtime_error(what) {}
};

struct CountMismatch : std::runtime_error {
    explicit CountMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct DegenerateEigenvalues : std::runtime_error {
    explicit DegenerateEigenvalues(const std::string& what) : std::runtime_error(what) {}
};

struct InsufficientData : std::runtime_error {
    explicit InsufficientData(const std::string& what) : std::runtime_error(what) {}
};

/// Wraps a module error with the pipeline stage it came from.
struct StageError : std::runtime_error {
    std::string stage;
    StageError(const std::string& stage_, const std::string& what)
        : std::runtime_error("[" + stage_ + "] " + what), stage(stage_) {}
};

} // namespace nlsf
