#pragma once

#include <stdexcept>
#include <string>

namespace diraclab {

/// Invalid argument passed to a library routine (bad index, ε out of range, odd M, ...).
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Input data that cannot be used (non-finite potential sample, mismatched grids).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A numerical procedure failed (singular nodal matrix, solver residual too large).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A time integrator produced non-finite values or exceeded the blow-up threshold.
class BlowUpError : public std::runtime_error {
public:
    BlowUpError(long step, const std::string& what)
        : std::runtime_error(what), step_(step) {}
    long step() const noexcept { return step_; }

private:
    long step_;
};

/// A caller violated an operation's contract (e.g. energy with time-dependent potentials).
class ContractError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Experiment or CLI configuration that cannot be resolved.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace diraclab
