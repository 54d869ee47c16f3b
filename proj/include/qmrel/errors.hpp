// Error taxonomy for the qmrel library. Every failure the library can
// signal is a subclass of qmrel::error so callers can map categories to
// exit codes without string matching.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qmrel {

class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Caller misuse: mismatched variable tables, unknown variable names,
// malformed arguments.
class usage_error : public error {
public:
    using error::error;
};

// Text that does not conform to the polynomial grammar. Carries the byte
// offset of the failure and what the parser expected there.
class parse_error : public error {
public:
    parse_error(std::size_t position, const std::string& expected, const std::string& found)
        : error("parse error at position " + std::to_string(position) + ": expected " +
                expected + ", found " + found),
          position(position),
          expected(expected) {}

    std::size_t position;
    std::string expected;
};

// Division against a basis whose leading coefficient is not an invertible
// rational (e.g. it involves parameter variables).
class unsupported_domain_error : public error {
public:
    using error::error;
};

// A computation exceeded its step or storage budget. The message includes
// a partial-progress report.
class budget_error : public error {
public:
    using error::error;
};

// Invalid domain input (non-squarefree discriminant, composite prime
// argument, and so on).
class validation_error : public error {
public:
    using error::error;
};

// A constructed value failed its post-construction verification. Carries
// the name of the condition that failed.
class constructed_value_error : public error {
public:
    constructed_value_error(const std::string& what, const std::string& condition)
        : error(what), failed_condition(condition) {}

    std::string failed_condition;
};

// Basis cache problems: bad version line, checksum mismatch, tampered
// content, invariant failure on load.
class cache_error : public error {
public:
    using error::error;
};

// A contradiction that the underlying mathematics rules out. If one of
// these fires, the library itself is wrong.
class internal_error : public error {
public:
    using error::error;
};

}  // namespace qmrel
