#pragma once

#include <stdexcept>
#include <string>

namespace dskernel {

/// Malformed input: bad files, unknown ids, invalid parameters.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// An internal invariant was violated.
class InvariantError : public std::logic_error {
public:
    explicit InvariantError(const std::string& what) : std::logic_error(what) {}
};

/// A precondition of an exhaustive routine was exceeded (instance too large).
class GuardError : public std::runtime_error {
public:
    explicit GuardError(const std::string& what) : std::runtime_error(what) {}
};

/// No representative row matched while translating a threshold row.
class IncompletenessError : public std::runtime_error {
public:
    explicit IncompletenessError(const std::string& what) : std::runtime_error(what) {}
};

inline void ensure(bool cond, const std::string& what)
{
    if (!cond) throw InvariantError(what);
}

inline void require_input(bool cond, const std::string& what)
{
    if (!cond) throw InputError(what);
}

} // namespace dskernel
