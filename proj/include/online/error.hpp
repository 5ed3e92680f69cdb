#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace online {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// An exact oracle was asked for an instance larger than its configured cap.
class OracleCapExceeded : public Error {
public:
    OracleCapExceeded(std::string oracle, std::size_t size, std::size_t cap)
        : Error(oracle + ": instance size " + std::to_string(size) +
                " exceeds oracle cap " + std::to_string(cap)),
          size_(size), cap_(cap) {}

    std::size_t size() const noexcept { return size_; }
    std::size_t cap() const noexcept { return cap_; }

private:
    std::size_t size_;
    std::size_t cap_;
};

/// The input broke a promise the algorithm relies on (bipartiteness, width bound).
class PromiseViolation : public Error {
public:
    PromiseViolation(std::string what, std::size_t element)
        : Error(std::move(what)), element_(element) {}

    /// 1-based index of the arriving element that broke the promise.
    std::size_t element() const noexcept { return element_; }

private:
    std::size_t element_;
};

/// An internal invariant failed. Never expected on valid input.
class InvariantViolation : public Error {
public:
    using Error::Error;
};

/// A solver read input beyond its declared lookahead.
class LookaheadViolation : public Error {
public:
    LookaheadViolation(std::size_t requested, std::size_t limit)
        : Error("read of event " + std::to_string(requested) +
                " beyond lookahead limit " + std::to_string(limit)),
          requested_(requested), limit_(limit) {}

    std::size_t requested() const noexcept { return requested_; }
    std::size_t limit() const noexcept { return limit_; }

private:
    std::size_t requested_;
    std::size_t limit_;
};

} // namespace online
