#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace freegad {

// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Paired containers disagree on node count or feature dimension.
class ShapeMismatch : public Error {
public:
    using Error::Error;
};

// A node or anchor index lies outside [0, n).
class IndexOutOfRange : public Error {
public:
    using Error::Error;
};

// Graph construction was requested for zero nodes.
class EmptyGraph : public Error {
public:
    using Error::Error;
};

// Anchor count violates 2K <= n.
class KTooLarge : public Error {
public:
    using Error::Error;
};

// Anchor count below one.
class KZero : public Error {
public:
    using Error::Error;
};

// Distance statistics were requested over an empty set.
class EmptyDistanceSet : public Error {
public:
    using Error::Error;
};

// Ranking metric asked to score a label vector with a class missing.
class DegenerateLabels : public Error {
public:
    using Error::Error;
};

// A configuration value is outside its documented range.
class InvalidParams : public Error {
public:
    using Error::Error;
};

// A required file is absent from a dataset directory.
class MissingFile : public Error {
public:
    using Error::Error;
};

// Operating-system level read or write failure.
class IoError : public Error {
public:
    using Error::Error;
};

// Malformed file content; the message carries file and line context.
class ParseError : public Error {
public:
    using Error::Error;
    ParseError(const std::string& file, std::size_t line, const std::string& msg)
        : Error(file + ":" + std::to_string(line) + ": " + msg) {}
};

} // namespace freegad
