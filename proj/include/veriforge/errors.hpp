#pragma once

#include <stdexcept>
#include <string>

namespace veriforge {

// Malformed record in a line-oriented corpus file. line is 1-based.
class parse_error : public std::runtime_error {
public:
    parse_error(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// A corpus invariant was violated (duplicate ids, foreign samples in a stage output).
class integrity_error : public std::runtime_error {
public:
    explicit integrity_error(const std::string& what) : std::runtime_error(what) {}
};

class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

// A remote client (judge, generator, classifier) failed to deliver a response.
class transport_error : public std::runtime_error {
public:
    explicit transport_error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid pipeline configuration; maps to CLI exit code 2.
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace veriforge
