#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace padic {

/// Polynomial text did not conform to the grammar; offset is the byte
/// position of the first offending character.
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& what, std::size_t offset)
        : std::runtime_error(what + " (at byte " + std::to_string(offset) + ")"),
          offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

/// A configured budget (node count, depth cap, trial cap) was exceeded.
class resource_limit_error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Two independent computations of the same quantity disagree; this always
/// signals an arithmetic bug, never bad input.
class internal_inconsistency_error : public std::logic_error {
    using std::logic_error::logic_error;
};

/// Not enough data to support an empirical classification.
class insufficient_data_error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Newton lifting was started where the Hensel condition fails, or failed
/// to converge within the iteration cap.
class lift_error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace padic
