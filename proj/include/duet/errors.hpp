#pragma once

#include <stdexcept>
#include <string>

namespace duet {

// Dimension or channel-count mismatch between tensors, masks and specs.
class ShapeError : public std::runtime_error {
public:
    explicit ShapeError(const std::string& what) : std::runtime_error(what) {}
};

// Fewer than 3 landmark points, or all points collinear.
class GeometryError : public std::runtime_error {
public:
    explicit GeometryError(const std::string& what) : std::runtime_error(what) {}
};

// File or stream failure.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// Classified wire-format faults; every malformed input maps onto one of these.
enum class WireFault {
    bad_magic,
    bad_version,
    truncated,
    length_mismatch,
    dim_overflow,
    bad_field,
};

class ProtocolError : public std::runtime_error {
public:
    ProtocolError(WireFault fault, const std::string& what)
        : std::runtime_error(what), fault_(fault) {}
    WireFault fault() const noexcept { return fault_; }

private:
    WireFault fault_;
};

} // namespace duet
