#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gst {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : Error {
    ParseError(std::size_t line, const std::string& reason)
        : Error("parse error at line " + std::to_string(line) + ": " + reason), line(line) {}
    std::size_t line;
};

struct DuplicateVertex : Error {
    explicit DuplicateVertex(const std::string& id)
        : Error("duplicate vertex id '" + id + "'") {}
};

struct DanglingEdge : Error {
    explicit DanglingEdge(const std::string& id)
        : Error("edge references unknown vertex '" + id + "'") {}
};

struct UnknownKeyword : Error {
    explicit UnknownKeyword(const std::string& kw)
        : Error("keyword '" + kw + "' does not occur in the graph") {}
};

struct InvalidParameter : Error {
    InvalidParameter(const std::string& name, const std::string& value)
        : Error("invalid parameter " + name + " = " + value) {}
};

struct IoError : Error {
    explicit IoError(const std::string& what) : Error(what) {}
};

struct EmptyGroup : Error {
    EmptyGroup() : Error("group distance of an empty vertex set") {}
};

struct NonMonotoneRadius : Error {
    NonMonotoneRadius() : Error("radius regressed below an already yielded distance") {}
};

struct DoubleInsert : Error {
    explicit DoubleInsert(std::uint32_t v)
        : Error("vertex " + std::to_string(v) + " inserted twice") {}
};

struct NotInserted : Error {
    explicit NotInserted(std::uint32_t v)
        : Error("vertex " + std::to_string(v) + " not inserted") {}
};

struct VertexAbsent : Error {
    explicit VertexAbsent(std::uint32_t v)
        : Error("vertex " + std::to_string(v) + " absent from truss state") {}
};

struct EdgeAbsent : Error {
    EdgeAbsent(std::uint32_t u, std::uint32_t v)
        : Error("edge (" + std::to_string(u) + "," + std::to_string(v) + ") absent") {}
};

struct InstanceTooLarge : Error {
    InstanceTooLarge(std::size_t n, std::size_t cap)
        : Error("instance has " + std::to_string(n) + " vertices, oracle cap is " +
                std::to_string(cap)) {}
};

struct InvalidCandidate : Error {
    explicit InvalidCandidate(const std::string& why) : Error("invalid candidate: " + why) {}
};

}  // namespace gst
