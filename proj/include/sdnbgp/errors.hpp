#ifndef SDNBGP_ERRORS_HPP
#define SDNBGP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sdnbgp {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Argument outside the documented domain of an operation.
struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

// Malformed input file (CSV, AS-relationship dump, config).
struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

// Same AS pair listed twice with different relationship labels.
struct ConflictError : Error {
    explicit ConflictError(const std::string& msg) : Error(msg) {}
};

struct EmptyObservations : Error {
    EmptyObservations() : Error("empty observation list") {}
};

struct EmptySample : Error {
    EmptySample() : Error("empty path sample") {}
};

// omega_bgp == 0: the betweenness odds ratio is undefined.
struct DegenerateProfile : Error {
    explicit DegenerateProfile(const std::string& msg) : Error(msg) {}
};

// A degree function returned 0 at a step that requires progress.
struct DegenerateDegree : Error {
    explicit DegenerateDegree(const std::string& msg) : Error(msg) {}
};

struct MissingProfile : Error {
    MissingProfile() : Error("top-betweenness selection requires a centrality profile") {}
};

struct UnlabeledGraph : Error {
    UnlabeledGraph() : Error("operation requires a relationship-labeled graph") {}
};

struct DisconnectedSource : Error {
    explicit DisconnectedSource(const std::string& msg) : Error(msg) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

} // namespace sdnbgp

#endif
