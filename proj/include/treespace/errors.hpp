#pragma once

#include <stdexcept>
#include <string>

namespace treespace {

// Malformed textual/JSON input.
struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

// An operation was called outside its contract.
struct precondition_error : std::runtime_error {
    explicit precondition_error(const std::string& what) : std::runtime_error(what) {}
};

// An internally produced certificate failed its own recheck.  Never expected.
struct verification_error : std::runtime_error {
    explicit verification_error(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool cond, const std::string& what) {
    if (!cond) throw precondition_error(what);
}

inline void check_certificate(bool cond, const std::string& what) {
    if (!cond) throw verification_error(what);
}

}  // namespace treespace
