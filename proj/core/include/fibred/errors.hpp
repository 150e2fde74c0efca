#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace fibred {

enum class ErrorCode {
    InvalidInput,
    NotFound,
    SizeExceeded,
    NoBaseLimit,
    NoFibreLimit,
    NotPreserved,
    NoBaseColimit,
    NoLeftAdjoint,
    NoRightAdjoint,
    NoFibreCoequalizer,
    BeckChevalleyFailure,
    NotExtensive,
    NotALattice,
    NotTractable,
    Unsupported,
    SyntaxError,
    UnknownField,
    DanglingReference,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }
    const char* code_name() const noexcept { return error_code_name(code_); }

private:
    ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

struct Violation {
    std::string code;
    std::string message;
    std::vector<std::string> cited;
};

// Violations are collected, never thrown. A report is valid iff it is empty.
class ValidationReport {
public:
    static constexpr std::size_t kDefaultCap = 256;

    bool ok() const noexcept { return violations_.empty(); }
    explicit operator bool() const noexcept { return ok(); }

    void add(std::string code, std::string message, std::vector<std::string> cited = {});
    void merge(const ValidationReport& other, const std::string& context = {});
    void note(std::string line) { notes_.push_back(std::move(line)); }

    const std::vector<Violation>& violations() const noexcept { return violations_; }
    const std::vector<std::string>& notes() const noexcept { return notes_; }
    std::size_t total() const noexcept { return total_; }
    bool truncated() const noexcept { return total_ > violations_.size(); }
    bool has(const std::string& code) const;

    std::string summary() const;

private:
    std::vector<Violation> violations_;
    std::vector<std::string> notes_;
    std::size_t total_ = 0;
};

}  // namespace fibred
