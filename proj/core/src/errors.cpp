#include "fibred/errors.hpp"

#include <sstream>

namespace fibred {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidInput: return "InvalidInput";
        case ErrorCode::NotFound: return "NotFound";
        case ErrorCode::SizeExceeded: return "SizeExceeded";
        case ErrorCode::NoBaseLimit: return "NoBaseLimit";
        case ErrorCode::NoFibreLimit: return "NoFibreLimit";
        case ErrorCode::NotPreserved: return "NotPreserved";
        case ErrorCode::NoBaseColimit: return "NoBaseColimit";
        case ErrorCode::NoLeftAdjoint: return "NoLeftAdjoint";
        case ErrorCode::NoRightAdjoint: return "NoRightAdjoint";
        case ErrorCode::NoFibreCoequalizer: return "NoFibreCoequalizer";
        case ErrorCode::BeckChevalleyFailure: return "BeckChevalleyFailure";
        case ErrorCode::NotExtensive: return "NotExtensive";
        case ErrorCode::NotALattice: return "NotALattice";
        case ErrorCode::NotTractable: return "NotTractable";
        case ErrorCode::Unsupported: return "Unsupported";
        case ErrorCode::SyntaxError: return "SyntaxError";
        case ErrorCode::UnknownField: return "UnknownField";
        case ErrorCode::DanglingReference: return "DanglingReference";
    }
    return "Unknown";
}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

void ValidationReport::add(std::string code, std::string message, std::vector<std::string> cited) {
    ++total_;
    if (violations_.size() < kDefaultCap) {
        violations_.push_back({std::move(code), std::move(message), std::move(cited)});
    }
}

void ValidationReport::merge(const ValidationReport& other, const std::string& context) {
    for (const auto& v : other.violations_) {
        add(v.code, context.empty() ? v.message : context + ": " + v.message, v.cited);
    }
    total_ += other.total_ - other.violations_.size();
    for (const auto& n : other.notes_) notes_.push_back(n);
}

bool ValidationReport::has(const std::string& code) const {
    for (const auto& v : violations_) {
        if (v.code == code) return true;
    }
    return false;
}

std::string ValidationReport::summary() const {
    std::ostringstream out;
    if (ok()) {
        out << "valid";
        return out.str();
    }
    out << total_ << " violation(s)";
    for (const auto& v : violations_) {
        out << "\n  [" << v.code << "] " << v.message;
        if (!v.cited.empty()) {
            out << " {";
            for (std::size_t i = 0; i < v.cited.size(); ++i) out << (i ? ", " : "") << v.cited[i];
            out << "}";
        }
    }
    if (truncated()) out << "\n  ... " << (total_ - violations_.size()) << " more";
    return out.str();
}

}  // namespace fibred
