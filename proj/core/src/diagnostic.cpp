#include "msgstruct/diagnostic.hpp"

#include <algorithm>

namespace msgstruct {

std::string_view to_string(Severity s) {
    switch (s) {
        case Severity::Info: return "info";
        case Severity::Warning: return "warning";
        case Severity::Error: return "error";
    }
    return "error";
}

bool has_errors(const Diagnostics& diags) {
    return std::any_of(diags.begin(), diags.end(), [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

std::string format_diagnostic(const Diagnostic& d, std::string_view file) {
    std::string out;
    if (!file.empty()) {
        out += file;
        out += ':';
    }
    if (d.span.known()) {
        out += std::to_string(d.span.startLine) + ':' + std::to_string(d.span.startCol) + ':';
    }
    if (!out.empty()) out += ' ';
    out += to_string(d.severity);
    out += '[' + d.code + "]: " + d.message;
    return out;
}

}  // namespace msgstruct
