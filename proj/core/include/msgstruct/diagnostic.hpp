#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace msgstruct {

/// 1-based source range. A default-constructed span (all zeros) means "no location",
/// which is what diagnostics about programmatic ASTs and merged diagrams carry.
struct SourceSpan {
    int startLine = 0;
    int startCol = 0;
    int endLine = 0;
    int endCol = 0;

    [[nodiscard]] bool known() const { return startLine > 0; }
    friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

enum class Severity { Info, Warning, Error };

std::string_view to_string(Severity s);

struct Diagnostic {
    Severity severity = Severity::Error;
    std::string code;
    std::string message;
    SourceSpan span;

    friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

using Diagnostics = std::vector<Diagnostic>;

[[nodiscard]] bool has_errors(const Diagnostics& diags);

/// `file:line:col: severity[CODE]: message`, the line/col part omitted when unknown.
[[nodiscard]] std::string format_diagnostic(const Diagnostic& d, std::string_view file = {});

/// Outcome of an operation that either produces a value or reports why it could not.
/// Diagnostics may accompany a value (warnings) as well as its absence.
template <typename T>
class Result {
public:
    Result(T value, Diagnostics diags = {}) : value_(std::move(value)), has_value_(true), diags_(std::move(diags)) {}
    static Result failure(Diagnostics diags) { return Result(std::move(diags)); }

    [[nodiscard]] bool has_value() const { return has_value_; }
    explicit operator bool() const { return has_value_; }

    [[nodiscard]] const T& value() const& { return value_; }
    [[nodiscard]] T&& value() && { return std::move(value_); }
    const T& operator*() const& { return value_; }
    const T* operator->() const { return &value_; }

    [[nodiscard]] const Diagnostics& diagnostics() const { return diags_; }

private:
    explicit Result(Diagnostics diags) : diags_(std::move(diags)) {}

    T value_{};
    bool has_value_ = false;
    Diagnostics diags_;
};

}  // namespace msgstruct
