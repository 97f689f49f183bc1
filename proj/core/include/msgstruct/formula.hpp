#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "msgstruct/diagnostic.hpp"

namespace msgstruct {

/// Expression attached to a derived field or used as an initialisation value,
/// e.g. `:Price * :Quantity` or `today()`.
struct Formula {
    enum class Kind { FieldRef, Number, String, Binary, Call, Negate };

    Kind kind = Kind::Number;
    /// Field name (FieldRef), literal text (Number, String), operator character
    /// (Binary) or function name (Call). Unused for Negate.
    std::string text;
    std::vector<Formula> operands;

    static Formula field_ref(std::string name) { return {Kind::FieldRef, std::move(name), {}}; }
    static Formula number(std::string digits) { return {Kind::Number, std::move(digits), {}}; }
    static Formula string(std::string value) { return {Kind::String, std::move(value), {}}; }
    static Formula binary(char op, Formula lhs, Formula rhs);
    static Formula call(std::string fn, std::vector<Formula> args) { return {Kind::Call, std::move(fn), std::move(args)}; }
    static Formula negate(Formula operand);

    friend bool operator==(const Formula&, const Formula&) = default;
};

/// Parses the formula sub-language:
///
///   expr   = term { ('+' | '-') term }
///   term   = factor { ('*' | '/') factor }
///   factor = number | 'string' | ':' field-name | ident '(' [expr {',' expr}] ')'
///          | '(' expr ')' | '-' factor
///
/// Field names may contain internal spaces; a hyphen belongs to the name only
/// when it sits between two name characters.
Result<Formula> parse_formula(std::string_view text);

/// Normalized rendering: single spaces around binary operators, minimal parentheses,
/// single-quoted string literals. parse_formula(to_string(f)) == f.
std::string to_string(const Formula& f);

/// Field names referenced by the formula, in left-to-right order, duplicates kept.
std::vector<std::string> field_refs(const Formula& f);

}  // namespace msgstruct
