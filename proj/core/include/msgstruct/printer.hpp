#pragma once

#include <string>

#include "msgstruct/ast.hpp"

namespace msgstruct {

enum class PrintStyle {
    /// One line, no layout whitespace: `A=<a+b+{e+f+g}>`.
    Compact,
    /// One field per line with the annotations aligned in OP / DOMAIN / EXAMPLE
    /// columns. Still valid input.
    Tabular,
};

/// An anonymous aggregation that is the only element of an iteration or of a
/// specialisation variant is printed without its brackets. Output ends with LF.
std::string print(const MessageStructure& ms, PrintStyle style = PrintStyle::Compact);

/// `(op=d; domain=money; formula=":Price * :Quantity")`, or empty when no property is set.
std::string print_annotation(const FieldProperties& props);

}  // namespace msgstruct
