#pragma once

#include <string>
#include <string_view>

#include "msgstruct/ast.hpp"
#include "msgstruct/diagnostic.hpp"

namespace msgstruct {

/// Diagnostic codes emitted by parse().
namespace parse_code {
inline constexpr std::string_view UnbalancedBracket = "P001";
inline constexpr std::string_view NameWithoutComplex = "P002";
inline constexpr std::string_view EmptyList = "P003";
inline constexpr std::string_view SpecialisationAtRoot = "P004";
inline constexpr std::string_view MalformedAnnotation = "P005";
inline constexpr std::string_view UnknownAcquisition = "P006";
inline constexpr std::string_view UnexpectedToken = "P007";
inline constexpr std::string_view InvalidName = "P008";
}  // namespace parse_code

/// Parses one message structure written in the textual notation:
///
///   message structure   = structure name, '=', initial substructure
///   initial substructure = aggregation | iteration
///   aggregation         = '<' list '>'
///   iteration           = '{' list '}'
///   specialisation      = '[' list { '|' list } ']'
///   list                = substructure { '+' substructure }
///   substructure        = name '=' complex | complex | field
///   field               = name [ '(' annotation ')' ]
///
/// Whitespace (LF or CRLF) is insignificant, `#` starts a line comment, names may
/// hold internal spaces. On failure the result carries at least one Error.
Result<MessageStructure> parse(std::string_view text);

/// Parses the content between the parentheses of a field annotation, e.g.
/// `op=d; domain=money; formula=":Price * :Quantity"`. `origin` locates the first
/// character for diagnostics.
Result<FieldProperties> parse_annotation(std::string_view text, SourceSpan origin = {});

}  // namespace msgstruct
