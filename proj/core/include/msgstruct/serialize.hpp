#pragma once

#include <string>

#include "msgstruct/ast.hpp"
#include "msgstruct/diagnostic.hpp"

namespace msgstruct {

/// JSON dump of the tree: `{"name":..., "root": node}` with nodes
/// `{"kind":"field","name":...,"properties":{...},"span":{...}}` or
/// `{"kind":"aggregation|iteration|specialisation","name"?:..., "lists":[[...]]}`.
std::string ast_to_json(const MessageStructure& ms);

/// `[{"severity":"error","code":"P002","message":...,"span":{...}}]`
std::string diagnostics_to_json(const Diagnostics& diags);

}  // namespace msgstruct
