#pragma once

#include <functional>
#include <string>
#include <vector>

#include "msgstruct/ast.hpp"

namespace msgstruct {

/// Makes every implicit aggregation explicit: an iteration, or a specialisation
/// variant, whose list is not exactly one aggregation gets wrapped in an anonymous
/// aggregation. Names, properties and spans are kept. Idempotent.
MessageStructure desugar(const MessageStructure& ms);

/// desugar() followed by erasure of every complex-substructure name.
/// Field names, field order and nesting are untouched. Idempotent.
MessageStructure canonicalize(const MessageStructure& ms);

/// Same structure name, same field names in the same order, same complex-kind
/// nesting after canonicalization. Field properties and complex names are ignored.
bool equivalent(const MessageStructure& a, const MessageStructure& b);

/// Exact tree comparison: names, kinds, field names and field properties.
/// Spans are ignored.
bool structurally_equal(const MessageStructure& a, const MessageStructure& b);

struct WalkNode {
    const Complex* complex = nullptr;  // exactly one of complex/field is set
    const Field* field = nullptr;
    int depth = 0;
    bool isRoot = false;
};

using WalkVisitor = std::function<void(const WalkNode&)>;

/// Depth-first pre-order traversal of the desugared form of `ms`; every node is
/// visited once, the initial substructure first. Node pointers are valid only
/// during the callback.
void walk(const MessageStructure& ms, const WalkVisitor& visit);

/// Same traversal over `ms` exactly as given (no desugaring).
void walk_as_is(const MessageStructure& ms, const WalkVisitor& visit);

/// In-order field names.
std::vector<std::string> field_names(const MessageStructure& ms);

/// In-order fields.
std::vector<const Field*> fields(const MessageStructure& ms);

}  // namespace msgstruct
