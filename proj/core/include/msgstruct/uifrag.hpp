#pragma once

#include <optional>
#include <string>
#include <vector>

#include "msgstruct/ast.hpp"

namespace msgstruct {

struct FragmentField {
    Field field;
    /// Name of the specialisation variant the field came from, if any.
    std::optional<std::string> variant;
};

/// Discriminator column added for a specialisation folded into a fragment.
struct Discriminator {
    std::string name;
    std::vector<std::string> variants;
};

/// One first-normal-form piece of a message structure: only fields, no nesting.
struct Fragment {
    std::string id;
    int depth = 0;
    std::optional<std::string> parentKey;
    std::vector<FragmentField> fields;
    std::vector<Discriminator> discriminators;
};

enum class AbstractKind { Registry, SetOfRegistries };

std::string_view to_string(AbstractKind k);

struct AbstractInterfaceStructure {
    std::string fragmentId;
    AbstractKind kind = AbstractKind::Registry;
};

/// One fragment for the initial substructure and one per iteration, in pre-order.
/// Ids are `<structure>/<iteration path>`; anonymous iterations use `#<n>`, their
/// 1-based position among the iterations of the enclosing fragment.
std::vector<Fragment> fragment_1nf(const MessageStructure& ms);

/// depth 0 -> Registry, deeper -> SetOfRegistries; order preserved.
std::vector<AbstractInterfaceStructure> assign_abstract(const std::vector<Fragment>& fragments);

/// `{"fragments":[{id,depth,parentKey?,fields:[...]}], "abstract":[{fragmentId,kind}]}`.
std::string fragments_to_json(const std::vector<Fragment>& fragments,
                              const std::vector<AbstractInterfaceStructure>& abstract);

}  // namespace msgstruct
