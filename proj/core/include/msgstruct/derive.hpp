#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "msgstruct/ast.hpp"
#include "msgstruct/diagnostic.hpp"

namespace msgstruct {

struct CommunicativeEvent {
    std::string id;
    std::string name;
    int order = 0;
    MessageStructure structure;
};

/// Sorts by (order, id).
void sort_events(std::vector<CommunicativeEvent>& events);

enum class ClassKind { Defined, Referenced, Subclass };
enum class AssociationKind { Composition, Reference, Generalisation };
enum class Multiplicity { One, Many };

std::string_view to_string(ClassKind k);
std::string_view to_string(AssociationKind k);

struct Attribute {
    std::string name;
    /// External domain spelling (`number`, `enum:theo|prac`); empty when unspecified.
    std::string domain;
    std::optional<AcquisitionKind> acquisition;
    std::optional<std::string> formula;
    /// Field sits inside a one-variant specialisation.
    bool optional = false;

    friend bool operator==(const Attribute&, const Attribute&) = default;
};

struct ClassSpec {
    std::string name;
    ClassKind kind = ClassKind::Defined;
    std::vector<Attribute> attributes;
    std::optional<std::string> parent;

    friend bool operator==(const ClassSpec&, const ClassSpec&) = default;
};

struct AssociationSpec {
    std::string from;
    std::string to;
    AssociationKind kind = AssociationKind::Composition;
    /// Absent for generalisations.
    std::optional<Multiplicity> multiplicity;
    /// Field name a reference association was derived from.
    std::optional<std::string> role;

    friend bool operator==(const AssociationSpec&, const AssociationSpec&) = default;
};

/// Classes and associations, in derivation order.
struct ClassModel {
    std::vector<ClassSpec> classes;
    std::vector<AssociationSpec> associations;

    [[nodiscard]] const ClassSpec* find(std::string_view className) const;
    friend bool operator==(const ClassModel&, const ClassModel&) = default;
};

using ClassDiagramView = ClassModel;
using ClassDiagram = ClassModel;

namespace derive_code {
inline constexpr std::string_view AnonymousClass = "D001";
inline constexpr std::string_view DuplicateAttribute = "D002";
inline constexpr std::string_view DomainConflict = "D003";
inline constexpr std::string_view ParentConflict = "D004";
inline constexpr std::string_view DuplicateClass = "D005";
}  // namespace derive_code

/// Class name for a structure/substructure/business-object name: words joined,
/// each capitalised, all-caps words title-cased. "ORDER" -> "Order",
/// "Client address" -> "ClientAddress".
std::string class_name_for(std::string_view name);

/// Derives the class-diagram view of one event from the desugared form of its
/// message structure:
///  - the initial substructure becomes a Defined class named after the structure;
///  - data fields become attributes of the nearest enclosing class;
///  - reference fields become a Referenced class plus a Reference association (one);
///  - iterations become a Defined class plus a Composition (many) from the enclosing
///    class, named after the inner aggregation, else the iteration, else
///    `<Enclosing>_item`;
///  - specialisations with two or more variants make each (named) variant a Subclass
///    of the enclosing class; one-variant specialisations mark their attributes optional.
Result<ClassDiagramView> derive_view(const CommunicativeEvent& event);

/// Left fold of the views in the given order. Defined/Subclass beat Referenced,
/// attribute lists are unioned in first-seen order, reference/composition
/// multiplicities widen to many on conflict.
Result<ClassDiagram> integrate(const std::vector<ClassDiagramView>& views);

/// Copy with classes, attributes and associations sorted, for comparisons up to
/// isomorphism.
ClassModel sorted(const ClassModel& model);

enum class DiagramFormat { Json, PlantUml };

std::string export_diagram(const ClassDiagram& d, DiagramFormat format);

/// Reads the JSON produced by export_diagram.
Result<ClassDiagram> import_diagram_json(std::string_view text);

}  // namespace msgstruct
