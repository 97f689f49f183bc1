#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "msgstruct/diagnostic.hpp"
#include "msgstruct/formula.hpp"

namespace msgstruct {

/// Letters, digits, spaces and hyphens; starts with a letter. Bytes >= 0x80 count as
/// letters so that UTF-8 names are accepted as-is.
[[nodiscard]] bool is_identifier(std::string_view name);

enum class AcquisitionKind { Input, Generation, Derivation };

/// 'i', 'g' or 'd'.
char acquisition_letter(AcquisitionKind k);
std::optional<AcquisitionKind> acquisition_from_letter(char c);

struct AcquisitionOp {
    AcquisitionKind kind = AcquisitionKind::Input;
    /// Only meaningful for Derivation.
    std::optional<Formula> formula;

    friend bool operator==(const AcquisitionOp&, const AcquisitionOp&) = default;
};

enum class BasicDomain { Text, Number, Money, Date, Time };

std::string_view to_string(BasicDomain d);
std::optional<BasicDomain> basic_domain_from(std::string_view s);

struct ReferenceDomain {
    std::string businessObjectType;
    friend bool operator==(const ReferenceDomain&, const ReferenceDomain&) = default;
};

struct EnumeratedDomain {
    std::vector<std::string> literals;
    friend bool operator==(const EnumeratedDomain&, const EnumeratedDomain&) = default;
};

using Domain = std::variant<BasicDomain, ReferenceDomain, EnumeratedDomain>;

/// External spelling: `number`, `ref:Client address`, `enum:theo|prac`.
std::string to_string(const Domain& d);

struct FieldProperties {
    std::optional<AcquisitionOp> acquisition;
    std::optional<Domain> domain;
    std::optional<std::string> example;
    std::optional<std::string> description;
    std::optional<std::string> label;
    std::optional<std::string> memoryLink;
    std::optional<bool> compulsory;
    std::optional<Formula> initialisation;
    std::optional<bool> visible;

    [[nodiscard]] bool empty() const;
    friend bool operator==(const FieldProperties&, const FieldProperties&) = default;
};

struct Field {
    std::string name;
    FieldProperties properties;
    SourceSpan span;

    [[nodiscard]] bool is_reference() const {
        return properties.domain && std::holds_alternative<ReferenceDomain>(*properties.domain);
    }
};

enum class ComplexKind { Aggregation, Iteration, Specialisation };

std::string_view to_string(ComplexKind k);

struct Substructure;
using SubstructureList = std::vector<Substructure>;

/// Aggregation `< >`, iteration `{ }` or specialisation `[ | ]`.
/// Aggregations and iterations hold exactly one list; a specialisation holds one
/// list per variant.
struct Complex {
    ComplexKind kind = ComplexKind::Aggregation;
    std::optional<std::string> name;
    std::vector<SubstructureList> lists;
    SourceSpan span;

    [[nodiscard]] const SubstructureList& children() const { return lists.front(); }
    [[nodiscard]] SubstructureList& children() { return lists.front(); }
};

struct Substructure {
    std::variant<Field, Complex> node;

    Substructure() = default;
    Substructure(Field f) : node(std::move(f)) {}
    Substructure(Complex c) : node(std::move(c)) {}

    [[nodiscard]] const Field* field() const { return std::get_if<Field>(&node); }
    [[nodiscard]] const Complex* complex() const { return std::get_if<Complex>(&node); }
    [[nodiscard]] Field* field() { return std::get_if<Field>(&node); }
    [[nodiscard]] Complex* complex() { return std::get_if<Complex>(&node); }
};

struct MessageStructure {
    std::string name;
    /// Initial substructure; an aggregation or an iteration in well-formed input.
    Complex root;
    SourceSpan span;
};

// Construction helpers, mainly for tests and programmatic use.
Field make_field(std::string name, FieldProperties props = {});
Complex make_aggregation(SubstructureList children, std::optional<std::string> name = std::nullopt);
Complex make_iteration(SubstructureList children, std::optional<std::string> name = std::nullopt);
Complex make_specialisation(std::vector<SubstructureList> variants, std::optional<std::string> name = std::nullopt);

/// Checks the structural invariants (identifier names, non-empty lists, root kind,
/// distinct enum literals, derivation formulas only on derived fields).
/// Returns the violated invariants as messages; empty means well-formed.
std::vector<std::string> validate(const MessageStructure& ms);

}  // namespace msgstruct
