#include "msgstruct/ast.hpp"

#include <cctype>
#include <set>

namespace msgstruct {

bool is_identifier(std::string_view name) {
    if (name.empty()) return false;
    auto is_letter = [](unsigned char c) { return std::isalpha(c) || c >= 0x80; };
    if (!is_letter(static_cast<unsigned char>(name.front()))) return false;
    if (name.back() == ' ') return false;
    for (char ch : name) {
        auto c = static_cast<unsigned char>(ch);
        if (!(is_letter(c) || std::isdigit(c) || c == ' ' || c == '-')) return false;
    }
    return true;
}

char acquisition_letter(AcquisitionKind k) {
    switch (k) {
        case AcquisitionKind::Input: return 'i';
        case AcquisitionKind::Generation: return 'g';
        case AcquisitionKind::Derivation: return 'd';
    }
    return 'i';
}

std::optional<AcquisitionKind> acquisition_from_letter(char c) {
    switch (c) {
        case 'i': return AcquisitionKind::Input;
        case 'g': return AcquisitionKind::Generation;
        case 'd': return AcquisitionKind::Derivation;
        default: return std::nullopt;
    }
}

std::string_view to_string(BasicDomain d) {
    switch (d) {
        case BasicDomain::Text: return "text";
        case BasicDomain::Number: return "number";
        case BasicDomain::Money: return "money";
        case BasicDomain::Date: return "date";
        case BasicDomain::Time: return "time";
    }
    return "text";
}

std::optional<BasicDomain> basic_domain_from(std::string_view s) {
    for (auto d : {BasicDomain::Text, BasicDomain::Number, BasicDomain::Money, BasicDomain::Date, BasicDomain::Time}) {
        if (to_string(d) == s) return d;
    }
    return std::nullopt;
}

std::string to_string(const Domain& d) {
    if (const auto* basic = std::get_if<BasicDomain>(&d)) return std::string(to_string(*basic));
    if (const auto* ref = std::get_if<ReferenceDomain>(&d)) return "ref:" + ref->businessObjectType;
    const auto& e = std::get<EnumeratedDomain>(d);
    std::string out = "enum:";
    for (std::size_t i = 0; i < e.literals.size(); ++i) {
        if (i) out += '|';
        out += e.literals[i];
    }
    return out;
}

bool FieldProperties::empty() const {
    return !acquisition && !domain && !example && !description && !label && !memoryLink && !compulsory &&
           !initialisation && !visible;
}

std::string_view to_string(ComplexKind k) {
    switch (k) {
        case ComplexKind::Aggregation: return "aggregation";
        case ComplexKind::Iteration: return "iteration";
        case ComplexKind::Specialisation: return "specialisation";
    }
    return "aggregation";
}

Field make_field(std::string name, FieldProperties props) { return Field{std::move(name), std::move(props), {}}; }

Complex make_aggregation(SubstructureList children, std::optional<std::string> name) {
    return Complex{ComplexKind::Aggregation, std::move(name), {std::move(children)}, {}};
}

Complex make_iteration(SubstructureList children, std::optional<std::string> name) {
    return Complex{ComplexKind::Iteration, std::move(name), {std::move(children)}, {}};
}

Complex make_specialisation(std::vector<SubstructureList> variants, std::optional<std::string> name) {
    return Complex{ComplexKind::Specialisation, std::move(name), std::move(variants), {}};
}

namespace {

bool is_memory_link(std::string_view s) {
    auto dot = s.find('.');
    if (dot == std::string_view::npos) return false;
    return is_identifier(s.substr(0, dot)) && is_identifier(s.substr(dot + 1));
}

void validate_field(const Field& f, std::vector<std::string>& out) {
    if (!is_identifier(f.name)) out.push_back("invalid field name '" + f.name + "'");
    const auto& p = f.properties;
    if (p.acquisition && p.acquisition->formula && p.acquisition->kind != AcquisitionKind::Derivation) {
        out.push_back("field '" + f.name + "' has a derivation formula but is not derived");
    }
    if (p.domain) {
        if (const auto* e = std::get_if<EnumeratedDomain>(&*p.domain)) {
            if (e->literals.empty()) out.push_back("field '" + f.name + "' has an empty enumerated domain");
            std::set<std::string> seen;
            for (const auto& lit : e->literals) {
                if (!is_identifier(lit)) out.push_back("invalid enumeration literal '" + lit + "'");
                if (!seen.insert(lit).second) out.push_back("duplicate enumeration literal '" + lit + "'");
            }
        } else if (const auto* r = std::get_if<ReferenceDomain>(&*p.domain)) {
            if (!is_identifier(r->businessObjectType)) {
                out.push_back("invalid business object type '" + r->businessObjectType + "'");
            }
        }
    }
    if (p.memoryLink && !is_memory_link(*p.memoryLink)) {
        out.push_back("field '" + f.name + "' has malformed memory link '" + *p.memoryLink + "'");
    }
}

void validate_complex(const Complex& c, std::vector<std::string>& out) {
    if (c.name && !is_identifier(*c.name)) out.push_back("invalid substructure name '" + *c.name + "'");
    if (c.lists.empty()) {
        out.push_back(std::string("empty ") + std::string(to_string(c.kind)));
        return;
    }
    if (c.kind != ComplexKind::Specialisation && c.lists.size() != 1) {
        out.push_back(std::string(to_string(c.kind)) + " must hold exactly one substructure list");
    }
    for (const auto& list : c.lists) {
        if (list.empty()) out.push_back(std::string("empty substructure list in ") + std::string(to_string(c.kind)));
        for (const auto& s : list) {
            if (const auto* f = s.field()) {
                validate_field(*f, out);
            } else {
                validate_complex(*s.complex(), out);
            }
        }
    }
}

}  // namespace

std::vector<std::string> validate(const MessageStructure& ms) {
    std::vector<std::string> out;
    if (!is_identifier(ms.name)) out.push_back("invalid structure name '" + ms.name + "'");
    if (ms.root.kind == ComplexKind::Specialisation) {
        out.push_back("initial substructure must be an aggregation or an iteration");
    }
    validate_complex(ms.root, out);
    return out;
}

}  // namespace msgstruct
