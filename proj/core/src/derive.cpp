#include "msgstruct/derive.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <tuple>

#include <nlohmann/json.hpp>

#include "msgstruct/canonical.hpp"

namespace msgstruct {

using ordered_json = nlohmann::ordered_json;

void sort_events(std::vector<CommunicativeEvent>& events) {
    std::stable_sort(events.begin(), events.end(), [](const CommunicativeEvent& a, const CommunicativeEvent& b) {
        return std::tie(a.order, a.id) < std::tie(b.order, b.id);
    });
}

std::string_view to_string(ClassKind k) {
    switch (k) {
        case ClassKind::Defined: return "defined";
        case ClassKind::Referenced: return "referenced";
        case ClassKind::Subclass: return "subclass";
    }
    return "defined";
}

std::string_view to_string(AssociationKind k) {
    switch (k) {
        case AssociationKind::Composition: return "composition";
        case AssociationKind::Reference: return "reference";
        case AssociationKind::Generalisation: return "generalisation";
    }
    return "composition";
}

const ClassSpec* ClassModel::find(std::string_view className) const {
    auto it = std::find_if(classes.begin(), classes.end(), [&](const ClassSpec& c) { return c.name == className; });
    return it == classes.end() ? nullptr : &*it;
}

std::string class_name_for(std::string_view name) {
    std::string out;
    std::string word;
    auto flush = [&] {
        if (word.empty()) return;
        bool allCaps = std::none_of(word.begin(), word.end(), [](unsigned char c) { return std::islower(c); });
        for (std::size_t i = 0; i < word.size(); ++i) {
            auto c = static_cast<unsigned char>(word[i]);
            if (i == 0) {
                out += static_cast<char>(std::toupper(c));
            } else {
                out += allCaps ? static_cast<char>(std::tolower(c)) : word[i];
            }
        }
        word.clear();
    };
    for (char c : name) {
        if (c == ' ' || c == '-') {
            flush();
        } else {
            word += c;
        }
    }
    flush();
    return out;
}

namespace {

class ViewBuilder {
public:
    Result<ClassDiagramView> run(const CommunicativeEvent& event) {
        MessageStructure ms = desugar(event.structure);
        std::string root = class_name_for(ms.name);
        add_class(root, ClassKind::Defined, std::nullopt, ms.span);
        if (ms.root.kind == ComplexKind::Iteration) {
            iteration(ms.root, root);
        } else {
            list(ms.root.children(), root, false);
        }
        if (has_errors(diags_)) return Result<ClassDiagramView>::failure(std::move(diags_));
        return {std::move(view_), std::move(diags_)};
    }

private:
    ClassSpec* find(const std::string& name) {
        auto it = index_.find(name);
        return it == index_.end() ? nullptr : &view_.classes[it->second];
    }

    void error(std::string_view code, std::string message, SourceSpan span) {
        diags_.push_back(Diagnostic{Severity::Error, std::string(code), std::move(message), span});
    }

    void add_class(const std::string& name, ClassKind kind, std::optional<std::string> parent, SourceSpan span) {
        if (ClassSpec* existing = find(name)) {
            if (existing->kind == ClassKind::Referenced && kind != ClassKind::Referenced) {
                existing->kind = kind;
                existing->parent = std::move(parent);
                return;
            }
            if (kind == ClassKind::Referenced) return;
            error(derive_code::DuplicateClass, "class '" + name + "' is derived twice from the same message structure",
                  span);
            return;
        }
        index_[name] = view_.classes.size();
        view_.classes.push_back(ClassSpec{name, kind, {}, std::move(parent)});
    }

    void field(const Field& f, const std::string& owner, bool optional) {
        const auto& p = f.properties;
        if (f.is_reference()) {
            std::string target = class_name_for(std::get<ReferenceDomain>(*p.domain).businessObjectType);
            add_class(target, ClassKind::Referenced, std::nullopt, f.span);
            view_.associations.push_back(
                AssociationSpec{owner, target, AssociationKind::Reference, Multiplicity::One, f.name});
            return;
        }
        Attribute a;
        a.name = f.name;
        if (p.domain) a.domain = to_string(*p.domain);
        if (p.acquisition) {
            a.acquisition = p.acquisition->kind;
            if (p.acquisition->formula) a.formula = to_string(*p.acquisition->formula);
        }
        a.optional = optional;
        ClassSpec* cls = find(owner);
        auto& attrs = cls->attributes;
        if (std::any_of(attrs.begin(), attrs.end(), [&](const Attribute& x) { return x.name == a.name; })) {
            error(derive_code::DuplicateAttribute, "class '" + owner + "' receives attribute '" + f.name + "' twice",
                  f.span);
            return;
        }
        attrs.push_back(std::move(a));
    }

    static const Complex* lone_aggregation(const SubstructureList& l) {
        if (l.size() != 1) return nullptr;
        const Complex* c = l.front().complex();
        return c && c->kind == ComplexKind::Aggregation ? c : nullptr;
    }

    void iteration(const Complex& it, const std::string& owner) {
        const Complex* inner = lone_aggregation(it.children());
        std::string name;
        if (inner && inner->name) {
            name = class_name_for(*inner->name);
        } else if (it.name) {
            name = class_name_for(*it.name);
        } else {
            name = owner + "_item";
        }
        add_class(name, ClassKind::Defined, std::nullopt, it.span);
        view_.associations.push_back(AssociationSpec{owner, name, AssociationKind::Composition, Multiplicity::Many, {}});
        list(inner ? inner->children() : it.children(), name, false);
    }

    void specialisation(const Complex& sp, const std::string& owner) {
        if (sp.lists.size() == 1) {
            list(sp.lists.front(), owner, true);
            return;
        }
        for (const auto& variant : sp.lists) {
            const Complex* inner = lone_aggregation(variant);
            if (!inner || !inner->name) {
                error(derive_code::AnonymousClass,
                      "specialisation variant has no name to derive a subclass from; name it (e.g. VARIANT = <...>)",
                      inner ? inner->span : sp.span);
                continue;
            }
            std::string name = class_name_for(*inner->name);
            add_class(name, ClassKind::Subclass, owner, inner->span);
            view_.associations.push_back(AssociationSpec{name, owner, AssociationKind::Generalisation, {}, {}});
            list(inner->children(), name, false);
        }
    }

    void list(const SubstructureList& items, const std::string& owner, bool optional) {
        for (const auto& s : items) {
            if (const Field* f = s.field()) {
                field(*f, owner, optional);
                continue;
            }
            const Complex& c = *s.complex();
            switch (c.kind) {
                case ComplexKind::Aggregation: list(c.children(), owner, optional); break;
                case ComplexKind::Iteration: iteration(c, owner); break;
                case ComplexKind::Specialisation: specialisation(c, owner); break;
            }
        }
    }

    ClassDiagramView view_;
    std::map<std::string, std::size_t> index_;
    Diagnostics diags_;
};

using AssociationKey = std::tuple<std::string, std::string, AssociationKind, std::string>;

AssociationKey key_of(const AssociationSpec& a) { return {a.from, a.to, a.kind, a.role.value_or("")}; }

std::string acquisition_word(AcquisitionKind k) {
    switch (k) {
        case AcquisitionKind::Input: return "input";
        case AcquisitionKind::Generation: return "generated";
        case AcquisitionKind::Derivation: return "derived";
    }
    return "input";
}

std::optional<AcquisitionKind> acquisition_from_word(std::string_view s) {
    if (s == "input") return AcquisitionKind::Input;
    if (s == "generated") return AcquisitionKind::Generation;
    if (s == "derived") return AcquisitionKind::Derivation;
    return std::nullopt;
}

std::string multiplicity_label(Multiplicity m) { return m == Multiplicity::One ? "1" : "*"; }

std::string export_json(const ClassDiagram& d) {
    ordered_json classes = ordered_json::array();
    for (const auto& c : d.classes) {
        ordered_json jc;
        jc["name"] = c.name;
        jc["kind"] = to_string(c.kind);
        if (c.parent) jc["parent"] = *c.parent;
        ordered_json attrs = ordered_json::array();
        for (const auto& a : c.attributes) {
            ordered_json ja;
            ja["name"] = a.name;
            ja["domain"] = a.domain.empty() ? ordered_json(nullptr) : ordered_json(a.domain);
            ja["acquisition"] = a.acquisition ? ordered_json(acquisition_word(*a.acquisition)) : ordered_json(nullptr);
            if (a.formula) ja["formula"] = *a.formula;
            if (a.optional) ja["optional"] = true;
            attrs.push_back(std::move(ja));
        }
        jc["attributes"] = std::move(attrs);
        classes.push_back(std::move(jc));
    }
    ordered_json assocs = ordered_json::array();
    for (const auto& a : d.associations) {
        ordered_json ja;
        ja["from"] = a.from;
        ja["to"] = a.to;
        ja["kind"] = to_string(a.kind);
        if (a.multiplicity) ja["multiplicity"] = multiplicity_label(*a.multiplicity);
        if (a.role) ja["role"] = *a.role;
        assocs.push_back(std::move(ja));
    }
    ordered_json root;
    root["classes"] = std::move(classes);
    root["associations"] = std::move(assocs);
    return root.dump(2) + '\n';
}

std::string export_plantuml(const ClassDiagram& d) {
    std::string out = "@startuml\n";
    for (const auto& c : d.classes) {
        out += "class " + c.name;
        if (c.kind == ClassKind::Referenced) out += " <<referenced>>";
        if (c.attributes.empty()) {
            out += '\n';
            continue;
        }
        out += " {\n";
        for (const auto& a : c.attributes) {
            out += "  " + a.name;
            if (!a.domain.empty()) out += " : " + a.domain;
            if (a.optional) out += " [0..1]";
            if (a.acquisition == AcquisitionKind::Generation) out += " <<generated>>";
            if (a.acquisition == AcquisitionKind::Derivation) {
                out += " <<derived>>";
                if (a.formula) out += " = " + *a.formula;
            }
            out += '\n';
        }
        out += "}\n";
    }
    for (const auto& a : d.associations) {
        switch (a.kind) {
            case AssociationKind::Composition:
                out += a.from + " \"1\" *-- \"" + multiplicity_label(a.multiplicity.value_or(Multiplicity::Many)) +
                       "\" " + a.to + '\n';
                break;
            case AssociationKind::Reference:
                out += a.from + " --> \"" + multiplicity_label(a.multiplicity.value_or(Multiplicity::One)) + "\" " +
                       a.to;
                if (a.role) out += " : " + *a.role;
                out += '\n';
                break;
            case AssociationKind::Generalisation: out += a.to + " <|-- " + a.from + '\n'; break;
        }
    }
    out += "@enduml\n";
    return out;
}

}  // namespace

Result<ClassDiagramView> derive_view(const CommunicativeEvent& event) { return ViewBuilder{}.run(event); }

Result<ClassDiagram> integrate(const std::vector<ClassDiagramView>& views) {
    ClassDiagram out;
    Diagnostics diags;
    std::map<std::string, std::size_t> classIndex;
    std::map<AssociationKey, std::size_t> assocIndex;

    for (const auto& view : views) {
        for (const auto& incoming : view.classes) {
            auto found = classIndex.find(incoming.name);
            if (found == classIndex.end()) {
                classIndex[incoming.name] = out.classes.size();
                out.classes.push_back(incoming);
                continue;
            }
            ClassSpec& merged = out.classes[found->second];
            if (incoming.kind == ClassKind::Subclass && merged.kind == ClassKind::Subclass &&
                merged.parent != incoming.parent) {
                diags.push_back(Diagnostic{Severity::Error, std::string(derive_code::ParentConflict),
                                           "class '" + merged.name + "' is a subclass of both '" +
                                               merged.parent.value_or("") + "' and '" + incoming.parent.value_or("") +
                                               "'",
                                           {}});
            } else if (incoming.kind == ClassKind::Subclass ||
                       (incoming.kind == ClassKind::Defined && merged.kind == ClassKind::Referenced)) {
                merged.kind = incoming.kind;
                merged.parent = incoming.parent;
            }
            for (const auto& attr : incoming.attributes) {
                auto it = std::find_if(merged.attributes.begin(), merged.attributes.end(),
                                       [&](const Attribute& a) { return a.name == attr.name; });
                if (it == merged.attributes.end()) {
                    merged.attributes.push_back(attr);
                    continue;
                }
                if (!it->domain.empty() && !attr.domain.empty() && it->domain != attr.domain) {
                    diags.push_back(Diagnostic{Severity::Error, std::string(derive_code::DomainConflict),
                                               "attribute '" + merged.name + "." + attr.name + "' has domain '" +
                                                   it->domain + "' in one view and '" + attr.domain + "' in another",
                                               {}});
                    continue;
                }
                if (it->domain.empty()) it->domain = attr.domain;
                if (!it->acquisition) it->acquisition = attr.acquisition;
                if (!it->formula) it->formula = attr.formula;
                it->optional = it->optional && attr.optional;
            }
        }
        for (const auto& a : view.associations) {
            auto key = key_of(a);
            auto found = assocIndex.find(key);
            if (found == assocIndex.end()) {
                assocIndex[key] = out.associations.size();
                out.associations.push_back(a);
                continue;
            }
            auto& merged = out.associations[found->second];
            if (merged.multiplicity && a.multiplicity && *a.multiplicity == Multiplicity::Many) {
                merged.multiplicity = Multiplicity::Many;
            }
        }
    }
    if (has_errors(diags)) return Result<ClassDiagram>::failure(std::move(diags));
    return {std::move(out), std::move(diags)};
}

ClassModel sorted(const ClassModel& model) {
    ClassModel out = model;
    for (auto& c : out.classes) {
        std::sort(c.attributes.begin(), c.attributes.end(),
                  [](const Attribute& a, const Attribute& b) { return a.name < b.name; });
    }
    std::sort(out.classes.begin(), out.classes.end(),
              [](const ClassSpec& a, const ClassSpec& b) { return a.name < b.name; });
    std::sort(out.associations.begin(), out.associations.end(),
              [](const AssociationSpec& a, const AssociationSpec& b) { return key_of(a) < key_of(b); });
    return out;
}

std::string export_diagram(const ClassDiagram& d, DiagramFormat format) {
    return format == DiagramFormat::Json ? export_json(d) : export_plantuml(d);
}

Result<ClassDiagram> import_diagram_json(std::string_view text) {
    auto fail = [](std::string msg) {
        return Result<ClassDiagram>::failure({Diagnostic{Severity::Error, "D100", std::move(msg), {}}});
    };
    auto j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object()) return fail("diagram is not a JSON object");
    if (!j.contains("classes") || !j["classes"].is_array() || !j.contains("associations") ||
        !j["associations"].is_array()) {
        return fail("diagram needs 'classes' and 'associations' arrays");
    }
    ClassDiagram d;
    try {
        for (const auto& jc : j["classes"]) {
            ClassSpec c;
            c.name = jc.at("name").get<std::string>();
            auto kind = jc.at("kind").get<std::string>();
            if (kind == "defined") c.kind = ClassKind::Defined;
            else if (kind == "referenced") c.kind = ClassKind::Referenced;
            else if (kind == "subclass") c.kind = ClassKind::Subclass;
            else return fail("unknown class kind '" + kind + "'");
            if (jc.contains("parent")) c.parent = jc["parent"].get<std::string>();
            for (const auto& ja : jc.at("attributes")) {
                Attribute a;
                a.name = ja.at("name").get<std::string>();
                if (ja.contains("domain") && !ja["domain"].is_null()) a.domain = ja["domain"].get<std::string>();
                if (ja.contains("acquisition") && !ja["acquisition"].is_null()) {
                    a.acquisition = acquisition_from_word(ja["acquisition"].get<std::string>());
                    if (!a.acquisition) return fail("unknown acquisition '" + ja["acquisition"].get<std::string>() + "'");
                }
                if (ja.contains("formula")) a.formula = ja["formula"].get<std::string>();
                a.optional = ja.value("optional", false);
                c.attributes.push_back(std::move(a));
            }
            d.classes.push_back(std::move(c));
        }
        for (const auto& ja : j["associations"]) {
            AssociationSpec a;
            a.from = ja.at("from").get<std::string>();
            a.to = ja.at("to").get<std::string>();
            auto kind = ja.at("kind").get<std::string>();
            if (kind == "composition") a.kind = AssociationKind::Composition;
            else if (kind == "reference") a.kind = AssociationKind::Reference;
            else if (kind == "generalisation") a.kind = AssociationKind::Generalisation;
            else return fail("unknown association kind '" + kind + "'");
            if (ja.contains("multiplicity")) {
                auto m = ja["multiplicity"].get<std::string>();
                if (m != "1" && m != "*") return fail("multiplicity must be \"1\" or \"*\"");
                a.multiplicity = m == "1" ? Multiplicity::One : Multiplicity::Many;
            }
            if (ja.contains("role")) a.role = ja["role"].get<std::string>();
            d.associations.push_back(std::move(a));
        }
    } catch (const nlohmann::json::exception& e) {
        return fail(std::string("malformed diagram: ") + e.what());
    }
    return d;
}

}  // namespace msgstruct
