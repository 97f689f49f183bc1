#include "msgstruct/serialize.hpp"

#include <nlohmann/json.hpp>


namespace msgstruct {

using nlohmann::ordered_json;

namespace {

ordered_json span_json(const SourceSpan& s) {
    return {{"startLine", s.startLine}, {"startCol", s.startCol}, {"endLine", s.endLine}, {"endCol", s.endCol}};
}

ordered_json properties_json(const FieldProperties& p) {
    ordered_json j = ordered_json::object();
    if (p.acquisition) {
        j["op"] = std::string(1, acquisition_letter(p.acquisition->kind));
        if (p.acquisition->formula) j["formula"] = to_string(*p.acquisition->formula);
    }
    if (p.domain) j["domain"] = to_string(*p.domain);
    if (p.example) j["example"] = *p.example;
    if (p.description) j["desc"] = *p.description;
    if (p.label) j["label"] = *p.label;
    if (p.memoryLink) j["link"] = *p.memoryLink;
    if (p.compulsory) j["required"] = *p.compulsory;
    if (p.initialisation) j["init"] = to_string(*p.initialisation);
    if (p.visible) j["visible"] = *p.visible;
    return j;
}

ordered_json node_json(const Substructure& s);

ordered_json complex_json(const Complex& c) {
    ordered_json j;
    j["kind"] = to_string(c.kind);
    if (c.name) j["name"] = *c.name;
    ordered_json lists = ordered_json::array();
    for (const auto& list : c.lists) {
        ordered_json items = ordered_json::array();
        for (const auto& s : list) items.push_back(node_json(s));
        lists.push_back(std::move(items));
    }
    j["lists"] = std::move(lists);
    j["span"] = span_json(c.span);
    return j;
}

ordered_json node_json(const Substructure& s) {
    if (const Field* f = s.field()) {
        ordered_json j;
        j["kind"] = "field";
        j["name"] = f->name;
        j["properties"] = properties_json(f->properties);
        j["span"] = span_json(f->span);
        return j;
    }
    return complex_json(*s.complex());
}

}  // namespace

std::string ast_to_json(const MessageStructure& ms) {
    ordered_json j;
    j["name"] = ms.name;
    j["root"] = complex_json(ms.root);
    return j.dump(2) + '\n';
}

std::string diagnostics_to_json(const Diagnostics& diags) {
    ordered_json arr = ordered_json::array();
    for (const auto& d : diags) {
        arr.push_back({{"severity", to_string(d.severity)},
                       {"code", d.code},
                       {"message", d.message},
                       {"span", span_json(d.span)}});
    }
    return arr.dump(2) + '\n';
}

}  // namespace msgstruct
