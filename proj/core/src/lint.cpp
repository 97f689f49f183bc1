#include "msgstruct/lint.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include <nlohmann/json.hpp>

#include "msgstruct/canonical.hpp"

namespace msgstruct {

std::string_view to_string(Phase p) {
    switch (p) {
        case Phase::Analysis: return "analysis";
        case Phase::DesignMemory: return "design-memory";
        case Phase::DesignInterface: return "design-interface";
    }
    return "analysis";
}

std::optional<Phase> phase_from(std::string_view s) {
    for (auto p : kAllPhases) {
        if (to_string(p) == s) return p;
    }
    return std::nullopt;
}

std::string_view to_string(ApplicabilityLevel l) {
    switch (l) {
        case ApplicabilityLevel::Discouraged: return "--";
        case ApplicabilityLevel::NotRecommended: return "-";
        case ApplicabilityLevel::Recommended: return "+";
        case ApplicabilityLevel::HighlyRecommended: return "++";
    }
    return "++";
}

std::optional<ApplicabilityLevel> level_from(std::string_view s) {
    for (auto l : {ApplicabilityLevel::Discouraged, ApplicabilityLevel::NotRecommended, ApplicabilityLevel::Recommended,
                   ApplicabilityLevel::HighlyRecommended}) {
        if (to_string(l) == s) return l;
    }
    return std::nullopt;
}

std::string_view to_string(PropertyKind k) {
    switch (k) {
        case PropertyKind::Name: return "name";
        case PropertyKind::OpInput: return "op-i";
        case PropertyKind::OpGeneration: return "op-g";
        case PropertyKind::OpDerivation: return "op-d";
        case PropertyKind::Domain: return "domain";
        case PropertyKind::Example: return "example";
        case PropertyKind::Description: return "description";
        case PropertyKind::Label: return "label";
        case PropertyKind::MemoryLink: return "memoryLink";
        case PropertyKind::Compulsoriness: return "compulsoriness";
        case PropertyKind::Initialisation: return "initialisation";
        case PropertyKind::Visibility: return "visibility";
    }
    return "name";
}

std::string_view lint_code_for(PropertyKind k) {
    switch (k) {
        case PropertyKind::Name: return "L-NAME";
        case PropertyKind::OpInput: return "L-OPI";
        case PropertyKind::OpGeneration: return "L-OPG";
        case PropertyKind::OpDerivation: return "L-OPD";
        case PropertyKind::Domain: return "L-DOMAIN";
        case PropertyKind::Example: return "L-EXAMPLE";
        case PropertyKind::Description: return "L-DESC";
        case PropertyKind::Label: return "L-LABEL";
        case PropertyKind::MemoryLink: return "L-LINK";
        case PropertyKind::Compulsoriness: return "L-REQUIRED";
        case PropertyKind::Initialisation: return "L-INIT";
        case PropertyKind::Visibility: return "L-VISIBLE";
    }
    return "L-NAME";
}

const ApplicabilityMatrix& ApplicabilityMatrix::standard() {
    constexpr auto HR = ApplicabilityLevel::HighlyRecommended;
    constexpr auto R = ApplicabilityLevel::Recommended;
    constexpr auto NR = ApplicabilityLevel::NotRecommended;
    constexpr auto D = ApplicabilityLevel::Discouraged;
    //                     name i   g   d   dom ex  desc label link req init vis
    static const ApplicabilityMatrix matrix(std::array<Row, kPhaseCount>{
        Row{HR, HR, HR, D, HR, HR, HR, D, D, D, D, D},         // analysis
        Row{HR, HR, HR, HR, HR, HR, HR, NR, HR, R, NR, NR},    // design / memory
        Row{HR, HR, HR, HR, HR, HR, HR, HR, HR, HR, HR, R},    // design / interface
    });
    return matrix;
}

ApplicabilityLevel ApplicabilityMatrix::at(Phase phase, PropertyKind prop) const {
    return cells_[static_cast<std::size_t>(phase)][static_cast<std::size_t>(prop)];
}

namespace {

int rank(const LevelSeverity& s) { return s ? static_cast<int>(*s) + 1 : 0; }

LevelSeverity more_severe(const LevelSeverity& a, const LevelSeverity& b) { return rank(a) >= rank(b) ? a : b; }

std::optional<LevelSeverity> severity_from(const nlohmann::json& v) {
    if (!v.is_string()) return std::nullopt;
    auto s = v.get<std::string>();
    if (s == "error") return LevelSeverity{Severity::Error};
    if (s == "warning") return LevelSeverity{Severity::Warning};
    if (s == "info") return LevelSeverity{Severity::Info};
    if (s == "off" || s == "silent") return LevelSeverity{std::nullopt};
    return std::nullopt;
}

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::vector<std::string> words(std::string_view name) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : name) {
        if (c == ' ' || c == '-') {
            if (!cur.empty()) out.push_back(lower(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(lower(cur));
    return out;
}

std::string phase_label(Phase p) {
    switch (p) {
        case Phase::Analysis: return "analysis";
        case Phase::DesignMemory: return "design (memory)";
        case Phase::DesignInterface: return "design (interface)";
    }
    return "analysis";
}

std::string property_label(PropertyKind k) {
    switch (k) {
        case PropertyKind::Name: return "a name";
        case PropertyKind::OpInput: return "the input operation";
        case PropertyKind::OpGeneration: return "the generation operation";
        case PropertyKind::OpDerivation: return "the derivation operation";
        case PropertyKind::Domain: return "a domain";
        case PropertyKind::Example: return "an example";
        case PropertyKind::Description: return "a description";
        case PropertyKind::Label: return "a label";
        case PropertyKind::MemoryLink: return "a link with memory";
        case PropertyKind::Compulsoriness: return "compulsoriness";
        case PropertyKind::Initialisation: return "an initialisation";
        case PropertyKind::Visibility: return "visibility";
    }
    return "a property";
}

std::string level_label(ApplicabilityLevel l) {
    switch (l) {
        case ApplicabilityLevel::Discouraged: return "discouraged";
        case ApplicabilityLevel::NotRecommended: return "not recommended";
        case ApplicabilityLevel::Recommended: return "recommended";
        case ApplicabilityLevel::HighlyRecommended: return "highly recommended";
    }
    return "";
}

std::vector<PropertyKind> present_properties(const FieldProperties& p) {
    std::vector<PropertyKind> out{PropertyKind::Name};
    if (p.acquisition) {
        switch (p.acquisition->kind) {
            case AcquisitionKind::Input: out.push_back(PropertyKind::OpInput); break;
            case AcquisitionKind::Generation: out.push_back(PropertyKind::OpGeneration); break;
            case AcquisitionKind::Derivation: out.push_back(PropertyKind::OpDerivation); break;
        }
    }
    if (p.domain) out.push_back(PropertyKind::Domain);
    if (p.example) out.push_back(PropertyKind::Example);
    if (p.description) out.push_back(PropertyKind::Description);
    if (p.label) out.push_back(PropertyKind::Label);
    if (p.memoryLink) out.push_back(PropertyKind::MemoryLink);
    if (p.compulsory) out.push_back(PropertyKind::Compulsoriness);
    if (p.initialisation) out.push_back(PropertyKind::Initialisation);
    if (p.visible) out.push_back(PropertyKind::Visibility);
    return out;
}

// Absent properties worth an Info when infoOnMissing is set. The acquisition
// operation is reported once, against the input column.
std::vector<PropertyKind> absent_properties(const FieldProperties& p) {
    std::vector<PropertyKind> out;
    if (!p.acquisition) out.push_back(PropertyKind::OpInput);
    if (!p.domain) out.push_back(PropertyKind::Domain);
    if (!p.example) out.push_back(PropertyKind::Example);
    if (!p.description) out.push_back(PropertyKind::Description);
    if (!p.label) out.push_back(PropertyKind::Label);
    if (!p.memoryLink) out.push_back(PropertyKind::MemoryLink);
    if (!p.compulsory) out.push_back(PropertyKind::Compulsoriness);
    if (!p.initialisation) out.push_back(PropertyKind::Initialisation);
    if (!p.visible) out.push_back(PropertyKind::Visibility);
    return out;
}

/// Literal names of a specialisation whose variants are each a single bare field,
/// i.e. a specialisation standing in for a domain.
std::optional<std::set<std::string>> domain_carrier_literals(const Complex& c) {
    if (c.kind != ComplexKind::Specialisation || c.lists.size() < 2) return std::nullopt;
    std::set<std::string> literals;
    for (const auto& variant : c.lists) {
        const SubstructureList* items = &variant;
        if (items->size() == 1 && items->front().complex() &&
            items->front().complex()->kind == ComplexKind::Aggregation && !items->front().complex()->name) {
            items = &items->front().complex()->children();
        }
        if (items->size() != 1 || !items->front().field()) return std::nullopt;
        literals.insert(lower(items->front().field()->name));
    }
    return literals;
}

}  // namespace

LevelSeverity LintConfig::severity_for(ApplicabilityLevel level) const {
    const std::array<LevelSeverity, 4> configured = {discouraged, notRecommended, recommended, highlyRecommended};
    LevelSeverity out = std::nullopt;
    for (auto i = static_cast<std::size_t>(level); i < configured.size(); ++i) out = more_severe(out, configured[i]);
    return out;
}

Result<LintConfig> LintConfig::from_json(std::string_view text) {
    auto fail = [](std::string msg) {
        return Result<LintConfig>::failure({Diagnostic{Severity::Error, "C001", std::move(msg), {}}});
    };
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object()) return fail("config is not a JSON object");

    for (const auto& [key, value] : j.items()) {
        if (key != "severity" && key != "derived_wordlist" && key != "info_on_missing") {
            return fail("unknown config key '" + key + "'");
        }
    }

    LintConfig cfg;
    if (auto it = j.find("severity"); it != j.end()) {
        if (!it->is_object()) return fail("'severity' must be an object");
        for (const auto& [key, value] : it->items()) {
            auto level = level_from(key);
            if (!level) return fail("unknown applicability level '" + key + "' in 'severity'");
            auto sev = severity_from(value);
            if (!sev) return fail("severity for '" + key + "' must be error, warning, info or off");
            switch (*level) {
                case ApplicabilityLevel::Discouraged: cfg.discouraged = *sev; break;
                case ApplicabilityLevel::NotRecommended: cfg.notRecommended = *sev; break;
                case ApplicabilityLevel::Recommended: cfg.recommended = *sev; break;
                case ApplicabilityLevel::HighlyRecommended: cfg.highlyRecommended = *sev; break;
            }
        }
    }
    if (auto it = j.find("derived_wordlist"); it != j.end()) {
        if (!it->is_array()) return fail("'derived_wordlist' must be an array of strings");
        cfg.derivedWordlist.clear();
        for (const auto& w : *it) {
            if (!w.is_string()) return fail("'derived_wordlist' must be an array of strings");
            cfg.derivedWordlist.push_back(w.get<std::string>());
        }
    }
    if (auto it = j.find("info_on_missing"); it != j.end()) {
        if (!it->is_boolean()) return fail("'info_on_missing' must be a boolean");
        cfg.infoOnMissing = it->get<bool>();
    }
    return cfg;
}

Diagnostics lint(const MessageStructure& ms, Phase phase, const LintConfig& config) {
    const auto& matrix = ApplicabilityMatrix::standard();
    Diagnostics out;
    for (const Field* f : fields(ms)) {
        for (PropertyKind k : present_properties(f->properties)) {
            ApplicabilityLevel level = matrix.at(phase, k);
            auto sev = config.severity_for(level);
            if (!sev) continue;
            out.push_back(Diagnostic{*sev, std::string(lint_code_for(k)),
                                     "field '" + f->name + "': " + property_label(k) + " is " + level_label(level) +
                                         " in " + phase_label(phase) + " (" + std::string(to_string(level)) + ")",
                                     f->span});
        }
        if (!config.infoOnMissing) continue;
        for (PropertyKind k : absent_properties(f->properties)) {
            if (matrix.at(phase, k) != ApplicabilityLevel::HighlyRecommended) continue;
            std::string what = k == PropertyKind::OpInput ? "an acquisition operation" : property_label(k);
            out.push_back(Diagnostic{Severity::Info, std::string(lint_code::MissingProperty),
                                     "field '" + f->name + "' has no " + what.substr(what.find(' ') + 1) + "; " +
                                         what + " is highly recommended in " + phase_label(phase),
                                     f->span});
        }
    }
    Diagnostics guidelines = guideline_checks(ms, phase, config);
    out.insert(out.end(), guidelines.begin(), guidelines.end());
    return out;
}

Diagnostics guideline_checks(const MessageStructure& ms, Phase phase, const LintConfig& config) {
    Diagnostics out;
    if (ms.root.kind == ComplexKind::Specialisation) {
        out.push_back(Diagnostic{Severity::Error, std::string(lint_code::SpecialisationRoot),
                                 "the initial substructure of '" + ms.name +
                                     "' is a specialisation; it must be an aggregation or an iteration",
                                 ms.root.span});
    }

    const auto all = fields(ms);
    std::set<std::string> known;
    for (const Field* f : all) known.insert(f->name);

    std::set<std::string> wordlist;
    for (const auto& w : config.derivedWordlist) wordlist.insert(lower(w));

    std::vector<std::set<std::string>> enumSets;
    for (const Field* f : all) {
        const auto& p = f->properties;
        if (phase == Phase::Analysis) {
            auto ws = words(f->name);
            if (std::any_of(ws.begin(), ws.end(), [&](const std::string& w) { return wordlist.count(w) > 0; })) {
                out.push_back(Diagnostic{Severity::Info, std::string(lint_code::DerivableField),
                                         "field '" + f->name +
                                             "' looks derivable from the rest of the message; drop it or record the "
                                             "design decision that requires it",
                                         f->span});
            }
        }
        auto check_refs = [&](const Formula& formula, std::string_view what) {
            for (const auto& ref : field_refs(formula)) {
                if (known.count(ref)) continue;
                out.push_back(Diagnostic{Severity::Error, std::string(lint_code::UnknownFieldRef),
                                         std::string(what) + " of field '" + f->name + "' references unknown field ':" +
                                             ref + "'",
                                         f->span});
            }
        };
        if (p.acquisition && p.acquisition->formula) check_refs(*p.acquisition->formula, "derivation formula");
        if (p.initialisation) check_refs(*p.initialisation, "initialisation formula");
        if (p.domain) {
            if (const auto* e = std::get_if<EnumeratedDomain>(&*p.domain)) {
                std::set<std::string> lits;
                for (const auto& l : e->literals) lits.insert(lower(l));
                enumSets.push_back(std::move(lits));
            }
        }
    }

    walk_as_is(ms, [&](const WalkNode& n) {
        if (!n.complex) return;
        auto literals = domain_carrier_literals(*n.complex);
        if (!literals) return;
        if (std::find(enumSets.begin(), enumSets.end(), *literals) == enumSets.end()) return;
        std::string name = n.complex->name ? "'" + *n.complex->name + "'" : "an anonymous specialisation";
        out.push_back(Diagnostic{Severity::Warning, std::string(lint_code::DuplicateDomainCarrier),
                                 "specialisation " + name +
                                     " only repeats the literals of an enumerated field domain; keep one of the two",
                                 n.complex->span});
    });
    return out;
}

}  // namespace msgstruct
