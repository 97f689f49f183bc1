#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "msgstruct/ast.hpp"
#include "msgstruct/diagnostic.hpp"

namespace msgstruct {

enum class Phase { Analysis, DesignMemory, DesignInterface };

std::string_view to_string(Phase p);
/// Accepts `analysis`, `design-memory`, `design-interface`.
std::optional<Phase> phase_from(std::string_view s);

/// Ordered: Discouraged < NotRecommended < Recommended < HighlyRecommended.
enum class ApplicabilityLevel { Discouraged, NotRecommended, Recommended, HighlyRecommended };

/// `--`, `-`, `+`, `++`.
std::string_view to_string(ApplicabilityLevel l);
std::optional<ApplicabilityLevel> level_from(std::string_view s);

/// Matrix columns, in table order.
enum class PropertyKind {
    Name,
    OpInput,
    OpGeneration,
    OpDerivation,
    Domain,
    Example,
    Description,
    Label,
    MemoryLink,
    Compulsoriness,
    Initialisation,
    Visibility,
};

inline constexpr std::size_t kPhaseCount = 3;
inline constexpr std::size_t kPropertyKindCount = 12;

std::string_view to_string(PropertyKind k);

inline constexpr std::array<Phase, kPhaseCount> kAllPhases = {Phase::Analysis, Phase::DesignMemory,
                                                              Phase::DesignInterface};
inline constexpr std::array<PropertyKind, kPropertyKindCount> kAllPropertyKinds = {
    PropertyKind::Name,         PropertyKind::OpInput,     PropertyKind::OpGeneration, PropertyKind::OpDerivation,
    PropertyKind::Domain,       PropertyKind::Example,     PropertyKind::Description,  PropertyKind::Label,
    PropertyKind::MemoryLink,   PropertyKind::Compulsoriness, PropertyKind::Initialisation, PropertyKind::Visibility,
};

/// Recommendation level of each field property per development phase.
class ApplicabilityMatrix {
public:
    static const ApplicabilityMatrix& standard();

    [[nodiscard]] ApplicabilityLevel at(Phase phase, PropertyKind prop) const;

private:
    using Row = std::array<ApplicabilityLevel, kPropertyKindCount>;
    explicit ApplicabilityMatrix(std::array<Row, kPhaseCount> cells) : cells_(cells) {}
    std::array<Row, kPhaseCount> cells_;
};

/// Diagnostic severity a matrix level maps to; nullopt means silent.
using LevelSeverity = std::optional<Severity>;

struct LintConfig {
    LevelSeverity discouraged = Severity::Error;
    LevelSeverity notRecommended = Severity::Warning;
    LevelSeverity recommended = std::nullopt;
    LevelSeverity highlyRecommended = std::nullopt;
    /// Field-name words hinting at a derivable total.
    std::vector<std::string> derivedWordlist = {"amount", "total", "sum"};
    /// Report absent highly-recommended properties at Info level.
    bool infoOnMissing = false;

    /// Effective mapping. A `--` cell never maps below a `-` cell, whatever the
    /// overrides say.
    [[nodiscard]] LevelSeverity severity_for(ApplicabilityLevel level) const;

    /// Reads the JSON config format:
    /// `{"severity": {"--": "error", "-": "warning", "+": "off", "++": "off"},
    ///   "derived_wordlist": [...], "info_on_missing": false}`. Missing keys keep defaults.
    static Result<LintConfig> from_json(std::string_view text);
};

namespace lint_code {
inline constexpr std::string_view DerivableField = "G1";
inline constexpr std::string_view UnknownFieldRef = "G2";
inline constexpr std::string_view DuplicateDomainCarrier = "G3";
inline constexpr std::string_view SpecialisationRoot = "G4";
inline constexpr std::string_view MissingProperty = "L-MISSING";
}  // namespace lint_code

/// Code for a present property at a matrix cell, e.g. `L-OPD`, `L-LABEL`.
std::string_view lint_code_for(PropertyKind k);

/// Matrix checks for every present property of every field, followed by
/// guideline_checks(). Pure; output order is deterministic.
Diagnostics lint(const MessageStructure& ms, Phase phase, const LintConfig& config = {});

/// Methodological guideline checks G1-G4 only.
Diagnostics guideline_checks(const MessageStructure& ms, Phase phase, const LintConfig& config = {});

}  // namespace msgstruct
