#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "msgstruct/lint.hpp"
#include "msgstruct/parser.hpp"
#include "test_support.hpp"

using namespace msgstruct;
using msgstruct::testing::fixture_path;
using msgstruct::testing::parse_fixture;

namespace {

MessageStructure parsed(std::string_view text) {
    auto r = parse(text);
    EXPECT_TRUE(r.has_value()) << text;
    return r.value();
}

std::size_t count(const Diagnostics& diags, Severity s, std::string_view code = {}) {
    return static_cast<std::size_t>(std::count_if(diags.begin(), diags.end(), [&](const Diagnostic& d) {
        return d.severity == s && (code.empty() || d.code == code);
    }));
}

// Transcribed matrix, read independently of the library's level parser.
std::vector<std::vector<std::string>> transcribed_matrix() {
    std::ifstream in(fixture_path("applicability_matrix.txt"));
    std::vector<std::vector<std::string>> rows;
    for (std::string line; std::getline(in, line);) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream words(line);
        std::string phase;
        words >> phase;
        std::vector<std::string> cells;
        for (std::string w; words >> w;) cells.push_back(w);
        rows.push_back(cells);
    }
    return rows;
}

}  // namespace

TEST(Matrix, EqualsTranscribedTableCellForCell) {
    auto rows = transcribed_matrix();
    ASSERT_EQ(rows.size(), kPhaseCount);
    const auto& m = ApplicabilityMatrix::standard();
    int cells = 0;
    for (std::size_t p = 0; p < kPhaseCount; ++p) {
        ASSERT_EQ(rows[p].size(), kPropertyKindCount);
        for (std::size_t k = 0; k < kPropertyKindCount; ++k) {
            EXPECT_EQ(std::string(to_string(m.at(kAllPhases[p], kAllPropertyKinds[k]))), rows[p][k])
                << to_string(kAllPhases[p]) << " / " << to_string(kAllPropertyKinds[k]);
            ++cells;
        }
    }
    EXPECT_EQ(cells, 36);
}

TEST(Matrix, LevelSpellingsRoundTrip) {
    for (auto l : {ApplicabilityLevel::Discouraged, ApplicabilityLevel::NotRecommended, ApplicabilityLevel::Recommended,
                   ApplicabilityLevel::HighlyRecommended}) {
        EXPECT_EQ(level_from(to_string(l)), std::optional<ApplicabilityLevel>(l));
    }
    EXPECT_FALSE(level_from("+++").has_value());
    EXPECT_EQ(phase_from("design-memory"), std::optional<Phase>(Phase::DesignMemory));
    EXPECT_FALSE(phase_from("design").has_value());
}

TEST(Lint, OrderIsCleanAtAnalysis) {
    auto diags = lint(parse_fixture("order.ms"), Phase::Analysis);
    EXPECT_EQ(count(diags, Severity::Error), 0u);
    EXPECT_EQ(count(diags, Severity::Warning), 0u);
}

TEST(Lint, OneDerivedFieldAtAnalysisIsOneError) {
    auto diags = lint(parse_fixture("order_with_amount.ms"), Phase::Analysis);
    ASSERT_EQ(count(diags, Severity::Error), 1u);
    auto it = std::find_if(diags.begin(), diags.end(), [](const Diagnostic& d) { return d.severity == Severity::Error; });
    EXPECT_EQ(it->code, lint_code_for(PropertyKind::OpDerivation));
    EXPECT_EQ(it->code, "L-OPD");
    EXPECT_EQ(it->span.startLine, 16);
    EXPECT_EQ(count(diags, Severity::Info, lint_code::DerivableField), 1u);
}

TEST(Lint, DerivedFieldIsFineAtDesign) {
    auto ms = parse_fixture("order_with_amount.ms");
    EXPECT_EQ(count(lint(ms, Phase::DesignMemory), Severity::Error), 0u);
    EXPECT_EQ(count(lint(ms, Phase::DesignInterface), Severity::Error), 0u);
}

TEST(Lint, LabelAtDesignMemoryIsOneWarning) {
    auto ms = parsed("A=<a (op=i; domain=text; label=\"A\") + b (op=i)>");
    auto diags = lint(ms, Phase::DesignMemory);
    ASSERT_EQ(count(diags, Severity::Warning), 1u);
    EXPECT_EQ(count(diags, Severity::Warning, "L-LABEL"), 1u);
    EXPECT_EQ(count(diags, Severity::Error), 0u);
    EXPECT_EQ(count(lint(ms, Phase::DesignInterface), Severity::Warning), 0u);
    EXPECT_EQ(count(lint(ms, Phase::Analysis), Severity::Error, "L-LABEL"), 1u);
}

TEST(Lint, EveryDesignPropertyIsAnErrorAtAnalysis) {
    auto ms = parsed("A=<a (link=X.a; required=true; init=\"today()\"; visible=true; label=\"x\")>");
    auto diags = lint(ms, Phase::Analysis);
    EXPECT_EQ(count(diags, Severity::Error), 5u);
    for (auto code : {"L-LINK", "L-REQUIRED", "L-INIT", "L-VISIBLE", "L-LABEL"}) {
        EXPECT_EQ(count(diags, Severity::Error, code), 1u) << code;
    }
    auto memory = lint(ms, Phase::DesignMemory);
    EXPECT_EQ(count(memory, Severity::Error), 0u);
    EXPECT_EQ(count(memory, Severity::Warning), 3u);  // label, init, visible
}

TEST(Lint, MissingPropertiesOnlyWhenAsked) {
    auto ms = parsed("A=<a>");
    EXPECT_TRUE(lint(ms, Phase::Analysis).empty());
    LintConfig cfg;
    cfg.infoOnMissing = true;
    auto diags = lint(ms, Phase::Analysis, cfg);
    EXPECT_GE(count(diags, Severity::Info, lint_code::MissingProperty), 3u);
    EXPECT_EQ(diags.size(), count(diags, Severity::Info));
}

TEST(Guidelines, G1WordlistIsAnalysisOnlyAndConfigurable) {
    auto ms = parsed("A=<Total price (op=i) + Sumatra (op=i) + Subtotal (op=i)>");
    auto diags = guideline_checks(ms, Phase::Analysis);
    EXPECT_EQ(count(diags, Severity::Info, lint_code::DerivableField), 1u);
    EXPECT_TRUE(guideline_checks(ms, Phase::DesignMemory).empty());
    LintConfig cfg;
    cfg.derivedWordlist = {"sumatra"};
    diags = guideline_checks(ms, Phase::Analysis, cfg);
    ASSERT_EQ(diags.size(), 1u);
    EXPECT_NE(diags[0].message.find("Sumatra"), std::string::npos);
}

TEST(Guidelines, G2UnknownFormulaReference) {
    auto ms = parsed("A=<Price+Quantity+Amount (op=d; formula=\":Pricee * :Quantity\")>");
    auto diags = guideline_checks(ms, Phase::DesignMemory);
    ASSERT_EQ(count(diags, Severity::Error, lint_code::UnknownFieldRef), 1u);
    EXPECT_NE(diags[0].message.find("Pricee"), std::string::npos);
    auto ok = parsed("A=<Price+Quantity+Amount (op=d; formula=\":Price * :Quantity\")>");
    EXPECT_TRUE(guideline_checks(ok, Phase::DesignMemory).empty());
    auto init = parsed("A=<a (init=\":nope\")>");
    EXPECT_EQ(count(guideline_checks(init, Phase::DesignInterface), Severity::Error, lint_code::UnknownFieldRef), 1u);
}

TEST(Guidelines, G3SpecialisationDuplicatingAnEnumDomain) {
    auto dup = parsed("A=<Type (op=i; domain=[theo prac]) + [Theo|Prac]>");
    EXPECT_EQ(count(guideline_checks(dup, Phase::Analysis), Severity::Warning, lint_code::DuplicateDomainCarrier), 1u);
    auto distinct = parsed("A=<Type (op=i; domain=[theo prac]) + [Theo|Lab]>");
    EXPECT_TRUE(guideline_checks(distinct, Phase::Analysis).empty());
    auto structural = parse_fixture("assignment.ms");
    EXPECT_EQ(count(guideline_checks(structural, Phase::Analysis), Severity::Warning), 0u);
}

TEST(Guidelines, G4SpecialisationRootOnProgrammaticTrees) {
    MessageStructure ms;
    ms.name = "A";
    ms.root = make_specialisation({{make_field("a")}, {make_field("b")}});
    auto diags = guideline_checks(ms, Phase::Analysis);
    EXPECT_EQ(count(diags, Severity::Error, lint_code::SpecialisationRoot), 1u);
}

TEST(Config, FromJson) {
    auto r = LintConfig::from_json(
        R"({"severity": {"--": "warning", "-": "info", "+": "info"}, "derived_wordlist": ["net"], "info_on_missing": true})");
    ASSERT_TRUE(r.has_value());
    const auto& cfg = r.value();
    EXPECT_EQ(cfg.severity_for(ApplicabilityLevel::Discouraged), std::optional<Severity>(Severity::Warning));
    EXPECT_EQ(cfg.severity_for(ApplicabilityLevel::NotRecommended), std::optional<Severity>(Severity::Info));
    EXPECT_EQ(cfg.severity_for(ApplicabilityLevel::Recommended), std::optional<Severity>(Severity::Info));
    EXPECT_FALSE(cfg.severity_for(ApplicabilityLevel::HighlyRecommended).has_value());
    EXPECT_EQ(cfg.derivedWordlist, std::vector<std::string>{"net"});
    EXPECT_TRUE(cfg.infoOnMissing);

    auto ms = parse_fixture("order_with_amount.ms");
    auto diags = lint(ms, Phase::Analysis, cfg);
    EXPECT_EQ(count(diags, Severity::Error), 0u);
    EXPECT_EQ(count(diags, Severity::Warning, "L-OPD"), 1u);
}

TEST(Config, RejectsMalformed) {
    for (const char* bad : {"{", "[]", R"({"severity": {"--": "loud"}})", R"({"severity": {"+++": "error"}})",
                            R"({"derived_wordlist": "amount"})", R"({"colour": 1})"}) {
        auto r = LintConfig::from_json(bad);
        EXPECT_FALSE(r.has_value()) << bad;
    }
}

TEST(Config, SeverityIsMonotonicInTheLevel) {
    const std::vector<LevelSeverity> options = {std::nullopt, Severity::Info, Severity::Warning, Severity::Error};
    auto rank = [](LevelSeverity s) { return s ? static_cast<int>(*s) + 1 : 0; };
    for (auto a : options) {
        for (auto b : options) {
            for (auto c : options) {
                for (auto d : options) {
                    LintConfig cfg;
                    cfg.discouraged = a;
                    cfg.notRecommended = b;
                    cfg.recommended = c;
                    cfg.highlyRecommended = d;
                    EXPECT_GE(rank(cfg.severity_for(ApplicabilityLevel::Discouraged)),
                              rank(cfg.severity_for(ApplicabilityLevel::NotRecommended)));
                    EXPECT_GE(rank(cfg.severity_for(ApplicabilityLevel::NotRecommended)),
                              rank(cfg.severity_for(ApplicabilityLevel::Recommended)));
                    EXPECT_GE(rank(cfg.severity_for(ApplicabilityLevel::Recommended)),
                              rank(cfg.severity_for(ApplicabilityLevel::HighlyRecommended)));
                }
            }
        }
    }
}

TEST(Lint, DeterministicAndPure) {
    auto ms = parse_fixture("order_with_amount.ms");
    for (auto phase : kAllPhases) {
        EXPECT_EQ(lint(ms, phase), lint(ms, phase));
    }
}
