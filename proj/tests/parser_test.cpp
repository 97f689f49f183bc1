#include <gtest/gtest.h>

#include <algorithm>
#include <regex>
#include <sstream>

#include "msgstruct/canonical.hpp"
#include "msgstruct/parser.hpp"
#include "msgstruct/printer.hpp"
#include "msgstruct/serialize.hpp"
#include "test_support.hpp"

using namespace msgstruct;
using msgstruct::testing::parse_fixture;
using msgstruct::testing::read_fixture;
using msgstruct::testing::TreeGenerator;

namespace {

std::vector<std::string> codes(const Diagnostics& diags) {
    std::vector<std::string> out;
    for (const auto& d : diags) out.push_back(d.code);
    return out;
}

bool has_code(const Diagnostics& diags, std::string_view code) {
    return std::any_of(diags.begin(), diags.end(), [&](const Diagnostic& d) { return d.code == code; });
}

std::string trim(std::string s) {
    auto b = s.find_first_not_of(' ');
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(' ');
    return s.substr(b, e - b + 1);
}

}  // namespace

TEST(Parse, CorpusFixturesParse) {
    for (const char* name : {"order.ms", "order_canonical.ms", "assignment.ms", "vehicle_c.ms", "equivalent_form1.ms",
                             "equivalent_form2.ms", "equivalent_form3.ms", "equivalent_form4.ms", "flat.ms",
                             "supplier_response.ms", "order_with_amount.ms"}) {
        auto r = parse(read_fixture(name));
        EXPECT_TRUE(r.has_value()) << name;
        EXPECT_FALSE(has_errors(r.diagnostics())) << name;
    }
}

TEST(Parse, OrderTree) {
    auto ms = parse_fixture("order.ms");
    EXPECT_EQ(ms.name, "ORDER");
    EXPECT_EQ(ms.root.kind, ComplexKind::Aggregation);
    EXPECT_EQ(field_names(ms), (std::vector<std::string>{"Order number", "Request date", "Payment type", "Client",
                                                         "Address", "Person in charge", "Product", "Price",
                                                         "Quantity"}));
    const auto& top = ms.root.children();
    ASSERT_EQ(top.size(), 5u);
    const Complex* destinations = top[4].complex();
    ASSERT_NE(destinations, nullptr);
    EXPECT_EQ(destinations->name, std::optional<std::string>("DESTINATIONS"));
    EXPECT_EQ(destinations->kind, ComplexKind::Iteration);
    const Field* client = top[3].field();
    ASSERT_NE(client, nullptr);
    EXPECT_TRUE(client->is_reference());
    const Field* number = top[0].field();
    EXPECT_EQ(number->properties.acquisition->kind, AcquisitionKind::Generation);
    EXPECT_EQ(number->properties.domain, std::optional<Domain>(Domain{BasicDomain::Number}));
    EXPECT_EQ(number->properties.example, std::optional<std::string>("10352"));
}

TEST(Parse, AssignmentSpecialisation) {
    auto ms = parse_fixture("assignment.ms");
    const Complex* type = ms.root.children()[1].complex();
    ASSERT_NE(type, nullptr);
    EXPECT_EQ(type->kind, ComplexKind::Specialisation);
    ASSERT_EQ(type->lists.size(), 2u);
    EXPECT_EQ(type->lists[0][0].complex()->name, std::optional<std::string>("THEORY"));
    EXPECT_EQ(type->lists[1][0].complex()->name, std::optional<std::string>("PRACTICE"));
    const Field* kind = ms.root.children()[0].field();
    EXPECT_EQ(kind->properties.domain, std::optional<Domain>(Domain{EnumeratedDomain{{"theo", "prac"}}}));
}

TEST(Parse, VehicleFormAFailsWithP002) {
    auto r = parse(read_fixture("vehicle_a.ms"));
    EXPECT_FALSE(r.has_value());
    ASSERT_FALSE(r.diagnostics().empty());
    EXPECT_EQ(r.diagnostics().front().code, parse_code::NameWithoutComplex);
    EXPECT_EQ(r.diagnostics().front().span.startLine, 1);
    EXPECT_EQ(r.diagnostics().front().span.startCol, 1);
}

TEST(Parse, VehicleFormC) {
    auto ms = parse_fixture("vehicle_c.ms");
    EXPECT_EQ(field_names(ms).size(), 7u);
    EXPECT_EQ(ms.root.children()[3].complex()->name, std::optional<std::string>("Motor"));
}

TEST(Parse, NamesCollapseInternalWhitespace) {
    auto r = parse("A = < Person   in\t charge + b >");
    ASSERT_TRUE(r.has_value());
    EXPECT_EQ(field_names(r.value()), (std::vector<std::string>{"Person in charge", "b"}));
}

TEST(Parse, CommentsAndCrlf) {
    auto r = parse("# head\r\nA =\r\n< a + # trailing\r\n  b >\r\n");
    ASSERT_TRUE(r.has_value());
    EXPECT_EQ(field_names(r.value()), (std::vector<std::string>{"a", "b"}));
}

TEST(Parse, ErrorCodes) {
    struct Case {
        const char* text;
        std::string_view code;
    };
    const std::vector<Case> cases = {
        {"A=<a+b", parse_code::UnbalancedBracket},
        {"A=<a+b}", parse_code::UnbalancedBracket},
        {"A=<a>>", parse_code::UnbalancedBracket},
        {"A=b", parse_code::NameWithoutComplex},
        {"A=<>", parse_code::EmptyList},
        {"A=<[a|]>", parse_code::EmptyList},
        {"A=[a|b]", parse_code::SpecialisationAtRoot},
        {"A=<a (op=i; op=g)>", parse_code::MalformedAnnotation},
        {"A=<a (colour=red)>", parse_code::MalformedAnnotation},
        {"A=<a (op=i; formula=\"1\")>", parse_code::MalformedAnnotation},
        {"A=<a (op=x)>", parse_code::UnknownAcquisition},
        {"A=<a (op=i>", parse_code::MalformedAnnotation},
        {"A=<a++b>", parse_code::UnexpectedToken},
        {"", parse_code::UnexpectedToken},
        {"A=<1a>", parse_code::InvalidName},
    };
    for (const auto& c : cases) {
        auto r = parse(c.text);
        EXPECT_FALSE(r.has_value()) << c.text;
        EXPECT_TRUE(has_code(r.diagnostics(), c.code))
            << c.text << " expected " << c.code << ", got " << ::testing::PrintToString(codes(r.diagnostics()));
    }
}

TEST(Parse, ErrorSpansPointIntoTheInput) {
    const std::vector<std::string> inputs = {"A=<a+b", "A =\n<a+\n  b}", "A=<>", "A=[a|b]", "A=<a (op=q)>",
                                             "X=\n<a + (op=i)>", read_fixture("vehicle_a.ms")};
    for (const auto& text : inputs) {
        auto r = parse(text);
        ASSERT_FALSE(r.has_value()) << text;
        std::vector<std::string> lines;
        std::istringstream in(text);
        for (std::string line; std::getline(in, line);) lines.push_back(line);
        for (const auto& d : r.diagnostics()) {
            ASSERT_TRUE(d.span.known()) << text;
            ASSERT_LE(d.span.startLine, static_cast<int>(std::max<std::size_t>(lines.size(), 1))) << text;
            int len = lines.empty() ? 0 : static_cast<int>(lines[static_cast<std::size_t>(d.span.startLine - 1)].size());
            EXPECT_LE(d.span.startCol, len + 1) << text;
            EXPECT_GE(d.span.startCol, 1) << text;
        }
    }
}

TEST(Parse, DiagnosticFormatting) {
    auto r = parse("A=<a+b");
    ASSERT_FALSE(r.diagnostics().empty());
    auto line = format_diagnostic(r.diagnostics().front(), "x.ms");
    EXPECT_TRUE(std::regex_match(line, std::regex(R"(x\.ms:1:\d+: error\[P001\]: .+)"))) << line;
}

TEST(Parse, FieldSpansCoverTheName) {
    auto ms = parse_fixture("order.ms");
    auto fs = fields(ms);
    EXPECT_EQ(fs[0]->span.startLine, 3);
    EXPECT_EQ(fs[0]->span.startCol, 3);
    EXPECT_EQ(fs[8]->span.startLine, 15);
}

TEST(Annotation, AllKeys) {
    auto r = parse_annotation(
        "op=d; domain=money; example=\"1,00 \\\"x\\\"\"; desc=\"Total\"; label=\"Amount\"; link=Line.amount; "
        "required=true; init=\"0\"; visible=false; formula=\":Price * :Quantity\"");
    ASSERT_TRUE(r.has_value()) << r.diagnostics().front().message;
    const auto& p = r.value();
    EXPECT_EQ(p.acquisition->kind, AcquisitionKind::Derivation);
    ASSERT_TRUE(p.acquisition->formula.has_value());
    EXPECT_EQ(to_string(*p.acquisition->formula), ":Price * :Quantity");
    EXPECT_EQ(p.domain, std::optional<Domain>(Domain{BasicDomain::Money}));
    EXPECT_EQ(p.example, std::optional<std::string>("1,00 \"x\""));
    EXPECT_EQ(p.description, std::optional<std::string>("Total"));
    EXPECT_EQ(p.label, std::optional<std::string>("Amount"));
    EXPECT_EQ(p.memoryLink, std::optional<std::string>("Line.amount"));
    EXPECT_EQ(p.compulsory, std::optional<bool>(true));
    EXPECT_EQ(p.visible, std::optional<bool>(false));
    EXPECT_EQ(p.initialisation, std::optional<Formula>(Formula::number("0")));
}

TEST(Annotation, DomainSpellings) {
    auto dom = [](std::string_view text) {
        auto r = parse_annotation(text);
        EXPECT_TRUE(r.has_value()) << text;
        return *r.value().domain;
    };
    EXPECT_EQ(dom("domain=ref:Client address"), (Domain{ReferenceDomain{"Client address"}}));
    EXPECT_EQ(dom("domain=Client"), (Domain{ReferenceDomain{"Client"}}));
    EXPECT_EQ(dom("domain=enum:a|b|c"), (Domain{EnumeratedDomain{{"a", "b", "c"}}}));
    EXPECT_EQ(dom("domain=[theo prac]"), (Domain{EnumeratedDomain{{"theo", "prac"}}}));
    EXPECT_EQ(dom("domain=time"), Domain{BasicDomain::Time});
}

TEST(Print, CompactExample) {
    auto ms = parse_fixture("equivalent_form1.ms");
    EXPECT_EQ(print(ms), "A=<a+b+C={D=<e+f+g>}>\n");
    EXPECT_EQ(print(canonicalize(ms)), "A=<a+b+{e+f+g}>\n");
}

TEST(Print, TabularRowsUseTheVerticalLayout) {
    auto ms = parse_fixture("order.ms");
    auto text = print(ms, PrintStyle::Tabular);
    std::vector<std::string> rows;
    std::istringstream in(text);
    std::string header;
    std::getline(in, header);
    EXPECT_TRUE(std::regex_match(header, std::regex(R"(# FIELD +OP +DOMAIN +EXAMPLE)"))) << header;
    std::size_t opColumn = std::string::npos;
    for (std::string line; std::getline(in, line);) {
        auto open = line.find(" (op=");
        if (open != std::string::npos) {
            auto col = line.find("op=", open);
            if (opColumn == std::string::npos) opColumn = col;
            EXPECT_EQ(col, opColumn) << line;
            auto close = line.rfind(')');
            line = line.substr(0, open) + line.substr(close + 1);
        }
        rows.push_back(trim(std::regex_replace(line, std::regex(" +"), " ")));
    }
    const std::vector<std::string> expected = {
        "ORDER =", "< Order number +", "Request date +", "Payment type +", "Client +", "DESTINATIONS =",
        "{ DESTINATION =", "< Address +", "Person in charge +", "LINES =", "{ LINE =", "< Product +", "Price +",
        "Quantity >", "}", ">", "}", ">",
    };
    EXPECT_EQ(rows, expected) << text;
    EXPECT_EQ(header.find("OP"), opColumn);
    auto back = parse(text);
    ASSERT_TRUE(back.has_value()) << text;
    EXPECT_TRUE(structurally_equal(back.value(), ms));
}

TEST(Print, AstJson) {
    auto json = ast_to_json(parse_fixture("flat.ms"));
    EXPECT_NE(json.find("\"name\": \"A\""), std::string::npos) << json;
    EXPECT_NE(json.find("\"kind\": \"aggregation\""), std::string::npos) << json;
}

// ---------------------------------------------------------------------------
// Properties

TEST(ParsePrintProperties, RoundTripBothStyles) {
    TreeGenerator gen(4242);
    for (int i = 0; i < 300; ++i) {
        auto ms = gen.structure();
        for (auto style : {PrintStyle::Compact, PrintStyle::Tabular}) {
            auto text = print(ms, style);
            auto back = parse(text);
            ASSERT_TRUE(back.has_value()) << text << format_diagnostic(back.diagnostics().front());
            EXPECT_TRUE(equivalent(back.value(), ms)) << text;
            EXPECT_TRUE(structurally_equal(canonicalize(back.value()), canonicalize(ms))) << text;
            EXPECT_EQ(print(back.value(), style), text);
        }
    }
}

TEST(ParsePrintProperties, ParseIsDeterministic) {
    TreeGenerator gen(99);
    for (int i = 0; i < 50; ++i) {
        auto text = print(gen.structure(), PrintStyle::Tabular);
        auto a = parse(text);
        auto b = parse(text);
        ASSERT_TRUE(a.has_value());
        EXPECT_EQ(ast_to_json(a.value()), ast_to_json(b.value()));
    }
}

TEST(ParsePrintProperties, TruncatedInputNeverCrashesAndAlwaysExplains) {
    auto text = read_fixture("order.ms");
    for (std::size_t cut = 0; cut < text.size(); cut += 7) {
        auto r = parse(std::string_view(text).substr(0, cut));
        if (!r.has_value()) {
            EXPECT_TRUE(has_errors(r.diagnostics())) << cut;
        }
    }
}
