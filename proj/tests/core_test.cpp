#include <gtest/gtest.h>

#include "msgstruct/canonical.hpp"
#include "msgstruct/parser.hpp"
#include "msgstruct/printer.hpp"
#include "test_support.hpp"

using namespace msgstruct;
using msgstruct::testing::parse_fixture;
using msgstruct::testing::TreeGenerator;

namespace {

MessageStructure parsed(std::string_view text) {
    auto r = parse(text);
    EXPECT_TRUE(r.has_value()) << (r.diagnostics().empty() ? "" : r.diagnostics().front().message);
    return r.value();
}

std::vector<std::string> visit_labels(const MessageStructure& ms) {
    std::vector<std::string> out;
    walk(ms, [&](const WalkNode& n) {
        if (n.field) {
            out.push_back(n.field->name);
        } else {
            std::string label(to_string(n.complex->kind));
            if (n.isRoot) label = ms.name + "-root " + label;
            out.push_back(label);
        }
    });
    return out;
}

const std::vector<std::string> kEquivalentForms = {"equivalent_form1.ms", "equivalent_form2.ms", "equivalent_form3.ms", "equivalent_form4.ms"};

}  // namespace

TEST(Canonicalize, EquivalentFormsShareOneCanonicalTree) {
    auto first = canonicalize(parse_fixture(kEquivalentForms[0]));
    for (const auto& name : kEquivalentForms) {
        EXPECT_TRUE(structurally_equal(canonicalize(parse_fixture(name)), first)) << name;
    }
    EXPECT_EQ(print(first), "A=<a+b+{e+f+g}>\n");
}

TEST(Canonicalize, NestedNamedFormEqualsAnonymousSugar) {
    auto named = parsed("A=<a+b+C={D=<e+f+g>}>");
    auto sugar = parsed("A=<a+b+{e+f+g}>");
    EXPECT_TRUE(structurally_equal(canonicalize(named), canonicalize(sugar)));
}

TEST(Canonicalize, AlreadyCanonicalIsUnchanged) {
    auto ms = parsed("A=<a>");
    EXPECT_TRUE(structurally_equal(canonicalize(ms), ms));
}

TEST(Canonicalize, OrderMatchesHandDerivedFixture) {
    auto canon = canonicalize(parse_fixture("order.ms"));
    msgstruct::testing::strip_properties(canon.root);
    auto expected = parse_fixture("order_canonical.ms");
    EXPECT_TRUE(structurally_equal(canon, expected)) << print(canon);
}

TEST(Canonicalize, WrapsIterationAndVariantContent) {
    auto canon = canonicalize(parsed("A={a+b+[c|d+e]}"));
    const Complex& root = canon.root;
    ASSERT_EQ(root.kind, ComplexKind::Iteration);
    ASSERT_EQ(root.children().size(), 1u);
    const Complex* wrapper = root.children()[0].complex();
    ASSERT_NE(wrapper, nullptr);
    EXPECT_EQ(wrapper->kind, ComplexKind::Aggregation);
    EXPECT_FALSE(wrapper->name.has_value());
    const Complex* spec = wrapper->children()[2].complex();
    ASSERT_NE(spec, nullptr);
    for (const auto& variant : spec->lists) {
        ASSERT_EQ(variant.size(), 1u);
        ASSERT_NE(variant[0].complex(), nullptr);
        EXPECT_EQ(variant[0].complex()->kind, ComplexKind::Aggregation);
    }
}

TEST(Canonicalize, ErasesNamesButKeepsFieldProperties) {
    auto canon = canonicalize(parse_fixture("order.ms"));
    walk_as_is(canon, [](const WalkNode& n) {
        if (n.complex) {
            EXPECT_FALSE(n.complex->name.has_value());
        }
    });
    auto fs = fields(canon);
    ASSERT_EQ(fs.size(), 9u);
    EXPECT_EQ(fs[0]->properties.example, std::optional<std::string>("10352"));
}

TEST(Equivalent, EquivalentFormPairsAndOrderSensitivity) {
    for (const auto& a : kEquivalentForms) {
        for (const auto& b : kEquivalentForms) {
            EXPECT_TRUE(equivalent(parse_fixture(a), parse_fixture(b))) << a << " vs " << b;
        }
    }
    EXPECT_TRUE(equivalent(parsed("A=<a>"), parsed("A=<a>")));
    EXPECT_FALSE(equivalent(parsed("A=<a+b>"), parsed("A=<b+a>")));
}

TEST(Equivalent, StructureNameAndKindsMatter) {
    EXPECT_FALSE(equivalent(parsed("A=<a+b>"), parsed("B=<a+b>")));
    EXPECT_FALSE(equivalent(parsed("A=<a+b>"), parsed("A={a+b}")));
    EXPECT_FALSE(equivalent(parsed("A=<a+[b|c]>"), parsed("A=<a+[b+c]>")));
    EXPECT_TRUE(equivalent(parsed("A=<a+[b|c]>"), parsed("A=<a+V=[<b>|W=<c>]>")));
    EXPECT_TRUE(equivalent(parsed("A=<a (op=i)>"), parsed("A=<a (op=g; domain=text)>")));
}

TEST(Walk, FlatAggregation) {
    EXPECT_EQ(visit_labels(parsed("A=<a+b>")), (std::vector<std::string>{"A-root aggregation", "a", "b"}));
}

TEST(Walk, IterationGetsImplicitAggregation) {
    EXPECT_EQ(visit_labels(parsed("A={a}")), (std::vector<std::string>{"A-root iteration", "aggregation", "a"}));
}

TEST(Walk, OrderVisitsFourteenNodes) {
    auto ms = parse_fixture("order.ms");
    int complexCount = 0;
    int named = 0;
    int fieldCount = 0;
    walk(ms, [&](const WalkNode& n) {
        if (n.field) {
            ++fieldCount;
        } else {
            ++complexCount;
            if (n.complex->name) ++named;
        }
    });
    EXPECT_EQ(complexCount + fieldCount, 14);
    EXPECT_EQ(named, 4);
    EXPECT_EQ(fieldCount, 9);
}

TEST(Walk, PreOrderDepths) {
    std::vector<int> depths;
    walk(parsed("A=<a+<b+c>+d>"), [&](const WalkNode& n) { depths.push_back(n.depth); });
    EXPECT_EQ(depths, (std::vector<int>{0, 1, 1, 2, 2, 1}));
}

TEST(Validate, ReportsBrokenInvariants) {
    MessageStructure ms;
    ms.name = "1bad";
    ms.root = make_specialisation({{}});
    auto problems = validate(ms);
    EXPECT_GE(problems.size(), 3u);
    EXPECT_TRUE(validate(parse_fixture("order.ms")).empty());
}

// ---------------------------------------------------------------------------
// Properties over generated trees

TEST(CanonicalProperties, IdempotentAndFieldSequencePreserved) {
    TreeGenerator gen(20261016);
    for (int i = 0; i < 300; ++i) {
        auto ms = gen.structure();
        ASSERT_TRUE(validate(ms).empty()) << print(ms);
        auto once = canonicalize(ms);
        auto twice = canonicalize(once);
        EXPECT_TRUE(structurally_equal(once, twice)) << print(ms);
        EXPECT_EQ(field_names(once), field_names(ms));
        EXPECT_TRUE(equivalent(ms, once));
    }
}

TEST(CanonicalProperties, EquivalenceIsAnEquivalenceRelation) {
    TreeGenerator gen(7, {.maxDepth = 2, .maxListSize = 2, .derivable = false, .withProperties = false});
    // Small trees collide often enough to exercise the positive cases; sugar variants
    // of one tree supply guaranteed-equivalent partners.
    std::vector<MessageStructure> pool;
    for (int i = 0; i < 60; ++i) {
        auto ms = gen.structure();
        pool.push_back(ms);
        pool.push_back(canonicalize(ms));
        auto reparsed = parse(print(ms));
        ASSERT_TRUE(reparsed.has_value());
        pool.push_back(reparsed.value());
    }
    int triples = 0;
    for (std::size_t a = 0; a < pool.size(); a += 3) {
        EXPECT_TRUE(equivalent(pool[a], pool[a]));
        for (std::size_t b = 0; b < pool.size(); b += 2) {
            bool ab = equivalent(pool[a], pool[b]);
            EXPECT_EQ(ab, equivalent(pool[b], pool[a]));
            for (std::size_t c = a % 3; c < pool.size(); c += 7) {
                if (ab && equivalent(pool[b], pool[c])) {
                    EXPECT_TRUE(equivalent(pool[a], pool[c]));
                }
                ++triples;
            }
        }
    }
    EXPECT_GE(triples, 200);
}
