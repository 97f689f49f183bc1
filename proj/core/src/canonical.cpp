#include "msgstruct/canonical.hpp"

namespace msgstruct {

namespace {

bool is_single_aggregation(const SubstructureList& list) {
    if (list.size() != 1) return false;
    const auto* c = list.front().complex();
    return c && c->kind == ComplexKind::Aggregation;
}

void desugar_list(SubstructureList& list);

void desugar_complex(Complex& c) {
    for (auto& list : c.lists) {
        desugar_list(list);
        if (c.kind != ComplexKind::Aggregation && !is_single_aggregation(list)) {
            Complex wrapper = make_aggregation(std::move(list));
            wrapper.span = c.span;
            list = SubstructureList{};
            list.emplace_back(std::move(wrapper));
        }
    }
}

void desugar_list(SubstructureList& list) {
    for (auto& s : list) {
        if (auto* c = s.complex()) desugar_complex(*c);
    }
}

void erase_names(Complex& c) {
    c.name.reset();
    for (auto& list : c.lists) {
        for (auto& s : list) {
            if (auto* inner = s.complex()) erase_names(*inner);
        }
    }
}

enum class Compare { ShapeOnly, Exact };

bool equal_complex(const Complex& a, const Complex& b, Compare mode);

bool equal_list(const SubstructureList& a, const SubstructureList& b, Compare mode) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto* fa = a[i].field();
        const auto* fb = b[i].field();
        if ((fa == nullptr) != (fb == nullptr)) return false;
        if (fa) {
            if (fa->name != fb->name) return false;
            if (mode == Compare::Exact && !(fa->properties == fb->properties)) return false;
        } else if (!equal_complex(*a[i].complex(), *b[i].complex(), mode)) {
            return false;
        }
    }
    return true;
}

bool equal_complex(const Complex& a, const Complex& b, Compare mode) {
    if (a.kind != b.kind || a.lists.size() != b.lists.size()) return false;
    if (mode == Compare::Exact && a.name != b.name) return false;
    for (std::size_t i = 0; i < a.lists.size(); ++i) {
        if (!equal_list(a.lists[i], b.lists[i], mode)) return false;
    }
    return true;
}

void walk_complex(const Complex& c, int depth, bool root, const WalkVisitor& visit) {
    visit(WalkNode{&c, nullptr, depth, root});
    for (const auto& list : c.lists) {
        for (const auto& s : list) {
            if (const auto* f = s.field()) {
                visit(WalkNode{nullptr, f, depth + 1, false});
            } else {
                walk_complex(*s.complex(), depth + 1, false, visit);
            }
        }
    }
}

}  // namespace

MessageStructure desugar(const MessageStructure& ms) {
    MessageStructure out = ms;
    desugar_complex(out.root);
    return out;
}

MessageStructure canonicalize(const MessageStructure& ms) {
    MessageStructure out = desugar(ms);
    erase_names(out.root);
    return out;
}

bool equivalent(const MessageStructure& a, const MessageStructure& b) {
    if (a.name != b.name) return false;
    return equal_complex(canonicalize(a).root, canonicalize(b).root, Compare::ShapeOnly);
}

bool structurally_equal(const MessageStructure& a, const MessageStructure& b) {
    return a.name == b.name && equal_complex(a.root, b.root, Compare::Exact);
}

void walk(const MessageStructure& ms, const WalkVisitor& visit) {
    MessageStructure d = desugar(ms);
    walk_complex(d.root, 0, true, visit);
}

void walk_as_is(const MessageStructure& ms, const WalkVisitor& visit) { walk_complex(ms.root, 0, true, visit); }

std::vector<std::string> field_names(const MessageStructure& ms) {
    std::vector<std::string> out;
    walk_as_is(ms, [&](const WalkNode& n) {
        if (n.field) out.push_back(n.field->name);
    });
    return out;
}

std::vector<const Field*> fields(const MessageStructure& ms) {
    std::vector<const Field*> out;
    walk_as_is(ms, [&](const WalkNode& n) {
        if (n.field) out.push_back(n.field);
    });
    return out;
}

}  // namespace msgstruct
