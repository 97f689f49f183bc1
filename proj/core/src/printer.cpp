#include "msgstruct/printer.hpp"

#include <algorithm>
#include <array>

namespace msgstruct {

namespace {

std::string quoted(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out += '\\';
            out += c;
        } else if (c == '\n') {
            out += "\\n";
        } else {
            out += c;
        }
    }
    out += '"';
    return out;
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

// Entries in the normative order; the first three are the tabular columns.
struct AnnotationCells {
    std::array<std::optional<std::string>, 3> columns;  // op, domain, example
    std::vector<std::string> rest;
};

AnnotationCells cells_for(const FieldProperties& p) {
    AnnotationCells c;
    if (p.acquisition) c.columns[0] = std::string("op=") + acquisition_letter(p.acquisition->kind);
    if (p.domain) c.columns[1] = "domain=" + to_string(*p.domain);
    if (p.example) c.columns[2] = "example=" + quoted(*p.example);
    if (p.description) c.rest.push_back("desc=" + quoted(*p.description));
    if (p.label) c.rest.push_back("label=" + quoted(*p.label));
    if (p.memoryLink) c.rest.push_back("link=" + *p.memoryLink);
    if (p.compulsory) c.rest.push_back("required=" + bool_text(*p.compulsory));
    if (p.initialisation) c.rest.push_back("init=" + quoted(to_string(*p.initialisation)));
    if (p.visible) c.rest.push_back("visible=" + bool_text(*p.visible));
    if (p.acquisition && p.acquisition->formula) c.rest.push_back("formula=" + quoted(to_string(*p.acquisition->formula)));
    return c;
}

/// The list to print for an iteration or variant: an anonymous aggregation standing
/// alone is implicit, unless its own content is a lone aggregation (dropping the
/// brackets would then lose a level).
const SubstructureList& effective_list(const Complex& owner, const SubstructureList& list) {
    if (owner.kind == ComplexKind::Aggregation || list.size() != 1) return list;
    const Complex* inner = list.front().complex();
    if (!inner || inner->kind != ComplexKind::Aggregation || inner->name) return list;
    const SubstructureList& content = inner->children();
    bool loneAggregation = content.size() == 1 && content.front().complex() &&
                           content.front().complex()->kind == ComplexKind::Aggregation;
    return loneAggregation ? list : content;
}

char opener(ComplexKind k) {
    switch (k) {
        case ComplexKind::Aggregation: return '<';
        case ComplexKind::Iteration: return '{';
        case ComplexKind::Specialisation: return '[';
    }
    return '<';
}

char closer(ComplexKind k) {
    switch (k) {
        case ComplexKind::Aggregation: return '>';
        case ComplexKind::Iteration: return '}';
        case ComplexKind::Specialisation: return ']';
    }
    return '>';
}

// ---------------------------------------------------------------------------
// Compact

void compact_list(const SubstructureList& list, std::string& out);

void compact_complex(const Complex& c, std::string& out) {
    if (c.name) out += *c.name + '=';
    out += opener(c.kind);
    for (std::size_t i = 0; i < c.lists.size(); ++i) {
        if (i) out += '|';
        compact_list(effective_list(c, c.lists[i]), out);
    }
    out += closer(c.kind);
}

void compact_list(const SubstructureList& list, std::string& out) {
    for (std::size_t i = 0; i < list.size(); ++i) {
        if (i) out += '+';
        if (const auto* f = list[i].field()) {
            out += f->name;
            if (!f->properties.empty()) out += ' ' + print_annotation(f->properties);
        } else {
            compact_complex(*list[i].complex(), out);
        }
    }
}

// ---------------------------------------------------------------------------
// Tabular

struct Row {
    std::string text;
    const Field* field = nullptr;
    std::string suffix;
};

class TabularLayout {
public:
    std::string render(const MessageStructure& ms) {
        push_row(0, ms.name + " =");
        complex(ms.root, 0);
        return finish();
    }

private:
    void push_row(int depth, std::string text, const Field* field = nullptr) {
        int indent = std::max(0, 2 * depth - static_cast<int>(pending_.size()));
        rows_.push_back(Row{std::string(static_cast<std::size_t>(indent), ' ') + pending_ + text, field, {}});
        pending_.clear();
    }

    void complex(const Complex& c, int depth) {
        if (c.name) push_row(depth, *c.name + " =");
        pending_ += opener(c.kind);
        pending_ += ' ';
        for (std::size_t i = 0; i < c.lists.size(); ++i) {
            if (i) pending_ += "| ";
            list(effective_list(c, c.lists[i]), depth + 1);
        }
        Row& last = rows_.back();
        if (last.field && last.suffix.empty()) {
            last.suffix = std::string(1, closer(c.kind));
        } else {
            push_row(depth, std::string(1, closer(c.kind)));
        }
    }

    void list(const SubstructureList& items, int depth) {
        for (std::size_t i = 0; i < items.size(); ++i) {
            if (i) {
                Row& last = rows_.back();
                last.suffix += last.suffix.empty() ? "+" : " +";
            }
            if (const auto* f = items[i].field()) {
                push_row(depth, f->name, f);
            } else {
                complex(*items[i].complex(), depth);
            }
        }
    }

    std::string finish() {
        std::size_t textWidth = 0;
        std::array<std::size_t, 3> widths{};
        bool anyAnnotation = false;
        for (const auto& r : rows_) {
            if (!r.field || r.field->properties.empty()) continue;
            anyAnnotation = true;
            textWidth = std::max(textWidth, r.text.size());
            auto cells = cells_for(r.field->properties);
            for (std::size_t k = 0; k < 3; ++k) {
                if (cells.columns[k]) widths[k] = std::max(widths[k], cells.columns[k]->size() + 1);
            }
        }
        // Column start offsets inside the annotation, '(' at offset 0.
        std::array<std::size_t, 3> pos{};
        pos[0] = 1;
        for (std::size_t k = 1; k < 3; ++k) pos[k] = pos[k - 1] + (widths[k - 1] ? widths[k - 1] + 1 : 0);

        std::string out;
        if (anyAnnotation) {
            std::string header = "# FIELD";
            std::size_t base = textWidth + 1;
            const std::array<std::string_view, 3> labels = {"OP", "DOMAIN", "EXAMPLE"};
            for (std::size_t k = 0; k < 3; ++k) {
                if (!widths[k]) continue;
                std::size_t col = base + pos[k];
                if (header.size() < col) header.resize(col, ' ');
                else header += ' ';
                header += labels[k];
            }
            out += header + '\n';
        }
        for (const auto& r : rows_) {
            std::string line = r.text;
            if (r.field && !r.field->properties.empty()) {
                line.resize(textWidth, ' ');
                line += ' ' + aligned_annotation(cells_for(r.field->properties), pos);
            }
            if (!r.suffix.empty()) line += ' ' + r.suffix;
            out += line + '\n';
        }
        return out;
    }

    static std::string aligned_annotation(const AnnotationCells& cells, const std::array<std::size_t, 3>& pos) {
        std::string a = "(";
        bool any = false;
        for (std::size_t k = 0; k < 3; ++k) {
            if (!cells.columns[k]) continue;
            if (any) a += ';';
            if (a.size() < pos[k]) a.resize(pos[k], ' ');
            else if (any) a += ' ';
            a += *cells.columns[k];
            any = true;
        }
        for (const auto& r : cells.rest) {
            if (any) a += "; ";
            a += r;
            any = true;
        }
        return a + ')';
    }

    std::vector<Row> rows_;
    std::string pending_;
};

}  // namespace

std::string print_annotation(const FieldProperties& props) {
    if (props.empty()) return {};
    auto cells = cells_for(props);
    std::string out = "(";
    bool any = false;
    auto add = [&](const std::string& entry) {
        if (any) out += "; ";
        out += entry;
        any = true;
    };
    for (const auto& c : cells.columns) {
        if (c) add(*c);
    }
    for (const auto& r : cells.rest) add(r);
    return out + ')';
}

std::string print(const MessageStructure& ms, PrintStyle style) {
    if (style == PrintStyle::Tabular) return TabularLayout{}.render(ms);
    std::string out = ms.name + '=';
    compact_complex(ms.root, out);
    return out + '\n';
}

}  // namespace msgstruct
