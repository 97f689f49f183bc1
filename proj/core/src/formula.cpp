#include "msgstruct/formula.hpp"

#include <cctype>

namespace msgstruct {

Formula Formula::binary(char op, Formula lhs, Formula rhs) {
    Formula f{Kind::Binary, std::string(1, op), {}};
    f.operands.push_back(std::move(lhs));
    f.operands.push_back(std::move(rhs));
    return f;
}

Formula Formula::negate(Formula operand) {
    Formula f{Kind::Negate, {}, {}};
    f.operands.push_back(std::move(operand));
    return f;
}

namespace {

bool is_name_char(char c) {
    auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) || c == '_' || u >= 0x80;
}

class FormulaParser {
public:
    explicit FormulaParser(std::string_view text) : text_(text) {}

    Result<Formula> run() {
        skip_ws();
        if (at_end()) return fail("empty formula");
        auto f = expr();
        if (!error_.empty()) return fail(error_);
        skip_ws();
        if (!at_end()) return fail(std::string("unexpected '") + text_[pos_] + "' in formula");
        return f;
    }

private:
    Result<Formula> fail(std::string msg) {
        return Result<Formula>::failure({Diagnostic{Severity::Error, "P005", std::move(msg), {}}});
    }

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return at_end() ? '\0' : text_[pos_]; }
    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    void set_error(std::string msg) {
        if (error_.empty()) error_ = std::move(msg);
    }

    Formula expr() {
        Formula lhs = term();
        for (;;) {
            skip_ws();
            char c = peek();
            if (c != '+' && c != '-') return lhs;
            ++pos_;
            lhs = Formula::binary(c, std::move(lhs), term());
        }
    }

    Formula term() {
        Formula lhs = factor();
        for (;;) {
            skip_ws();
            char c = peek();
            if (c != '*' && c != '/') return lhs;
            ++pos_;
            lhs = Formula::binary(c, std::move(lhs), factor());
        }
    }

    Formula factor() {
        skip_ws();
        if (!error_.empty() || at_end()) {
            set_error("formula ends unexpectedly");
            return {};
        }
        char c = peek();
        if (c == '-') {
            ++pos_;
            return Formula::negate(factor());
        }
        if (c == '(') {
            ++pos_;
            Formula inner = expr();
            skip_ws();
            if (peek() != ')') {
                set_error("missing ')' in formula");
                return {};
            }
            ++pos_;
            return inner;
        }
        if (c == ':') {
            ++pos_;
            return Formula::field_ref(field_name());
        }
        if (c == '\'') return string_literal();
        if (std::isdigit(static_cast<unsigned char>(c))) return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return call();
        set_error(std::string("unexpected '") + c + "' in formula");
        return {};
    }

    std::string field_name() {
        std::size_t start = pos_;
        while (!at_end()) {
            char c = text_[pos_];
            if (is_name_char(c)) {
                ++pos_;
            } else if (c == ' ' || c == '\t') {
                // Interior whitespace only when more name follows.
                std::size_t p = pos_;
                while (p < text_.size() && (text_[p] == ' ' || text_[p] == '\t')) ++p;
                if (p < text_.size() && is_name_char(text_[p])) {
                    pos_ = p;
                } else {
                    break;
                }
            } else if (c == '-' && pos_ > start && is_name_char(text_[pos_ - 1]) && pos_ + 1 < text_.size() &&
                       is_name_char(text_[pos_ + 1])) {
                ++pos_;
            } else {
                break;
            }
        }
        std::string name(text_.substr(start, pos_ - start));
        if (name.empty()) set_error("missing field name after ':'");
        return name;
    }

    Formula string_literal() {
        ++pos_;
        std::string value;
        while (!at_end() && text_[pos_] != '\'') value += text_[pos_++];
        if (at_end()) {
            set_error("unterminated string literal in formula");
            return {};
        }
        ++pos_;
        return Formula::string(std::move(value));
    }

    Formula number() {
        std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (peek() == '.' && pos_ + 1 < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
            ++pos_;
            while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        }
        return Formula::number(std::string(text_.substr(start, pos_ - start)));
    }

    Formula call() {
        std::size_t start = pos_;
        while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
        std::string fn(text_.substr(start, pos_ - start));
        skip_ws();
        if (peek() != '(') {
            set_error("expected '(' after function name '" + fn + "'");
            return {};
        }
        ++pos_;
        std::vector<Formula> args;
        skip_ws();
        if (peek() == ')') {
            ++pos_;
            return Formula::call(std::move(fn), std::move(args));
        }
        for (;;) {
            args.push_back(expr());
            if (!error_.empty()) return {};
            skip_ws();
            if (peek() == ',') {
                ++pos_;
                continue;
            }
            if (peek() == ')') {
                ++pos_;
                break;
            }
            set_error("expected ',' or ')' in call to '" + fn + "'");
            return {};
        }
        return Formula::call(std::move(fn), std::move(args));
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::string error_;
};

int precedence(const Formula& f) {
    if (f.kind != Formula::Kind::Binary) return 3;
    return (f.text == "+" || f.text == "-") ? 1 : 2;
}

void render(const Formula& f, std::string& out) {
    using K = Formula::Kind;
    switch (f.kind) {
        case K::FieldRef: out += ':' + f.text; return;
        case K::Number: out += f.text; return;
        case K::String: out += '\'' + f.text + '\''; return;
        case K::Negate: {
            out += '-';
            const Formula& operand = f.operands.front();
            bool wrap = operand.kind == K::Binary || operand.kind == K::Negate;
            if (wrap) out += '(';
            render(operand, out);
            if (wrap) out += ')';
            return;
        }
        case K::Call: {
            out += f.text + '(';
            for (std::size_t i = 0; i < f.operands.size(); ++i) {
                if (i) out += ", ";
                render(f.operands[i], out);
            }
            out += ')';
            return;
        }
        case K::Binary: {
            const Formula& lhs = f.operands[0];
            const Formula& rhs = f.operands[1];
            int p = precedence(f);
            bool wrapL = precedence(lhs) < p;
            bool wrapR = precedence(rhs) <= p;
            if (wrapL) out += '(';
            render(lhs, out);
            if (wrapL) out += ')';
            out += ' ' + f.text + ' ';
            if (wrapR) out += '(';
            render(rhs, out);
            if (wrapR) out += ')';
            return;
        }
    }
}

void collect_refs(const Formula& f, std::vector<std::string>& out) {
    if (f.kind == Formula::Kind::FieldRef) out.push_back(f.text);
    for (const auto& op : f.operands) collect_refs(op, out);
}

}  // namespace

Result<Formula> parse_formula(std::string_view text) { return FormulaParser(text).run(); }

std::string to_string(const Formula& f) {
    std::string out;
    render(f, out);
    return out;
}

std::vector<std::string> field_refs(const Formula& f) {
    std::vector<std::string> out;
    collect_refs(f, out);
    return out;
}

}  // namespace msgstruct
