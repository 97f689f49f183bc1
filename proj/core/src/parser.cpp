#include "msgstruct/parser.hpp"

#include <cctype>
#include <set>

namespace msgstruct {

namespace {

enum class Tok { Name, Equals, Plus, Pipe, Open, Close, Annotation, StrayParen, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;  // name, bracket character or raw annotation content
    SourceSpan span;
    SourceSpan contentStart;  // annotations: position of the first content character
};

bool is_special(char c) {
    switch (c) {
        case '=': case '+': case '<': case '>': case '{': case '}':
        case '[': case ']': case '|': case '(': case ')': case '#':
        case '\n': case '\r':
            return true;
        default:
            return false;
    }
}

bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v'; }

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    Token next() {
        skip_trivia();
        Token t;
        if (pos_ >= text_.size()) {
            t.kind = Tok::End;
            t.span = {line_, col_, line_, col_};
            return t;
        }
        int startLine = line_;
        int startCol = col_;
        char c = text_[pos_];
        auto single = [&](Tok k) {
            t.kind = k;
            t.text = std::string(1, c);
            advance();
            t.span = {startLine, startCol, startLine, startCol};
            return t;
        };
        switch (c) {
            case '=': return single(Tok::Equals);
            case '+': return single(Tok::Plus);
            case '|': return single(Tok::Pipe);
            case '<': case '{': case '[': return single(Tok::Open);
            case '>': case '}': case ']': return single(Tok::Close);
            case ')': return single(Tok::StrayParen);
            case '(': return annotation(startLine, startCol);
            default: break;
        }
        // Name: up to the next special character, whitespace runs collapsed.
        std::string raw;
        int endLine = line_;
        int endCol = col_;
        bool pendingSpace = false;
        while (pos_ < text_.size() && !is_special(text_[pos_])) {
            char ch = text_[pos_];
            if (ch == ' ' || ch == '\t' || ch == '\f' || ch == '\v') {
                pendingSpace = true;
            } else {
                if (pendingSpace && !raw.empty()) raw += ' ';
                pendingSpace = false;
                raw += ch;
                endLine = line_;
                endCol = col_;
            }
            advance();
        }
        t.kind = Tok::Name;
        t.text = std::move(raw);
        t.span = {startLine, startCol, endLine, endCol};
        return t;
    }

    [[nodiscard]] SourceSpan here() const { return {line_, col_, line_, col_}; }

private:
    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip_trivia() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (is_blank(c)) {
                advance();
            } else if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance();
            } else {
                break;
            }
        }
    }

    Token annotation(int startLine, int startCol) {
        Token t;
        t.kind = Tok::Annotation;
        advance();  // '('
        t.contentStart = {line_, col_, line_, col_};
        int depth = 1;
        bool inString = false;
        std::string content;
        while (pos_ < text_.size()) {
            char ch = text_[pos_];
            if (inString) {
                if (ch == '\\' && pos_ + 1 < text_.size()) {
                    content += ch;
                    advance();
                    content += text_[pos_];
                    advance();
                    continue;
                }
                if (ch == '"') inString = false;
            } else if (ch == '"') {
                inString = true;
            } else if (ch == '(') {
                ++depth;
            } else if (ch == ')') {
                if (--depth == 0) {
                    t.span = {startLine, startCol, line_, col_};
                    advance();
                    t.text = std::move(content);
                    return t;
                }
            }
            content += ch;
            advance();
        }
        // Unterminated: report as a malformed annotation covering the rest of the input.
        t.kind = Tok::Annotation;
        t.text = std::move(content);
        t.span = {startLine, startCol, line_, col_};
        t.contentStart = {-1, -1, -1, -1};
        return t;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

SourceSpan join(const SourceSpan& a, const SourceSpan& b) { return {a.startLine, a.startCol, b.endLine, b.endCol}; }

char closer_for(char open) {
    switch (open) {
        case '<': return '>';
        case '{': return '}';
        default: return ']';
    }
}

ComplexKind kind_for(char open) {
    switch (open) {
        case '<': return ComplexKind::Aggregation;
        case '{': return ComplexKind::Iteration;
        default: return ComplexKind::Specialisation;
    }
}

struct Abort {};

class Parser {
public:
    explicit Parser(std::string_view text) : lexer_(text) { shift(); }

    Result<MessageStructure> run() {
        try {
            MessageStructure ms = message();
            if (has_errors(diags_)) return Result<MessageStructure>::failure(std::move(diags_));
            return {std::move(ms), std::move(diags_)};
        } catch (const Abort&) {
            return Result<MessageStructure>::failure(std::move(diags_));
        }
    }

private:
    void shift() {
        previous_ = current_;
        current_ = lexer_.next();
    }

    void error(std::string_view code, std::string message, SourceSpan span) {
        diags_.push_back(Diagnostic{Severity::Error, std::string(code), std::move(message), span});
    }

    [[noreturn]] void fatal(std::string_view code, std::string message, SourceSpan span) {
        error(code, std::move(message), span);
        throw Abort{};
    }

    std::string checked_name(const Token& t, std::string_view what) {
        if (!is_identifier(t.text)) {
            fatal(parse_code::InvalidName,
                  std::string(what) + " '" + t.text + "' is not a valid name (letters, digits, spaces, hyphens; "
                                      "starting with a letter)",
                  t.span);
        }
        return t.text;
    }

    [[noreturn]] void unexpected(std::string_view expected) {
        if (current_.kind == Tok::End) {
            fatal(parse_code::UnexpectedToken, "expected " + std::string(expected) + " but reached end of input",
                  current_.span);
        }
        if (current_.kind == Tok::StrayParen) {
            fatal(parse_code::UnbalancedBracket, "unmatched ')'", current_.span);
        }
        std::string got = current_.kind == Tok::Name ? "name '" + current_.text + "'"
                          : current_.kind == Tok::Annotation ? std::string("'('")
                                                             : "'" + current_.text + "'";
        fatal(parse_code::UnexpectedToken, "expected " + std::string(expected) + ", found " + got, current_.span);
    }

    MessageStructure message() {
        if (current_.kind != Tok::Name) unexpected("a structure name");
        Token nameTok = current_;
        MessageStructure ms;
        ms.name = checked_name(nameTok, "structure name");
        shift();
        if (current_.kind != Tok::Equals) unexpected("'=' after the structure name");
        Token eq = current_;
        shift();

        if (current_.kind == Tok::Open) {
            Token open = current_;
            Complex root = complex(std::nullopt, open.span);
            if (root.kind == ComplexKind::Specialisation) {
                fatal(parse_code::SpecialisationAtRoot,
                      "the initial substructure must be an aggregation or an iteration, not a specialisation",
                      root.span);
            }
            ms.root = std::move(root);
        } else if (current_.kind == Tok::Name) {
            error(parse_code::NameWithoutComplex,
                  "'" + ms.name + " =' must be followed by '<', '{' or '['; enclose the substructure list in brackets",
                  join(nameTok.span, eq.span));
            // Keep going as if the list were bracketed so later problems are reported too.
            SubstructureList list = substructure_list();
            ms.root = make_aggregation(std::move(list));
        } else {
            fatal(parse_code::NameWithoutComplex, "'" + ms.name + " =' must be followed by '<' or '{'",
                  join(nameTok.span, eq.span));
        }

        if (current_.kind != Tok::End) {
            if (current_.kind == Tok::Close || current_.kind == Tok::StrayParen) {
                fatal(parse_code::UnbalancedBracket, "unmatched '" + current_.text + "'", current_.span);
            }
            unexpected("end of input");
        }
        ms.span = join(nameTok.span, previous_.span);
        return ms;
    }

    Complex complex(std::optional<std::string> name, SourceSpan start) {
        Token open = current_;
        char opener = open.text.front();
        shift();
        Complex c;
        c.kind = kind_for(opener);
        c.name = std::move(name);
        c.lists.push_back(substructure_list_in(open));
        while (current_.kind == Tok::Pipe) {
            if (c.kind != ComplexKind::Specialisation) unexpected("'+' or '" + std::string(1, closer_for(opener)) + "'");
            shift();
            c.lists.push_back(substructure_list_in(open));
        }
        if (current_.kind == Tok::End) {
            fatal(parse_code::UnbalancedBracket, "'" + open.text + "' is never closed", open.span);
        }
        if (current_.kind == Tok::Close || current_.kind == Tok::StrayParen) {
            if (current_.text.front() != closer_for(opener)) {
                fatal(parse_code::UnbalancedBracket,
                      "'" + open.text + "' closed by '" + current_.text + "'; expected '" +
                          std::string(1, closer_for(opener)) + "'",
                      current_.span);
            }
        } else {
            unexpected(c.kind == ComplexKind::Specialisation ? "'+', '|' or ']'"
                                                             : "'+' or '" + std::string(1, closer_for(opener)) + "'");
        }
        c.span = join(start, current_.span);
        shift();
        return c;
    }

    SubstructureList substructure_list_in(const Token& open) {
        if (current_.kind == Tok::Close || current_.kind == Tok::Pipe) {
            if (current_.kind == Tok::Pipe || current_.text.front() == closer_for(open.text.front())) {
                fatal(parse_code::EmptyList, "empty substructure list", join(open.span, current_.span));
            }
        }
        if (current_.kind == Tok::End) {
            fatal(parse_code::UnbalancedBracket, "'" + open.text + "' is never closed", open.span);
        }
        return substructure_list();
    }

    SubstructureList substructure_list() {
        SubstructureList list;
        list.push_back(substructure());
        while (current_.kind == Tok::Plus) {
            shift();
            list.push_back(substructure());
        }
        return list;
    }

    Substructure substructure() {
        if (current_.kind == Tok::Open) return complex(std::nullopt, current_.span);
        if (current_.kind != Tok::Name) unexpected("a field or substructure");

        Token nameTok = current_;
        shift();
        if (current_.kind == Tok::Equals) {
            Token eq = current_;
            std::string name = checked_name(nameTok, "substructure name");
            shift();
            if (current_.kind == Tok::Open) return complex(std::move(name), nameTok.span);
            std::string msg = "'" + name + " =' must be followed by '<', '{' or '['";
            if (current_.kind != Tok::Name) fatal(parse_code::NameWithoutComplex, msg, join(nameTok.span, eq.span));
            error(parse_code::NameWithoutComplex, msg + "; a bare name after '=' is ambiguous",
                  join(nameTok.span, eq.span));
            return make_aggregation(substructure_list(), std::move(name));
        }

        Field f;
        f.name = checked_name(nameTok, "field name");
        f.span = nameTok.span;
        if (current_.kind == Tok::Annotation) {
            Token ann = current_;
            if (ann.contentStart.startLine < 0) {
                fatal(parse_code::MalformedAnnotation, "annotation '(' is never closed", ann.span);
            }
            auto props = parse_annotation(ann.text, ann.contentStart);
            if (!props) {
                diags_.insert(diags_.end(), props.diagnostics().begin(), props.diagnostics().end());
                throw Abort{};
            }
            f.properties = props.value();
            f.span = join(nameTok.span, ann.span);
            shift();
        }
        return f;
    }

    Lexer lexer_;
    Token current_;
    Token previous_;
    Diagnostics diags_;
};

// ---------------------------------------------------------------------------
// Annotations

std::string_view trim(std::string_view s) {
    while (!s.empty() && is_blank(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_blank(s.back())) s.remove_suffix(1);
    return s;
}

class AnnotationParser {
public:
    AnnotationParser(std::string_view text, SourceSpan origin) : text_(text), origin_(origin) {}

    Result<FieldProperties> run() {
        std::size_t start = 0;
        int depth = 0;
        bool inString = false;
        for (std::size_t i = 0; i <= text_.size(); ++i) {
            if (i < text_.size()) {
                char c = text_[i];
                if (inString) {
                    if (c == '\\') {
                        ++i;
                    } else if (c == '"') {
                        inString = false;
                    }
                    continue;
                }
                if (c == '"') {
                    inString = true;
                    continue;
                }
                if (c == '(') ++depth;
                if (c == ')') --depth;
                if (c != ';' || depth != 0) continue;
            }
            entry(start, i);
            if (failed_) return Result<FieldProperties>::failure(std::move(diags_));
            start = i + 1;
        }
        if (formula_) {
            if (!props_.acquisition || props_.acquisition->kind != AcquisitionKind::Derivation) {
                return fail(parse_code::MalformedAnnotation, "'formula' is only allowed with op=d", formulaOffset_);
            }
            props_.acquisition->formula = std::move(formula_);
        }
        return {props_, std::move(diags_)};
    }

private:
    SourceSpan at(std::size_t offset) const {
        if (!origin_.known()) return {};
        int line = origin_.startLine;
        int col = origin_.startCol;
        for (std::size_t i = 0; i < offset && i < text_.size(); ++i) {
            if (text_[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        return {line, col, line, col};
    }

    Result<FieldProperties> fail(std::string_view code, std::string message, std::size_t offset) {
        diags_.push_back(Diagnostic{Severity::Error, std::string(code), std::move(message), at(offset)});
        return Result<FieldProperties>::failure(std::move(diags_));
    }

    void error(std::string_view code, std::string message, std::size_t offset) {
        diags_.push_back(Diagnostic{Severity::Error, std::string(code), std::move(message), at(offset)});
        failed_ = true;
    }

    // Quoted strings accept \" \\ and \n escapes; bare values are trimmed.
    std::optional<std::string> value_text(std::string_view raw, std::size_t offset) {
        std::string_view v = trim(raw);
        if (v.empty() || v.front() != '"') return std::string(v);
        std::string out;
        std::size_t i = 1;
        for (; i < v.size(); ++i) {
            char c = v[i];
            if (c == '\\' && i + 1 < v.size()) {
                char e = v[++i];
                out += e == 'n' ? '\n' : e;
            } else if (c == '"') {
                break;
            } else {
                out += c;
            }
        }
        if (i >= v.size()) {
            error(parse_code::MalformedAnnotation, "unterminated string", offset);
            return std::nullopt;
        }
        if (!trim(v.substr(i + 1)).empty()) {
            error(parse_code::MalformedAnnotation, "unexpected text after closing quote", offset);
            return std::nullopt;
        }
        return out;
    }

    std::optional<Domain> domain(std::string_view v, std::size_t offset) {
        if (auto basic = basic_domain_from(v)) return Domain{*basic};
        std::string_view literals;
        bool isEnum = false;
        if (v.substr(0, 4) == "ref:") {
            std::string type(trim(v.substr(4)));
            if (!is_identifier(type)) {
                error(parse_code::MalformedAnnotation, "invalid business object type '" + type + "'", offset);
                return std::nullopt;
            }
            return Domain{ReferenceDomain{type}};
        }
        if (v.substr(0, 5) == "enum:") {
            literals = v.substr(5);
            isEnum = true;
        } else if (v.size() >= 2 && v.front() == '[' && v.back() == ']') {
            literals = v.substr(1, v.size() - 2);
            isEnum = true;
        }
        if (isEnum) {
            EnumeratedDomain e;
            std::string current;
            auto flush = [&] {
                if (!current.empty()) e.literals.push_back(std::move(current));
                current.clear();
            };
            for (char c : literals) {
                if (c == '|' || is_blank(c)) {
                    flush();
                } else {
                    current += c;
                }
            }
            flush();
            if (e.literals.empty()) {
                error(parse_code::MalformedAnnotation, "enumerated domain has no literals", offset);
                return std::nullopt;
            }
            std::set<std::string> seen;
            for (const auto& lit : e.literals) {
                if (!is_identifier(lit)) {
                    error(parse_code::MalformedAnnotation, "invalid enumeration literal '" + lit + "'", offset);
                    return std::nullopt;
                }
                if (!seen.insert(lit).second) {
                    error(parse_code::MalformedAnnotation, "duplicate enumeration literal '" + lit + "'", offset);
                    return std::nullopt;
                }
            }
            return Domain{std::move(e)};
        }
        // A bare business-object type, as written in tabular layouts ("Client").
        if (is_identifier(v)) return Domain{ReferenceDomain{std::string(v)}};
        error(parse_code::MalformedAnnotation, "unknown domain '" + std::string(v) + "'", offset);
        return std::nullopt;
    }

    std::optional<bool> boolean(std::string_view key, std::string_view v, std::size_t offset) {
        if (v == "true") return true;
        if (v == "false") return false;
        error(parse_code::MalformedAnnotation, "'" + std::string(key) + "' expects true or false", offset);
        return std::nullopt;
    }

    std::optional<Formula> formula(std::string_view key, std::string_view v, std::size_t offset) {
        auto f = parse_formula(v);
        if (!f) {
            error(parse_code::MalformedAnnotation,
                  "invalid " + std::string(key) + " formula: " + f.diagnostics().front().message, offset);
            return std::nullopt;
        }
        return f.value();
    }

    void entry(std::size_t begin, std::size_t end) {
        std::string_view raw = text_.substr(begin, end - begin);
        std::size_t lead = 0;
        while (lead < raw.size() && is_blank(raw[lead])) ++lead;
        std::size_t offset = begin + lead;
        if (trim(raw).empty()) return;

        auto eq = raw.find('=');
        if (eq == std::string_view::npos) {
            error(parse_code::MalformedAnnotation, "expected 'key=value', found '" + std::string(trim(raw)) + "'",
                  offset);
            return;
        }
        std::string key(trim(raw.substr(0, eq)));
        if (!seen_.insert(key).second) {
            error(parse_code::MalformedAnnotation, "property '" + key + "' given twice", offset);
            return;
        }
        auto text = value_text(raw.substr(eq + 1), offset);
        if (!text) return;
        std::string_view v = *text;

        if (key == "op") {
            auto kind = v.size() == 1 ? acquisition_from_letter(v.front()) : std::nullopt;
            if (!kind) {
                error(parse_code::UnknownAcquisition,
                      "unknown acquisition operation '" + std::string(v) + "' (expected i, g or d)", offset);
                return;
            }
            props_.acquisition = AcquisitionOp{*kind, std::nullopt};
        } else if (key == "formula") {
            formula_ = formula(key, v, offset);
            formulaOffset_ = offset;
        } else if (key == "domain") {
            auto d = domain(v, offset);
            if (d) props_.domain = std::move(d);
        } else if (key == "example") {
            props_.example = std::string(v);
        } else if (key == "desc") {
            props_.description = std::string(v);
        } else if (key == "label") {
            props_.label = std::string(v);
        } else if (key == "link") {
            auto dot = v.find('.');
            if (dot == std::string_view::npos || !is_identifier(v.substr(0, dot)) ||
                !is_identifier(v.substr(dot + 1))) {
                error(parse_code::MalformedAnnotation, "'link' expects Entity.attribute, found '" + std::string(v) + "'",
                      offset);
                return;
            }
            props_.memoryLink = std::string(v);
        } else if (key == "required") {
            if (auto b = boolean(key, v, offset)) props_.compulsory = *b;
        } else if (key == "visible") {
            if (auto b = boolean(key, v, offset)) props_.visible = *b;
        } else if (key == "init") {
            if (auto f = formula(key, v, offset)) props_.initialisation = std::move(f);
        } else {
            error(parse_code::MalformedAnnotation, "unknown property '" + key + "'", offset);
        }
    }

    std::string_view text_;
    SourceSpan origin_;
    FieldProperties props_;
    std::optional<Formula> formula_;
    std::size_t formulaOffset_ = 0;
    std::set<std::string> seen_;
    Diagnostics diags_;
    bool failed_ = false;
};

}  // namespace

Result<MessageStructure> parse(std::string_view text) { return Parser(text).run(); }

Result<FieldProperties> parse_annotation(std::string_view text, SourceSpan origin) {
    return AnnotationParser(text, origin).run();
}

}  // namespace msgstruct
