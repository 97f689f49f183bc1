#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "msgstruct/canonical.hpp"
#include "msgstruct/derive.hpp"
#include "msgstruct/lint.hpp"
#include "msgstruct/parser.hpp"
#include "msgstruct/printer.hpp"
#include "msgstruct/serialize.hpp"
#include "msgstruct/uifrag.hpp"

namespace msgstruct::cli {

namespace {

namespace fs = std::filesystem;

struct UsageError {
    std::string message;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError{"cannot read '" + path + "'"};
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void report(std::ostream& err, const Diagnostics& diags, std::string_view file) {
    for (const auto& d : diags) err << format_diagnostic(d, file) << '\n';
}

/// Parses `path`; on failure prints the diagnostics and returns nullopt.
std::optional<MessageStructure> load(const std::string& path, std::ostream& err) {
    auto result = parse(read_file(path));
    report(err, result.diagnostics(), path);
    if (!result) return std::nullopt;
    return std::move(result).value();
}

Phase phase_or_throw(const std::string& s) {
    auto p = phase_from(s);
    if (!p) throw UsageError{"unknown phase '" + s + "' (expected analysis, design-memory or design-interface)"};
    return *p;
}

struct Options {
    std::string configPath;

    // parse / canon / check / fragment
    std::string file;
    bool json = false;
    bool tabular = false;

    // check / derive
    std::string phase = "analysis";
    bool infoMissing = false;

    // equiv
    std::string fileA;
    std::string fileB;

    // derive
    std::string manifest;
    std::string format = "plantuml";
    bool force = false;
};

LintConfig load_config(const Options& opts) {
    std::string path = opts.configPath;
    if (path.empty()) {
        if (const char* env = std::getenv("MSGSTRUCT_CONFIG")) path = env;
    }
    LintConfig cfg;
    if (!path.empty()) {
        auto parsed = LintConfig::from_json(read_file(path));
        if (!parsed) throw UsageError{path + ": " + parsed.diagnostics().front().message};
        cfg = parsed.value();
    }
    if (opts.infoMissing) cfg.infoOnMissing = true;
    return cfg;
}

int cmd_parse(const Options& opts, std::ostream& out, std::ostream& err) {
    auto ms = load(opts.file, err);
    if (!ms) return kDiagnostics;
    if (opts.json) {
        out << ast_to_json(*ms);
    } else if (opts.tabular) {
        out << print(*ms, PrintStyle::Tabular);
    } else {
        out << print(canonicalize(*ms), PrintStyle::Compact);
    }
    return kSuccess;
}

int cmd_canon(const Options& opts, std::ostream& out, std::ostream& err) {
    auto ms = load(opts.file, err);
    if (!ms) return kDiagnostics;
    out << print(canonicalize(*ms), PrintStyle::Compact);
    return kSuccess;
}

int cmd_check(const Options& opts, std::ostream& out, std::ostream& err) {
    Phase phase = phase_or_throw(opts.phase);
    LintConfig cfg = load_config(opts);
    auto parsed = parse(read_file(opts.file));
    Diagnostics diags = parsed.diagnostics();
    if (parsed) {
        Diagnostics lints = lint(parsed.value(), phase, cfg);
        diags.insert(diags.end(), lints.begin(), lints.end());
    }
    if (opts.json) {
        out << diagnostics_to_json(diags);
    } else {
        report(err, diags, opts.file);
    }
    return has_errors(diags) ? kDiagnostics : kSuccess;
}

int cmd_equiv(const Options& opts, std::ostream& out, std::ostream& err) {
    auto a = load(opts.fileA, err);
    auto b = load(opts.fileB, err);
    if (!a || !b) return kDiagnostics;
    bool same = equivalent(*a, *b);
    out << (same ? "equivalent" : "not equivalent") << '\n';
    return same ? kSuccess : kDiagnostics;
}

struct ManifestEntry {
    std::string id;
    std::string name;
    int order = 0;
    std::string file;
};

std::vector<ManifestEntry> read_manifest(const std::string& path) {
    auto j = nlohmann::json::parse(read_file(path), nullptr, false);
    if (j.is_discarded() || !j.is_array()) throw UsageError{path + ": manifest must be a JSON array"};
    std::vector<ManifestEntry> entries;
    std::set<std::string> ids;
    for (const auto& e : j) {
        if (!e.is_object() || !e.contains("id") || !e["id"].is_string() || !e.contains("file") ||
            !e["file"].is_string() || !e.contains("order") || !e["order"].is_number_integer()) {
            throw UsageError{path + ": each event needs string 'id', integer 'order' and string 'file'"};
        }
        ManifestEntry m;
        m.id = e["id"].get<std::string>();
        m.name = e.value("name", m.id);
        m.order = e["order"].get<int>();
        m.file = e["file"].get<std::string>();
        if (m.order < 0) throw UsageError{path + ": event '" + m.id + "' has a negative order"};
        if (!ids.insert(m.id).second) throw UsageError{path + ": duplicate event id '" + m.id + "'"};
        fs::path file(m.file);
        if (file.is_relative()) m.file = (fs::path(path).parent_path() / file).string();
        entries.push_back(std::move(m));
    }
    return entries;
}

int cmd_derive(const Options& opts, std::ostream& out, std::ostream& err) {
    Phase phase = phase_or_throw(opts.phase);
    DiagramFormat format;
    if (opts.format == "json") {
        format = DiagramFormat::Json;
    } else if (opts.format == "plantuml") {
        format = DiagramFormat::PlantUml;
    } else {
        throw UsageError{"unknown format '" + opts.format + "' (expected json or plantuml)"};
    }
    LintConfig cfg = load_config(opts);
    auto entries = read_manifest(opts.manifest);

    // Read everything first so IO problems take precedence over diagnostics.
    std::vector<std::string> texts;
    texts.reserve(entries.size());
    for (const auto& e : entries) texts.push_back(read_file(e.file));

    std::vector<CommunicativeEvent> events;
    bool failed = false;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        auto parsed = parse(texts[i]);
        report(err, parsed.diagnostics(), entries[i].file);
        if (!parsed) {
            failed = true;
            continue;
        }
        Diagnostics lints = lint(parsed.value(), phase, cfg);
        if (has_errors(lints)) {
            Diagnostics errors;
            for (const auto& d : lints) {
                if (d.severity == Severity::Error) errors.push_back(d);
            }
            report(err, errors, entries[i].file);
            if (!opts.force) {
                err << entries[i].file << ": refusing to derive from a structure with " << to_string(phase)
                    << " lint errors (use --force to override)\n";
                failed = true;
                continue;
            }
        }
        events.push_back(CommunicativeEvent{entries[i].id, entries[i].name, entries[i].order, std::move(parsed).value()});
    }
    if (failed) return kDiagnostics;

    sort_events(events);
    std::vector<ClassDiagramView> views;
    for (const auto& ev : events) {
        auto view = derive_view(ev);
        report(err, view.diagnostics(), ev.id);
        if (!view) {
            failed = true;
            continue;
        }
        views.push_back(std::move(view).value());
    }
    if (failed) return kDiagnostics;

    auto diagram = integrate(views);
    report(err, diagram.diagnostics(), opts.manifest);
    if (!diagram) return kDiagnostics;
    out << export_diagram(diagram.value(), format);
    return kSuccess;
}

int cmd_fragment(const Options& opts, std::ostream& out, std::ostream& err) {
    auto ms = load(opts.file, err);
    if (!ms) return kDiagnostics;
    auto fragments = fragment_1nf(*ms);
    auto abstract = assign_abstract(fragments);
    if (opts.json) {
        out << fragments_to_json(fragments, abstract);
        return kSuccess;
    }
    for (std::size_t i = 0; i < fragments.size(); ++i) {
        const auto& f = fragments[i];
        out << f.id << "  " << to_string(abstract[i].kind) << "  depth " << f.depth;
        if (f.parentKey) out << "  parent " << *f.parentKey;
        out << '\n';
        out << "  fields:";
        for (std::size_t k = 0; k < f.fields.size(); ++k) {
            out << (k ? ", " : " ") << f.fields[k].field.name;
            if (f.fields[k].variant) out << " [" << *f.fields[k].variant << ']';
        }
        out << '\n';
        for (const auto& d : f.discriminators) {
            out << "  discriminator " << d.name << ':';
            for (const auto& v : d.variants) out << ' ' << v;
            out << '\n';
        }
    }
    return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Message Structures toolkit: parse, compare, lint, derive class diagrams, fragment", "msgstruct"};
    app.require_subcommand(1);
    Options opts;
    app.add_option("--config", opts.configPath, "Lint configuration (JSON); falls back to $MSGSTRUCT_CONFIG");

    auto* parseCmd = app.add_subcommand("parse", "Parse a .ms file and print its canonical form");
    parseCmd->add_option("file", opts.file, "Message structure file")->required();
    parseCmd->add_flag("--json", opts.json, "Print the syntax tree as JSON");
    parseCmd->add_flag("--tabular", opts.tabular, "Print the structure in vertical layout");

    auto* canonCmd = app.add_subcommand("canon", "Print the canonical compact form");
    canonCmd->add_option("file", opts.file, "Message structure file")->required();

    auto* checkCmd = app.add_subcommand("check", "Lint a .ms file for a development phase");
    checkCmd->add_option("file", opts.file, "Message structure file")->required();
    checkCmd->add_option("--phase", opts.phase, "analysis | design-memory | design-interface");
    checkCmd->add_flag("--json", opts.json, "Print diagnostics as JSON on stdout");
    checkCmd->add_flag("--info-missing", opts.infoMissing, "Report absent highly-recommended properties");

    auto* equivCmd = app.add_subcommand("equiv", "Tell whether two structures are equivalent");
    equivCmd->add_option("a", opts.fileA, "First file")->required();
    equivCmd->add_option("b", opts.fileB, "Second file")->required();

    auto* deriveCmd = app.add_subcommand("derive", "Derive and integrate the class diagram of an event manifest");
    deriveCmd->add_option("--events", opts.manifest, "Events manifest (JSON)")->required();
    deriveCmd->add_option("--format", opts.format, "json | plantuml");
    deriveCmd->add_option("--phase", opts.phase, "Phase used for the pre-derivation lint");
    deriveCmd->add_flag("--force", opts.force, "Derive even when lint reports errors");

    auto* fragmentCmd = app.add_subcommand("fragment", "Fragment a structure into first normal form");
    fragmentCmd->add_option("file", opts.file, "Message structure file")->required();
    fragmentCmd->add_flag("--json", opts.json, "Print fragments as JSON");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "msgstruct: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (parseCmd->parsed()) return cmd_parse(opts, out, err);
        if (canonCmd->parsed()) return cmd_canon(opts, out, err);
        if (checkCmd->parsed()) return cmd_check(opts, out, err);
        if (equivCmd->parsed()) return cmd_equiv(opts, out, err);
        if (deriveCmd->parsed()) return cmd_derive(opts, out, err);
        if (fragmentCmd->parsed()) return cmd_fragment(opts, out, err);
    } catch (const UsageError& e) {
        err << "msgstruct: " << e.message << '\n';
        return kUsage;
    }
    return kUsage;
}

}  // namespace msgstruct::cli
