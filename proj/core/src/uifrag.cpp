#include "msgstruct/uifrag.hpp"

#include <set>

#include <nlohmann/json.hpp>

#include "msgstruct/canonical.hpp"

namespace msgstruct {

std::string_view to_string(AbstractKind k) {
    return k == AbstractKind::Registry ? "registry" : "set-of-registries";
}

namespace {

const Complex* lone_aggregation(const SubstructureList& l) {
    if (l.size() != 1) return nullptr;
    const Complex* c = l.front().complex();
    return c && c->kind == ComplexKind::Aggregation ? c : nullptr;
}

class Fragmenter {
public:
    std::vector<Fragment> run(const MessageStructure& ms) {
        MessageStructure d = desugar(ms);
        open(ms.name, 0, std::nullopt);
        if (d.root.kind == ComplexKind::Iteration) {
            iteration(d.root, 0);
        } else {
            collect(d.root.children(), 0, std::nullopt);
        }
        return std::move(fragments_);
    }

private:
    std::size_t open(std::string id, int depth, std::optional<std::string> parent) {
        std::string unique = id;
        for (int n = 2; !ids_.insert(unique).second; ++n) unique = id + "~" + std::to_string(n);
        fragments_.push_back(Fragment{unique, depth, std::move(parent), {}, {}});
        iterationCounts_.push_back(0);
        return fragments_.size() - 1;
    }

    void collect(const SubstructureList& items, std::size_t frag, const std::optional<std::string>& variant) {
        for (const auto& s : items) {
            if (const Field* f = s.field()) {
                fragments_[frag].fields.push_back(FragmentField{*f, variant});
                continue;
            }
            const Complex& c = *s.complex();
            switch (c.kind) {
                case ComplexKind::Aggregation: collect(c.children(), frag, variant); break;
                case ComplexKind::Iteration: iteration(c, frag); break;
                case ComplexKind::Specialisation: specialisation(c, frag); break;
            }
        }
    }

    void iteration(const Complex& it, std::size_t frag) {
        int ordinal = ++iterationCounts_[frag];
        const Complex* inner = lone_aggregation(it.children());
        std::string segment;
        if (it.name) segment = *it.name;
        else if (inner && inner->name) segment = *inner->name;
        else segment = "#" + std::to_string(ordinal);
        std::string parentId = fragments_[frag].id;
        int depth = fragments_[frag].depth + 1;
        std::size_t child = open(parentId + "/" + segment, depth, parentId);
        collect(inner ? inner->children() : it.children(), child, std::nullopt);
    }

    void specialisation(const Complex& sp, std::size_t frag) {
        Discriminator disc;
        disc.name = sp.name.value_or("variant");
        std::vector<std::string> names;
        for (std::size_t k = 0; k < sp.lists.size(); ++k) {
            const SubstructureList& variant = sp.lists[k];
            const Complex* inner = lone_aggregation(variant);
            const SubstructureList& content = inner ? inner->children() : variant;
            std::string name;
            if (inner && inner->name) name = *inner->name;
            else if (content.size() == 1 && content.front().field()) name = content.front().field()->name;
            else name = "#" + std::to_string(k + 1);
            names.push_back(name);
        }
        disc.variants = names;
        fragments_[frag].discriminators.push_back(std::move(disc));
        for (std::size_t k = 0; k < sp.lists.size(); ++k) {
            const Complex* inner = lone_aggregation(sp.lists[k]);
            collect(inner ? inner->children() : sp.lists[k], frag, names[k]);
        }
    }

    std::vector<Fragment> fragments_;
    std::vector<int> iterationCounts_;
    std::set<std::string> ids_;
};

}  // namespace

std::vector<Fragment> fragment_1nf(const MessageStructure& ms) { return Fragmenter{}.run(ms); }

std::vector<AbstractInterfaceStructure> assign_abstract(const std::vector<Fragment>& fragments) {
    std::vector<AbstractInterfaceStructure> out;
    out.reserve(fragments.size());
    for (const auto& f : fragments) {
        out.push_back({f.id, f.depth == 0 ? AbstractKind::Registry : AbstractKind::SetOfRegistries});
    }
    return out;
}

std::string fragments_to_json(const std::vector<Fragment>& fragments,
                              const std::vector<AbstractInterfaceStructure>& abstract) {
    using nlohmann::ordered_json;
    ordered_json jf = ordered_json::array();
    for (const auto& f : fragments) {
        ordered_json j;
        j["id"] = f.id;
        j["depth"] = f.depth;
        if (f.parentKey) j["parentKey"] = *f.parentKey;
        ordered_json fields = ordered_json::array();
        for (const auto& ff : f.fields) {
            ordered_json jfield;
            jfield["name"] = ff.field.name;
            const auto& p = ff.field.properties;
            if (p.acquisition) jfield["op"] = std::string(1, acquisition_letter(p.acquisition->kind));
            if (p.domain) jfield["domain"] = to_string(*p.domain);
            if (ff.variant) jfield["variant"] = *ff.variant;
            fields.push_back(std::move(jfield));
        }
        j["fields"] = std::move(fields);
        if (!f.discriminators.empty()) {
            ordered_json discs = ordered_json::array();
            for (const auto& d : f.discriminators) discs.push_back({{"name", d.name}, {"variants", d.variants}});
            j["discriminators"] = std::move(discs);
        }
        jf.push_back(std::move(j));
    }
    ordered_json ja = ordered_json::array();
    for (const auto& a : abstract) ja.push_back({{"fragmentId", a.fragmentId}, {"kind", to_string(a.kind)}});
    ordered_json root;
    root["fragments"] = std::move(jf);
    root["abstract"] = std::move(ja);
    return root.dump(2) + '\n';
}

}  // namespace msgstruct
