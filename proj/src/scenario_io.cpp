#include "crackpert/scenario_io.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace crackpert {

namespace {

namespace pt = boost::property_tree;

const std::set<std::string> bump_keys = {"amplitude", "center", "half_width"};

struct Reader {
    std::string origin;
    std::vector<std::string> errors;

    void fail(const std::string& where, const std::string& what) { errors.push_back(origin + ": " + where + ": " + what); }

    std::optional<double> number(const std::string& where, const std::string& text)
    {
        const auto b = text.find_first_not_of(" \t");
        const auto e = text.find_last_not_of(" \t");
        if (b == std::string::npos) {
            fail(where, "empty value");
            return std::nullopt;
        }
        double v = 0.0;
        const char* first = text.data() + b;
        const char* last = text.data() + e + 1;
        const auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc() || ptr != last) {
            fail(where, "'" + text + "' is not a number");
            return std::nullopt;
        }
        return v;
    }

    std::optional<double> number(const pt::ptree& section, const std::string& name, const std::string& key)
    {
        const auto child = section.get_optional<std::string>(key);
        if (!child) return std::nullopt;
        return number("[" + name + "] " + key, *child);
    }

    void only_keys(const pt::ptree& section, const std::string& name, const std::set<std::string>& allowed)
    {
        for (const auto& [key, value] : section) {
            if (!allowed.count(key)) fail("[" + name + "]", "unknown key '" + key + "'");
            if (!value.empty()) fail("[" + name + "] " + key, "nested value");
        }
    }

    std::optional<BumpProfile> bump(const pt::ptree& root, const std::string& name, Face face)
    {
        const auto section = root.get_child_optional(name);
        if (!section) return std::nullopt;
        only_keys(*section, name, bump_keys);
        BumpProfile b;
        b.face = face;
        for (const auto& key : bump_keys) {
            const auto v = number(*section, name, key);
            if (!v) {
                if (!section->get_optional<std::string>(key)) fail("[" + name + "]", "missing key '" + key + "'");
                continue;
            }
            if (key == "amplitude") b.amplitude = *v;
            if (key == "center") b.center = *v;
            if (key == "half_width") b.half_width = *v;
        }
        return b;
    }

    std::vector<double> number_list(const std::string& where, const std::string& text)
    {
        std::vector<double> out;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ','))
            if (const auto v = number(where, item)) out.push_back(*v);
        return out;
    }
};

/// '#' comments are accepted as well as ';'.
std::string normalise_comments(std::istream& in)
{
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line)) {
        const auto b = line.find_first_not_of(" \t");
        if (b != std::string::npos && line[b] == '#') line[b] = ';';
        out << line << '\n';
    }
    return out.str();
}

std::string exact(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

SweepSpec read_scenario(std::istream& in, const std::string& origin)
{
    pt::ptree root;
    {
        std::istringstream text(normalise_comments(in));
        try {
            pt::read_ini(text, root);
        } catch (const pt::ini_parser_error& e) {
            throw ValidationError({origin + ":" + std::to_string(e.line()) + ": " + e.message()});
        }
    }

    Reader r{origin, {}};
    const std::set<std::string> sections = {"material", "load", "upper_bump", "lower_bump", "interface_bump", "sweep"};
    for (const auto& [name, child] : root) {
        if (!sections.count(name)) r.fail("[" + name + "]", child.data().empty() ? "unknown section" : "key outside any section");
    }

    SweepSpec spec;
    std::optional<double> material_eta;
    if (const auto m = root.get_child_optional("material")) {
        r.only_keys(*m, "material", {"eta", "mu_plus", "mu_minus"});
        const auto eta = r.number(*m, "material", "eta");
        const auto mp = r.number(*m, "material", "mu_plus");
        const auto mm = r.number(*m, "material", "mu_minus");
        if (eta && (mp || mm)) r.fail("[material]", "give either eta or mu_plus/mu_minus, not both");
        if (mp.has_value() != mm.has_value()) r.fail("[material]", "mu_plus and mu_minus must be given together");
        if (eta) material_eta = eta;
        if (mp && mm) {
            if (!(*mp > 0.0) || !(*mm > 0.0))
                r.fail("[material]", "shear moduli must be > 0");
            else
                material_eta = Bimaterial{*mp, *mm}.eta();
        }
    }

    if (const auto l = root.get_child_optional("load")) {
        r.only_keys(*l, "load", {"a", "b"});
        if (const auto a = r.number(*l, "load", "a")) spec.load.a = *a;
        if (const auto b = r.number(*l, "load", "b")) spec.load.b = *b;
    } else {
        r.fail("[load]", "section missing");
    }

    spec.upper = r.bump(root, "upper_bump", Face::upper);
    spec.lower = r.bump(root, "lower_bump", Face::lower);
    spec.interface = r.bump(root, "interface_bump", Face::interface);

    std::optional<std::vector<double>> sweep_etas;
    if (const auto s = root.get_child_optional("sweep")) {
        r.only_keys(*s, "sweep", {"id", "axis", "from", "to", "open", "samples", "eta", "output"});
        spec.id = s->get("id", "custom");
        if (const auto axis = s->get_optional<std::string>("axis")) {
            if (const auto parsed = parse_sweep_axis(*axis))
                spec.axis = *parsed;
            else
                r.fail("[sweep] axis", "unknown axis '" + *axis + "'");
        }
        if (const auto v = r.number(*s, "sweep", "from")) spec.from = *v;
        if (const auto v = r.number(*s, "sweep", "to")) spec.to = *v;
        if (spec.axis != SweepAxis::none && (!s->get_optional<std::string>("from") || !s->get_optional<std::string>("to")))
            r.fail("[sweep]", "an axis needs both 'from' and 'to'");
        const std::string open = s->get("open", "both");
        if (open == "both" || open == "none" || open == "from" || open == "to") {
            spec.open_from = open == "both" || open == "from";
            spec.open_to = open == "both" || open == "to";
        } else {
            r.fail("[sweep] open", "expected both, none, from or to");
        }
        if (const auto v = r.number(*s, "sweep", "samples")) {
            if (*v != static_cast<double>(static_cast<int>(*v)))
                r.fail("[sweep] samples", "must be an integer");
            else
                spec.samples = static_cast<int>(*v);
        }
        if (const auto etas = s->get_optional<std::string>("eta")) sweep_etas = r.number_list("[sweep] eta", *etas);
        if (const auto out = s->get_optional<std::string>("output")) {
            if (const auto parsed = parse_output_quantity(*out))
                spec.output = *parsed;
            else
                r.fail("[sweep] output", "unknown quantity '" + *out + "'");
        }
    }

    if (sweep_etas && material_eta) r.fail("[sweep] eta", "contrast also fixed in [material]");
    if (sweep_etas)
        spec.etas = *sweep_etas;
    else if (material_eta)
        spec.etas = {*material_eta};

    if (!r.errors.empty()) throw ValidationError(std::move(r.errors));
    return spec;
}

SweepSpec read_scenario_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ValidationError({path + ": cannot open file"});
    return read_scenario(in, path);
}

void write_scenario(const SweepSpec& spec, std::ostream& out)
{
    out << "[load]\na = " << exact(spec.load.a) << "\nb = " << exact(spec.load.b) << "\n";
    const auto bump = [&](const char* name, const std::optional<BumpProfile>& b) {
        if (!b) return;
        out << "\n[" << name << "]\namplitude = " << exact(b->amplitude) << "\ncenter = " << exact(b->center)
            << "\nhalf_width = " << exact(b->half_width) << "\n";
    };
    bump("upper_bump", spec.upper);
    bump("lower_bump", spec.lower);
    bump("interface_bump", spec.interface);

    out << "\n[sweep]\nid = " << spec.id << "\naxis = " << to_string(spec.axis);
    if (spec.axis != SweepAxis::none) {
        out << "\nfrom = " << exact(spec.from) << "\nto = " << exact(spec.to) << "\nopen = "
            << (spec.open_from ? (spec.open_to ? "both" : "from") : (spec.open_to ? "to" : "none"));
    }
    out << "\nsamples = " << spec.samples << "\neta = ";
    for (std::size_t k = 0; k < spec.etas.size(); ++k) out << (k ? ", " : "") << exact(spec.etas[k]);
    out << "\noutput = " << to_string(spec.output) << "\n";
}

}  // namespace crackpert
