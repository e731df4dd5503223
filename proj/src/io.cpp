#include "calaw/io.hpp"

#include <fstream>
#include <stdexcept>

namespace calaw {

namespace {

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

Json rule_to_json(const LocalRule& rule) {
    Json j;
    j["dimension"] = rule.dimension();
    j["alphabet"] = rule.alphabet().size;
    Json offs = Json::array();
    for (const auto& p : rule.nbhd().offsets()) offs.push_back(p);
    j["offsets"] = std::move(offs);
    j["table"] = rule.table();
    Json meta = Json::object();
    if (rule.name()) meta["name"] = *rule.name();
    if (auto w = to_wolfram(rule)) meta["wolfram"] = *w;
    if (!meta.empty()) j["meta"] = std::move(meta);
    return j;
}

LocalRule rule_from_json(const Json& j) {
    require(j.is_object(), "rule file must be a JSON object");
    require(j.contains("dimension") && j.contains("alphabet") && j.contains("offsets") &&
                j.contains("table"),
            "rule file needs dimension, alphabet, offsets and table");
    int dim = j.at("dimension").get<int>();
    int a = j.at("alphabet").get<int>();
    std::vector<Point> offsets;
    for (const auto& o : j.at("offsets")) offsets.push_back(o.get<Point>());
    std::vector<Symbol> table = j.at("table").get<std::vector<Symbol>>();
    std::optional<std::string> name;
    if (j.contains("meta") && j.at("meta").contains("name"))
        name = j.at("meta").at("name").get<std::string>();
    // wrong table length and malformed neighborhoods are rejected by the
    // constructors
    return LocalRule(Alphabet(a), Neighborhood(dim, std::move(offsets)), std::move(table), name);
}

Json quantity_to_json(const Quantity& phi) {
    Json j;
    j["domain"] = domain_name(phi.domain());
    Json values = Json::array();
    switch (phi.domain()) {
        case Domain::Rational:
            for (Symbol s = 0; s < phi.alphabet(); ++s) values.push_back(to_string(phi.scalar(s)));
            break;
        case Domain::RationalVector: {
            j["K"] = phi.components();
            for (Symbol s = 0; s < phi.alphabet(); ++s) {
                Json row = Json::array();
                for (const auto& x : phi.value(s)) row.push_back(to_string(x));
                values.push_back(std::move(row));
            }
            break;
        }
        case Domain::Mod:
            j["m"] = phi.modulus();
            for (Symbol s = 0; s < phi.alphabet(); ++s) values.push_back(phi.residue(s));
            break;
    }
    j["values"] = std::move(values);
    return j;
}

Quantity quantity_from_json(const Json& j) {
    require(j.is_object() && j.contains("domain") && j.contains("values"),
            "quantity file needs domain and values");
    const std::string domain = j.at("domain").get<std::string>();
    const Json& values = j.at("values");
    require(values.is_array() && !values.empty(), "quantity values must be a nonempty array");
    const int a = static_cast<int>(values.size());
    if (domain == "rational") {
        RatVec v;
        for (const auto& x : values) v.push_back(parse_rational(x.get<std::string>()));
        return Quantity::rational(a, std::move(v));
    }
    if (domain == "vector") {
        require(j.contains("K"), "vector quantity needs K");
        int k = j.at("K").get<int>();
        std::vector<RatVec> rows;
        for (const auto& row : values) {
            RatVec r;
            for (const auto& x : row) r.push_back(parse_rational(x.get<std::string>()));
            rows.push_back(std::move(r));
        }
        return Quantity::vector_valued(a, k, std::move(rows));
    }
    if (domain == "mod") {
        require(j.contains("m"), "mod quantity needs m");
        std::vector<std::int64_t> r;
        for (const auto& x : values) r.push_back(x.get<std::int64_t>());
        return Quantity::mod(a, j.at("m").get<std::int64_t>(), std::move(r));
    }
    throw std::invalid_argument("unknown quantity domain: " + domain);
}

Json config_to_json(const Configuration& a) {
    Json j;
    j["background"] = a.background();
    Json ov = Json::array();
    for (const auto& [p, s] : a.overrides()) {
        Json row = Json::array();
        for (int x : p) row.push_back(x);
        row.push_back(s);
        ov.push_back(std::move(row));
    }
    j["overrides"] = std::move(ov);
    return j;
}

Configuration config_from_json(const Json& j, int fallback_dim) {
    require(j.is_object() && j.contains("background"), "configuration file needs background");
    int dim = fallback_dim;
    std::map<Point, Symbol> overrides;
    if (j.contains("overrides")) {
        for (const auto& row : j.at("overrides")) {
            require(row.is_array() && row.size() >= 2, "override rows are [coords..., symbol]");
            Point p;
            for (std::size_t i = 0; i + 1 < row.size(); ++i) p.push_back(row[i].get<int>());
            overrides[p] = row.back().get<Symbol>();
            dim = static_cast<int>(p.size());
        }
    }
    return Configuration(dim, j.at("background").get<Symbol>(), std::move(overrides));
}

Json torus_to_json(const TorusConfig& a) {
    Json j;
    j["moduli"] = a.moduli();
    j["cells"] = a.cells();
    return j;
}

TorusConfig torus_from_json(const Json& j) {
    require(j.is_object() && j.contains("moduli") && j.contains("cells"),
            "torus file needs moduli and cells");
    return TorusConfig(j.at("moduli").get<std::vector<int>>(),
                       j.at("cells").get<std::vector<Symbol>>());
}

bool looks_like_torus(const Json& j) { return j.is_object() && j.contains("moduli"); }

Json pdr_to_json(const DisplacementRule& d) {
    Json j;
    j["B"] = d.radius();
    j["alphabet"] = d.alphabet();
    Json entries = Json::array();
    std::vector<Symbol> pat(d.pattern_length(), 0);
    for (std::uint64_t code = 0; code < d.pattern_count(); ++code) {
        Json e;
        e["pattern"] = pat;
        Json counts = Json::object();
        for (int off = -d.radius(); off <= d.radius(); ++off)
            if (std::int64_t c = d.count(code, off); c != 0)
                counts[std::to_string(off)] = c;
        e["d"] = std::move(counts);
        entries.push_back(std::move(e));
        next_pattern_mixed_radix(pat, d.alphabet());
    }
    j["entries"] = std::move(entries);
    return j;
}

DisplacementRule pdr_from_json(const Json& j) {
    require(j.is_object() && j.contains("B") && j.contains("alphabet") && j.contains("entries"),
            "displacement file needs B, alphabet and entries");
    const int b = j.at("B").get<int>();
    const int a = j.at("alphabet").get<int>();
    const std::uint64_t patterns = checked_power(a, 4 * b + 1);
    std::vector<std::vector<std::int64_t>> counts(patterns,
                                                  std::vector<std::int64_t>(2 * b + 1, 0));
    for (const auto& e : j.at("entries")) {
        std::vector<Symbol> pat = e.at("pattern").get<std::vector<Symbol>>();
        require(static_cast<int>(pat.size()) == 4 * b + 1,
                "displacement pattern must cover the doubled window");
        std::uint64_t code = encode_pattern(pat, a);
        for (const auto& [key, val] : e.at("d").items()) {
            int off = std::stoi(key);
            require(off >= -b && off <= b, "displacement offset outside the neighborhood");
            counts[code][off + b] = val.get<std::int64_t>();
        }
    }
    return DisplacementRule(a, b, std::move(counts));
}

Json total_to_json(const TotalValue& t) {
    if (t.domain == Domain::Mod) {
        Json j;
        j["residue"] = t.residue;
        j["m"] = t.modulus;
        return j;
    }
    if (t.rat.size() == 1) return to_string(t.rat[0]);
    Json arr = Json::array();
    for (const auto& x : t.rat) arr.push_back(to_string(x));
    return arr;
}

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    Json j;
    in >> j;
    return j;
}

void save_json(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write file: " + path);
    out << j.dump(2) << "\n";
}

}  // namespace calaw
