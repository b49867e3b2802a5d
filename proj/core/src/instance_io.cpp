#include "meshplan/instance_io.hpp"

#include <fstream>
#include <sstream>

namespace meshplan {

namespace {

VertexKind parse_kind(const std::string& text) {
    if (text == "terminal") return VertexKind::Terminal;
    if (text == "non_terminal") return VertexKind::NonTerminal;
    if (text == "landline") return VertexKind::Landline;
    throw ValidationError("unknown vertex kind: " + text);
}

std::string kind_name(VertexKind k) {
    switch (k) {
        case VertexKind::Terminal: return "terminal";
        case VertexKind::NonTerminal: return "non_terminal";
        case VertexKind::Landline: return "landline";
    }
    return "terminal";
}

}  // namespace

PlanningInstance parse_instance(const ordered_json& doc) {
    PlanningInstance inst;
    try {
        for (const auto& jv : doc.at("vertices")) {
            Vertex v;
            v.id = jv.at("id").get<int>();
            v.pos = {jv.at("x").get<double>(), jv.at("y").get<double>()};
            v.kind = parse_kind(jv.at("kind").get<std::string>());
            v.demand = jv.value("demand", 0.0);
            if (v.kind == VertexKind::NonTerminal) {
                if (!jv.contains("fixed_height"))
                    throw ValidationError("non-terminal " + std::to_string(v.id) +
                                          " lacks fixed_height");
                v.fixed_height = jv.at("fixed_height").get<double>();
            } else if (jv.contains("fixed_height")) {
                throw ValidationError("fixed_height present on terminal " +
                                      std::to_string(v.id));
            }
            inst.vertices.push_back(v);
        }
        for (const auto& je : doc.at("edges")) {
            Edge e;
            e.u = je.at("u").get<int>();
            e.v = je.at("v").get<int>();
            e.ob = je.at("ob").get<double>();
            inst.edges.push_back(e);
        }
        inst.landline = doc.at("landline").get<int>();

        const auto& jr = doc.at("radio");
        inst.radio.U = jr.at("U").get<double>();
        inst.radio.R = jr.at("R").get<double>();
        inst.radio.HTMIN = jr.at("HTMIN").get<double>();
        inst.radio.HTMAX = jr.at("HTMAX").get<double>();
        inst.radio.R_MP = jr.at("R_MP").get<double>();
        inst.radio.BWMAX = jr.at("BWMAX").get<double>();
        inst.radio.U_Omni = jr.at("U_Omni").get<double>();
        inst.radio.R_Omni = jr.at("R_Omni").get<double>();
        inst.radio.HTOmni = jr.at("HTOmni").get<double>();
        inst.radio.HTOmniSD = jr.at("HTOmniSD").get<double>();

        const auto& jc = doc.at("costs");
        std::vector<std::pair<double, double>> bp;
        for (const auto& row : jc.at("cTower"))
            bp.emplace_back(row.at(0).get<double>(), row.at(1).get<double>());
        inst.costs.tower = TowerCostTable(std::move(bp));
        const auto& jl = jc.at("cLink");
        if (jl.contains("table")) {
            inst.costs.link = LinkCostTable(jl.at("table").get<std::vector<double>>());
        } else {
            inst.costs.link = LinkCostTable(jl.at("unit").get<double>());
        }
        const auto& ja = jc.at("cAntenna");
        inst.costs.antenna.pp = ja.at("PP").get<double>();
        inst.costs.antenna.mp = ja.at("MP").get<double>();
        inst.costs.antenna.omni = ja.at("Omni").get<double>();
        inst.costs.antenna.omni_sd = ja.at("OmniSD").get<double>();

        inst.height_step = doc.at("height_step").get<double>();

        if (doc.contains("power_table")) {
            for (const auto& row : doc.at("power_table"))
                inst.power.levels.emplace_back(row.at(0).get<double>(),
                                               row.at(1).get<double>());
        }
    } catch (const nlohmann::json::exception& ex) {
        throw ValidationError(std::string("malformed instance document: ") + ex.what());
    }

    inst.finalize();
    inst.validate();
    return inst;
}

PlanningInstance parse_instance_text(const std::string& text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& ex) {
        throw ValidationError(std::string("instance is not valid JSON: ") + ex.what());
    }
    return parse_instance(doc);
}

PlanningInstance load_instance(const std::string& path) {
    return parse_instance_text(read_file(path));
}

ordered_json instance_to_json(const PlanningInstance& inst) {
    ordered_json doc;
    doc["vertices"] = ordered_json::array();
    for (const auto& v : inst.vertices) {
        ordered_json jv;
        jv["id"] = v.id;
        jv["x"] = v.pos.x;
        jv["y"] = v.pos.y;
        jv["kind"] = kind_name(v.kind);
        jv["demand"] = v.demand;
        if (v.kind == VertexKind::NonTerminal) jv["fixed_height"] = v.fixed_height;
        doc["vertices"].push_back(jv);
    }
    doc["edges"] = ordered_json::array();
    for (const auto& e : inst.edges) {
        ordered_json je;
        je["u"] = inst.id_of(e.u);
        je["v"] = inst.id_of(e.v);
        je["ob"] = e.ob;
        doc["edges"].push_back(je);
    }
    doc["landline"] = inst.id_of(inst.landline);
    doc["radio"] = {{"U", inst.radio.U},
                    {"R", inst.radio.R},
                    {"HTMIN", inst.radio.HTMIN},
                    {"HTMAX", inst.radio.HTMAX},
                    {"R_MP", inst.radio.R_MP},
                    {"BWMAX", inst.radio.BWMAX},
                    {"U_Omni", inst.radio.U_Omni},
                    {"R_Omni", inst.radio.R_Omni},
                    {"HTOmni", inst.radio.HTOmni},
                    {"HTOmniSD", inst.radio.HTOmniSD}};
    ordered_json jc;
    jc["cTower"] = ordered_json::array();
    for (const auto& [h, c] : inst.costs.tower.breakpoints())
        jc["cTower"].push_back(ordered_json::array({h, c}));
    if (inst.costs.link.has_table())
        jc["cLink"] = {{"table", inst.costs.link.table()}};
    else
        jc["cLink"] = {{"unit", inst.costs.link.unit()}};
    jc["cAntenna"] = {{"PP", inst.costs.antenna.pp},
                      {"MP", inst.costs.antenna.mp},
                      {"Omni", inst.costs.antenna.omni},
                      {"OmniSD", inst.costs.antenna.omni_sd}};
    doc["costs"] = jc;
    doc["height_step"] = inst.height_step;
    doc["power_table"] = ordered_json::array();
    for (const auto& [d, p] : inst.power.levels)
        doc["power_table"].push_back(ordered_json::array({d, p}));
    return doc;
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 0x100000001b3ull;
    }
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[hash & 0xf];
        hash >>= 4;
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write file: " + path);
    out << content;
}

}  // namespace meshplan
