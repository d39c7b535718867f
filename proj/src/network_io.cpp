#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "hexflow/error.hpp"
#include "hexflow/network.hpp"

namespace hexflow {

using nlohmann::json;

namespace {

const json& field(const json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) throw Error(ErrorCode::SchemaError, where + ": missing field '" + key + "'");
    return *it;
}

Vec2 read_point(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw Error(ErrorCode::SchemaError, where + ": expected [x, y]");
    return {j[0].get<double>(), j[1].get<double>()};
}

std::string read_string(const json& j, const std::string& where) {
    if (!j.is_string()) throw Error(ErrorCode::SchemaError, where + ": expected a string");
    return j.get<std::string>();
}

} // namespace

Network parse_network(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::SchemaError, std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) throw Error(ErrorCode::SchemaError, "network must be a JSON object");

    Network net;
    if (auto it = doc.find("source"); it != doc.end() && it->is_string()) net.source = it->get<std::string>();

    const json& vs = field(doc, "vertices", "network");
    const json& es = field(doc, "edges", "network");
    if (!vs.is_array() || !es.is_array()) throw Error(ErrorCode::SchemaError, "vertices and edges must be arrays");

    std::set<std::string> seen;
    for (size_t i = 0; i < vs.size(); ++i) {
        std::string where = "vertex " + std::to_string(i);
        if (!vs[i].is_object()) throw Error(ErrorCode::SchemaError, where + ": expected an object");
        Vertex v;
        v.id = read_string(field(vs[i], "id", where), where + ".id");
        v.pos = read_point(field(vs[i], "pos", where), where + ".pos");
        if (!seen.insert(v.id).second) throw Error(ErrorCode::DuplicateId, "duplicate vertex id " + v.id);
        net.vertices.push_back(v);
    }

    seen.clear();
    for (size_t i = 0; i < es.size(); ++i) {
        std::string where = "edge " + std::to_string(i);
        const json& ej = es[i];
        if (!ej.is_object()) throw Error(ErrorCode::SchemaError, where + ": expected an object");
        Edge e;
        e.id = read_string(field(ej, "id", where), where + ".id");
        where = "edge " + e.id;
        if (!seen.insert(e.id).second) throw Error(ErrorCode::DuplicateId, "duplicate edge id " + e.id);
        std::string kind = read_string(field(ej, "kind", where), where + ".kind");
        if (kind == "segment") e.kind = EdgeKind::Segment;
        else if (kind == "halfline") e.kind = EdgeKind::HalfLine;
        else throw Error(ErrorCode::SchemaError, where + ": unknown kind '" + kind + "'");

        auto lookup = [&](const char* key) {
            std::string id = read_string(field(ej, key, where), where + "." + key);
            int v = net.find_vertex(id);
            if (v < 0) throw Error(ErrorCode::DanglingReference, where + " refers to unknown vertex " + id);
            return v;
        };
        e.from = lookup("from");
        if (e.is_segment()) {
            e.to = lookup("to");
            if (e.to == e.from) throw Error(ErrorCode::SchemaError, where + " is a loop");
        } else {
            Vec2 d = read_point(field(ej, "dir", where), where + ".dir");
            if (d.norm() == 0.0) throw Error(ErrorCode::SchemaError, where + ": zero direction");
            e.dir = d.normalized();
        }
        if (auto it = ej.find("curve"); it != ej.end()) e.curve = read_string(*it, where + ".curve");
        if (auto it = ej.find("multiplicity"); it != ej.end()) {
            if (!it->is_number_integer() || it->get<int>() < 1)
                throw Error(ErrorCode::SchemaError, where + ": multiplicity must be a positive integer");
            e.multiplicity = it->get<int>();
        }
        net.edges.push_back(e);
    }
    return net;
}

Network load_network(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    Network net = parse_network(ss.str());
    return net;
}

std::string serialize_network(const Network& net, int indent) {
    using ojson = nlohmann::ordered_json;
    ojson doc;
    if (!net.source.empty()) doc["source"] = net.source;
    doc["vertices"] = ojson::array();
    for (const auto& v : net.vertices) doc["vertices"].push_back({{"id", v.id}, {"pos", {v.pos.x, v.pos.y}}});
    doc["edges"] = ojson::array();
    for (const auto& e : net.edges) {
        ojson ej;
        ej["id"] = e.id;
        ej["kind"] = e.is_segment() ? "segment" : "halfline";
        ej["from"] = net.vertices[e.from].id;
        if (e.is_segment()) ej["to"] = net.vertices[e.to].id;
        else ej["dir"] = {e.dir.x, e.dir.y};
        if (!e.curve.empty()) ej["curve"] = e.curve;
        if (e.multiplicity != 1) ej["multiplicity"] = e.multiplicity;
        doc["edges"].push_back(ej);
    }
    return doc.dump(indent);
}

void save_network(const Network& net, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
    out << serialize_network(net) << "\n";
}

} // namespace hexflow
