#include "qp/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qp {

using nlohmann::json;

namespace {

json ordered_json_parse(const std::string& text) {
    return json::parse(text);
}

} // namespace

QuiverPtr parse_quiver_json(const std::string& text) {
    json j = ordered_json_parse(text);
    std::vector<int> vertices;
    for (const auto& v : j.at("vertices")) vertices.push_back(v.get<int>());
    std::vector<Arrow> arrows;
    if (j.contains("arrows"))
        for (const auto& a : j.at("arrows"))
            arrows.push_back(Arrow{a.at("id").get<std::string>(), a.at("tail").get<int>(), a.at("head").get<int>()});
    auto base = std::make_shared<Quiver>(std::move(vertices), std::move(arrows));

    QuiverPtr q = base;
    if (j.value("double", false)) q = build_doubled_quiver(*q);

    if (j.contains("order")) {
        std::vector<Arrow> reordered;
        for (const auto& id : j.at("order")) {
            int idx = q->arrow_index(id.get<std::string>());
            if (idx < 0) throw QuiverError("order references unknown arrow " + id.get<std::string>());
            reordered.push_back(q->arrow(idx));
        }
        if (static_cast<int>(reordered.size()) != q->arrow_count())
            throw QuiverError("order must list every arrow exactly once");
        auto re = std::make_shared<Quiver>(q->vertices(), reordered);
        if (q->doubled()) {
            std::vector<int> partner, epsilon;
            for (int i = 0; i < re->arrow_count(); ++i) {
                int old = q->arrow_index(re->arrow(i).id);
                partner.push_back(re->arrow_index(q->arrow(q->partner(old)).id));
                epsilon.push_back(q->epsilon(old));
            }
            re->set_doubling(std::move(partner), std::move(epsilon));
        }
        q = re;
    }

    auto out = std::make_shared<Quiver>(*q);
    if (j.contains("pairs")) {
        std::vector<int> partner(static_cast<size_t>(out->arrow_count()), -1);
        std::vector<int> epsilon(static_cast<size_t>(out->arrow_count()), 0);
        for (const auto& pr : j.at("pairs")) {
            int a = out->arrow_index(pr.at(0).get<std::string>());
            int b = out->arrow_index(pr.at(1).get<std::string>());
            if (a < 0 || b < 0) throw QuiverError("pairs reference unknown arrows");
            partner[static_cast<size_t>(a)] = b;
            partner[static_cast<size_t>(b)] = a;
            epsilon[static_cast<size_t>(a)] = 1;
            epsilon[static_cast<size_t>(b)] = -1;
        }
        out->set_doubling(std::move(partner), std::move(epsilon));
    }
    if (j.contains("invert")) {
        std::vector<int> idx;
        for (const auto& id : j.at("invert")) {
            int i = out->arrow_index(id.get<std::string>());
            if (i < 0) throw QuiverError("invert references unknown arrow " + id.get<std::string>());
            idx.push_back(i);
        }
        out->set_inverted(idx);
    }
    return out;
}

std::string serialize_quiver_json(const Quiver& q) {
    json j;
    j["vertices"] = q.vertices();
    json arrows = json::array();
    for (const Arrow& a : q.arrows()) arrows.push_back({{"id", a.id}, {"tail", a.tail}, {"head", a.head}});
    j["arrows"] = arrows;
    if (q.doubled()) {
        json pairs = json::array();
        for (int i = 0; i < q.arrow_count(); ++i)
            if (q.epsilon(i) == 1) pairs.push_back({q.arrow(i).id, q.arrow(q.partner(i)).id});
        j["pairs"] = pairs;
    }
    json inv = json::array();
    for (int i = 0; i < q.arrow_count(); ++i)
        if (q.inverted(i)) inv.push_back(q.arrow(i).id);
    if (!inv.empty()) j["invert"] = inv;
    return j.dump(2) + "\n";
}

DoubleBracketTable parse_bracket_json(const std::string& text) {
    json j = ordered_json_parse(text);
    QuiverPtr q = parse_quiver_json(j.at("quiver").dump());
    DoubleBracketTable T(q);
    if (j.contains("bracket"))
        for (const auto& entry : j.at("bracket")) {
            Tensor v = parse_tensor(q, entry.at("value").get<std::string>());
            T.set_value(entry.at("a").get<std::string>(), entry.at("b").get<std::string>(), v);
        }
    return T;
}

std::string serialize_bracket_json(const DoubleBracketTable& T) {
    json j;
    j["quiver"] = ordered_json_parse(serialize_quiver_json(*T.quiver()));
    json entries = json::array();
    for (const auto& [key, value] : T.stored()) {
        entries.push_back({{"a", T.quiver()->arrow(key.first).id},
                           {"b", T.quiver()->arrow(key.second).id},
                           {"value", serialize(value)}});
    }
    j["bracket"] = entries;
    return j.dump(2) + "\n";
}

HamiltonianStructure parse_structure_json(const std::string& text) {
    json j = ordered_json_parse(text);
    HamiltonianStructure s;
    s.quiver = parse_quiver_json(j.at("quiver").dump());
    std::string kind = j.value("kind", "additive");
    if (kind == "additive") s.kind = MomentKind::Additive;
    else if (kind == "multiplicative") s.kind = MomentKind::Multiplicative;
    else throw AlgebraError("unknown structure kind '" + kind + "'");
    s.P = parse_element(s.quiver, j.at("P").get<std::string>());
    s.moment = parse_element(s.quiver, j.at("moment").get<std::string>());
    if (j.contains("order"))
        for (const auto& id : j.at("order")) {
            int i = s.quiver->arrow_index(id.get<std::string>());
            if (i < 0) throw QuiverError("order references unknown arrow");
            s.ordering.push_back(i);
        }
    return s;
}

std::string serialize_structure_json(const HamiltonianStructure& s) {
    json j;
    j["quiver"] = ordered_json_parse(serialize_quiver_json(*s.quiver));
    j["kind"] = s.kind == MomentKind::Additive ? "additive" : "multiplicative";
    j["P"] = serialize(s.P);
    j["moment"] = serialize(s.moment);
    if (!s.ordering.empty()) {
        json order = json::array();
        for (int i : s.ordering) order.push_back(s.quiver->arrow(i).id);
        j["order"] = order;
    }
    return j.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

QuiverPtr load_quiver(const std::string& path) { return parse_quiver_json(read_file(path)); }
void save_quiver(const Quiver& q, const std::string& path) { write_file(path, serialize_quiver_json(q)); }
DoubleBracketTable load_bracket(const std::string& path) { return parse_bracket_json(read_file(path)); }
void save_bracket(const DoubleBracketTable& T, const std::string& path) {
    write_file(path, serialize_bracket_json(T));
}
HamiltonianStructure load_structure(const std::string& path) {
    return parse_structure_json(read_file(path));
}
void save_structure(const HamiltonianStructure& s, const std::string& path) {
    write_file(path, serialize_structure_json(s));
}

} // namespace qp
