#include "acyl/blocks.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace acyl {

using nlohmann::json;

namespace {

[[noreturn]] void schema(const std::string& path, const std::string& what) {
    throw Error(ErrorCode::SchemaViolation, path + ": " + what);
}

long long get_int(const json& j, const std::string& path) {
    if (!j.is_number_integer()) schema(path, "expected an integer");
    return j.get<long long>();
}

const json* find(const json& obj, const std::string& key) {
    auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

long long required_int(const json& obj, const std::string& key) {
    const json* v = find(obj, key);
    if (!v) schema(key, "missing");
    return get_int(*v, key);
}

MatZ matrix(const json& j, const std::string& path) {
    if (!j.is_array()) schema(path, "expected a list of rows");
    const Eigen::Index n = static_cast<Eigen::Index>(j.size());
    MatZ m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const json& row = j[i];
        const std::string rp = path + "[" + std::to_string(i) + "]";
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) schema(rp, "expected a row of length " + std::to_string(n));
        for (Eigen::Index c = 0; c < n; ++c) m(i, c) = get_int(row[c], rp + "[" + std::to_string(c) + "]");
    }
    return m;
}

// a Gram matrix as nested lists, or a standard lattice expression
GramLattice gram(const json& j, const std::string& path) {
    try {
        if (j.is_string()) return standard_lattice(j.get<std::string>());
        return GramLattice(matrix(j, path));
    } catch (const Error& e) {
        if (e.code() == ErrorCode::SchemaViolation) throw;
        schema(path, e.what());
    }
}

}  // namespace

BlockDescriptor parse_block_descriptor(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::MalformedInput, std::string("descriptor is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) schema("$", "expected an object");

    static const char* known[] = {"name",  "picard_gram", "anticanonical", "degree",   "c2c1sq",
                                  "restrictions", "b3_Y", "e", "index", "base_curves",
                                  "torsion_free_h3", "N_gram", "flops", "nodal", "notes"};
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : known) ok = ok || it.key() == k;
        if (!ok) schema(it.key(), "unknown key");
    }

    BlockDescriptor d;
    if (const json* v = find(j, "name")) {
        if (!v->is_string()) schema("name", "expected a string");
        d.name = v->get<std::string>();
    }
    const json* pg = find(j, "picard_gram");
    if (!pg) schema("picard_gram", "missing");
    d.picard_gram = gram(*pg, "picard_gram");
    const Eigen::Index n = d.picard_gram.rank();

    if (const json* v = find(j, "anticanonical"); v && !v->is_null()) {
        if (!v->is_array() || static_cast<Eigen::Index>(v->size()) != n)
            schema("anticanonical", "expected " + std::to_string(n) + " integers");
        VecZ a(n);
        for (Eigen::Index i = 0; i < n; ++i) a(i) = get_int((*v)[i], "anticanonical[" + std::to_string(i) + "]");
        d.anticanonical = a;
    }
    if (const json* v = find(j, "degree"); v && !v->is_null()) d.degree = get_int(*v, "degree");
    if (!d.anticanonical && !d.degree) schema("anticanonical", "required unless degree is given");
    if (d.anticanonical && d.degree && d.anticanonical_degree() != *d.degree)
        schema("degree", "disagrees with the anticanonical self-intersection");

    const json* c = find(j, "c2c1sq");
    if (!c) schema("c2c1sq", "missing");
    if (!c->is_array() || static_cast<Eigen::Index>(c->size()) != n)
        schema("c2c1sq", "expected " + std::to_string(n) + " entries");
    for (size_t i = 0; i < c->size(); ++i) {
        if ((*c)[i].is_null()) d.c2c1sq.push_back(std::nullopt);
        else d.c2c1sq.push_back(Int(get_int((*c)[i], "c2c1sq[" + std::to_string(i) + "]")));
    }

    if (const json* v = find(j, "restrictions")) {
        if (!v->is_array()) schema("restrictions", "expected a list");
        for (size_t i = 0; i < v->size(); ++i) {
            const json& w = (*v)[i];
            const std::string p = "restrictions[" + std::to_string(i) + "]";
            if (!w.is_object()) schema(p, "expected an object");
            RestrictionWitness r;
            if (const json* l = find(w, "label")) r.label = l->is_string() ? l->get<std::string>() : "";
            for (auto [key, field] : {std::pair{"c2_D", &r.c2_D}, std::pair{"c1sq_D", &r.c1sq_D},
                                      std::pair{"q_DD", &r.q_DD}, std::pair{"q_DA", &r.q_DA}}) {
                const json* x = find(w, key);
                if (!x) schema(p + "." + key, "missing");
                *field = get_int(*x, p + "." + key);
            }
            d.restrictions.push_back(r);
        }
    }

    d.b3_Y = required_int(j, "b3_Y");
    d.e = required_int(j, "e");
    if (d.b3_Y < 0) schema("b3_Y", "negative");
    if (d.e < 0) schema("e", "negative");
    if (const json* v = find(j, "index")) {
        d.index = static_cast<int>(get_int(*v, "index"));
        if (d.index < 1) schema("index", "must be at least 1");
    }

    const json* bc = find(j, "base_curves");
    if (!bc) schema("base_curves", "missing");
    if (!bc->is_array() || bc->empty()) schema("base_curves", "expected a non-empty list");
    for (size_t i = 0; i < bc->size(); ++i) {
        const json& cj = (*bc)[i];
        const std::string p = "base_curves[" + std::to_string(i) + "]";
        if (!cj.is_object()) schema(p, "expected an object");
        BaseCurve curve;
        const json* g = find(cj, "genus");
        if (!g) schema(p + ".genus", "missing");
        curve.genus = get_int(*g, p + ".genus");
        if (curve.genus < 0) schema(p + ".genus", "negative");
        if (const json* s = find(cj, "step_K3"); s && !s->is_null()) curve.step_K3 = get_int(*s, p + ".step_K3");
        d.base_curves.push_back(curve);
    }

    if (const json* v = find(j, "torsion_free_h3")) {
        if (!v->is_boolean()) schema("torsion_free_h3", "expected a boolean");
        d.torsion_free_h3 = v->get<bool>();
    }
    if (const json* v = find(j, "N_gram"); v && !v->is_null()) d.N_gram = gram(*v, "N_gram");

    if (const json* v = find(j, "flops")) {
        if (!v->is_array()) schema("flops", "expected a list");
        for (size_t i = 0; i < v->size(); ++i) {
            const std::string p = "flops[" + std::to_string(i) + "]";
            const json& f = (*v)[i];
            if (!f.is_object()) schema(p, "expected an object");
            FlopSpec fs;
            fs.index = static_cast<int>(required_int(f, "index"));
            fs.d3_shift = required_int(f, "d3_shift");
            if (fs.index < 0 || fs.index >= n) schema(p + ".index", "out of range");
            d.flops.push_back(fs);
        }
    }
    if (const json* v = find(j, "nodal"); v && !v->is_null()) {
        if (!v->is_object()) schema("nodal", "expected an object");
        NodalData nd;
        nd.b = required_int(*v, "b");
        nd.e = required_int(*v, "e");
        nd.sigma = required_int(*v, "sigma");
        d.nodal = nd;
    }
    return d;
}

BlockDescriptor read_block_descriptor(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::MalformedInput, "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    BlockDescriptor d = parse_block_descriptor(ss.str());
    if (d.name.empty()) d.name = path;
    return d;
}

namespace {

json gram_json(const MatZ& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_ll(m(i, c)));
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

std::string block_descriptor_json(const BlockDescriptor& d) {
    json j = json::object();
    j["name"] = d.name;
    j["picard_gram"] = gram_json(d.picard_gram.gram);
    if (d.anticanonical) {
        json a = json::array();
        for (Eigen::Index i = 0; i < d.anticanonical->size(); ++i) a.push_back(to_ll((*d.anticanonical)(i)));
        j["anticanonical"] = a;
    } else {
        j["anticanonical"] = nullptr;
        j["degree"] = d.anticanonical_degree();
    }
    json c = json::array();
    for (const auto& v : d.c2c1sq) c.push_back(v ? json(to_ll(*v)) : json(nullptr));
    j["c2c1sq"] = c;
    if (!d.restrictions.empty()) {
        json rs = json::array();
        for (const auto& r : d.restrictions)
            rs.push_back({{"label", r.label}, {"c2_D", r.c2_D}, {"c1sq_D", r.c1sq_D}, {"q_DD", r.q_DD}, {"q_DA", r.q_DA}});
        j["restrictions"] = rs;
    }
    j["b3_Y"] = d.b3_Y;
    j["e"] = d.e;
    j["index"] = d.index;
    json bc = json::array();
    for (const auto& curve : d.base_curves) {
        json cj = {{"genus", curve.genus}};
        cj["step_K3"] = curve.step_K3 ? json(*curve.step_K3) : json(nullptr);
        bc.push_back(cj);
    }
    j["base_curves"] = bc;
    j["torsion_free_h3"] = d.torsion_free_h3;
    if (d.N_gram) j["N_gram"] = gram_json(d.N_gram->gram);
    if (!d.flops.empty()) {
        json fl = json::array();
        for (const auto& f : d.flops) fl.push_back({{"index", f.index}, {"d3_shift", f.d3_shift}});
        j["flops"] = fl;
    }
    if (d.nodal) j["nodal"] = {{"b", d.nodal->b}, {"e", d.nodal->e}, {"sigma", d.nodal->sigma}};
    return j.dump(2) + "\n";
}

}  // namespace acyl
