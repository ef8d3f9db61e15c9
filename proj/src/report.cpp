#include "acyl/report.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace acyl {

using nlohmann::json;

namespace {

DivC2 div_of(const C2Result& c) {
    DivC2 d;
    d.value = c.div_c2;
    d.lower = c.lower;
    d.upper = c.upper;
    return d;
}

std::string gram_text(const MatZ& m) {
    if (m.rows() == 1) return "<" + to_string(m(0, 0)) + ">";
    std::string s = "(";
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        s += i ? ",(" : "(";
        for (Eigen::Index j = 0; j < m.cols(); ++j) s += (j ? "," : "") + to_string(m(i, j));
        s += ")";
    }
    return s + ")";
}

std::string free_module(long long r) { return r ? "Z^" + std::to_string(r) : "(0)"; }

std::string div_text(const DivC2& d) {
    if (d.value) return std::to_string(*d.value);
    return std::to_string(d.lower) + " | div | " + std::to_string(d.upper);
}

}  // namespace

InvariantReport block_report(const BlockDescriptor& d) {
    InvariantReport r;
    r.name = d.name;
    r.degree = d.anticanonical_degree();
    const GenusDegree gd = genus_degree(r.degree);
    r.checks.push_back("(-K)^3 = 2g - 2 with g = " + std::to_string(gd.g));

    const long long k = static_cast<long long>(d.base_curves.size());
    std::vector<long long> genera;
    for (const BaseCurve& c : d.base_curves) genera.push_back(c.genus);
    if (k == 1 && genera[0] != gd.g)
        throw Error(ErrorCode::InconsistentBetti, "a generic pencil has base curve of genus " + std::to_string(gd.g) +
                                                      ", descriptor says " + std::to_string(genera[0]));

    if (d.nodal) {
        if (d.nodal->e != d.e)
            throw Error(ErrorCode::InconsistentBetti, "nodal.e differs from e");
        const long long b3 = betti3_semifano(d.nodal->b, d.nodal->e, d.nodal->sigma);
        if (b3 != d.b3_Y)
            throw Error(ErrorCode::InconsistentBetti, "b - 2e + 2 sigma = " + std::to_string(b3) + " but b3_Y = " +
                                                          std::to_string(d.b3_Y));
        r.checks.push_back("b3(Y) = b - 2e + 2 sigma = " + std::to_string(b3));
    }

    ImageLattice img = image_lattice(d.picard_gram);
    GramLattice N = img.induced;
    if (d.N_gram) {
        if (d.N_gram->rank() < N.rank())
            throw Error(ErrorCode::RankMismatch, "N_gram is smaller than the image of H2(Y)");
        N = *d.N_gram;
        r.checks.push_back("N supplied; contains the rank " + std::to_string(img.induced.rank()) + " image of H2(Y)");
    } else {
        r.checks.push_back("N = image of H2(Y) in H2(S), rank " + std::to_string(N.rank()));
    }

    SemiFanoCohomology y{d.picard_gram.rank(), d.b3_Y, img.induced.rank(), d.picard_gram.rank() - img.induced.rank()};
    BlockCohomology bc = block_cohomology(y, genera, !d.N_gram);
    r.h2_Z = bc.b2_Z;
    r.b3_Z = bc.b3_Z;
    r.rank_K = r.h2_Z - 1 - N.rank();
    if (bc.rank_K && *bc.rank_K != r.rank_K)
        throw Error(ErrorCode::RankNullityViolation, "rank K disagrees with rank K0 + k - 1");
    r.checks.push_back("H2(Z) = H2(Y) + Z^k, H3(Z) = H3(Y) + sum H1(C_i)");
    r.checks.push_back("(rk N - rk N0) + (rk K - rk K0) = " + std::to_string(bc.rank_constraint));

    AcylProfile ap = acyl_profile(r.h2_Z, r.b3_Z, N, r.rank_K);
    r.b_V = {ap.b1, ap.b2, ap.b3, ap.b4, ap.b5};
    r.N_gram = N;
    r.checks.push_back("rank K + rank N = b2(Z) - 1, b4(V) = rank K + 1");

    bool known = std::all_of(d.c2c1sq.begin(), d.c2c1sq.end(), [](const auto& v) { return v.has_value(); });
    for (const RestrictionWitness& w : d.restrictions)
        r.checks.push_back("(c2 + c1^2) restricted to " + (w.label.empty() ? std::string("a divisor") : w.label) +
                           " = " + std::to_string(c2_restriction(w.c2_D, w.c1sq_D, w.q_DD, w.q_DA)));
    C2Result c = c2_block(d);
    if (known && d.anticanonical) r.checks.push_back("(c2 + c1^2).(-K) = 24 + (-K)^3");
    r.checks.push_back("c2(Z) even");
    if (c.cor514_applies) r.checks.push_back("div c2(Z) divides gcd((24 + (-K)^3)/r, 24) = " + std::to_string(c.cor514));
    r.div_c2.push_back(div_of(c));
    for (const FlopSpec& f : d.flops) {
        BlockDescriptor fl = apply_flop(d, f);
        r.checks.push_back("flop: restriction " + to_string(*d.c2c1sq[f.index]) + " -> " + to_string(*fl.c2c1sq[f.index]) +
                           ", Gram unchanged");
        r.div_c2.push_back(div_of(c2_block(fl)));
    }

    r.e = d.e;
    r.torsion_unknown = !d.torsion_free_h3;
    if (r.torsion_unknown) r.checks.push_back("TORSION-UNKNOWN: H3(Y) torsion not excluded");
    return r;
}

std::string report_json(const InvariantReport& r) {
    json j;
    j["name"] = r.name;
    j["degree"] = r.degree;
    j["h2_Z"] = r.h2_Z;
    json rows = json::array();
    for (Eigen::Index i = 0; i < r.N_gram.gram.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index c = 0; c < r.N_gram.gram.cols(); ++c) row.push_back(to_ll(r.N_gram.gram(i, c)));
        rows.push_back(row);
    }
    j["N_gram"] = rows;
    j["rank_K"] = r.rank_K;
    j["b3_Z"] = r.b3_Z;
    json divs = json::array();
    for (const DivC2& d : r.div_c2)
        divs.push_back({{"value", d.value ? json(*d.value) : json(nullptr)}, {"lower", d.lower}, {"upper", d.upper}});
    j["div_c2"] = divs;
    j["e"] = r.e;
    j["b_V"] = r.b_V;
    j["torsion_unknown"] = r.torsion_unknown;
    j["checks"] = r.checks;
    return j.dump(2) + "\n";
}

InvariantReport report_from_json(const std::string& text) {
    try {
        json j = json::parse(text);
        InvariantReport r;
        r.name = j.at("name").get<std::string>();
        r.degree = j.at("degree").get<long long>();
        r.h2_Z = j.at("h2_Z").get<long long>();
        std::vector<std::vector<long long>> rows = j.at("N_gram").get<std::vector<std::vector<long long>>>();
        r.N_gram = rows.empty() ? GramLattice(MatZ(0, 0)) : gram_from_rows(rows);
        r.rank_K = j.at("rank_K").get<long long>();
        r.b3_Z = j.at("b3_Z").get<long long>();
        for (const json& d : j.at("div_c2")) {
            DivC2 x;
            if (!d.at("value").is_null()) x.value = d.at("value").get<long long>();
            x.lower = d.at("lower").get<long long>();
            x.upper = d.at("upper").get<long long>();
            r.div_c2.push_back(x);
        }
        r.e = j.at("e").get<long long>();
        r.b_V = j.at("b_V").get<std::vector<long long>>();
        r.torsion_unknown = j.at("torsion_unknown").get<bool>();
        r.checks = j.at("checks").get<std::vector<std::string>>();
        return r;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::SchemaViolation, std::string("report: ") + e.what());
    }
}

std::string report_table(const InvariantReport& r) {
    std::ostringstream out;
    auto line = [&](const std::string& key, const std::string& value) {
        out << std::left << std::setw(12) << key << value << "\n";
    };
    if (r.torsion_unknown) out << "TORSION-UNKNOWN\n";
    line("block", r.name);
    line("-K^3", std::to_string(r.degree));
    line("H2(Z)", free_module(r.h2_Z));
    line("N", gram_text(r.N_gram.gram));
    line("K", free_module(r.rank_K));
    line("H3(Z)", free_module(r.b3_Z));
    std::string divs;
    for (size_t i = 0; i < r.div_c2.size(); ++i) divs += (i ? ", " : "") + div_text(r.div_c2[i]);
    line("div c2(Z)", divs);
    line("e", std::to_string(r.e));
    out << "checks\n";
    for (const std::string& c : r.checks) out << "  " << c << "\n";
    return out.str();
}

std::string fano_rank1_table_text() {
    std::ostringstream out;
    out << std::left << std::setw(18) << "Y" << std::right << std::setw(4) << "r" << std::setw(8) << "-K^3"
        << std::setw(8) << "b3(Y)" << std::setw(8) << "b3(Z)" << std::setw(10) << "div c2" << "\n";
    for (const FanoDescriptor& w : fano_rank1_table()) {
        Table71Row row = table71_row(w);
        out << std::left << std::setw(18) << w.name << std::right << std::setw(4) << w.index << std::setw(8)
            << w.degree << std::setw(8) << w.b3 << std::setw(8) << row.b3_Z << std::setw(10) << row.div_c2 << "\n";
    }
    return out.str();
}

std::string fano_rank1_table_json() {
    json rows = json::array();
    for (const FanoDescriptor& w : fano_rank1_table()) {
        Table71Row row = table71_row(w);
        rows.push_back({{"name", w.name}, {"index", w.index}, {"degree", w.degree}, {"b3_Y", w.b3},
                        {"b3_Z", row.b3_Z}, {"div_c2", row.div_c2}});
    }
    return rows.dump(2) + "\n";
}

}  // namespace acyl
