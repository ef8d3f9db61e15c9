// acyl: command line front end for the lattice, block and toric computations.
// Exit codes: 0 success, 1 input or schema error, 2 mathematical failure.

#include "acyl/k3.hpp"
#include "acyl/report.hpp"
#include "acyl/toric.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <iostream>
#include <sstream>

using namespace acyl;
using nlohmann::json;

namespace {

int exit_code(const Error& e) { return e.is_input_error() ? 1 : 2; }

json to_json(const Int& x) {
    if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
        return json(x.convert_to<long long>());
    return json(to_string(x));
}

json to_json(const MatZ& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

std::string matrix_text(const MatZ& m) {
    std::ostringstream out;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        out << "  ";
        for (Eigen::Index j = 0; j < m.cols(); ++j) out << (j ? " " : "") << m(i, j);
        out << "\n";
    }
    return out.str();
}

// a file name, or a standard lattice expression when no such file exists
GramLattice lattice_arg(const std::string& arg) {
    if (std::filesystem::exists(arg)) return read_gram_file(arg);
    try {
        return standard_lattice(arg);
    } catch (const Error&) {
        throw Error(ErrorCode::MalformedInput, "cannot open " + arg + " and it is not a lattice expression");
    }
}

std::string disc_text(const std::vector<Int>& d) {
    if (d.empty()) return "trivial";
    std::string s;
    for (size_t i = 0; i < d.size();) {
        size_t j = i;
        while (j < d.size() && d[j] == d[i]) ++j;
        if (!s.empty()) s += " ";
        s += to_string(d[i]);
        if (j - i > 1) s += "^" + std::to_string(j - i);
        i = j;
    }
    return s;
}

json profile_json(const GramLattice& g) {
    LatticeProfile p = lattice_profile(g);
    json j;
    j["rank"] = p.rank;
    j["signature"] = {p.signature.pos, p.signature.zero, p.signature.neg};
    j["det"] = to_json(p.det);
    j["even"] = p.even;
    json d = json::array();
    for (const Int& x : p.disc) d.push_back(to_json(x));
    j["disc"] = d;
    j["p_elementary"] = p.p_elementary ? json{{"p", p.p_elementary->p}, {"ell", p.p_elementary->ell}} : json(nullptr);
    std::optional<RSCertificate> rs = rudakov_shafarevich_certificate(g);
    j["rs_certificate"] = rs ? json{{"p", rs->p}, {"ell", rs->ell}, {"rank", rs->rank}} : json(nullptr);
    return j;
}

std::string profile_text(const GramLattice& g) {
    LatticeProfile p = lattice_profile(g);
    std::ostringstream out;
    out << "rank        " << p.rank << "\n";
    out << "signature   (" << p.signature.pos << "," << p.signature.neg << ")";
    if (p.signature.zero) out << ", radical " << p.signature.zero;
    out << "\n";
    out << "det         " << p.det << "\n";
    out << "parity      " << (p.even ? "even" : "odd") << "\n";
    out << "disc        " << disc_text(p.disc) << "\n";
    if (p.p_elementary) out << "elementary  " << p.p_elementary->p << "-elementary, l = " << p.p_elementary->ell << "\n";
    if (std::optional<RSCertificate> rs = rudakov_shafarevich_certificate(g))
        out << "unique      yes (even, hyperbolic, " << rs->p << "-elementary, rank " << rs->rank << ")\n";
    return out.str();
}

std::vector<bool> parse_choice(const std::string& bits, int nodes) {
    if (static_cast<int>(bits.size()) != nodes)
        throw Error(ErrorCode::MalformedInput,
                    "--choice needs " + std::to_string(nodes) + " digits, one per parallelogram, got '" + bits + "'");
    std::vector<bool> c;
    for (char ch : bits) {
        if (ch != '0' && ch != '1') throw Error(ErrorCode::MalformedInput, "--choice must be a string of 0 and 1");
        c.push_back(ch == '1');
    }
    return c;
}

std::string choice_text(const std::vector<bool>& c) {
    std::string s;
    for (bool b : c) s += b ? '1' : '0';
    return s;
}

json polytope_profile_json(const LatticePolytope& p) {
    PolytopeProfile pr = polytope_profile(p);
    json j;
    json vs = json::array();
    for (const V3& v : p.vertices) vs.push_back({v[0], v[1], v[2]});
    j["vertices"] = vs;
    j["reflexive"] = pr.reflexive;
    j["self_dual"] = pr.self_dual;
    j["terminal"] = pr.terminal;
    j["semismall"] = pr.semismall;
    j["nodes"] = pr.nodes;
    j["lattice_points"] = pr.lattice_points;
    j["rho_Y"] = pr.rho_resolution;
    j["degree"] = pr.degree ? json(*pr.degree) : json(nullptr);
    j["genus"] = pr.genus ? json(*pr.genus) : json(nullptr);
    j["rho_X"] = pr.rho_X;
    j["defect"] = pr.defect;
    return j;
}

std::string polytope_profile_text(const json& j) {
    std::ostringstream out;
    out << "vertices        " << j["vertices"].size() << "\n";
    out << "reflexive       " << (j["reflexive"].get<bool>() ? "yes" : "no") << "\n";
    if (!j["reflexive"].get<bool>()) return out.str();
    out << "self-dual       " << (j["self_dual"].get<bool>() ? "yes" : "no") << "\n";
    out << "terminal        " << (j["terminal"].get<bool>() ? "yes" : "no") << "\n";
    out << "semi-small      " << (j["semismall"].get<bool>() ? "yes" : "no") << "\n";
    out << "nodes e         " << j["nodes"] << "\n";
    out << "lattice points  " << j["lattice_points"] << "\n";
    out << "rho(Y)          " << j["rho_Y"] << "\n";
    out << "degree          " << j["degree"] << "\n";
    out << "genus           " << j["genus"] << "\n";
    out << "rho(X)          " << j["rho_X"] << "\n";
    out << "defect          " << j["defect"] << "\n";
    return out.str();
}

json resolutions_json(const LatticePolytope& p, bool classes, bool certificates) {
    json j;
    const int e = static_cast<int>(parallelograms(p).size());
    std::size_t total = 0, projective = 0;
    json certs = json::array();
    for (const FanResolution& r : enumerate_resolutions(p)) {
        ++total;
        ProjectivityResult pr = is_projective(r);
        if (pr.projective) ++projective;
        if (certificates) {
            json c;
            c["choice"] = choice_text(r.choice);
            c["projective"] = pr.projective;
            c["epsilon"] = to_string(pr.epsilon);
            json hs = json::array();
            for (const Rational& h : pr.heights) hs.push_back(to_string(h));
            c["heights"] = hs;
            certs.push_back(c);
        }
    }
    j["nodes"] = e;
    j["resolutions"] = total;
    j["projective"] = projective;
    if (classes) {
        ResolutionClasses rc = resolution_classes(p);
        j["classes"] = rc.classes;
        j["group_order"] = rc.group_order;
    }
    if (certificates) j["certificates"] = certs;
    return j;
}

std::string resolutions_text(const json& j) {
    std::ostringstream out;
    out << "nodes           " << j["nodes"] << "\n";
    out << "resolutions     " << j["resolutions"] << "\n";
    out << "projective      " << j["projective"] << "\n";
    if (j.contains("classes")) {
        out << "classes         " << j["classes"] << "\n";
        out << "|Aut(P)|        " << j["group_order"] << "\n";
    }
    if (j.contains("certificates"))
        for (const json& c : j["certificates"]) {
            out << c["choice"].get<std::string>() << "  " << (c["projective"].get<bool>() ? "projective" : "not projective");
            if (c["projective"].get<bool>()) {
                out << "  heights";
                for (const json& h : c["heights"]) out << " " << h.get<std::string>();
            }
            out << "\n";
        }
    return out.str();
}

json fan_invariants_json(const LatticePolytope& p, const std::string& bits) {
    std::vector<bool> c = parse_choice(bits, static_cast<int>(parallelograms(p).size()));
    FanResolution r = resolution(p, c);
    FanInvariants fi = fan_invariants(r);
    json j;
    j["choice"] = choice_text(c);
    j["smooth"] = fi.smooth;
    j["antiK_cubed"] = fi.antiK_cubed;
    j["boundary_gram"] = to_json(fi.boundary_gram.gram);
    j["boundary_rank"] = image_lattice(fi.boundary_gram).induced.rank();
    j["c2c1sq"] = fi.c2c1sq;
    j["demazure_roots"] = fi.demazure_roots;
    j["h0_T"] = fi.h0;
    j["h1_T"] = fi.h1;
    j["rigid"] = fi.rigid;
    j["projective"] = is_projective(r).projective;
    return j;
}

std::string fan_invariants_text(const json& j) {
    std::ostringstream out;
    out << "choice          " << j["choice"].get<std::string>() << "\n";
    out << "smooth          " << (j["smooth"].get<bool>() ? "yes" : "no") << "\n";
    out << "projective      " << (j["projective"].get<bool>() ? "yes" : "no") << "\n";
    out << "(-K)^3          " << j["antiK_cubed"] << "\n";
    out << "boundary rank   " << j["boundary_rank"] << "\n";
    out << "(c2+c1^2).D_i  ";
    for (const json& x : j["c2c1sq"]) out << " " << x;
    out << "\n";
    out << "Demazure roots  " << j["demazure_roots"] << "\n";
    out << "h0(T), h1(T)    " << j["h0_T"] << ", " << j["h1_T"] << "\n";
    out << "rigid           " << (j["rigid"].get<bool>() ? "yes" : "no") << "\n";
    out << "boundary Gram\n";
    for (const json& row : j["boundary_gram"]) {
        out << " ";
        for (const json& x : row) out << " " << std::setw(2) << x.get<long long>();
        out << "\n";
    }
    return out.str();
}

// Runs f on every polytope of the file. One polytope: errors propagate.
// Several: each failure becomes a record and the worst exit code is returned.
template <class F, class T>
int for_each_polytope(const std::string& path, bool as_json, F&& f, T&& text) {
    std::vector<LatticePolytope> ps = read_polytope_file(path);
    if (ps.size() == 1) {
        json j = f(ps[0]);
        std::cout << (as_json ? j.dump(2) + "\n" : text(j));
        return 0;
    }
    int worst = 0;
    json all = json::array();
    for (size_t k = 0; k < ps.size(); ++k) {
        json rec;
        rec["index"] = k;
        try {
            rec["result"] = f(ps[k]);
        } catch (const Error& e) {
            rec["error"] = e.what();
            worst = std::max(worst, exit_code(e));
        }
        if (as_json) {
            all.push_back(rec);
        } else {
            std::cout << "# polytope " << k << "\n";
            std::cout << (rec.contains("error") ? "error: " + rec["error"].get<std::string>() + "\n" : text(rec["result"]));
        }
    }
    if (as_json) std::cout << all.dump(2) << "\n";
    return worst;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Invariants of ACyl Calabi-Yau building blocks"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "structured output");

    // lattice
    CLI::App* lat = app.add_subcommand("lattice", "integral lattices given as Gram files or expressions");
    lat->require_subcommand(1);
    std::string gram_a, gram_b, sub_file;
    int bound = 4;
    long long value = -2;
    CLI::App* l_prof = lat->add_subcommand("profile", "rank, signature, discriminant group");
    l_prof->add_option("gram", gram_a)->required();
    CLI::App* l_snf = lat->add_subcommand("snf", "Smith normal form of a matrix file ('n' or 'k n' header)");
    l_snf->add_option("matrix", gram_a)->required();
    CLI::App* l_comp = lat->add_subcommand("complement", "orthogonal complement of a sublattice");
    l_comp->add_option("--ambient", gram_a)->required();
    l_comp->add_option("--sub", sub_file, "basis rows in ambient coordinates")->required();
    CLI::App* l_iso = lat->add_subcommand("isometric", "bounded search for an isometry");
    l_iso->add_option("a", gram_a)->required();
    l_iso->add_option("b", gram_b)->required();
    l_iso->add_option("--bound", bound, "entry bound of the transform")->capture_default_str();
    CLI::App* l_rep = lat->add_subcommand("represent", "vectors of a given norm in a box");
    l_rep->add_option("gram", gram_a)->required();
    l_rep->add_option("--value", value)->capture_default_str();
    l_rep->add_option("--bound", bound)->capture_default_str();

    // blocks
    CLI::App* blk = app.add_subcommand("block", "building block report from a descriptor file");
    std::vector<std::string> block_files;
    std::string table;
    blk->add_option("descriptor", block_files);
    blk->add_option("--table", table, "print a built-in table (fano-rank1)");

    // toric
    CLI::App* tor = app.add_subcommand("toric", "reflexive polytopes in dimension 3");
    tor->require_subcommand(1);
    std::string poly_file, choice, pencil = "generic", name = "toric";
    bool classes = false, certificates = false;
    CLI::App* t_prof = tor->add_subcommand("profile", "reflexivity, terminality, degree, defect");
    t_prof->add_option("polytope", poly_file)->required();
    CLI::App* t_res = tor->add_subcommand("resolutions", "small resolutions and their projectivity");
    t_res->add_option("polytope", poly_file)->required();
    t_res->add_flag("--classes", classes, "count Aut(P) orbits");
    t_res->add_flag("--certificates", certificates, "print support function heights");
    CLI::App* t_fan = tor->add_subcommand("fan-invariants", "intersection numbers of one resolution");
    t_fan->add_option("polytope", poly_file)->required();
    t_fan->add_option("--choice", choice, "one digit per parallelogram")->required();
    CLI::App* t_desc = tor->add_subcommand("descriptor", "block descriptor of one resolution");
    t_desc->add_option("polytope", poly_file)->required();
    t_desc->add_option("--choice", choice, "one digit per parallelogram")->required();
    t_desc->add_option("--pencil", pencil, "generic or boundary")
        ->check(CLI::IsMember({"generic", "boundary"}))
        ->capture_default_str();
    t_desc->add_option("--name", name)->capture_default_str();

    for (CLI::App* sub : {lat, blk, tor}) sub->fallthrough();
    for (CLI::App* sub : lat->get_subcommands({})) sub->fallthrough();
    for (CLI::App* sub : tor->get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*l_prof) {
            GramLattice g = lattice_arg(gram_a);
            std::cout << (as_json ? profile_json(g).dump(2) + "\n" : profile_text(g));
        } else if (*l_snf) {
            MatZ m = read_matrix_file(gram_a);
            SmithResult<Int> s = smith_normal_form(m);
            std::vector<Int> f;
            for (Eigen::Index i = 0; i < std::min(s.D.rows(), s.D.cols()); ++i)
                if (s.D(i, i) != 0) f.push_back(s.D(i, i));
            if (as_json) {
                json j;
                json fs = json::array();
                for (const Int& x : f) fs.push_back(to_json(x));
                j["rank"] = s.rank;
                j["invariant_factors"] = fs;
                j["D"] = to_json(s.D);
                j["U"] = to_json(s.U);
                j["V"] = to_json(s.V);
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << "rank " << s.rank << "\ninvariant factors";
                for (const Int& x : f) std::cout << " " << x;
                std::cout << "\nD\n" << matrix_text(s.D) << "U\n" << matrix_text(s.U) << "V\n" << matrix_text(s.V);
            }
        } else if (*l_comp) {
            GramLattice amb = lattice_arg(gram_a);
            MatZ sub = read_matrix_file(sub_file);
            if (sub.cols() != amb.rank())
                throw Error(ErrorCode::MalformedInput, "--sub rows have " + std::to_string(sub.cols()) +
                                                           " entries, ambient rank is " + std::to_string(amb.rank()));
            Complement c = orthogonal_complement(amb, sub);
            if (as_json) {
                json j;
                j["basis"] = to_json(c.basis);
                j["gram"] = to_json(c.induced.gram);
                j["profile"] = profile_json(c.induced);
                j["primitive_sub"] = is_primitive_sublattice(sub);
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << "sublattice primitive: " << (is_primitive_sublattice(sub) ? "yes" : "no") << "\n";
                std::cout << "complement basis\n" << matrix_text(c.basis) << "complement Gram\n"
                          << matrix_text(c.induced.gram) << profile_text(c.induced);
            }
        } else if (*l_iso) {
            GramLattice a = lattice_arg(gram_a), b = lattice_arg(gram_b);
            std::optional<MatZ> u = is_isometric_bounded(a, b, bound);
            if (as_json) {
                json j;
                j["isometric"] = u.has_value();
                j["bound"] = bound;
                j["transform"] = u ? to_json(*u) : json(nullptr);
                std::cout << j.dump(2) << "\n";
            } else if (u) {
                std::cout << "isometric: U^T A U = B with U =\n" << matrix_text(*u);
            } else {
                std::cout << "no isometry with entries in [-" << bound << ", " << bound << "]\n";
            }
        } else if (*l_rep) {
            GramLattice g = lattice_arg(gram_a);
            std::vector<VecZ> vs = represent(g, value, bound);
            if (as_json) {
                json j = json::array();
                for (const VecZ& v : vs) j.push_back(to_json(MatZ(v.transpose()))[0]);
                std::cout << json{{"value", value}, {"bound", bound}, {"vectors", j}}.dump(2) << "\n";
            } else {
                std::cout << vs.size() << " vectors of norm " << value << " in [-" << bound << ", " << bound << "]^"
                          << g.rank() << "\n";
                for (const VecZ& v : vs) std::cout << matrix_text(MatZ(v.transpose()));
            }
        } else if (*blk) {
            if (!table.empty()) {
                if (table != "fano-rank1") throw Error(ErrorCode::MalformedInput, "unknown table '" + table + "'");
                std::cout << (as_json ? fano_rank1_table_json() : fano_rank1_table_text());
                return 0;
            }
            if (block_files.empty()) throw Error(ErrorCode::MalformedInput, "no descriptor file given");
            for (const std::string& f : block_files) {
                InvariantReport r = block_report(read_block_descriptor(f));
                std::cout << (as_json ? report_json(r) : report_table(r));
            }
        } else if (*t_prof) {
            return for_each_polytope(poly_file, as_json, polytope_profile_json, polytope_profile_text);
        } else if (*t_res) {
            return for_each_polytope(
                poly_file, as_json, [&](const LatticePolytope& p) { return resolutions_json(p, classes, certificates); },
                resolutions_text);
        } else if (*t_fan) {
            return for_each_polytope(
                poly_file, as_json, [&](const LatticePolytope& p) { return fan_invariants_json(p, choice); },
                fan_invariants_text);
        } else if (*t_desc) {
            std::vector<LatticePolytope> ps = read_polytope_file(poly_file);
            if (ps.size() != 1) throw Error(ErrorCode::MalformedInput, "descriptor needs a file with one polytope");
            std::vector<bool> c = parse_choice(choice, static_cast<int>(parallelograms(ps[0]).size()));
            std::cout << block_descriptor_json(toric_block_descriptor(ps[0], c, pencil == "boundary", name)) << "\n";
        }
    } catch (const Error& e) {
        std::cerr << "acyl: " << e.what() << "\n";
        return exit_code(e);
    }
    return 0;
}
