#include <doctest.h>

#include "acyl/k3.hpp"
#include "acyl/report.hpp"
#include "acyl/toric.hpp"
#include "helpers.hpp"

#include <map>
#include <set>

using namespace acyl;

namespace {

LatticePolytope load(const std::string& name) {
    std::vector<LatticePolytope> ps = read_polytope_file(data_path("polytopes/" + name + ".txt"));
    REQUIRE(ps.size() == 1);
    return ps[0];
}

std::vector<LatticePolytope> all_polytopes() {
    return {load("p1942"), load("simplex"), load("cube"), load("quadric_cone")};
}

template <class F>
ErrorCode code_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error thrown");
    return ErrorCode::MalformedInput;
}

long long at(const std::vector<long long>& t, int n, int i, int j, int k) {
    return t[(static_cast<size_t>(i) * n + j) * n + k];
}

// Strict convexity of the piecewise linear function with the given values on
// the rays, checked cone by cone: the linear form of each cone must stay on
// one side of every other ray's value.
bool strictly_convex_oracle(const FanResolution& r, const std::vector<Rational>& h) {
    int sign = 0;
    for (const auto& c : r.cones) {
        Eigen::Matrix<Rational, 3, 3> m;
        for (int row = 0; row < 3; ++row)
            for (int col = 0; col < 3; ++col) m(row, col) = Rational(r.rays[c[row]][col]);
        Eigen::Matrix<Rational, 3, 1> rhs(h[c[0]], h[c[1]], h[c[2]]);
        // Cramer's rule for the linear form l with l(v) = h(v) on the cone
        auto det = [](const Eigen::Matrix<Rational, 3, 3>& a) {
            return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
                   a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
        };
        Rational d = det(m);
        Eigen::Matrix<Rational, 3, 1> l;
        for (int col = 0; col < 3; ++col) {
            Eigen::Matrix<Rational, 3, 3> mc = m;
            mc.col(col) = rhs;
            l[col] = det(mc) / d;
        }
        for (size_t v = 0; v < r.rays.size(); ++v) {
            if (v == static_cast<size_t>(c[0]) || v == static_cast<size_t>(c[1]) || v == static_cast<size_t>(c[2])) continue;
            Rational lv = l[0] * r.rays[v][0] + l[1] * r.rays[v][1] + l[2] * r.rays[v][2];
            int s = lv < h[v] ? -1 : (lv > h[v] ? 1 : 0);
            if (s == 0) return false;
            if (sign == 0) sign = s;
            if (s != sign) return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("parsing polytope files") {
    LatticePolytope p = load("p1942");
    CHECK(p.vertices.size() == 13);
    LatticePolytope s = load("simplex");
    CHECK(s.vertices.size() == 4);

    // a repeated column and an interior point change nothing
    LatticePolytope r = parse_polytope("3 6\n1 0 0 -1 1 0\n0 1 0 -1 0 0\n0 0 1 -1 0 0\n");
    CHECK(r.vertices == s.vertices);
    // the transposed layout
    CHECK(parse_polytope("4 3\n1 0 0\n0 1 0\n0 0 1\n-1 -1 -1\n").vertices == s.vertices);
    CHECK(parse_polytope(polytope_text(p)).vertices == p.vertices);

    std::vector<LatticePolytope> batch = parse_polytopes(polytope_text(p) + polytope_text(s));
    REQUIRE(batch.size() == 2);
    CHECK(batch[1].vertices == s.vertices);

    CHECK(code_of([] { parse_polytope("3 2\n1 0\n0 1\n"); }) == ErrorCode::MalformedInput);
    CHECK(code_of([] { parse_polytope("3 4\n1 0 0 x\n0 1 0 -1\n0 0 1 -1\n"); }) == ErrorCode::MalformedInput);
    CHECK(code_of([] { parse_polytope("3 4\n1 0 1 2\n0 1 1 3\n0 0 0 0\n"); }) == ErrorCode::NotFullDimensional);
}

TEST_CASE("profile of polytope 1942") {
    PolytopeProfile pr = polytope_profile(load("p1942"));
    CHECK(pr.reflexive);
    CHECK(pr.self_dual);
    CHECK(pr.terminal);
    CHECK(pr.semismall);
    CHECK(pr.nodes == 9);
    CHECK(pr.lattice_points == 14);
    CHECK(pr.rho_resolution == 10);
    CHECK(pr.degree == 22);
    CHECK(pr.genus == 12);
    CHECK(pr.rho_X == 1);
    CHECK(pr.defect == 9);
    CHECK(pr.defect == pr.nodes);
}

TEST_CASE("profiles of small polytopes") {
    // P3: the dual simplex has vertices 3e_i - (1,1,1) and -(1,1,1);
    // its normalized volume is the determinant of the edge vectors
    PolytopeProfile s = polytope_profile(load("simplex"));
    oracle::Rows edges{{4, 0, 0}, {0, 4, 0}, {0, 0, 4}};
    CHECK(s.degree == std::llabs(oracle::cofactor_det(edges)));
    CHECK(s.degree == 64);
    CHECK(s.lattice_points == 5);
    CHECK(s.nodes == 0);
    CHECK(s.rho_X == 1);
    CHECK(s.defect == 0);
    CHECK_FALSE(s.self_dual);

    // the octahedron's dual is the cube with facets of lattice area 8 (not terminal)
    PolytopeProfile c = polytope_profile(load("cube"));
    CHECK(c.reflexive);
    CHECK_FALSE(c.terminal);
    CHECK_FALSE(c.semismall);
    CHECK(c.lattice_points == 27);
    CHECK(c.degree == 8);  // (P1)^3 / (Z/2)^2 style quotient: dual octahedron has volume 8

    // cone over a quadric surface: one node, Picard rank 1, defect 1
    PolytopeProfile q = polytope_profile(load("quadric_cone"));
    CHECK(q.terminal);
    CHECK(q.nodes == 1);
    CHECK(q.rho_X == 1);
    CHECK(q.defect == 1);
    CHECK(q.degree == 54);

    // a lattice polygon prism that is not reflexive
    LatticePolytope big = parse_polytope("3 4\n2 0 0 -1\n0 2 0 -1\n0 0 2 -1\n");
    PolytopeProfile b = polytope_profile(big);
    CHECK_FALSE(b.reflexive);
    CHECK_FALSE(b.degree);
    CHECK(code_of([&] { dual_polytope(big); }) == ErrorCode::NotReflexive);
    CHECK(code_of([&] { resolution(load("cube"), {}); }) == ErrorCode::NotTerminal);
}

TEST_CASE("facet classification") {
    LatticePolytope p = load("p1942");
    int tri = 0, par = 0;
    for (const Facet& f : facets(p)) {
        CHECK(f.level == -1);
        FacetKind k = classify_facet(p, f);
        if (k == FacetKind::StandardTriangle) ++tri;
        if (k == FacetKind::StandardParallelogram) ++par;
    }
    CHECK(par == 9);
    // Euler: V - E + F = 2 with 2E = 3 tri + 4 par
    CHECK(tri % 2 == 0);
    CHECK(13 - (3 * tri + 4 * par) / 2 + (tri + par) == 2);
    for (const Facet& f : facets(load("cube"))) CHECK(classify_facet(load("cube"), f) == FacetKind::Other);
}

TEST_CASE("property: duality and equivalence") {
    for (const LatticePolytope& p : all_polytopes()) {
        LatticePolytope dd = dual_polytope(dual_polytope(p));
        CHECK(unimodular_equivalence(p, dd).has_value());
        CHECK(dd.vertices == p.vertices);
        // every automorphism permutes the vertices
        std::set<std::array<long long, 3>> vs;
        for (const V3& v : p.vertices) vs.insert({v[0], v[1], v[2]});
        for (const M3& a : automorphisms(p)) {
            CHECK(std::llabs(a.determinant()) == 1);
            for (const V3& v : p.vertices) {
                V3 w = a * v;
                CHECK(vs.count({w[0], w[1], w[2]}) == 1);
            }
        }
    }
    // a random unimodular change of basis is detected
    LatticePolytope p = load("p1942");
    M3 g;
    g << 1, 2, 0, 0, 1, -1, 1, 2, 1;  // det 1
    REQUIRE(g.determinant() == 1);
    std::vector<V3> moved;
    for (const V3& v : p.vertices) moved.push_back(g * v);
    LatticePolytope q = polytope_from_points(moved);
    std::optional<M3> a = unimodular_equivalence(p, q);
    REQUIRE(a);
    CHECK(polytope_profile(q).degree == 22);
    CHECK_FALSE(unimodular_equivalence(p, load("simplex")));
}

TEST_CASE("resolutions and projectivity of polytope 1942") {
    LatticePolytope p = load("p1942");
    std::vector<FanResolution> rs = enumerate_resolutions(p);
    CHECK(rs.size() == 512);
    std::set<std::vector<std::array<int, 3>>> distinct;
    for (const FanResolution& r : rs) {
        // 18 triangles + 9 split parallelograms, Euler for a sphere with 13 vertices
        CHECK(r.cones.size() == 2 * 13 - 4);
        distinct.insert(r.cones);
    }
    CHECK(distinct.size() == 512);

    size_t checked = 0;
    for (size_t k = 0; k < rs.size(); k += 37) {
        ProjectivityResult pr = is_projective(rs[k]);
        CHECK(pr.projective);
        CHECK(pr.epsilon > 0);
        CHECK(check_heights(rs[k], pr.heights));
        CHECK(strictly_convex_oracle(rs[k], pr.heights));
        ++checked;
    }
    CHECK(checked == 14);

    ResolutionClasses rc = resolution_classes(p);
    CHECK(rc.resolutions == 512);
    CHECK(rc.projective == 512);
    CHECK(rc.classes == 84);
}

TEST_CASE("orbit count agrees with Burnside") {
    LatticePolytope p = load("p1942");
    std::vector<Parallelogram> par = parallelograms(p);
    std::map<std::array<long long, 3>, int> index;
    for (size_t i = 0; i < p.vertices.size(); ++i) index[{p.vertices[i][0], p.vertices[i][1], p.vertices[i][2]}] = i;
    std::vector<M3> group = automorphisms(p);
    // a choice is a set of 9 diagonals; count those fixed by each g
    long long total = 0;
    for (const M3& g : group) {
        std::vector<int> perm(p.vertices.size());
        for (size_t i = 0; i < p.vertices.size(); ++i) {
            V3 w = g * p.vertices[i];
            perm[i] = index.at({w[0], w[1], w[2]});
        }
        long long fixed = 0;
        for (size_t c = 0; c < 512; ++c) {
            std::set<std::array<int, 2>> chosen, image;
            for (size_t k = 0; k < par.size(); ++k) {
                std::array<int, 2> d = par[k].diagonals[(c >> k) & 1U];
                chosen.insert(d);
                std::array<int, 2> e{perm[d[0]], perm[d[1]]};
                if (e[0] > e[1]) std::swap(e[0], e[1]);
                image.insert(e);
            }
            if (chosen == image) ++fixed;
        }
        total += fixed;
    }
    CHECK(total % static_cast<long long>(group.size()) == 0);
    CHECK(total / static_cast<long long>(group.size()) == 84);
}

TEST_CASE("property: projectivity is invariant under automorphisms") {
    LatticePolytope p = load("quadric_cone");
    std::vector<ChoiceAction> g = choice_actions(p);
    for (size_t k = 0; k < 2; ++k) {
        std::vector<bool> c = choice_from_index(k, 1);
        bool proj = is_projective(resolution(p, c)).projective;
        for (const ChoiceAction& a : g) CHECK(is_projective(resolution(p, act(a, c))).projective == proj);
    }
    LatticePolytope q = load("p1942");
    std::vector<ChoiceAction> h = choice_actions(q);
    for (size_t k = 0; k < 512; k += 61)
        for (const ChoiceAction& a : h) {
            std::vector<bool> c = choice_from_index(k, 9);
            FanResolution r1 = resolution(q, c), r2 = resolution(q, act(a, c));
            CHECK(fan_invariants(r1).antiK_cubed == fan_invariants(r2).antiK_cubed);
        }
}

TEST_CASE("single parallelogram and the simplex") {
    LatticePolytope q = load("quadric_cone");
    std::vector<FanResolution> rs = enumerate_resolutions(q);
    REQUIRE(rs.size() == 2);
    std::set<std::array<int, 3>> a(rs[0].cones.begin(), rs[0].cones.end()), b(rs[1].cones.begin(), rs[1].cones.end());
    std::vector<std::array<int, 3>> diff;
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(diff));
    CHECK(diff.size() == 4);  // one cone pair swapped for the other
    ResolutionClasses rc = resolution_classes(q);
    CHECK(rc.projective == 2);
    CHECK(rc.classes == 1);

    LatticePolytope s = load("simplex");
    CHECK(enumerate_resolutions(s).size() == 1);
    rc = resolution_classes(s);
    CHECK(rc.projective == 1);
    CHECK(rc.classes == 1);
    CHECK(rc.group_order == 24);
}

TEST_CASE("property: wall relations") {
    for (const LatticePolytope& p : {load("p1942"), load("quadric_cone"), load("simplex")}) {
        int e = static_cast<int>(parallelograms(p).size());
        FanResolution r = resolution(p, choice_from_index(0, e));
        for (const Wall& w : walls(r)) {
            V3 s = w.ca * r.rays[w.a] + w.cb * r.rays[w.b] + w.ci * r.rays[w.i] + w.cj * r.rays[w.j];
            CHECK(s == V3::Zero());
            CHECK(w.ca == 1);
            CHECK(w.cb == 1);
        }
        CHECK(walls(r).size() * 2 == r.cones.size() * 3);
    }
}

TEST_CASE("intersection numbers and fan invariants") {
    // P3: every triple product is H^3 = 1
    FanResolution s = resolution(load("simplex"), {});
    std::vector<long long> t = triple_intersections(s);
    for (long long x : t) CHECK(x == 1);
    FanInvariants fs = fan_invariants(s);
    CHECK(fs.antiK_cubed == 64);
    CHECK(fs.c2c1sq == std::vector<long long>(4, 22));  // c2.H = 6, c1^2.H = 16
    CHECK(fs.demazure_roots == 12);                     // dim PGL4 = 15 = 3 + 12
    CHECK(fs.rigid);

    LatticePolytope p = load("p1942");
    for (size_t k = 0; k < 512; k += 51) {
        FanResolution r = resolution(p, choice_from_index(k, 9));
        const int n = static_cast<int>(r.rays.size());
        std::vector<long long> T = triple_intersections(r);
        // linear relations: sum <m, v_k> D_k = 0 for each basis character m
        for (int c = 0; c < 3; ++c)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    long long sum = 0;
                    for (int l = 0; l < n; ++l) sum += r.rays[l][c] * at(T, n, i, j, l);
                    CHECK(sum == 0);
                }
        FanInvariants fi = fan_invariants(r);
        CHECK(fi.smooth);
        CHECK(fi.antiK_cubed == 22);
        CHECK(fi.antiK_cubed == polytope_profile(p).degree);
        for (int i = 0; i < n; ++i) CHECK(fi.boundary_gram.gram(i, i) == -2);
        CHECK(fi.demazure_roots == 0);
        CHECK(fi.rigid);
        CHECK(fi.h0 == 3);
        CHECK(image_lattice(fi.boundary_gram).induced.rank() == 10);

        // second route: adjunction on each boundary surface, a smooth toric
        // surface with n_i rays, gives (c2 + c1^2).D = 2 n_i - 12 - G_ii + 2 (-K)^2 D
        std::vector<std::set<int>> nbr(n);
        for (const auto& cone : r.cones)
            for (int x : cone)
                for (int y : cone)
                    if (x != y) nbr[x].insert(y);
        long long total = 0;
        for (int i = 0; i < n; ++i) {
            long long row = 0;
            for (int j = 0; j < n; ++j) row += to_ll(fi.boundary_gram.gram(i, j));
            const long long ni = static_cast<long long>(nbr[i].size());
            CHECK(fi.c2c1sq[i] == 2 * ni - 12 - to_ll(fi.boundary_gram.gram(i, i)) + 2 * row);
            total += fi.c2c1sq[i];
        }
        CHECK(total == 24 + 22);
    }
}

TEST_CASE("the K3 lattice of the polytope 1942 block") {
    FanInvariants fi = fan_invariants(resolution(load("p1942"), choice_from_index(0, 9)));
    E8Extraction x = extract_e8_and_complement(fi.boundary_gram);
    CHECK(x.image.induced.rank() == 10);
    LatticeProfile c = lattice_profile(x.complement.induced);
    CHECK(c.det == -128);
    CHECK(c.signature == Signature{1, 0, 1});
    CHECK(is_isometric_bounded(x.complement.induced, gram_from_rows({{8, 0}, {0, -16}}), 5).has_value());
    // the printed basis of the complement has Gram ((16,48),(48,136))
    CHECK(is_isometric_bounded(gram_from_rows({{16, 48}, {48, 136}}), gram_from_rows({{8, 0}, {0, -16}}), 5).has_value());
}

TEST_CASE("toric building blocks") {
    LatticePolytope p = load("p1942");
    BlockDescriptor a = toric_block_descriptor(p, choice_from_index(0, 9), false, "example_7_10");
    InvariantReport ra = block_report(a);
    CHECK(ra.degree == 22);
    CHECK(ra.h2_Z == 11);
    CHECK(ra.rank_K == 0);
    CHECK(ra.b3_Z == 24);
    CHECK(ra.div_c2[0].value == 2);
    CHECK(ra.e == 9);

    BlockDescriptor b = toric_block_descriptor(p, choice_from_index(0, 9), true, "example_7_11");
    CHECK(b.base_curves.size() == 13);
    InvariantReport rb = block_report(b);
    CHECK(rb.h2_Z == 23);
    CHECK(rb.rank_K == 12);
    CHECK(rb.b3_Z == 0);
    CHECK(rb.div_c2[0].value == 2);
    CHECK(rb.e == 33);

    // the stored descriptor files are exactly what the pipeline produces
    CHECK(block_descriptor_json(read_block_descriptor(data_path("blocks/example_7_10.json"))) == block_descriptor_json(a));
    CHECK(block_descriptor_json(read_block_descriptor(data_path("blocks/example_7_11.json"))) == block_descriptor_json(b));
}

TEST_CASE("reconstructed degree 20 polytope") {
    // rhombic dodecahedron in the body-centred cubic lattice, written in a
    // lattice basis; the terminal toric Fano of degree 20 with rho(Y) = 11
    LatticePolytope p = load("candidate_2355");
    PolytopeProfile pr = polytope_profile(p);
    CHECK(pr.terminal);
    CHECK(pr.nodes == 12);
    CHECK(pr.rho_resolution == 11);
    CHECK(pr.degree == 20);
    CHECK(pr.rho_X == 2);
    CHECK(pr.defect == 9);
    ResolutionClasses rc = resolution_classes(p);
    CHECK(rc.resolutions == 4096);
    CHECK(rc.projective == 3608);
    CHECK(rc.classes == 125);
}
