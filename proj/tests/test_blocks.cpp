#include <doctest.h>

#include "acyl/blocks.hpp"
#include "acyl/report.hpp"
#include "helpers.hpp"

#include <numeric>

using namespace acyl;

namespace {

FanoDescriptor fano(const std::string& name, int r, long long degree, long long b3) {
    return FanoDescriptor{name, 1, r, degree, b3, b3 / 2, true};
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

BlockDescriptor load(const std::string& name) { return read_block_descriptor(data_path("blocks/" + name + ".json")); }

}  // namespace

TEST_CASE("genus and degree") {
    CHECK(genus_degree(22).g == 12);
    CHECK(genus_degree(22).h0_antiK == 14);
    CHECK(genus_degree(64).g == 33);
    CHECK(genus_degree(2).g == 2);
    CHECK(genus_degree(2).h0_antiK == 4);
    CHECK(code_of([] { genus_degree(7); }) == ErrorCode::OddDegree);
    CHECK(code_of([] { genus_degree(0); }) == ErrorCode::OddDegree);
}

TEST_CASE("Riemann-Roch on a 3-fold") {
    CHECK(riemann_roch_3fold(0, 0, 0, -24) == 1);
    // L = -K with K^3 = -4: L^3 = 4, L^2 K = -4, L(K^2 + c2) = 4 + 24
    Rational chi = riemann_roch_3fold(4, -4, 28, -24);
    CHECK(chi == 5);
    CHECK(require_integral_chi(chi) == genus_degree(4).g + 2);
    CHECK(riemann_roch_3fold(0, 0, 0, 0) == 0);
    CHECK(code_of([] { require_integral_chi(riemann_roch_3fold(1, 0, 0, 0)); }) == ErrorCode::NonIntegralChi);
}

TEST_CASE("blow-up numerics") {
    FanoDescriptor v10 = fano("V10", 1, 10, 20), v12 = fano("V12", 1, 12, 14);

    BlowupNumbers line = blowup_numbers(v10, BlowupSpec{BlowupSpec::Kind::Curve, 0, 1});
    CHECK(line.degree_Y == 6);
    REQUIRE(line.picard_gram);
    CHECK(line.picard_gram->gram == matz({{-2, 3}, {3, 6}}));
    CHECK(line.genus_Y == 4);

    BlowupNumbers conic = blowup_numbers(v10, BlowupSpec{BlowupSpec::Kind::Curve, 0, 2});
    CHECK(conic.picard_gram->gram == matz({{-2, 4}, {4, 4}}));
    CHECK(conic.genus_Y == 3);

    BlowupNumbers point = blowup_numbers(v12, BlowupSpec{BlowupSpec::Kind::Point, 0, 0});
    CHECK(point.degree_Y == 4);
    CHECK(point.picard_gram->gram == matz({{-2, 4}, {4, 4}}));
    CHECK(point.E3 == 1);

    BlowupNumbers big = blowup_numbers(v10, BlowupSpec{BlowupSpec::Kind::Curve, 0, 5});
    CHECK(big.degree_Y <= 0);
    CHECK_FALSE(big.warnings.empty());
}

TEST_CASE("blow-up property: Gram determinant and genus") {
    for (const FanoDescriptor& w : fano_rank1_table())
        for (long long gc = 0; gc <= 4; ++gc)
            for (long long d = 0; d <= 12; ++d) {
                BlowupNumbers b = blowup_numbers(w, BlowupSpec{BlowupSpec::Kind::Curve, gc, d});
                const MatZ& g = b.picard_gram->gram;
                auto rows = rows_of(g);
                long long direct = rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0];
                CHECK(direct == oracle::cofactor_det(rows));
                CHECK(direct == (2 * gc - 2) * b.degree_Y - (d + 2 - 2 * gc) * (d + 2 - 2 * gc));
                // expand -K_Y = H - E with H = pullback of -K_W: H^2 E = 0,
                // H E^2 = -d, E^3 = -deg N_C = -(d + 2g - 2)
                const long long H3 = w.degree, H2E = 0, HE2 = -d, E3 = -(d + 2 * gc - 2);
                CHECK(b.degree_Y == H3 - 3 * H2E + 3 * HE2 - E3);
                CHECK(b.K2E == H2E - 2 * HE2 + E3);
                CHECK(b.KE2 == HE2 - E3);
                CHECK(b.E3 == E3);
                if (b.degree_Y > 0) CHECK(b.genus_Y == genus_degree(w.degree).g + gc - d - 1);
                CHECK(b.b3_Y == w.b3 + 2 * gc);
            }
}

TEST_CASE("Namikawa bound") {
    NamikawaResult q = namikawa_check(30, 1, 45, {});
    CHECK(q.bound == 49);
    CHECK(q.ok);
    CHECK(namikawa_check(52, 1, 0, {}).bound == 71);
    CHECK(namikawa_check(0, 20, 0, {}).ok);
    CHECK_FALSE(namikawa_check(30, 1, 45, {5}).ok);
}

TEST_CASE("defect") {
    CHECK(defect(SmoothingData{52, 60, {}, {}}, 9) == 1);
    // b3(Y) = b3(X) - e + sigma gives the same sigma from the other side
    CHECK(defect(SmoothingData{52, 60, {}, {}}, 9) == betti3_semifano(60, 9, 1) - 52 + 9);
    CHECK(defect(SmoothingData{7, 7, {}, {}}, 0) == 0);
    CHECK(defect(SmoothingData{30, 60, {}, {}}, 45) == 15);
    CHECK(defect(SmoothingData{10, 12, {1, 2}, {}}, 2) == 1);
    CHECK(code_of([] { defect(SmoothingData{40, 60, {}, {}}, 9); }) == ErrorCode::NegativeDefect);
}

TEST_CASE("b3 of the semi-Fano") {
    CHECK(betti3_semifano(60, 9, 1) == 44);
    CHECK(betti3_semifano(60, 45, 15) == 0);
    CHECK(betti3_semifano(10, 10, 5) == 0);
    CHECK(code_of([] { betti3_semifano(10, 10, 4); }) == ErrorCode::NegativeBetti);
}

TEST_CASE("b3 identity: direct formula vs defect route") {
    for (long long b = 0; b <= 120; b += 2)
        for (long long e = 0; e <= 50; ++e)
            for (long long s = 0; s <= 20; ++s) {
                const long long b3X = b - e + s;
                const long long direct = b - 2 * e + 2 * s;
                CHECK_EQ(direct, b3X - e + s);
                if (direct >= 0) CHECK_EQ(betti3_semifano(b, e, s), direct);
                if (b3X >= 0 && s >= 0) CHECK_EQ(defect(SmoothingData{b3X, b, {}, {}}, e), s);
            }
}

TEST_CASE("nodal cubic rows") {
    const auto& rows = nodal_cubic_table();
    CHECK(rows.size() == 15);
    int checked = 0;
    for (const NodalCubicRow& r : rows) {
        if (r.s == 0) continue;
        REQUIRE(r.b3_Y);
        CHECK(betti3_semifano(10, r.e, r.sigma) == *r.b3_Y);
        CHECK(r.e - r.sigma <= 5);
        ++checked;
    }
    CHECK(checked == 7);
}

TEST_CASE("block cohomology") {
    BlockCohomology c = block_cohomology(SemiFanoCohomology{2, 44, 2, 0}, {3});
    CHECK(c.b2_Z == 3);
    CHECK(c.b3_Z == 50);
    CHECK(c.rank_K == 0);

    c = block_cohomology(SemiFanoCohomology{1, 0, 1, 0}, {3, 3, 3, 3});
    CHECK(c.b2_Z == 5);
    CHECK(c.b3_Z == 24);
    CHECK(c.rank_K == 3);

    CHECK(block_cohomology(SemiFanoCohomology{1, 8, 1, 0}, {0}).b3_Z == 8);
    CHECK_FALSE(block_cohomology(SemiFanoCohomology{1, 0, 1, 0}, {0, 0, 15}, false).rank_K);
}

TEST_CASE("c2 restrictions and flops") {
    CHECK(c2_restriction(12, 0, -2, 1) == 16);
    CHECK(c2_restriction(16, -4, -2, 2) == 26);
    CHECK(c2_restriction(5, 5, 0, 0) == 0);
    CHECK(flop_update(16, -9) == -2);
    CHECK(flop_update(38, -17) == 4);
    CHECK(flop_update(11, 0) == 11);
}

TEST_CASE("ACyl profile") {
    AcylProfile p = acyl_profile(5, 24, gram_from_rows({{4}}), 3);
    CHECK(p.b2 == 4);
    CHECK(p.b3 == 45);
    CHECK(p.b4 == 4);
    CHECK(p.b1 == 0);
    CHECK(p.b5 == 0);

    GramLattice burk = standard_lattice("sum(rescale(dual(E6),-3), rescale(E8,-1), U)");
    CHECK(acyl_profile(17, 6, burk, 0).b3 == 12);
    CHECK(acyl_profile(2, 0, gram_from_rows({{2}}), 0).b3 == 21);
    CHECK(code_of([] { acyl_profile(5, 0, gram_from_rows({{4}}), 2); }) == ErrorCode::RankNullityViolation);

    for (long long b2 = 1; b2 <= 23; ++b2)
        for (long long rn = 0; rn <= std::min<long long>(b2 - 1, 20); ++rn) {
            std::vector<std::vector<long long>> d(rn, std::vector<long long>(rn, 0));
            for (long long i = 0; i < rn; ++i) d[i][i] = -2;
            GramLattice n = rn ? gram_from_rows(d) : GramLattice(MatZ(0, 0));
            AcylProfile q = acyl_profile(b2, 0, n, b2 - 1 - rn);
            CHECK(q.b4 == q.rank_K + 1);
            CHECK(q.b2 == q.rank_K + q.rank_N);
            CHECK(q.rank_T == 22 - rn);
        }
}

TEST_CASE("Picard rank one Fano table") {
    // r, -K^3, b3(Y) -> b3(Z), div c2(Z) as printed
    struct Row {
        int r;
        long long degree, b3Y, b3Z, div;
    };
    const Row printed[] = {
        {4, 64, 0, 66, 2},  {3, 54, 0, 56, 2},   {2, 8, 42, 52, 8},   {2, 16, 20, 38, 4},  {2, 24, 10, 36, 24},
        {2, 32, 4, 38, 4},  {2, 40, 0, 42, 8},   {1, 2, 104, 108, 2}, {1, 4, 60, 66, 4},   {1, 6, 40, 48, 6},
        {1, 8, 28, 38, 8},  {1, 10, 20, 32, 2},  {1, 12, 14, 28, 12}, {1, 14, 10, 26, 2},  {1, 16, 6, 24, 8},
        {1, 18, 4, 24, 6},  {1, 22, 0, 24, 2},
    };
    const auto& table = fano_rank1_table();
    REQUIRE(table.size() == 17);
    for (size_t i = 0; i < 17; ++i) {
        CAPTURE(table[i].name);
        CHECK(table[i].index == printed[i].r);
        CHECK(table[i].degree == printed[i].degree);
        CHECK(table[i].b3 == printed[i].b3Y);
        Table71Row row = table71_row(table[i]);
        CHECK(row.b3_Z == printed[i].b3Z);
        CHECK(row.div_c2 == printed[i].div);
    }
    CHECK(table71_row(fano("P3", 4, 64, 0)).b3_Z == 66);
}

TEST_CASE("c2 of blocks from the quartic examples") {
    BlockDescriptor d3 = load("example_7_3");
    C2Result c = c2_block(d3);
    REQUIRE(c.div_c2);
    CHECK(*c.div_c2 == 4);
    CHECK(c.cor514 == 4);
    CHECK(c.fibre_coefficients == std::vector<Int>{-4});
    C2Result f = c2_block(apply_flop(d3, d3.flops[0]));
    CHECK(*f.div_c2 == 2);
    CHECK(*apply_flop(d3, d3.flops[0]).c2c1sq[0] == -2);

    CHECK(*c2_block(load("example_7_4")).div_c2 == 2);
    BlockDescriptor d5 = load("example_7_5");
    CHECK(*c2_block(d5).div_c2 == 2);
    CHECK(*apply_flop(d5, d5.flops[0]).c2c1sq[0] == 4);
    CHECK(*c2_block(apply_flop(d5, d5.flops[0])).div_c2 == 4);
    CHECK(*c2_block(load("example_7_6")).div_c2 == 4);
    CHECK(*c2_block(load("example_7_7")).div_c2 == 2);
}

TEST_CASE("c2 of multi-component pencils") {
    BlockDescriptor d8 = load("example_7_8");
    C2Result c = c2_block(d8);
    CHECK(c.fibre_coefficients == std::vector<Int>{-28, -20, -12, -4});
    CHECK(std::accumulate(c.fibre_coefficients.begin(), c.fibre_coefficients.end(), Int(0)) == -64);
    CHECK(*c.div_c2 == 2);
    CHECK(*c2_block(load("example_7_9")).div_c2 == 2);

    // an index two cubic with two base components: without steps only the
    // bound 24 is known, the steps bring it down to 2
    BlockDescriptor q;
    q.picard_gram = gram_from_rows({{6}});
    q.anticanonical = vecz({2});
    q.c2c1sq = {Int(24)};
    q.index = 2;
    q.base_curves = {BaseCurve{1, std::nullopt}, BaseCurve{0, std::nullopt}};
    C2Result b = c2_block(q);
    CHECK_FALSE(b.div_c2);
    CHECK(b.upper == 24);
    C2Result s = c2_block(q, {-10});
    CHECK(s.fibre_coefficients == std::vector<Int>{-14, -10});
    CHECK(*s.div_c2 == 2);
    CHECK(*c2_block(q, {-10, 0}).div_c2 == 2);
    CHECK(code_of([&] { c2_block(q, {-10, 3}); }) == ErrorCode::InconsistentC2);
}

TEST_CASE("c2 evenness and the divisibility chain over a family") {
    for (long long x = -40; x <= 40; x += 2)
        for (int k = 1; k <= 2; ++k) {
            BlockDescriptor d;
            d.picard_gram = gram_from_rows({{-2, 1}, {1, 4}});
            d.anticanonical = vecz({0, 1});
            d.c2c1sq = {Int(x), Int(28)};
            d.base_curves.assign(k, BaseCurve{});
            C2Result c = c2_block(d, k == 2 ? std::vector<long long>{-2} : std::vector<long long>{});
            REQUIRE(c.div_c2);
            CHECK(*c.div_c2 % 2 == 0);
            CHECK(c.cor514 % *c.div_c2 == 0);
            CHECK(std::gcd(std::gcd(std::abs(x), 28LL), 4LL) % *c.div_c2 == 0);
        }
}

TEST_CASE("c2 rejects an inconsistent anticanonical pairing") {
    BlockDescriptor d = load("example_7_3");
    d.c2c1sq[1] = Int(30);
    CHECK(code_of([&] { c2_block(d); }) == ErrorCode::InconsistentC2);
}

TEST_CASE("c2 modulo a sublattice") {
    BlockDescriptor d = load("example_7_3");
    // modulo nothing: gcd of 16, 28 and 24
    CHECK(c2_div_mod(d, MatZ(0, 2)) == 4);
    // modulo A: the classes with q(D, A) = 0 are spanned by (-4, 1)
    CHECK(c2_div_mod(d, matz({{0, 1}})) == std::gcd(-4LL * 16 + 28, 24LL));
}

TEST_CASE("descriptor files") {
    BlockDescriptor d = load("example_7_3");
    CHECK(d.picard_gram.gram == matz({{-2, 1}, {1, 4}}));
    CHECK(d.anticanonical_degree() == 4);
    CHECK(d.base_curves.size() == 1);
    CHECK(d.nodal->sigma == 1);

    BlockDescriptor back = parse_block_descriptor(block_descriptor_json(d));
    CHECK(block_descriptor_json(back) == block_descriptor_json(d));

    BlockDescriptor d7 = load("example_7_7");
    CHECK(d7.picard_gram.rank() == 16);
    CHECK(d7.anticanonical_degree() == 4);

    CHECK(code_of([] { parse_block_descriptor("{"); }) == ErrorCode::MalformedInput);
    CHECK(code_of([] { parse_block_descriptor("[1]"); }) == ErrorCode::SchemaViolation);
    try {
        parse_block_descriptor(R"({"picard_gram": [[4]], "anticanonical": [1], "c2c1sq": [28],
                                   "b3_Y": 0, "e": 0, "base_curves": [{"genus": "three"}]})");
        FAIL("expected a schema error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::SchemaViolation);
        CHECK(std::string(e.what()).find("base_curves[0].genus") != std::string::npos);
    }
    CHECK(code_of([] {
              parse_block_descriptor(R"({"picard_gram": [[4]], "anticanonical": [1], "c2c1sq": [28],
                                         "b3_Y": 0, "e": 0, "base_curves": [{"genus": 3}], "colour": 1})");
          }) == ErrorCode::SchemaViolation);
    CHECK(code_of([] {
              parse_block_descriptor(R"({"picard_gram": [[4, 1], [0, 4]], "anticanonical": [1, 0],
                                         "c2c1sq": [28, 0], "b3_Y": 0, "e": 0, "base_curves": [{"genus": 3}]})");
          }) == ErrorCode::SchemaViolation);
}

TEST_CASE("block reports reproduce the printed table of examples") {
    // -K^3, H2(Z), N, K, H3(Z), div c2(Z), e
    struct Row {
        const char* file;
        long long degree, h2, rank_K, b3;
        std::vector<long long> divs;
        long long e;
        MatZ N;
    };
    const std::vector<Row> printed = {
        {"example_7_3", 4, 3, 0, 50, {4, 2}, 9, matz({{-2, 1}, {1, 4}})},
        {"example_7_4", 4, 3, 0, 44, {2}, 12, matz({{-2, 2}, {2, 4}})},
        {"example_7_5", 4, 3, 0, 34, {2, 4}, 17, matz({{-2, 3}, {3, 4}})},
        {"example_7_6", 4, 3, 0, 36, {4}, 16, matz({{0, 4}, {4, 4}})},
        {"example_7_8", 64, 5, 3, 24, {2}, 24, matz({{4}})},
        {"example_7_9", 64, 4, 0, 30, {2}, 20, matz({{-2, 0, 2}, {0, -2, 2}, {2, 2, 4}})},
    };
    for (const Row& row : printed) {
        CAPTURE(row.file);
        InvariantReport r = block_report(load(row.file));
        CHECK(r.degree == row.degree);
        CHECK(r.h2_Z == row.h2);
        CHECK(r.rank_K == row.rank_K);
        CHECK(r.b3_Z == row.b3);
        CHECK(r.e == row.e);
        CHECK(r.N_gram.gram == row.N);
        REQUIRE(r.div_c2.size() == row.divs.size());
        for (size_t i = 0; i < row.divs.size(); ++i) CHECK(r.div_c2[i].value == row.divs[i]);
    }

    InvariantReport b = block_report(load("example_7_7"));
    CHECK(b.h2_Z == 17);
    CHECK(b.rank_K == 0);
    CHECK(b.b3_Z == 6);
    CHECK(b.div_c2[0].value == 2);
    CHECK(b.e == 45);
    CHECK(b.N_gram == standard_lattice("sum(rescale(dual(E6),-3), rescale(E8,-1), U)"));

    // printed N is <4> + <-2>; the descriptor carries the Picard basis
    InvariantReport t = block_report(load("example_7_12"));
    CHECK(t.h2_Z == 3);
    CHECK(t.b3_Z == 46);
    CHECK(t.div_c2[0].value == 2);
    CHECK(t.e == 12);
    CHECK(is_isometric_bounded(t.N_gram, gram_from_rows({{4, 0}, {0, -2}}), 2).has_value());
}

TEST_CASE("report round trip and determinism") {
    for (const char* f : {"example_7_3", "example_7_7", "example_7_8", "example_7_9"}) {
        InvariantReport r = block_report(load(f));
        std::string js = report_json(r);
        CHECK(report_from_json(js) == r);
        CHECK(report_json(block_report(load(f))) == js);
        CHECK_FALSE(report_table(r).empty());
    }
    BlockDescriptor d = load("example_7_4");
    d.torsion_free_h3 = false;
    InvariantReport r = block_report(d);
    CHECK(r.torsion_unknown);
    CHECK(report_table(r).rfind("TORSION-UNKNOWN", 0) == 0);
}

TEST_CASE("block reports fail on inconsistent descriptors") {
    BlockDescriptor d = load("example_7_3");
    d.b3_Y = 40;
    CHECK(code_of([&] { block_report(d); }) == ErrorCode::InconsistentBetti);
    d = load("example_7_3");
    d.c2c1sq[1] = Int(26);
    CHECK(code_of([&] { block_report(d); }) == ErrorCode::InconsistentC2);
}
