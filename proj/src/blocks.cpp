#include "acyl/blocks.hpp"

#include <numeric>

namespace acyl {

GenusDegree genus_degree(long long degree) {
    if (degree <= 0 || degree % 2 != 0)
        throw Error(ErrorCode::OddDegree, "anticanonical degree " + std::to_string(degree) +
                                              " is not even and positive");
    long long g = degree / 2 + 1;
    return GenusDegree{g, g + 2};
}

Rational riemann_roch_3fold(long long L3, long long L2K, long long L_K2_plus_c2, long long Kc2) {
    return Rational(L3, 6) - Rational(L2K, 4) + Rational(L_K2_plus_c2, 12) - Rational(Kc2, 24);
}

long long require_integral_chi(const Rational& chi) {
    if (boost::multiprecision::denominator(chi) != 1)
        throw Error(ErrorCode::NonIntegralChi, "chi = " + to_string(chi));
    return to_ll(boost::multiprecision::numerator(chi));
}

BlowupNumbers blowup_numbers(const FanoDescriptor& w, const BlowupSpec& spec) {
    BlowupNumbers r;
    if (spec.kind == BlowupSpec::Kind::Point) {
        r.degree_Y = w.degree - 8;
        r.K2E = 4;
        r.KE2 = -2;
        r.E3 = 1;
        r.b3_Y = w.b3;
    } else {
        const long long d = spec.degree, gc = spec.genus;
        if (d < 0) r.warnings.push_back("negative curve degree: -K_W is not nef on C");
        r.degree_Y = w.degree - 2 * d - 2 + 2 * gc;
        r.K2E = d + 2 - 2 * gc;
        r.KE2 = 2 * gc - 2;
        r.E3 = -d + 2 - 2 * gc;
        r.b3_Y = w.b3 + 2 * gc;
    }
    if (r.degree_Y <= 0) {
        r.warnings.push_back("(-K_Y)^3 = " + std::to_string(r.degree_Y) + " <= 0: -K_Y is not big");
    } else {
        r.genus_Y = genus_degree(r.degree_Y).g;
    }
    if (w.rho == 1)
        r.picard_gram = gram_from_rows({{r.KE2, r.K2E}, {r.K2E, r.degree_Y}});
    return r;
}

NamikawaResult namikawa_check(long long h21_Xt, long long rho_Xt, long long e,
                              const std::vector<long long>& mu) {
    NamikawaResult r;
    r.bound = h21_Xt + 20 - rho_Xt;
    long long total = e;
    for (long long m : mu) total += m;
    r.ok = total <= r.bound;
    return r;
}

long long defect(const SmoothingData& sm, long long e) {
    long long milnor = 0;
    if (sm.milnor.empty()) {
        milnor = e;
    } else {
        if (static_cast<long long>(sm.milnor.size()) != e)
            throw Error(ErrorCode::NegativeDefect, "expected one Milnor number per singular point");
        for (long long m : sm.milnor) milnor += m;
    }
    long long sigma = sm.b3_X - sm.b3_Xt + milnor;
    if (sigma < 0)
        throw Error(ErrorCode::NegativeDefect, "defect " + std::to_string(sigma) + " < 0");
    return sigma;
}

long long betti3_semifano(long long b, long long e, long long sigma) {
    long long b3 = b - 2 * e + 2 * sigma;
    if (b3 < 0)
        throw Error(ErrorCode::NegativeBetti, "b3(Y) = " + std::to_string(b3) + " from b = " +
                                                  std::to_string(b) + ", e = " + std::to_string(e) +
                                                  ", sigma = " + std::to_string(sigma));
    return b3;
}

BlockCohomology block_cohomology(const SemiFanoCohomology& y, const std::vector<long long>& genera,
                                 bool n_equals_n0) {
    BlockCohomology r;
    const long long k = static_cast<long long>(genera.size());
    r.b2_Z = y.b2_Y + k;
    r.b3_Z = y.b3_Y;
    for (long long g : genera) r.b3_Z += 2 * g;
    r.rank_constraint = k - 1;
    if (k == 1 || n_equals_n0) r.rank_K = y.rank_K0 + k - 1;
    return r;
}

long long c2_restriction(long long c2_D, long long c1sq_D, long long q_DD, long long q_DA) {
    return (c2_D - c1sq_D) + (-q_DD + 2 * q_DA);
}

long long flop_update(long long c2_restr_D, long long D3_minus_D3plus) {
    return c2_restr_D + 2 * D3_minus_D3plus;
}

AcylProfile acyl_profile(long long b2_Z, long long b3_Z, const GramLattice& N, long long rank_K) {
    const long long rn = N.rank();
    if (rank_K < 0 || rank_K + rn != b2_Z - 1)
        throw Error(ErrorCode::RankNullityViolation,
                    "rank K + rank N = " + std::to_string(rank_K + rn) + " but b2(Z) - 1 = " +
                        std::to_string(b2_Z - 1));
    AcylProfile p;
    p.rank_N = rn;
    p.rank_K = rank_K;
    p.rank_T = 22 - rn;
    p.b1 = 0;
    p.b2 = b2_Z - 1;
    p.b3 = b3_Z + p.rank_T;
    p.b4 = rank_K + 1;
    p.b5 = 0;
    p.N = N;
    return p;
}

long long cor514_bound(long long degree, long long index) {
    if (index < 1 || (24 + degree) % index != 0)
        throw Error(ErrorCode::InconsistentC2, "index " + std::to_string(index) + " does not divide 24 + " +
                                                   std::to_string(degree));
    return std::gcd((24 + degree) / index, 24LL);
}

Table71Row table71_row(const FanoDescriptor& w) {
    if (w.rho != 1 || !w.torsion_free_h3)
        throw Error(ErrorCode::SchemaViolation, "table rows need Picard rank 1 and torsion free H3");
    Table71Row r;
    r.b3_Z = w.b3 + 2 * genus_degree(w.degree).g;
    // H2(Y) is spanned by H = -K/r, and (c2 + c1^2).H = (24 + (-K)^3)/r;
    // c2(Z) also carries K^3 on the exceptional fibre
    const long long pairing = (24 + w.degree) / w.index;
    const long long via_fibre = std::gcd(pairing, w.degree);
    r.div_c2 = cor514_bound(w.degree, w.index);
    if (via_fibre != r.div_c2 || r.div_c2 % 2 != 0)
        throw Error(ErrorCode::InconsistentC2, w.name + ": divisibility routes disagree");
    return r;
}

const std::vector<FanoDescriptor>& fano_rank1_table() {
    static const std::vector<FanoDescriptor> rows = [] {
        struct Raw {
            const char* name;
            int r;
            long long degree, b3;
        };
        const Raw raw[] = {
            {"P3", 4, 64, 0},          {"Q2 in P4", 3, 54, 0},    {"V1 -> W4", 2, 8, 42},
            {"V2 -> P3 (r=2)", 2, 16, 20}, {"Q3 in P4", 2, 24, 10},  {"V2,2 in P5", 2, 32, 4},
            {"V5 in P6", 2, 40, 0},    {"V2 -> P3", 1, 2, 104},   {"Q4 in P4", 1, 4, 60},
            {"V2,3 in P5", 1, 6, 40},  {"V2,2,2 in P6", 1, 8, 28}, {"V10 in P7", 1, 10, 20},
            {"V12 in P8", 1, 12, 14},  {"V14 in P9", 1, 14, 10},  {"V16 in P10", 1, 16, 6},
            {"V18 in P11", 1, 18, 4},  {"V22 in P13", 1, 22, 0},
        };
        std::vector<FanoDescriptor> out;
        for (const Raw& x : raw)
            out.push_back(FanoDescriptor{x.name, 1, x.r, x.degree, x.b3, x.b3 / 2, true});
        return out;
    }();
    return rows;
}

const std::vector<NodalCubicRow>& nodal_cubic_table() {
    static const std::vector<NodalCubicRow> rows = {
        {0, 0, 0, 0, 1, 10},  {1, 0, 0, 0, {}, {}}, {2, 0, 0, 0, {}, {}}, {3, 0, 0, 0, {}, {}},
        {4, 0, 0, 0, {}, {}}, {4, 1, 2, 1, 2, 4},   {5, 1, 0, 1, {}, {}}, {5, 1, 0, 1, {}, {}},
        {6, 1, 2, 0, 2, 0},   {6, 2, 6, 2, 3, 2},   {7, 2, 6, 2, 3, 0},   {7, 2, 0, 3, {}, {}},
        {8, 3, 24, 5, 4, 0},  {9, 4, 102, 9, 5, 0}, {10, 5, 332, 15, 6, 0},
    };
    return rows;
}

// ---------------------------------------------------------------------------

long long BlockDescriptor::anticanonical_degree() const {
    if (anticanonical) return to_ll(anticanonical->dot(picard_gram.gram * *anticanonical));
    if (degree) return *degree;
    throw Error(ErrorCode::SchemaViolation, "descriptor has neither anticanonical nor degree");
}

namespace {

std::vector<long long> fibre_steps(const BlockDescriptor& d, const std::vector<long long>& steps,
                                   bool& known) {
    const size_t k = d.base_curves.size();
    std::vector<long long> s = steps;
    if (s.empty())
        for (const BaseCurve& c : d.base_curves)
            if (c.step_K3) s.push_back(*c.step_K3);
    known = true;
    if (k <= 1) return {};
    if (s.size() == k) {
        if (s.back() != 0)
            throw Error(ErrorCode::InconsistentC2, "the final blow-up must have K^3 = 0");
        s.pop_back();
    }
    if (s.size() != k - 1) {
        known = false;
        return {};
    }
    return s;
}

}  // namespace

C2Result c2_block(const BlockDescriptor& d, const std::vector<long long>& steps) {
    const long long degree = d.anticanonical_degree();
    const long long K3 = -degree;
    const size_t k = d.base_curves.size();
    if (k == 0) throw Error(ErrorCode::SchemaViolation, "base_curves is empty");
    if (d.c2c1sq.size() != static_cast<size_t>(d.picard_gram.rank()))
        throw Error(ErrorCode::SchemaViolation, "c2c1sq length differs from the Picard rank");

    C2Result r;
    bool all_known = true;
    Int g = 0;
    for (const auto& v : d.c2c1sq) {
        if (v) g = gcd(g, *v);
        else all_known = false;
    }
    for (const RestrictionWitness& w : d.restrictions)
        g = gcd(g, Int(c2_restriction(w.c2_D, w.c1sq_D, w.q_DD, w.q_DA)));

    if (all_known && d.anticanonical) {
        Int pa = 0;
        for (Eigen::Index i = 0; i < d.anticanonical->size(); ++i) pa += (*d.anticanonical)(i) * *d.c2c1sq[i];
        if (pa != 24 + degree)
            throw Error(ErrorCode::InconsistentC2, "(c2 + c1^2).(-K) = " + to_string(pa) + " but 24 + (-K)^3 = " +
                                                       std::to_string(24 + degree));
    }

    bool steps_known = true;
    std::vector<long long> inter = fibre_steps(d, steps, steps_known);
    if (k == 1) {
        r.fibre_coefficients.push_back(K3);
    } else if (steps_known) {
        long long prev = K3;
        for (size_t i = 0; i < k; ++i) {
            long long next = i + 1 < k ? inter[i] : 0;
            r.fibre_coefficients.push_back(prev - next);
            prev = next;
        }
    }
    if (r.fibre_coefficients.empty()) g = gcd(g, Int(K3));  // the coefficients sum to K^3
    for (const Int& c : r.fibre_coefficients) g = gcd(g, c);

    r.cor514_applies = d.torsion_free_h3;
    if (r.cor514_applies) {
        r.cor514 = cor514_bound(degree, d.index);
        g = gcd(g, Int(r.cor514));
    }
    r.upper = to_ll(abs(g));
    if (r.upper % 2 != 0)
        throw Error(ErrorCode::InconsistentC2, "c2(Z) must be even but divides " + std::to_string(r.upper));
    if (all_known && steps_known && d.torsion_free_h3) r.div_c2 = r.upper;
    else if (r.upper == 2) r.div_c2 = 2;
    r.even = true;
    return r;
}

long long c2_div_mod(const BlockDescriptor& d, const MatZ& nprime) {
    for (const auto& v : d.c2c1sq)
        if (!v) throw Error(ErrorCode::SchemaViolation, "c2c1sq must be fully known for the mod N' variant");
    MatZ classes = nprime.rows() ? integer_kernel<Int>(MatZ(nprime * d.picard_gram.gram))
                                 : MatZ(MatZ::Identity(d.picard_gram.rank(), d.picard_gram.rank()));
    Int g = 24;
    for (Eigen::Index i = 0; i < classes.rows(); ++i) {
        Int v = 0;
        for (Eigen::Index j = 0; j < classes.cols(); ++j) v += classes(i, j) * *d.c2c1sq[j];
        g = gcd(g, v);
    }
    return to_ll(g);
}

BlockDescriptor apply_flop(const BlockDescriptor& d, const FlopSpec& f) {
    if (f.index < 0 || f.index >= static_cast<int>(d.c2c1sq.size()) || !d.c2c1sq[f.index])
        throw Error(ErrorCode::SchemaViolation, "flop index has no known c2c1sq value");
    BlockDescriptor out = d;
    out.c2c1sq[f.index] = Int(flop_update(to_ll(*d.c2c1sq[f.index]), f.d3_shift));
    out.flops.clear();
    out.name = d.name + " (flopped)";
    return out;
}

}  // namespace acyl
