#pragma once

// Numerics of weak Fano 3-folds Y and building blocks Z obtained by blowing
// up the base locus of an anticanonical pencil. Curve degrees are always
// anticanonical degrees -K.C, never degrees in a projective embedding.

#include "acyl/lattice.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace acyl {

struct GenusDegree {
    long long g = 0;
    long long h0_antiK = 0;
};

// -K^3 = 2g - 2 and h0(-K) = g + 2; throws OddDegree
GenusDegree genus_degree(long long degree);

// chi(L) = L^3/6 - L^2 K/4 + L(K^2 + c2)/12 - K c2/24
Rational riemann_roch_3fold(long long L3, long long L2K, long long L_K2_plus_c2, long long Kc2);
long long require_integral_chi(const Rational& chi);  // throws NonIntegralChi

struct FanoDescriptor {
    std::string name;
    int rho = 1;
    int index = 1;
    long long degree = 0;  // (-K)^3
    long long b3 = 0;
    long long h21 = 0;
    bool torsion_free_h3 = true;
};

struct BlowupSpec {
    enum class Kind { Curve, Point } kind = Kind::Curve;
    long long genus = 0;   // g(C)
    long long degree = 0;  // -K_W . C
};

struct BlowupNumbers {
    long long degree_Y = 0;  // (-K_Y)^3
    long long K2E = 0;       // (-K_Y)^2 . E
    long long KE2 = 0;       // -K_Y . E^2
    long long E3 = 0;
    std::optional<GramLattice> picard_gram;  // basis (E, -K_Y) when rho(W) = 1
    long long b3_Y = 0;
    long long genus_Y = 0;
    std::vector<std::string> warnings;
};

BlowupNumbers blowup_numbers(const FanoDescriptor& w, const BlowupSpec& spec);

struct NamikawaResult {
    long long bound = 0;
    bool ok = false;
};

// e + sum(mu) <= h21(X_t) + 20 - rho(X_t)
NamikawaResult namikawa_check(long long h21_Xt, long long rho_Xt, long long e,
                              const std::vector<long long>& mu);

struct SmoothingData {
    long long b3_X = 0;
    long long b3_Xt = 0;
    std::vector<long long> milnor;  // empty means e ordinary double points
    std::vector<long long> mu;
};

// sigma = b3(X) - b3(X_t) + sum of Milnor numbers; throws NegativeDefect
long long defect(const SmoothingData& sm, long long e);

// b3(Y) = b - 2e + 2 sigma; throws NegativeBetti
long long betti3_semifano(long long b, long long e, long long sigma);

struct SemiFanoCohomology {
    long long b2_Y = 0;
    long long b3_Y = 0;
    long long rank_N0 = 0;
    long long rank_K0 = 0;
};

struct BlockCohomology {
    long long b2_Z = 0;
    long long b3_Z = 0;
    // (rank N - rank N0) + (rank K - rank K0) = k - 1
    long long rank_constraint = 0;
    std::optional<long long> rank_K;  // fixed when k = 1, or N = N0
};

BlockCohomology block_cohomology(const SemiFanoCohomology& y, const std::vector<long long>& genera,
                                 bool n_equals_n0 = true);

// (c2(Y) + c1(Y)^2) . D for a smooth divisor D
long long c2_restriction(long long c2_D, long long c1sq_D, long long q_DD, long long q_DA);

// c2 restriction after a flop, given D^3 - (D+)^3
long long flop_update(long long c2_restr_D, long long D3_minus_D3plus);

struct AcylProfile {
    long long b1 = 0, b2 = 0, b3 = 0, b4 = 0, b5 = 0;
    long long rank_N = 0, rank_K = 0, rank_T = 0;
    GramLattice N;
};

// throws RankNullityViolation unless rank_K + rank N = b2_Z - 1
AcylProfile acyl_profile(long long b2_Z, long long b3_Z, const GramLattice& N, long long rank_K);

struct Table71Row {
    long long b3_Z = 0;
    long long div_c2 = 0;
};

// upper end of the divisibility chain 2 | div c2(Z) | gcd((24 + (-K)^3)/r, 24)
long long cor514_bound(long long degree, long long index);
Table71Row table71_row(const FanoDescriptor& w);

// Built-in data: the seventeen Picard rank one Fano 3-folds with torsion
// free H^3, and the nodal cubic 3-fold degenerations.
const std::vector<FanoDescriptor>& fano_rank1_table();

struct NodalCubicRow {
    long long e = 0, sigma = 0, s = 0, planes = 0;
    std::optional<long long> rho_Y, b3_Y;
};
const std::vector<NodalCubicRow>& nodal_cubic_table();

// ---------------------------------------------------------------------------
// Block descriptors

struct BaseCurve {
    long long genus = 0;
    std::optional<long long> step_K3;  // K^3 of the blow-up after this curve
};

struct RestrictionWitness {
    std::string label;
    long long c2_D = 0, c1sq_D = 0, q_DD = 0, q_DA = 0;
};

struct FlopSpec {
    int index = 0;           // basis divisor whose restriction changes
    long long d3_shift = 0;  // D^3 - (D+)^3
};

struct NodalData {
    long long b = 0;  // b3 of a smoothing
    long long e = 0;
    long long sigma = 0;
};

struct BlockDescriptor {
    std::string name;
    GramLattice picard_gram;                 // q(D1, D2) = -K.D1.D2 on a basis of H2(Y)
    std::optional<VecZ> anticanonical;       // -K in that basis
    std::optional<long long> degree;         // only when -K is not given
    std::vector<std::optional<Int>> c2c1sq;  // (c2 + c1^2).D_i, null when unknown
    std::vector<RestrictionWitness> restrictions;
    long long b3_Y = 0;
    long long e = 0;
    int index = 1;
    std::vector<BaseCurve> base_curves;
    bool torsion_free_h3 = true;
    std::optional<GramLattice> N_gram;  // when N is bigger than the image of H2(Y)
    std::vector<FlopSpec> flops;
    std::optional<NodalData> nodal;

    long long anticanonical_degree() const;
};

BlockDescriptor parse_block_descriptor(const std::string& json_text);  // SchemaViolation
BlockDescriptor read_block_descriptor(const std::string& path);
std::string block_descriptor_json(const BlockDescriptor& d);

struct C2Result {
    std::vector<Int> fibre_coefficients;  // coefficients of the exceptional fibres
    std::optional<long long> div_c2;      // exact when determined
    long long lower = 2, upper = 0;       // 2 | div | upper
    bool even = true;
    long long cor514 = 0;
    bool cor514_applies = false;
};

// Steps, when given, override the descriptor's step_K3 values; length k - 1
// (intermediate blow-ups) or k (with final value 0).
C2Result c2_block(const BlockDescriptor& d, const std::vector<long long>& steps = {});

// div of c2(Z) modulo the image of N' (rows in H2(Y) coordinates)
long long c2_div_mod(const BlockDescriptor& d, const MatZ& nprime);

// descriptor after a flop: one restriction value shifted by 2 (D^3 - D+^3)
BlockDescriptor apply_flop(const BlockDescriptor& d, const FlopSpec& f);

}  // namespace acyl
