#pragma once

// Reflexive lattice polytopes in dimension 3 and the crepant small
// resolutions of the toric Fano 3-folds they define. The fan is always the
// face fan of the polytope (rays through the boundary lattice points).
// Coordinates are small, so everything here runs on checked long long.

#include "acyl/blocks.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace acyl {

using V3 = Eigen::Matrix<long long, 3, 1>;
using M3 = Eigen::Matrix<long long, 3, 3>;

struct LatticePolytope {
    std::vector<V3> vertices;  // hull vertices, sorted lexicographically
};

struct Facet {
    std::vector<int> vertices;  // cyclic order around the facet
    V3 normal;                  // inner normal, primitive
    long long level = 0;        // <normal, x> = level on the facet, >= level on P
};

enum class FacetKind { StandardTriangle, StandardParallelogram, Other };

long long det3(const V3& a, const V3& b, const V3& c);

// File format: a line "3 k" then 3 rows of k integers (columns are points),
// or "k 3" then k rows of 3. Text after the two header integers is ignored.
LatticePolytope parse_polytope(const std::string& text);
std::vector<LatticePolytope> parse_polytopes(const std::string& text);  // batch
std::vector<LatticePolytope> read_polytope_file(const std::string& path);
LatticePolytope polytope_from_points(const std::vector<V3>& points);  // hull, dedup
std::string polytope_text(const LatticePolytope& p);

std::vector<Facet> facets(const LatticePolytope& p);
std::vector<V3> lattice_points(const LatticePolytope& p);  // includes the origin
bool is_reflexive(const LatticePolytope& p);
LatticePolytope dual_polytope(const LatticePolytope& p);  // throws NotReflexive
FacetKind classify_facet(const LatticePolytope& p, const Facet& f);
long long normalized_volume(const LatticePolytope& p);  // 3! vol, origin interior

// A in GL3(Z) with A * vertices(p) = vertices(q) as sets
std::optional<M3> unimodular_equivalence(const LatticePolytope& p, const LatticePolytope& q);
std::vector<M3> automorphisms(const LatticePolytope& p);

// rank of Pic of the toric variety of the face fan
int cartier_rank(const LatticePolytope& p);

struct PolytopeProfile {
    bool reflexive = false;
    bool self_dual = false;
    bool terminal = false;
    bool semismall = false;
    int nodes = 0;  // parallelogram facets
    int lattice_points = 0;
    int rho_resolution = 0;
    std::optional<long long> degree, genus;
    int rho_X = 0;
    int defect = 0;
};

PolytopeProfile polytope_profile(const LatticePolytope& p);

struct Parallelogram {
    int facet = 0;
    std::array<int, 4> cycle{};                    // vertex indices, cyclic
    std::array<std::array<int, 2>, 2> diagonals{};  // diagonal 0 contains the smallest index
};

std::vector<Parallelogram> parallelograms(const LatticePolytope& p);

struct FanResolution {
    std::vector<V3> rays;
    std::vector<std::array<int, 3>> cones;  // sorted ray indices
    std::vector<bool> choice;               // one diagonal per parallelogram
};

// one refinement per diagonal choice; throws NotTerminal
FanResolution resolution(const LatticePolytope& p, const std::vector<bool>& choice);
std::vector<FanResolution> enumerate_resolutions(const LatticePolytope& p);
std::vector<bool> choice_from_index(std::size_t index, int nodes);

// c_a v_a + c_b v_b + c_i v_i + c_j v_j = 0 across the wall cone(v_i, v_j)
// between cones (i, j, a) and (i, j, b), with c_a, c_b > 0
struct Wall {
    int i = 0, j = 0, a = 0, b = 0;
    long long ca = 0, cb = 0, ci = 0, cj = 0;
};

std::vector<Wall> walls(const FanResolution& r);

struct ProjectivityResult {
    bool projective = false;
    Rational epsilon;               // optimal minimum wall slack (capped at 1)
    std::vector<Rational> heights;  // strictly convex support function on the rays
};

// Exact LP: maximise eps subject to every wall slack >= eps and eps <= 1.
ProjectivityResult is_projective(const FanResolution& r);
bool check_heights(const FanResolution& r, const std::vector<Rational>& heights);

struct ResolutionClasses {
    std::size_t resolutions = 0;
    std::size_t projective = 0;
    std::size_t classes = 0;  // Aut(P)-orbits of projective refinements
    std::size_t group_order = 0;
};

// Action of a polytope automorphism on diagonal choices
struct ChoiceAction {
    std::vector<int> facet_perm;  // parallelogram -> parallelogram
    std::vector<bool> flips;      // diagonal index changes
};

std::vector<ChoiceAction> choice_actions(const LatticePolytope& p);
std::vector<bool> act(const ChoiceAction& g, const std::vector<bool>& choice);
ResolutionClasses resolution_classes(const LatticePolytope& p);

struct FanInvariants {
    bool smooth = false;
    long long antiK_cubed = 0;
    GramLattice boundary_gram;     // (-K).D_i.D_j
    std::vector<long long> c2c1sq;  // (c2 + c1^2).D_i
    int demazure_roots = 0;
    long long h0 = 0, h1 = 0;       // of the tangent sheaf
    bool rigid = false;
};

// throws NotSmooth
FanInvariants fan_invariants(const FanResolution& r);

// intersection numbers D_i.D_j.D_k of a smooth complete fan
std::vector<long long> triple_intersections(const FanResolution& r);  // n^3 array

// Block descriptor of a resolution: the generic anticanonical pencil, or the
// pencil spanned by the toric boundary (one base curve per ray).
BlockDescriptor toric_block_descriptor(const LatticePolytope& p, const std::vector<bool>& choice,
                                       bool boundary_pencil, const std::string& name);

}  // namespace acyl
