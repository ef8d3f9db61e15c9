#include "acyl/toric.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace acyl {

namespace {

long long mul(long long a, long long b) {
    long long r;
    if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorCode::ComputationOverflow, "integer product overflows");
    return r;
}

long long add(long long a, long long b) {
    long long r;
    if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorCode::ComputationOverflow, "integer sum overflows");
    return r;
}

void require_terminal(const LatticePolytope& p, const std::vector<Facet>& fs) {
    for (const Facet& f : fs)
        if (f.level != -1 || classify_facet(p, f) == FacetKind::Other)
            throw Error(ErrorCode::NotTerminal, "a facet is neither a standard triangle nor a standard parallelogram");
}

std::array<int, 3> sorted(int a, int b, int c) {
    std::array<int, 3> t{a, b, c};
    std::sort(t.begin(), t.end());
    return t;
}

}  // namespace

std::vector<Parallelogram> parallelograms(const LatticePolytope& p) {
    std::vector<Facet> fs = facets(p);
    std::vector<Parallelogram> out;
    for (size_t f = 0; f < fs.size(); ++f) {
        if (classify_facet(p, fs[f]) != FacetKind::StandardParallelogram) continue;
        Parallelogram q;
        q.facet = static_cast<int>(f);
        std::copy(fs[f].vertices.begin(), fs[f].vertices.end(), q.cycle.begin());
        // cyclic order starts at the smallest index, so diagonal 0 contains it
        std::array<int, 2> d0{q.cycle[0], q.cycle[2]}, d1{q.cycle[1], q.cycle[3]};
        std::sort(d0.begin(), d0.end());
        std::sort(d1.begin(), d1.end());
        q.diagonals = {d0, d1};
        out.push_back(q);
    }
    return out;
}

std::vector<bool> choice_from_index(std::size_t index, int nodes) {
    std::vector<bool> c(nodes);
    for (int k = 0; k < nodes; ++k) c[k] = (index >> k) & 1U;
    return c;
}

FanResolution resolution(const LatticePolytope& p, const std::vector<bool>& choice) {
    std::vector<Facet> fs = facets(p);
    require_terminal(p, fs);
    std::vector<Parallelogram> par = parallelograms(p);
    if (choice.size() != par.size())
        throw Error(ErrorCode::MalformedInput, "expected " + std::to_string(par.size()) + " diagonal choices, got " +
                                                   std::to_string(choice.size()));
    FanResolution r;
    r.rays = p.vertices;
    r.choice = choice;
    std::vector<int> par_of(fs.size(), -1);
    for (size_t k = 0; k < par.size(); ++k) par_of[par[k].facet] = static_cast<int>(k);
    for (size_t f = 0; f < fs.size(); ++f) {
        const auto& c = fs[f].vertices;
        if (par_of[f] < 0) {
            r.cones.push_back(sorted(c[0], c[1], c[2]));
            continue;
        }
        const Parallelogram& q = par[par_of[f]];
        const auto& d = q.diagonals[choice[par_of[f]] ? 1 : 0];
        for (int v : q.cycle)
            if (v != d[0] && v != d[1]) r.cones.push_back(sorted(d[0], d[1], v));
    }
    std::sort(r.cones.begin(), r.cones.end());
    return r;
}

std::vector<FanResolution> enumerate_resolutions(const LatticePolytope& p) {
    const int e = static_cast<int>(parallelograms(p).size());
    if (e > 24) throw Error(ErrorCode::ComputationOverflow, "too many parallelograms to enumerate");
    std::vector<FanResolution> out;
    for (std::size_t k = 0; k < (std::size_t{1} << e); ++k) out.push_back(resolution(p, choice_from_index(k, e)));
    return out;
}

std::vector<Wall> walls(const FanResolution& r) {
    std::map<std::array<int, 2>, std::vector<int>> opposite;
    for (const auto& c : r.cones) {
        opposite[{c[0], c[1]}].push_back(c[2]);
        opposite[{c[0], c[2]}].push_back(c[1]);
        opposite[{c[1], c[2]}].push_back(c[0]);
    }
    std::vector<Wall> out;
    for (const auto& [edge, opp] : opposite) {
        if (opp.size() != 2) throw Error(ErrorCode::NotSmooth, "fan is not complete along an edge");
        Wall w;
        w.i = edge[0];
        w.j = edge[1];
        w.a = opp[0];
        w.b = opp[1];
        const V3 &va = r.rays[w.a], &vb = r.rays[w.b], &vi = r.rays[w.i], &vj = r.rays[w.j];
        // the one linear relation among four vectors in rank 3
        long long c[4] = {det3(vb, vi, vj), -det3(va, vi, vj), det3(va, vb, vj), -det3(va, vb, vi)};
        long long g = 0;
        for (long long x : c) g = std::gcd(g, std::llabs(x));
        for (long long& x : c) x /= g;
        if (c[0] < 0)
            for (long long& x : c) x = -x;
        w.ca = c[0];
        w.cb = c[1];
        w.ci = c[2];
        w.cj = c[3];
        out.push_back(w);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Exact simplex with integer (fraction free) pivoting. The tableau rows are
// the true rows times the last pivot d, which stays positive.

namespace {

template <class T>
struct Arith;

template <>
struct Arith<long long> {
    static long long mul(long long a, long long b) { return acyl::mul(a, b); }
    static long long sub(long long a, long long b) {
        long long r;
        if (__builtin_sub_overflow(a, b, &r)) throw Error(ErrorCode::ComputationOverflow, "tableau overflow");
        return r;
    }
    static Int big(long long a) { return Int(a); }
};

template <>
struct Arith<Int> {
    static Int mul(const Int& a, const Int& b) { return a * b; }
    static Int sub(const Int& a, const Int& b) { return a - b; }
    static Int big(const Int& a) { return a; }
};

template <class T>
ProjectivityResult solve_lp(const FanResolution& r, const std::vector<Wall>& ws) {
    using A = Arith<T>;
    const int n = static_cast<int>(r.rays.size());
    const int nv = 2 * n + 1;  // p, q >= 0 with h = p - q, then eps
    const int eps = 2 * n;
    const int m = static_cast<int>(ws.size()) + 1;
    const int cols = nv + m + 1;
    const int rhs = cols - 1;
    std::vector<std::vector<T>> t(m + 1, std::vector<T>(cols, T(0)));
    auto put = [&](int row, int ray, long long c) {
        t[row][ray] = T(t[row][ray] - T(c));
        t[row][n + ray] = T(t[row][n + ray] + T(c));
    };
    // eps - sum c_k h_k <= 0 for every wall
    for (int w = 0; w < m - 1; ++w) {
        const Wall& x = ws[w];
        put(w, x.a, x.ca);
        put(w, x.b, x.cb);
        put(w, x.i, x.ci);
        put(w, x.j, x.cj);
        t[w][eps] = T(1);
    }
    t[m - 1][eps] = T(1);
    t[m - 1][rhs] = T(1);
    for (int k = 0; k < m; ++k) t[k][nv + k] = T(1);
    t[m][eps] = T(-1);  // maximise eps
    std::vector<int> basis(m);
    for (int k = 0; k < m; ++k) basis[k] = nv + k;
    T d(1);

    for (int iter = 0; iter < 100000; ++iter) {
        int enter = -1;
        for (int j = 0; j < rhs; ++j)
            if (t[m][j] < 0) {
                enter = j;
                break;
            }
        if (enter < 0) break;
        int leave = -1;
        for (int k = 0; k < m; ++k) {
            if (!(t[k][enter] > 0)) continue;
            if (leave < 0) {
                leave = k;
                continue;
            }
            // compare t[k][rhs]/t[k][enter] with t[leave][rhs]/t[leave][enter]
            T lhs = A::mul(t[k][rhs], t[leave][enter]);
            T rhs_v = A::mul(t[leave][rhs], t[k][enter]);
            if (lhs < rhs_v || (lhs == rhs_v && basis[k] < basis[leave])) leave = k;
        }
        if (leave < 0) throw Error(ErrorCode::ComputationOverflow, "projectivity LP is unbounded");
        const T piv = t[leave][enter];
        for (int k = 0; k <= m; ++k) {
            if (k == leave) continue;
            const T f = t[k][enter];
            for (int j = 0; j < cols; ++j) {
                T v = A::sub(A::mul(t[k][j], piv), A::mul(f, t[leave][j]));
                t[k][j] = T(v / d);
            }
        }
        d = piv;
        basis[leave] = enter;
    }

    ProjectivityResult res;
    std::vector<Rational> value(nv, Rational(0));
    for (int k = 0; k < m; ++k)
        if (basis[k] < nv) value[basis[k]] = Rational(A::big(t[k][rhs]), A::big(d));
    res.epsilon = value[eps];
    res.projective = res.epsilon > 0;
    if (res.projective)
        for (int k = 0; k < n; ++k) res.heights.push_back(value[k] - value[n + k]);
    return res;
}

}  // namespace

ProjectivityResult is_projective(const FanResolution& r) {
    std::vector<Wall> ws = walls(r);
    ProjectivityResult res;
    try {
        res = solve_lp<long long>(r, ws);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::ComputationOverflow) throw;
        res = solve_lp<Int>(r, ws);
    }
    if (res.projective && !check_heights(r, res.heights))
        throw Error(ErrorCode::ComputationOverflow, "projectivity certificate failed its own check");
    return res;
}

bool check_heights(const FanResolution& r, const std::vector<Rational>& h) {
    if (h.size() != r.rays.size()) return false;
    for (const Wall& w : walls(r)) {
        Rational s = h[w.a] * w.ca + h[w.b] * w.cb + h[w.i] * w.ci + h[w.j] * w.cj;
        if (!(s > 0)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------

std::vector<ChoiceAction> choice_actions(const LatticePolytope& p) {
    std::vector<Parallelogram> par = parallelograms(p);
    std::map<std::array<long long, 3>, int> index;
    for (size_t i = 0; i < p.vertices.size(); ++i)
        index[{p.vertices[i][0], p.vertices[i][1], p.vertices[i][2]}] = static_cast<int>(i);
    std::map<std::array<int, 2>, std::pair<int, int>> diag;  // diagonal -> (parallelogram, which)
    for (size_t k = 0; k < par.size(); ++k)
        for (int w = 0; w < 2; ++w) diag[par[k].diagonals[w]] = {static_cast<int>(k), w};

    std::vector<ChoiceAction> out;
    for (const M3& A : automorphisms(p)) {
        std::vector<int> perm(p.vertices.size());
        for (size_t i = 0; i < p.vertices.size(); ++i) {
            V3 y = A * p.vertices[i];
            perm[i] = index.at({y[0], y[1], y[2]});
        }
        ChoiceAction g;
        g.facet_perm.resize(par.size());
        g.flips.resize(par.size());
        for (size_t k = 0; k < par.size(); ++k) {
            std::array<int, 2> img{perm[par[k].diagonals[0][0]], perm[par[k].diagonals[0][1]]};
            std::sort(img.begin(), img.end());
            auto [target, which] = diag.at(img);
            g.facet_perm[k] = target;
            g.flips[k] = which == 1;
        }
        out.push_back(g);
    }
    return out;
}

std::vector<bool> act(const ChoiceAction& g, const std::vector<bool>& c) {
    std::vector<bool> out(c.size());
    for (size_t k = 0; k < c.size(); ++k) out[g.facet_perm[k]] = c[k] != g.flips[k];
    return out;
}

ResolutionClasses resolution_classes(const LatticePolytope& p) {
    std::vector<ChoiceAction> group = choice_actions(p);
    const int e = static_cast<int>(parallelograms(p).size());
    if (e > 24) throw Error(ErrorCode::ComputationOverflow, "too many parallelograms to enumerate");
    ResolutionClasses rc;
    rc.group_order = group.size();
    std::set<std::vector<bool>> canon;
    for (std::size_t k = 0; k < (std::size_t{1} << e); ++k) {
        ++rc.resolutions;
        std::vector<bool> c = choice_from_index(k, e);
        if (!is_projective(resolution(p, c)).projective) continue;
        ++rc.projective;
        std::vector<bool> best = c;
        for (const ChoiceAction& g : group) best = std::min(best, act(g, c));
        canon.insert(best);
    }
    rc.classes = canon.size();
    return rc;
}

// ---------------------------------------------------------------------------

std::vector<long long> triple_intersections(const FanResolution& r) {
    const int n = static_cast<int>(r.rays.size());
    for (const auto& c : r.cones)
        if (std::llabs(det3(r.rays[c[0]], r.rays[c[1]], r.rays[c[2]])) != 1)
            throw Error(ErrorCode::NotSmooth, "a maximal cone is not unimodular");
    std::vector<long long> T(static_cast<size_t>(n) * n * n, 0);
    auto at = [&](int i, int j, int k) -> long long& { return T[(static_cast<size_t>(i) * n + j) * n + k]; };
    auto set_sym = [&](int i, int j, int k, long long v) {
        int idx[3] = {i, j, k};
        std::sort(idx, idx + 3);
        do {
            at(idx[0], idx[1], idx[2]) = v;
        } while (std::next_permutation(idx, idx + 3));
    };
    for (const auto& c : r.cones) set_sym(c[0], c[1], c[2], 1);
    std::vector<std::vector<std::pair<int, long long>>> self(n);  // D_i^2 D_k for neighbours k
    for (const Wall& w : walls(r)) {
        if (w.ca != 1 || w.cb != 1) throw Error(ErrorCode::NotSmooth, "wall relation is not primitive");
        set_sym(w.i, w.i, w.j, w.ci);
        set_sym(w.i, w.j, w.j, w.cj);
        self[w.i].push_back({w.j, w.ci});
        self[w.j].push_back({w.i, w.cj});
    }
    for (int i = 0; i < n; ++i) {
        // m with <m, v_i> = 1; then D_i = -sum_{k != i} <m, v_k> D_k
        const V3& v = r.rays[i];
        long long s1, t1, u, w;
        auto egcd = [](long long a, long long b, long long& x, long long& y) {
            long long x0 = 1, y0 = 0, x1 = 0, y1 = 1;
            while (b != 0) {
                long long q = a / b;
                std::tie(a, b) = std::make_pair(b, a - q * b);
                std::tie(x0, x1) = std::make_pair(x1, x0 - q * x1);
                std::tie(y0, y1) = std::make_pair(y1, y0 - q * y1);
            }
            if (a < 0) {
                a = -a;
                x0 = -x0;
                y0 = -y0;
            }
            x = x0;
            y = y0;
            return a;
        };
        long long g1 = egcd(v[0], v[1], s1, t1);
        long long g = egcd(g1, v[2], u, w);
        if (g != 1) throw Error(ErrorCode::NotSmooth, "ray is not primitive");
        V3 m(mul(u, s1), mul(u, t1), w);
        long long cube = 0;
        for (auto [k, val] : self[i]) cube = add(cube, -mul(m.dot(r.rays[k]), val));
        at(i, i, i) = cube;
    }
    return T;
}

FanInvariants fan_invariants(const FanResolution& r) {
    const int n = static_cast<int>(r.rays.size());
    FanInvariants fi;
    std::vector<long long> T = triple_intersections(r);
    fi.smooth = true;
    auto at = [&](int i, int j, int k) { return T[(static_cast<size_t>(i) * n + j) * n + k]; };

    MatZ G(n, n);
    std::vector<std::set<int>> nbr(n);
    for (const auto& c : r.cones)
        for (int x : c)
            for (int y : c)
                if (x != y) nbr[x].insert(y);
    fi.c2c1sq.assign(n, 0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            long long s = 0;
            for (int k = 0; k < n; ++k) s = add(s, at(i, j, k));
            G(i, j) = s;
        }
        // c2 = sum of the torus invariant curves D_j D_k over edges of the fan
        long long c2 = 0, c1sq = 0;
        for (int j = 0; j < n; ++j) {
            for (int k : nbr[j])
                if (j < k) c2 = add(c2, at(i, j, k));
            for (int k = 0; k < n; ++k) c1sq = add(c1sq, at(i, j, k));
        }
        fi.c2c1sq[i] = add(c2, c1sq);
    }
    fi.boundary_gram = GramLattice(G);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) fi.antiK_cubed = add(fi.antiK_cubed, to_ll(G(i, j)));

    // Demazure roots lie in the dual polytope of the rays
    std::vector<V3> normals;
    LatticePolytope rays{r.rays};
    LatticePolytope hull = polytope_from_points(r.rays);
    for (const Facet& f : facets(hull)) {
        if (f.level != -1) throw Error(ErrorCode::NotReflexive, "rays do not span a reflexive polytope");
        normals.push_back(f.normal);
    }
    for (const V3& m : lattice_points(polytope_from_points(normals))) {
        int minus = 0;
        bool ok = true;
        for (const V3& v : r.rays) {
            long long s = m.dot(v);
            if (s == -1) ++minus;
            else if (s < 0) ok = false;
        }
        if (ok && minus == 1) ++fi.demazure_roots;
    }
    const long long rho = n - 3;
    const long long g = genus_degree(fi.antiK_cubed).g;
    fi.h0 = 3 + fi.demazure_roots;
    fi.h1 = fi.h0 + 19 - rho - g;
    fi.rigid = fi.h1 == 0;
    return fi;
}

BlockDescriptor toric_block_descriptor(const LatticePolytope& p, const std::vector<bool>& choice,
                                       bool boundary_pencil, const std::string& name) {
    FanResolution r = resolution(p, choice);
    FanInvariants fi = fan_invariants(r);
    const int n = static_cast<int>(r.rays.size());
    ImageLattice img = image_lattice(fi.boundary_gram);
    if (img.induced.rank() != n - 3)
        throw Error(ErrorCode::RankMismatch, "boundary Gram has rank " + std::to_string(img.induced.rank()) +
                                                 ", expected " + std::to_string(n - 3));
    BlockDescriptor d;
    d.name = name;
    d.picard_gram = img.induced;
    d.anticanonical = VecZ(img.proj * VecZ::Ones(n));
    for (Eigen::Index k = 0; k < img.lifts.rows(); ++k) {
        Int s = 0;
        for (int i = 0; i < n; ++i) s += img.lifts(k, i) * fi.c2c1sq[i];
        d.c2c1sq.push_back(s);
    }
    d.b3_Y = 0;
    d.index = 1;
    d.torsion_free_h3 = true;
    const int nodes = static_cast<int>(choice.size());
    if (boundary_pencil) {
        d.base_curves.assign(n, BaseCurve{0, std::nullopt});
        long long meets = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) meets += to_ll(fi.boundary_gram.gram(i, j));
        d.e = nodes + meets;
    } else {
        d.base_curves = {BaseCurve{genus_degree(fi.antiK_cubed).g, std::nullopt}};
        d.e = nodes;
    }
    return d;
}

}  // namespace acyl
