#include "acyl/toric.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace acyl {

namespace {

long long mul(long long a, long long b) {
    long long r;
    if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorCode::ComputationOverflow, "coordinate product overflows");
    return r;
}

long long add(long long a, long long b) {
    long long r;
    if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorCode::ComputationOverflow, "coordinate sum overflows");
    return r;
}

V3 cross(const V3& a, const V3& b) {
    return V3(add(mul(a[1], b[2]), -mul(a[2], b[1])), add(mul(a[2], b[0]), -mul(a[0], b[2])),
              add(mul(a[0], b[1]), -mul(a[1], b[0])));
}

long long dot(const V3& a, const V3& b) { return add(add(mul(a[0], b[0]), mul(a[1], b[1])), mul(a[2], b[2])); }

V3 primitive(const V3& v) {
    long long g = std::gcd(std::gcd(std::llabs(v[0]), std::llabs(v[1])), std::llabs(v[2]));
    return g ? V3(v / g) : v;
}

bool lex_less(const V3& a, const V3& b) {
    return std::lexicographical_compare(a.data(), a.data() + 3, b.data(), b.data() + 3);
}

using Key = std::array<long long, 3>;
Key key(const V3& v) { return {v[0], v[1], v[2]}; }

struct Plane {
    V3 normal;
    long long level;
};

// supporting planes of the hull, each with every point on its >= side
std::vector<Plane> hull_planes(const std::vector<V3>& pts) {
    std::vector<Plane> out;
    std::set<std::array<long long, 4>> seen;
    const size_t n = pts.size();
    for (size_t a = 0; a < n; ++a)
        for (size_t b = a + 1; b < n; ++b)
            for (size_t c = b + 1; c < n; ++c) {
                V3 nrm = cross(pts[b] - pts[a], pts[c] - pts[a]);
                if (nrm.isZero()) continue;
                nrm = primitive(nrm);
                const long long s = dot(nrm, pts[a]);
                bool pos = true, neg = true;
                for (const V3& x : pts) {
                    long long t = dot(nrm, x) - s;
                    if (t < 0) pos = false;
                    if (t > 0) neg = false;
                }
                if (!pos && !neg) continue;
                if (!pos) nrm = -nrm;
                const long long level = dot(nrm, pts[a]);
                if (seen.insert({nrm[0], nrm[1], nrm[2], level}).second) out.push_back(Plane{nrm, level});
            }
    return out;
}

int point_rank(const std::vector<V3>& pts) {
    if (pts.empty()) return -1;
    MatZ m(static_cast<Eigen::Index>(pts.size()) - 1, 3);
    for (size_t i = 1; i < pts.size(); ++i)
        for (int c = 0; c < 3; ++c) m(i - 1, c) = pts[i][c] - pts[0][c];
    return m.rows() ? rank(m) : 0;
}

std::vector<int> cyclic_order(const std::vector<V3>& verts, const std::vector<int>& idx, const V3& normal) {
    // directed edges u -> v with every other vertex to the left, seen from the normal
    std::map<int, int> next;
    for (int u : idx)
        for (int v : idx) {
            if (u == v) continue;
            bool ok = true;
            for (int w : idx) {
                if (w == u || w == v) continue;
                if (dot(normal, cross(verts[v] - verts[u], verts[w] - verts[u])) <= 0) {
                    ok = false;
                    break;
                }
            }
            if (ok) next[u] = v;
        }
    std::vector<int> cyc{*std::min_element(idx.begin(), idx.end())};
    while (cyc.size() < idx.size()) {
        auto it = next.find(cyc.back());
        if (it == next.end()) throw Error(ErrorCode::NotFullDimensional, "degenerate facet");
        cyc.push_back(it->second);
    }
    return cyc;
}

// lattice area of triangle abc in the plane with primitive normal m
long long lattice_area(const V3& a, const V3& b, const V3& c, const V3& m) {
    V3 x = cross(b - a, c - a);
    for (int k = 0; k < 3; ++k)
        if (m[k] != 0) return std::llabs(x[k] / m[k]);
    return 0;
}

bool on_segment(const V3& x, const V3& u, const V3& v) {
    if (!cross(x - u, v - u).isZero()) return false;
    return dot(x - u, v - x) >= 0;
}

M3 columns(const V3& a, const V3& b, const V3& c) {
    M3 m;
    m.col(0) = a;
    m.col(1) = b;
    m.col(2) = c;
    return m;
}

M3 adjugate(const M3& m) {
    M3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            int r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
            r(i, j) = add(mul(m(r0, c0), m(r1, c1)), -mul(m(r0, c1), m(r1, c0)));
        }
    return r;
}

}  // namespace

long long det3(const V3& a, const V3& b, const V3& c) { return dot(a, cross(b, c)); }

LatticePolytope polytope_from_points(const std::vector<V3>& input) {
    std::vector<V3> pts = input;
    std::sort(pts.begin(), pts.end(), lex_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (point_rank(pts) < 3) throw Error(ErrorCode::NotFullDimensional, "points span less than 3 dimensions");
    std::vector<Plane> planes = hull_planes(pts);
    LatticePolytope p;
    for (const V3& x : pts) {
        std::vector<V3> normals;
        for (const Plane& pl : planes)
            if (dot(pl.normal, x) == pl.level) normals.push_back(pl.normal);
        if (normals.size() < 3) continue;
        MatZ m(static_cast<Eigen::Index>(normals.size()), 3);
        for (size_t i = 0; i < normals.size(); ++i)
            for (int c = 0; c < 3; ++c) m(i, c) = normals[i][c];
        if (rank(m) == 3) p.vertices.push_back(x);
    }
    return p;
}

namespace {

std::vector<std::vector<long long>> read_ints(std::istream& in, int rows, int cols, int& line_no) {
    std::vector<std::vector<long long>> out;
    std::string line;
    while (static_cast<int>(out.size()) < rows && std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream ls(line);
        std::vector<long long> row;
        std::string tok;
        while (ls >> tok) {
            try {
                size_t used = 0;
                long long v = std::stoll(tok, &used);
                if (used != tok.size()) throw std::invalid_argument(tok);
                row.push_back(v);
            } catch (const std::exception&) {
                throw Error(ErrorCode::MalformedInput, "line " + std::to_string(line_no) + ": bad integer '" + tok + "'");
            }
        }
        if (static_cast<int>(row.size()) != cols)
            throw Error(ErrorCode::MalformedInput, "line " + std::to_string(line_no) + ": expected " +
                                                       std::to_string(cols) + " integers, found " +
                                                       std::to_string(row.size()));
        out.push_back(row);
    }
    if (static_cast<int>(out.size()) < rows) throw Error(ErrorCode::MalformedInput, "unexpected end of polytope data");
    return out;
}

}  // namespace

std::vector<LatticePolytope> parse_polytopes(const std::string& text) {
    std::istringstream in(text);
    std::vector<LatticePolytope> out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream hs(line);
        long long r = 0, c = 0;
        if (!(hs >> r >> c) || r <= 0 || c <= 0 || (r != 3 && c != 3))
            throw Error(ErrorCode::MalformedInput, "line " + std::to_string(line_no) + ": expected a header '3 k'");
        auto rows = read_ints(in, static_cast<int>(r), static_cast<int>(c), line_no);
        std::vector<V3> pts;
        if (r == 3) {
            for (long long k = 0; k < c; ++k) pts.push_back(V3(rows[0][k], rows[1][k], rows[2][k]));
        } else {
            for (const auto& row : rows) pts.push_back(V3(row[0], row[1], row[2]));
        }
        for (const V3& x : pts)
            if (x.cwiseAbs().maxCoeff() > 1000000)
                throw Error(ErrorCode::ComputationOverflow, "coordinates larger than 10^6 are not supported");
        out.push_back(polytope_from_points(pts));
    }
    if (out.empty()) throw Error(ErrorCode::MalformedInput, "no polytope found");
    return out;
}

LatticePolytope parse_polytope(const std::string& text) {
    std::vector<LatticePolytope> all = parse_polytopes(text);
    if (all.size() != 1) throw Error(ErrorCode::MalformedInput, "expected exactly one polytope");
    return all[0];
}

std::vector<LatticePolytope> read_polytope_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::MalformedInput, "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_polytopes(ss.str());
}

std::string polytope_text(const LatticePolytope& p) {
    std::ostringstream out;
    out << "3 " << p.vertices.size() << "\n";
    for (int r = 0; r < 3; ++r) {
        for (size_t k = 0; k < p.vertices.size(); ++k) out << (k ? " " : "") << p.vertices[k][r];
        out << "\n";
    }
    return out.str();
}

std::vector<Facet> facets(const LatticePolytope& p) {
    std::vector<Facet> out;
    for (const Plane& pl : hull_planes(p.vertices)) {
        Facet f;
        f.normal = pl.normal;
        f.level = pl.level;
        std::vector<int> idx;
        for (size_t i = 0; i < p.vertices.size(); ++i)
            if (dot(pl.normal, p.vertices[i]) == pl.level) idx.push_back(static_cast<int>(i));
        f.vertices = cyclic_order(p.vertices, idx, pl.normal);
        out.push_back(f);
    }
    std::sort(out.begin(), out.end(), [](const Facet& a, const Facet& b) { return a.vertices < b.vertices; });
    return out;
}

std::vector<V3> lattice_points(const LatticePolytope& p) {
    std::vector<Facet> fs = facets(p);
    V3 lo = p.vertices[0], hi = p.vertices[0];
    for (const V3& v : p.vertices) {
        lo = lo.cwiseMin(v);
        hi = hi.cwiseMax(v);
    }
    std::vector<V3> out;
    for (long long x = lo[0]; x <= hi[0]; ++x)
        for (long long y = lo[1]; y <= hi[1]; ++y)
            for (long long z = lo[2]; z <= hi[2]; ++z) {
                V3 q(x, y, z);
                bool in = std::all_of(fs.begin(), fs.end(), [&](const Facet& f) { return dot(f.normal, q) >= f.level; });
                if (in) out.push_back(q);
            }
    return out;
}

bool is_reflexive(const LatticePolytope& p) {
    std::vector<Facet> fs = facets(p);
    return std::all_of(fs.begin(), fs.end(), [](const Facet& f) { return f.level == -1; });
}

LatticePolytope dual_polytope(const LatticePolytope& p) {
    std::vector<V3> normals;
    for (const Facet& f : facets(p)) {
        if (f.level != -1) throw Error(ErrorCode::NotReflexive, "a facet is not at lattice distance 1");
        normals.push_back(f.normal);
    }
    return polytope_from_points(normals);
}

FacetKind classify_facet(const LatticePolytope& p, const Facet& f) {
    const auto& v = p.vertices;
    const auto& c = f.vertices;
    long long area = 0;
    for (size_t k = 1; k + 1 < c.size(); ++k) area += lattice_area(v[c[0]], v[c[k]], v[c[k + 1]], f.normal);
    if (c.size() == 3 && area == 1) return FacetKind::StandardTriangle;
    if (c.size() == 4 && area == 2 && v[c[0]] + v[c[2]] == v[c[1]] + v[c[3]]) return FacetKind::StandardParallelogram;
    return FacetKind::Other;
}

long long normalized_volume(const LatticePolytope& p) {
    long long vol = 0;
    for (const Facet& f : facets(p)) {
        if (f.level >= 0) throw Error(ErrorCode::NotFullDimensional, "origin is not interior");
        const auto& c = f.vertices;
        for (size_t k = 1; k + 1 < c.size(); ++k)
            vol = add(vol, std::llabs(det3(p.vertices[c[0]], p.vertices[c[k]], p.vertices[c[k + 1]])));
    }
    return vol;
}

std::optional<M3> unimodular_equivalence(const LatticePolytope& p, const LatticePolytope& q) {
    const auto& pv = p.vertices;
    const auto& qv = q.vertices;
    if (pv.size() != qv.size()) return std::nullopt;
    const int n = static_cast<int>(pv.size());
    // a basis triple of p with the smallest |det| keeps the candidate list short
    std::array<int, 3> base{-1, -1, -1};
    long long best = 0;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c) {
                long long d = std::llabs(det3(pv[a], pv[b], pv[c]));
                if (d != 0 && (best == 0 || d < best)) {
                    best = d;
                    base = {a, b, c};
                }
            }
    if (best == 0) return std::nullopt;
    const M3 P = columns(pv[base[0]], pv[base[1]], pv[base[2]]);
    const M3 adj = adjugate(P);
    const long long dp = det3(pv[base[0]], pv[base[1]], pv[base[2]]);
    std::set<Key> target;
    for (const V3& x : qv) target.insert(key(x));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                if (a == b || b == c || a == c) continue;
                if (std::llabs(det3(qv[a], qv[b], qv[c])) != best) continue;
                M3 num = columns(qv[a], qv[b], qv[c]) * adj;
                bool integral = true;
                for (int k = 0; k < 9 && integral; ++k) integral = num.data()[k] % dp == 0;
                if (!integral) continue;
                M3 A = num / dp;
                bool ok = true;
                for (const V3& x : pv)
                    if (!target.count(key(A * x))) {
                        ok = false;
                        break;
                    }
                if (ok) return A;
            }
    return std::nullopt;
}

std::vector<M3> automorphisms(const LatticePolytope& p) {
    const auto& pv = p.vertices;
    const int n = static_cast<int>(pv.size());
    std::array<int, 3> base{-1, -1, -1};
    long long best = 0;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c) {
                long long d = std::llabs(det3(pv[a], pv[b], pv[c]));
                if (d != 0 && (best == 0 || d < best)) {
                    best = d;
                    base = {a, b, c};
                }
            }
    const M3 adj = adjugate(columns(pv[base[0]], pv[base[1]], pv[base[2]]));
    const long long dp = det3(pv[base[0]], pv[base[1]], pv[base[2]]);
    std::set<Key> target;
    for (const V3& x : pv) target.insert(key(x));
    std::vector<M3> out;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                if (a == b || b == c || a == c) continue;
                if (std::llabs(det3(pv[a], pv[b], pv[c])) != best) continue;
                M3 num = columns(pv[a], pv[b], pv[c]) * adj;
                bool integral = true;
                for (int k = 0; k < 9 && integral; ++k) integral = num.data()[k] % dp == 0;
                if (!integral) continue;
                M3 A = num / dp;
                bool ok = true;
                for (const V3& x : pv)
                    if (!target.count(key(A * x))) {
                        ok = false;
                        break;
                    }
                if (ok) out.push_back(A);
            }
    return out;
}

int cartier_rank(const LatticePolytope& p) {
    std::vector<Facet> fs = facets(p);
    const Eigen::Index nf = static_cast<Eigen::Index>(fs.size());
    std::vector<std::vector<int>> at(p.vertices.size());
    for (Eigen::Index f = 0; f < nf; ++f)
        for (int v : fs[f].vertices) at[v].push_back(static_cast<int>(f));
    std::vector<std::array<long long, 5>> eqs;  // vertex, facet, facet
    for (size_t v = 0; v < at.size(); ++v)
        for (size_t k = 1; k < at[v].size(); ++k) eqs.push_back({static_cast<long long>(v), at[v][0], at[v][k], 0, 0});
    MatZ m = MatZ::Zero(static_cast<Eigen::Index>(eqs.size()), 3 * nf);
    for (size_t r = 0; r < eqs.size(); ++r) {
        const V3& x = p.vertices[eqs[r][0]];
        for (int c = 0; c < 3; ++c) {
            m(r, 3 * eqs[r][1] + c) += x[c];
            m(r, 3 * eqs[r][2] + c) -= x[c];
        }
    }
    const long long dim = 3 * nf - (m.rows() ? rank(m) : 0);
    return static_cast<int>(dim - 3);
}

PolytopeProfile polytope_profile(const LatticePolytope& p) {
    PolytopeProfile r;
    std::vector<Facet> fs = facets(p);
    for (const Facet& f : fs)
        if (f.level >= 0) throw Error(ErrorCode::NotFullDimensional, "origin is not an interior point");
    std::vector<V3> pts = lattice_points(p);
    r.lattice_points = static_cast<int>(pts.size());
    r.rho_resolution = r.lattice_points - 4;
    r.reflexive = std::all_of(fs.begin(), fs.end(), [](const Facet& f) { return f.level == -1; });
    if (!r.reflexive) return r;

    r.terminal = true;
    r.semismall = true;
    for (const Facet& f : fs) {
        FacetKind k = classify_facet(p, f);
        if (k == FacetKind::Other) r.terminal = false;
        if (k == FacetKind::StandardParallelogram) ++r.nodes;
        const auto& c = f.vertices;
        for (const V3& x : pts) {
            if (dot(f.normal, x) != f.level) continue;
            bool boundary = false;
            for (size_t e = 0; e < c.size() && !boundary; ++e)
                boundary = on_segment(x, p.vertices[c[e]], p.vertices[c[(e + 1) % c.size()]]);
            if (!boundary) r.semismall = false;
        }
    }
    if (!r.terminal) r.nodes = 0;
    LatticePolytope d = dual_polytope(p);
    r.self_dual = unimodular_equivalence(p, d).has_value();
    r.degree = normalized_volume(d);
    r.genus = genus_degree(*r.degree).g;
    r.rho_X = cartier_rank(p);
    r.defect = r.rho_resolution - r.rho_X;
    return r;
}

}  // namespace acyl
