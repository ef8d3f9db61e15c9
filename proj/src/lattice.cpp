#include "acyl/lattice.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace acyl {

GramLattice::GramLattice(MatZ g) : gram(std::move(g)) {
    if (gram.rows() != gram.cols())
        throw Error(ErrorCode::NotSymmetric, "Gram matrix is not square");
    for (Eigen::Index i = 0; i < gram.rows(); ++i)
        for (Eigen::Index j = i + 1; j < gram.cols(); ++j)
            if (gram(i, j) != gram(j, i))
                throw Error(ErrorCode::NotSymmetric, "entry (" + std::to_string(i) + "," +
                                                         std::to_string(j) + ") differs from its transpose");
}

bool GramLattice::operator==(const GramLattice& o) const {
    return gram.rows() == o.gram.rows() && gram.cols() == o.gram.cols() && gram == o.gram;
}

MatZ matz(const std::vector<std::vector<long long>>& rows) {
    const Eigen::Index k = static_cast<Eigen::Index>(rows.size());
    const Eigen::Index n = k ? static_cast<Eigen::Index>(rows[0].size()) : 0;
    MatZ m(k, n);
    for (Eigen::Index i = 0; i < k; ++i) {
        if (static_cast<Eigen::Index>(rows[i].size()) != n)
            throw Error(ErrorCode::MalformedInput, "ragged matrix");
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

VecZ vecz(const std::vector<long long>& v) {
    VecZ r(static_cast<Eigen::Index>(v.size()));
    for (size_t i = 0; i < v.size(); ++i) r(static_cast<Eigen::Index>(i)) = v[i];
    return r;
}

GramLattice gram_from_rows(const std::vector<std::vector<long long>>& rows) {
    return GramLattice(matz(rows));
}

static Int parse_int(const std::string& tok) {
    size_t i = (tok[0] == '-' || tok[0] == '+') ? 1 : 0;
    if (i == tok.size() || tok.find_first_not_of("0123456789", i) != std::string::npos)
        throw Error(ErrorCode::MalformedInput, "not an integer: '" + tok + "'");
    return Int(tok[0] == '+' ? tok.substr(1) : tok);
}

GramLattice read_gram(std::istream& in) {
    std::string tok;
    if (!(in >> tok)) throw Error(ErrorCode::MalformedInput, "missing dimension line");
    Int nz = parse_int(tok);
    if (nz < 0 || nz > 4096) throw Error(ErrorCode::MalformedInput, "bad dimension " + tok);
    const Eigen::Index n = nz.convert_to<Eigen::Index>();
    MatZ g(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            if (!(in >> tok))
                throw Error(ErrorCode::MalformedInput, "expected " + std::to_string(n * n) + " entries");
            g(i, j) = parse_int(tok);
        }
    if (in >> tok) throw Error(ErrorCode::MalformedInput, "trailing data after matrix: '" + tok + "'");
    return GramLattice(std::move(g));
}

GramLattice read_gram_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error(ErrorCode::MalformedInput, "cannot open " + path);
    return read_gram(f);
}

MatZ read_matrix(std::istream& in) {
    std::string line;
    while (std::getline(in, line) && line.find_first_not_of(" \t\r") == std::string::npos) {
    }
    std::istringstream head(line);
    std::vector<Int> dims;
    std::string tok;
    while (head >> tok) dims.push_back(parse_int(tok));
    if (dims.empty() || dims.size() > 2) throw Error(ErrorCode::MalformedInput, "expected a header 'n' or 'k n'");
    if (dims.size() == 1) dims.push_back(dims[0]);
    for (const Int& d : dims)
        if (d < 0 || d > 4096) throw Error(ErrorCode::MalformedInput, "bad dimension " + to_string(d));
    const Eigen::Index k = dims[0].convert_to<Eigen::Index>(), n = dims[1].convert_to<Eigen::Index>();
    MatZ m(k, n);
    for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            if (!(in >> tok)) throw Error(ErrorCode::MalformedInput, "expected " + std::to_string(k * n) + " entries");
            m(i, j) = parse_int(tok);
        }
    if (in >> tok) throw Error(ErrorCode::MalformedInput, "trailing data after matrix: '" + tok + "'");
    return m;
}

MatZ read_matrix_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error(ErrorCode::MalformedInput, "cannot open " + path);
    return read_matrix(f);
}

void write_gram(std::ostream& out, const GramLattice& g) {
    out << g.rank() << "\n";
    for (Eigen::Index i = 0; i < g.rank(); ++i) {
        for (Eigen::Index j = 0; j < g.rank(); ++j) out << (j ? " " : "") << g.gram(i, j);
        out << "\n";
    }
}

MatZ induced_gram(const MatZ& basis, const MatZ& gram) {
    MatZ r = basis * gram * basis.transpose();
    return r;
}

bool is_prime(long long p) {
    if (p < 2) return false;
    for (long long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// Congruence diagonalization over Q. When every remaining diagonal entry is
// zero, adding row/column j to i makes A(i,i) = 2 A(i,j).
Signature signature(const MatZ& gram) {
    const Eigen::Index n = gram.rows();
    MatQ A = gram.cast<Rational>();
    Signature s;
    Eigen::Index t = 0;
    for (; t < n; ++t) {
        Eigen::Index p = -1;
        for (Eigen::Index i = t; i < n && p < 0; ++i)
            if (A(i, i) != 0) p = i;
        if (p < 0) {
            Eigen::Index oi = -1, oj = -1;
            for (Eigen::Index i = t; i < n && oi < 0; ++i)
                for (Eigen::Index j = i + 1; j < n; ++j)
                    if (A(i, j) != 0) {
                        oi = i;
                        oj = j;
                        break;
                    }
            if (oi < 0) break;
            A.row(oi) += A.row(oj);
            A.col(oi) += A.col(oj);
            p = oi;
        }
        if (p != t) {
            A.row(p).swap(A.row(t));
            A.col(p).swap(A.col(t));
        }
        const Rational piv = A(t, t);
        for (Eigen::Index j = t + 1; j < n; ++j) {
            if (A(j, t) == 0) continue;
            const Rational f = A(j, t) / piv;
            for (Eigen::Index c = t; c < n; ++c) A(j, c) -= f * A(t, c);
            for (Eigen::Index r = t; r < n; ++r) A(r, j) -= f * A(r, t);
        }
        (piv > 0 ? s.pos : s.neg)++;
    }
    s.zero = static_cast<int>(n - t);
    return s;
}

std::vector<Int> invariant_factors(const MatZ& m) {
    std::vector<Int> out;
    if (m.size() == 0) return out;
    SmithResult<Int> s = smith_normal_form(m);
    for (int i = 0; i < s.rank; ++i) out.push_back(s.D(i, i));
    return out;
}

LatticeProfile lattice_profile(const GramLattice& g) {
    LatticeProfile p;
    p.rank = static_cast<int>(g.rank());
    p.signature = signature(g.gram);
    p.det = determinant(g.gram);
    for (Eigen::Index i = 0; i < g.rank(); ++i)
        if (g.gram(i, i) % 2 != 0) p.even = false;
    if (p.det != 0) {
        for (const Int& d : invariant_factors(g.gram))
            if (d > 1) p.disc.push_back(d);
        if (!p.disc.empty() && p.disc.front() == p.disc.back() && p.disc.front() < (1LL << 62) &&
            is_prime(p.disc.front().convert_to<long long>()))
            p.p_elementary = PElementary{p.disc.front().convert_to<long long>(),
                                         static_cast<int>(p.disc.size())};
    }
    return p;
}

bool is_primitive_sublattice(const MatZ& basis) {
    if (basis.rows() == 0) return true;
    SmithResult<Int> s = smith_normal_form(basis);
    if (s.rank < basis.rows())
        throw Error(ErrorCode::DependentRows, "basis has rank " + std::to_string(s.rank) + " < " +
                                                  std::to_string(basis.rows()) + " rows");
    for (int i = 0; i < s.rank; ++i)
        if (s.D(i, i) != 1) return false;
    return true;
}

Complement orthogonal_complement(const GramLattice& ambient, const MatZ& basis) {
    if (determinant(ambient.gram) == 0)
        throw Error(ErrorCode::DegenerateAmbient, "ambient form is degenerate");
    if (basis.cols() != ambient.rank() && basis.rows() > 0)
        throw Error(ErrorCode::RankMismatch, "basis width does not match ambient rank");
    Complement c;
    if (basis.rows() == 0)
        c.basis = MatZ::Identity(ambient.rank(), ambient.rank());
    else
        c.basis = integer_kernel<Int>(basis * ambient.gram);
    c.induced = GramLattice(induced_gram(c.basis, ambient.gram));
    return c;
}

static MatZ unimodular_inverse(const MatZ& m) {
    const Eigen::Index n = m.rows();
    MatQ a(n, 2 * n);
    a.leftCols(n) = m.cast<Rational>();
    a.rightCols(n) = MatQ::Identity(n, n);
    for (Eigen::Index c = 0; c < n; ++c) {
        Eigen::Index p = c;
        while (a(p, c) == 0) ++p;
        a.row(p).swap(a.row(c));
        a.row(c) /= Rational(a(c, c));
        for (Eigen::Index r = 0; r < n; ++r)
            if (r != c && a(r, c) != 0) a.row(r) -= Rational(a(r, c)) * a.row(c);
    }
    MatZ inv(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) inv(i, j) = boost::multiprecision::numerator(a(i, n + j));
    return inv;
}

ImageLattice image_lattice(const GramLattice& g) {
    const Eigen::Index n = g.rank();
    ImageLattice out;
    MatZ radical = integer_kernel<Int>(g.gram);
    const Eigen::Index s = radical.rows();
    if (s == 0) {
        out.proj = MatZ::Identity(n, n);
        out.lifts = MatZ::Identity(n, n);
        out.induced = g;
        return out;
    }
    // radical is saturated, so U R V = [I 0] and the last n-s rows of V^-1
    // complete it to a basis of Z^n
    SmithResult<Int> snf = smith_normal_form(radical);
    MatZ w = unimodular_inverse(snf.V);
    out.lifts = w.bottomRows(n - s);
    out.proj = snf.V.rightCols(n - s).transpose();
    out.induced = GramLattice(induced_gram(out.lifts, g.gram));
    return out;
}

namespace {

struct IsometrySearch {
    const MatZ& g1;
    const MatZ& g2;
    Eigen::Index n;
    std::vector<std::vector<VecZ>> candidates;  // per target column
    std::vector<VecZ> chosen;

    bool dfs(Eigen::Index j) {
        if (j == n) {
            MatZ u(n, n);
            for (Eigen::Index c = 0; c < n; ++c) u.col(c) = chosen[c];
            Int d = determinant(u);
            return d == 1 || d == -1;
        }
        for (const VecZ& v : candidates[j]) {
            VecZ gv = g1 * v;
            bool ok = true;
            for (Eigen::Index i = 0; i < j && ok; ++i)
                if (chosen[i].dot(gv) != g2(i, j)) ok = false;
            if (!ok) continue;
            chosen.push_back(v);
            if (dfs(j + 1)) return true;
            chosen.pop_back();
        }
        return false;
    }
};

// Box vectors ordered by L1 norm, then lexicographically with positive
// entries first, so that unit vectors come out early.
std::vector<VecZ> box_vectors(Eigen::Index n, int bound) {
    std::vector<VecZ> out;
    std::vector<long long> v(n, -bound);
    if (n == 0) return out;
    for (;;) {
        VecZ z(n);
        for (Eigen::Index i = 0; i < n; ++i) z(i) = v[i];
        out.push_back(z);
        Eigen::Index i = n - 1;
        while (i >= 0 && v[i] == bound) v[i--] = -bound;
        if (i < 0) break;
        ++v[i];
    }
    return out;
}

}  // namespace

std::optional<MatZ> is_isometric_bounded(const GramLattice& g1, const GramLattice& g2, int bound) {
    if (g1.rank() != g2.rank())
        throw Error(ErrorCode::RankMismatch,
                    "ranks " + std::to_string(g1.rank()) + " and " + std::to_string(g2.rank()));
    const Eigen::Index n = g1.rank();
    if (g1 == g2) return MatZ(MatZ::Identity(n, n));
    if (bound < 1) return std::nullopt;
    if (determinant(g1.gram) != determinant(g2.gram)) return std::nullopt;
    if (!(signature(g1.gram) == signature(g2.gram))) return std::nullopt;

    std::vector<VecZ> box = box_vectors(n, bound);
    auto l1 = [](const VecZ& v) {
        Int s = 0;
        for (Eigen::Index i = 0; i < v.size(); ++i) s += abs(v(i));
        return s;
    };
    std::stable_sort(box.begin(), box.end(), [&](const VecZ& a, const VecZ& b) {
        Int la = l1(a), lb = l1(b);
        if (la != lb) return la < lb;
        for (Eigen::Index i = 0; i < a.size(); ++i)
            if (a(i) != b(i)) return a(i) > b(i);
        return false;
    });

    IsometrySearch s{g1.gram, g2.gram, n, {}, {}};
    s.candidates.resize(n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (const VecZ& v : box)
            if (v.dot(g1.gram * v) == g2.gram(j, j)) s.candidates[j].push_back(v);
    if (!s.dfs(0)) return std::nullopt;
    MatZ u(n, n);
    for (Eigen::Index c = 0; c < n; ++c) u.col(c) = s.chosen[c];
    return u;
}

std::vector<VecZ> represent(const GramLattice& g, long long value, int bound) {
    std::vector<VecZ> out;
    const Eigen::Index n = g.rank();
    if (n == 0 || bound < 0) return out;
    std::vector<long long> v(n, -bound);
    for (;;) {
        bool zero = std::all_of(v.begin(), v.end(), [](long long x) { return x == 0; });
        if (!zero) {
            Int q = 0;
            for (Eigen::Index i = 0; i < n; ++i) {
                if (v[i] == 0) continue;
                Int row = 0;
                for (Eigen::Index j = 0; j < n; ++j)
                    if (v[j] != 0) row += g.gram(i, j) * v[j];
                q += row * v[i];
            }
            if (q == value) out.push_back(vecz(v));
        }
        Eigen::Index i = n - 1;
        while (i >= 0 && v[i] == bound) v[i--] = -bound;
        if (i < 0) break;
        ++v[i];
    }
    return out;
}

std::optional<RSCertificate> rudakov_shafarevich_certificate(const GramLattice& g) {
    LatticeProfile p = lattice_profile(g);
    if (!p.even || p.rank < 3) return std::nullopt;
    if (p.signature.pos != 1 || p.signature.zero != 0 || p.signature.neg != p.rank - 1)
        return std::nullopt;
    if (!p.p_elementary || p.p_elementary->p == 2) return std::nullopt;
    return RSCertificate{p.p_elementary->p, p.p_elementary->ell, p.rank, p.signature};
}

}  // namespace acyl
